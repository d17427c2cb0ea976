pub mod algebra;
pub mod analysis;
pub mod apolarity;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod field;
pub mod gnlab;
pub mod lefschetz;
pub mod polyring;
pub mod rng;

pub use algebra::{AlgebraElement, GradedAlgebra, Presentation};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use polyring::{parse_poly, Monomial, Polynomial};

//! Incidence sampling, identity checks, kernel bounds and experiment drivers.

pub mod bounds;
pub mod experiment;
pub mod gamma;
pub mod perazzo;
pub mod search;

//! Kernel-dimension bounds for complete intersections of equal-degree forms.

use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::exactla::rank_kernel;

/// `d` such that `A` is presented by forms of degree `d − 1`.
pub fn generator_degree_plus_one(a: &GradedAlgebra) -> Result<usize> {
    let Presentation::RegularSequence { generators } = a.presentation() else {
        return Err(Error::Precondition("expected a complete intersection".into()));
    };
    let degrees: Vec<usize> = generators.iter().filter_map(|g| g.homogeneous_degree()).collect();
    match degrees.first() {
        Some(&e) if degrees.iter().all(|&x| x == e) && e >= 2 => Ok(e + 1),
        _ => Err(Error::Precondition(
            "generators must share one degree of at least 2".into(),
        )),
    }
}

/// `dim K¹_η = dim ker(μ_1(η): R^1 → R^{h+1})`, with `K¹_η = R^1` when `h = N`.
pub fn k1_dim(a: &GradedAlgebra, eta: &AlgebraElement) -> Result<usize> {
    if eta.degree + 1 > a.socle_degree() {
        return Ok(a.dim(1));
    }
    Ok(rank_kernel(&a.mul_map(eta, 1)?).kernel_basis.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K1Bound {
    pub h: usize,
    pub d: usize,
    pub dim_k1: usize,
    pub holds: bool,
}

/// `h ≥ (d − 2)·dim K¹_η` for a nonzero `η ∈ R^h`.
pub fn check_k1_bound(a: &GradedAlgebra, eta: &AlgebraElement) -> Result<K1Bound> {
    let d = generator_degree_plus_one(a)?;
    if eta.is_zero() {
        return Err(Error::ZeroElement);
    }
    let h = eta.degree;
    if h == 0 || h > a.socle_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: h,
            max: a.socle_degree(),
        });
    }
    let dim_k1 = k1_dim(a, eta)?;
    Ok(K1Bound {
        h,
        d,
        dim_k1,
        holds: h >= (d - 2) * dim_k1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentCheck {
    pub a: usize,
    pub d: usize,
    pub dim_kernel: usize,
    pub holds: bool,
}

/// For `y^a = 0 ≠ y^{a−1}`: `(d − 2)·dim K¹_{y^{a−1}} ≤ a − 1`.
pub fn tangent_kernel_check(alg: &GradedAlgebra, y: &AlgebraElement, a: usize) -> Result<TangentCheck> {
    let d = generator_degree_plus_one(alg)?;
    if y.degree != 1 {
        return Err(Error::Precondition("y must have degree 1".into()));
    }
    if a < 2 || a > alg.socle_degree() + 1 {
        return Err(Error::Precondition(format!("exponent a = {a} out of range")));
    }
    let prev = alg.power(y, a - 1)?;
    if prev.is_zero() {
        return Err(Error::Precondition(format!("y^{} already vanishes", a - 1)));
    }
    if a <= alg.socle_degree() && !alg.power(y, a)?.is_zero() {
        return Err(Error::Precondition(format!("y^{a} does not vanish")));
    }
    let dim_kernel = k1_dim(alg, &prev)?;
    Ok(TangentCheck {
        a,
        d,
        dim_kernel,
        holds: (d - 2) * dim_kernel < a,
    })
}

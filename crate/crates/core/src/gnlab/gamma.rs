//! Points of the incidence correspondence `Γ_k = {(x, y) : x^k y = 0}`,
//! sampled as fibers over random `x`, and the identities they must satisfy.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::rank_kernel;
use crate::field::Scalar;
use crate::rng::{random_nonzero_vector, random_scalar, trial_rng, DEFAULT_BOX};

/// Consecutive vanishing powers tolerated before giving up on an algebra.
pub const MAX_ATTEMPTS: usize = 64;

pub const DEFAULT_T_VALUES: [i64; 4] = [1, -1, 2, 7];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaSample {
    pub k: usize,
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    pub kernel_dim_at_x: usize,
}

fn check_range(a: &GradedAlgebra, k: usize) -> Result<()> {
    let n = a.socle_degree();
    if k == 0 || k + 2 > n {
        return Err(Error::Precondition(format!(
            "Γ_k is sampled for 1 ≤ k ≤ N − 2 (k = {k}, N = {n})"
        )));
    }
    Ok(())
}

fn random_element<R: Rng + ?Sized>(a: &GradedAlgebra, degree: usize, rng: &mut R) -> Result<AlgebraElement> {
    a.element(degree, random_nonzero_vector(a.field(), a.dim(degree), rng, DEFAULT_BOX))
}

/// A random `x ∈ R^1` and a random nonzero `y` with `x^k y = 0`.
pub fn sample_gamma(a: &GradedAlgebra, k: usize, seed: u64) -> Result<GammaSample> {
    check_range(a, k)?;
    let mut rng = trial_rng(seed, 0);
    for _ in 0..MAX_ATTEMPTS {
        let x = random_element(a, 1, &mut rng)?;
        let xk = a.power(&x, k)?;
        if xk.is_zero() {
            continue;
        }
        let kernel = rank_kernel(&a.mul_map(&xk, 1)?).kernel_basis;
        if kernel.is_empty() {
            return Err(Error::SlpEvidence { k });
        }
        let y = loop {
            let c: Vec<Scalar> = (0..kernel.len())
                .map(|_| random_scalar(a.field(), &mut rng, DEFAULT_BOX))
                .collect();
            if c.iter().all(Scalar::is_zero) {
                continue;
            }
            let mut coords = vec![a.field().zero(); a.dim(1)];
            for (ci, v) in c.iter().zip(&kernel) {
                for (slot, vj) in coords.iter_mut().zip(v) {
                    *slot += &(ci * vj);
                }
            }
            break a.element(1, coords)?;
        };
        return Ok(GammaSample {
            k,
            x,
            y,
            kernel_dim_at_x: kernel.len(),
        });
    }
    Err(Error::DegenerateAlgebra {
        k,
        attempts: MAX_ATTEMPTS,
    })
}

/// `x^i y^j = 0` for every `i + j = k + 1` with `j ≥ 1`.
pub fn check_ker_coker(a: &GradedAlgebra, s: &GammaSample) -> Result<bool> {
    for j in 1..=s.k + 1 {
        let i = s.k + 1 - j;
        let prod = a.mul(&a.power(&s.x, i)?, &a.power(&s.y, j)?)?;
        if !prod.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(x + t y)^{k+1} = x^{k+1}` for every `t` given.
pub fn check_ggn(a: &GradedAlgebra, s: &GammaSample, t_values: &[Scalar]) -> Result<bool> {
    let target = a.power(&s.x, s.k + 1)?;
    for t in t_values {
        let moved = s.x.add(&s.y.scale(t))?;
        if a.power(&moved, s.k + 1)? != target {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn default_t_values(a: &GradedAlgebra) -> Vec<Scalar> {
    DEFAULT_T_VALUES.iter().map(|&t| a.field().from_i64(t)).collect()
}

/// The sample with `y` replaced by a random vector outside the fiber.
pub fn corrupt(a: &GradedAlgebra, s: &GammaSample, seed: u64) -> Result<GammaSample> {
    let mut rng = trial_rng(seed, 1);
    let xk = a.power(&s.x, s.k)?;
    for _ in 0..MAX_ATTEMPTS {
        let y = random_element(a, 1, &mut rng)?;
        if !a.mul(&xk, &y)?.is_zero() {
            return Ok(GammaSample { y, ..s.clone() });
        }
    }
    Err(Error::Precondition("x^k annihilates every sampled y".into()))
}

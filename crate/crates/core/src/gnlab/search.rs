//! Search over a prime field for `x ∈ R^1` whose multiplication `R^2 → R^3`
//! drops rank, together with a partner `q ∈ R^2` such that `x·q = 0`.
//!
//! `det μ_2(x)` is a form of degree `h_2` in the coordinates of `x`. On a
//! random line `P + tQ` it restricts to a univariate polynomial, recovered by
//! interpolation from `h_2 + 1` values and scanned for roots over all of 𝔽_p.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{det_ff, rank_kernel};
use crate::field::{FieldSpec, Scalar};
use crate::rng::{random_nonzero_vector, random_scalar, trial_rng};

pub const DEFAULT_LINES: usize = 64;

/// Largest modulus scanned exhaustively.
pub const MAX_SCAN_PRIME: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneratePair {
    pub line: usize,
    pub t: Scalar,
    pub x: AlgebraElement,
    pub q: AlgebraElement,
    /// The determinant vanished on the whole line.
    pub restriction_vanishes: bool,
    pub dim_kernel_at_x: usize,
    pub dim_k2: usize,
    pub dim_k1: usize,
    pub k2_in_range: bool,
    pub k1_ok: bool,
}

/// Coefficients (lowest first) of the polynomial through `(i, values[i])`.
fn interpolate(field: FieldSpec, values: &[Scalar]) -> Vec<Scalar> {
    // Newton divided differences on the nodes 0, 1, …, D.
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = &num / &field.from_i64(level as i64);
        }
    }
    let mut coeffs = vec![field.zero(); n];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(t − i) + dd[i]
        let shift = field.from_i64(i as i64);
        let mut next = vec![field.zero(); n];
        for j in 0..n {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &(&coeffs[j] * &shift);
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

fn eval_univariate(coeffs: &[Scalar], t: &Scalar) -> Scalar {
    coeffs
        .iter()
        .rev()
        .fold(t.field().zero(), |acc, c| &(&acc * t) + c)
}

fn point_on_line(a: &GradedAlgebra, p: &[Scalar], q: &[Scalar], t: &Scalar) -> Result<AlgebraElement> {
    a.element(1, p.iter().zip(q).map(|(pi, qi)| pi + &(t * qi)).collect())
}

fn random_kernel_element<R: Rng + ?Sized>(
    a: &GradedAlgebra,
    degree: usize,
    kernel: &[Vec<Scalar>],
    rng: &mut R,
) -> Result<AlgebraElement> {
    let field = a.field();
    loop {
        let c: Vec<Scalar> = kernel.iter().map(|_| random_scalar(field, rng, 0)).collect();
        if c.iter().all(Scalar::is_zero) {
            continue;
        }
        let mut coords = vec![field.zero(); a.dim(degree)];
        for (ci, v) in c.iter().zip(kernel) {
            for (slot, vj) in coords.iter_mut().zip(v) {
                *slot += &(ci * vj);
            }
        }
        return a.element(degree, coords);
    }
}

pub fn degenerate_pair_search(a: &GradedAlgebra, seed: u64, budget: usize) -> Result<Option<DegeneratePair>> {
    let FieldSpec::Prime(p) = a.field() else {
        return Err(Error::RequiresPrimeField);
    };
    let degree = a.dim(2);
    if a.socle_degree() < 4 || degree == 0 || degree != a.dim(3) {
        return Err(Error::Precondition(
            "the search needs socle degree at least 4 and h_2 = h_3".into(),
        ));
    }
    if p <= degree as u64 || p > MAX_SCAN_PRIME {
        return Err(Error::Precondition(format!(
            "modulus {p} must exceed {degree} and stay below {MAX_SCAN_PRIME}"
        )));
    }
    let field = a.field();
    for line in 0..budget {
        let mut rng = trial_rng(seed, line as u64);
        let h1 = a.dim(1);
        let base = random_nonzero_vector(field, h1, &mut rng, 0);
        let dir = random_nonzero_vector(field, h1, &mut rng, 0);
        let values: Vec<Scalar> = (0..=degree)
            .map(|t| {
                let x = point_on_line(a, &base, &dir, &field.from_i64(t as i64))?;
                det_ff(&a.mul_map(&x, 2)?)
            })
            .collect::<Result<_>>()?;
        let coeffs = interpolate(field, &values);
        let vanishes = coeffs.iter().all(Scalar::is_zero);
        let roots: Vec<Scalar> = if vanishes {
            vec![random_scalar(field, &mut rng, 0)]
        } else {
            (0..p)
                .map(|t| field.from_i64(t as i64))
                .filter(|t| eval_univariate(&coeffs, t).is_zero())
                .collect()
        };
        for t in roots {
            let x = point_on_line(a, &base, &dir, &t)?;
            if x.is_zero() {
                continue;
            }
            let kernel = rank_kernel(&a.mul_map(&x, 2)?).kernel_basis;
            if kernel.is_empty() {
                continue;
            }
            let q = random_kernel_element(a, 2, &kernel, &mut rng)?;
            debug_assert!(a.mul(&x, &q)?.is_zero());
            let dim_k2 = rank_kernel(&a.mul_map(&q, 2)?).kernel_basis.len();
            let dim_k1 = rank_kernel(&a.mul_map(&q, 1)?).kernel_basis.len();
            return Ok(Some(DegeneratePair {
                line,
                t,
                x,
                q,
                restriction_vanishes: vanishes,
                dim_kernel_at_x: kernel.len(),
                dim_k2,
                dim_k1,
                k2_in_range: dim_k2 == 6 || dim_k2 == 7,
                k1_ok: dim_k1 <= 2,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Polynomial};

    const P: FieldSpec = FieldSpec::Prime(101);

    fn monomial_ci(field: FieldSpec) -> GradedAlgebra {
        let g: Vec<Polynomial> = (0..5)
            .map(|i| parse_poly(&format!("x{i}^2"), 5, field).unwrap())
            .collect();
        GradedAlgebra::from_regular_sequence(&g).unwrap()
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let coeffs: Vec<Scalar> = [3, 0, 5, 100].iter().map(|&c| P.from_i64(c)).collect();
        let values: Vec<Scalar> = (0..4).map(|t| eval_univariate(&coeffs, &P.from_i64(t))).collect();
        assert_eq!(interpolate(P, &values), coeffs);
    }

    #[test]
    fn monomial_pair_by_hand() {
        let a = monomial_ci(P);
        let x0 = a.reduce(&parse_poly("x0", 5, P).unwrap()).unwrap();
        let q = a.reduce(&parse_poly("x0*x1", 5, P).unwrap()).unwrap();
        assert!(a.mul(&x0, &q).unwrap().is_zero());
        assert_eq!(rank_kernel(&a.mul_map(&q, 2).unwrap()).kernel_basis.len(), 7);
        assert_eq!(rank_kernel(&a.mul_map(&q, 1).unwrap()).kernel_basis.len(), 2);
    }

    #[test]
    fn search_on_the_monomial_complete_intersection() {
        let a = monomial_ci(P);
        let found = degenerate_pair_search(&a, 7, DEFAULT_LINES).unwrap().unwrap();
        assert!(a.mul(&found.x, &found.q).unwrap().is_zero());
        assert!(found.k2_in_range && found.k1_ok, "{found:?}");
        assert_eq!(degenerate_pair_search(&a, 7, 0).unwrap(), None);
    }

    #[test]
    fn rational_algebras_are_rejected() {
        let a = monomial_ci(FieldSpec::Rational);
        assert_eq!(degenerate_pair_search(&a, 0, 1), Err(Error::RequiresPrimeField));
    }
}

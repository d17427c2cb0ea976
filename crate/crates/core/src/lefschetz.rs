//! Weak and strong Lefschetz probes, hessians, and the identity relating the
//! multiplication map `μ_1(L^{d−2})` to the hessian evaluated at `L`.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::apolarity::contract_unchecked;
use crate::error::{Error, Result};
use crate::exactla::{det_poly, Matrix, MAX_SYMBOLIC_DET};
use crate::field::Scalar;
use crate::polyring::{monomial_basis, Monomial, Polynomial};
use crate::rng::{random_nonzero_vector, trial_rng, DEFAULT_BOX};

/// Largest socle degree for which `(d−2)!` is formed.
pub const MAX_FACTORIAL_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeKind {
    #[serde(rename = "WLP")]
    Wlp,
    #[serde(rename = "SLP")]
    Slp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub kind: ProbeKind,
    pub k: usize,
    pub target_rank: usize,
    pub max_rank: usize,
    pub holds: bool,
    /// A witness proves the property; a failure is certified only when the
    /// determinant in the coordinates of `L` vanishes identically.
    pub certified: bool,
    pub witness: Option<Vec<Scalar>>,
    pub trials: usize,
    pub seed: u64,
}

impl ProbeReport {
    pub fn certified_failure(&self) -> bool {
        !self.holds && self.certified
    }
}

/// Exponent `m` of `L` and the target rank of `μ_k(L^m)`.
fn probe_shape(a: &GradedAlgebra, kind: ProbeKind, k: usize) -> Result<(usize, usize)> {
    let n = a.socle_degree();
    match kind {
        ProbeKind::Slp => {
            if 2 * k > n {
                return Err(Error::DegreeOutOfRange { degree: k, max: n / 2 });
            }
            Ok((n - 2 * k, a.dim(k)))
        }
        ProbeKind::Wlp => {
            if n == 0 || k > n - 1 {
                return Err(Error::DegreeOutOfRange {
                    degree: k,
                    max: n.saturating_sub(1),
                });
            }
            Ok((1, a.dim(k).min(a.dim(k + 1))))
        }
    }
}

/// Matrix of `μ_k(L^m)` for a concrete `L ∈ R^1`.
pub fn lefschetz_map(a: &GradedAlgebra, l: &AlgebraElement, k: usize, m: usize) -> Result<Matrix> {
    let lm = a.power(l, m)?;
    a.mul_map(&lm, k)
}

pub fn lefschetz_probe(
    a: &GradedAlgebra,
    kind: ProbeKind,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if trials == 0 {
        return Err(Error::Precondition("a probe needs at least one trial".into()));
    }
    let (m, target) = probe_shape(a, kind, k)?;
    let h1 = a.dim(1);
    let ranks: Vec<(usize, Vec<Scalar>)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(usize, Vec<Scalar>)> {
            let mut rng = trial_rng(seed, t as u64);
            let coords = random_nonzero_vector(a.field(), h1, &mut rng, DEFAULT_BOX);
            let l = a.element(1, coords.clone())?;
            Ok((lefschetz_map(a, &l, k, m)?.rank(), coords))
        })
        .collect::<Result<_>>()?;
    let max_rank = ranks.iter().map(|(r, _)| *r).max().unwrap_or(0);
    let witness = ranks
        .iter()
        .find(|(r, _)| *r == max_rank && max_rank > 0)
        .map(|(_, c)| c.clone());
    let holds = max_rank == target;
    let certified = holds || symbolic_determinant_vanishes(a, k, m)?.unwrap_or(false);
    Ok(ProbeReport {
        kind,
        k,
        target_rank: target,
        max_rank,
        holds,
        certified,
        witness,
        trials,
        seed,
    })
}

/// `μ_k(L^m)` with `L = Σ t_a b_a` kept symbolic in the coordinates `t_a`.
pub fn symbolic_lefschetz_matrix(a: &GradedAlgebra, k: usize, m: usize) -> Result<Vec<Vec<Polynomial>>> {
    let h1 = a.dim(1);
    if k + m > a.socle_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: k + m,
            max: a.socle_degree(),
        });
    }
    let field = a.field();
    let ones = a.basis_elements(1);
    let (rows, cols) = (a.dim(k + m), a.dim(k));
    let mut entries = vec![vec![Polynomial::zero(h1, field); cols]; rows];
    // L^m = Σ_{|α| = m} (m choose α) t^α b^α
    for alpha in monomial_basis(h1, m) {
        let mut coeff = field.one();
        let mut prod = a.one();
        let mut used = 0u64;
        for (b, &e) in ones.iter().zip(alpha.exponents()) {
            for _ in 0..e {
                used += 1;
                coeff = &coeff * &field.from_i64(used as i64);
                prod = a.mul(&prod, b)?;
            }
            for f in 1..=e {
                coeff = &coeff / &field.from_i64(f as i64);
            }
        }
        if prod.is_zero() {
            continue;
        }
        for (j, e) in a.basis_elements(k).iter().enumerate() {
            let image = a.mul(&prod, e)?;
            for (i, c) in image.coords.iter().enumerate() {
                if !c.is_zero() {
                    entries[i][j].add_term(alpha.clone(), &coeff * c);
                }
            }
        }
    }
    Ok(entries)
}

/// `Some(true)` when `det μ_k(L^m)` is identically zero in the coordinates
/// of `L`; `None` when the map is not square or too large to expand.
pub fn symbolic_determinant_vanishes(a: &GradedAlgebra, k: usize, m: usize) -> Result<Option<bool>> {
    let (rows, cols) = (a.dim(k + m), a.dim(k));
    if rows != cols || rows > MAX_SYMBOLIC_DET || rows == 0 || a.dim(1) == 0 {
        return Ok(None);
    }
    let entries = symbolic_lefschetz_matrix(a, k, m)?;
    Ok(Some(det_poly(&entries)?.is_zero()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HessianReport {
    pub matrix: Vec<Vec<Polynomial>>,
    pub det: Polynomial,
    pub vanishes: bool,
}

pub fn hessian_matrix(g: &Polynomial) -> Vec<Vec<Polynomial>> {
    let n = g.n_vars();
    let firsts: Vec<Polynomial> = (0..n).map(|i| g.derivative(i)).collect();
    (0..n)
        .map(|i| (0..n).map(|j| firsts[i].derivative(j)).collect())
        .collect()
}

pub fn hessian(g: &Polynomial) -> Result<HessianReport> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    g.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if g.n_vars() > MAX_SYMBOLIC_DET {
        return Err(Error::TooLarge {
            what: "hessian",
            size: g.n_vars(),
            limit: MAX_SYMBOLIC_DET,
        });
    }
    let matrix = hessian_matrix(g);
    let det = det_poly(&matrix)?;
    Ok(HessianReport {
        vanishes: det.is_zero(),
        matrix,
        det,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckPoint {
    pub point: Vec<Scalar>,
    /// `[(L^{d−2} y_i y_j) ⌟ G]`, computed in the algebra.
    pub m_l: Matrix,
    /// `(d−2)! · Hess(G)(L)`.
    pub scaled_hessian: Matrix,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub points: Vec<CrossCheckPoint>,
    pub all_equal: bool,
}

fn factorial(field: crate::field::FieldSpec, n: usize) -> Scalar {
    (1..=n).fold(field.one(), |acc, i| &acc * &field.from_i64(i as i64))
}

/// Compares both sides of the identity at one point.
pub fn crosscheck_at(a: &GradedAlgebra, g: &Polynomial, point: &[Scalar]) -> Result<CrossCheckPoint> {
    let n = g.n_vars();
    if point.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: point.len(),
        });
    }
    let d = a.socle_degree();
    if d < 2 {
        return Err(Error::Precondition("the identity needs socle degree at least 2".into()));
    }
    if d > MAX_FACTORIAL_DEGREE {
        return Err(Error::TooLarge {
            what: "socle degree",
            size: d,
            limit: MAX_FACTORIAL_DEGREE,
        });
    }
    let field = g.field();
    let l = a.linear_element(point)?;
    let ld2 = a.power(&l, d - 2)?;
    let ys: Vec<AlgebraElement> = (0..n)
        .map(|i| a.reduce_in_degree(&Polynomial::term(Monomial::var(n, i), field.one()), 1))
        .collect::<Result<_>>()?;
    let mut m_l = Matrix::zeros(n, n, field);
    for i in 0..n {
        for j in i..n {
            let yy = a.mul(&ys[i], &ys[j])?;
            let cls = a.mul(&ld2, &yy)?;
            let value = contract_unchecked(&a.representative(&cls), g);
            let v = value.coeff(&Monomial::one(n));
            m_l.set(i, j, v.clone());
            m_l.set(j, i, v);
        }
    }
    let fact = factorial(field, d - 2);
    let hess = hessian_matrix(g);
    let mut scaled = Matrix::zeros(n, n, field);
    for i in 0..n {
        for j in 0..n {
            scaled.set(i, j, &fact * &hess[i][j].eval(point)?);
        }
    }
    Ok(CrossCheckPoint {
        point: point.to_vec(),
        equal: m_l == scaled,
        m_l,
        scaled_hessian: scaled,
    })
}

/// The identity at `l_point` and at `trials` further random points.
pub fn hessian_slp_crosscheck(
    g: &Polynomial,
    l_point: &[Scalar],
    trials: usize,
    seed: u64,
) -> Result<CrossCheckReport> {
    let a = GradedAlgebra::from_inverse_system(g)?;
    let mut points = vec![crosscheck_at(&a, g, l_point)?];
    let extra: Vec<CrossCheckPoint> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let pt = random_nonzero_vector(g.field(), g.n_vars(), &mut rng, DEFAULT_BOX);
            crosscheck_at(&a, g, &pt)
        })
        .collect::<Result<_>>()?;
    points.extend(extra);
    Ok(CrossCheckReport {
        all_equal: points.iter().all(|p| p.equal),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::polyring::parse_poly;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;
    const PERAZZO: &str = "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2";

    fn p(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n, Q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Q.from_i64(x)).collect()
    }

    fn monomial_ci() -> GradedAlgebra {
        let g: Vec<Polynomial> = (0..5).map(|i| p(&format!("x{i}^2"), 5)).collect();
        GradedAlgebra::from_regular_sequence(&g).unwrap()
    }

    #[test]
    fn slp_on_the_monomial_complete_intersection() {
        let a = monomial_ci();
        let l = a.linear_element(&ints(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(lefschetz_map(&a, &l, 1, 3).unwrap().rank(), 5);
        let r = lefschetz_probe(&a, ProbeKind::Slp, 1, 8, 3).unwrap();
        assert!(r.holds && r.certified);
        assert_eq!((r.target_rank, r.max_rank), (5, 5));
        assert!(r.witness.is_some());
        let r2 = lefschetz_probe(&a, ProbeKind::Slp, 2, 8, 3).unwrap();
        assert_eq!((r2.target_rank, r2.max_rank), (10, 10));
    }

    #[test]
    fn perazzo_fails_slp_and_wlp_with_proof() {
        let a = GradedAlgebra::from_inverse_system(&p(PERAZZO, 5)).unwrap();
        let slp = lefschetz_probe(&a, ProbeKind::Slp, 1, 8, 11).unwrap();
        assert_eq!(slp.max_rank, 4);
        assert!(!slp.holds);
        assert!(slp.certified_failure());
        let wlp = lefschetz_probe(&a, ProbeKind::Wlp, 1, 8, 11).unwrap();
        assert!(wlp.certified_failure());
    }

    #[test]
    fn probe_ranges_and_reproducibility() {
        let a = monomial_ci();
        assert!(matches!(
            lefschetz_probe(&a, ProbeKind::Slp, 3, 1, 0),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert!(lefschetz_probe(&a, ProbeKind::Wlp, 5, 1, 0).is_err());
        assert!(lefschetz_probe(&a, ProbeKind::Wlp, 4, 1, 0).is_ok());
        assert!(lefschetz_probe(&a, ProbeKind::Wlp, 1, 0, 0).is_err());
        let r1 = lefschetz_probe(&a, ProbeKind::Wlp, 2, 4, 99).unwrap();
        let r2 = lefschetz_probe(&a, ProbeKind::Wlp, 2, 4, 99).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }

    #[test]
    fn hessians() {
        assert_eq!(hessian(&p("x0*x1", 2)).unwrap().det, p("-1", 2));
        let h = hessian(&p(PERAZZO, 5)).unwrap();
        assert!(h.vanishes);
        let f = hessian(&p("x0^3 + x1^3 + x2^3 + x3^3", 4)).unwrap();
        assert_eq!(f.det, p("1296*x0*x1*x2*x3", 4));
        assert!(matches!(
            hessian(&p("x0*x6", 7)),
            Err(Error::TooLarge { .. })
        ));
        for row in 0..5 {
            for col in 0..5 {
                assert_eq!(h.matrix[row][col], h.matrix[col][row]);
            }
        }
    }

    #[test]
    fn crosscheck_examples() {
        let g = p("x0*x1", 2);
        let r = hessian_slp_crosscheck(&g, &ints(&[1, 1]), 0, 0).unwrap();
        assert!(r.all_equal);
        assert_eq!(r.points[0].m_l, Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]));

        let fermat = p("x0^3 + x1^3 + x2^3 + x3^3", 4);
        let r = hessian_slp_crosscheck(&fermat, &ints(&[1, 1, 1, 1]), 4, 5).unwrap();
        assert!(r.all_equal);
        let six = Matrix::identity(4, Q).scale(&Q.from_i64(6));
        assert_eq!(r.points[0].m_l, six);

        let perazzo = p(PERAZZO, 5);
        let r = hessian_slp_crosscheck(&perazzo, &ints(&[1, 2, 3, 4, 5]), 8, 1).unwrap();
        assert!(r.all_equal);
        for pt in &r.points {
            assert!(crate::exactla::det_ff(&pt.m_l).unwrap().is_zero());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn composed_rank_is_bounded(seed in any::<u64>()) {
            let a = monomial_ci();
            let mut rng = trial_rng(seed, 0);
            let l = a.element(1, random_nonzero_vector(Q, 5, &mut rng, 10)).unwrap();
            let m1 = lefschetz_map(&a, &l, 1, 1).unwrap();
            let m2 = lefschetz_map(&a, &l, 2, 1).unwrap();
            let composed = m2.mul(&m1).unwrap();
            let direct = lefschetz_map(&a, &l, 1, 2).unwrap();
            for i in 0..direct.rows() {
                prop_assert_eq!(composed.row(i), direct.row(i));
            }
            prop_assert!(composed.rank() <= m1.rank().min(m2.rank()));
        }

        #[test]
        fn hessian_is_symmetric(cs in prop::collection::vec(-4i64..5, 10)) {
            let monos = monomial_basis(3, 3);
            let g = Polynomial::from_terms(3, Q, monos.into_iter().zip(cs.iter().map(|&c| Q.from_i64(c))));
            let h = hessian_matrix(&g);
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(&h[i][j], &h[j][i]);
                }
            }
        }
    }
}

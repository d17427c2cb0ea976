//! The Perazzo cubic `f = x0·x3² + 2·x1·x3·x4 + x2·x4²`: a cubic threefold with
//! vanishing hessian that is not a cone.
//!
//! Coordinates `w_0..w_4` on `R^1` come from `B₁ = (y0, …, y4)` and
//! `z_0..z_4` on `R^2` from `B₂ = (y3², y3y4, y4², y0y3, y2y4)`. The socle
//! functional is normalized by `σ = y0y3² ↦ 1`, which makes `B₂` dual to `B₁`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::apolarity::{annihilator_piece, catalecticant, is_cone};
use crate::error::{Error, Result};
use crate::exactla::{coords_in_span, same_span, Matrix};
use crate::field::{FieldSpec, Scalar};
use crate::gnlab::gamma::{check_ggn, check_ker_coker, corrupt, default_t_values, sample_gamma};
use crate::lefschetz::{hessian, lefschetz_probe, ProbeKind};
use crate::polyring::{monomial_basis, parse_poly, Monomial, Polynomial};
use crate::rng::{random_nonzero_vector, trial_rng, DEFAULT_BOX};

pub const PERAZZO_FORM: &str = "x0*x3^2 + 2*x1*x3*x4 + x2*x4^2";
pub const ANN2_LIST: [&str; 10] = [
    "y0^2", "y0*y1", "y0*y2", "y0*y4", "y1^2", "y1*y2", "y2^2", "y2*y3", "y0*y3 - y1*y4",
    "y1*y3 - y2*y4",
];
pub const B2_LIST: [&str; 5] = ["y3^2", "y3*y4", "y4^2", "y0*y3", "y2*y4"];
pub const SIGMA_REPS: [&str; 3] = ["y0*y3^2", "y1*y3*y4", "y2*y4^2"];
/// The polar map of `g = 4z0z2 − z1²`, as printed alongside the conic.
pub const POLAR_G: [&str; 5] = ["4*x2", "-2*x1", "4*x0", "0", "0"];
/// The square map in `B₂` coordinates, as printed.
pub const SQUARE_MAP: [&str; 5] = [
    "x3^2",
    "2*x3*x4",
    "x4^2",
    "2*(x0*x3 + x1*x4)",
    "2*(x1*x3 + x2*x4)",
];
/// The composed map as printed; its third entry is not what composition gives.
pub const PRINTED_PSI_G: [&str; 5] = ["2*x4^2", "-2*x3*x4", "2*x4^2", "0", "0"];

const Q: FieldSpec = FieldSpec::Rational;
const LAMBDAS: [i64; 3] = [1, -1, 2];

fn poly(s: &str) -> Polynomial {
    parse_poly(s, 5, Q).expect("fixture literal")
}

fn fmt_w(p: &[Polynomial]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.fmt_with('w')).collect();
    format!("[{}]", parts.join(" : "))
}

/// The Perazzo algebra with the two pinned bases.
#[derive(Debug, Clone)]
pub struct PerazzoContext {
    pub form: Polynomial,
    pub algebra: GradedAlgebra,
    pub b1: Vec<AlgebraElement>,
    pub b2: Vec<AlgebraElement>,
}

impl PerazzoContext {
    pub fn new() -> Result<PerazzoContext> {
        let form = poly(PERAZZO_FORM);
        let mut algebra = GradedAlgebra::from_inverse_system(&form)?;
        algebra.pin_socle(&poly(SIGMA_REPS[0]))?;
        let b1 = (0..5)
            .map(|i| algebra.reduce(&Polynomial::var(5, Q, i)))
            .collect::<Result<_>>()?;
        let b2 = B2_LIST.iter().map(|s| algebra.reduce(&poly(s))).collect::<Result<_>>()?;
        Ok(PerazzoContext {
            form,
            algebra,
            b1,
            b2,
        })
    }

    fn coords_in(basis: &[AlgebraElement], e: &AlgebraElement) -> Result<Vec<Scalar>> {
        let vectors: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coords.clone()).collect();
        coords_in_span(&e.coords, &vectors)?
            .ok_or_else(|| Error::Precondition("element outside the span of the pinned basis".into()))
    }

    /// `w` coordinates of an element of `R^1`.
    pub fn w(&self, e: &AlgebraElement) -> Result<Vec<Scalar>> {
        Self::coords_in(&self.b1, e)
    }

    /// `z` coordinates of an element of `R^2`.
    pub fn z(&self, e: &AlgebraElement) -> Result<Vec<Scalar>> {
        Self::coords_in(&self.b2, e)
    }

    pub fn from_w(&self, w: &[Scalar]) -> Result<AlgebraElement> {
        let mut acc = self.algebra.zero(1);
        for (c, b) in w.iter().zip(&self.b1) {
            acc = acc.add(&b.scale(c))?;
        }
        Ok(acc)
    }

    /// `ψ(x) = x^{N−1}` in `z` coordinates.
    pub fn square_map(&self, x: &AlgebraElement) -> Result<Vec<Scalar>> {
        self.z(&self.algebra.power(x, 2)?)
    }

    /// `ψ_g(x) = ∇g(ψ(x))` in `w` coordinates, or `None` on the exceptional
    /// locus where `∇g` vanishes.
    pub fn psi_g(&self, x: &AlgebraElement) -> Result<Option<Vec<Scalar>>> {
        let z = self.square_map(x)?;
        let grad: Vec<Scalar> = POLAR_G
            .iter()
            .map(|s| poly(s).eval(&z))
            .collect::<Result<_>>()?;
        Ok(grad.iter().any(|c| !c.is_zero()).then_some(grad))
    }

    /// The square map computed symbolically from the multiplication table.
    pub fn symbolic_square_map(&self) -> Result<Vec<Polynomial>> {
        let mut out = vec![Polynomial::zero(5, Q); 5];
        for m in monomial_basis(5, 2) {
            let e = m.exponents();
            let (i, j) = match (0..5).filter(|&t| e[t] > 0).collect::<Vec<_>>()[..] {
                [i] => (i, i),
                [i, j] => (i, j),
                _ => unreachable!(),
            };
            let mult = if i == j { 1 } else { 2 };
            let z = self.z(&self.algebra.mul(&self.b1[i], &self.b1[j])?)?;
            for (slot, c) in out.iter_mut().zip(&z) {
                slot.add_term(m.clone(), c * &Q.from_i64(mult));
            }
        }
        Ok(out)
    }

    /// `∇g ∘ ψ̃` composed symbolically.
    pub fn symbolic_psi_g(&self) -> Result<Vec<Polynomial>> {
        let square = self.symbolic_square_map()?;
        POLAR_G.iter().map(|s| poly(s).compose(&square)).collect()
    }
}

pub fn on_conic(w: &[Scalar]) -> bool {
    let lhs = &w[1] * &w[1];
    let rhs = &w[0] * &w[2];
    lhs == rhs && w[3].is_zero() && w[4].is_zero()
}

/// The defining equations of the dominating component of `Γ_1`.
pub fn on_gamma_component(w1: &[Scalar], w2: &[Scalar]) -> bool {
    let e1 = &(&w1[3] * &w2[0]) + &(&w1[4] * &w2[1]);
    let e2 = &(&w1[3] * &w2[1]) + &(&w1[4] * &w2[2]);
    let e3 = &(&w2[1] * &w2[1]) - &(&w2[0] * &w2[2]);
    [e1, e2, e3, w2[3].clone(), w2[4].clone()].iter().all(Scalar::is_zero)
}

#[derive(Debug, Clone, Serialize)]
pub struct GnSample {
    pub w: Vec<Scalar>,
    pub z: Vec<Scalar>,
    pub psi_g: Vec<Scalar>,
    pub on_conic: bool,
    pub fixed_along_line: bool,
    pub in_fiber: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GnMapReport {
    pub samples: Vec<GnSample>,
    pub resampled: usize,
    pub square_map: String,
    pub square_map_matches_print: bool,
    pub composed: String,
    pub composed_proportional_to: String,
    pub composed_matches_expected: bool,
    pub printed: String,
    pub printed_matches_composition: bool,
    pub note: String,
    pub passes: bool,
}

fn proportional(a: &[Polynomial], b: &[Polynomial]) -> bool {
    // a = c·b for a nonzero scalar c read off the first nonzero entry of b
    let Some((k, bk)) = b.iter().enumerate().find(|(_, p)| !p.is_zero()) else {
        return a.iter().all(Polynomial::is_zero);
    };
    let (m, coeff_b) = bk.terms().next().unwrap();
    let coeff_a = a[k].coeff(m);
    if coeff_a.is_zero() {
        return false;
    }
    let c = &coeff_a / coeff_b;
    a.iter().zip(b).all(|(x, y)| *x == y.scale(&c))
}

pub fn gn_map_check(ctx: &PerazzoContext, x_samples: usize, seed: u64) -> Result<GnMapReport> {
    let a = &ctx.algebra;
    let mut rng = trial_rng(seed, 0);
    let mut samples = Vec::with_capacity(x_samples);
    let mut resampled = 0;
    while samples.len() < x_samples {
        let w = random_nonzero_vector(Q, 5, &mut rng, DEFAULT_BOX);
        let x = ctx.from_w(&w)?;
        let Some(psi) = ctx.psi_g(&x)? else {
            resampled += 1;
            continue;
        };
        let y = ctx.from_w(&psi)?;
        let mut fixed = true;
        for l in LAMBDAS {
            let moved = x.add(&y.scale(&Q.from_i64(l)))?;
            fixed &= ctx.psi_g(&moved)?.as_deref() == Some(&psi[..]);
        }
        let xn2 = a.power(&x, a.socle_degree() - 2)?;
        samples.push(GnSample {
            z: ctx.square_map(&x)?,
            on_conic: on_conic(&psi),
            fixed_along_line: fixed,
            in_fiber: a.mul(&xn2, &y)?.is_zero(),
            psi_g: psi,
            w,
        });
    }
    let square = ctx.symbolic_square_map()?;
    let printed_square: Vec<Polynomial> = SQUARE_MAP.iter().map(|s| poly(s)).collect();
    let composed = ctx.symbolic_psi_g()?;
    let expected: Vec<Polynomial> = ["x4^2", "-x3*x4", "x3^2", "0", "0"].iter().map(|s| poly(s)).collect();
    let printed: Vec<Polynomial> = PRINTED_PSI_G.iter().map(|s| poly(s)).collect();
    let composed_matches_expected = proportional(&composed, &expected);
    let printed_matches = proportional(&composed, &printed);
    let note = if printed_matches {
        String::new()
    } else {
        format!(
            "printed formula {} differs from the composition {}: the third entry is proportional to w3^2, not w4^2",
            fmt_w(&printed),
            fmt_w(&composed)
        )
    };
    let passes = samples.iter().all(|s| s.on_conic && s.fixed_along_line && s.in_fiber)
        && square == printed_square
        && composed_matches_expected;
    Ok(GnMapReport {
        samples,
        resampled,
        square_map: fmt_w(&square),
        square_map_matches_print: square == printed_square,
        composed: fmt_w(&composed),
        composed_proportional_to: fmt_w(&expected),
        composed_matches_expected,
        printed: fmt_w(&printed),
        printed_matches_composition: printed_matches,
        note,
        passes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub schema: u32,
    pub fixture: &'static str,
    pub assertions: BTreeMap<String, bool>,
    pub failures: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub gn_map: Option<GnMapReport>,
    pub passes: bool,
}

impl FixtureReport {
    fn new(fixture: &'static str) -> Self {
        FixtureReport {
            schema: 1,
            fixture,
            assertions: BTreeMap::new(),
            failures: BTreeMap::new(),
            notes: Vec::new(),
            gn_map: None,
            passes: true,
        }
    }

    fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.assertions.insert(name.to_string(), ok);
        if !ok {
            self.failures.insert(name.to_string(), detail());
            self.passes = false;
        }
    }
}

pub const FIXTURE_GAMMA_SAMPLES: usize = 32;
pub const FIXTURE_Y2_SAMPLES: usize = 100;
pub const FIXTURE_GN_SAMPLES: usize = 16;

fn is_basis(elems: &[AlgebraElement]) -> bool {
    let rows: Vec<Vec<Scalar>> = elems.iter().map(|e| e.coords.clone()).collect();
    let dim = rows.first().map_or(0, Vec::len);
    dim == rows.len() && Matrix::from_rows(Q, rows).is_ok_and(|m| m.rank() == dim)
}

pub fn perazzo_fixture(seed: u64) -> Result<FixtureReport> {
    let ctx = PerazzoContext::new()?;
    let a = &ctx.algebra;
    let f = &ctx.form;
    let mut r = FixtureReport::new("perazzo");

    let ann2 = annihilator_piece(f, 2)?;
    r.record("ann2_dim_is_10", ann2.len() == 10, || format!("dim = {}", ann2.len()));
    let monos = monomial_basis(5, 2);
    let to_rows = |ps: &[Polynomial]| -> Vec<Vec<Scalar>> {
        ps.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect()
    };
    let listed: Vec<Polynomial> = ANN2_LIST.iter().map(|s| poly(s)).collect();
    let span_ok = same_span(&to_rows(&ann2), &to_rows(&listed))?;
    r.record("ann2_span_matches_list", span_ok, || {
        let computed: Vec<String> = ann2.iter().map(|p| p.fmt_with('y')).collect();
        format!("computed basis: {}", computed.join(", "))
    });

    r.record("hilbert_1_5_5_1", a.hilbert() == [1, 5, 5, 1], || format!("{:?}", a.hilbert()));
    r.record("b1_is_basis", is_basis(&ctx.b1), String::new);
    r.record("b2_is_basis", is_basis(&ctx.b2), String::new);

    let pairing = a.pairing_matrix(&ctx.b1, &ctx.b2)?;
    r.record(
        "pairing_b1_b2_is_identity",
        pairing == Matrix::identity(5, Q),
        || pairing.to_string(),
    );

    let sigmas: Vec<AlgebraElement> = SIGMA_REPS.iter().map(|s| a.reduce(&poly(s))).collect::<Result<_>>()?;
    let sigma_ok = sigmas.iter().all(|s| *s == sigmas[0]) && a.socle_value(&sigmas[0])?.is_one();
    r.record("sigma_representatives_agree", sigma_ok, || format!("{sigmas:?}"));

    let c3 = catalecticant(f, 3)?;
    let nonzero: Vec<Monomial> = (0..c3.matrix.cols())
        .filter(|&j| !c3.matrix.get(0, j).is_zero())
        .map(|j| c3.source_monomials()[j].clone())
        .collect();
    let expected_nonzero: Vec<Monomial> = SIGMA_REPS
        .iter()
        .map(|s| poly(s).terms().next().unwrap().0.clone())
        .collect();
    r.record("only_sigma_monomials_survive_in_degree_3", nonzero == expected_nonzero, || {
        let names: Vec<String> = nonzero.iter().map(|m| m.fmt_with('y')).collect();
        names.join(", ")
    });

    let y0y3 = ctx.z(&a.reduce(&poly("y0*y3"))?)?;
    let e4: Vec<Scalar> = (0..5).map(|i| Q.from_i64((i == 3) as i64)).collect();
    r.record("y0y3_is_fourth_b2_vector", y0y3 == e4, || format!("{y0y3:?}"));

    r.record("not_a_cone", !is_cone(f)?, String::new);
    let hess = hessian(f)?;
    r.record("hessian_vanishes", hess.vanishes, || hess.det.to_string());

    let slp = lefschetz_probe(a, ProbeKind::Slp, 1, 8, seed)?;
    r.record("slp1_failure_certified", slp.certified_failure(), || {
        format!("max rank {} of {}", slp.max_rank, slp.target_rank)
    });
    let wlp = lefschetz_probe(a, ProbeKind::Wlp, 1, 8, seed)?;
    r.record("wlp1_failure_certified", wlp.certified_failure(), || {
        format!("max rank {} of {}", wlp.max_rank, wlp.target_rank)
    });

    let mut gamma_ok = true;
    let mut controls_fail = true;
    let mut x_off_conic = true;
    let mut detail = String::new();
    let ts = default_t_values(a);
    for i in 0..FIXTURE_GAMMA_SAMPLES {
        let sample_seed = crate::rng::derive_seed(seed, 1000 + i as u64);
        let s = sample_gamma(a, 1, sample_seed)?;
        let (w1, w2) = (ctx.w(&s.x)?, ctx.w(&s.y)?);
        let ok = on_gamma_component(&w1, &w2)
            && on_conic(&w2)
            && check_ker_coker(a, &s)?
            && check_ggn(a, &s, &ts)?;
        if !ok && detail.is_empty() {
            detail = format!("sample {i}: x = {w1:?}, y = {w2:?}");
        }
        gamma_ok &= ok;
        x_off_conic &= !on_conic(&w1);
        let bad = corrupt(a, &s, sample_seed)?;
        controls_fail &= !check_ker_coker(a, &bad)? && !check_ggn(a, &bad, &ts)?;
    }
    r.record("gamma_samples_on_component_and_conic", gamma_ok, || detail);
    r.record("gamma_x_off_conic", x_off_conic, String::new);
    r.record("gamma_corrupted_controls_fail", controls_fail, String::new);

    let mut rng = trial_rng(seed, 2);
    let mut y2_ok = true;
    let mut y2_detail = String::new();
    for i in 0..FIXTURE_Y2_SAMPLES {
        let mut w = random_nonzero_vector(Q, 5, &mut rng, DEFAULT_BOX);
        if i % 2 == 0 {
            w[3] = Q.zero();
            w[4] = Q.zero();
            if w.iter().all(Scalar::is_zero) {
                w[0] = Q.one();
            }
        }
        let y = ctx.from_w(&w)?;
        let square_zero = a.power(&y, 2)?.is_zero();
        let in_plane = w[3].is_zero() && w[4].is_zero();
        if square_zero != in_plane {
            y2_ok = false;
            if y2_detail.is_empty() {
                y2_detail = format!("w = {w:?}");
            }
        }
    }
    r.record("square_zero_iff_w3_w4_vanish", y2_ok, || y2_detail);

    let gn = gn_map_check(&ctx, FIXTURE_GN_SAMPLES, seed)?;
    r.record("square_map_matches_print", gn.square_map_matches_print, || gn.square_map.clone());
    r.record("gn_map_identities", gn.passes, || format!("composed {}", gn.composed));
    if !gn.note.is_empty() {
        r.notes.push(gn.note.clone());
    }
    r.gn_map = Some(gn);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_passes() {
        let r = perazzo_fixture(42).unwrap();
        assert!(r.passes, "{:?}", r.failures);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn composition_by_hand() {
        let ctx = PerazzoContext::new().unwrap();
        let psi = ctx.symbolic_psi_g().unwrap();
        let want: Vec<Polynomial> = ["4*x4^2", "-4*x3*x4", "4*x3^2", "0", "0"].iter().map(|s| poly(s)).collect();
        assert_eq!(psi, want);
        let printed: Vec<Polynomial> = PRINTED_PSI_G.iter().map(|s| poly(s)).collect();
        assert!(!proportional(&psi, &printed));
    }

    #[test]
    fn exceptional_locus() {
        let ctx = PerazzoContext::new().unwrap();
        let x = ctx.from_w(&[1, 2, 3, 0, 0].map(|v| Q.from_i64(v))).unwrap();
        assert_eq!(ctx.psi_g(&x).unwrap(), None);
    }

    #[test]
    fn component_equations() {
        let w = |v: [i64; 5]| v.map(|c| Q.from_i64(c)).to_vec();
        assert!(on_conic(&w([1, 2, 4, 0, 0])));
        assert!(!on_conic(&w([1, 2, 3, 0, 0])));
        assert!(on_gamma_component(&w([0, 0, 0, 1, 1]), &w([1, -1, 1, 0, 0])));
        assert!(!on_gamma_component(&w([0, 0, 0, 1, 1]), &w([1, 1, 1, 0, 0])));
    }
}

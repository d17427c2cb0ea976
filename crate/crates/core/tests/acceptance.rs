//! Acceptance gate. Runs every criterion, prints one line each and exits
//! nonzero if any of them fails.

use std::time::{Duration, Instant};

use saga::algebra::GradedAlgebra;
use saga::apolarity::is_cone;
use saga::corpus::{load_corpus, CODIM_LE_4};
use saga::gnlab::bounds::check_k1_bound;
use saga::gnlab::experiment::{
    degenerate_pairs_experiment, monomial_ci, random_ci, random_form, theorem_c_experiment, DEFAULT_COEFF_BOX,
};
use saga::gnlab::perazzo::{gn_map_check, perazzo_fixture, PerazzoContext, FIXTURE_GN_SAMPLES};
use saga::lefschetz::{hessian_slp_crosscheck, lefschetz_probe, ProbeKind};
use saga::rng::{derive_seed, random_nonzero_vector, trial_rng, DEFAULT_BOX};
use saga::{parse_poly, FieldSpec};

const Q: FieldSpec = FieldSpec::Rational;
const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn perazzo_core() -> Outcome {
    let r = perazzo_fixture(SEED).map_err(err)?;
    let names = [
        "ann2_dim_is_10",
        "ann2_span_matches_list",
        "hilbert_1_5_5_1",
        "pairing_b1_b2_is_identity",
        "sigma_representatives_agree",
        "not_a_cone",
        "hessian_vanishes",
    ];
    for n in names {
        ensure(r.assertions.get(n) == Some(&true), || {
            format!("{n}: {}", r.failures.get(n).cloned().unwrap_or_default())
        })?;
    }
    Ok(format!("{} assertions", names.len()))
}

fn lemma_crosscheck() -> Outcome {
    let mut forms = vec![
        parse_poly("x0*x3^2 + 2*x1*x3*x4 + x2*x4^2", 5, Q).unwrap(),
        parse_poly("x0^3 + x1^3 + x2^3 + x3^3", 4, Q).unwrap(),
        parse_poly("x0*x1", 2, Q).unwrap(),
    ];
    let mut i = 0;
    while forms.len() < 8 {
        let n = 2 + (derive_seed(SEED, 500 + i) % 4) as usize;
        let g = random_form(Q, n, 3, 5, derive_seed(SEED, 600 + i));
        i += 1;
        if !g.is_zero() {
            forms.push(g);
        }
    }
    let mut points = 0;
    for (k, g) in forms.iter().enumerate() {
        let mut rng = trial_rng(SEED, 700 + k as u64);
        let l = random_nonzero_vector(Q, g.n_vars(), &mut rng, DEFAULT_BOX);
        let r = hessian_slp_crosscheck(g, &l, 7, derive_seed(SEED, k as u64)).map_err(err)?;
        points += r.points.len();
        ensure(r.all_equal, || format!("mismatch for {g}"))?;
    }
    Ok(format!("{} forms, {points} points", forms.len()))
}

fn theorem_b() -> Outcome {
    let mut found = 0;
    let mut draw = 0u64;
    let mut witnesses = 0;
    while found < 25 {
        let s = derive_seed(SEED, 10_000 + draw);
        draw += 1;
        let n = 1 + (s % 4) as usize;
        let d = 3 + ((s >> 8) % 3) as usize;
        let g = random_form(Q, n, d, DEFAULT_BOX, s);
        if g.is_zero() || is_cone(&g).map_err(err)? {
            continue;
        }
        found += 1;
        let a = GradedAlgebra::from_inverse_system(&g).map_err(err)?;
        let p = lefschetz_probe(&a, ProbeKind::Slp, 1, 8, s).map_err(err)?;
        ensure(p.holds && p.witness.is_some(), || format!("no SLP_1 witness for {g}"))?;
        witnesses += 1;
    }
    Ok(format!("{witnesses}/25 witnesses, {draw} draws"))
}

fn theorem_c() -> Outcome {
    let r = theorem_c_experiment(20, SEED, DEFAULT_COEFF_BOX).map_err(err)?;
    ensure(r.control.pass, || "monomial control failed".into())?;
    for rec in r.records.iter().filter(|rec| !rec.skipped) {
        let (s1, s2) = (rec.slp1.as_ref(), rec.slp2.as_ref());
        ensure(
            rec.hilbert == [1, 5, 10, 10, 5, 1]
                && s1.is_some_and(|p| p.holds && p.max_rank == 5 && p.witness.is_some())
                && s2.is_some_and(|p| p.holds && p.max_rank == 10 && p.witness.is_some()),
            || format!("trial {}: {:?}", rec.trial, r.failures),
        )?;
    }
    ensure(r.pass, || format!("{:?}", r.failures))?;
    Ok(format!("{}/{} pass, {} skipped", r.passes, r.trials, r.skipped))
}

fn gamma_identities() -> Outcome {
    let r = perazzo_fixture(SEED).map_err(err)?;
    for n in [
        "gamma_samples_on_component_and_conic",
        "gamma_x_off_conic",
        "gamma_corrupted_controls_fail",
    ] {
        ensure(r.assertions.get(n) == Some(&true), || {
            format!("{n}: {}", r.failures.get(n).cloned().unwrap_or_default())
        })?;
    }
    Ok("32 samples, controls rejected".into())
}

fn gordan_noether() -> Outcome {
    let ctx = PerazzoContext::new().map_err(err)?;
    let r = gn_map_check(&ctx, FIXTURE_GN_SAMPLES, SEED).map_err(err)?;
    ensure(r.samples.len() == 16, || "sample count".into())?;
    ensure(r.passes, || format!("composed {}", r.composed))?;
    ensure(!r.note.is_empty(), || "print discrepancy not flagged".into())?;
    Ok(format!("16 samples, {} resampled, composed {}", r.resampled, r.composed))
}

fn random_eta(a: &GradedAlgebra, h: usize, seed: u64) -> saga::AlgebraElement {
    let mut rng = trial_rng(seed, h as u64);
    let coords = random_nonzero_vector(a.field(), a.dim(h), &mut rng, DEFAULT_BOX);
    a.element(h, coords).unwrap()
}

fn kernel_bounds() -> Outcome {
    let mut algebras = vec![GradedAlgebra::from_regular_sequence(&monomial_ci(Q)).map_err(err)?];
    for i in 0..3 {
        algebras.push(random_ci(Q, DEFAULT_COEFF_BOX, derive_seed(SEED, 20_000 + i), 32).map_err(err)?);
    }
    let mut checks = 0;
    for (ai, a) in algebras.iter().enumerate() {
        for h in 1..=4 {
            for t in 0..100 {
                let eta = random_eta(a, h, derive_seed(SEED, (ai * 1000 + h * 100 + t) as u64));
                let b = check_k1_bound(a, &eta).map_err(err)?;
                ensure(b.holds, || format!("algebra {ai}, h = {h}: dim K1 = {}", b.dim_k1))?;
                checks += 1;
            }
        }
        let w = lefschetz_probe(a, ProbeKind::Wlp, 1, 8, derive_seed(SEED, ai as u64)).map_err(err)?;
        ensure(w.holds && w.max_rank == 5, || format!("algebra {ai}: WLP_1 rank {}", w.max_rank))?;
    }
    Ok(format!("{checks} bounds, 4 WLP_1 witnesses"))
}

fn degenerate_pairs() -> Outcome {
    let r = degenerate_pairs_experiment(6, SEED, 101).map_err(err)?;
    ensure(r.found >= 3, || format!("only {} pairs", r.found))?;
    for rec in &r.records {
        if let Some(p) = &rec.pair {
            ensure(p.k2_in_range && p.k1_ok, || {
                format!("{} trial {}: dim K2 = {}, dim K1 = {}", rec.algebra, rec.trial, p.dim_k2, p.dim_k1)
            })?;
        }
    }
    let dims: Vec<usize> = r.records.iter().filter_map(|rec| rec.pair.as_ref().map(|p| p.dim_k2)).collect();
    Ok(format!("{} pairs, dim K2 = {dims:?}", r.found))
}

fn structural_gates() -> Outcome {
    let corpus = load_corpus().map_err(err)?;
    let mut count = 0;
    for e in &corpus {
        let a = e.parse().and_then(|i| i.algebra()).map_err(err)?;
        ensure(a.hilbert_symmetric(), || format!("{}: hilbert {:?}", e.name, a.hilbert()))?;
        ensure(a.is_standard(), || format!("{}: not standard", e.name))?;
        for s in 0..=a.socle_degree() {
            let p = a.pairing_check(s).map_err(err)?;
            ensure(p.perfect, || format!("{}: pairing in degree {s}", e.name))?;
        }
        count += 1;
    }
    let batch = corpus.iter().filter(|e| e.has_tag(CODIM_LE_4)).count();
    Ok(format!("{count} algebras ({batch} in the codim <= 4 batch)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("perazzo fixture", perazzo_core, Duration::from_secs(1)),
        ("hessian cross-check", lemma_crosscheck, Duration::from_secs(5)),
        ("SLP_1 in codimension <= 4", theorem_b, Duration::from_secs(30)),
        ("quadric complete intersections", theorem_c, Duration::from_secs(60)),
        ("incidence identities", gamma_identities, Duration::from_secs(5)),
        ("Gordan-Noether map", gordan_noether, Duration::from_secs(5)),
        ("kernel bounds", kernel_bounds, Duration::from_secs(30)),
        ("degenerate pairs over F_101", degenerate_pairs, Duration::from_secs(60)),
        ("structural gates", structural_gates, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let slow = if elapsed > *budget { " (over budget)" } else { "" };
        println!(
            "criterion {}: {status} {name} [{:.2}s / {}s{slow}] {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

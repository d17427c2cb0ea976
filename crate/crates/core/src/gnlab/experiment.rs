//! Randomized drivers: complete intersections of quadrics in five variables,
//! probed for the strong Lefschetz property in degrees 1 and 2, and the
//! prime-field search for degenerate pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::gnlab::search::{degenerate_pair_search, DegeneratePair, DEFAULT_LINES};
use crate::lefschetz::{lefschetz_probe, ProbeKind, ProbeReport};
use crate::polyring::{monomial_basis, Polynomial};
use crate::rng::{derive_seed, random_scalar, trial_rng};

pub const CI_VARS: usize = 5;
pub const CI_HILBERT: [usize; 6] = [1, 5, 10, 10, 5, 1];
pub const DEFAULT_COEFF_BOX: i64 = 10;
/// Random directions tried by each probe.
pub const PROBE_TRIALS: usize = 8;

/// A random form of degree `d` with coefficients drawn from the box.
pub fn random_form(field: FieldSpec, n: usize, d: usize, coeff_box: i64, seed: u64) -> Polynomial {
    let mut rng = trial_rng(seed, 0);
    let monos = monomial_basis(n, d);
    Polynomial::from_terms(
        n,
        field,
        monos.into_iter().map(|m| (m, random_scalar(field, &mut rng, coeff_box))),
    )
}

pub fn random_quadrics(field: FieldSpec, coeff_box: i64, seed: u64) -> Vec<Polynomial> {
    (0..CI_VARS)
        .map(|i| random_form(field, CI_VARS, 2, coeff_box, derive_seed(seed, i as u64)))
        .collect()
}

/// `x0², …, x4²`.
pub fn monomial_ci(field: FieldSpec) -> Vec<Polynomial> {
    (0..CI_VARS)
        .map(|i| Polynomial::var(CI_VARS, field, i).pow(2))
        .collect()
}

/// A random complete intersection of quadrics, redrawn until regular.
pub fn random_ci(field: FieldSpec, coeff_box: i64, seed: u64, max_draws: usize) -> Result<GradedAlgebra> {
    let mut last = Error::Precondition("no draws allowed".into());
    for i in 0..max_draws {
        match GradedAlgebra::from_regular_sequence(&random_quadrics(field, coeff_box, derive_seed(seed, i as u64))) {
            Ok(a) => return Ok(a),
            Err(e @ (Error::NotRegularSequence { .. } | Error::ZeroForm)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub generators: Vec<String>,
    pub generator_degrees: Vec<usize>,
    pub skipped: bool,
    pub hilbert: Vec<usize>,
    pub slp1: Option<ProbeReport>,
    pub slp2: Option<ProbeReport>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub family: String,
    pub trials: usize,
    pub skipped: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
    pub seed: u64,
    pub coeff_box: i64,
    /// The monomial complete intersection, run alongside the random draws.
    pub control: TrialRecord,
    pub records: Vec<TrialRecord>,
    pub pass: bool,
}

fn run_trial(trial: usize, gens: Vec<Polynomial>, seed: u64) -> Result<(TrialRecord, Vec<TrialFailure>)> {
    let mut rec = TrialRecord {
        trial,
        generators: gens.iter().map(|g| g.to_string()).collect(),
        generator_degrees: gens.iter().map(|g| g.total_degree().unwrap_or(0)).collect(),
        skipped: false,
        hilbert: Vec::new(),
        slp1: None,
        slp2: None,
        pass: false,
    };
    let a = match GradedAlgebra::from_regular_sequence(&gens) {
        Ok(a) => a,
        Err(Error::NotRegularSequence { .. } | Error::ZeroForm) => {
            rec.skipped = true;
            return Ok((rec, Vec::new()));
        }
        Err(e) => return Err(e),
    };
    let mut failures = Vec::new();
    let mut fail = |stage: &str, detail: String| {
        failures.push(TrialFailure {
            trial,
            stage: stage.into(),
            detail,
        })
    };
    rec.hilbert = a.hilbert().to_vec();
    if rec.hilbert != CI_HILBERT {
        fail("hilbert", format!("{:?}", rec.hilbert));
    } else {
        let slp1 = lefschetz_probe(&a, ProbeKind::Slp, 1, PROBE_TRIALS, derive_seed(seed, 1))?;
        let slp2 = lefschetz_probe(&a, ProbeKind::Slp, 2, PROBE_TRIALS, derive_seed(seed, 2))?;
        for (stage, p) in [("slp1", &slp1), ("slp2", &slp2)] {
            if !p.holds {
                fail(stage, format!("max rank {} of {}", p.max_rank, p.target_rank));
            }
        }
        rec.slp1 = Some(slp1);
        rec.slp2 = Some(slp2);
    }
    rec.pass = failures.is_empty();
    Ok((rec, failures))
}

pub fn theorem_c_experiment(trials: usize, seed: u64, coeff_box: i64) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::Precondition("the experiment needs at least one trial".into()));
    }
    let q = FieldSpec::Rational;
    let (control, mut failures) = run_trial(0, monomial_ci(q), derive_seed(seed, u64::MAX))?;
    for f in &mut failures {
        f.stage = format!("control/{}", f.stage);
    }
    let outcomes: Vec<(TrialRecord, Vec<TrialFailure>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = derive_seed(seed, t as u64);
            run_trial(t, random_quadrics(q, coeff_box, trial_seed), trial_seed)
        })
        .collect::<Result<_>>()?;
    let mut records = Vec::with_capacity(trials);
    for (rec, f) in outcomes {
        failures.extend(f);
        records.push(rec);
    }
    let skipped = records.iter().filter(|r| r.skipped).count();
    let passes = records.iter().filter(|r| r.pass).count();
    Ok(ExperimentReport {
        schema: 1,
        family: "theorem_c".into(),
        trials,
        skipped,
        passes,
        pass: failures.is_empty(),
        failures,
        seed,
        coeff_box,
        control,
        records,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub trial: usize,
    pub algebra: String,
    pub pair: Option<DegeneratePair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSearchReport {
    pub schema: u32,
    pub family: String,
    pub prime: u64,
    pub trials: usize,
    pub found: usize,
    pub failures: Vec<TrialFailure>,
    pub seed: u64,
    pub records: Vec<PairRecord>,
    pub pass: bool,
}

/// Even trials search the monomial complete intersection, odd trials one
/// random complete intersection, all over `𝔽_p`.
pub fn degenerate_pairs_experiment(trials: usize, seed: u64, prime: u64) -> Result<PairSearchReport> {
    if trials == 0 {
        return Err(Error::Precondition("the experiment needs at least one trial".into()));
    }
    let field = FieldSpec::prime(prime)?;
    let mono = GradedAlgebra::from_regular_sequence(&monomial_ci(field))?;
    let random = random_ci(field, DEFAULT_COEFF_BOX, derive_seed(seed, u64::MAX), 32)?;
    let records: Vec<PairRecord> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let (name, a) = if t % 2 == 0 { ("monomial", &mono) } else { ("random", &random) };
            let pair = degenerate_pair_search(a, derive_seed(seed, t as u64), DEFAULT_LINES)?;
            Ok(PairRecord {
                trial: t,
                algebra: name.into(),
                pair,
            })
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for r in &records {
        match &r.pair {
            None => failures.push(TrialFailure {
                trial: r.trial,
                stage: "search".into(),
                detail: "budget exhausted".into(),
            }),
            Some(p) if !(p.k2_in_range && p.k1_ok) => failures.push(TrialFailure {
                trial: r.trial,
                stage: "bounds".into(),
                detail: format!("dim K2 = {}, dim K1 = {}", p.dim_k2, p.dim_k1),
            }),
            _ => {}
        }
    }
    Ok(PairSearchReport {
        schema: 1,
        family: "degenerate_pairs".into(),
        prime,
        trials,
        found: records.iter().filter(|r| r.pair.is_some()).count(),
        pass: failures.is_empty(),
        failures,
        seed,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_control_passes() {
        let r = theorem_c_experiment(1, 42, DEFAULT_COEFF_BOX).unwrap();
        assert!(r.control.pass);
        assert_eq!(r.control.hilbert, CI_HILBERT);
        assert_eq!(r.control.slp1.as_ref().unwrap().max_rank, 5);
        assert_eq!(r.control.slp2.as_ref().unwrap().max_rank, 10);
    }

    #[test]
    fn tiny_box_draws_get_skipped() {
        // A zero box makes every quadric zero.
        let r = theorem_c_experiment(2, 7, 0).unwrap();
        assert_eq!(r.skipped, 2);
        assert_eq!(r.passes, 0);
        assert!(r.pass);
    }

    #[test]
    fn random_forms_are_seeded() {
        let q = FieldSpec::Rational;
        assert_eq!(random_form(q, 3, 3, 5, 9), random_form(q, 3, 3, 5, 9));
        assert_ne!(random_form(q, 3, 3, 5, 9), random_form(q, 3, 3, 5, 10));
    }
}

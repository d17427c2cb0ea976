//! Plain-text renderings of the reports.

use std::fmt::Write;

use saga::analysis::{AnalysisReport, InputKind};
use saga::gnlab::experiment::{ExperimentReport, PairSearchReport, TrialRecord};
use saga::gnlab::perazzo::FixtureReport;
use saga::lefschetz::ProbeKind;
use saga::Scalar;

use crate::GammaReport;

pub trait ToText {
    fn to_text(&self) -> String;
}

fn vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl ToText for AnalysisReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        let kind = match self.kind {
            InputKind::Form => "form",
            InputKind::Generators => "generators",
        };
        writeln!(s, "input:     {} ({kind}, {} variables, {})", self.input, self.n_vars, self.field).unwrap();
        writeln!(s, "hilbert:   {:?}", self.hilbert).unwrap();
        writeln!(s, "socle:     degree {}", self.socle_degree).unwrap();
        let bad: Vec<usize> = self.duality.iter().filter(|d| !d.perfect).map(|d| d.s).collect();
        writeln!(
            s,
            "duality:   {}",
            if bad.is_empty() { "perfect in every degree".to_string() } else { format!("fails in degrees {bad:?}") }
        )
        .unwrap();
        writeln!(s, "symmetric: {}", yes(self.hilbert_symmetric)).unwrap();
        writeln!(s, "standard:  {}", yes(self.standard)).unwrap();
        if let Some(c) = self.cone {
            writeln!(s, "cone:      {}", yes(c)).unwrap();
        }
        if let Some(h) = self.hess_zero {
            writeln!(s, "hess = 0:  {}", yes(h)).unwrap();
        }
        writeln!(s, "probes:").unwrap();
        for p in &self.probes {
            let kind = match p.kind {
                ProbeKind::Wlp => "WLP",
                ProbeKind::Slp => "SLP",
            };
            writeln!(
                s,
                "  {kind}_{:<2} rank {:>3}/{:<3} {}",
                p.k,
                p.max_rank,
                p.target_rank,
                saga::analysis::probe_outcome(p)
            )
            .unwrap();
        }
        s
    }
}

fn trial_line(r: &TrialRecord) -> String {
    if r.skipped {
        return format!("trial {:>3}: skipped (not a regular sequence)", r.trial);
    }
    let rank = |p: &Option<saga::lefschetz::ProbeReport>| {
        p.as_ref().map_or("-".to_string(), |p| format!("{}/{}", p.max_rank, p.target_rank))
    };
    format!(
        "trial {:>3}: hilbert {:?} SLP_1 {} SLP_2 {} {}",
        r.trial,
        r.hilbert,
        rank(&r.slp1),
        rank(&r.slp2),
        if r.pass { "pass" } else { "FAIL" }
    )
}

impl ToText for ExperimentReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "family {} seed {} coefficient box {}", self.family, self.seed, self.coeff_box).unwrap();
        writeln!(s, "control  {}", trial_line(&self.control).trim_start_matches("trial   0: ")).unwrap();
        for r in &self.records {
            writeln!(s, "{}", trial_line(r)).unwrap();
        }
        for f in &self.failures {
            writeln!(s, "failure: trial {} {} {}", f.trial, f.stage, f.detail).unwrap();
        }
        writeln!(
            s,
            "{} of {} trials pass, {} skipped: {}",
            self.passes,
            self.trials,
            self.skipped,
            if self.pass { "PASS" } else { "FAIL" }
        )
        .unwrap();
        s
    }
}

impl ToText for PairSearchReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "family {} over F_{} seed {}", self.family, self.prime, self.seed).unwrap();
        for r in &self.records {
            match &r.pair {
                Some(p) => writeln!(
                    s,
                    "trial {:>3} ({}): x = {} dim K2_q = {} dim K1_q = {}",
                    r.trial,
                    r.algebra,
                    vector(&p.x.coords),
                    p.dim_k2,
                    p.dim_k1
                ),
                None => writeln!(s, "trial {:>3} ({}): nothing found", r.trial, r.algebra),
            }
            .unwrap();
        }
        writeln!(s, "{} pairs found: {}", self.found, if self.pass { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

impl ToText for FixtureReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "fixture {}", self.fixture).unwrap();
        for (name, ok) in &self.assertions {
            writeln!(s, "  {} {name}", if *ok { "ok  " } else { "FAIL" }).unwrap();
            if let Some(d) = self.failures.get(name) {
                writeln!(s, "       {d}").unwrap();
            }
        }
        for n in &self.notes {
            writeln!(s, "note: {n}").unwrap();
        }
        writeln!(s, "{}", if self.passes { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

impl ToText for GammaReport {
    fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "Γ_{} samples for {}", self.k, self.input).unwrap();
        for r in &self.samples {
            match &r.sample {
                Some(g) => writeln!(
                    s,
                    "sample {:>3}: x = {} y = {} kernel {} ker-coker {} ggn {} control rejected {}",
                    r.index,
                    vector(&g.x.coords),
                    vector(&g.y.coords),
                    g.kernel_dim_at_x,
                    yes(r.ker_coker),
                    yes(r.ggn),
                    yes(r.control_rejected)
                ),
                None => writeln!(s, "sample {:>3}: empty fiber", r.index),
            }
            .unwrap();
        }
        writeln!(s, "{}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

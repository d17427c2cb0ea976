//! One-shot structural report for a form or a generator list.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::apolarity::is_cone;
use crate::error::{Error, Result};
use crate::exactla::MAX_SYMBOLIC_DET;
use crate::field::FieldSpec;
use crate::lefschetz::{hessian, lefschetz_probe, ProbeKind, ProbeReport};
use crate::polyring::{infer_n_vars, parse_poly, Polynomial};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    Form,
    Generators,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisInput {
    Form(Polynomial),
    Generators(Vec<Polynomial>),
}

/// Drops `#` comments and splits on `;` and newlines.
pub fn split_items(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Several items always mean generators; a single item is a form unless
/// `kind` says otherwise. `n_vars` defaults to the largest index seen.
pub fn parse_input(
    text: &str,
    kind: Option<InputKind>,
    n_vars: Option<usize>,
    field: FieldSpec,
) -> Result<AnalysisInput> {
    let items = split_items(text);
    if items.is_empty() {
        return Err(Error::Parse {
            position: 0,
            message: "empty input".into(),
        });
    }
    let n = n_vars.unwrap_or_else(|| infer_n_vars(items.iter().map(String::as_str)).max(1));
    let polys = items
        .iter()
        .map(|s| parse_poly(s, n, field))
        .collect::<Result<Vec<_>>>()?;
    let kind = kind.unwrap_or(if polys.len() > 1 { InputKind::Generators } else { InputKind::Form });
    match kind {
        InputKind::Form if polys.len() > 1 => Err(Error::Parse {
            position: 0,
            message: format!("expected one form, found {}", polys.len()),
        }),
        InputKind::Form => Ok(AnalysisInput::Form(polys.into_iter().next().unwrap())),
        InputKind::Generators => Ok(AnalysisInput::Generators(polys)),
    }
}

impl AnalysisInput {
    pub fn kind(&self) -> InputKind {
        match self {
            AnalysisInput::Form(_) => InputKind::Form,
            AnalysisInput::Generators(_) => InputKind::Generators,
        }
    }

    pub fn algebra(&self) -> Result<GradedAlgebra> {
        match self {
            AnalysisInput::Form(g) => GradedAlgebra::from_inverse_system(g),
            AnalysisInput::Generators(gs) => GradedAlgebra::from_regular_sequence(gs),
        }
    }

    pub fn text(&self) -> String {
        match self {
            AnalysisInput::Form(g) => g.to_string(),
            AnalysisInput::Generators(gs) => gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; "),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityEntry {
    pub s: usize,
    pub perfect: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub kind: InputKind,
    pub input: String,
    pub n_vars: usize,
    pub field: FieldSpec,
    pub hilbert: Vec<usize>,
    pub socle_degree: usize,
    pub hilbert_symmetric: bool,
    pub standard: bool,
    pub duality: Vec<DualityEntry>,
    /// Only for forms.
    pub cone: Option<bool>,
    /// Only for forms in at most six variables.
    pub hess_zero: Option<bool>,
    pub probes: Vec<ProbeReport>,
    /// `slp1 → holds | fails | evidence` and so on; "fails" is certified,
    /// "evidence" means no witness turned up but no proof of failure either.
    pub summary: BTreeMap<String, String>,
    pub seed: u64,
}

impl AnalysisReport {
    /// Duality, symmetry and standardness all hold.
    pub fn structural_ok(&self) -> bool {
        self.hilbert_symmetric && self.standard && self.duality.iter().all(|d| d.perfect)
    }
}

pub fn probe_outcome(p: &ProbeReport) -> &'static str {
    if p.holds {
        "holds"
    } else if p.certified {
        "fails"
    } else {
        "evidence"
    }
}

pub fn analyze(input: &AnalysisInput, trials: usize, seed: u64) -> Result<AnalysisReport> {
    let a = input.algebra()?;
    analyze_algebra(input, &a, trials, seed)
}

pub fn analyze_algebra(input: &AnalysisInput, a: &GradedAlgebra, trials: usize, seed: u64) -> Result<AnalysisReport> {
    let n = a.socle_degree();
    let duality = (0..=n)
        .map(|s| a.pairing_check(s).map(|p| DualityEntry { s, perfect: p.perfect }))
        .collect::<Result<_>>()?;
    let (cone, hess_zero) = match input {
        AnalysisInput::Form(g) => {
            let hz = if g.n_vars() <= MAX_SYMBOLIC_DET { Some(hessian(g)?.vanishes) } else { None };
            (Some(is_cone(g)?), hz)
        }
        AnalysisInput::Generators(_) => (None, None),
    };
    let mut probes = Vec::new();
    let mut index = 0u64;
    for k in 0..n {
        probes.push(lefschetz_probe(a, ProbeKind::Wlp, k, trials, derive_seed(seed, index))?);
        index += 1;
    }
    for k in 0..=n / 2 {
        probes.push(lefschetz_probe(a, ProbeKind::Slp, k, trials, derive_seed(seed, index))?);
        index += 1;
    }
    let summary = probes
        .iter()
        .map(|p| {
            let key = match p.kind {
                ProbeKind::Wlp => format!("wlp{}", p.k),
                ProbeKind::Slp => format!("slp{}", p.k),
            };
            (key, probe_outcome(p).to_string())
        })
        .collect();
    Ok(AnalysisReport {
        schema: 1,
        kind: input.kind(),
        input: input.text(),
        n_vars: a.n_vars(),
        field: a.field(),
        hilbert: a.hilbert().to_vec(),
        socle_degree: n,
        hilbert_symmetric: a.hilbert_symmetric(),
        standard: a.is_standard(),
        duality,
        cone,
        hess_zero,
        probes,
        summary,
        seed,
    })
}

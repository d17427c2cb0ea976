//! Named forms and generator lists with expected outcomes. The data lives in
//! `corpus/corpus.json`; every expected value says where it comes from.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{parse_input, AnalysisInput, AnalysisReport, InputKind};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

pub const BUILTIN: &str = include_str!("../corpus/corpus.json");

/// Tag carried by the inverse-system entries with at most four variables.
pub const CODIM_LE_4: &str = "codim_le_4";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the literature.
    Published,
    /// Computed independently (brute force or a closed formula).
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedReport {
    pub hilbert: Option<Expected<Vec<usize>>>,
    pub cone: Option<Expected<bool>>,
    pub hess_zero: Option<Expected<bool>>,
    #[serde(default)]
    pub probes: BTreeMap<String, Expected<String>>,
}

fn default_field() -> String {
    "rational".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: InputKind,
    pub input: String,
    pub n_vars: Option<usize>,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub tags: Vec<String>,
    pub expected: ExpectedReport,
}

impl CorpusEntry {
    pub fn field(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    pub fn parse(&self) -> Result<AnalysisInput> {
        parse_input(&self.input, Some(self.kind), self.n_vars, self.field()?)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    /// Mismatches between the expectations and an analysis report.
    pub fn mismatches(&self, r: &AnalysisReport) -> Vec<String> {
        let e = &self.expected;
        let mut out = Vec::new();
        if let Some(h) = &e.hilbert {
            if h.value != r.hilbert {
                out.push(format!("hilbert: expected {:?}, got {:?}", h.value, r.hilbert));
            }
        }
        for (name, want, got) in [("cone", &e.cone, r.cone), ("hess_zero", &e.hess_zero, r.hess_zero)] {
            if let Some(w) = want {
                if Some(w.value) != got {
                    out.push(format!("{name}: expected {}, got {got:?}", w.value));
                }
            }
        }
        for (key, want) in &e.probes {
            let got = r.summary.get(key).map(String::as_str);
            if got != Some(want.value.as_str()) {
                out.push(format!("{key}: expected {}, got {got:?}", want.value));
            }
        }
        out
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    if text.trim().is_empty() {
        return Err(Error::Corpus("empty corpus file".into()));
    }
    let entries: Vec<CorpusEntry> = serde_json::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
    if entries.is_empty() {
        return Err(Error::Corpus("corpus has no entries".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for e in &entries {
        if !seen.insert(e.name.as_str()) {
            return Err(Error::Corpus(format!("duplicate entry {}", e.name)));
        }
        e.parse().map_err(|err| Error::Corpus(format!("{}: {err}", e.name)))?;
    }
    Ok(entries)
}

pub fn load_corpus() -> Result<Vec<CorpusEntry>> {
    parse_corpus(BUILTIN)
}

pub fn load_corpus_file(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Corpus(format!("{}: {e}", path.display())))?;
    parse_corpus(&text)
}

pub fn find<'a>(entries: &'a [CorpusEntry], name: &str) -> Option<&'a CorpusEntry> {
    entries.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;

    #[test]
    fn builtin_entries() {
        let c = load_corpus().unwrap();
        let perazzo = find(&c, "perazzo").unwrap();
        assert!(perazzo.expected.hess_zero.as_ref().unwrap().value);
        assert_eq!(perazzo.expected.hess_zero.as_ref().unwrap().provenance, Provenance::Published);
        let ci = find(&c, "monomial_ci_quadrics").unwrap();
        assert_eq!(ci.expected.hilbert.as_ref().unwrap().value, [1, 5, 10, 10, 5, 1]);
        for name in ["fermat_cubic_jacobian", "x0x1", "cone_x0_cubed_5_vars"] {
            assert!(find(&c, name).is_some(), "{name}");
        }
        assert!(c.iter().filter(|e| e.has_tag(CODIM_LE_4)).count() >= 5);
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(parse_corpus(""), Err(Error::Corpus(_))));
        assert!(matches!(parse_corpus("[]"), Err(Error::Corpus(_))));
        assert!(matches!(parse_corpus("{"), Err(Error::Corpus(_))));
        let bad = r#"[{"name": "a", "kind": "form", "input": "x0 +", "expected": {}}]"#;
        assert!(matches!(parse_corpus(bad), Err(Error::Corpus(_))));
        let dup = r#"[{"name": "a", "kind": "form", "input": "x0", "expected": {}},
                      {"name": "a", "kind": "form", "input": "x1", "expected": {}}]"#;
        assert!(matches!(parse_corpus(dup), Err(Error::Corpus(_))));
    }

    #[test]
    fn mismatches_are_reported() {
        let c = parse_corpus(
            r#"[{"name": "q", "kind": "form", "input": "x0*x1",
                 "expected": {"hilbert": {"value": [1, 2, 2], "provenance": "trivial"}}}]"#,
        )
        .unwrap();
        let r = analyze(&c[0].parse().unwrap(), 2, 0).unwrap();
        assert_eq!(c[0].mismatches(&r).len(), 1);
    }
}

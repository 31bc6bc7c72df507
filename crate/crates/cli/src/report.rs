//! Run reports: a human-readable text form and a deterministic JSON form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::runner::Config;

/// Identifies the JSON layout; bump when fields change meaning.
pub const SCHEMA: &str = "cohesion-lab/report/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefinitionReport {
    pub name: String,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub index: usize,
    /// The check in canonical scenario syntax.
    pub check: String,
    pub location: String,
    pub verdict: Verdict,
    /// Whether the property held, before expectations; absent on error.
    pub holds: Option<bool>,
    pub summary: String,
    pub artifacts: Vec<Artifact>,
    pub notes: Vec<String>,
    /// Wall time; excluded from JSON so identical runs serialize identically.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl CheckReport {
    /// Summary, artifacts and notes as they appear in the text report.
    pub fn body_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "    {}", self.summary);
        for a in &self.artifacts {
            let _ = writeln!(s, "    {}: {}", a.key, a.value);
        }
        for n in &self.notes {
            let _ = writeln!(s, "    note: {n}");
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigReport {
    pub max_enumeration: u64,
    pub idempotent_degree_bound: u32,
    pub monomial_order: String,
    pub seed: u64,
    pub family_bound: usize,
    pub oracle_samples: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: ConfigReport,
    pub definitions: Vec<DefinitionReport>,
    pub checks: Vec<CheckReport>,
    pub totals: Totals,
}

impl Report {
    pub fn new(definitions: Vec<DefinitionReport>, checks: Vec<CheckReport>, skipped: usize, config: &Config) -> Self {
        let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
        let totals = Totals { pass: count(Verdict::Pass), fail: count(Verdict::Fail), error: count(Verdict::Error), skipped };
        let config = ConfigReport {
            max_enumeration: config.max_enumeration,
            idempotent_degree_bound: config.idempotent_degree_bound,
            monomial_order: config.monomial_order.name().to_string(),
            seed: config.seed,
            family_bound: config.family_bound,
            oracle_samples: config.oracle_samples,
        };
        Report { schema: SCHEMA, config, definitions, checks, totals }
    }

    pub fn definition_errors(&self) -> usize {
        self.definitions.iter().filter(|d| d.error.is_some()).count()
    }

    /// 0 when everything passed, 1 on a failed check, 2 on any error.
    pub fn exit_code(&self) -> i32 {
        if self.totals.error > 0 || self.definition_errors() > 0 {
            2
        } else if self.totals.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for d in &self.definitions {
            if let Some(e) = &d.error {
                let _ = writeln!(s, "ERROR defining {} {}: {e}", d.kind, d.name);
            }
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {} ({}, {:.1} ms)", c.verdict.label(), c.check, c.location, c.elapsed_ms);
            s.push_str(&c.body_text());
        }
        let t = &self.totals;
        let _ = write!(s, "{} passed, {} failed, {} errored", t.pass, t.fail, t.error);
        if t.skipped > 0 {
            let _ = write!(s, ", {} skipped", t.skipped);
        }
        s.push('\n');
        s
    }
}

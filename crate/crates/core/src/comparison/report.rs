use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    VolumeComparison,
    AsymptoticVolume,
    LaplacianDistance,
    PartialSumEquivalence,
    SphereSumUpper,
    SphereSumLower,
    AssociatedChainSphereSum,
    ModelSphereEquality,
}

impl Claim {
    pub fn id(self) -> &'static str {
        match self {
            Claim::VolumeComparison => "volume-comparison",
            Claim::AsymptoticVolume => "asymptotic-volume",
            Claim::LaplacianDistance => "laplacian-distance",
            Claim::PartialSumEquivalence => "partial-sum-equivalence",
            Claim::SphereSumUpper => "sphere-sum-upper",
            Claim::SphereSumLower => "sphere-sum-lower",
            Claim::AssociatedChainSphereSum => "associated-chain-sphere-sum",
            Claim::ModelSphereEquality => "model-sphere-equality",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `Asserted` claims must hold on every valid instance; `Recorded` ones are
/// only evaluated and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Asserted,
    Recorded,
}

/// Inclusive radius range. Empty when `from > to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadiusRange {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerRow {
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(with = "rational::serde_str")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_str")]
    pub rhs: Rational,
    pub ok: bool,
}

impl LedgerRow {
    pub fn new(r: usize, label: Option<String>, lhs: Rational, rhs: Rational, ok: bool) -> Self {
        LedgerRow { r, label, lhs, rhs, ok }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub claim: Claim,
    pub status: Status,
    pub hypothesis: bool,
    pub conclusion: bool,
    /// For asserted implications: hypothesis ⟹ conclusion on this instance.
    pub consistent: bool,
    pub range: RadiusRange,
    pub ledger: Vec<LedgerRow>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl TheoremReport {
    /// Asserted implication whose conclusion is that every ledger row holds.
    pub(crate) fn implication(
        claim: Claim,
        hypothesis: bool,
        range: RadiusRange,
        ledger: Vec<LedgerRow>,
        values: BTreeMap<String, String>,
    ) -> Self {
        let mut report = TheoremReport {
            claim,
            status: Status::Asserted,
            hypothesis,
            conclusion: true,
            consistent: true,
            range,
            ledger,
            values,
            counterexample: None,
        };
        report.settle(|_| true);
        report
    }

    /// Restricts the conclusion to rows carrying `label`.
    pub(crate) fn with_conclusion_label(mut self, label: &str) -> Self {
        self.settle(|row| row.label.as_deref() == Some(label));
        self
    }

    fn settle(&mut self, counts: impl Fn(&LedgerRow) -> bool) {
        let failing = self.ledger.iter().find(|row| counts(row) && !row.ok);
        self.conclusion = failing.is_none();
        self.consistent = !self.hypothesis || self.conclusion;
        self.counterexample = failing.map(|row| {
            let label = row.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
            format!("r={}{label}: lhs={} rhs={}", row.r, rational::fmt(&row.lhs), rational::fmt(&row.rhs))
        });
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Asserted => "asserted",
            Status::Recorded => "recorded",
        };
        writeln!(f, "claim: {} ({status})", self.claim)?;
        writeln!(
            f,
            "hypothesis: {}  conclusion: {}  consistent: {}  radii: {}..={}",
            self.hypothesis, self.conclusion, self.consistent, self.range.from, self.range.to
        )?;
        for (k, v) in &self.values {
            writeln!(f, "{k}: {v}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "counterexample: {c}")?;
        }
        let cells: Vec<[String; 5]> = self
            .ledger
            .iter()
            .map(|row| {
                [
                    row.r.to_string(),
                    row.label.clone().unwrap_or_default(),
                    rational::fmt(&row.lhs),
                    rational::fmt(&row.rhs),
                    if row.ok { "ok" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        let header = ["r", "label", "lhs", "rhs", "ok"].map(String::from);
        let mut widths = header.clone().map(|h| h.len());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        for row in std::iter::once(&header).chain(&cells) {
            let line: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(f, "  {}", line.join("  "))?;
        }
        Ok(())
    }
}

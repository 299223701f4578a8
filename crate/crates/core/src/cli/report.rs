use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::pairwise::{Status, TheoremReport};
use crate::soft_core::SoftElements;
use crate::verdict::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleRow {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub theorems: Vec<TheoremRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<ExampleRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            rows: Vec::new(),
            theorems: Vec::new(),
            examples: Vec::new(),
            observations: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn row(&mut self, name: impl Into<String>, value: impl ToString, witness: Option<String>) {
        self.rows.push(Row {
            name: name.into(),
            value: value.to_string(),
            witness,
        });
    }

    pub fn add_theorems(&mut self, report: &TheoremReport, render: &Renderer<'_>, prefix: &str) {
        for c in &report.checks {
            self.theorems.push(TheoremRow {
                name: format!("{prefix}{}", c.id),
                status: c.status,
                witness: c.witness.as_ref().map(|w| render.witness(w)),
                note: c.note.clone(),
            });
        }
        self.observations
            .extend(report.observations.iter().map(|o| format!("{prefix}{o}")));
    }

    pub fn has_failure(&self) -> bool {
        self.theorems.iter().any(|t| t.status == Status::Fail)
            || self.examples.iter().any(|e| !e.matches)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        let width = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .chain(self.theorems.iter().map(|t| t.name.len()))
            .max()
            .unwrap_or(0);
        for r in &self.rows {
            write!(s, "{:width$}  {}", r.name, r.value).unwrap();
            if let Some(w) = &r.witness {
                write!(s, "  [{w}]").unwrap();
            }
            s.push('\n');
        }
        for t in &self.theorems {
            let status = match t.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a",
            };
            write!(s, "{:width$}  {status}", t.name).unwrap();
            if let Some(w) = &t.witness {
                write!(s, "  [{w}]").unwrap();
            }
            if let Some(n) = &t.note {
                write!(s, "  ({n})").unwrap();
            }
            s.push('\n');
        }
        for e in &self.examples {
            writeln!(s, "{}: {}", e.name, e.computed).unwrap();
            if !e.matches {
                writeln!(s, "  mismatch, expected: {}: {}", e.name, e.expected).unwrap();
            }
        }
        for o in &self.observations {
            writeln!(s, "note: {o}").unwrap();
        }
        if let Some(ms) = self.timing_ms {
            writeln!(s, "elapsed: {ms} ms").unwrap();
        }
        s
    }
}

/// Renders witnesses with element names.
pub struct Renderer<'a> {
    pub names: &'a [String],
    pub params: &'a [String],
    pub se: Option<&'a SoftElements>,
}

impl Renderer<'_> {
    fn param(&self, t: usize) -> String {
        self.params.get(t).cloned().unwrap_or_else(|| t.to_string())
    }

    fn point(&self, x: usize) -> String {
        self.names.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    fn se_point(&self, i: usize) -> String {
        match self.se {
            Some(se) => se.get(i).display_with(self.names).to_string(),
            None => format!("#{i}"),
        }
    }

    pub fn witness(&self, w: &Witness) -> String {
        let names = self.names;
        match w {
            Witness::ElementPair { first, second } => {
                format!(
                    "{} vs {}",
                    first.display_with(names),
                    second.display_with(names)
                )
            }
            Witness::PointPair {
                param,
                first,
                second,
            } => {
                format!(
                    "at {}: {} vs {}",
                    self.param(*param),
                    self.point(*first),
                    self.point(*second)
                )
            }
            Witness::InducedPair { first, second } => {
                format!("{} vs {}", self.se_point(*first), self.se_point(*second))
            }
            Witness::Uncovered { param, point } => {
                format!("{} uncovered at {}", self.point(*point), self.param(*param))
            }
            Witness::NonOpenMember { index, side } => {
                format!("member {index} not open on side {side:?}")
            }
            Witness::Subfamily { members } => format!("members {members:?}"),
            Witness::UncoveredLabel {
                label,
                union,
                target,
            } => format!(
                "label {label}: union {} does not contain {}",
                union.display_with(names),
                target.display_with(names)
            ),
            Witness::SymbolicSubfamily {
                template_indices,
                explicit_members,
            } => format!(
                "template indices {template_indices:?}, explicit members {explicit_members:?}"
            ),
            Witness::InducedSets { first, second } => format!(
                "{{{}}} and {{{}}}",
                first.iter().map(|a| a.display_with(names)).format(","),
                second.iter().map(|a| a.display_with(names)).format(",")
            ),
            Witness::SoftSet { set } => set.display_with(names).to_string(),
            Witness::Detail { message } => message.clone(),
        }
    }
}

//! Verification reports.
//!
//! A [`Report`] is an ordered list of [`Check`]s. Each check names the
//! identity it tests, states it as a formula, and records every failing case
//! with its group indices, a basis witness and both sides of the identity, so
//! a failure can be reproduced from the report alone.

use std::fmt;

use serde::Serialize;

use crate::field::Scalar;

/// At most this many failing cases are stored per check; the total is kept.
pub const MAX_RECORDED_FAILURES: usize = 16;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every case of the identity holds.
    Pass,
    /// An axiom of the input structure fails.
    Fail,
    /// A precondition is not met, so the identity was not evaluated.
    Refused,
    /// A derived identity fails on an input that satisfies its hypotheses.
    Violation,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refused => "REFUSED",
            Status::Violation => "VIOLATION",
        }
    }
}

/// Whether a check tests an axiom of the input or a consequence of the axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Axiom,
    Theorem,
}

/// One failing case of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Group elements the case is indexed by.
    pub indices: Vec<usize>,
    /// The basis vector (or tuple of basis vectors) evaluated.
    pub witness: String,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(
        indices: &[usize],
        witness: impl Into<String>,
        lhs: &[Scalar],
        rhs: &[Scalar],
    ) -> Self {
        Failure {
            indices: indices.to_vec(),
            witness: witness.into(),
            lhs: format_vector(lhs),
            rhs: format_vector(rhs),
        }
    }

    /// A failure whose sides are not vectors (for example a rank or a set).
    pub fn described(
        indices: &[usize],
        witness: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Failure {
            indices: indices.to_vec(),
            witness: witness.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

/// The result of testing one identity over all its cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub cases: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Builds a check from per-case outcomes, in case order.
    pub fn from_outcomes(
        id: &str,
        statement: &str,
        kind: Kind,
        outcomes: impl IntoIterator<Item = Option<Failure>>,
    ) -> Check {
        let mut cases = 0;
        let mut failures: Vec<Failure> = Vec::new();
        for o in outcomes {
            cases += 1;
            if let Some(f) = o {
                failures.push(f);
            }
        }
        Check::from_failures(id, statement, kind, cases, failures)
    }

    /// Builds a check from its case count and the list of failing cases.
    pub fn from_failures(
        id: &str,
        statement: &str,
        kind: Kind,
        cases: usize,
        mut failures: Vec<Failure>,
    ) -> Check {
        failures.sort_by(|a, b| a.indices.cmp(&b.indices));
        let failure_count = failures.len();
        failures.truncate(MAX_RECORDED_FAILURES);
        let status = match (failure_count, kind) {
            (0, _) => Status::Pass,
            (_, Kind::Axiom) => Status::Fail,
            (_, Kind::Theorem) => Status::Violation,
        };
        Check {
            id: id.to_string(),
            statement: statement.to_string(),
            status,
            cases,
            failure_count,
            failures,
            note: None,
        }
    }

    /// A check that was not evaluated because a precondition failed.
    pub fn refused(id: &str, statement: &str, reason: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            statement: statement.to_string(),
            status: Status::Refused,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Checks that did not pass.
    pub fn problems(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// Sorts checks by id; failures are already sorted by indices.
    pub fn sorted(mut self) -> Report {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<9} {}  [{}]", c.status.label(), c.id, c.statement)?;
            if c.status != Status::Refused {
                write!(f, "  ({} cases)", c.cases)?;
            }
            writeln!(f)?;
            if let Some(note) = &c.note {
                writeln!(f, "          note: {note}")?;
            }
            for fl in &c.failures {
                writeln!(
                    f,
                    "          at {:?} on {}: lhs = {}, rhs = {}",
                    fl.indices, fl.witness, fl.lhs, fl.rhs
                )?;
            }
            if c.failure_count > c.failures.len() {
                writeln!(
                    f,
                    "          ... {} more",
                    c.failure_count - c.failures.len()
                )?;
            }
        }
        Ok(())
    }
}

/// Formats a vector as `[a, b, c]` in exact scalar syntax.
pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_text).collect();
    format!("[{}]", parts.join(", "))
}

/// Compares two vectors and produces the failure record when they differ.
pub fn compare(
    indices: &[usize],
    witness: impl FnOnce() -> String,
    lhs: &[Scalar],
    rhs: &[Scalar],
) -> Option<Failure> {
    (lhs != rhs).then(|| Failure::new(indices, witness(), lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn statuses_follow_kind() {
        let q = Field::Rational;
        let f = Failure::new(&[1], "e_0", &[q.one()], &[q.zero()]);
        let axiom = Check::from_outcomes("a", "x = y", Kind::Axiom, vec![None, Some(f.clone())]);
        assert_eq!(axiom.status, Status::Fail);
        assert_eq!(axiom.cases, 2);
        let thm = Check::from_outcomes("t", "x = y", Kind::Theorem, vec![Some(f)]);
        assert_eq!(thm.status, Status::Violation);
        let ok = Check::from_outcomes("p", "x = y", Kind::Axiom, vec![None]);
        assert!(ok.passed());
    }

    #[test]
    fn failures_sorted_and_capped() {
        let q = Field::Rational;
        let fails: Vec<Failure> = (0..40)
            .rev()
            .map(|i| Failure::new(&[i], "e_0", &[q.one()], &[q.zero()]))
            .collect();
        let c = Check::from_failures("c", "s", Kind::Axiom, 40, fails);
        assert_eq!(c.failure_count, 40);
        assert_eq!(c.failures.len(), MAX_RECORDED_FAILURES);
        assert_eq!(c.failures[0].indices, vec![0]);
    }

    #[test]
    fn display_mentions_witness() {
        let q = Field::Rational;
        let mut r = Report::new();
        r.push(Check::from_outcomes(
            "coalgebra.counit",
            "(id⊗ε)Δ = id",
            Kind::Axiom,
            vec![Some(Failure::new(
                &[0],
                "e_0",
                &[q.from_i64(2)],
                &[q.one()],
            ))],
        ));
        let text = r.to_string();
        assert!(text.contains("FAIL"));
        assert!(text.contains("e_0"));
        assert!(text.contains("lhs = [2]"));
        assert!(!r.passed());
    }
}

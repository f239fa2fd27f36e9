//! Outcomes of law and property checks.

use serde::Serialize;
use serde_json::Value;

use crate::semiring::Semiring;

/// What a check is supposed to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    /// A violating instance with both sides of the law fully evaluated.
    Counterexample { input: Value, lhs: Value, rhs: Value },
}

impl Outcome {
    pub fn counterexample(input: Value, lhs: Value, rhs: Value) -> Self {
        Outcome::Counterexample { input, lhs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub law: String,
    pub semiring: Semiring,
    pub instances: usize,
    pub expected: Expectation,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LawReport {
    pub fn new(
        suite: impl Into<String>,
        law: impl Into<String>,
        semiring: Semiring,
        expected: Expectation,
    ) -> Self {
        LawReport {
            suite: suite.into(),
            law: law.into(),
            semiring,
            instances: 0,
            expected,
            outcome: Outcome::Holds,
            note: None,
        }
    }

    pub fn finish(mut self, instances: usize, outcome: Outcome) -> Self {
        self.instances = instances;
        self.outcome = outcome;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    /// Whether the outcome is the expected one. An expected failure is met
    /// only by an actual counterexample.
    pub fn met(&self) -> bool {
        match self.expected {
            Expectation::Holds => self.holds(),
            Expectation::Counterexample => !self.holds(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

//! Identity-check reports shared by the verifiers.

use serde::Serialize;

use crate::poly::RationalFunction;

/// Outcome of checking one identity `lhs = rhs` as exact rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub hypotheses_ok: bool,
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Compares both sides; `pass` requires the hypotheses as well.
    pub fn compare(identity: impl Into<String>, hypotheses_ok: bool, lhs: RationalFunction, rhs: RationalFunction) -> Self {
        let pass = hypotheses_ok && lhs.equals(&rhs);
        VerificationReport {
            identity: identity.into(),
            hypotheses_ok,
            lhs,
            rhs,
            pass,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Whether the two sides agree, regardless of hypotheses.
    pub fn sides_agree(&self) -> bool {
        self.lhs.equals(&self.rhs)
    }
}

//! Spectral-sequence page replay over F_p: claimed pages with monomial
//! spans, generator-level differentials extended by the Leibniz rule,
//! pagewise homology verified cell by cell against the next claimed
//! page, bounded collapse scans, abutment comparisons, and long-exact-
//! sequence feasibility.
//!
//! The engine never propagates a computed page forward: each transition
//! is checked independently from its claimed source to its claimed
//! target, so a failure is attributable to one published display.

mod ah;
mod les;
mod page;
mod rule;
mod ser;
mod turn;

pub use ah::{two_line_ah, OperatorModule};
pub use les::{les_feasible, LesData, LesResult};
pub use page::{reduce_onto_page, CellBasis, ExpRange, Membership, Page, Summand, TwistCond};
pub use rule::{apply_rule, apply_rule_elem, Assign, DerivationRule};
pub use ser::{schedule_from_json, schedule_to_json};
pub use turn::{
    abutment_check, check_collapse, check_pages_equal, turn_page, CandidateSlot, PageTransition,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("assignment target leaves the span of page {page}: {witness}")]
    TargetOutsideBasis { page: String, witness: String },
    #[error("d after d is nonzero on page {page}: {witness}")]
    CompositionNonzero { page: String, witness: String },
    #[error("malformed page: {0}")]
    BadPage(String),
    #[error("cutoff {cutoff} exceeds validity bound {max}")]
    CutoffTooLarge { cutoff: i64, max: i64 },
    #[error(transparent)]
    Core(#[from] graded_core::CoreError),
    #[error("schedule deserialization: {0}")]
    Schedule(String),
}

/// One dimension disagreement, with a witness monomial when available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub location: String,
    pub expected: usize,
    pub actual: usize,
    pub witness: String,
}

/// Outcome of one machine check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            passed: true,
            mismatches: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn finish(&mut self) {
        self.passed = self.mismatches.is_empty() && self.notes.is_empty();
    }

    pub fn summary(&self) -> String {
        if self.passed {
            format!("{}: pass", self.check)
        } else {
            format!(
                "{}: FAIL ({} mismatches{})",
                self.check,
                self.mismatches.len(),
                if self.notes.is_empty() {
                    String::new()
                } else {
                    format!(", {} notes", self.notes.len())
                }
            )
        }
    }
}

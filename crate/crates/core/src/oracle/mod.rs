//! Ground truth independent of the decision procedures: membership,
//! bounded enumeration, witness search, certificate checks, and random
//! grammar generation.
//!
//! Nothing here decides scatteredness; finite samples can only confirm a
//! certificate or refute a claim.

mod earley;
mod enumerate;
mod random;
mod search;

use serde::Serialize;
use thiserror::Error;

pub use earley::{earley_member, Earley};
pub use enumerate::{enumerate, enumerate_by_membership, is_strictly_decreasing, is_strictly_increasing};
pub use random::{random_grammar, RandomGrammarParams};
pub use search::{derives_prefix, find_quasidense_witness, verify_decreasing, verify_witness, SEARCH_STATE_CAP};

use crate::grammar::Word;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration needs an epsilon-free grammar")]
    NotEpsilonFree,
}

/// Findings of an oracle run on one grammar.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    /// `<_ℓ`-increasing, duplicate-free.
    #[serde(serialize_with = "serialize_words")]
    pub enumerated: Vec<Word>,
    pub witness_found: Option<(String, String, String)>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl OracleReport {
    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn serialize_words<S: serde::Serializer>(words: &[Word], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(words.iter().map(|w| crate::wordalg::word_to_string(w)))
}

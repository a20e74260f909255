//! Decide whether the lexicographic ordering of a context-free language is
//! scattered, and whether it is a well-ordering.
//!
//! The pipeline: [`grammar`] parses and re-encodes the input over `0 < 1`,
//! [`normalize`] brings it into the shape the decision procedures expect,
//! [`structure`] computes strong components, and [`decide`] runs either the
//! pair-equation check or the automata-based check (or both) and attaches a
//! checkable certificate to every negative answer. [`oracle`] holds the
//! independent machinery used to confirm those certificates, and [`corpus`]
//! runs random-grammar cross-checks in bulk.

pub mod corpus;
pub mod decide;
pub mod grammar;
pub mod normalize;
pub mod oracle;
pub mod structure;
pub mod wordalg;

pub use decide::{decide, Algorithm, Certificate, DecideError, DecideOptions, Verdict};
pub use grammar::{parse_grammar, Grammar, Word};
pub use normalize::{normalize_pipeline, NormalizedGrammar};

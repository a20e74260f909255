//! The automata check: every self-embedding prefix of a recursive `X` must
//! be a power of `u0^X`. Also the well-order check and the certificates.

use super::barred::build_barred;
use super::dfa::{dfa_complement_power, dfa_incomparable_with, dfa_upward_deviation};
use super::intersect::intersect_witness;
use super::{Analysis, DecideError, DecreasingFamily};
use crate::grammar::{NtId, Word};
use crate::wordalg::prefix_incomparable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaiveOutcome {
    Scattered,
    /// `nonterminal ⇒+ deviation · nonterminal · p` with `deviation` not a
    /// power of `u0`.
    QuasiDense { nonterminal: NtId, deviation: Word },
}

pub fn naive_scattered(a: &Analysis) -> Result<NaiveOutcome, DecideError> {
    let g = a.grammar;
    for x in (0..g.num_nonterminals()).filter(|&x| a.structure.is_recursive(x)) {
        let u0 = a.candidate_u0(x)?;
        let b = build_barred(g, a.component(x), x, x);
        let found = intersect_witness(&b.grammar, b.source, &dfa_complement_power(u0.as_slice()), a.options.max_word_len)?;
        if let Some(deviation) = found {
            return Ok(NaiveOutcome::QuasiDense { nonterminal: x, deviation });
        }
    }
    Ok(NaiveOutcome::Scattered)
}

/// Two prefix-incomparable self-embedding prefixes of `x`, given one,
/// `deviation`, that is not a power of `u0^x`.
///
/// Prefers the shortest self-embedding prefix `u` together with the
/// shortest one incomparable to it. If every self-embedding prefix is
/// comparable with `u`, then `u · deviation` and `deviation · u` qualify:
/// they have equal length and differ, as `deviation` does not commute with
/// `u`.
pub fn witness_from_deviation(a: &Analysis, x: NtId, deviation: &[u8]) -> Result<(Word, Word), DecideError> {
    let u = a.spine(x, x)?.prefix;
    let b = build_barred(a.grammar, a.component(x), x, x);
    if let Some(v) = intersect_witness(&b.grammar, b.source, &dfa_incomparable_with(&u), a.options.max_word_len)? {
        return Ok((u, v));
    }
    let uw = [u.as_slice(), deviation].concat();
    let wu = [deviation, u.as_slice()].concat();
    debug_assert!(prefix_incomparable(&uw, &wu));
    Ok((uw, wu))
}

/// The first recursive `X` (by index) with a word `w ∈ L(X)` such that
/// `u0^n <_s w` for some `n`, and the shortest such word.
pub fn wellorder_check(a: &Analysis) -> Result<Option<(NtId, Word)>, DecideError> {
    let g = a.grammar;
    for x in (0..g.num_nonterminals()).filter(|&x| a.structure.is_recursive(x)) {
        let u0 = a.candidate_u0(x)?;
        if let Some(w) = intersect_witness(g, x, &dfa_upward_deviation(u0.as_slice()), a.options.max_word_len)? {
            return Ok(Some((x, w)));
        }
    }
    Ok(None)
}

/// Pumps the shortest self-embedding `x ⇒+ s x q` around `deviation`:
/// `w_k = s^k · deviation · q̂^k` with `q̂` the shortest word of `q`.
pub fn build_decreasing_family(a: &Analysis, x: NtId, deviation: Word) -> Result<DecreasingFamily, DecideError> {
    let spine = a.spine(x, x)?;
    let last = a.options.family_last_index;
    let longest = spine.prefix.len() * last + deviation.len() + spine.context.len() * last;
    if longest > a.options.max_word_len {
        return Err(DecideError::ResourceLimit {
            what: "decreasing family word length",
            limit: a.options.max_word_len,
        });
    }
    Ok(DecreasingFamily::new(x, spine.prefix, deviation, spine.context, last))
}

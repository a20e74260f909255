//! Shortest words of `L(X) ∩ L(d)` by a fixpoint over triples `(q, X, q')`,
//! with ties broken toward the `<_ℓ`-least word.

use std::cmp::Ordering;

use super::dfa::Dfa;
use crate::grammar::{Grammar, NtId, Symbol, Word};
use crate::wordalg::lex_cmp;

/// Shorter first, then `<_ℓ`.
pub fn shortlex_cmp(u: &[u8], v: &[u8]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| lex_cmp(u, v))
}

fn improves(candidate: &[u8], current: &Option<Word>) -> bool {
    current.as_ref().is_none_or(|c| shortlex_cmp(candidate, c) == Ordering::Less)
}

/// `best[X][q][q']`: the shortlex-least `w ∈ L(X)` driving `d` from `q` to
/// `q'`.
#[derive(Clone, Debug)]
pub struct ProductTable<'d> {
    dfa: &'d Dfa,
    best: Vec<Vec<Vec<Option<Word>>>>,
    /// Some candidate over the length cap was dropped, and its entry stayed
    /// empty; absent entries can no longer be trusted.
    incomplete: bool,
}

/// A word exceeded the configured cap while an answer was still missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthCapExceeded(pub usize);

impl<'d> ProductTable<'d> {
    pub fn build(g: &Grammar, dfa: &'d Dfa, max_len: usize) -> Self {
        let n = g.num_nonterminals();
        let k = dfa.num_states();
        let mut best: Vec<Vec<Vec<Option<Word>>>> = vec![vec![vec![None; k]; k]; n];
        let mut dropped = vec![vec![vec![false; k]; k]; n];
        let mut changed = true;
        while changed {
            changed = false;
            for r in g.rules() {
                for p in 0..k {
                    let mut frontier: Vec<Option<Word>> = vec![None; k];
                    frontier[p] = Some(Vec::new());
                    for sym in &r.rhs {
                        let mut next: Vec<Option<Word>> = vec![None; k];
                        for (q, w) in frontier.iter().enumerate() {
                            let Some(w) = w else { continue };
                            match *sym {
                                Symbol::Terminal(c) => {
                                    let mut v = w.clone();
                                    v.push(c);
                                    let q2 = dfa.step(q, c);
                                    if improves(&v, &next[q2]) {
                                        next[q2] = Some(v);
                                    }
                                }
                                Symbol::Nonterminal(b) => {
                                    for (q2, piece) in best[b][q].iter().enumerate() {
                                        let Some(piece) = piece else { continue };
                                        let mut v = w.clone();
                                        v.extend_from_slice(piece);
                                        if improves(&v, &next[q2]) {
                                            next[q2] = Some(v);
                                        }
                                    }
                                }
                            }
                        }
                        frontier = next;
                    }
                    for (q, w) in frontier.into_iter().enumerate() {
                        let Some(w) = w else { continue };
                        if w.len() > max_len {
                            dropped[r.lhs][p][q] = true;
                        } else if improves(&w, &best[r.lhs][p][q]) {
                            best[r.lhs][p][q] = Some(w);
                            changed = true;
                        }
                    }
                }
            }
        }
        let incomplete = (0..n).any(|x| (0..k).any(|p| (0..k).any(|q| dropped[x][p][q] && best[x][p][q].is_none())));
        ProductTable {
            dfa,
            best,
            incomplete,
        }
    }

    pub fn entry(&self, x: NtId, p: usize, q: usize) -> Option<&Word> {
        self.best[x][p][q].as_ref()
    }

    /// The shortlex-least word of `L(x)` accepted by the DFA from its start.
    pub fn witness(&self, x: NtId) -> Result<Option<Word>, LengthCapExceeded> {
        let p = self.dfa.start();
        let found = (0..self.dfa.num_states())
            .filter(|&q| self.dfa.is_accepting(q))
            .filter_map(|q| self.best[x][p][q].as_ref())
            .min_by(|u, v| shortlex_cmp(u, v))
            .cloned();
        match found {
            None if self.incomplete => Err(LengthCapExceeded(0)),
            other => Ok(other),
        }
    }
}

/// Some word of `L(x) ∩ L(d)`, shortlex-least.
pub fn intersect_witness(g: &Grammar, x: NtId, d: &Dfa, max_len: usize) -> Result<Option<Word>, LengthCapExceeded> {
    ProductTable::build(g, d, max_len)
        .witness(x)
        .map_err(|_| LengthCapExceeded(max_len))
}

/// `L(x) ∩ L(d) = ∅`.
pub fn cfg_dfa_intersect_empty(g: &Grammar, x: NtId, d: &Dfa, max_len: usize) -> Result<bool, LengthCapExceeded> {
    intersect_witness(g, x, d, max_len).map(|w| w.is_none())
}

/// Shortlex-least word of `L(x)` for every nonterminal.
pub fn shortest_words(g: &Grammar, max_len: usize) -> Result<Vec<Option<Word>>, LengthCapExceeded> {
    let d = Dfa::universal();
    let t = ProductTable::build(g, &d, max_len);
    (0..g.num_nonterminals())
        .map(|x| t.witness(x).map_err(|_| LengthCapExceeded(max_len)))
        .collect()
}

/// Shortlex-least word of `L(x)`; `None` when `x` is unproductive.
pub fn shortest_word(g: &Grammar, x: NtId) -> Option<Word> {
    shortest_words(g, usize::MAX).expect("no cap")[x].clone()
}

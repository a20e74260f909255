//! Bounded searches over leftmost sentential forms: self-embedding
//! prefixes `X ⇒+ w X p`, and confirmation of certificates.

use std::collections::{HashSet, VecDeque};

use super::Earley;
use crate::grammar::{Grammar, NtId, Symbol, Word};
use crate::structure::strong_components;
use crate::wordalg::prefix_incomparable;

/// Upper bound on explored states per search.
pub const SEARCH_STATE_CAP: usize = 200_000;

/// Keeps the shortest prefix of `rest` containing `nts + 1` nonterminals:
/// with `nts` expansion steps left, later symbols cannot be reached.
fn truncate_by_nonterminals(rest: &mut Vec<Symbol>, budget: usize) {
    let mut seen = 0;
    for i in 0..rest.len() {
        if !rest[i].is_terminal() {
            seen += 1;
            if seen > budget + 1 {
                rest.truncate(i);
                return;
            }
        }
    }
}

/// Breadth-first search, from each recursive nonterminal `X` and up to
/// `depth` leftmost rewriting steps, for two prefix-incomparable words
/// `u`, `v` with `X ⇒+ u X p` and `X ⇒+ v X q`.
pub fn find_quasidense_witness(g: &Grammar, depth: usize) -> Option<(NtId, Word, Word)> {
    let st = strong_components(g);
    for x in (0..g.num_nonterminals()).filter(|&x| st.is_recursive(x)) {
        let mut found: Vec<Word> = Vec::new();
        let mut visited: HashSet<(Word, Vec<Symbol>)> = HashSet::new();
        let mut queue: VecDeque<(Word, Vec<Symbol>, usize)> = VecDeque::new();
        queue.push_back((Vec::new(), vec![Symbol::Nonterminal(x)], 0));
        while let Some((prefix, rest, steps)) = queue.pop_front() {
            if steps >= depth || visited.len() > SEARCH_STATE_CAP {
                continue;
            }
            let Some(Symbol::Nonterminal(a)) = rest.first().copied() else {
                continue;
            };
            for r in g.rules_of(a) {
                let mut p = prefix.clone();
                let mut next: Vec<Symbol> = r.rhs.iter().chain(&rest[1..]).copied().collect();
                let lead = next.iter().take_while(|s| s.is_terminal()).count();
                p.extend(next.drain(..lead).map(|s| match s {
                    Symbol::Terminal(c) => c,
                    Symbol::Nonterminal(_) => unreachable!(),
                }));
                truncate_by_nonterminals(&mut next, depth - steps - 1);
                if next.first() == Some(&Symbol::Nonterminal(x)) && !found.contains(&p) {
                    if let Some(q) = found.iter().find(|q| prefix_incomparable(q, &p)) {
                        return Some((x, q.clone(), p));
                    }
                    found.push(p.clone());
                }
                if visited.insert((p.clone(), next.clone())) {
                    queue.push_back((p, next, steps + 1));
                }
            }
        }
    }
    None
}

/// Decides `x ⇒+ u x p` for some `p`.
///
/// With `sub[a][i][j]` meaning `a ⇒* u[i..j]` (answered by Earley), `reach[a][i]`
/// holds when `a ⇒+ u[i..] x γ`: some rule `a → s_1 … s_k` has a prefix
/// `s_1 … s_{t-1}` deriving `u[i..j]` and either `s_t = x` with `j = |u|`
/// or `reach[s_t][j]`. This is a least fixpoint.
pub fn derives_prefix(g: &Grammar, x: NtId, u: &[u8]) -> bool {
    let m = u.len();
    let n = g.num_nonterminals();
    let earley = Earley::new(g);
    let sub: Vec<Vec<Vec<bool>>> = (0..n)
        .map(|a| (0..=m).map(|i| (0..=m).map(|j| j >= i && earley.member(a, &u[i..j])).collect()).collect())
        .collect();
    // positions j that the prefix of `body` before each symbol can reach from i
    let prefix_ends = |body: &[Symbol], i: usize, mut visit: Box<dyn FnMut(usize, Symbol) -> bool + '_>| -> bool {
        let mut ends = vec![false; m + 1];
        ends[i] = true;
        for &sym in body {
            for j in (0..=m).filter(|&j| ends[j]) {
                if visit(j, sym) {
                    return true;
                }
            }
            let mut next = vec![false; m + 1];
            for j in (0..=m).filter(|&j| ends[j]) {
                match sym {
                    Symbol::Terminal(c) => {
                        if j < m && u[j] == c {
                            next[j + 1] = true;
                        }
                    }
                    Symbol::Nonterminal(b) => {
                        for k in j..=m {
                            next[k] |= sub[b][j][k];
                        }
                    }
                }
            }
            ends = next;
            if !ends.iter().any(|&e| e) {
                return false;
            }
        }
        false
    };
    let mut reach = vec![vec![false; m + 1]; n];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            for i in 0..=m {
                if reach[r.lhs][i] {
                    continue;
                }
                let snapshot = &reach;
                let hit = prefix_ends(
                    &r.rhs,
                    i,
                    Box::new(|j, sym| match sym {
                        Symbol::Nonterminal(b) => (b == x && j == m) || snapshot[b][j],
                        Symbol::Terminal(_) => false,
                    }),
                );
                if hit {
                    reach[r.lhs][i] = true;
                    changed = true;
                }
            }
        }
    }
    reach[x][0]
}

/// `u`, `v` are prefix-incomparable and both are self-embedding prefixes
/// of `x`.
pub fn verify_witness(g: &Grammar, x: NtId, u: &[u8], v: &[u8]) -> bool {
    prefix_incomparable(u, v) && derives_prefix(g, x, u) && derives_prefix(g, x, v)
}

/// Every word is in `L(x)` and the sequence strictly decreases under `<_ℓ`.
pub fn verify_decreasing(g: &Grammar, x: NtId, words: &[Word]) -> bool {
    let earley = Earley::new(g);
    words.iter().all(|w| earley.member(x, w)) && super::is_strictly_decreasing(words)
}

//! Earley recognition, including grammars with ε-rules and left recursion
//! (nullable nonterminals are skipped at prediction time).

use std::collections::HashSet;

use crate::grammar::{nullable_set, Grammar, NtId, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Item {
    rule: usize,
    dot: usize,
    origin: usize,
}

/// Recognizer over a fixed grammar; reusable across many words.
pub struct Earley<'g> {
    g: &'g Grammar,
    nullable: Vec<bool>,
    by_lhs: Vec<Vec<usize>>,
}

impl<'g> Earley<'g> {
    pub fn new(g: &'g Grammar) -> Self {
        let mut by_lhs = vec![Vec::new(); g.num_nonterminals()];
        for (i, r) in g.rules().iter().enumerate() {
            by_lhs[r.lhs].push(i);
        }
        Earley {
            g,
            nullable: nullable_set(g),
            by_lhs,
        }
    }

    /// `x ⇒* w`
    pub fn member(&self, x: NtId, w: &[u8]) -> bool {
        let rules = self.g.rules();
        let n = w.len();
        let nts = self.g.num_nonterminals();
        let mut sets: Vec<Vec<Item>> = vec![Vec::new(); n + 1];
        let mut seen: Vec<HashSet<Item>> = vec![HashSet::new(); n + 1];
        // waiting[pos][b]: items in set `pos` with the dot before `b`
        let mut waiting: Vec<Vec<Vec<Item>>> = vec![vec![Vec::new(); nts]; n + 1];
        let add = |sets: &mut Vec<Vec<Item>>, seen: &mut Vec<HashSet<Item>>, pos: usize, it: Item| {
            if seen[pos].insert(it) {
                sets[pos].push(it);
            }
        };
        for &r in &self.by_lhs[x] {
            add(&mut sets, &mut seen, 0, Item { rule: r, dot: 0, origin: 0 });
        }
        for pos in 0..=n {
            let mut predicted = vec![false; nts];
            let mut j = 0;
            while j < sets[pos].len() {
                let it = sets[pos][j];
                j += 1;
                let rhs = &rules[it.rule].rhs;
                match rhs.get(it.dot) {
                    Some(&Symbol::Terminal(c)) => {
                        if pos < n && w[pos] == c {
                            add(&mut sets, &mut seen, pos + 1, Item { dot: it.dot + 1, ..it });
                        }
                    }
                    Some(&Symbol::Nonterminal(b)) => {
                        waiting[pos][b].push(it);
                        if !predicted[b] {
                            predicted[b] = true;
                            for &r in &self.by_lhs[b] {
                                add(&mut sets, &mut seen, pos, Item { rule: r, dot: 0, origin: pos });
                            }
                        }
                        if self.nullable[b] {
                            add(&mut sets, &mut seen, pos, Item { dot: it.dot + 1, ..it });
                        }
                    }
                    None => {
                        let lhs = rules[it.rule].lhs;
                        // an empty completion (origin == pos) is covered by the
                        // nullable step above
                        if it.origin < pos {
                            for &p in &waiting[it.origin][lhs] {
                                add(&mut sets, &mut seen, pos, Item { dot: p.dot + 1, ..p });
                            }
                        }
                    }
                }
            }
        }
        sets[n]
            .iter()
            .any(|it| it.origin == 0 && rules[it.rule].lhs == x && it.dot == rules[it.rule].rhs.len())
    }
}

/// `x ⇒* w` in `g`.
pub fn earley_member(g: &Grammar, x: NtId, w: &[u8]) -> bool {
    Earley::new(g).member(x, w)
}

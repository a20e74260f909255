//! Bounded enumeration of a language, sorted lexicographically.

use std::collections::HashSet;

use super::{Earley, OracleError};
use crate::grammar::{Grammar, Symbol, Word};
use crate::wordalg::{lex_cmp, lex_compare, OrderRelation};

/// All words of `L(g)` of length at most `max_len`, `<_ℓ`-sorted.
///
/// Leftmost derivations are explored depth-first, pruning a sentential form
/// once it has more than `max_len` symbols (each symbol yields at least one
/// letter since `g` is ε-free).
pub fn enumerate(g: &Grammar, max_len: usize) -> Result<Vec<Word>, OracleError> {
    if g.has_epsilon_rules() {
        return Err(OracleError::NotEpsilonFree);
    }
    let mut words: HashSet<Word> = HashSet::new();
    let mut visited: HashSet<Vec<Symbol>> = HashSet::new();
    let mut stack = vec![vec![Symbol::Nonterminal(g.start())]];
    while let Some(form) = stack.pop() {
        match form.iter().position(|s| !s.is_terminal()) {
            None => {
                words.insert(Grammar::terminal_word(&form).expect("all terminals"));
            }
            Some(pos) => {
                let x = form[pos].nonterminal().expect("nonterminal");
                for r in g.rules_of(x) {
                    if form.len() - 1 + r.rhs.len() > max_len {
                        continue;
                    }
                    let mut next = form[..pos].to_vec();
                    next.extend_from_slice(&r.rhs);
                    next.extend_from_slice(&form[pos + 1..]);
                    if visited.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
    }
    let mut out: Vec<Word> = words.into_iter().collect();
    out.sort_by(|u, v| lex_cmp(u, v));
    debug_assert!(is_strictly_increasing(&out));
    Ok(out)
}

/// All words of `L(g)` of length at most `max_len`, found by testing every
/// word over the alphabet with an Earley recognizer. Works for any grammar.
pub fn enumerate_by_membership(g: &Grammar, max_len: usize) -> Vec<Word> {
    let k = g.alphabet().len() as u8;
    let earley = Earley::new(g);
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for len in 0..=max_len {
        if len > 0 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..k).map(move |c| {
                        let mut v = w.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.extend(layer.iter().filter(|w| earley.member(g.start(), w)).cloned());
    }
    out.sort_by(|u, v| lex_cmp(u, v));
    out
}

pub fn is_strictly_increasing(words: &[Word]) -> bool {
    words.windows(2).all(|p| {
        matches!(
            lex_compare(&p[0], &p[1]),
            OrderRelation::StrictLess | OrderRelation::ProperPrefix
        )
    })
}

pub fn is_strictly_decreasing(words: &[Word]) -> bool {
    words.windows(2).all(|p| {
        matches!(
            lex_compare(&p[0], &p[1]),
            OrderRelation::StrictGreater | OrderRelation::ProperExtension
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;
    use crate::wordalg::{parse_word, word_to_string};

    fn g(rules: &str) -> Grammar {
        parse_grammar(&format!("alphabet: 0 < 1\nstart: S\n{rules}")).unwrap()
    }

    fn strs(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| word_to_string(w)).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(strs(&enumerate(&g("S -> 0 S 1 | 0 1"), 6).unwrap()), ["000111", "0011", "01"]);
        assert_eq!(strs(&enumerate(&g("S -> 1 S 0 | 1 0"), 6).unwrap()), ["10", "1100", "111000"]);
        assert_eq!(strs(&enumerate(&g("S -> 0 | 1"), 1).unwrap()), ["0", "1"]);
        assert!(enumerate(&g("S -> 0 | 1"), 0).unwrap().is_empty());
        assert_eq!(enumerate(&g("S -> eps | 0"), 3), Err(OracleError::NotEpsilonFree));
    }

    #[test]
    fn enumeration_handles_unit_cycles() {
        let gr = g("S -> A | 0\nA -> S | 1 A");
        assert_eq!(strs(&enumerate(&gr, 3).unwrap()), ["0", "10", "110"]);
    }

    #[test]
    fn both_enumerators_agree() {
        for rules in ["S -> 0 0 S | 1 1 S | 0 1", "S -> A S B | 1\nA -> 0 | 1 1\nB -> 0 A | 1", "S -> S S | 0 | 1"] {
            let gr = g(rules);
            let a = enumerate(&gr, 7).unwrap();
            assert!(is_strictly_increasing(&a));
            assert_eq!(a, enumerate_by_membership(&gr, 7), "{rules}");
        }
    }

    #[test]
    fn monotonicity_helpers() {
        let ws: Vec<Word> = ["01", "0011", "000111"].iter().map(|s| parse_word(s).unwrap()).collect();
        assert!(is_strictly_decreasing(&ws));
        assert!(!is_strictly_increasing(&ws));
        assert!(!is_strictly_decreasing(&[ws[0].clone(), ws[0].clone()]));
    }
}

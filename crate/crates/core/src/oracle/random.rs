//! Seeded random grammars for cross-check corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grammar::{Grammar, OrderedAlphabet, Rule, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomGrammarParams {
    pub max_nts: usize,
    pub max_rules: usize,
    pub max_body: usize,
}

impl Default for RandomGrammarParams {
    fn default() -> Self {
        RandomGrammarParams {
            max_nts: 5,
            max_rules: 4,
            max_body: 4,
        }
    }
}

const NAMES: [&str; 8] = ["S", "A", "B", "C", "D", "E", "F", "G"];

fn nt_name(i: usize) -> String {
    NAMES.get(i).map_or_else(|| format!("N{i}"), |s| s.to_string())
}

/// A grammar over `0 < 1` determined by `seed`. No validity is promised:
/// the result may have useless symbols, ε-rules or left recursion.
pub fn random_grammar(seed: u64, params: RandomGrammarParams) -> Grammar {
    assert!(params.max_nts >= 1 && params.max_rules >= 1 && params.max_body >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=params.max_nts);
    let mut rules = Vec::new();
    for lhs in 0..n {
        for _ in 0..rng.gen_range(1..=params.max_rules) {
            let len = if rng.gen_bool(0.08) {
                0
            } else {
                rng.gen_range(1..=params.max_body)
            };
            let rhs = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.55) {
                        Symbol::Terminal(rng.gen_range(0..2))
                    } else {
                        Symbol::Nonterminal(rng.gen_range(0..n))
                    }
                })
                .collect();
            rules.push(Rule::new(lhs, rhs));
        }
    }
    Grammar::new(OrderedAlphabet::binary(), (0..n).map(nt_name).collect(), rules, 0)
        .expect("generated grammar is well-formed")
}

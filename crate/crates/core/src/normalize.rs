//! Language-preserving transformations into the normal form the decision
//! procedures need: binary alphabet, no useless nonterminals, no ε-rules,
//! no unit rules, no left recursion, and every nonterminal generating at
//! least two words.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::grammar::{
    cyclic_groups, encode_binary, left_corner_edges, productive_set, reachable_set, Grammar, NtId, Rule,
    Symbol, Word,
};
use crate::structure::left_corner_acyclic;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeError {
    /// The language is empty, or `{ε}`. Both orders are trivially scattered
    /// and well-ordered.
    #[error("the grammar generates no nonempty word (epsilon in language: {had_epsilon})")]
    EmptyLanguage { had_epsilon: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedGrammar {
    /// Over `0 < 1`; generates the encoded input language minus ε.
    pub grammar: Grammar,
    /// ε belonged to the input language.
    pub had_epsilon: bool,
    /// Nonterminals that generated exactly one word, replaced by that word.
    pub singleton_substitutions: Vec<(String, Word)>,
    /// The language is a single word; `grammar` is then `S -> w`.
    pub degenerate: bool,
}

/// Keeps the nonterminals flagged in `keep` (the start must be among them)
/// and the rules that only mention kept nonterminals, renumbering densely.
fn restrict(g: &Grammar, keep: &[bool], rules: impl IntoIterator<Item = Rule>) -> Grammar {
    let mut new_id = vec![usize::MAX; keep.len()];
    let mut names = Vec::new();
    for (x, &k) in keep.iter().enumerate() {
        if k {
            new_id[x] = names.len();
            names.push(g.name(x).to_string());
        }
    }
    let rules = rules
        .into_iter()
        .filter(|r| keep[r.lhs] && r.rhs.iter().all(|s| s.nonterminal().is_none_or(|n| keep[n])))
        .map(|r| {
            Rule::new(
                new_id[r.lhs],
                r.rhs
                    .iter()
                    .map(|s| match *s {
                        Symbol::Nonterminal(n) => Symbol::Nonterminal(new_id[n]),
                        t => t,
                    })
                    .collect(),
            )
        })
        .collect();
    Grammar::from_parts(g.alphabet().clone(), names, rules, new_id[g.start()])
}

/// Drops nonterminals unreachable from the start symbol.
fn prune_unreachable(g: &Grammar) -> Grammar {
    let reach = reachable_set(g, |_| true);
    restrict(g, &reach, g.rules().iter().cloned())
}

/// Removes unproductive, then unreachable, nonterminals.
pub fn remove_useless(g: &Grammar) -> Result<Grammar, NormalizeError> {
    let productive = productive_set(g);
    if !productive[g.start()] {
        return Err(NormalizeError::EmptyLanguage { had_epsilon: false });
    }
    let usable = |r: &Rule| r.rhs.iter().all(|s| s.nonterminal().is_none_or(|n| productive[n]));
    let rules: Vec<Rule> = g.rules().iter().filter(|r| usable(r)).cloned().collect();
    let trimmed = g.with_rules(rules);
    Ok(prune_unreachable(&trimmed))
}

/// Returns a grammar for `L(g) \ {ε}` and whether `ε ∈ L(g)`.
pub fn remove_epsilon(g: &Grammar) -> Result<(Grammar, bool), NormalizeError> {
    let nullable = crate::grammar::nullable_set(g);
    let had_epsilon = nullable[g.start()];
    let mut rules = Vec::new();
    for r in g.rules() {
        let optional: Vec<usize> = r
            .rhs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.nonterminal().is_some_and(|n| nullable[n]))
            .map(|(i, _)| i)
            .collect();
        for mask in 0u64..(1u64 << optional.len()) {
            let dropped: HashSet<usize> = optional
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i)
                .collect();
            let rhs: Vec<Symbol> = r
                .rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| !dropped.contains(i))
                .map(|(_, &s)| s)
                .collect();
            if !rhs.is_empty() {
                rules.push(Rule::new(r.lhs, rhs));
            }
        }
    }
    let out = g.with_rules(rules);
    match remove_useless(&out) {
        Ok(out) => Ok((out, had_epsilon)),
        Err(_) => Err(NormalizeError::EmptyLanguage { had_epsilon }),
    }
}

/// Eliminates unit rules `X -> Y` (and with them every unit cycle) by
/// closing each nonterminal under unit derivations. Expects an ε-free
/// grammar.
pub fn collapse_unit_cycles(g: &Grammar) -> Grammar {
    let n = g.num_nonterminals();
    if g.rules().iter().all(|r| r.unit_target().is_none()) {
        return g.clone();
    }
    let mut closure = vec![vec![false; n]; n];
    for (x, row) in closure.iter_mut().enumerate() {
        row[x] = true;
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for z in g.rules_of(y).filter_map(Rule::unit_target) {
                if !row[z] {
                    row[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    let mut rules = Vec::new();
    for (x, row) in closure.iter().enumerate() {
        for y in (0..n).filter(|&y| row[y]) {
            for r in g.rules_of(y).filter(|r| r.unit_target().is_none()) {
                rules.push(Rule::new(x, r.rhs.clone()));
            }
        }
    }
    prune_unreachable(&g.with_rules(rules))
}

/// Total body length past which ordered substitution gives up.
pub const SUBSTITUTION_BUDGET: usize = 4000;

/// Removes left recursion. Expects an ε-free grammar without unit rules;
/// the result has neither.
///
/// Ordered substitution is tried first; its output can grow exponentially,
/// so past [`SUBSTITUTION_BUDGET`] the selective left-corner transform is
/// used instead.
pub fn eliminate_left_recursion(g: &Grammar) -> Grammar {
    if left_corner_acyclic(g) {
        return g.clone();
    }
    substitute_left_recursion(g, SUBSTITUTION_BUDGET).unwrap_or_else(|| left_corner_transform(g))
}

/// Ordered substitution plus immediate left-recursion removal
/// (`A -> β | β A'`, `A' -> α | α A'`), applied to the nonterminals lying
/// on left-corner cycles. `None` once the rule bodies exceed `budget`
/// symbols in total.
pub fn substitute_left_recursion(g: &Grammar, budget: usize) -> Option<Grammar> {
    let size = |bodies: &[Vec<Vec<Symbol>>]| bodies.iter().flatten().map(Vec::len).sum::<usize>();
    let nullable = vec![false; g.num_nonterminals()];
    let order: Vec<NtId> = cyclic_groups(g.num_nonterminals(), &left_corner_edges(g, &nullable))
        .into_iter()
        .flatten()
        .collect();

    let mut names: Vec<String> = g.nonterminals().to_vec();
    let mut bodies: Vec<Vec<Vec<Symbol>>> = (0..names.len())
        .map(|x| g.rules_of(x).map(|r| r.rhs.clone()).collect())
        .collect();
    let mut taken: HashSet<String> = names.iter().cloned().collect();

    for (i, &ai) in order.iter().enumerate() {
        for &aj in &order[..i] {
            let mut next = Vec::new();
            for body in &bodies[ai] {
                if body[0] == Symbol::Nonterminal(aj) {
                    for d in &bodies[aj] {
                        let mut b = d.clone();
                        b.extend_from_slice(&body[1..]);
                        next.push(b);
                    }
                } else {
                    next.push(body.clone());
                }
            }
            bodies[ai] = dedup(next);
            if size(&bodies) > budget {
                return None;
            }
        }
        let (rec, base): (Vec<_>, Vec<_>) = bodies[ai]
            .iter()
            .cloned()
            .partition(|b| b[0] == Symbol::Nonterminal(ai));
        if rec.is_empty() {
            continue;
        }
        let prime_name = g.fresh_name(&format!("{}'", names[ai]), &taken);
        taken.insert(prime_name.clone());
        names.push(prime_name);
        let prime = names.len() - 1;
        let mut new_a = base.clone();
        new_a.extend(base.iter().map(|b| {
            let mut b = b.clone();
            b.push(Symbol::Nonterminal(prime));
            b
        }));
        let mut new_prime = Vec::new();
        for r in &rec {
            let alpha = r[1..].to_vec();
            debug_assert!(!alpha.is_empty(), "unit self-loop reached left-recursion removal");
            let mut with = alpha.clone();
            with.push(Symbol::Nonterminal(prime));
            new_prime.push(alpha);
            new_prime.push(with);
        }
        bodies[ai] = dedup(new_a);
        bodies.push(dedup(new_prime));
    }

    let rules = bodies
        .into_iter()
        .enumerate()
        .flat_map(|(x, bs)| bs.into_iter().map(move |b| Rule::new(x, b)))
        .collect();
    let out = Grammar::from_parts(g.alphabet().clone(), names, rules, g.start());
    debug_assert!(left_corner_acyclic(&out));
    Some(prune_unreachable(&out))
}

/// The selective left-corner transform over the set `L` of nonterminals on
/// left-corner cycles. For `A ∈ L`, `A_Y` generates the words `γ` with
/// `A ⇒* Y γ` along a left spine inside `L`:
///
/// ```text
/// A   -> X A_X      X ∉ L a left corner reachable from A through L
/// A_Y -> β A_B      for each rule B -> Y β, B ∈ L reachable from A
/// A_A -> ε
/// ```
///
/// The ε- and unit rules this creates are eliminated again. Output size is
/// polynomial in the input.
pub fn left_corner_transform(g: &Grammar) -> Grammar {
    let n = g.num_nonterminals();
    let nullable = vec![false; n];
    let mut in_l = vec![false; n];
    for x in cyclic_groups(n, &left_corner_edges(g, &nullable)).into_iter().flatten() {
        in_l[x] = true;
    }
    let mut names: Vec<String> = g.nonterminals().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut rules: Vec<Rule> = g.rules().iter().filter(|r| !in_l[r.lhs]).cloned().collect();
    let symbol_label = |s: Symbol| match s {
        Symbol::Terminal(c) => g.alphabet().letter(c).to_string(),
        Symbol::Nonterminal(y) => g.name(y).to_string(),
    };
    for a in (0..n).filter(|&a| in_l[a]) {
        // L-nonterminals on left spines from a, and every left corner seen
        let mut spine = vec![false; n];
        spine[a] = true;
        let mut stack = vec![a];
        let mut corners: Vec<Symbol> = vec![Symbol::Nonterminal(a)];
        while let Some(b) = stack.pop() {
            for r in g.rules_of(b) {
                let y = r.rhs[0];
                if !corners.contains(&y) {
                    corners.push(y);
                }
                if let Symbol::Nonterminal(y) = y {
                    if in_l[y] && !spine[y] {
                        spine[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        let mut slash: HashMap<Symbol, NtId> = HashMap::new();
        for &y in &corners {
            let name = g.fresh_name(&format!("{}_{}", g.name(a), symbol_label(y)), &taken);
            taken.insert(name.clone());
            slash.insert(y, names.len());
            names.push(name);
        }
        for &y in &corners {
            let exits = match y {
                Symbol::Terminal(_) => true,
                Symbol::Nonterminal(y) => !in_l[y],
            };
            if exits {
                rules.push(Rule::new(a, vec![y, Symbol::Nonterminal(slash[&y])]));
            }
        }
        for b in (0..n).filter(|&b| spine[b]) {
            for r in g.rules_of(b) {
                let mut rhs = r.rhs[1..].to_vec();
                rhs.push(Symbol::Nonterminal(slash[&Symbol::Nonterminal(b)]));
                rules.push(Rule::new(slash[&r.rhs[0]], rhs));
            }
        }
        rules.push(Rule::new(slash[&Symbol::Nonterminal(a)], Vec::new()));
    }
    let out = Grammar::from_parts(g.alphabet().clone(), names, rules, g.start());
    let (out, _) = remove_epsilon(&out).expect("the start symbol stays productive");
    let out = collapse_unit_cycles(&out);
    debug_assert!(left_corner_acyclic(&out));
    debug_assert!(!out.has_epsilon_rules());
    out
}

fn dedup(bodies: Vec<Vec<Symbol>>) -> Vec<Vec<Symbol>> {
    let mut seen = BTreeSet::new();
    bodies.into_iter().filter(|b| seen.insert(b.clone())).collect()
}

/// `min(|L(X)|, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WordCount {
    Zero,
    One,
    TwoOrMore,
}

/// Abstraction of a language by "empty", "exactly this word", or "at least
/// two words"; concatenation and union are exact on it.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Count {
    Empty,
    One(Word),
    Many,
}

fn word_counts(g: &Grammar) -> Vec<Count> {
    let mut value = vec![Count::Empty; g.num_nonterminals()];
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..g.num_nonterminals() {
            let mut acc = Count::Empty;
            for r in g.rules_of(x) {
                let mut word = Vec::new();
                let mut many = false;
                let mut empty = false;
                for s in &r.rhs {
                    match *s {
                        Symbol::Terminal(c) => word.push(c),
                        Symbol::Nonterminal(n) => match &value[n] {
                            Count::Empty => empty = true,
                            Count::Many => many = true,
                            Count::One(w) => word.extend_from_slice(w),
                        },
                    }
                }
                let rule_value = if empty {
                    Count::Empty
                } else if many {
                    Count::Many
                } else {
                    Count::One(word)
                };
                acc = match (acc, rule_value) {
                    (Count::Empty, v) | (v, Count::Empty) => v,
                    (Count::One(a), Count::One(b)) if a == b => Count::One(a),
                    _ => Count::Many,
                };
            }
            if acc != value[x] {
                value[x] = acc;
                changed = true;
            }
        }
    }
    value
}

/// Saturating count of the words generated by `x`. Counts distinct words,
/// so ambiguous derivations of one word count once.
pub fn count_words_saturating(g: &Grammar, x: NtId) -> WordCount {
    match word_counts(g)[x] {
        Count::Empty => WordCount::Zero,
        Count::One(_) => WordCount::One,
        Count::Many => WordCount::TwoOrMore,
    }
}

/// Replaces every nonterminal generating exactly one word by that word.
/// The flag is set when the start symbol itself is such a nonterminal, in
/// which case the result is the one-rule grammar `S -> w`.
pub fn inline_singletons(g: &Grammar) -> (Grammar, Vec<(String, Word)>, bool) {
    let counts = word_counts(g);
    if let Count::One(w) = &counts[g.start()] {
        let mut keep = vec![false; g.num_nonterminals()];
        keep[g.start()] = true;
        let rule = Rule::new(g.start(), w.iter().map(|&c| Symbol::Terminal(c)).collect());
        let subs = vec![(g.name(g.start()).to_string(), w.clone())];
        return (restrict(g, &keep, [rule]), subs, true);
    }
    let single = |n: NtId| match &counts[n] {
        Count::One(w) => Some(w),
        _ => None,
    };
    let subs: Vec<(String, Word)> = (0..g.num_nonterminals())
        .filter_map(|x| single(x).map(|w| (g.name(x).to_string(), w.clone())))
        .collect();
    if subs.is_empty() {
        return (g.clone(), subs, false);
    }
    let keep: Vec<bool> = (0..g.num_nonterminals()).map(|x| single(x).is_none()).collect();
    let rules: Vec<Rule> = g
        .rules()
        .iter()
        .filter(|r| keep[r.lhs])
        .map(|r| {
            let rhs = r
                .rhs
                .iter()
                .flat_map(|s| match *s {
                    Symbol::Nonterminal(n) => match single(n) {
                        Some(w) => w.iter().map(|&c| Symbol::Terminal(c)).collect(),
                        None => vec![*s],
                    },
                    t => vec![t],
                })
                .collect();
            Rule::new(r.lhs, rhs)
        })
        .collect();
    (restrict(g, &keep, rules), subs, false)
}

/// Runs the full pipeline: binary encoding, useless-symbol removal,
/// ε-removal, unit-rule elimination, left-recursion removal, a second
/// useless-symbol pass and singleton inlining.
pub fn normalize_pipeline(g: &Grammar) -> Result<NormalizedGrammar, NormalizeError> {
    let encoded = encode_binary(g);
    let had_epsilon = crate::grammar::nullable_set(&encoded)[encoded.start()];
    let clean = remove_useless(&encoded).map_err(|_| NormalizeError::EmptyLanguage { had_epsilon: false })?;
    let (eps_free, had_epsilon_checked) = remove_epsilon(&clean)?;
    debug_assert_eq!(had_epsilon, had_epsilon_checked);
    let unit_free = collapse_unit_cycles(&eps_free);
    let non_left = eliminate_left_recursion(&unit_free);
    let clean = remove_useless(&non_left).map_err(|_| NormalizeError::EmptyLanguage { had_epsilon })?;
    let (grammar, singleton_substitutions, degenerate) = inline_singletons(&clean);
    Ok(NormalizedGrammar {
        grammar,
        had_epsilon,
        singleton_substitutions,
        degenerate,
    })
}

//! Self-embedding prefixes within a strong component: the barred grammar
//! generating `{ε} ∪ {w : X ⇒+ w Y p}`, and the shortest such derivation
//! spine together with its right context.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::intersect::shortlex_cmp;
use crate::grammar::{Grammar, NtId, Rule, Symbol, Word};
use crate::structure::StrongComponent;

/// One step `Z → p W q` of a spine, `Z, W` in the component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpineEdge {
    pub from: NtId,
    pub to: NtId,
    /// Index into the base grammar's rules.
    pub rule: usize,
    /// Position of `W` in the rule body.
    pub pos: usize,
}

pub fn spine_edges(g: &Grammar, component: &StrongComponent) -> Vec<SpineEdge> {
    let mut out = Vec::new();
    for (ri, r) in g.rules().iter().enumerate() {
        if !component.contains(r.lhs) {
            continue;
        }
        for (pos, s) in r.rhs.iter().enumerate() {
            if let Some(w) = s.nonterminal().filter(|&w| component.contains(w)) {
                out.push(SpineEdge {
                    from: r.lhs,
                    to: w,
                    rule: ri,
                    pos,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct BarredGrammar {
    /// The base rules plus `Z̄ → p W̄` for every spine edge and `Ȳ → ε`;
    /// starts at `X̄`.
    pub grammar: Grammar,
    /// `barred[i]` is the barred copy of `component.members[i]`.
    pub barred: Vec<NtId>,
    pub source: NtId,
    pub target: NtId,
}

pub fn build_barred(g: &Grammar, component: &StrongComponent, x: NtId, y: NtId) -> BarredGrammar {
    assert!(component.contains(x) && component.contains(y));
    let base = g.num_nonterminals();
    let mut names: Vec<String> = g.nonterminals().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut barred = Vec::with_capacity(component.members.len());
    for &m in &component.members {
        let name = g.fresh_name(&format!("{}_bar", g.name(m)), &taken);
        taken.insert(name.clone());
        barred.push(names.len());
        names.push(name);
    }
    let bar = |z: NtId| barred[component.members.binary_search(&z).expect("member")];
    let mut rules = g.rules().to_vec();
    for e in spine_edges(g, component) {
        let mut rhs = g.rules()[e.rule].rhs[..e.pos].to_vec();
        rhs.push(Symbol::Nonterminal(bar(e.to)));
        rules.push(Rule::new(bar(e.from), rhs));
    }
    rules.push(Rule::new(bar(y), Vec::new()));
    debug_assert_eq!(names.len(), base + component.members.len());
    let grammar = Grammar::from_parts(g.alphabet().clone(), names, rules, bar(x));
    BarredGrammar {
        grammar,
        barred: barred.clone(),
        source: bar(x),
        target: bar(y),
    }
}

/// A derivation `X ⇒* prefix Y context'` where `context` is the shortest
/// word of the right context `context'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    pub prefix: Word,
    pub context: Word,
}

fn concat(parts: &[&[u8]]) -> Word {
    parts.concat()
}

fn body_word(short: &[Option<Word>], body: &[Symbol]) -> Word {
    body.iter()
        .flat_map(|s| match *s {
            Symbol::Terminal(c) => vec![c],
            Symbol::Nonterminal(z) => short[z].clone().expect("productive"),
        })
        .collect()
}

fn better(candidate: &Spine, current: &Option<Spine>) -> bool {
    current
        .as_ref()
        .is_none_or(|c| shortlex_cmp(&candidate.prefix, &c.prefix) == Ordering::Less)
}

/// The spine `X ⇒+ w Y p` (or `⇒*` when `plus` is false) with the
/// shortlex-least prefix `w`. `short` holds the shortest word of every
/// nonterminal.
pub fn shortest_spine(
    g: &Grammar,
    short: &[Option<Word>],
    component: &StrongComponent,
    x: NtId,
    y: NtId,
    plus: bool,
) -> Option<Spine> {
    let edges = spine_edges(g, component);
    let labels: Vec<(Word, Word)> = edges
        .iter()
        .map(|e| {
            let rhs = &g.rules()[e.rule].rhs;
            (body_word(short, &rhs[..e.pos]), body_word(short, &rhs[e.pos + 1..]))
        })
        .collect();
    // star[w]: best spine W ⇒* v Y
    let mut star: Vec<Option<Spine>> = vec![None; g.num_nonterminals()];
    star[y] = Some(Spine {
        prefix: Vec::new(),
        context: Vec::new(),
    });
    let extend = |lab: &(Word, Word), inner: &Spine| Spine {
        prefix: concat(&[&lab.0, &inner.prefix]),
        context: concat(&[&inner.context, &lab.1]),
    };
    let mut changed = true;
    while changed {
        changed = false;
        for (e, lab) in edges.iter().zip(&labels) {
            let Some(inner) = star[e.to].clone() else { continue };
            let cand = extend(lab, &inner);
            if better(&cand, &star[e.from]) {
                star[e.from] = Some(cand);
                changed = true;
            }
        }
    }
    if !plus {
        return star[x].clone();
    }
    let mut best: Option<Spine> = None;
    for (e, lab) in edges.iter().zip(&labels).filter(|(e, _)| e.from == x) {
        if let Some(inner) = &star[e.to] {
            let cand = extend(lab, inner);
            if better(&cand, &best) {
                best = Some(cand);
            }
        }
    }
    best
}

//! The pair-equation check: candidate `u0`, `φ`, `ψ` per recursive
//! component, then the composition, rule-prefix and rule-body equations.

use std::collections::{BTreeMap, BTreeSet};

use super::dfa::{dfa_avoiding, dfa_length_at_least};
use super::intersect::intersect_witness;
use super::{Analysis, DecideError};
use crate::grammar::{Grammar, NtId, Symbol, Word};
use crate::structure::sandwich_set;
use crate::wordalg::{word_to_string, ChainValue, PairAlgebra, SPair, WordError};

/// Candidates for one recursive strong component.
#[derive(Clone, Debug)]
pub struct ComponentTable {
    pub members: Vec<NtId>,
    pub algebra: PairAlgebra,
    pub phi: BTreeMap<(NtId, NtId), SPair>,
    pub psi: BTreeMap<NtId, SPair>,
    /// Nonterminals occurring left of a member in some sentential form
    /// derived from the component.
    pub sandwich: BTreeSet<NtId>,
}

#[derive(Clone, Debug, Default)]
pub struct PhiPsiTable {
    pub components: Vec<ComponentTable>,
}

/// Why the check rejected the grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureSite {
    /// A prefix of `x ⇒+ w y p` is not a factor of any power of `u0`.
    IllegitimatePhi { x: NtId, y: NtId, word: Word },
    IllegitimatePsi { z: NtId, word: Word },
    /// Two words of `L(z)` share no pair language.
    NoCommonPsi { z: NtId, first: Word, second: Word },
    /// `φ(x, y) ⊗ φ(y, z) ≠ φ(x, z)`
    Composition { x: NtId, y: NtId, z: NtId },
    /// The body prefix before position `pos` does not evaluate to `φ`.
    RulePrefix { rule: usize, pos: usize },
    /// The rule body does not evaluate to `ψ` of its left-hand side.
    RuleBody { rule: usize },
}

impl FailureSite {
    pub fn describe(&self, g: &Grammar) -> String {
        let rule = |i: usize| {
            let r = &g.rules()[i];
            format!("{} -> {}", g.name(r.lhs), g.format_body(&r.rhs))
        };
        match self {
            FailureSite::IllegitimatePhi { x, y, word } => format!(
                "prefix {} of a derivation {} =>+ ... {} is not a factor of a power of u0",
                g.format_word(word),
                g.name(*x),
                g.name(*y)
            ),
            FailureSite::IllegitimatePsi { z, word } => format!(
                "word {} of {} is not a factor of a power of u0",
                g.format_word(word),
                g.name(*z)
            ),
            FailureSite::NoCommonPsi { z, first, second } => format!(
                "words {} and {} of {} lie in no common pair language",
                g.format_word(first),
                g.format_word(second),
                g.name(*z)
            ),
            FailureSite::Composition { x, y, z } => format!(
                "phi({x}, {y}) (x) phi({y}, {z}) != phi({x}, {z})",
                x = g.name(*x),
                y = g.name(*y),
                z = g.name(*z)
            ),
            FailureSite::RulePrefix { rule: i, pos } => {
                format!("prefix before position {} of rule {}", pos, rule(*i))
            }
            FailureSite::RuleBody { rule: i } => format!("body of rule {}", rule(*i)),
        }
    }
}

#[derive(Clone, Debug)]
pub enum FastOutcome {
    Scattered(PhiPsiTable),
    QuasiDense(FailureSite),
    /// No unique candidate for `ψ` of this nonterminal.
    Ambiguous(NtId),
}

/// The pair of the prefix of `x ⇒+ w y p`, padded with self-embedding
/// prefixes of `x` until it is at least as long as `u0`.
pub fn candidate_phi(a: &Analysis, alg: &PairAlgebra, x: NtId, y: NtId) -> Result<Result<SPair, Word>, DecideError> {
    let mut w = a.spine(x, y)?.prefix;
    if w.len() < alg.u0().len() {
        let s = a.spine(x, x)?.prefix;
        let k = (alg.u0().len() - w.len()).div_ceil(s.len());
        w = [s.repeat(k), w].concat();
    }
    Ok(match alg.pair_of_word(&w) {
        Ok(p) => Ok(p),
        Err(WordError::NotLegitimate { .. }) => Err(w),
        Err(e) => unreachable!("padded word: {e}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiCandidate {
    Pair(SPair),
    Illegitimate(Word),
    NoCommon(Word, Word),
    Ambiguous,
}

/// The pair whose language should contain `L(z)`: the pair of a word of
/// length at least `|u0|` if `L(z)` has one, else the pair shared by the
/// two shortest words.
pub fn candidate_psi(a: &Analysis, alg: &PairAlgebra, z: NtId) -> Result<PsiCandidate, DecideError> {
    let g = a.grammar;
    let cap = a.options.max_word_len;
    if let Some(long) = intersect_witness(g, z, &dfa_length_at_least(alg.u0().len()), cap)? {
        return Ok(match alg.pair_of_word(&long) {
            Ok(p) => PsiCandidate::Pair(p),
            Err(_) => PsiCandidate::Illegitimate(long),
        });
    }
    let first = a.shortest[z].clone();
    if !alg.is_legitimate(&first) {
        return Ok(PsiCandidate::Illegitimate(first));
    }
    let mut common = alg.pairs_containing(&first);
    if let Some(second) = intersect_witness(g, z, &dfa_avoiding(&first), cap)? {
        if !alg.is_legitimate(&second) {
            return Ok(PsiCandidate::Illegitimate(second));
        }
        let theirs = alg.pairs_containing(&second);
        common.retain(|p| theirs.contains(p));
        if common.is_empty() {
            return Ok(PsiCandidate::NoCommon(first, second));
        }
    }
    Ok(match common.as_slice() {
        [p] => PsiCandidate::Pair(*p),
        _ => PsiCandidate::Ambiguous,
    })
}

/// Computes every candidate and checks the equations.
pub fn fast_scattered(a: &Analysis) -> Result<FastOutcome, DecideError> {
    let g = a.grammar;
    let mut table = PhiPsiTable::default();
    for c in a.structure.recursive_components() {
        let alg = PairAlgebra::new(a.candidate_u0(c.members[0])?);
        let mut phi = BTreeMap::new();
        for &x in &c.members {
            for &y in &c.members {
                match candidate_phi(a, &alg, x, y)? {
                    Ok(p) => {
                        phi.insert((x, y), p);
                    }
                    Err(word) => return Ok(FastOutcome::QuasiDense(FailureSite::IllegitimatePhi { x, y, word })),
                }
            }
        }
        let sandwich = sandwich_set(g, &a.structure.relation, c);
        let mut psi = BTreeMap::new();
        for &z in &sandwich {
            let site = match candidate_psi(a, &alg, z)? {
                PsiCandidate::Pair(p) => {
                    psi.insert(z, p);
                    continue;
                }
                PsiCandidate::Ambiguous => return Ok(FastOutcome::Ambiguous(z)),
                PsiCandidate::Illegitimate(word) => FailureSite::IllegitimatePsi { z, word },
                PsiCandidate::NoCommon(first, second) => FailureSite::NoCommonPsi { z, first, second },
            };
            return Ok(FastOutcome::QuasiDense(site));
        }
        table.components.push(ComponentTable {
            members: c.members.clone(),
            algebra: alg,
            phi,
            psi,
            sandwich,
        });
    }
    Ok(match verify_pair_equations(g, &table) {
        Ok(()) => FastOutcome::Scattered(table),
        Err(site) => FastOutcome::QuasiDense(site),
    })
}

fn satisfies(alg: &PairAlgebra, value: &ChainValue, expected: SPair) -> bool {
    match value {
        ChainValue::Pair(p) => *p == expected,
        ChainValue::PureWord(w) => alg.member(w, expected),
        ChainValue::Undefined => false,
    }
}

/// Folds a rule body through `⊗`, calling `at` before each nonterminal
/// with the value of the body prefix so far. Nonterminals without a `ψ`
/// make every later prefix undefined.
fn fold_body(
    t: &ComponentTable,
    body: &[Symbol],
    mut at: impl FnMut(usize, NtId, &ChainValue) -> bool,
) -> Result<ChainValue, usize> {
    let alg = &t.algebra;
    let mut acc = ChainValue::PureWord(Vec::new());
    for (pos, s) in body.iter().enumerate() {
        match *s {
            Symbol::Terminal(c) => acc = alg.otimes(&acc, &ChainValue::PureWord(vec![c])),
            Symbol::Nonterminal(y) => {
                if !at(pos, y, &acc) {
                    return Err(pos);
                }
                acc = match t.psi.get(&y) {
                    Some(&p) => alg.otimes(&acc, &ChainValue::Pair(p)),
                    None => ChainValue::Undefined,
                };
            }
        }
    }
    Ok(acc)
}

/// Checks the equations for every component of `table`.
pub fn verify_pair_equations(g: &Grammar, table: &PhiPsiTable) -> Result<(), FailureSite> {
    for t in &table.components {
        let alg = &t.algebra;
        for &x in &t.members {
            for &y in &t.members {
                for &z in &t.members {
                    let lhs = alg.otimes(&ChainValue::Pair(t.phi[&(x, y)]), &ChainValue::Pair(t.phi[&(y, z)]));
                    if lhs != ChainValue::Pair(t.phi[&(x, z)]) {
                        return Err(FailureSite::Composition { x, y, z });
                    }
                }
            }
        }
        for (ri, r) in g.rules().iter().enumerate() {
            let in_component = t.members.binary_search(&r.lhs).is_ok();
            if in_component {
                let check = |_: usize, y: NtId, v: &ChainValue| {
                    t.members.binary_search(&y).is_err() || satisfies(alg, v, t.phi[&(r.lhs, y)])
                };
                if let Err(pos) = fold_body(t, &r.rhs, check) {
                    return Err(FailureSite::RulePrefix { rule: ri, pos });
                }
            }
            if let Some(&expected) = t.psi.get(&r.lhs) {
                let value = fold_body(t, &r.rhs, |_, _, _| true).expect("no prefix checks");
                if !satisfies(alg, &value, expected) {
                    return Err(FailureSite::RuleBody { rule: ri });
                }
            }
        }
    }
    Ok(())
}

/// Human-readable dump of the candidates.
pub fn describe_table(g: &Grammar, table: &PhiPsiTable) -> String {
    let mut out = String::new();
    for t in &table.components {
        let alg = &t.algebra;
        out.push_str(&format!("u0 = {}\n", word_to_string(alg.u0().as_slice())));
        for (&(x, y), &p) in &t.phi {
            out.push_str(&format!("  phi({}, {}) = {}\n", g.name(x), g.name(y), alg.format_pair(p)));
        }
        for (&z, &p) in &t.psi {
            out.push_str(&format!("  psi({}) = {}\n", g.name(z), alg.format_pair(p)));
        }
    }
    out
}

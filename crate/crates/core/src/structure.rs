//! Derivability between nonterminals: the `≼` relation, strong components
//! with heights, recursiveness, left-corner acyclicity, and the set of
//! nonterminals that occur to the left of a component member in some
//! sentential form.

use std::collections::BTreeSet;

use crate::grammar::{cyclic_groups, left_corner_edges, Grammar, NtId};

/// `Y ≼ X` iff `X ⇒* p Y q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivesRelation {
    /// `reach[x][y]`: `x ⇒* p y q` (reflexive)
    reach: Vec<Vec<bool>>,
    /// `reach_plus[x][y]`: `x ⇒+ p y q`
    reach_plus: Vec<Vec<bool>>,
}

impl DerivesRelation {
    pub fn len(&self) -> usize {
        self.reach.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reach.is_empty()
    }

    /// `y ≼ x`
    pub fn below_or_equal(&self, y: NtId, x: NtId) -> bool {
        self.reach[x][y]
    }

    /// `x ⇒+ p y q`
    pub fn derives_plus(&self, x: NtId, y: NtId) -> bool {
        self.reach_plus[x][y]
    }

    /// `x ≈ y`
    pub fn equivalent(&self, x: NtId, y: NtId) -> bool {
        self.reach[x][y] && self.reach[y][x]
    }

    /// `y ≺ x`
    pub fn strictly_below(&self, y: NtId, x: NtId) -> bool {
        self.reach[x][y] && !self.reach[y][x]
    }
}

pub fn derives_relation(g: &Grammar) -> DerivesRelation {
    let n = g.num_nonterminals();
    let mut plus = vec![vec![false; n]; n];
    for r in g.rules() {
        for y in r.rhs.iter().filter_map(|s| s.nonterminal()) {
            plus[r.lhs][y] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if plus[i][k] {
                for j in 0..n {
                    if plus[k][j] {
                        plus[i][j] = true;
                    }
                }
            }
        }
    }
    let mut reach = plus.clone();
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    DerivesRelation {
        reach,
        reach_plus: plus,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongComponent {
    /// Sorted by index.
    pub members: Vec<NtId>,
    /// Length of the longest `≺`-chain ending here; minimal components have
    /// height 1.
    pub height: usize,
    /// Some (equivalently every) member `X` has `X ⇒+ p X q`.
    pub recursive: bool,
}

impl StrongComponent {
    pub fn contains(&self, x: NtId) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct Structure {
    pub relation: DerivesRelation,
    /// Ordered by height, then by smallest member.
    pub components: Vec<StrongComponent>,
    /// Index into `components` for each nonterminal.
    pub component_of: Vec<usize>,
}

impl Structure {
    pub fn component(&self, x: NtId) -> &StrongComponent {
        &self.components[self.component_of[x]]
    }

    pub fn recursive_components(&self) -> impl Iterator<Item = &StrongComponent> {
        self.components.iter().filter(|c| c.recursive)
    }

    pub fn is_recursive(&self, x: NtId) -> bool {
        self.component(x).recursive
    }
}

pub fn strong_components(g: &Grammar) -> Structure {
    let relation = derives_relation(g);
    let n = g.num_nonterminals();
    let mut groups: Vec<Vec<NtId>> = Vec::new();
    let mut group_of = vec![usize::MAX; n];
    for x in 0..n {
        if group_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<NtId> = (x..n).filter(|&y| relation.equivalent(x, y)).collect();
        for &y in &members {
            group_of[y] = groups.len();
        }
        groups.push(members);
    }

    // heights by memoized longest path in the condensation
    let mut heights = vec![0usize; groups.len()];
    fn height_of(
        c: usize,
        groups: &[Vec<NtId>],
        rel: &DerivesRelation,
        heights: &mut Vec<usize>,
    ) -> usize {
        if heights[c] > 0 {
            return heights[c];
        }
        let rep = groups[c][0];
        let mut best = 0;
        for d in 0..groups.len() {
            if d != c && rel.strictly_below(groups[d][0], rep) {
                best = best.max(height_of(d, groups, rel, heights));
            }
        }
        heights[c] = best + 1;
        heights[c]
    }
    for c in 0..groups.len() {
        height_of(c, &groups, &relation, &mut heights);
    }

    let mut components: Vec<StrongComponent> = groups
        .into_iter()
        .zip(&heights)
        .map(|(members, &height)| StrongComponent {
            recursive: relation.derives_plus(members[0], members[0]),
            members,
            height,
        })
        .collect();
    components.sort_by_key(|c| (c.height, c.members[0]));
    let mut component_of = vec![0; n];
    for (i, c) in components.iter().enumerate() {
        for &x in &c.members {
            component_of[x] = i;
        }
    }
    Structure {
        relation,
        components,
        component_of,
    }
}

/// No cycle in the graph `X → Y` for rules `X → Y q`. On ε-free grammars
/// this is exactly the absence of derivations `X ⇒+ X p`.
pub fn left_corner_acyclic(g: &Grammar) -> bool {
    let nullable = vec![false; g.num_nonterminals()];
    cyclic_groups(g.num_nonterminals(), &left_corner_edges(g, &nullable)).is_empty()
}

/// Nonterminals `Z` with a derivation `X0 ⇒* p Z q Y r`, `X0, Y` in the
/// component.
///
/// Such a derivation exists iff some rule `W → s` with `W` derivable from
/// the component has nonterminals `A` before `B` in `s` where `Z ≼ A` and
/// some component member is `≼ B`: take the lowest rule at which the paths
/// to `Z` and to `Y` split.
pub fn sandwich_set(g: &Grammar, rel: &DerivesRelation, component: &StrongComponent) -> BTreeSet<NtId> {
    let n = g.num_nonterminals();
    let from_component = |w: NtId| component.members.iter().any(|&c| rel.below_or_equal(w, c));
    let reaches_component = |b: NtId| component.members.iter().any(|&c| rel.below_or_equal(c, b));
    let mut out = BTreeSet::new();
    for r in g.rules().iter().filter(|r| from_component(r.lhs)) {
        let nts: Vec<NtId> = r.rhs.iter().filter_map(|s| s.nonterminal()).collect();
        for (j, &b) in nts.iter().enumerate() {
            if !reaches_component(b) {
                continue;
            }
            for &a in &nts[..j] {
                out.extend((0..n).filter(|&z| rel.below_or_equal(z, a)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_grammar;

    fn g(rules: &str) -> Grammar {
        parse_grammar(&format!("alphabet: 0 < 1\nstart: S\n{rules}")).unwrap()
    }

    #[test]
    fn derives_examples() {
        let a = g("S -> 0 S 1 | 0 1");
        assert!(derives_relation(&a).below_or_equal(0, 0));

        let b = g("S -> 0 A\nA -> 1");
        let rel = derives_relation(&b);
        let (s, a) = (b.nt("S").unwrap(), b.nt("A").unwrap());
        assert!(rel.below_or_equal(a, s));
        assert!(!rel.below_or_equal(s, a));

        let c = g("S -> A B\nA -> S 0 | 1\nB -> 0");
        let rel = derives_relation(&c);
        let (s, a, b) = (0, 1, 2);
        assert!(rel.equivalent(s, a));
        assert!(rel.strictly_below(b, s));
    }

    #[test]
    fn component_examples() {
        let a = strong_components(&g("S -> 0 S 1 | 0 1"));
        assert_eq!(
            a.components,
            vec![StrongComponent {
                members: vec![0],
                height: 1,
                recursive: true
            }]
        );

        let gb = g("S -> 0 A\nA -> 1");
        let b = strong_components(&gb);
        assert_eq!(b.component(0).height, 2);
        assert_eq!(b.component(1).height, 1);
        assert!(!b.component(0).recursive && !b.component(1).recursive);

        let c = strong_components(&g("S -> A 0 | 1\nA -> S 1"));
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].members, vec![0, 1]);
        assert_eq!(c.components[0].height, 1);
        assert!(c.components[0].recursive);
    }

    #[test]
    fn heights_are_antitone() {
        let gr = g("S -> A B | 0 S\nA -> B 1 | 0\nB -> 1 B | 0\nC -> S");
        let st = strong_components(&gr);
        for x in 0..gr.num_nonterminals() {
            for y in 0..gr.num_nonterminals() {
                if st.relation.strictly_below(y, x) {
                    assert!(st.component(y).height < st.component(x).height);
                }
            }
        }
    }

    #[test]
    fn left_corner_examples() {
        assert!(left_corner_acyclic(&g("S -> 0 S | 1")));
        assert!(!left_corner_acyclic(&g("S -> S 0 | 1")));
        assert!(!left_corner_acyclic(&g("S -> A 1\nA -> S 0 | 1")));
    }

    fn sandwich_names(gr: &Grammar) -> Vec<String> {
        let st = strong_components(gr);
        let c = st.component(gr.start()).clone();
        sandwich_set(gr, &st.relation, &c)
            .into_iter()
            .map(|z| gr.name(z).to_string())
            .collect()
    }

    #[test]
    fn sandwich_examples() {
        assert!(sandwich_names(&g("S -> 0 S 1 | 0 1")).is_empty());
        assert_eq!(sandwich_names(&g("S -> A S 1 | 0\nA -> 0 | 1")), vec!["A"]);
        assert_eq!(
            sandwich_names(&g("S -> A B 1 | 0\nA -> 0 | 1\nB -> S 0 | 1")),
            vec!["A"]
        );
        // everything derivable from a sandwiched nonterminal is sandwiched
        assert_eq!(
            sandwich_names(&g("S -> A S | 0\nA -> B 0 | 1\nB -> 0 | 1")),
            vec!["A", "B"]
        );
    }

    #[test]
    fn sandwich_covers_equation_sites() {
        let gr = g("S -> A S B S 1 | 0\nA -> 0 | 1 A\nB -> 1 | S 0");
        let st = strong_components(&gr);
        for c in st.recursive_components() {
            let sw = sandwich_set(&gr, &st.relation, c);
            for r in gr.rules().iter().filter(|r| c.contains(r.lhs)) {
                let nts: Vec<NtId> = r.rhs.iter().filter_map(|s| s.nonterminal()).collect();
                for (i, &y) in nts.iter().enumerate() {
                    if c.contains(y) {
                        assert!(nts[..i].iter().all(|z| sw.contains(z)));
                    }
                }
            }
        }
    }
}

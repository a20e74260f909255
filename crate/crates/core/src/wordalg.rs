//! Words over an ordered alphabet: lexicographic comparison, primitive roots,
//! conjugacy, and the partial algebra of suffix/prefix pairs over a fixed
//! primitive word `u0`.
//!
//! For a primitive `u0` of length `n`, a pair `(x1, x2)` consists of a proper
//! suffix `x1` and a proper prefix `x2` of `u0`. Its language is
//! `x1 u0* x2`, extended by the single word `z` (what remains of `x1 x2`
//! after dropping its first `n` letters) when `|x1 x2| ≥ n`. Words lying in
//! some pair language are *legitimate*: exactly the factors of powers of
//! `u0`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grammar::Word;

/// How `u` relates to `v` under the lexicographic order, split into the
/// strict part (first differing letter decides) and the prefix part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderRelation {
    /// `u <_s v`
    StrictLess,
    /// `u` is a proper prefix of `v`
    ProperPrefix,
    Equal,
    /// `v` is a proper prefix of `u`
    ProperExtension,
    /// `v <_s u`
    StrictGreater,
}

impl OrderRelation {
    pub fn ordering(self) -> Ordering {
        match self {
            OrderRelation::StrictLess | OrderRelation::ProperPrefix => Ordering::Less,
            OrderRelation::Equal => Ordering::Equal,
            OrderRelation::ProperExtension | OrderRelation::StrictGreater => Ordering::Greater,
        }
    }

    /// `u` and `v` are prefix-incomparable.
    pub fn is_strict(self) -> bool {
        matches!(self, OrderRelation::StrictLess | OrderRelation::StrictGreater)
    }
}

pub fn lex_compare<T: Ord>(u: &[T], v: &[T]) -> OrderRelation {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Less => return OrderRelation::StrictLess,
            Ordering::Greater => return OrderRelation::StrictGreater,
            Ordering::Equal => {}
        }
    }
    match u.len().cmp(&v.len()) {
        Ordering::Less => OrderRelation::ProperPrefix,
        Ordering::Equal => OrderRelation::Equal,
        Ordering::Greater => OrderRelation::ProperExtension,
    }
}

/// `<_ℓ` as a total order, for sorting.
pub fn lex_cmp<T: Ord>(u: &[T], v: &[T]) -> Ordering {
    lex_compare(u, v).ordering()
}

/// Neither word is a prefix of the other.
pub fn prefix_incomparable<T: Ord>(u: &[T], v: &[T]) -> bool {
    lex_compare(u, v).is_strict()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("the empty word has no primitive root")]
    EmptyWord,
    #[error("`{0}` is not primitive")]
    NotPrimitive(String),
    #[error("`{word}` is not a factor of any power of `{u0}`")]
    NotLegitimate { word: String, u0: String },
    #[error("`{word}` is shorter than `{u0}`; its pair is not determined")]
    TooShort { word: String, u0: String },
}

/// Renders a word over `0 < 1` (or any alphabet with at most ten letters)
/// as a digit string.
pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// Inverse of [`word_to_string`]; `None` on a non-digit.
pub fn parse_word(s: &str) -> Option<Word> {
    s.chars()
        .map(|c| c.to_digit(10).map(|d| d as u8))
        .collect()
}

/// The smallest period of `w` that divides `|w|`.
fn root_len(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

/// The unique primitive `r` with `w = r^k`.
pub fn primitive_root(w: &[u8]) -> Result<Word, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(w[..root_len(w)].to_vec())
}

pub fn is_primitive(w: &[u8]) -> bool {
    !w.is_empty() && root_len(w) == w.len()
}

/// `v` is a rotation of `u`.
pub fn is_conjugate(u: &[u8], v: &[u8]) -> bool {
    u.len() == v.len() && (0..u.len().max(1)).any(|r| (0..u.len()).all(|i| v[i] == u[(i + r) % u.len()]))
}

/// `w` is a power `u0^k`, `k ≥ 0`.
pub fn is_power_of(w: &[u8], u0: &[u8]) -> bool {
    !u0.is_empty() && w.len().is_multiple_of(u0.len()) && w.chunks(u0.len()).all(|c| c == u0)
}

/// A validated primitive word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveWord(Word);

impl PrimitiveWord {
    pub fn new(w: Word) -> Result<Self, WordError> {
        if w.is_empty() {
            return Err(WordError::EmptyWord);
        }
        if !is_primitive(&w) {
            return Err(WordError::NotPrimitive(word_to_string(&w)));
        }
        Ok(PrimitiveWord(w))
    }

    /// Primitive root of a nonempty word.
    pub fn root_of(w: &[u8]) -> Result<Self, WordError> {
        primitive_root(w).map(PrimitiveWord)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for PrimitiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word_to_string(&self.0))
    }
}

/// A pair `(x1, x2)`: `x1` is the proper suffix of `u0` of length
/// `suffix_len`, `x2` the proper prefix of length `prefix_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPair {
    pub suffix_len: usize,
    pub prefix_len: usize,
}

impl SPair {
    pub const EMPTY: SPair = SPair {
        suffix_len: 0,
        prefix_len: 0,
    };

    pub fn new(suffix_len: usize, prefix_len: usize) -> Self {
        SPair {
            suffix_len,
            prefix_len,
        }
    }
}

/// Operand and result of `⊗`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChainValue {
    PureWord(Word),
    Pair(SPair),
    Undefined,
}

impl ChainValue {
    pub fn word(w: impl Into<Word>) -> Self {
        ChainValue::PureWord(w.into())
    }
}

/// The pair algebra over a fixed primitive word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlgebra {
    u0: PrimitiveWord,
}

#[derive(Serialize)]
struct PairRepr {
    x1: String,
    x2: String,
}

impl PairAlgebra {
    pub fn new(u0: PrimitiveWord) -> Self {
        PairAlgebra { u0 }
    }

    pub fn u0(&self) -> &PrimitiveWord {
        &self.u0
    }

    fn n(&self) -> usize {
        self.u0.len()
    }

    pub fn x1(&self, p: SPair) -> &[u8] {
        let u = self.u0.as_slice();
        &u[u.len() - p.suffix_len..]
    }

    pub fn x2(&self, p: SPair) -> &[u8] {
        &self.u0.as_slice()[..p.prefix_len]
    }

    pub fn is_valid(&self, p: SPair) -> bool {
        p.suffix_len < self.n() && p.prefix_len < self.n()
    }

    /// Renders `(x1, x2)`.
    pub fn format_pair(&self, p: SPair) -> String {
        let show = |w: &[u8]| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                word_to_string(w)
            }
        };
        format!("({}, {})", show(self.x1(p)), show(self.x2(p)))
    }

    pub fn pair_json(&self, p: SPair) -> serde_json::Value {
        serde_json::to_value(PairRepr {
            x1: word_to_string(self.x1(p)),
            x2: word_to_string(self.x2(p)),
        })
        .expect("pair serializes")
    }

    /// All `|u0|²` pairs, ordered by `(suffix_len, prefix_len)`.
    pub fn pairs(&self) -> impl Iterator<Item = SPair> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (0..n).map(move |j| SPair::new(i, j)))
    }

    /// The extra word `z` of a pair with `|x1 x2| ≥ |u0|`.
    pub fn extra_word(&self, p: SPair) -> Option<Word> {
        let n = self.n();
        if p.suffix_len + p.prefix_len < n {
            return None;
        }
        let mut xy = self.x1(p).to_vec();
        xy.extend_from_slice(self.x2(p));
        Some(xy[n..].to_vec())
    }

    pub fn member(&self, w: &[u8], p: SPair) -> bool {
        debug_assert!(self.is_valid(p));
        if self.extra_word(p).is_some_and(|z| z == w) {
            return true;
        }
        let (a, b) = (p.suffix_len, p.prefix_len);
        if w.len() < a + b || !(w.len() - a - b).is_multiple_of(self.n()) {
            return false;
        }
        w[..a] == *self.x1(p) && w[w.len() - b..] == *self.x2(p) && is_power_of(&w[a..w.len() - b], self.u0.as_slice())
    }

    /// `w` is a factor of some power of `u0`.
    pub fn is_legitimate(&self, w: &[u8]) -> bool {
        let u = self.u0.as_slice();
        let n = u.len();
        w.is_empty() || (0..n).any(|r| w.iter().enumerate().all(|(i, &c)| c == u[(r + i) % n]))
    }

    pub fn pairs_containing(&self, w: &[u8]) -> Vec<SPair> {
        self.pairs().filter(|&p| self.member(w, p)).collect()
    }

    /// The unique pair whose language contains `w` (`|w| ≥ |u0|`).
    pub fn pair_of_word(&self, w: &[u8]) -> Result<SPair, WordError> {
        let found = self.pairs_containing(w);
        match found.as_slice() {
            [] => Err(WordError::NotLegitimate {
                word: word_to_string(w),
                u0: self.u0.to_string(),
            }),
            _ if w.len() < self.n() => Err(WordError::TooShort {
                word: word_to_string(w),
                u0: self.u0.to_string(),
            }),
            [p] => Ok(*p),
            _ => unreachable!("legitimate words of length ≥ |u0| lie in exactly one pair"),
        }
    }

    /// `x2 y1 ∈ {ε, u0}` for a left pair with prefix length `x2` and a right
    /// pair with suffix length `y1`.
    fn seam_ok(&self, x2_len: usize, y1_len: usize) -> bool {
        (x2_len == 0 && y1_len == 0) || x2_len + y1_len == self.n()
    }

    /// The unique suffix length `y1` that closes a seam after a prefix of
    /// length `x2`.
    fn closing_len(&self, x2_len: usize) -> usize {
        if x2_len == 0 {
            0
        } else {
            self.n() - x2_len
        }
    }

    /// The partial operation `⊗`.
    pub fn otimes(&self, a: &ChainValue, b: &ChainValue) -> ChainValue {
        use ChainValue::*;
        match (a, b) {
            (Undefined, _) | (_, Undefined) => Undefined,
            (PureWord(u), PureWord(v)) => {
                let mut w = u.clone();
                w.extend_from_slice(v);
                PureWord(w)
            }
            (Pair(x), Pair(y)) => {
                if self.seam_ok(x.prefix_len, y.suffix_len) {
                    Pair(SPair::new(x.suffix_len, y.prefix_len))
                } else {
                    Undefined
                }
            }
            (Pair(x), PureWord(y)) => {
                let y1 = self.closing_len(x.prefix_len);
                let mut results = (0..self.n())
                    .map(|y2| SPair::new(y1, y2))
                    .filter(|&q| self.member(y, q))
                    .map(|q| SPair::new(x.suffix_len, q.prefix_len));
                let first = results.next();
                debug_assert!(results.all(|r| Some(r) == first));
                first.map_or(Undefined, Pair)
            }
            (PureWord(y), Pair(x)) => {
                let y2 = self.closing_len(x.suffix_len);
                let mut results = (0..self.n())
                    .map(|y1| SPair::new(y1, y2))
                    .filter(|&q| self.member(y, q))
                    .map(|q| SPair::new(q.suffix_len, x.prefix_len));
                let first = results.next();
                debug_assert!(results.all(|r| Some(r) == first));
                first.map_or(Undefined, Pair)
            }
        }
    }

    /// Left fold of `⊗`; the empty chain is the empty word.
    pub fn chain_eval<'a>(&self, items: impl IntoIterator<Item = &'a ChainValue>) -> ChainValue {
        items
            .into_iter()
            .fold(ChainValue::PureWord(Vec::new()), |acc, item| self.otimes(&acc, item))
    }

    /// Members of `L(p)` of length at most `max_len`, in increasing length.
    pub fn language_up_to(&self, p: SPair, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        if let Some(z) = self.extra_word(p) {
            out.push(z);
        }
        let mut w = self.x1(p).to_vec();
        loop {
            let mut full = w.clone();
            full.extend_from_slice(self.x2(p));
            if full.len() > max_len {
                break;
            }
            if !out.contains(&full) {
                out.push(full);
            }
            w.extend_from_slice(self.u0.as_slice());
        }
        out.sort_by_key(|w| w.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn alg(s: &str) -> PairAlgebra {
        PairAlgebra::new(PrimitiveWord::new(w(s)).unwrap())
    }

    /// `(x1, x2)` given as words.
    fn pair(a: &PairAlgebra, x1: &str, x2: &str) -> SPair {
        let p = SPair::new(x1.len(), x2.len());
        assert_eq!(a.x1(p), w(x1).as_slice());
        assert_eq!(a.x2(p), w(x2).as_slice());
        p
    }

    #[test]
    fn lex_compare_examples() {
        assert_eq!(lex_compare(&w("01"), &w("0011")), OrderRelation::StrictGreater);
        assert_eq!(lex_compare(&w("0011"), &w("01")), OrderRelation::StrictLess);
        assert_eq!(lex_compare(&w("0"), &w("01")), OrderRelation::ProperPrefix);
        assert_eq!(lex_compare(&w("10"), &w("10")), OrderRelation::Equal);
        assert_eq!(lex_compare(&w("011"), &w("01")), OrderRelation::ProperExtension);
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("010101")).unwrap(), w("01"));
        assert_eq!(primitive_root(&w("0110")).unwrap(), w("0110"));
        assert_eq!(primitive_root(&w("0")).unwrap(), w("0"));
        assert_eq!(primitive_root(&[]), Err(WordError::EmptyWord));
        assert!(PrimitiveWord::new(w("0101")).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        assert!(is_conjugate(&w("001"), &w("010")));
        assert!(is_conjugate(&w("001"), &w("100")));
        assert!(!is_conjugate(&w("01"), &w("11")));
        assert!(is_conjugate(&[], &[]));
    }

    #[test]
    fn spair_sets() {
        assert_eq!(alg("0").pairs().collect::<Vec<_>>(), vec![SPair::EMPTY]);
        let a = alg("01");
        let ps: Vec<_> = a.pairs().collect();
        assert_eq!(ps.len(), 4);
        for (x1, x2) in [("", ""), ("", "0"), ("1", ""), ("1", "0")] {
            assert!(ps.contains(&pair(&a, x1, x2)));
        }
        assert_eq!(alg("011").pairs().count(), 9);
    }

    #[test]
    fn pair_membership_examples() {
        let a = alg("01");
        assert!(a.member(&w("1010"), pair(&a, "1", "0")));
        assert!(a.member(&[], pair(&a, "1", "0")));
        assert!(!a.member(&w("00"), pair(&a, "", "0")));
    }

    #[test]
    fn legitimacy_examples() {
        let a = alg("01");
        assert!(a.is_legitimate(&w("101")));
        assert!(!a.is_legitimate(&w("11")));
        assert!(a.is_legitimate(&[]));
    }

    #[test]
    fn pair_of_word_examples() {
        let a = alg("01");
        assert_eq!(a.pair_of_word(&w("1010")).unwrap(), pair(&a, "1", "0"));
        assert_eq!(a.pair_of_word(&w("0101")).unwrap(), SPair::EMPTY);
        assert!(matches!(a.pair_of_word(&w("11")), Err(WordError::NotLegitimate { .. })));
        assert!(matches!(a.pair_of_word(&w("1")), Err(WordError::TooShort { .. })));
    }

    #[test]
    fn otimes_examples() {
        let a = alg("01");
        let p10 = ChainValue::Pair(pair(&a, "1", "0"));
        let pe0 = ChainValue::Pair(pair(&a, "", "0"));
        assert_eq!(a.otimes(&p10, &p10), p10);
        assert_eq!(a.otimes(&pe0, &pe0), ChainValue::Undefined);
        assert_eq!(a.otimes(&ChainValue::word(w("0")), &p10), pe0);
        assert_eq!(a.otimes(&ChainValue::Undefined, &p10), ChainValue::Undefined);
        // ε is a two-sided unit on pairs
        for p in a.pairs() {
            let v = ChainValue::Pair(p);
            assert_eq!(a.otimes(&v, &ChainValue::word(vec![])), v);
            assert_eq!(a.otimes(&ChainValue::word(vec![]), &v), v);
        }
    }

    #[test]
    fn chain_eval_examples() {
        let a = alg("01");
        let items = [
            ChainValue::word(w("0")),
            ChainValue::Pair(pair(&a, "1", "0")),
            ChainValue::word(w("1")),
        ];
        let left = a.chain_eval(&items);
        let right = a.otimes(&items[0], &a.otimes(&items[1], &items[2]));
        assert_eq!(left, ChainValue::Pair(SPair::EMPTY));
        assert_eq!(left, right);
        assert_eq!(
            a.chain_eval(&[ChainValue::word(w("01")), ChainValue::word(w("10"))]),
            ChainValue::word(w("0110"))
        );
        assert_eq!(a.chain_eval(&[]), ChainValue::word(vec![]));
    }

    fn all_words(max_len: usize) -> Vec<Word> {
        let mut out = vec![vec![]];
        for len in 1..=max_len {
            for bits in 0..(1u32 << len) {
                out.push((0..len).rev().map(|i| ((bits >> i) & 1) as u8).collect());
            }
        }
        out
    }

    #[test]
    fn conjugacy_is_an_equivalence_on_equal_lengths() {
        let words = all_words(6);
        for len in 0..=6 {
            let same: Vec<&Word> = words.iter().filter(|x| x.len() == len).collect();
            for u in &same {
                assert!(is_conjugate(u, u));
                for v in &same {
                    let uv = is_conjugate(u, v);
                    assert_eq!(uv, is_conjugate(v, u));
                    if uv {
                        for x in &same {
                            if is_conjugate(v, x) {
                                assert!(is_conjugate(u, x));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn primitive_root_is_exact_and_minimal() {
        for word in all_words(10).into_iter().skip(1) {
            let r = primitive_root(&word).unwrap();
            assert!(is_power_of(&word, &r));
            // no shorter period dividing |r|
            for p in (1..r.len()).filter(|p| r.len().is_multiple_of(*p)) {
                assert!(!is_power_of(&r, &r[..p]));
            }
        }
    }

    #[test]
    fn lengths_are_congruent_within_a_pair() {
        // |z| = |x1 x2| - |u0| keeps the extra word in the same class
        for u0 in all_words(4).into_iter().filter(|x| is_primitive(x)) {
            let a = PairAlgebra::new(PrimitiveWord::new(u0.clone()).unwrap());
            for p in a.pairs() {
                let lang = a.language_up_to(p, 4 * u0.len());
                let r = lang[0].len() % u0.len();
                assert!(lang.iter().all(|x| x.len() % u0.len() == r));
            }
        }
    }

    proptest! {
        #[test]
        fn lex_compare_is_antisymmetric(u in proptest::collection::vec(0u8..2, 0..8), v in proptest::collection::vec(0u8..2, 0..8)) {
            let uv = lex_compare(&u, &v);
            let vu = lex_compare(&v, &u);
            prop_assert_eq!(uv.ordering(), vu.ordering().reverse());
            prop_assert_eq!(uv == OrderRelation::Equal, u == v);
            prop_assert_eq!(uv.is_strict(), vu.is_strict());
        }

        #[test]
        fn legitimate_iff_in_some_pair(u0 in proptest::collection::vec(0u8..2, 1..5), x in proptest::collection::vec(0u8..2, 0..12)) {
            prop_assume!(is_primitive(&u0));
            let a = PairAlgebra::new(PrimitiveWord::new(u0).unwrap());
            prop_assert_eq!(a.is_legitimate(&x), !a.pairs_containing(&x).is_empty());
        }
    }
}

//! Complete DFAs over `{0, 1}` for the regular side of the emptiness checks.

use crate::grammar::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    /// `delta[q][c]`
    delta: Vec<[usize; 2]>,
    start: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(delta: Vec<[usize; 2]>, start: usize, accepting: Vec<bool>) -> Self {
        assert_eq!(delta.len(), accepting.len());
        assert!(start < delta.len());
        assert!(delta.iter().flatten().all(|&q| q < delta.len()));
        Dfa {
            delta,
            start,
            accepting,
        }
    }

    /// Accepts every word.
    pub fn universal() -> Self {
        Dfa::new(vec![[0, 0]], 0, vec![true])
    }

    /// Accepts nothing.
    pub fn empty() -> Self {
        Dfa::new(vec![[0, 0]], 0, vec![false])
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn step(&self, q: usize, c: u8) -> usize {
        self.delta[q][c as usize]
    }

    pub fn run(&self, q: usize, w: &[u8]) -> usize {
        w.iter().fold(q, |q, &c| self.step(q, c))
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepts(&self, w: &[u8]) -> bool {
        self.accepting[self.run(self.start, w)]
    }
}

/// Accepts `{0,1}* \ u0*`.
pub fn dfa_complement_power(u0: &[u8]) -> Dfa {
    assert!(!u0.is_empty());
    let n = u0.len();
    let sink = n;
    let mut delta = Vec::with_capacity(n + 1);
    for &expected in u0 {
        let next = delta.len() + 1;
        let mut row = [sink, sink];
        row[expected as usize] = next % n;
        delta.push(row);
    }
    delta.push([sink, sink]);
    let accepting = (0..=n).map(|q| q != 0).collect();
    Dfa::new(delta, 0, accepting)
}

/// Accepts the words `w` with `u0^m <_s w` for some `m`: those whose first
/// departure from `u0 u0 u0 ...` reads a 1 where `u0` has a 0.
pub fn dfa_upward_deviation(u0: &[u8]) -> Dfa {
    assert!(!u0.is_empty());
    let n = u0.len();
    let (above, below) = (n, n + 1);
    let mut delta = Vec::with_capacity(n + 2);
    for (i, &expected) in u0.iter().enumerate() {
        let mut row = [below, above];
        row[expected as usize] = (i + 1) % n;
        delta.push(row);
    }
    delta.push([above, above]);
    delta.push([below, below]);
    let accepting = (0..n + 2).map(|q| q == above).collect();
    Dfa::new(delta, 0, accepting)
}

/// Accepts the words of length at least `n`.
pub fn dfa_length_at_least(n: usize) -> Dfa {
    let delta = (0..=n).map(|q| [(q + 1).min(n); 2]).collect();
    Dfa::new(delta, 0, (0..=n).map(|q| q == n).collect())
}

/// Accepts every word except `w`.
pub fn dfa_avoiding(w: &Word) -> Dfa {
    let n = w.len();
    // states 0..=n track a matched prefix of w, n + 1 is the off-track sink
    let off = n + 1;
    let mut delta = Vec::with_capacity(n + 2);
    for &c in w {
        let mut row = [off, off];
        row[c as usize] = delta.len() + 1;
        delta.push(row);
    }
    delta.push([off, off]);
    delta.push([off, off]);
    Dfa::new(delta, 0, (0..n + 2).map(|q| q != n).collect())
}

/// Accepts the words that are neither prefixes nor extensions of `u`.
pub fn dfa_incomparable_with(u: &[u8]) -> Dfa {
    let n = u.len();
    // 0..=n matched so far, n + 1 diverged
    let diverged = n + 1;
    let mut delta = Vec::with_capacity(n + 2);
    for &c in u {
        let mut row = [diverged, diverged];
        row[c as usize] = delta.len() + 1;
        delta.push(row);
    }
    delta.push([n, n]);
    delta.push([diverged, diverged]);
    Dfa::new(delta, 0, (0..n + 2).map(|q| q == diverged).collect())
}

//! Batch cross-checks over seeded random grammars: each grammar runs
//! through both procedures and its certificate through the oracle.
//!
//! With the `parallel` feature grammars are evaluated on the rayon pool;
//! results are always returned in index order.

use std::fmt;

use crate::decide::{decide, Algorithm, DecideError, DecideOptions, Verdict};
use crate::grammar::{BinaryEncoding, Grammar, Word};
use crate::normalize::{normalize_pipeline, NormalizeError};
use crate::oracle::{enumerate, enumerate_by_membership, find_quasidense_witness, random_grammar, RandomGrammarParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub count: usize,
    pub seed: u64,
    pub params: RandomGrammarParams,
    pub options: DecideOptions,
    /// Compare languages before and after normalization up to this length.
    pub preservation_len: Option<usize>,
    /// Require the bounded witness search to succeed at this depth on every
    /// quasi-dense grammar.
    pub search_depth: Option<usize>,
}

impl CorpusConfig {
    pub fn new(count: usize, seed: u64) -> Self {
        CorpusConfig {
            count,
            seed,
            params: RandomGrammarParams::default(),
            options: DecideOptions::with_algorithm(Algorithm::Both),
            preservation_len: None,
            search_depth: None,
        }
    }

    pub fn grammar_seed(&self, index: usize) -> u64 {
        self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
    }

    pub fn grammar(&self, index: usize) -> Grammar {
        random_grammar(self.grammar_seed(index), self.params)
    }
}

#[derive(Clone, Debug)]
pub struct CorpusRecord {
    pub index: usize,
    pub grammar: Grammar,
    pub outcome: Result<Verdict, DecideError>,
    /// The oracle accepted the certificate (vacuous for positive verdicts).
    pub certificate_ok: bool,
    pub preservation_ok: Option<bool>,
    pub search_ok: Option<bool>,
}

/// Words of `L(g)` up to `max_len` letters after binary encoding, without
/// ε, compared against the normalized grammar.
pub fn normalization_preserved(g: &Grammar, max_len: usize) -> bool {
    let enc = BinaryEncoding::for_alphabet_size(g.alphabet().len());
    let mut before: Vec<Word> = enumerate_by_membership(g, max_len / enc.width())
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| enc.encode_word(&w))
        .collect();
    before.sort();
    let after = match normalize_pipeline(g) {
        Ok(n) => {
            let mut a = enumerate(&n.grammar, max_len).expect("normalized grammars are epsilon-free");
            a.sort();
            a
        }
        Err(NormalizeError::EmptyLanguage { .. }) => Vec::new(),
    };
    before == after
}

pub fn evaluate(cfg: &CorpusConfig, index: usize) -> CorpusRecord {
    let grammar = cfg.grammar(index);
    let outcome = decide(&grammar, &cfg.options);
    let certificate_ok = outcome.as_ref().is_ok_and(Verdict::verify_certificate);
    let preservation_ok = cfg.preservation_len.map(|n| normalization_preserved(&grammar, n));
    let search_ok = match (cfg.search_depth, &outcome) {
        (Some(depth), Ok(v)) if !v.scattered => {
            let g = &v.normalized.as_ref().expect("quasi-dense languages are nonempty").grammar;
            Some(find_quasidense_witness(g, depth).is_some())
        }
        _ => None,
    };
    CorpusRecord {
        index,
        grammar,
        outcome,
        certificate_ok,
        preservation_ok,
        search_ok,
    }
}

pub fn run_sequential(cfg: &CorpusConfig) -> Vec<CorpusRecord> {
    (0..cfg.count).map(|i| evaluate(cfg, i)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel(cfg: &CorpusConfig) -> Vec<CorpusRecord> {
    use rayon::prelude::*;
    (0..cfg.count).into_par_iter().map(|i| evaluate(cfg, i)).collect()
}

pub fn run(cfg: &CorpusConfig) -> Vec<CorpusRecord> {
    #[cfg(feature = "parallel")]
    return run_parallel(cfg);
    #[cfg(not(feature = "parallel"))]
    return run_sequential(cfg);
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSummary {
    pub total: usize,
    pub agreed: usize,
    pub disagreements: Vec<usize>,
    pub errors: Vec<(usize, String)>,
    pub scattered: usize,
    pub well_ordered: usize,
    pub fallbacks: usize,
    pub certificates_checked: usize,
    pub certificate_failures: Vec<usize>,
    pub preservation_checked: usize,
    pub preservation_failures: Vec<usize>,
    pub searches: usize,
    pub search_failures: Vec<usize>,
}

impl CorpusSummary {
    pub fn of(records: &[CorpusRecord]) -> Self {
        let mut s = CorpusSummary {
            total: records.len(),
            ..Default::default()
        };
        for r in records {
            match &r.outcome {
                Ok(v) => {
                    s.agreed += 1;
                    s.scattered += v.scattered as usize;
                    s.well_ordered += v.well_ordered as usize;
                    s.fallbacks += v.fallback as usize;
                    if v.certificate.is_some() {
                        s.certificates_checked += 1;
                    }
                    if !r.certificate_ok {
                        s.certificate_failures.push(r.index);
                    }
                }
                Err(DecideError::InternalDisagreement { .. }) => s.disagreements.push(r.index),
                Err(e) => s.errors.push((r.index, e.to_string())),
            }
            if let Some(ok) = r.preservation_ok {
                s.preservation_checked += 1;
                if !ok {
                    s.preservation_failures.push(r.index);
                }
            }
            if let Some(ok) = r.search_ok {
                s.searches += 1;
                if !ok {
                    s.search_failures.push(r.index);
                }
            }
        }
        s
    }

    /// No disagreement, error or rejected check.
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty()
            && self.errors.is_empty()
            && self.certificate_failures.is_empty()
            && self.preservation_failures.is_empty()
            && self.search_failures.is_empty()
    }
}

impl fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, k: &str, v: String| writeln!(f, "{k:<24}{v:>8}");
        row(f, "grammars", self.total.to_string())?;
        row(f, "agreement", format!("{}/{}", self.agreed, self.total))?;
        row(f, "scattered", self.scattered.to_string())?;
        row(f, "well-ordered", self.well_ordered.to_string())?;
        row(f, "quasi-dense", (self.agreed - self.scattered).to_string())?;
        row(f, "fallbacks", self.fallbacks.to_string())?;
        row(
            f,
            "certificates verified",
            format!("{}/{}", self.certificates_checked - self.certificate_failures.len(), self.certificates_checked),
        )?;
        if self.preservation_checked > 0 {
            let ok = self.preservation_checked - self.preservation_failures.len();
            row(f, "languages preserved", format!("{ok}/{}", self.preservation_checked))?;
        }
        if self.searches > 0 {
            row(f, "witness searches", format!("{}/{}", self.searches - self.search_failures.len(), self.searches))?;
        }
        for i in &self.disagreements {
            writeln!(f, "disagreement on grammar #{i}")?;
        }
        for (i, e) in &self.errors {
            writeln!(f, "error on grammar #{i}: {e}")?;
        }
        for i in &self.certificate_failures {
            writeln!(f, "certificate rejected on grammar #{i}")?;
        }
        for i in &self.preservation_failures {
            writeln!(f, "normalization changed the language of grammar #{i}")?;
        }
        for i in &self.search_failures {
            writeln!(f, "bounded witness search failed on grammar #{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_is_clean_and_deterministic() {
        let mut cfg = CorpusConfig::new(40, 7);
        cfg.preservation_len = Some(6);
        cfg.search_depth = Some(12);
        let a = run(&cfg);
        let b = run_sequential(&cfg);
        assert!(a.iter().map(|r| r.index).eq(0..40));
        let (sa, sb) = (CorpusSummary::of(&a), CorpusSummary::of(&b));
        assert_eq!(sa, sb);
        assert!(sa.clean(), "{sa}");
        assert_eq!(sa.to_string(), sb.to_string());
        assert_eq!(sa.preservation_checked, 40);
    }

    #[test]
    fn preservation_through_encoding() {
        let g = crate::grammar::parse_grammar("alphabet: a < b < c\nstart: S\nS -> a S c | b | eps").unwrap();
        assert!(normalization_preserved(&g, 8));
    }
}

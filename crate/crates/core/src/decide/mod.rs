//! Deciding scatteredness and well-orderedness of `(L(G), <_ℓ)`.
//!
//! Two procedures answer the scattered question. The pair-equation check
//! ([`fast`]) extracts one candidate primitive root per strong component and
//! one candidate pair per nonterminal pair, then verifies a polynomial
//! number of equations in the pair algebra. The automata check ([`naive`])
//! tests, for each recursive `X`, that every self-embedding prefix of `X`
//! is a power of one primitive word. Both reduce to emptiness of a
//! context-free language intersected with a small DFA.

pub mod barred;
pub mod dfa;
pub mod fast;
pub mod intersect;
pub mod naive;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::grammar::{Grammar, NtId, Word};
use crate::normalize::{normalize_pipeline, NormalizeError, NormalizedGrammar};
use crate::oracle::{find_quasidense_witness, verify_decreasing, verify_witness};
use crate::structure::{strong_components, StrongComponent, Structure};
use crate::wordalg::{primitive_root, word_to_string, PrimitiveWord};

use barred::{shortest_spine, Spine};
use fast::FastOutcome;
use intersect::{shortest_words, LengthCapExceeded};
use naive::NaiveOutcome;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Algorithm {
    #[default]
    Fast,
    Naive,
    Both,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Fast => "fast",
            Algorithm::Naive => "naive",
            Algorithm::Both => "both",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Algorithm::Fast),
            "naive" => Ok(Algorithm::Naive),
            "both" => Ok(Algorithm::Both),
            other => Err(format!("unknown algorithm `{other}` (expected fast, naive or both)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    pub algorithm: Algorithm,
    /// Longest word any intermediate search may build.
    pub max_word_len: usize,
    /// Longest admissible candidate primitive root.
    pub max_u0_len: usize,
    /// Depth cap for the derivation search used when a witness cannot be
    /// assembled directly.
    pub max_derivation_depth: usize,
    /// A decreasing family lists the terms `w_0 ..= w_K`.
    pub family_last_index: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            algorithm: Algorithm::Fast,
            max_word_len: 4096,
            max_u0_len: 1024,
            max_derivation_depth: 64,
            family_last_index: 4,
        }
    }
}

impl DecideOptions {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        DecideOptions {
            algorithm,
            ..Default::default()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("nonterminal {0} is not recursive")]
    NotRecursive(String),
    #[error("resource limit exceeded: {what} above {limit}")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("fast and naive algorithms disagree: fast says scattered={fast}, naive says scattered={naive}")]
    InternalDisagreement { fast: bool, naive: bool },
    #[error("no certificate could be constructed for a negative verdict: {0}")]
    NoCertificate(String),
}

impl From<LengthCapExceeded> for DecideError {
    fn from(e: LengthCapExceeded) -> Self {
        DecideError::ResourceLimit {
            what: "word length",
            limit: e.0,
        }
    }
}

/// `w_k = pump^k · core · context^k`, strictly decreasing in `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecreasingFamily {
    pub nonterminal: NtId,
    pub pump: Word,
    pub core: Word,
    pub context: Word,
    pub terms: Vec<Word>,
}

impl DecreasingFamily {
    pub fn new(nonterminal: NtId, pump: Word, core: Word, context: Word, last_index: usize) -> Self {
        let mut f = DecreasingFamily {
            nonterminal,
            pump,
            core,
            context,
            terms: Vec::new(),
        };
        f.terms = (0..=last_index).map(|k| f.term(k)).collect();
        f
    }

    pub fn term(&self, k: usize) -> Word {
        let mut w = self.pump.repeat(k);
        w.extend_from_slice(&self.core);
        w.extend(self.context.repeat(k));
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `X ⇒+ u X p` and `X ⇒+ v X q` with `u`, `v` prefix-incomparable.
    QuasiDenseWitness { nonterminal: NtId, u: Word, v: Word },
    DecreasingFamily(DecreasingFamily),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentInfo {
    pub members: Vec<String>,
    pub height: usize,
    pub recursive: bool,
    pub u0: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub scattered: bool,
    pub well_ordered: bool,
    pub epsilon_in_language: bool,
    /// Strong components of the normalized grammar.
    pub components: Vec<ComponentInfo>,
    /// Refers to nonterminals and words of the normalized grammar.
    pub certificate: Option<Certificate>,
    pub algorithm: Algorithm,
    pub agreement: bool,
    /// The pair-equation check could not pin a candidate and the automata
    /// check answered instead.
    pub fallback: bool,
    /// Where the pair-equation check failed, if it ran and failed.
    pub failure_site: Option<String>,
    /// `None` when the language has no nonempty word.
    pub normalized: Option<NormalizedGrammar>,
}

impl Verdict {
    fn trivial(algorithm: Algorithm, epsilon_in_language: bool) -> Self {
        Verdict {
            scattered: true,
            well_ordered: true,
            epsilon_in_language,
            components: Vec::new(),
            certificate: None,
            algorithm,
            agreement: true,
            fallback: false,
            failure_site: None,
            normalized: None,
        }
    }

    fn grammar(&self) -> Option<&Grammar> {
        self.normalized.as_ref().map(|n| &n.grammar)
    }

    /// Checks the certificate against the normalized grammar with the
    /// oracle. A verdict with both flags set needs no certificate.
    pub fn verify_certificate(&self) -> bool {
        match (&self.certificate, self.grammar()) {
            (None, _) => self.scattered && self.well_ordered,
            (Some(_), None) => false,
            (Some(Certificate::QuasiDenseWitness { nonterminal, u, v }), Some(g)) => {
                !self.scattered && verify_witness(g, *nonterminal, u, v)
            }
            (Some(Certificate::DecreasingFamily(f)), Some(g)) => {
                self.scattered && !self.well_ordered && verify_decreasing(g, f.nonterminal, &f.terms)
            }
        }
    }

    pub fn certificate_json(&self) -> Value {
        let (Some(c), Some(g)) = (&self.certificate, self.grammar()) else {
            return Value::Null;
        };
        match c {
            Certificate::QuasiDenseWitness { nonterminal, u, v } => json!({
                "kind": "quasi_dense_witness",
                "nonterminal": g.name(*nonterminal),
                "u": word_to_string(u),
                "v": word_to_string(v),
            }),
            Certificate::DecreasingFamily(f) => json!({
                "kind": "decreasing_family",
                "nonterminal": g.name(f.nonterminal),
                "pump": word_to_string(&f.pump),
                "core": word_to_string(&f.core),
                "context": word_to_string(&f.context),
                "terms": f.terms.iter().map(|w| word_to_string(w)).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "members": c.members,
                    "height": c.height,
                    "recursive": c.recursive,
                    "u0": c.u0.as_ref().map(|w| word_to_string(w)),
                })
            })
            .collect();
        let mut v = json!({
            "scattered": self.scattered,
            "well_ordered": self.well_ordered,
            "epsilon_in_language": self.epsilon_in_language,
            "components": components,
            "certificate": self.certificate_json(),
            "algorithm": self.algorithm.as_str(),
            "agreement": self.agreement,
            "fallback": self.fallback,
        });
        if let Some(site) = &self.failure_site {
            v["failure_site"] = json!(site);
        }
        v
    }
}

/// A normalized grammar with the data every procedure needs.
#[derive(Clone, Debug)]
pub struct Analysis<'g> {
    pub grammar: &'g Grammar,
    pub structure: Structure,
    /// Shortlex-least word of each nonterminal.
    pub shortest: Vec<Word>,
    pub options: DecideOptions,
}

impl<'g> Analysis<'g> {
    /// `g` must be normalized: ε-free, left-recursion free, no useless
    /// nonterminals.
    pub fn new(g: &'g Grammar, options: DecideOptions) -> Result<Self, DecideError> {
        let shortest = shortest_words(g, options.max_word_len)?
            .into_iter()
            .map(|w| w.expect("normalized grammars have no unproductive nonterminals"))
            .collect();
        Ok(Analysis {
            grammar: g,
            structure: strong_components(g),
            shortest,
            options,
        })
    }

    pub fn component(&self, x: NtId) -> &StrongComponent {
        self.structure.component(x)
    }

    fn short_table(&self) -> Vec<Option<Word>> {
        self.shortest.iter().cloned().map(Some).collect()
    }

    /// Shortlex-least `w` with `x ⇒+ w y p`, with the shortest word of `p`.
    pub fn spine(&self, x: NtId, y: NtId) -> Result<Spine, DecideError> {
        shortest_spine(self.grammar, &self.short_table(), self.component(x), x, y, true)
            .ok_or_else(|| DecideError::NotRecursive(self.grammar.name(x).to_string()))
    }

    /// The primitive root of the shortest self-embedding prefix of `x`.
    pub fn candidate_u0(&self, x: NtId) -> Result<PrimitiveWord, DecideError> {
        let spine = self.spine(x, x)?;
        let root = primitive_root(&spine.prefix).map_err(|_| DecideError::NotRecursive(self.grammar.name(x).to_string()))?;
        if root.len() > self.options.max_u0_len {
            return Err(DecideError::ResourceLimit {
                what: "candidate primitive root length",
                limit: self.options.max_u0_len,
            });
        }
        Ok(PrimitiveWord::new(root).expect("primitive root"))
    }

    fn component_infos(&self) -> Result<Vec<ComponentInfo>, DecideError> {
        self.structure
            .components
            .iter()
            .map(|c| {
                let u0 = if c.recursive {
                    Some(self.candidate_u0(c.members[0])?.as_slice().to_vec())
                } else {
                    None
                };
                Ok(ComponentInfo {
                    members: c.members.iter().map(|&m| self.grammar.name(m).to_string()).collect(),
                    height: c.height,
                    recursive: c.recursive,
                    u0,
                })
            })
            .collect()
    }

    /// A prefix-incomparable pair of self-embedding prefixes, for a grammar
    /// already found quasi-dense.
    pub fn quasidense_witness(&self) -> Result<Certificate, DecideError> {
        if let NaiveOutcome::QuasiDense { nonterminal, deviation } = naive::naive_scattered(self)? {
            let (u, v) = naive::witness_from_deviation(self, nonterminal, &deviation)?;
            return Ok(Certificate::QuasiDenseWitness { nonterminal, u, v });
        }
        let depth = self.options.max_derivation_depth;
        find_quasidense_witness(self.grammar, depth)
            .map(|(nonterminal, u, v)| Certificate::QuasiDenseWitness { nonterminal, u, v })
            .ok_or_else(|| DecideError::NoCertificate(format!("no witness within derivation depth {depth}")))
    }
}

/// Runs the chosen procedure(s) on `g` after normalization.
pub fn decide(g: &Grammar, options: &DecideOptions) -> Result<Verdict, DecideError> {
    let normalized = match normalize_pipeline(g) {
        Ok(n) => n,
        Err(NormalizeError::EmptyLanguage { had_epsilon }) => return Ok(Verdict::trivial(options.algorithm, had_epsilon)),
    };
    let a = Analysis::new(&normalized.grammar, *options)?;
    let components = a.component_infos()?;

    let mut fallback = false;
    let mut failure_site = None;
    let mut certificate = None;
    let mut run_fast = |a: &Analysis| -> Result<bool, DecideError> {
        match fast::fast_scattered(a)? {
            FastOutcome::Scattered(_) => Ok(true),
            FastOutcome::QuasiDense(site) => {
                failure_site = Some(site.describe(a.grammar));
                Ok(false)
            }
            FastOutcome::Ambiguous(_) => {
                fallback = true;
                Ok(matches!(naive::naive_scattered(a)?, NaiveOutcome::Scattered))
            }
        }
    };
    let run_naive = |a: &Analysis, certificate: &mut Option<Certificate>| -> Result<bool, DecideError> {
        match naive::naive_scattered(a)? {
            NaiveOutcome::Scattered => Ok(true),
            NaiveOutcome::QuasiDense { nonterminal, deviation } => {
                let (u, v) = naive::witness_from_deviation(a, nonterminal, &deviation)?;
                *certificate = Some(Certificate::QuasiDenseWitness { nonterminal, u, v });
                Ok(false)
            }
        }
    };
    let scattered = match options.algorithm {
        Algorithm::Fast => run_fast(&a)?,
        Algorithm::Naive => run_naive(&a, &mut certificate)?,
        Algorithm::Both => {
            let f = run_fast(&a)?;
            let n = run_naive(&a, &mut certificate)?;
            if f != n {
                return Err(DecideError::InternalDisagreement { fast: f, naive: n });
            }
            f
        }
    };

    let mut well_ordered = false;
    if !scattered {
        if certificate.is_none() {
            certificate = Some(a.quasidense_witness()?);
        }
    } else {
        match naive::wellorder_check(&a)? {
            None => well_ordered = true,
            Some((x, deviation)) => {
                let family = naive::build_decreasing_family(&a, x, deviation)?;
                certificate = Some(Certificate::DecreasingFamily(family));
            }
        }
    }

    Ok(Verdict {
        scattered,
        well_ordered,
        epsilon_in_language: normalized.had_epsilon,
        components,
        certificate,
        algorithm: options.algorithm,
        agreement: true,
        fallback,
        failure_site,
        normalized: Some(normalized),
    })
}

//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use scatterlex::corpus::{run, CorpusConfig, CorpusRecord, CorpusSummary};
use scatterlex::decide::{Analysis, Certificate, DecideError};
use scatterlex::grammar::{nullable_set, Rule, Symbol};
use scatterlex::oracle::{earley_member, enumerate, enumerate_by_membership, verify_witness};
use scatterlex::wordalg::{ChainValue, PairAlgebra, PrimitiveWord, SPair};
use scatterlex::{decide, parse_grammar, Algorithm, DecideOptions, Grammar, Word};

const CORPUS_SEED: u64 = 1;
const CORPUS_SIZE: usize = 500;
const CORPUS_BUDGET: Duration = Duration::from_secs(300);
const DENSE_BUDGET: Duration = Duration::from_secs(1);
const PRESERVATION_LEN: usize = 8;
const CONCAT_PAIRS: usize = 50;

fn g(rules: &str) -> Grammar {
    parse_grammar(&format!("alphabet: 0 < 1\nstart: S\n{rules}")).unwrap()
}

fn w(s: &str) -> Word {
    s.bytes().map(|b| b - b'0').collect()
}

/// Lexicographic order written out directly: a proper prefix is smaller,
/// otherwise the first differing letter decides.
fn lex(u: &[u8], v: &[u8]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        if a != b {
            return a.cmp(b);
        }
    }
    u.len().cmp(&v.len())
}

fn prefix_comparable(u: &[u8], v: &[u8]) -> bool {
    u.starts_with(v) || v.starts_with(u)
}

fn conjugate(u: &[u8], v: &[u8]) -> bool {
    u.len() == v.len() && (0..u.len().max(1)).any(|r| u.iter().cycle().skip(r).take(u.len()).eq(v.iter()))
}

fn all_words(min_len: usize, max_len: usize) -> Vec<Word> {
    (min_len..=max_len)
        .flat_map(|n| (0..1u32 << n).map(move |bits| (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect()))
        .collect()
}

fn primitive(u: &[u8]) -> bool {
    (1..u.len()).all(|d| !u.len().is_multiple_of(d) || u.chunks(d).any(|c| c != &u[..d]))
}

/// Factors of powers of `u0` with lengths in `min..=max`.
fn legitimate_words(u0: &[u8], min: usize, max: usize) -> Vec<Word> {
    let long: Word = u0.iter().copied().cycle().take(max + u0.len()).collect();
    let mut out: Vec<Word> = (min..=max)
        .flat_map(|n| (0..u0.len()).map(move |r| (r, n)))
        .map(|(r, n)| long[r..r + n].to_vec())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `x1 u0^k x2` for small `k`, plus the extra word when `|x1 x2| ≥ |u0|`.
fn pair_sample(a: &PairAlgebra, p: SPair, max_len: usize) -> Vec<Word> {
    let u0 = a.u0().as_slice();
    let x1 = &u0[u0.len() - p.suffix_len..];
    let x2 = &u0[..p.prefix_len];
    let mut out = Vec::new();
    if x1.len() + x2.len() >= u0.len() {
        let xy: Word = x1.iter().chain(x2).copied().collect();
        out.push(xy[u0.len()..].to_vec());
    }
    let mut k = 0;
    loop {
        let word: Word = x1.iter().chain(u0.repeat(k).iter()).chain(x2).copied().collect();
        if word.len() > max_len {
            break;
        }
        out.push(word);
        k += 1;
    }
    out
}

fn sample(a: &PairAlgebra, v: &ChainValue, max_len: usize) -> Vec<Word> {
    match v {
        ChainValue::PureWord(w) => vec![w.clone()],
        ChainValue::Pair(p) => pair_sample(a, *p, max_len),
        ChainValue::Undefined => Vec::new(),
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn dense_instance() -> Outcome {
    let gr = g("S -> 0 0 S | 1 1 S | 0 1");
    let t = Instant::now();
    let v = decide(&gr, &DecideOptions::default()).unwrap();
    let elapsed = t.elapsed();
    let ng = &v.normalized.as_ref().unwrap().grammar;
    let witness_ok = match &v.certificate {
        Some(Certificate::QuasiDenseWitness { nonterminal, u, v: vv }) => {
            ng.name(*nonterminal) == "S"
                && *u == w("00")
                && *vv == w("11")
                && verify_witness(ng, *nonterminal, u, vv)
                && verify_witness(&gr, gr.start(), u, vv)
        }
        _ => false,
    };
    outcome(
        !v.scattered && witness_ok && elapsed < DENSE_BUDGET,
        format!("scattered={} witness_ok={witness_ok} time={elapsed:.2?}", v.scattered),
    )
}

fn scattered_not_well_ordered() -> Outcome {
    let gr = g("S -> 0 S 1 | 0 1");
    let v = decide(&gr, &DecideOptions::default()).unwrap();
    let family_ok = match &v.certificate {
        Some(Certificate::DecreasingFamily(f)) => {
            f.terms.len() == 5
                && f.terms.iter().all(|t| earley_member(&gr, gr.start(), t))
                && f.terms.windows(2).all(|p| lex(&p[1], &p[0]) == Ordering::Less)
        }
        _ => false,
    };
    let listed = enumerate(&gr, 10).unwrap();
    let expected: Vec<Word> = (1..=5).rev().map(|n| [vec![0; n], vec![1; n]].concat()).collect();
    let decreasing_in_n = expected.windows(2).all(|p| lex(&p[0], &p[1]) == Ordering::Less);
    outcome(
        v.scattered && !v.well_ordered && family_ok && listed == expected && decreasing_in_n,
        format!("scattered={} well_ordered={} family_ok={family_ok} enumerated={}", v.scattered, v.well_ordered, listed.len()),
    )
}

fn well_ordered() -> Outcome {
    let gr = g("S -> 1 S 0 | 1 0");
    let v = decide(&gr, &DecideOptions::default()).unwrap();
    let listed = enumerate(&gr, 12).unwrap();
    let expected: Vec<Word> = (1..=6).map(|n| [vec![1; n], vec![0; n]].concat()).collect();
    let increasing = listed.windows(2).all(|p| lex(&p[0], &p[1]) == Ordering::Less);
    outcome(
        v.scattered && v.well_ordered && v.certificate.is_none() && increasing && listed == expected,
        format!("scattered={} well_ordered={} increasing={increasing}", v.scattered, v.well_ordered),
    )
}

fn equivalence(records: &[CorpusRecord], elapsed: Duration) -> Outcome {
    let s = CorpusSummary::of(records);
    let ok = s.total == CORPUS_SIZE && s.agreed == s.total && s.disagreements.is_empty() && s.errors.is_empty();
    outcome(
        ok && elapsed < CORPUS_BUDGET,
        format!(
            "agreement {}/{} fallbacks={} errors={} time={elapsed:.2?}",
            s.agreed,
            s.total,
            s.fallbacks,
            s.errors.len()
        ),
    )
}

fn certificate_completeness(records: &[CorpusRecord]) -> Outcome {
    let (mut witnesses, mut families, mut bad) = (0, 0, Vec::new());
    for r in records {
        let Ok(v) = &r.outcome else {
            bad.push(r.index);
            continue;
        };
        let ok = match (&v.certificate, v.scattered, v.well_ordered) {
            (Some(Certificate::QuasiDenseWitness { .. }), false, _) => {
                witnesses += 1;
                v.verify_certificate()
            }
            (Some(Certificate::DecreasingFamily(_)), true, false) => {
                families += 1;
                v.verify_certificate()
            }
            (None, true, true) => true,
            _ => false,
        };
        if !ok {
            bad.push(r.index);
        }
    }
    outcome(
        bad.is_empty(),
        format!("witnesses={witnesses} families={families} rejected={bad:?}"),
    )
}

fn algebra_suite() -> Outcome {
    let (mut assoc, mut unique, mut sound) = ((0usize, 0usize), (0usize, 0usize), (0usize, 0usize));
    for u0 in all_words(1, 4).into_iter().filter(|u| primitive(u)) {
        let n = u0.len();
        let a = PairAlgebra::new(PrimitiveWord::new(u0.clone()).unwrap());
        let pairs: Vec<SPair> = (0..n).flat_map(|i| (0..n).map(move |j| SPair::new(i, j))).collect();
        let words = legitimate_words(&u0, 0, 2 * n + 1);
        let values: Vec<ChainValue> = pairs
            .iter()
            .map(|&p| ChainValue::Pair(p))
            .chain(words.iter().cloned().map(ChainValue::PureWord))
            .collect();

        for x in &values {
            for y in &values {
                let xy = a.otimes(x, y);
                for z in &values {
                    assoc.0 += 1;
                    if a.otimes(&xy, z) != a.otimes(x, &a.otimes(y, z)) {
                        assoc.1 += 1;
                    }
                }
                if let ChainValue::Pair(r) = xy {
                    let max = 3 * n + 2;
                    let target = pair_sample(&a, r, 4 * max);
                    for s in sample(&a, x, max) {
                        for t in sample(&a, y, max) {
                            sound.0 += 1;
                            let st: Word = [s.clone(), t].concat();
                            if !target.contains(&st) {
                                sound.1 += 1;
                            }
                        }
                    }
                }
            }
        }

        for word in legitimate_words(&u0, n, 4 * n) {
            unique.0 += 1;
            let hits = pairs.iter().filter(|&&p| pair_sample(&a, p, word.len()).contains(&word)).count();
            if hits != 1 || pair_sample(&a, a.pair_of_word(&word).unwrap(), word.len()).iter().all(|v| *v != word) {
                unique.1 += 1;
            }
        }
    }
    outcome(
        assoc.1 == 0 && unique.1 == 0 && sound.1 == 0 && assoc.0 > 0 && sound.0 > 0,
        format!(
            "associativity {}/{} violations, uniqueness {}/{}, soundness {}/{}",
            assoc.1, assoc.0, unique.1, unique.0, sound.1, sound.0
        ),
    )
}

fn preservation(cfg: &CorpusConfig) -> Outcome {
    let mut bad = Vec::new();
    for i in 0..cfg.count {
        let gr = cfg.grammar(i);
        let mut before: Vec<Word> = enumerate_by_membership(&gr, PRESERVATION_LEN)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        before.sort();
        let nullable = nullable_set(&gr)[gr.start()];
        let (after, eps) = match scatterlex::normalize_pipeline(&gr) {
            Ok(n) => {
                let mut a = enumerate(&n.grammar, PRESERVATION_LEN).unwrap();
                a.sort();
                (a, n.had_epsilon)
            }
            Err(scatterlex::normalize::NormalizeError::EmptyLanguage { had_epsilon }) => (Vec::new(), had_epsilon),
        };
        if before != after || eps != nullable {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("{} grammars, mismatches={bad:?}", cfg.count))
}

fn conjugacy(records: &[CorpusRecord]) -> Outcome {
    let (mut checked, mut bad) = (0, Vec::new());
    for r in records {
        let Ok(v) = &r.outcome else { continue };
        let Some(n) = v.normalized.as_ref().filter(|_| v.scattered) else {
            continue;
        };
        let a = Analysis::new(&n.grammar, DecideOptions::default()).unwrap();
        for c in a.structure.components.iter().filter(|c| c.recursive && c.members.len() > 1) {
            checked += 1;
            let roots: Result<Vec<Word>, DecideError> =
                c.members.iter().map(|&x| a.candidate_u0(x).map(|p| p.as_slice().to_vec())).collect();
            match roots {
                Ok(roots) if roots.iter().all(|u| conjugate(u, &roots[0])) => {}
                _ => bad.push(r.index),
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!("{checked} multi-member components, failures={bad:?}"),
    )
}

/// `S' -> S1 S2` over disjoint copies of `a` and `b`.
fn concatenation(a: &Grammar, b: &Grammar) -> Grammar {
    let off = a.num_nonterminals();
    let mut names: Vec<String> = a.nonterminals().iter().map(|n| format!("L_{n}")).collect();
    names.extend(b.nonterminals().iter().map(|n| format!("R_{n}")));
    names.push("Start".to_string());
    let shift = |s: &Symbol, by: usize| match *s {
        Symbol::Nonterminal(x) => Symbol::Nonterminal(x + by),
        t => t,
    };
    let mut rules: Vec<Rule> = a.rules().to_vec();
    rules.extend(
        b.rules()
            .iter()
            .map(|r| Rule::new(r.lhs + off, r.rhs.iter().map(|s| shift(s, off)).collect())),
    );
    let start = names.len() - 1;
    rules.push(Rule::new(
        start,
        vec![Symbol::Nonterminal(a.start()), Symbol::Nonterminal(b.start() + off)],
    ));
    Grammar::new(a.alphabet().clone(), names, rules, start).unwrap()
}

fn concatenation_instance(records: &[CorpusRecord]) -> Outcome {
    let nonempty = |r: &&CorpusRecord| r.outcome.as_ref().is_ok_and(|v| v.normalized.is_some());
    let scattered: Vec<&CorpusRecord> = records
        .iter()
        .filter(nonempty)
        .filter(|r| r.outcome.as_ref().unwrap().scattered)
        .collect();
    let dense: Vec<&CorpusRecord> = records
        .iter()
        .filter(nonempty)
        .filter(|r| !r.outcome.as_ref().unwrap().scattered)
        .collect();
    let options = DecideOptions::with_algorithm(Algorithm::Both);
    let mut bad = Vec::new();

    let mut both = 0;
    for k in 0..CONCAT_PAIRS {
        let (a, b) = (scattered[k % scattered.len()], scattered[(k * 7 + 3) % scattered.len()]);
        both += 1;
        match decide(&concatenation(&a.grammar, &b.grammar), &options) {
            Ok(v) if v.scattered => {}
            _ => bad.push((a.index, b.index)),
        }
    }

    let mut mixed = 0;
    for k in 0..CONCAT_PAIRS {
        let (d, s) = (dense[k % dense.len()], scattered[(k * 5 + 1) % scattered.len()]);
        let (a, b) = if k % 2 == 0 { (d, s) } else { (s, d) };
        mixed += 1;
        let cat = concatenation(&a.grammar, &b.grammar);
        let v = decide(&cat, &options);
        let ok = match v {
            Ok(v) => match &v.certificate {
                Some(Certificate::QuasiDenseWitness { nonterminal, u, v: vv }) => {
                    let ng = &v.normalized.as_ref().unwrap().grammar;
                    !v.scattered && !prefix_comparable(u, vv) && verify_witness(ng, *nonterminal, u, vv)
                }
                _ => false,
            },
            Err(_) => false,
        };
        if !ok {
            bad.push((a.index, b.index));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{both} scattered pairs, {mixed} mixed pairs, failures={bad:?}"),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 dense instance", dense_instance()));
    results.push(("2 scattered, not well-ordered", scattered_not_well_ordered()));
    results.push(("3 well-ordered", well_ordered()));

    let cfg = CorpusConfig::new(CORPUS_SIZE, CORPUS_SEED);
    let t = Instant::now();
    let records = run(&cfg);
    let elapsed = t.elapsed();
    results.push(("4 algorithm equivalence", equivalence(&records, elapsed)));
    results.push(("5 certificate completeness", certificate_completeness(&records)));
    results.push(("6 algebra suite", algebra_suite()));
    results.push(("7 normalization preservation", preservation(&cfg)));
    results.push(("8 conjugacy", conjugacy(&records)));
    results.push(("9 concatenation", concatenation_instance(&records)));

    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.passed as usize;
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

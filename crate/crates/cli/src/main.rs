use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use scatterlex::corpus::{run, CorpusConfig, CorpusSummary};
use scatterlex::decide::Certificate;
use scatterlex::grammar::Grammar;
use scatterlex::normalize::{remove_epsilon, NormalizeError};
use scatterlex::oracle::{
    enumerate, find_quasidense_witness, is_strictly_increasing, verify_witness, OracleReport,
};
use scatterlex::wordalg::word_to_string;
use scatterlex::{decide, normalize_pipeline, parse_grammar, Algorithm, DecideError, DecideOptions, Verdict};

#[derive(Parser)]
#[command(name = "scatterlex", version, about = "Decide scatteredness of lexicographically ordered context-free languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Fast,
    Naive,
    Both,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Fast => Algorithm::Fast,
            AlgorithmArg::Naive => Algorithm::Naive,
            AlgorithmArg::Both => Algorithm::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the language is scattered and well-ordered
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        algorithm: AlgorithmArg,
        #[arg(long)]
        json: bool,
        /// Print the certificate after checking it with the oracle
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DecideOptions::default().max_u0_len)]
        max_u0_len: usize,
        #[arg(long, default_value_t = DecideOptions::default().max_derivation_depth)]
        max_derivation_depth: usize,
    },
    /// Print the normalized grammar
    Normalize { file: PathBuf },
    /// List the words up to a length in lexicographic order
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Confirm a verdict on one grammar with the oracle
    Crosscheck {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Cross-check both procedures on seeded random grammars
    Fuzz {
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Compare languages before and after normalization up to this length
        #[arg(long)]
        max_len: Option<usize>,
        /// Require the bounded witness search to succeed at this depth
        #[arg(long)]
        depth: Option<usize>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        let code = if matches!(e, DecideError::InternalDisagreement { .. }) { 2 } else { 1 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Grammar, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_grammar(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn certificate_text(v: &Verdict) -> String {
    let g = &v.normalized.as_ref().expect("certificates come with a normalized grammar").grammar;
    match &v.certificate {
        Some(Certificate::QuasiDenseWitness { nonterminal, u, v }) => format!(
            "quasi-dense witness: {} with u = {}, v = {}",
            g.name(*nonterminal),
            word_to_string(u),
            word_to_string(v)
        ),
        Some(Certificate::DecreasingFamily(f)) => {
            let terms: Vec<String> = f.terms.iter().map(|w| word_to_string(w)).collect();
            format!(
                "decreasing family in {}: {}^k {} {}^k = {}",
                g.name(f.nonterminal),
                word_to_string(&f.pump),
                word_to_string(&f.core),
                word_to_string(&f.context),
                terms.join(" > ")
            )
        }
        None => "none".to_string(),
    }
}

fn verdict_text(v: &Verdict, certify: bool) -> String {
    let mut out = String::new();
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "scattered: {}", yn(v.scattered)).unwrap();
    writeln!(out, "well-ordered: {}", yn(v.well_ordered)).unwrap();
    writeln!(out, "epsilon in language: {}", yn(v.epsilon_in_language)).unwrap();
    writeln!(out, "algorithm: {}", v.algorithm).unwrap();
    if v.fallback {
        writeln!(out, "fallback: automata check").unwrap();
    }
    if let Some(site) = &v.failure_site {
        writeln!(out, "failure site: {site}").unwrap();
    }
    for c in &v.components {
        let mut line = format!("component {{{}}} height {}", c.members.join(", "), c.height);
        if c.recursive {
            line.push_str(" recursive");
        }
        if let Some(u0) = &c.u0 {
            write!(line, " u0 = {}", word_to_string(u0)).unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
    if certify && v.certificate.is_some() {
        writeln!(out, "certificate: {} (verified)", certificate_text(v)).unwrap();
    }
    out
}

fn analyze(
    file: &Path,
    algorithm: Algorithm,
    json: bool,
    certify: bool,
    max_u0_len: usize,
    max_derivation_depth: usize,
) -> Result<String, Failure> {
    let g = load(file)?;
    let options = DecideOptions {
        algorithm,
        max_u0_len,
        max_derivation_depth,
        ..Default::default()
    };
    let v = decide(&g, &options)?;
    if certify && !v.verify_certificate() {
        return Err(Failure::usage("the oracle rejected the certificate"));
    }
    if json {
        let mut value = v.to_json();
        if certify {
            value["certificate_verified"] = serde_json::Value::Bool(true);
        }
        Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("json values serialize")))
    } else {
        Ok(verdict_text(&v, certify))
    }
}

fn normalize(file: &Path) -> Result<String, Failure> {
    let g = load(file)?;
    let n = normalize_pipeline(&g).map_err(|e| Failure::usage(e.to_string()))?;
    let mut out = format!("# epsilon: {}\n", n.had_epsilon);
    if n.degenerate {
        out.push_str("# degenerate: the language is a single word\n");
    }
    for (name, w) in &n.singleton_substitutions {
        writeln!(out, "# inlined: {name} = {}", word_to_string(w)).unwrap();
    }
    write!(out, "{}", n.grammar).unwrap();
    Ok(out)
}

/// Words of `L(g)` up to `max_len` letters in lexicographic order.
fn words(g: &Grammar, max_len: usize) -> Vec<String> {
    let (words, eps) = match remove_epsilon(g) {
        Ok((free, eps)) => (enumerate(&free, max_len).expect("epsilon rules were removed"), eps),
        Err(NormalizeError::EmptyLanguage { had_epsilon }) => (Vec::new(), had_epsilon),
    };
    let mut out: Vec<String> = Vec::new();
    if eps {
        out.push(g.alphabet().format_word(&[]));
    }
    out.extend(words.iter().map(|w| g.alphabet().format_word(w)));
    out
}

fn enumerate_cmd(file: &Path, max_len: usize) -> Result<String, Failure> {
    let g = load(file)?;
    Ok(words(&g, max_len).into_iter().map(|w| w + "\n").collect())
}

fn crosscheck(file: &Path, max_len: usize, depth: usize) -> Result<(String, bool), Failure> {
    let g = load(file)?;
    let v = decide(&g, &DecideOptions::with_algorithm(Algorithm::Both))?;
    let mut report = OracleReport::default();
    report.check("fast and naive agree", v.agreement);
    report.check("certificate verified", v.verify_certificate());
    if let Some(n) = &v.normalized {
        let ng = &n.grammar;
        report.enumerated = enumerate(ng, max_len).expect("normalized grammars are epsilon-free");
        report.check("enumeration strictly increasing", is_strictly_increasing(&report.enumerated));
        if let Some((x, u, w)) = find_quasidense_witness(ng, depth) {
            report.check("found witness verifies", verify_witness(ng, x, &u, &w));
            report.check("found witness implies quasi-dense", !v.scattered);
            report.witness_found = Some((ng.name(x).to_string(), word_to_string(&u), word_to_string(&w)));
        } else if !v.scattered {
            report.check(format!("witness search within depth {depth}"), false);
        }
    }
    let mut out = verdict_text(&v, true);
    writeln!(out, "enumerated {} normalized words up to length {max_len}", report.enumerated.len()).unwrap();
    if let Some((x, u, w)) = &report.witness_found {
        writeln!(out, "search found witness: {x} with u = {u}, v = {w}").unwrap();
    }
    for c in &report.checks {
        writeln!(out, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name).unwrap();
    }
    Ok((out, report.all_passed()))
}

fn fuzz(count: usize, seed: u64, max_len: Option<usize>, depth: Option<usize>) -> (String, bool) {
    let mut cfg = CorpusConfig::new(count, seed);
    cfg.preservation_len = max_len;
    cfg.search_depth = depth;
    let summary = CorpusSummary::of(&run(&cfg));
    (summary.to_string(), summary.clean())
}

fn execute(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Analyze {
            file,
            algorithm,
            json,
            certify,
            max_u0_len,
            max_derivation_depth,
        } => analyze(&file, algorithm.into(), json, certify, max_u0_len, max_derivation_depth).map(|s| (s, true)),
        Command::Normalize { file } => normalize(&file).map(|s| (s, true)),
        Command::Enumerate { file, max_len } => enumerate_cmd(&file, max_len).map(|s| (s, true)),
        Command::Crosscheck { file, max_len, depth } => crosscheck(&file, max_len, depth),
        Command::Fuzz {
            count,
            seed,
            max_len,
            depth,
        } => Ok(fuzz(count as usize, seed, max_len, depth)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok((out, clean)) => {
            print!("{out}");
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

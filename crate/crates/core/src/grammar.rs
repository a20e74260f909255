//! Grammar data model, the line-oriented grammar file format, structural
//! diagnostics, and the order-preserving binary re-encoding of alphabets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// A terminal word: a sequence of letter indices into an [`OrderedAlphabet`].
///
/// Over the binary alphabet `0 < 1` the letter index is the bit itself.
pub type Word = Vec<u8>;

/// Index of a nonterminal inside its [`Grammar`].
pub type NtId = usize;

/// Tokens with a fixed meaning in the file format.
const RESERVED: [&str; 4] = ["eps", "->", "|", "<"];

/// Maximum number of letters; letters are stored as `u8`.
pub const MAX_LETTERS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    letters: Vec<String>,
}

impl OrderedAlphabet {
    /// Builds an alphabet whose order is the order of `letters`.
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self, GrammarError> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(GrammarError::EmptyAlphabet);
        }
        if letters.len() > MAX_LETTERS {
            return Err(GrammarError::AlphabetTooLarge(letters.len()));
        }
        let mut seen = HashSet::new();
        for l in &letters {
            if !is_valid_token(l) {
                return Err(GrammarError::InvalidName(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(GrammarError::DuplicateLetter(l.clone()));
            }
        }
        Ok(OrderedAlphabet { letters })
    }

    pub fn binary() -> Self {
        OrderedAlphabet {
            letters: vec!["0".to_string(), "1".to_string()],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, index: u8) -> &str {
        &self.letters[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.letters.iter().position(|l| l == name).map(|i| i as u8)
    }

    pub fn is_binary(&self) -> bool {
        self.letters == ["0", "1"]
    }

    /// Renders a word. Single-character letters are concatenated, longer
    /// ones are separated by spaces. The empty word renders as `eps`.
    pub fn format_word(&self, word: &[u8]) -> String {
        if word.is_empty() {
            return "eps".to_string();
        }
        let sep = if self.letters.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            " "
        };
        word.iter()
            .map(|&c| self.letter(c))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(u8),
    Nonterminal(NtId),
}

impl Symbol {
    pub fn nonterminal(self) -> Option<NtId> {
        match self {
            Symbol::Nonterminal(n) => Some(n),
            Symbol::Terminal(_) => None,
        }
    }

    pub fn is_terminal(self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: NtId,
    pub rhs: Vec<Symbol>,
}

impl Rule {
    pub fn new(lhs: NtId, rhs: Vec<Symbol>) -> Self {
        Rule { lhs, rhs }
    }

    pub fn is_epsilon(&self) -> bool {
        self.rhs.is_empty()
    }

    /// `Some(Y)` when the rule is `X -> Y`.
    pub fn unit_target(&self) -> Option<NtId> {
        match self.rhs.as_slice() {
            [Symbol::Nonterminal(y)] => Some(*y),
            _ => None,
        }
    }
}

/// A context-free grammar over an ordered alphabet.
///
/// Rules form a set: construction sorts them by left-hand side (stable with
/// respect to the given order) and drops exact duplicates, so the printed
/// form parses back to an equal value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    alphabet: OrderedAlphabet,
    nonterminals: Vec<String>,
    rules: Vec<Rule>,
    start: NtId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("alphabet has {0} letters; at most 256 are supported")]
    AlphabetTooLarge(usize),
    #[error("duplicate alphabet letter `{0}`")]
    DuplicateLetter(String),
    #[error("`{0}` is not a valid symbol name")]
    InvalidName(String),
    #[error("duplicate nonterminal `{0}`")]
    DuplicateNonterminal(String),
    #[error("nonterminal `{0}` is also an alphabet letter")]
    NonterminalIsLetter(String),
    #[error("rule refers to nonterminal #{0}, which is not declared")]
    UnknownNonterminal(NtId),
    #[error("rule uses letter #{0}, which is outside the alphabet")]
    UnknownLetter(u8),
    #[error("start symbol #{0} is not declared")]
    UnknownStart(NtId),
}

impl Grammar {
    pub fn new(
        alphabet: OrderedAlphabet,
        nonterminals: Vec<String>,
        rules: Vec<Rule>,
        start: NtId,
    ) -> Result<Self, GrammarError> {
        let mut seen = HashSet::new();
        for name in &nonterminals {
            if !is_valid_token(name) {
                return Err(GrammarError::InvalidName(name.clone()));
            }
            if alphabet.index_of(name).is_some() {
                return Err(GrammarError::NonterminalIsLetter(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(GrammarError::DuplicateNonterminal(name.clone()));
            }
        }
        if start >= nonterminals.len() {
            return Err(GrammarError::UnknownStart(start));
        }
        for rule in &rules {
            if rule.lhs >= nonterminals.len() {
                return Err(GrammarError::UnknownNonterminal(rule.lhs));
            }
            for sym in &rule.rhs {
                match *sym {
                    Symbol::Nonterminal(n) if n >= nonterminals.len() => {
                        return Err(GrammarError::UnknownNonterminal(n))
                    }
                    Symbol::Terminal(c) if c as usize >= alphabet.len() => {
                        return Err(GrammarError::UnknownLetter(c))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self::from_parts(alphabet, nonterminals, rules, start))
    }

    /// Assembles a grammar from parts already known to be consistent.
    pub(crate) fn from_parts(
        alphabet: OrderedAlphabet,
        nonterminals: Vec<String>,
        mut rules: Vec<Rule>,
        start: NtId,
    ) -> Self {
        rules.sort_by_key(|r| r.lhs);
        let mut seen = HashSet::new();
        rules.retain(|r| seen.insert(r.clone()));
        Grammar {
            alphabet,
            nonterminals,
            rules,
            start,
        }
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn num_nonterminals(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn name(&self, nt: NtId) -> &str {
        &self.nonterminals[nt]
    }

    pub fn nt(&self, name: &str) -> Option<NtId> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_of(&self, nt: NtId) -> impl Iterator<Item = &Rule> + '_ {
        self.rules.iter().filter(move |r| r.lhs == nt)
    }

    pub fn start(&self) -> NtId {
        self.start
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet.is_binary()
    }

    pub fn has_epsilon_rules(&self) -> bool {
        self.rules.iter().any(Rule::is_epsilon)
    }

    pub fn format_word(&self, word: &[u8]) -> String {
        self.alphabet.format_word(word)
    }

    /// Renders a sentential form in file-format tokens.
    pub fn format_body(&self, body: &[Symbol]) -> String {
        if body.is_empty() {
            return "eps".to_string();
        }
        body.iter()
            .map(|s| match *s {
                Symbol::Terminal(c) => self.alphabet.letter(c).to_string(),
                Symbol::Nonterminal(n) => self.nonterminals[n].clone(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a grammar from the file format (see [`parse_grammar`]).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_grammar(text)
    }

    /// Index of an unused name derived from `base`.
    pub(crate) fn fresh_name(&self, base: &str, extra_taken: &HashSet<String>) -> String {
        fresh_name(base, |n| {
            self.nt(n).is_some() || self.alphabet.index_of(n).is_some() || extra_taken.contains(n)
        })
    }

    /// Derived grammar with a different rule set over the same symbols.
    pub(crate) fn with_rules(&self, rules: Vec<Rule>) -> Self {
        Self::from_parts(
            self.alphabet.clone(),
            self.nonterminals.clone(),
            rules,
            self.start,
        )
    }

    /// Terminal word of a body consisting only of terminals.
    pub fn terminal_word(body: &[Symbol]) -> Option<Word> {
        body.iter()
            .map(|s| match *s {
                Symbol::Terminal(c) => Some(c),
                Symbol::Nonterminal(_) => None,
            })
            .collect()
    }
}

pub(crate) fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let mut candidate = base.to_string();
    while taken(&candidate) {
        candidate.push('\'');
    }
    candidate
}

fn is_valid_token(s: &str) -> bool {
    !s.is_empty()
        && !RESERVED.contains(&s)
        && !s.chars().any(|c| c.is_whitespace() || c == '#' || c == '|' || c == '<')
        && !s.contains("->")
        && !s.ends_with(':')
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet.letters.join(" < "))?;
        writeln!(f, "start: {}", self.nonterminals[self.start])?;
        for (nt, name) in self.nonterminals.iter().enumerate() {
            let bodies: Vec<String> = self.rules_of(nt).map(|r| self.format_body(&r.rhs)).collect();
            if bodies.is_empty() {
                writeln!(f, "{name} ->")?;
            } else {
                writeln!(f, "{name} -> {}", bodies.join(" | "))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing alphabet declaration")]
    MissingAlphabet,
    #[error("missing start declaration")]
    MissingStart,
    #[error("duplicate {0} declaration")]
    DuplicateHeader(&'static str),
    #[error("duplicate alphabet letter `{0}`")]
    DuplicateLetter(String),
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("start symbol `{0}` has no rules")]
    UndeclaredStart(String),
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Parse failure, with a 1-based position when one is meaningful.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.kind)
        } else {
            write!(f, "{}:{}: {}", self.line, self.column, self.kind)
        }
    }
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

struct RawRule<'a> {
    lhs: usize,
    body: Vec<(usize, usize, &'a str)>,
}

/// Parses the line-oriented grammar format:
///
/// ```text
/// # comment
/// alphabet: a < b < c
/// start: S
/// S -> a S | b
///    | c          # continuation of the previous left-hand side
/// A ->            # declared, no rules
/// ```
///
/// `eps` denotes the empty body. Every token that appears as a left-hand
/// side is a nonterminal; every other body token must be a letter.
pub fn parse_grammar(text: &str) -> Result<Grammar, ParseError> {
    let mut alphabet: Option<(usize, Vec<(usize, String)>)> = None;
    let mut start: Option<(usize, usize, String)> = None;
    let mut nt_names: Vec<String> = Vec::new();
    let mut nt_index: HashMap<String, usize> = HashMap::new();
    let mut raw_rules: Vec<RawRule> = Vec::new();
    let mut current_lhs: Option<usize> = None;

    for (lineno, full_line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match full_line.find('#') {
            Some(i) => &full_line[..i],
            None => full_line,
        };
        let trimmed = line.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let header_col = line[..indent].chars().count() + 1;
        if let Some(rest) = trimmed.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(err(lineno, header_col, ParseErrorKind::DuplicateHeader("alphabet")));
            }
            let offset = indent + "alphabet:".len();
            let mut letters = Vec::new();
            let mut pos = offset;
            for piece in rest.split('<') {
                let toks = tokens(piece);
                let col = line[..pos].chars().count();
                match toks.as_slice() {
                    [(c, t)] => letters.push((col + c, t.to_string())),
                    [] => {
                        return Err(err(
                            lineno,
                            col + 1,
                            ParseErrorKind::Syntax("expected a letter".into()),
                        ))
                    }
                    [_, (c, _), ..] => {
                        return Err(err(
                            lineno,
                            col + c,
                            ParseErrorKind::Syntax("letters must be separated by `<`".into()),
                        ))
                    }
                }
                pos += piece.len() + 1;
            }
            alphabet = Some((lineno, letters));
            current_lhs = None;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("start:") {
            if start.is_some() {
                return Err(err(lineno, header_col, ParseErrorKind::DuplicateHeader("start")));
            }
            let offset = line[..indent + "start:".len()].chars().count();
            match tokens(rest).as_slice() {
                [(c, t)] => start = Some((lineno, offset + c, t.to_string())),
                _ => {
                    return Err(err(
                        lineno,
                        header_col,
                        ParseErrorKind::Syntax("expected exactly one start symbol".into()),
                    ))
                }
            }
            current_lhs = None;
            continue;
        }

        let toks = tokens(line);
        let (lhs, body_toks) = if toks[0].1 == "|" {
            match current_lhs {
                Some(l) => (l, &toks[..]),
                None => {
                    return Err(err(
                        lineno,
                        toks[0].0,
                        ParseErrorKind::Syntax("continuation line without a preceding rule".into()),
                    ))
                }
            }
        } else {
            if toks.len() < 2 || toks[1].1 != "->" {
                return Err(err(
                    lineno,
                    toks.get(1).map_or(toks[0].0 + toks[0].1.len(), |t| t.0),
                    ParseErrorKind::Syntax("expected `->`".into()),
                ));
            }
            let (col, name) = toks[0];
            if !is_valid_token(name) {
                return Err(err(
                    lineno,
                    col,
                    ParseErrorKind::Grammar(GrammarError::InvalidName(name.to_string())),
                ));
            }
            let id = *nt_index.entry(name.to_string()).or_insert_with(|| {
                nt_names.push(name.to_string());
                nt_names.len() - 1
            });
            (id, &toks[2..])
        };
        current_lhs = Some(lhs);

        // A leading `|` on a continuation line separates from the previous
        // line's last body.
        let body_toks = match body_toks.first() {
            Some((_, "|")) if toks[0].1 == "|" => &body_toks[1..],
            _ => body_toks,
        };
        if body_toks.is_empty() {
            if toks[0].1 == "|" {
                return Err(err(lineno, toks[0].0, ParseErrorKind::Syntax("empty alternative".into())));
            }
            continue;
        }
        let mut body = Vec::new();
        let mut alt_col = body_toks[0].0;
        for &(col, t) in body_toks.iter().chain(std::iter::once(&(0usize, "|"))) {
            if t == "|" {
                if body.is_empty() {
                    return Err(err(
                        lineno,
                        if col == 0 { alt_col } else { col },
                        ParseErrorKind::Syntax("empty alternative; write `eps` for the empty body".into()),
                    ));
                }
                raw_rules.push(RawRule {
                    lhs,
                    body: std::mem::take(&mut body),
                });
                alt_col = col;
            } else {
                body.push((lineno, col, t));
            }
        }
    }

    let Some((alpha_line, letters)) = alphabet else {
        return Err(err(0, 0, ParseErrorKind::MissingAlphabet));
    };
    let mut seen = HashSet::new();
    for (col, l) in &letters {
        if !seen.insert(l.as_str()) {
            return Err(err(alpha_line, *col, ParseErrorKind::DuplicateLetter(l.clone())));
        }
        if !is_valid_token(l) {
            return Err(err(
                alpha_line,
                *col,
                ParseErrorKind::Grammar(GrammarError::InvalidName(l.clone())),
            ));
        }
    }
    let alphabet = OrderedAlphabet::new(letters.iter().map(|(_, l)| l.clone()))
        .map_err(|e| err(alpha_line, 1, e.into()))?;
    let Some((start_line, start_col, start_name)) = start else {
        return Err(err(0, 0, ParseErrorKind::MissingStart));
    };
    let start = *nt_index
        .get(&start_name)
        .ok_or_else(|| err(start_line, start_col, ParseErrorKind::UndeclaredStart(start_name.clone())))?;

    let mut rules = Vec::with_capacity(raw_rules.len());
    for raw in raw_rules {
        let mut rhs = Vec::new();
        let is_eps = raw.body.len() == 1 && raw.body[0].2 == "eps";
        if !is_eps {
            for (line, col, t) in raw.body {
                if let Some(&n) = nt_index.get(t) {
                    rhs.push(Symbol::Nonterminal(n));
                } else if let Some(c) = alphabet.index_of(t) {
                    rhs.push(Symbol::Terminal(c));
                } else if t == "eps" {
                    return Err(err(
                        line,
                        col,
                        ParseErrorKind::Syntax("`eps` must stand alone as a body".into()),
                    ));
                } else {
                    return Err(err(line, col, ParseErrorKind::UndeclaredSymbol(t.to_string())));
                }
            }
        }
        rules.push(Rule::new(raw.lhs, rhs));
    }
    Grammar::new(alphabet, nt_names, rules, start).map_err(|e| err(0, 0, e.into()))
}

// ---------------------------------------------------------------------------
// Diagnostics

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diagnostic {
    Unproductive(String),
    Unreachable(String),
    EpsilonRule(String),
    UnitCycle(Vec<String>),
    LeftRecursive(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Unproductive(n) => write!(f, "unproductive: {n}"),
            Diagnostic::Unreachable(n) => write!(f, "unreachable: {n}"),
            Diagnostic::EpsilonRule(n) => write!(f, "epsilon rule: {n}"),
            Diagnostic::UnitCycle(ns) => write!(f, "unit cycle: {}", ns.join(" ")),
            Diagnostic::LeftRecursive(n) => write!(f, "left-recursive: {n}"),
        }
    }
}

/// Nonterminals that derive at least one terminal word.
pub fn productive_set(g: &Grammar) -> Vec<bool> {
    let mut productive = vec![false; g.num_nonterminals()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            if !productive[r.lhs]
                && r.rhs.iter().all(|s| match *s {
                    Symbol::Terminal(_) => true,
                    Symbol::Nonterminal(n) => productive[n],
                })
            {
                productive[r.lhs] = true;
                changed = true;
            }
        }
    }
    productive
}

/// Nonterminals that derive the empty word.
pub fn nullable_set(g: &Grammar) -> Vec<bool> {
    let mut nullable = vec![false; g.num_nonterminals()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            if !nullable[r.lhs]
                && r.rhs.iter().all(|s| match *s {
                    Symbol::Terminal(_) => false,
                    Symbol::Nonterminal(n) => nullable[n],
                })
            {
                nullable[r.lhs] = true;
                changed = true;
            }
        }
    }
    nullable
}

/// Nonterminals reachable from the start symbol through rules whose
/// symbols all satisfy `usable`.
pub(crate) fn reachable_set(g: &Grammar, usable: impl Fn(&Rule) -> bool) -> Vec<bool> {
    let mut reach = vec![false; g.num_nonterminals()];
    reach[g.start()] = true;
    let mut stack = vec![g.start()];
    while let Some(x) = stack.pop() {
        for r in g.rules_of(x).filter(|r| usable(r)) {
            for n in r.rhs.iter().filter_map(|s| s.nonterminal()) {
                if !reach[n] {
                    reach[n] = true;
                    stack.push(n);
                }
            }
        }
    }
    reach
}

/// Nonterminals lying on a cycle of `edges`, grouped by strongly connected
/// component (each group sorted, groups sorted by smallest member).
pub(crate) fn cyclic_groups(n: usize, edges: &[Vec<NtId>]) -> Vec<Vec<NtId>> {
    let mut reach = vec![vec![false; n]; n];
    for (x, targets) in edges.iter().enumerate() {
        for &y in targets {
            reach[x][y] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut groups = Vec::new();
    for x in 0..n {
        if assigned[x] || !reach[x][x] {
            continue;
        }
        let group: Vec<NtId> = (0..n).filter(|&y| reach[x][y] && reach[y][x]).collect();
        for &y in &group {
            assigned[y] = true;
        }
        groups.push(group);
    }
    groups
}

/// Reports the conditions the normalization pipeline repairs. The list is
/// empty exactly when the grammar has no useless nonterminals, no ε-rules,
/// no unit cycles and no left recursion.
pub fn validate(g: &Grammar) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let productive = productive_set(g);
    for (nt, &p) in productive.iter().enumerate() {
        if !p {
            out.push(Diagnostic::Unproductive(g.name(nt).to_string()));
        }
    }
    let reach = reachable_set(g, |_| true);
    for (nt, &r) in reach.iter().enumerate() {
        if !r {
            out.push(Diagnostic::Unreachable(g.name(nt).to_string()));
        }
    }
    let eps: BTreeSet<NtId> = g.rules().iter().filter(|r| r.is_epsilon()).map(|r| r.lhs).collect();
    for nt in eps {
        out.push(Diagnostic::EpsilonRule(g.name(nt).to_string()));
    }

    let n = g.num_nonterminals();
    let mut unit_edges = vec![Vec::new(); n];
    for r in g.rules() {
        if let Some(y) = r.unit_target() {
            unit_edges[r.lhs].push(y);
        }
    }
    for group in cyclic_groups(n, &unit_edges) {
        out.push(Diagnostic::UnitCycle(
            group.iter().map(|&x| g.name(x).to_string()).collect(),
        ));
    }

    for group in cyclic_groups(n, &left_corner_edges(g, &nullable_set(g))) {
        for x in group {
            out.push(Diagnostic::LeftRecursive(g.name(x).to_string()));
        }
    }
    out
}

/// Edges `X -> Y` for rules `X -> α Y β` with α nullable.
pub(crate) fn left_corner_edges(g: &Grammar, nullable: &[bool]) -> Vec<Vec<NtId>> {
    let mut edges = vec![Vec::new(); g.num_nonterminals()];
    for r in g.rules() {
        for s in &r.rhs {
            match *s {
                Symbol::Terminal(_) => break,
                Symbol::Nonterminal(y) => {
                    edges[r.lhs].push(y);
                    if !nullable[y] {
                        break;
                    }
                }
            }
        }
    }
    edges
}

// ---------------------------------------------------------------------------
// Binary encoding

/// The fixed-width letter code `a_i ↦ binary(i)` of width
/// `max(1, ⌈log₂ k⌉)`, which maps `<_ℓ` on words to `<_ℓ` on their images.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryEncoding {
    width: usize,
}

impl BinaryEncoding {
    pub fn for_alphabet_size(k: usize) -> Self {
        let mut width = 0;
        while (1usize << width) < k {
            width += 1;
        }
        BinaryEncoding {
            width: width.max(1),
        }
    }

    pub fn width(self) -> usize {
        self.width
    }

    pub fn encode_letter(self, letter: u8) -> Word {
        (0..self.width)
            .rev()
            .map(|bit| (letter >> bit) & 1)
            .collect()
    }

    pub fn encode_word(self, word: &[u8]) -> Word {
        word.iter().flat_map(|&c| self.encode_letter(c)).collect()
    }
}

/// Re-encodes `g` over the alphabet `0 < 1`, replacing every letter by its
/// fixed-width binary code. A grammar already over `0 < 1` is returned as is.
pub fn encode_binary(g: &Grammar) -> Grammar {
    if g.is_binary() {
        return g.clone();
    }
    let enc = BinaryEncoding::for_alphabet_size(g.alphabet.len());
    let binary = OrderedAlphabet::binary();
    let mut names: Vec<String> = Vec::with_capacity(g.nonterminals.len());
    for name in &g.nonterminals {
        let renamed = fresh_name(name, |n| {
            binary.index_of(n).is_some() || names.iter().any(|m| m == n) || (n != name && g.nt(n).is_some())
        });
        names.push(renamed);
    }
    let rules = g
        .rules
        .iter()
        .map(|r| {
            let rhs = r
                .rhs
                .iter()
                .flat_map(|s| match *s {
                    Symbol::Terminal(c) => enc
                        .encode_letter(c)
                        .into_iter()
                        .map(Symbol::Terminal)
                        .collect::<Vec<_>>(),
                    Symbol::Nonterminal(n) => vec![Symbol::Nonterminal(n)],
                })
                .collect();
            Rule::new(r.lhs, rhs)
        })
        .collect();
    Grammar::from_parts(binary, names, rules, g.start)
}

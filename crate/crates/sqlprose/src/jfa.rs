//! Jumping finite automata over categorized symbols. A machine consumes its
//! input as a multiset: each step removes any one remaining symbol for which
//! the current state has a rule, so word order never matters. Acceptance asks
//! whether some consumption order drains the whole input and lands in a final
//! state.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// The three symbol categories: actions (`a`), columns (`b`), tables (`c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolCategory {
    Action,
    Column,
    Table,
}

impl SymbolCategory {
    /// Single-letter spelling used in symbol names.
    pub fn letter(self) -> char {
        match self {
            SymbolCategory::Action => 'a',
            SymbolCategory::Column => 'b',
            SymbolCategory::Table => 'c',
        }
    }

    /// Inverse of [`SymbolCategory::letter`].
    pub fn from_letter(c: char) -> Option<SymbolCategory> {
        match c {
            'a' => Some(SymbolCategory::Action),
            'b' => Some(SymbolCategory::Column),
            'c' => Some(SymbolCategory::Table),
            _ => None,
        }
    }
}

/// One alphabet symbol, e.g. `a5` or `b21`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JfaSymbol {
    pub category: SymbolCategory,
    pub index: u32,
}

impl JfaSymbol {
    pub fn new(category: SymbolCategory, index: u32) -> Self {
        JfaSymbol { category, index }
    }

    /// Shorthand for an action symbol `aN`.
    pub fn action(index: u32) -> Self {
        JfaSymbol::new(SymbolCategory::Action, index)
    }

    /// Shorthand for a column symbol `bN`.
    pub fn column(index: u32) -> Self {
        JfaSymbol::new(SymbolCategory::Column, index)
    }

    /// Shorthand for a table symbol `cN`.
    pub fn table(index: u32) -> Self {
        JfaSymbol::new(SymbolCategory::Table, index)
    }
}

impl fmt::Display for JfaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.category.letter(), self.index)
    }
}

impl FromStr for JfaSymbol {
    type Err = JfaError;

    fn from_str(s: &str) -> Result<Self, JfaError> {
        let bad = || JfaError::BadSymbolName { text: s.to_string() };
        let mut chars = s.chars();
        let category = chars.next().and_then(SymbolCategory::from_letter).ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index = digits.parse().map_err(|_| bad())?;
        Ok(JfaSymbol { category, index })
    }
}

/// One jumping rule: in `from`, consume one occurrence of `symbol` anywhere
/// in the remaining input and move to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JfaRule {
    pub from: String,
    pub symbol: JfaSymbol,
    pub to: String,
}

/// Jumping-automaton failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JfaError {
    #[error("symbol {symbol} is not in the machine's alphabet")]
    UnknownSymbol { symbol: JfaSymbol },
    #[error("input of length {len} exceeds the oracle bound of {bound}")]
    BoundExceeded { len: usize, bound: usize },
    #[error("state {name:?} is not declared")]
    UnknownState { name: String },
    #[error("no start state declared")]
    NoStart,
    #[error("line {line}: malformed machine entry: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("bad symbol name {text:?}")]
    BadSymbolName { text: String },
}

/// Longest input `accepts_oracle` will brute-force by permutation.
pub const ORACLE_BOUND: usize = 8;

/// A jumping finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JfaMachine {
    states: Vec<String>,
    alphabet: BTreeSet<JfaSymbol>,
    rules: Vec<JfaRule>,
    start: usize,
    finals: BTreeSet<usize>,
    /// (state, symbol) -> successor states; nondeterminism is allowed.
    transitions: HashMap<(usize, JfaSymbol), Vec<usize>>,
}

impl JfaMachine {
    /// Build and validate a machine. The alphabet is the given symbol set
    /// extended by every symbol a rule mentions.
    pub fn new(
        states: Vec<String>,
        alphabet: impl IntoIterator<Item = JfaSymbol>,
        rules: Vec<JfaRule>,
        start: &str,
        finals: &[String],
    ) -> Result<Self, JfaError> {
        let index_of = |name: &str| -> Result<usize, JfaError> {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| JfaError::UnknownState { name: name.to_string() })
        };
        let start = index_of(start)?;
        let finals = finals.iter().map(|f| index_of(f)).collect::<Result<BTreeSet<_>, _>>()?;
        let mut alphabet: BTreeSet<JfaSymbol> = alphabet.into_iter().collect();
        let mut transitions: HashMap<(usize, JfaSymbol), Vec<usize>> = HashMap::new();
        for rule in &rules {
            let from = index_of(&rule.from)?;
            let to = index_of(&rule.to)?;
            alphabet.insert(rule.symbol);
            transitions.entry((from, rule.symbol)).or_default().push(to);
        }
        Ok(JfaMachine { states, alphabet, rules, start, finals, transitions })
    }

    /// Parse the plain-text machine format: one entry per line, out of
    /// `state NAME`, `start NAME`, `final NAME` and `rule FROM SYMBOL TO`;
    /// blank lines and full-line `#` comments are skipped. States must be
    /// declared before the lines that reference them.
    pub fn parse(text: &str) -> Result<Self, JfaError> {
        let mut states: Vec<String> = Vec::new();
        let mut start: Option<String> = None;
        let mut finals: Vec<String> = Vec::new();
        let mut rules: Vec<JfaRule> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut words = trimmed.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let rest: Vec<&str> = words.collect();
            let malformed = |reason: &str| JfaError::Malformed { line, reason: reason.to_string() };
            match (keyword, rest.as_slice()) {
                ("state", [name]) => {
                    if states.iter().any(|s| s == name) {
                        return Err(malformed("duplicate state"));
                    }
                    states.push((*name).to_string());
                }
                ("start", [name]) => {
                    if start.is_some() {
                        return Err(malformed("duplicate start"));
                    }
                    start = Some((*name).to_string());
                }
                ("final", [name]) => finals.push((*name).to_string()),
                ("rule", [from, symbol, to]) => rules.push(JfaRule {
                    from: (*from).to_string(),
                    symbol: symbol.parse()?,
                    to: (*to).to_string(),
                }),
                _ => return Err(malformed("expected state, start, final or rule")),
            }
        }
        let start = start.ok_or(JfaError::NoStart)?;
        JfaMachine::new(states, [], rules, &start, &finals)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> impl Iterator<Item = JfaSymbol> + '_ {
        self.alphabet.iter().copied()
    }

    pub fn rules(&self) -> &[JfaRule] {
        &self.rules
    }

    pub fn start(&self) -> &str {
        &self.states[self.start]
    }

    pub fn finals(&self) -> impl Iterator<Item = &str> {
        self.finals.iter().map(|&i| self.states[i].as_str())
    }

    /// True when the machine can consume the whole input, in some order, and
    /// stop in a final state. Memoizes on (state, remaining-symbol counts),
    /// so inputs far beyond the oracle bound stay cheap.
    pub fn accepts(&self, input: &[JfaSymbol]) -> Result<bool, JfaError> {
        let (symbols, counts) = self.count_input(input)?;
        let mut memo: HashMap<(usize, Vec<u32>), bool> = HashMap::new();
        let mut counts = counts;
        Ok(self.search(self.start, &symbols, &mut counts, &mut memo))
    }

    fn count_input(&self, input: &[JfaSymbol]) -> Result<(Vec<JfaSymbol>, Vec<u32>), JfaError> {
        let mut tally: HashMap<JfaSymbol, u32> = HashMap::new();
        for &symbol in input {
            if !self.alphabet.contains(&symbol) {
                return Err(JfaError::UnknownSymbol { symbol });
            }
            *tally.entry(symbol).or_insert(0) += 1;
        }
        let mut symbols: Vec<JfaSymbol> = tally.keys().copied().collect();
        symbols.sort();
        let counts = symbols.iter().map(|s| tally[s]).collect();
        Ok((symbols, counts))
    }

    fn search(
        &self,
        state: usize,
        symbols: &[JfaSymbol],
        counts: &mut Vec<u32>,
        memo: &mut HashMap<(usize, Vec<u32>), bool>,
    ) -> bool {
        if counts.iter().all(|&c| c == 0) {
            return self.finals.contains(&state);
        }
        let key = (state, counts.clone());
        if let Some(&answer) = memo.get(&key) {
            return answer;
        }
        // Each recursive step consumes one symbol, so the remaining counts
        // strictly shrink and the search always terminates.
        let mut accepted = false;
        'symbols: for i in 0..symbols.len() {
            if counts[i] == 0 {
                continue;
            }
            if let Some(nexts) = self.transitions.get(&(state, symbols[i])) {
                for &next in nexts {
                    counts[i] -= 1;
                    let hit = self.search(next, symbols, counts, memo);
                    counts[i] += 1;
                    if hit {
                        accepted = true;
                        break 'symbols;
                    }
                }
            }
        }
        memo.insert(key, accepted);
        accepted
    }

    /// Reference decision procedure: try every permutation of the input and
    /// run the machine as a plain (non-jumping) automaton over each. Inputs
    /// longer than [`ORACLE_BOUND`] are refused.
    pub fn accepts_oracle(&self, input: &[JfaSymbol]) -> Result<bool, JfaError> {
        if input.len() > ORACLE_BOUND {
            return Err(JfaError::BoundExceeded { len: input.len(), bound: ORACLE_BOUND });
        }
        for &symbol in input {
            if !self.alphabet.contains(&symbol) {
                return Err(JfaError::UnknownSymbol { symbol });
            }
        }
        let mut word: Vec<JfaSymbol> = input.to_vec();
        let mut accepted = self.runs_to_final(&word);
        // Heap's algorithm enumerates every permutation in place.
        let mut stack = vec![0usize; word.len()];
        let mut i = 1;
        while i < word.len() && !accepted {
            if stack[i] < i {
                if i % 2 == 0 {
                    word.swap(0, i);
                } else {
                    word.swap(stack[i], i);
                }
                accepted = self.runs_to_final(&word);
                stack[i] += 1;
                i = 1;
            } else {
                stack[i] = 0;
                i += 1;
            }
        }
        Ok(accepted)
    }

    /// Simulate the rule set over a fixed symbol sequence, tracking the full
    /// set of reachable states.
    fn runs_to_final(&self, word: &[JfaSymbol]) -> bool {
        let mut current: BTreeSet<usize> = BTreeSet::new();
        current.insert(self.start);
        for &symbol in word {
            let mut next = BTreeSet::new();
            for &state in &current {
                if let Some(tos) = self.transitions.get(&(state, symbol)) {
                    next.extend(tos.iter().copied());
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|s| self.finals.contains(s))
    }
}

impl fmt::Display for JfaMachine {
    /// Render in the same plain-text format [`JfaMachine::parse`] reads.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for state in &self.states {
            writeln!(f, "state {state}")?;
        }
        writeln!(f, "start {}", self.start())?;
        for name in self.finals() {
            writeln!(f, "final {name}")?;
        }
        for rule in &self.rules {
            writeln!(f, "rule {} {} {}", rule.from, rule.symbol, rule.to)?;
        }
        Ok(())
    }
}

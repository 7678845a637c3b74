//! Natural-language request to SQL statement synthesis.
//!
//! A [`SynonymLexicon`] maps trigger phrases onto action, column and
//! table symbols. An incoming request is normalized in two passes:
//! literal values are extracted first (quoted spans, capitalized name
//! runs, values announced by "is"/"equal to"/"to"/"=", and numbers),
//! then the remaining words are matched against trigger phrases longest
//! first (three-word phrases before two, two before one) with plural
//! folding. Leftover words are dropped when they are stopwords and
//! reported as unresolved otherwise.
//!
//! The matched symbols are screened by a jumping-automaton gate that
//! accepts exactly one action, any number of column symbols and at most
//! one table symbol, in any order. Accepted requests are assembled into
//! a statement: each literal pairs with the nearest preceding unpaired
//! column, the last pair becomes the condition, and the table is either
//! named explicitly or inferred as the only table containing every
//! referenced column.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::assets;
use crate::ast::{ColumnDef, CompareOp, CmpCond, DataType, Literal, Projection, SqlStatement};
use crate::jfa::{JfaMachine, JfaRule, JfaSymbol, SymbolCategory};
use crate::recognizer::{self, Recognition};
use crate::storage::Schema;

/// SQL action a request resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionVerb {
    Select,
    Insert,
    Update,
    Delete,
    Create,
}

impl ActionVerb {
    fn parse(word: &str) -> Option<Self> {
        match word.to_ascii_uppercase().as_str() {
            "SELECT" => Some(Self::Select),
            "INSERT" => Some(Self::Insert),
            "UPDATE" => Some(Self::Update),
            "DELETE" => Some(Self::Delete),
            "CREATE" => Some(Self::Create),
            _ => None,
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Self::Select => "SELECT",
            Self::Insert => "INSERT",
            Self::Update => "UPDATE",
            Self::Delete => "DELETE",
            Self::Create => "CREATE",
        }
    }
}

impl fmt::Display for ActionVerb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Error raised while reading a lexicon file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("lexicon line {line}: symbol {symbol} is declared twice")]
    DuplicateSymbol { line: usize, symbol: String },
    #[error("lexicon line {line}: phrase {phrase:?} is already a trigger")]
    DuplicatePhrase { line: usize, phrase: String },
    #[error("lexicon line {line}: symbol {symbol} does not belong in this section")]
    WrongCategory { line: usize, symbol: String },
    #[error("lexicon line {line}: unknown action keyword {verb:?}")]
    UnknownVerb { line: usize, verb: String },
}

/// Why a request could not be turned into a statement.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SynthesisError {
    /// No table was named and none could be inferred from the columns.
    #[error("no table could be determined from the request")]
    MissingTable,
    /// No action trigger (select, delete, ...) appeared in the request.
    #[error("no action word was recognized in the request")]
    MissingAction,
    /// The referenced column exists in several tables and no table was
    /// named to settle which one is meant.
    #[error("the column {column} appears in more than one table: {}", tables.join(", "))]
    AmbiguousColumn { column: String, tables: Vec<String> },
    /// The request shape was rejected, either by the symbol gate or
    /// because a required part (condition, values) is missing.
    #[error("request rejected: {0}")]
    Rejected(String),
}

#[derive(Debug, Clone)]
struct ActionEntry {
    symbol: JfaSymbol,
    verb: ActionVerb,
}

#[derive(Debug, Clone)]
struct NameEntry {
    symbol: JfaSymbol,
    canonical: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TriggerTarget {
    Action(usize),
    Column(usize),
    Table(usize),
}

/// One semantic event in a request, in text order.
#[derive(Debug, Clone, PartialEq)]
enum Event {
    Action(ActionVerb),
    Column(String),
    AllColumns,
    Table(String),
    Literal(Literal),
}

/// A normalized request: the content tokens that survived filtering,
/// the symbols they matched, and the words that matched nothing.
///
/// Every content token is covered exactly once: it is either a matched
/// trigger phrase (one symbol), an extracted literal, or an unresolved
/// word.
#[derive(Debug, Clone)]
pub struct NlRequest {
    /// The request as received.
    pub raw: String,
    /// Trigger phrases, literals and unresolved words, in text order.
    pub content_tokens: Vec<String>,
    /// Symbols for the matched trigger phrases, in text order.
    pub symbols: Vec<JfaSymbol>,
    /// Words that are neither triggers, literals nor stopwords.
    pub unresolved: Vec<String>,
    events: Vec<Event>,
}

impl NlRequest {
    /// Literal values extracted from the request, in text order.
    pub fn literals(&self) -> Vec<&Literal> {
        self.events
            .iter()
            .filter_map(|event| match event {
                Event::Literal(value) => Some(value),
                _ => None,
            })
            .collect()
    }
}

/// Trigger-phrase table mapping request words onto symbols.
#[derive(Debug, Clone)]
pub struct SynonymLexicon {
    actions: Vec<ActionEntry>,
    columns: Vec<NameEntry>,
    tables: Vec<NameEntry>,
    triggers: HashMap<String, TriggerTarget>,
    stopwords: BTreeSet<String>,
    max_phrase_words: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Actions,
    Columns,
    Tables,
}

impl SynonymLexicon {
    /// Parses a sectioned lexicon file. Stopwords start empty; chain
    /// [`SynonymLexicon::with_stopwords`] to add them.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lexicon = SynonymLexicon {
            actions: Vec::new(),
            columns: Vec::new(),
            tables: Vec::new(),
            triggers: HashMap::new(),
            stopwords: BTreeSet::new(),
            max_phrase_words: 1,
        };
        let mut section = None;
        let mut seen_symbols = BTreeSet::new();
        for (index, raw_line) in text.lines().enumerate() {
            let line = index + 1;
            let trimmed = raw_line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match trimmed {
                "[actions]" => {
                    section = Some(Section::Actions);
                    continue;
                }
                "[columns]" => {
                    section = Some(Section::Columns);
                    continue;
                }
                "[tables]" => {
                    section = Some(Section::Tables);
                    continue;
                }
                _ => {}
            }
            if trimmed.starts_with('[') {
                return Err(LexiconError::Malformed {
                    line,
                    reason: format!("unknown section {trimmed}"),
                });
            }
            let Some(section) = section else {
                return Err(LexiconError::Malformed {
                    line,
                    reason: "entry appears before any [section] header".into(),
                });
            };
            lexicon.add_entry(section, line, trimmed, &mut seen_symbols)?;
        }
        Ok(lexicon)
    }

    /// Adds stopwords, one per line, `#` comments allowed.
    pub fn with_stopwords(mut self, text: &str) -> Self {
        for line in text.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            self.stopwords.insert(word.to_ascii_lowercase());
        }
        self
    }

    /// The lexicon for the bundled school database.
    pub fn school() -> Self {
        Self::parse(assets::SCHOOL_LEXICON)
            .expect("embedded school lexicon is well-formed")
            .with_stopwords(assets::STOPWORDS)
    }

    /// The lexicon for the bundled XNorthwind trading database.
    pub fn xnorthwind() -> Self {
        Self::parse(assets::XNORTHWIND_LEXICON)
            .expect("embedded xnorthwind lexicon is well-formed")
            .with_stopwords(assets::STOPWORDS)
    }

    fn add_entry(
        &mut self,
        section: Section,
        line: usize,
        entry: &str,
        seen_symbols: &mut BTreeSet<String>,
    ) -> Result<(), LexiconError> {
        let (head, phrase_list) = entry.split_once('=').ok_or_else(|| LexiconError::Malformed {
            line,
            reason: "expected `<symbol> <canonical> = <phrases>`".into(),
        })?;
        let mut head_words = head.split_whitespace();
        let symbol_text = head_words.next().ok_or_else(|| LexiconError::Malformed {
            line,
            reason: "missing symbol".into(),
        })?;
        let canonical = head_words.next().ok_or_else(|| LexiconError::Malformed {
            line,
            reason: "missing canonical name".into(),
        })?;
        if head_words.next().is_some() {
            return Err(LexiconError::Malformed {
                line,
                reason: "canonical name must be a single word".into(),
            });
        }
        let symbol = JfaSymbol::from_str(symbol_text).map_err(|_| LexiconError::Malformed {
            line,
            reason: format!("bad symbol name {symbol_text:?}"),
        })?;
        let expected = match section {
            Section::Actions => SymbolCategory::Action,
            Section::Columns => SymbolCategory::Column,
            Section::Tables => SymbolCategory::Table,
        };
        if symbol.category != expected {
            return Err(LexiconError::WrongCategory {
                line,
                symbol: symbol.to_string(),
            });
        }
        if !seen_symbols.insert(symbol.to_string()) {
            return Err(LexiconError::DuplicateSymbol {
                line,
                symbol: symbol.to_string(),
            });
        }
        let target_index = match section {
            Section::Actions => {
                let verb =
                    ActionVerb::parse(canonical).ok_or_else(|| LexiconError::UnknownVerb {
                        line,
                        verb: canonical.to_string(),
                    })?;
                self.actions.push(ActionEntry { symbol, verb });
                TriggerTarget::Action(self.actions.len() - 1)
            }
            Section::Columns => {
                self.columns.push(NameEntry {
                    symbol,
                    canonical: canonical.to_string(),
                });
                TriggerTarget::Column(self.columns.len() - 1)
            }
            Section::Tables => {
                self.tables.push(NameEntry {
                    symbol,
                    canonical: canonical.to_string(),
                });
                TriggerTarget::Table(self.tables.len() - 1)
            }
        };
        for phrase in phrase_list.split(',') {
            let phrase = phrase.trim();
            if phrase.is_empty() {
                return Err(LexiconError::Malformed {
                    line,
                    reason: "empty phrase in list".into(),
                });
            }
            let folded = fold_phrase(phrase);
            let words = folded.split(' ').count();
            self.max_phrase_words = self.max_phrase_words.max(words);
            if self.triggers.insert(folded, target_index).is_some() {
                return Err(LexiconError::DuplicatePhrase {
                    line,
                    phrase: phrase.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Builds the symbol gate: one action, any number of columns, at
    /// most one table, in any order.
    pub fn gate_machine(&self) -> JfaMachine {
        let mut rules = Vec::new();
        for entry in &self.actions {
            rules.push(JfaRule {
                from: "q0".into(),
                symbol: entry.symbol,
                to: "qa".into(),
            });
        }
        for entry in &self.columns {
            rules.push(JfaRule {
                from: "qa".into(),
                symbol: entry.symbol,
                to: "qa".into(),
            });
        }
        for entry in &self.tables {
            rules.push(JfaRule {
                from: "qa".into(),
                symbol: entry.symbol,
                to: "qf".into(),
            });
        }
        let symbols: Vec<JfaSymbol> = self
            .actions
            .iter()
            .map(|entry| entry.symbol)
            .chain(self.columns.iter().map(|entry| entry.symbol))
            .chain(self.tables.iter().map(|entry| entry.symbol))
            .collect();
        JfaMachine::new(
            vec!["q0".into(), "qa".into(), "qf".into()],
            symbols,
            rules,
            "q0",
            &["qa".into(), "qf".into()],
        )
        .expect("gate machine construction is well-formed")
    }

    fn trigger_at(&self, folded: &[String], start: usize) -> Option<(usize, TriggerTarget)> {
        let longest = self.max_phrase_words.min(folded.len() - start);
        for len in (1..=longest).rev() {
            let candidate = folded[start..start + len].join(" ");
            if let Some(&target) = self.triggers.get(&candidate) {
                return Some((len, target));
            }
        }
        None
    }

    fn is_trigger_anywhere(&self, folded: &[String]) -> bool {
        (0..folded.len()).any(|start| self.trigger_at(folded, start).is_some())
    }

    /// Normalizes a request: extracts literals, matches triggers, drops
    /// stopwords, and reports everything else unresolved.
    pub fn normalize(&self, raw: &str) -> NlRequest {
        let words = split_words(raw);
        let mut kind: Vec<Option<Literal>> = vec![None; words.len()];
        let mut joined_until: Vec<usize> = (0..words.len()).map(|i| i + 1).collect();

        // Pass 1: quoted spans are literals verbatim.
        for (i, word) in words.iter().enumerate() {
            if word.quoted {
                kind[i] = Some(Literal::Str(word.cased.clone()));
            }
        }

        // Pass 2: capitalized runs of two or more words, away from the
        // start of the sentence, that contain no trigger phrase.
        let mut i = 1;
        while i < words.len() {
            if kind[i].is_some() || !starts_uppercase(&words[i].cased) {
                i += 1;
                continue;
            }
            let mut j = i;
            while j < words.len() && kind[j].is_none() && starts_uppercase(&words[j].cased) {
                j += 1;
            }
            if j - i >= 2 {
                let folded: Vec<String> =
                    words[i..j].iter().map(|w| fold_word(&w.lower)).collect();
                if !self.is_trigger_anywhere(&folded) {
                    let text = words[i..j]
                        .iter()
                        .map(|w| w.cased.as_str())
                        .collect::<Vec<_>>()
                        .join(" ");
                    kind[i] = Some(Literal::Str(text));
                    joined_until[i] = j;
                    for masked in i + 1..j {
                        joined_until[masked] = masked; // zero-width: consumed by the run
                    }
                }
            }
            i = j.max(i + 1);
        }

        // Pass 3: the word after a value marker ("is", "equals",
        // "is equal to", "to", "=") is a literal unless it is itself a
        // trigger or a stopword.
        let mut i = 0;
        while i < words.len() {
            let marker_len = marker_length(&words, i);
            if marker_len == 0 {
                i += 1;
                continue;
            }
            let target = i + marker_len;
            if target < words.len() && kind[target].is_none() && joined_until[target] > target {
                let lower = &words[target].lower;
                let folded = [fold_word(lower)];
                let is_trigger = self.trigger_at(&folded, 0).is_some();
                if !is_trigger && !self.stopwords.contains(lower) {
                    kind[target] = Some(parse_literal(&words[target].cased));
                }
            }
            i += marker_len;
        }

        // Pass 4: numbers are literals wherever they stand.
        for (i, word) in words.iter().enumerate() {
            if kind[i].is_none() && joined_until[i] > i && looks_numeric(&word.cased) {
                kind[i] = Some(parse_literal(&word.cased));
            }
        }

        // Pass 5: trigger matching over what is left, longest first,
        // then stopword filtering.
        let mut request = NlRequest {
            raw: raw.to_string(),
            content_tokens: Vec::new(),
            symbols: Vec::new(),
            unresolved: Vec::new(),
            events: Vec::new(),
        };
        let folded: Vec<String> = words.iter().map(|w| fold_word(&w.lower)).collect();
        let mut i = 0;
        while i < words.len() {
            if joined_until[i] == i {
                i += 1; // interior of a capitalized run, already consumed
                continue;
            }
            if let Some(literal) = kind[i].take() {
                request.content_tokens.push(literal.bare());
                request.events.push(Event::Literal(literal));
                i = joined_until[i];
                continue;
            }
            // A trigger match must not run into a literal further right.
            let clear_until = (i..words.len())
                .take_while(|&k| kind[k].is_none() && joined_until[k] == k + 1)
                .count();
            let window = &folded[i..i + clear_until];
            if let Some((len, target)) = self.trigger_at(window, 0) {
                let phrase = words[i..i + len]
                    .iter()
                    .map(|w| w.lower.as_str())
                    .collect::<Vec<_>>()
                    .join(" ");
                request.content_tokens.push(phrase);
                let (symbol, event) = match target {
                    TriggerTarget::Action(index) => {
                        let entry = &self.actions[index];
                        (entry.symbol, Event::Action(entry.verb))
                    }
                    TriggerTarget::Column(index) => {
                        let entry = &self.columns[index];
                        let event = if entry.canonical == "*" {
                            Event::AllColumns
                        } else {
                            Event::Column(entry.canonical.clone())
                        };
                        (entry.symbol, event)
                    }
                    TriggerTarget::Table(index) => {
                        let entry = &self.tables[index];
                        (entry.symbol, Event::Table(entry.canonical.clone()))
                    }
                };
                request.symbols.push(symbol);
                request.events.push(event);
                i += len;
                continue;
            }
            if !self.stopwords.contains(&words[i].lower) {
                request.content_tokens.push(words[i].lower.clone());
                request.unresolved.push(words[i].lower.clone());
            }
            i += 1;
        }
        request
    }

    /// Synthesizes a statement from a raw request against a schema.
    pub fn synthesize(&self, raw: &str, schema: &Schema) -> Result<SqlStatement, SynthesisError> {
        let request = self.normalize(raw);
        self.synthesize_request(&request, schema)
    }

    /// Synthesizes a statement from an already normalized request.
    pub fn synthesize_request(
        &self,
        request: &NlRequest,
        schema: &Schema,
    ) -> Result<SqlStatement, SynthesisError> {
        let verb = request
            .events
            .iter()
            .find_map(|event| match event {
                Event::Action(verb) => Some(*verb),
                _ => None,
            })
            .ok_or(SynthesisError::MissingAction)?;
        let gate = self.gate_machine();
        let accepted = gate
            .accepts(&request.symbols)
            .expect("request symbols come from the lexicon alphabet");
        if !accepted {
            return Err(SynthesisError::Rejected(
                "the keywords do not form one action over at most one table".into(),
            ));
        }
        if verb == ActionVerb::Create {
            return self.assemble_create(request);
        }
        let has_column_words = request
            .events
            .iter()
            .any(|event| matches!(event, Event::Column(_) | Event::AllColumns));
        let has_table_word = request
            .events
            .iter()
            .any(|event| matches!(event, Event::Table(_)));
        if !has_column_words && !has_table_word {
            return Err(SynthesisError::Rejected(
                "the request names no table or column keywords".into(),
            ));
        }
        let table = self.resolve_table(request, schema)?;
        let pairs = pair_literals(&request.events);
        match verb {
            ActionVerb::Select => assemble_select(request, table, &pairs),
            ActionVerb::Delete => assemble_delete(table, &pairs),
            ActionVerb::Update => assemble_update(table, &pairs),
            ActionVerb::Insert => assemble_insert(request, table, &pairs),
            ActionVerb::Create => unreachable!("create handled above"),
        }
    }

    fn resolve_table(
        &self,
        request: &NlRequest,
        schema: &Schema,
    ) -> Result<String, SynthesisError> {
        if let Some(name) = request.events.iter().find_map(|event| match event {
            Event::Table(name) => Some(name.clone()),
            _ => None,
        }) {
            return Ok(name);
        }
        let columns: Vec<&String> = request
            .events
            .iter()
            .filter_map(|event| match event {
                Event::Column(name) => Some(name),
                _ => None,
            })
            .collect();
        if columns.is_empty() {
            return Err(SynthesisError::MissingTable);
        }
        let mut candidates: Option<Vec<String>> = None;
        for column in &columns {
            let holding: Vec<String> = schema
                .tables_with_column(column)
                .into_iter()
                .map(str::to_string)
                .collect();
            candidates = Some(match candidates {
                None => holding,
                Some(previous) => previous
                    .into_iter()
                    .filter(|name| holding.contains(name))
                    .collect(),
            });
        }
        let candidates = candidates.unwrap_or_default();
        match candidates.len() {
            0 => Err(SynthesisError::MissingTable),
            1 => Ok(candidates.into_iter().next().expect("one candidate")),
            _ => Err(SynthesisError::AmbiguousColumn {
                column: columns[0].clone(),
                tables: candidates,
            }),
        }
    }

    fn assemble_create(&self, request: &NlRequest) -> Result<SqlStatement, SynthesisError> {
        let tokens = clean_cased_tokens(&request.raw);
        let lower: Vec<String> = tokens.iter().map(|t| t.to_ascii_lowercase()).collect();
        let table = lower
            .iter()
            .position(|word| word == "table")
            .and_then(|at| at.checked_sub(1))
            .map(|at| tokens[at].clone())
            .or_else(|| {
                request.events.iter().find_map(|event| match event {
                    Event::Table(name) => Some(name.clone()),
                    _ => None,
                })
            })
            .ok_or(SynthesisError::MissingTable)?;
        let as_positions: Vec<usize> = lower
            .iter()
            .enumerate()
            .filter_map(|(i, word)| (word == "as" && i > 0).then_some(i))
            .collect();
        if as_positions.is_empty() {
            return Err(SynthesisError::Rejected(
                "a create request must describe each column as a type".into(),
            ));
        }
        let mut columns = Vec::new();
        for (order, &at) in as_positions.iter().enumerate() {
            let name = tokens[at - 1].clone();
            let end = as_positions
                .get(order + 1)
                .map(|&next| next - 1)
                .unwrap_or(tokens.len());
            let description = &lower[at + 1..end];
            let datatype = parse_type_phrase(description).ok_or_else(|| {
                SynthesisError::Rejected(format!(
                    "could not read a column type for {name} from the request"
                ))
            })?;
            columns.push(ColumnDef { name, datatype });
        }
        Ok(SqlStatement::CreateTable {
            name: table,
            columns,
            if_not_exists: false,
        })
    }
}

/// A column/value pairing recovered from event order.
#[derive(Debug, Clone, PartialEq)]
struct Pairing {
    column: String,
    value: Literal,
}

fn pair_literals(events: &[Event]) -> Vec<Pairing> {
    let mut open: Vec<(usize, &String)> = Vec::new();
    let mut pairs: Vec<(usize, Pairing)> = Vec::new();
    for (at, event) in events.iter().enumerate() {
        match event {
            Event::Column(name) => open.push((at, name)),
            Event::Literal(value) => {
                if let Some((column_at, column)) = open.pop() {
                    pairs.push((
                        column_at,
                        Pairing {
                            column: column.clone(),
                            value: value.clone(),
                        },
                    ));
                }
            }
            _ => {}
        }
    }
    pairs.sort_by_key(|(column_at, _)| *column_at);
    pairs.into_iter().map(|(_, pairing)| pairing).collect()
}

fn assemble_select(
    request: &NlRequest,
    table: String,
    pairs: &[Pairing],
) -> Result<SqlStatement, SynthesisError> {
    let condition = pairs.last();
    let mut projection_columns = Vec::new();
    for event in &request.events {
        if let Event::Column(name) = event {
            let is_condition = condition.is_some_and(|pairing| &pairing.column == name);
            if !is_condition && !projection_columns.contains(name) {
                projection_columns.push(name.clone());
            }
        }
    }
    let projection = if projection_columns.is_empty() {
        Projection::All
    } else {
        Projection::Columns(projection_columns)
    };
    let tail = condition.map(|pairing| {
        crate::ast::SelectTail::Where(crate::ast::Filter::Single(crate::ast::Condition::Cmp(
            CmpCond {
                column: pairing.column.clone(),
                op: CompareOp::Eq,
                value: pairing.value.clone(),
            },
        )))
    });
    Ok(SqlStatement::Select {
        projection,
        table,
        tail,
    })
}

fn assemble_delete(table: String, pairs: &[Pairing]) -> Result<SqlStatement, SynthesisError> {
    let pairing = pairs.last().ok_or_else(|| {
        SynthesisError::Rejected("a delete request needs a column and a value to match".into())
    })?;
    Ok(SqlStatement::Delete {
        table,
        condition: CmpCond {
            column: pairing.column.clone(),
            op: CompareOp::Eq,
            value: pairing.value.clone(),
        },
    })
}

fn assemble_update(table: String, pairs: &[Pairing]) -> Result<SqlStatement, SynthesisError> {
    if pairs.len() < 2 {
        return Err(SynthesisError::Rejected(
            "an update request needs a value to set and a condition to match".into(),
        ));
    }
    let set = &pairs[0];
    let condition = pairs.last().expect("at least two pairs");
    Ok(SqlStatement::Update {
        table,
        set_column: set.column.clone(),
        set_value: set.value.clone(),
        condition: CmpCond {
            column: condition.column.clone(),
            op: CompareOp::Eq,
            value: condition.value.clone(),
        },
    })
}

fn assemble_insert(
    request: &NlRequest,
    table: String,
    pairs: &[Pairing],
) -> Result<SqlStatement, SynthesisError> {
    if pairs.is_empty() {
        return Err(SynthesisError::Rejected(
            "an insert request needs column and value pairs".into(),
        ));
    }
    let column_count = request
        .events
        .iter()
        .filter(|event| matches!(event, Event::Column(_)))
        .count();
    if column_count != pairs.len() {
        return Err(SynthesisError::Rejected(
            "an insert request must pair every column with a value".into(),
        ));
    }
    let columns: Vec<String> = pairs.iter().map(|pairing| pairing.column.clone()).collect();
    let values: Vec<Literal> = pairs.iter().map(|pairing| pairing.value.clone()).collect();
    SqlStatement::insert(table, columns, values)
        .map_err(|err| SynthesisError::Rejected(err.to_string()))
}

fn parse_type_phrase(words: &[String]) -> Option<DataType> {
    let first_number = words
        .iter()
        .find(|word| word.chars().all(|c| c.is_ascii_digit()) && !word.is_empty())
        .and_then(|word| word.parse::<u32>().ok());
    for word in words {
        match word.as_str() {
            "integer" | "int" | "number" | "numeric" => return Some(DataType::Int),
            "alphanumeric" | "varchar" | "text" | "textual" => {
                return Some(DataType::Varchar(first_number))
            }
            "boolean" | "bool" => return Some(DataType::Bool),
            "decimal" | "float" | "fractional" => return Some(DataType::Float),
            _ => {}
        }
    }
    None
}

/// One word of the raw request.
#[derive(Debug, Clone)]
struct Word {
    cased: String,
    lower: String,
    quoted: bool,
}

fn split_words(raw: &str) -> Vec<Word> {
    let mut words = Vec::new();
    let mut chars = raw.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '\'' || c == '"' {
            let quote = c;
            chars.next();
            let mut inner = String::new();
            for inner_char in chars.by_ref() {
                if inner_char == quote {
                    break;
                }
                inner.push(inner_char);
            }
            if !inner.is_empty() {
                words.push(Word {
                    lower: inner.to_ascii_lowercase(),
                    cased: inner,
                    quoted: true,
                });
            }
            continue;
        }
        let mut token = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || c == '\'' || c == '"' {
                break;
            }
            token.push(c);
            chars.next();
        }
        let trimmed = token.trim_matches(|c: char| ".,!?;:()".contains(c));
        if !trimmed.is_empty() {
            words.push(Word {
                cased: trimmed.to_string(),
                lower: trimmed.to_ascii_lowercase(),
                quoted: false,
            });
        }
    }
    words
}

fn starts_uppercase(word: &str) -> bool {
    word.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

fn looks_numeric(word: &str) -> bool {
    !word.is_empty()
        && word.chars().all(|c| c.is_ascii_digit() || c == '.')
        && word.chars().any(|c| c.is_ascii_digit())
}

fn parse_literal(text: &str) -> Literal {
    if looks_numeric(text) {
        if text.contains('.') {
            if let Ok(value) = text.parse::<f64>() {
                return Literal::Float(value);
            }
        } else if let Ok(value) = text.parse::<i64>() {
            return Literal::Int(value);
        }
    }
    Literal::Str(text.to_string())
}

/// Length of the value marker starting at `at`, or zero.
fn marker_length(words: &[Word], at: usize) -> usize {
    let word = |offset: usize| words.get(at + offset).map(|w| w.lower.as_str());
    match word(0) {
        Some("is") => match (word(1), word(2)) {
            (Some("equal"), Some("to")) => 3,
            (Some("equal"), _) | (Some("equals"), _) => 2,
            _ => 1,
        },
        Some("equals") | Some("equal") => {
            if word(1) == Some("to") {
                2
            } else {
                1
            }
        }
        Some("to") | Some("=") => 1,
        _ => 0,
    }
}

/// Lowercases and singularizes one word for trigger matching.
pub fn fold_word(word: &str) -> String {
    let lower = word.to_ascii_lowercase();
    if let Some(stem) = lower.strip_suffix("ies") {
        if lower.len() > 4 {
            return format!("{stem}y");
        }
    }
    if let Some(stem) = lower.strip_suffix("sses") {
        return format!("{stem}ss");
    }
    if let Some(stem) = lower.strip_suffix("es") {
        if stem.ends_with('x') || stem.ends_with('z') || stem.ends_with("ch") || stem.ends_with("sh")
        {
            return stem.to_string();
        }
    }
    if lower.ends_with("ss") {
        return lower;
    }
    if lower.len() > 2 {
        if let Some(stem) = lower.strip_suffix('s') {
            return stem.to_string();
        }
    }
    lower
}

fn fold_phrase(phrase: &str) -> String {
    phrase
        .split_whitespace()
        .map(fold_word)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Folds an identifier for loose equality: case, underscores, spaces
/// and trailing plurals are ignored.
pub fn fold_identifier(name: &str) -> String {
    let joined: String = name
        .chars()
        .filter(|c| *c != '_' && *c != ' ')
        .collect::<String>()
        .to_ascii_lowercase();
    fold_word(&joined)
}

fn clean_cased_tokens(raw: &str) -> Vec<String> {
    split_words(raw).into_iter().map(|word| word.cased).collect()
}

/// Loose statement equality: identifiers fold per [`fold_identifier`],
/// string literals compare case-insensitively.
pub fn statements_equivalent(a: &SqlStatement, b: &SqlStatement) -> bool {
    folded_statement(a) == folded_statement(b)
}

fn folded_literal(value: &Literal) -> Literal {
    match value {
        Literal::Str(text) => Literal::Str(text.to_ascii_lowercase()),
        other => other.clone(),
    }
}

fn folded_cond(cond: &CmpCond) -> CmpCond {
    CmpCond {
        column: fold_identifier(&cond.column),
        op: cond.op,
        value: folded_literal(&cond.value),
    }
}

fn folded_statement(stmt: &SqlStatement) -> SqlStatement {
    use crate::ast::{Condition, Filter, SelectTail};
    let fold_names = |names: &[String]| names.iter().map(|n| fold_identifier(n)).collect();
    match stmt {
        SqlStatement::CreateDatabase {
            name,
            if_not_exists,
        } => SqlStatement::CreateDatabase {
            name: fold_identifier(name),
            if_not_exists: *if_not_exists,
        },
        SqlStatement::CreateTable {
            name,
            columns,
            if_not_exists,
        } => SqlStatement::CreateTable {
            name: fold_identifier(name),
            columns: columns
                .iter()
                .map(|def| ColumnDef {
                    name: fold_identifier(&def.name),
                    datatype: def.datatype.clone(),
                })
                .collect(),
            if_not_exists: *if_not_exists,
        },
        SqlStatement::DropDatabase { names, if_exists } => SqlStatement::DropDatabase {
            names: fold_names(names),
            if_exists: *if_exists,
        },
        SqlStatement::DropTable { names, if_exists } => SqlStatement::DropTable {
            names: fold_names(names),
            if_exists: *if_exists,
        },
        SqlStatement::AlterColumn {
            table,
            action,
            column,
            datatype,
        } => SqlStatement::AlterColumn {
            table: fold_identifier(table),
            action: *action,
            column: fold_identifier(column),
            datatype: datatype.clone(),
        },
        SqlStatement::RenameTable { from, to } => SqlStatement::RenameTable {
            from: fold_identifier(from),
            to: fold_identifier(to),
        },
        SqlStatement::Truncate { table } => SqlStatement::Truncate {
            table: fold_identifier(table),
        },
        SqlStatement::Insert {
            table,
            columns,
            values,
        } => SqlStatement::Insert {
            table: fold_identifier(table),
            columns: fold_names(columns),
            values: values.iter().map(folded_literal).collect(),
        },
        SqlStatement::Update {
            table,
            set_column,
            set_value,
            condition,
        } => SqlStatement::Update {
            table: fold_identifier(table),
            set_column: fold_identifier(set_column),
            set_value: folded_literal(set_value),
            condition: folded_cond(condition),
        },
        SqlStatement::Delete { table, condition } => SqlStatement::Delete {
            table: fold_identifier(table),
            condition: folded_cond(condition),
        },
        SqlStatement::Select {
            projection,
            table,
            tail,
        } => {
            let projection = match projection {
                Projection::All => Projection::All,
                Projection::Columns(names) => Projection::Columns(fold_names(names)),
                Projection::Distinct(names) => Projection::Distinct(fold_names(names)),
                Projection::Count(name) => Projection::Count(fold_identifier(name)),
            };
            let tail = tail.as_ref().map(|tail| match tail {
                SelectTail::Where(filter) => SelectTail::Where(match filter {
                    Filter::Single(condition) => Filter::Single(match condition {
                        Condition::Cmp(cond) => Condition::Cmp(folded_cond(cond)),
                        Condition::In { column, values } => Condition::In {
                            column: fold_identifier(column),
                            values: values.iter().map(folded_literal).collect(),
                        },
                        Condition::Between { column, lo, hi } => Condition::Between {
                            column: fold_identifier(column),
                            lo: folded_literal(lo),
                            hi: folded_literal(hi),
                        },
                        Condition::Like { column, pattern } => Condition::Like {
                            column: fold_identifier(column),
                            pattern: pattern.clone(),
                        },
                    }),
                    Filter::Pair(first, conj, second) => {
                        Filter::Pair(folded_cond(first), *conj, folded_cond(second))
                    }
                    Filter::Negated(cond) => Filter::Negated(folded_cond(cond)),
                }),
                SelectTail::OrderBy { column, direction } => SelectTail::OrderBy {
                    column: fold_identifier(column),
                    direction: *direction,
                },
                SelectTail::GroupBy { column } => SelectTail::GroupBy {
                    column: fold_identifier(column),
                },
                SelectTail::Having {
                    group_column,
                    count_column,
                    op,
                    threshold,
                } => SelectTail::Having {
                    group_column: fold_identifier(group_column),
                    count_column: fold_identifier(count_column),
                    op: *op,
                    threshold: *threshold,
                },
            });
            SqlStatement::Select {
                projection,
                table: fold_identifier(table),
                tail,
            }
        }
    }
}

/// Outcome of checking one request/query pair.
#[derive(Debug, Clone, PartialEq)]
pub enum PairOutcome {
    /// The synthesized statement matches the expected query.
    Matched { sql: String },
    /// A statement was synthesized but differs from the expected query.
    Mismatched { synthesized: String },
    /// The request could not be synthesized.
    Rejected { error: SynthesisError },
    /// The expected query itself does not parse as a simple statement.
    GoldUnparsed { reason: String },
}

/// Evaluation record for one request/query pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairEvaluation {
    pub item: u32,
    pub outcome: PairOutcome,
}

/// Synthesizes every request and compares the result against the paired
/// query, using loose identifier equality.
pub fn evaluate_pairs(
    lexicon: &SynonymLexicon,
    schema: &Schema,
    pairs: &[crate::corpus::RequestPair],
) -> Vec<PairEvaluation> {
    pairs
        .iter()
        .map(|pair| {
            let outcome = match recognizer::classify(&pair.sql) {
                Recognition::Statement(expected) => match lexicon.synthesize(&pair.request, schema)
                {
                    Ok(synthesized) => {
                        if statements_equivalent(&synthesized, &expected) {
                            PairOutcome::Matched {
                                sql: synthesized.to_string(),
                            }
                        } else {
                            PairOutcome::Mismatched {
                                synthesized: synthesized.to_string(),
                            }
                        }
                    }
                    Err(error) => PairOutcome::Rejected { error },
                },
                Recognition::NestedDetected => PairOutcome::GoldUnparsed {
                    reason: "expected query is nested".into(),
                },
                Recognition::NotRecognized { reason } => PairOutcome::GoldUnparsed { reason },
            };
            PairEvaluation {
                item: pair.item,
                outcome,
            }
        })
        .collect()
}

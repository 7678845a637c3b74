//! Corpus loading: statement splitting for SQL scripts, request/query
//! pair decoding, and accuracy arithmetic for evaluation reports.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assets;

/// Error raised while decoding a request/query pair corpus.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("pair corpus is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("pair corpus must be a JSON array")]
    NotAnArray,
    #[error("pair {index}: {reason}")]
    BadPair { index: usize, reason: String },
}

/// Result of splitting a script into statements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplitOutcome {
    /// Complete statements, each ending in its semicolon.
    pub statements: Vec<String>,
    /// Trailing text after the last semicolon, if any.
    pub dangling: Option<String>,
}

/// Splits a script on semicolons that sit outside quotes and
/// parentheses. Full-line `--` and `#` comments are dropped, as are
/// empty fragments (doubled semicolons). Whatever follows the final
/// semicolon is reported separately instead of being silently lost.
pub fn split_statements(text: &str) -> SplitOutcome {
    let mut outcome = SplitOutcome::default();
    let without_comments: String = text
        .lines()
        .filter(|line| {
            let trimmed = line.trim_start();
            !trimmed.starts_with("--") && !trimmed.starts_with('#')
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut current = String::new();
    let mut quote: Option<char> = None;
    let mut depth = 0usize;
    for c in without_comments.chars() {
        match quote {
            Some(q) => {
                current.push(c);
                if c == q {
                    quote = None;
                }
            }
            None => match c {
                '\'' | '"' => {
                    quote = Some(c);
                    current.push(c);
                }
                '(' => {
                    depth += 1;
                    current.push(c);
                }
                ')' => {
                    depth = depth.saturating_sub(1);
                    current.push(c);
                }
                ';' if depth == 0 => {
                    current.push(c);
                    let fragment = normalize_fragment(&current);
                    if fragment != ";" {
                        outcome.statements.push(fragment);
                    }
                    current.clear();
                }
                _ => current.push(c),
            },
        }
    }
    let tail = normalize_fragment(&current);
    if !tail.is_empty() {
        outcome.dangling = Some(tail);
    }
    outcome
}

/// Collapses a fragment's internal line breaks and trims it.
fn normalize_fragment(fragment: &str) -> String {
    fragment.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The bundled corpus of statements collected from the web.
pub fn web_queries() -> Vec<String> {
    split_statements(assets::WEB_QUERIES).statements
}

/// One natural-language request paired with its expected query. The
/// serialized field names follow the corpus file as published.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestPair {
    #[serde(rename = "Item")]
    pub item: u32,
    #[serde(rename = "Narrations")]
    pub request: String,
    #[serde(rename = "SQL Queries")]
    pub sql: String,
}

/// Decodes a JSON array of request/query pairs, naming the offending
/// element on failure.
pub fn load_pairs(text: &str) -> Result<Vec<RequestPair>, CorpusError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let items = value.as_array().ok_or(CorpusError::NotAnArray)?;
    items
        .iter()
        .enumerate()
        .map(|(index, element)| {
            serde_json::from_value(element.clone()).map_err(|err| CorpusError::BadPair {
                index: index + 1,
                reason: err.to_string(),
            })
        })
        .collect()
}

/// The bundled request/query pair corpus.
pub fn request_pairs() -> Vec<RequestPair> {
    load_pairs(assets::REQUEST_PAIRS).expect("embedded pair corpus is well-formed")
}

/// Share of matched items, carried exactly: the percentage is computed
/// in integer arithmetic, rounded half-up to two decimals, with the
/// floored whole-number form alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub matched: usize,
    pub total: usize,
    pub percent: f64,
    pub percent_floor: u32,
}

/// Computes the accuracy of `matched` out of `total`.
///
/// # Panics
/// Panics when `total` is zero.
pub fn accuracy_report(matched: usize, total: usize) -> AccuracyReport {
    assert!(total > 0, "accuracy over an empty corpus is undefined");
    assert!(matched <= total, "matched cannot exceed total");
    let scaled = (matched * 10_000 + total / 2) / total;
    AccuracyReport {
        matched,
        total,
        percent: scaled as f64 / 100.0,
        percent_floor: (matched * 100 / total) as u32,
    }
}

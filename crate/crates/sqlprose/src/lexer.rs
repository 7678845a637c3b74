//! Token-level scanner for the simple-SQL surface.
//!
//! The scanner is lossless: every token records its byte offset and exact
//! source lexeme, so the concatenation of lexemes (plus skipped whitespace)
//! reconstructs the input, and joining lexemes with single spaces re-lexes to
//! the same token kinds.

use std::fmt;
use thiserror::Error;

/// The token vocabulary of the simple-SQL dialect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Number,
    FloatNumber,
    QuotedString,
    /// Reserved word, stored in canonical uppercase form.
    Keyword(String),
    Semicolon,
    Comma,
    BracketOpen,
    BracketClose,
    Star,
    /// One of `=`, `>`, `<`, `!=`, `!<`, `!>`, `>=`, `<=`, `<>`.
    ComparisonOp(String),
    /// One of `+`, `-`, `/`, `%` (`*` always lexes as [`TokenKind::Star`]).
    ArithmeticOp(char),
    /// One of AND, OR, ANY, LIKE, NOT, BETWEEN, EXISTS, IN, XOR, IS NULL, UNIQUE.
    LogicalOp(String),
    Period,
    /// Sentinel used by parsers; never produced by [`tokenize`].
    EndOfInput,
}

impl TokenKind {
    /// Human-readable class name for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            TokenKind::Identifier => "identifier",
            TokenKind::Number => "number",
            TokenKind::FloatNumber => "float number",
            TokenKind::QuotedString => "quoted string",
            TokenKind::Keyword(_) => "keyword",
            TokenKind::Semicolon => "semicolon",
            TokenKind::Comma => "comma",
            TokenKind::BracketOpen => "opening bracket",
            TokenKind::BracketClose => "closing bracket",
            TokenKind::Star => "star",
            TokenKind::ComparisonOp(_) => "comparison operator",
            TokenKind::ArithmeticOp(_) => "arithmetic operator",
            TokenKind::LogicalOp(_) => "logical operator",
            TokenKind::Period => "period",
            TokenKind::EndOfInput => "end of input",
        }
    }
}

/// A single scanned token: kind, exact source slice, and byte offset.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub offset: usize,
}

impl Token {
    /// The payload of a quoted string: the lexeme with its quotes stripped.
    /// For every other kind this is the lexeme itself.
    pub fn value(&self) -> &str {
        match self.kind {
            TokenKind::QuotedString => &self.lexeme[1..self.lexeme.len() - 1],
            _ => &self.lexeme,
        }
    }

    /// True when the token is the given keyword (canonical comparison).
    pub fn is_keyword(&self, name: &str) -> bool {
        matches!(&self.kind, TokenKind::Keyword(k) if k == name)
    }

    /// True when the token is the given logical operator.
    pub fn is_logical(&self, name: &str) -> bool {
        matches!(&self.kind, TokenKind::LogicalOp(k) if k == name)
    }
}

/// Reserved words recognized as [`TokenKind::Keyword`] (canonical uppercase).
pub const KEYWORDS: &[&str] = &[
    "ADD", "ALTER", "ASC", "BY", "COLUMN", "COUNT", "CREATE", "DATABASE", "DELETE", "DESC",
    "DISTINCT", "DROP", "FROM", "GROUP", "HAVING", "IF", "INSERT", "INTO", "MODIFY", "ORDER",
    "RENAME", "SELECT", "SET", "TABLE", "TO", "TRUNCATE", "UPDATE", "VALUES", "WHERE",
];

/// Words recognized as [`TokenKind::LogicalOp`] (canonical uppercase).
/// `IS NULL` is fused from two adjacent words into a single token.
pub const LOGICAL_OPS: &[&str] = &[
    "AND", "OR", "ANY", "LIKE", "NOT", "BETWEEN", "EXISTS", "IN", "XOR", "UNIQUE",
];

/// What went wrong while scanning.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("empty string literal")]
    EmptyQuotedString,
    #[error("lone '!' is not an operator")]
    LoneBang,
}

/// Scanner failure at a byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct LexError {
    pub kind: LexErrorKind,
    pub offset: usize,
}

impl LexError {
    fn new(kind: LexErrorKind, offset: usize) -> Self {
        LexError { kind, offset }
    }
}

fn keyword_lookup(word: &str) -> Option<TokenKind> {
    let upper = word.to_ascii_uppercase();
    if KEYWORDS.contains(&upper.as_str()) {
        Some(TokenKind::Keyword(upper))
    } else if LOGICAL_OPS.contains(&upper.as_str()) {
        Some(TokenKind::LogicalOp(upper))
    } else {
        None
    }
}

/// Scan `input` into tokens. The empty string yields an empty vector; no
/// end-of-input sentinel is appended.
pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b';' => {
                tokens.push(Token { kind: TokenKind::Semicolon, lexeme: ";".into(), offset: i });
                i += 1;
            }
            b',' => {
                tokens.push(Token { kind: TokenKind::Comma, lexeme: ",".into(), offset: i });
                i += 1;
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::BracketOpen, lexeme: "(".into(), offset: i });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::BracketClose, lexeme: ")".into(), offset: i });
                i += 1;
            }
            b'*' => {
                tokens.push(Token { kind: TokenKind::Star, lexeme: "*".into(), offset: i });
                i += 1;
            }
            b'+' | b'-' | b'/' | b'%' => {
                tokens.push(Token {
                    kind: TokenKind::ArithmeticOp(b as char),
                    lexeme: (b as char).to_string(),
                    offset: i,
                });
                i += 1;
            }
            b'.' => {
                tokens.push(Token { kind: TokenKind::Period, lexeme: ".".into(), offset: i });
                i += 1;
            }
            b'=' => {
                tokens.push(Token {
                    kind: TokenKind::ComparisonOp("=".into()),
                    lexeme: "=".into(),
                    offset: i,
                });
                i += 1;
            }
            b'>' | b'<' => {
                let start = i;
                let mut op = (b as char).to_string();
                if b == b'<' && i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                    op.push('>');
                    i += 2;
                } else if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    op.push('=');
                    i += 2;
                } else {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::ComparisonOp(op.clone()),
                    lexeme: op,
                    offset: start,
                });
            }
            b'!' => {
                let start = i;
                let next = bytes.get(i + 1).copied();
                match next {
                    Some(c @ (b'=' | b'<' | b'>')) => {
                        let op: String = ['!', c as char].iter().collect();
                        tokens.push(Token {
                            kind: TokenKind::ComparisonOp(op.clone()),
                            lexeme: op,
                            offset: start,
                        });
                        i += 2;
                    }
                    _ => return Err(LexError::new(LexErrorKind::LoneBang, start)),
                }
            }
            b'\'' | b'"' => {
                let quote = b;
                let start = i;
                let mut j = i + 1;
                while j < bytes.len() && bytes[j] != quote {
                    j += 1;
                }
                if j >= bytes.len() {
                    return Err(LexError::new(LexErrorKind::UnterminatedString, start));
                }
                if j == i + 1 {
                    return Err(LexError::new(LexErrorKind::EmptyQuotedString, start));
                }
                tokens.push(Token {
                    kind: TokenKind::QuotedString,
                    lexeme: input[start..=j].to_string(),
                    offset: start,
                });
                i = j + 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // A fractional part makes it a float; a bare trailing period
                // stays a separate Period token.
                let is_float = i + 1 < bytes.len()
                    && bytes[i] == b'.'
                    && bytes[i + 1].is_ascii_digit();
                if is_float {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    tokens.push(Token {
                        kind: TokenKind::FloatNumber,
                        lexeme: input[start..i].to_string(),
                        offset: start,
                    });
                } else {
                    tokens.push(Token {
                        kind: TokenKind::Number,
                        lexeme: input[start..i].to_string(),
                        offset: start,
                    });
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &input[start..i];
                // `IS NULL` is one logical operator spelled as two words.
                if word.eq_ignore_ascii_case("is") {
                    let mut k = i;
                    while k < bytes.len() && (bytes[k] == b' ' || bytes[k] == b'\t') {
                        k += 1;
                    }
                    let mut m = k;
                    while m < bytes.len()
                        && (bytes[m].is_ascii_alphanumeric() || bytes[m] == b'_')
                    {
                        m += 1;
                    }
                    if input[k..m].eq_ignore_ascii_case("null") && m > k {
                        tokens.push(Token {
                            kind: TokenKind::LogicalOp("IS NULL".into()),
                            lexeme: input[start..m].to_string(),
                            offset: start,
                        });
                        i = m;
                        continue;
                    }
                }
                let kind = keyword_lookup(word).unwrap_or(TokenKind::Identifier);
                tokens.push(Token { kind, lexeme: word.to_string(), offset: start });
            }
            _ => {
                // Resynchronize on char boundary for a readable error.
                let ch = input[i..].chars().next().unwrap_or('\u{FFFD}');
                return Err(LexError::new(LexErrorKind::UnexpectedChar(ch), i));
            }
        }
    }
    Ok(tokens)
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.lexeme)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(input: &str) -> Vec<TokenKind> {
        tokenize(input).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn single_identifier() {
        let toks = tokenize("student_record").unwrap();
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::Identifier);
        assert_eq!(toks[0].lexeme, "student_record");
    }

    #[test]
    fn empty_input_yields_no_tokens() {
        assert_eq!(tokenize("").unwrap(), vec![]);
    }

    #[test]
    fn where_clause_token_sequence() {
        let toks = tokenize("WHERE Name = 'Steve';").unwrap();
        let got: Vec<&TokenKind> = toks.iter().map(|t| &t.kind).collect();
        assert_eq!(
            got,
            vec![
                &TokenKind::Keyword("WHERE".into()),
                &TokenKind::Identifier,
                &TokenKind::ComparisonOp("=".into()),
                &TokenKind::QuotedString,
                &TokenKind::Semicolon,
            ]
        );
        assert_eq!(toks[1].lexeme, "Name");
        assert_eq!(toks[3].value(), "Steve");
    }

    #[test]
    fn keyword_over_identifier() {
        for word in ["select", "SELECT", "Select", "sElEcT"] {
            assert_eq!(kinds(word), vec![TokenKind::Keyword("SELECT".into())]);
        }
        // A word that merely contains a keyword is an identifier.
        assert_eq!(kinds("selection"), vec![TokenKind::Identifier]);
    }

    #[test]
    fn logical_words_become_logical_ops() {
        assert_eq!(kinds("and"), vec![TokenKind::LogicalOp("AND".into())]);
        assert_eq!(kinds("NOT"), vec![TokenKind::LogicalOp("NOT".into())]);
        assert_eq!(kinds("between"), vec![TokenKind::LogicalOp("BETWEEN".into())]);
    }

    #[test]
    fn is_null_fuses_into_one_token() {
        let toks = tokenize("WHERE x IS NULL;").unwrap();
        assert_eq!(toks[2].kind, TokenKind::LogicalOp("IS NULL".into()));
        assert_eq!(toks[2].lexeme, "IS NULL");
        // `is` alone is just an identifier.
        assert_eq!(kinds("is"), vec![TokenKind::Identifier]);
    }

    #[test]
    fn comparison_operators_all_nine() {
        for op in ["=", ">", "<", "!=", "!<", "!>", ">=", "<=", "<>"] {
            let toks = tokenize(op).unwrap();
            assert_eq!(toks.len(), 1, "operator {op}");
            assert_eq!(toks[0].kind, TokenKind::ComparisonOp(op.to_string()));
        }
    }

    #[test]
    fn numbers_and_floats() {
        assert_eq!(kinds("42"), vec![TokenKind::Number]);
        assert_eq!(kinds("12.48"), vec![TokenKind::FloatNumber]);
        assert_eq!(kinds("3.14159"), vec![TokenKind::FloatNumber]);
        // Trailing period is not a fraction.
        assert_eq!(kinds("7."), vec![TokenKind::Number, TokenKind::Period]);
    }

    #[test]
    fn star_is_never_arithmetic() {
        assert_eq!(kinds("*"), vec![TokenKind::Star]);
        assert_eq!(
            kinds("a - b"),
            vec![TokenKind::Identifier, TokenKind::ArithmeticOp('-'), TokenKind::Identifier]
        );
    }

    #[test]
    fn empty_quoted_string_is_an_error() {
        let err = tokenize("''").unwrap_err();
        assert_eq!(err.kind, LexErrorKind::EmptyQuotedString);
        assert_eq!(err.offset, 0);
    }

    #[test]
    fn unterminated_string_is_an_error() {
        let err = tokenize("SELECT 'abc").unwrap_err();
        assert_eq!(err.kind, LexErrorKind::UnterminatedString);
        assert_eq!(err.offset, 7);
    }

    #[test]
    fn square_brackets_are_rejected() {
        let err = tokenize("SELECT * FROM [Order];").unwrap_err();
        assert_eq!(err.kind, LexErrorKind::UnexpectedChar('['));
    }

    #[test]
    fn double_quoted_strings_accepted() {
        let toks = tokenize("WHERE city = \"Pretoria\";").unwrap();
        assert_eq!(toks[3].kind, TokenKind::QuotedString);
        assert_eq!(toks[3].value(), "Pretoria");
    }

    #[test]
    fn spans_cover_the_input_losslessly() {
        let input = "SELECT EMP_ID, LAST_NAME FROM EMPLOYEE_TBL WHERE EMP_ID = '333333333';";
        let toks = tokenize(input).unwrap();
        let mut cursor = 0;
        for t in &toks {
            assert!(t.offset >= cursor, "tokens must not overlap");
            assert!(
                input[cursor..t.offset].chars().all(|c| c.is_whitespace()),
                "gap between tokens must be whitespace"
            );
            assert_eq!(&input[t.offset..t.offset + t.lexeme.len()], t.lexeme);
            cursor = t.offset + t.lexeme.len();
        }
        assert!(input[cursor..].chars().all(|c| c.is_whitespace()));
    }

    #[test]
    fn relex_of_space_joined_lexemes_is_idempotent() {
        let inputs = [
            "SELECT * FROM student_information;",
            "INSERT INTO t (a, b) VALUES (1, 'x');",
            "DELETE FROM t WHERE a BETWEEN 1 AND 2;",
            "WHERE x IS NULL;",
            "SELECT a FROM t WHERE b >= 2.5 ORDER BY a DESC;",
        ];
        for input in inputs {
            let first = tokenize(input).unwrap();
            let joined: Vec<String> = first.iter().map(|t| t.lexeme.clone()).collect();
            let second = tokenize(&joined.join(" ")).unwrap();
            let k1: Vec<&TokenKind> = first.iter().map(|t| &t.kind).collect();
            let k2: Vec<&TokenKind> = second.iter().map(|t| &t.kind).collect();
            assert_eq!(k1, k2, "re-lex changed kinds for {input}");
            let l1: Vec<&str> = first.iter().map(|t| t.lexeme.as_str()).collect();
            let l2: Vec<&str> = second.iter().map(|t| t.lexeme.as_str()).collect();
            assert_eq!(l1, l2, "re-lex changed lexemes for {input}");
        }
    }

    #[test]
    fn determinism() {
        let input = "UPDATE Student SET name = 'John' Where ID = 6;";
        assert_eq!(tokenize(input).unwrap(), tokenize(input).unwrap());
    }
}

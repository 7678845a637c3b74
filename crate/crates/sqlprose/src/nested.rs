//! Recursive-descent parser for queries embedding exactly one SELECT
//! subquery: UPDATE/DELETE/INSERT/SELECT outer forms around an inner
//! `SELECT columns FROM table [WHERE column op value]`.
//!
//! The default mode is lenient: the inner WHERE is optional, UPDATE's SET
//! operator must be `=`, and INSERT's column list may be absent. Strict mode
//! follows the grammar productions to the letter: inner WHERE mandatory with
//! a quoted value, SET accepts any comparison operator with a numeric value,
//! and INSERT requires a column list.

use crate::ast::{
    CmpCond, CompareOp, Literal, LogicalOp, NestedOp, NestedQuery, Projection, SelectSub,
};
use crate::lexer::{tokenize, LexError, Token, TokenKind};
use thiserror::Error;

/// Nested-parse failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NestedError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("expected {expected}, found {found} at byte {offset}")]
    Parse { expected: String, found: String, offset: usize },
    #[error("unbalanced parentheses")]
    UnbalancedParens,
}

/// Parser with a strictness toggle.
#[derive(Debug, Clone, Copy, Default)]
pub struct NestedParser {
    strict: bool,
}

impl NestedParser {
    /// Lenient parser (the default).
    pub fn new() -> Self {
        NestedParser { strict: false }
    }

    /// Grammar-literal parser.
    pub fn strict() -> Self {
        NestedParser { strict: true }
    }

    /// Parse one nested statement.
    pub fn parse(&self, sql: &str) -> Result<NestedQuery, NestedError> {
        let tokens = tokenize(sql)?;
        let opens = tokens.iter().filter(|t| t.kind == TokenKind::BracketOpen).count();
        let closes = tokens.iter().filter(|t| t.kind == TokenKind::BracketClose).count();
        if opens != closes {
            return Err(NestedError::UnbalancedParens);
        }
        let mut cursor = Cursor { tokens: &tokens, pos: 0, end_offset: sql.len(), strict: self.strict };
        let query = cursor.nested_query()?;
        cursor.expect_semicolon()?;
        cursor.expect_end()?;
        Ok(query)
    }
}

/// Parse with the default lenient grammar.
pub fn parse_nested(sql: &str) -> Result<NestedQuery, NestedError> {
    NestedParser::new().parse(sql)
}

/// Split a nested query into its outer fragment and its inner SELECT
/// statement (semicolon-terminated, so it classifies as a simple statement).
pub fn linearize(q: &NestedQuery) -> (String, String) {
    let inner = format!("{};", q.inner());
    let outer = match q {
        NestedQuery::UpdateSub { table, set_column, set_op, set_value, in_column, .. } => {
            format!("UPDATE {table} SET {set_column} {set_op} {set_value} WHERE {in_column} IN")
        }
        NestedQuery::DeleteSub { table, where_column, op, .. } => {
            format!("DELETE FROM {table} WHERE {where_column} {op}")
        }
        NestedQuery::InsertSub { table, columns, .. } => {
            if columns.is_empty() {
                format!("INSERT INTO {table}")
            } else {
                format!("INSERT INTO {table} ({})", columns.join(", "))
            }
        }
        NestedQuery::SelectSubQ { projection, table, in_column, .. } => {
            format!("SELECT {projection} FROM {table} WHERE {in_column} IN")
        }
    };
    (outer, inner)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    end_offset: usize,
    strict: bool,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map(|t| t.offset).unwrap_or(self.end_offset)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("{} {:?}", t.kind.name(), t.lexeme),
            None => "end of input".into(),
        }
    }

    fn fail<T>(&self, expected: impl Into<String>) -> Result<T, NestedError> {
        Err(NestedError::Parse {
            expected: expected.into(),
            found: self.found(),
            offset: self.offset(),
        })
    }

    fn keyword(&mut self, name: &str) -> Result<(), NestedError> {
        match self.peek() {
            Some(t) if t.is_keyword(name) => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(name),
        }
    }

    fn eat_keyword(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(t) if t.is_keyword(name)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn punct(&mut self, kind: TokenKind, what: &str) -> Result<(), NestedError> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(what),
        }
    }

    fn ident(&mut self) -> Result<String, NestedError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => self.fail("an identifier"),
        }
    }

    fn literal(&mut self) -> Result<Literal, NestedError> {
        let t = match self.peek() {
            Some(t) => t,
            None => return self.fail("a literal value"),
        };
        let lit = match &t.kind {
            TokenKind::Number => match t.lexeme.parse() {
                Ok(n) => Literal::Int(n),
                Err(_) => return self.fail("an integer in range"),
            },
            TokenKind::FloatNumber => match t.lexeme.parse() {
                Ok(x) => Literal::Float(x),
                Err(_) => return self.fail("a float in range"),
            },
            TokenKind::QuotedString => Literal::Str(t.value().to_string()),
            TokenKind::Identifier if t.lexeme.eq_ignore_ascii_case("true") => Literal::Bool(true),
            TokenKind::Identifier if t.lexeme.eq_ignore_ascii_case("false") => {
                Literal::Bool(false)
            }
            _ => return self.fail("a literal value"),
        };
        self.pos += 1;
        Ok(lit)
    }

    fn compare_op(&mut self) -> Result<CompareOp, NestedError> {
        match self.peek() {
            Some(Token { kind: TokenKind::ComparisonOp(sym), .. }) => {
                match CompareOp::parse(sym) {
                    Some(op) => {
                        self.pos += 1;
                        Ok(op)
                    }
                    None => self.fail("a comparison operator"),
                }
            }
            _ => self.fail("a comparison operator"),
        }
    }

    fn expect_semicolon(&mut self) -> Result<(), NestedError> {
        self.punct(TokenKind::Semicolon, "';'")
    }

    fn expect_end(&mut self) -> Result<(), NestedError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            self.fail("end of statement")
        }
    }

    fn nested_query(&mut self) -> Result<NestedQuery, NestedError> {
        match self.peek() {
            Some(t) if t.is_keyword("UPDATE") => self.update_sub(),
            Some(t) if t.is_keyword("DELETE") => self.delete_sub(),
            Some(t) if t.is_keyword("INSERT") => self.insert_sub(),
            Some(t) if t.is_keyword("SELECT") => self.select_sub_query(),
            _ => self.fail("UPDATE, DELETE, INSERT or SELECT"),
        }
    }

    /// `UPDATE t SET col op value WHERE col IN ( select_sub )`
    fn update_sub(&mut self) -> Result<NestedQuery, NestedError> {
        self.keyword("UPDATE")?;
        let table = self.ident()?;
        self.keyword("SET")?;
        let set_column = self.ident()?;
        let set_op = self.compare_op()?;
        if !self.strict && set_op != CompareOp::Eq {
            return self.fail("'=' after the SET column");
        }
        let set_value = self.literal()?;
        if self.strict && !matches!(set_value, Literal::Int(_) | Literal::Float(_)) {
            return self.fail("a numeric SET value");
        }
        self.keyword("WHERE")?;
        let in_column = self.ident()?;
        if !self.eat_logical_in() {
            return self.fail("IN");
        }
        let inner = self.parenthesized_select()?;
        Ok(NestedQuery::UpdateSub { table, set_column, set_op, set_value, in_column, inner })
    }

    fn eat_logical_in(&mut self) -> bool {
        if matches!(self.peek(), Some(t) if t.is_logical("IN")) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// `DELETE FROM t WHERE col (rel_opr|log_opr) ( select_sub )`
    fn delete_sub(&mut self) -> Result<NestedQuery, NestedError> {
        self.keyword("DELETE")?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        self.keyword("WHERE")?;
        let where_column = self.ident()?;
        let op = match self.peek() {
            Some(Token { kind: TokenKind::ComparisonOp(sym), .. }) => {
                let op = CompareOp::parse(sym);
                self.pos += 1;
                NestedOp::Cmp(op.expect("lexer emits only known comparison symbols"))
            }
            Some(Token { kind: TokenKind::LogicalOp(word), .. }) => {
                let op = LogicalOp::parse(word);
                self.pos += 1;
                NestedOp::Logical(op.expect("lexer emits only known logical words"))
            }
            _ => return self.fail("a comparison or logical operator"),
        };
        let inner = self.parenthesized_select()?;
        Ok(NestedQuery::DeleteSub { table, where_column, op, inner })
    }

    /// `INSERT INTO t ( cols ) ( select_sub )`; the column list may be
    /// omitted in lenient mode.
    fn insert_sub(&mut self) -> Result<NestedQuery, NestedError> {
        self.keyword("INSERT")?;
        self.keyword("INTO")?;
        let table = self.ident()?;
        self.punct(TokenKind::BracketOpen, "'('")?;
        // A SELECT right after the bracket means there is no column list.
        if matches!(self.peek(), Some(t) if t.is_keyword("SELECT")) {
            if self.strict {
                return self.fail("a column list");
            }
            let inner = self.select_sub()?;
            self.punct(TokenKind::BracketClose, "')'")?;
            return Ok(NestedQuery::InsertSub { table, columns: Vec::new(), inner });
        }
        let mut columns = vec![self.ident()?];
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
            self.pos += 1;
            columns.push(self.ident()?);
        }
        self.punct(TokenKind::BracketClose, "')'")?;
        let inner = self.parenthesized_select()?;
        Ok(NestedQuery::InsertSub { table, columns, inner })
    }

    /// `SELECT cols FROM t WHERE col IN ( select_sub )`
    fn select_sub_query(&mut self) -> Result<NestedQuery, NestedError> {
        self.keyword("SELECT")?;
        let projection = self.cols_list()?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        self.keyword("WHERE")?;
        let in_column = self.ident()?;
        if !self.eat_logical_in() {
            return self.fail("IN");
        }
        let inner = self.parenthesized_select()?;
        Ok(NestedQuery::SelectSubQ { projection, table, in_column, inner })
    }

    fn parenthesized_select(&mut self) -> Result<SelectSub, NestedError> {
        self.punct(TokenKind::BracketOpen, "'('")?;
        let inner = self.select_sub()?;
        self.punct(TokenKind::BracketClose, "')'")?;
        Ok(inner)
    }

    /// `SELECT cols FROM t [WHERE col op value]` — WHERE mandatory in strict
    /// mode, with a quoted value.
    fn select_sub(&mut self) -> Result<SelectSub, NestedError> {
        self.keyword("SELECT")?;
        let projection = self.cols_list()?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        let condition = if self.eat_keyword("WHERE") {
            let column = self.ident()?;
            let op = self.compare_op()?;
            let value = self.literal()?;
            if self.strict && !matches!(value, Literal::Str(_)) {
                return self.fail("a quoted condition value");
            }
            Some(CmpCond { column, op, value })
        } else {
            if self.strict {
                return self.fail("WHERE");
            }
            None
        };
        Ok(SelectSub { projection, table, condition })
    }

    /// `DISTINCT ident | ident {, ident} | *`
    fn cols_list(&mut self) -> Result<Projection, NestedError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Star => {
                self.pos += 1;
                Ok(Projection::All)
            }
            Some(t) if t.is_keyword("DISTINCT") => {
                self.pos += 1;
                let col = self.ident()?;
                Ok(Projection::Distinct(vec![col]))
            }
            Some(t) if t.kind == TokenKind::Identifier => {
                let mut cols = vec![self.ident()?];
                while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
                    self.pos += 1;
                    cols.push(self.ident()?);
                }
                Ok(Projection::Columns(cols))
            }
            _ => self.fail("a column list"),
        }
    }
}

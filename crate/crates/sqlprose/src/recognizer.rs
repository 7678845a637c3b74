//! Pattern recognizer for simple (non-nested) statements.
//!
//! `classify` lexes a statement, detects embedded SELECT subqueries (which
//! are delegated to the nested parser), and otherwise matches the token
//! stream against the dialect's fixed statement patterns, producing a typed
//! [`SqlStatement`] or a rejection reason.

use crate::ast::{
    AlterAction, CmpCond, ColumnDef, CompareOp, Condition, Conj, DataType, Direction, Filter,
    Literal, Projection, SelectTail, SqlStatement,
};
use crate::lexer::{tokenize, Token, TokenKind};

/// Outcome of classifying one statement.
#[derive(Debug, Clone, PartialEq)]
pub enum Recognition {
    /// The statement matches a simple pattern.
    Statement(SqlStatement),
    /// The statement embeds a SELECT subquery; see the nested parser.
    NestedDetected,
    /// The statement matches no pattern.
    NotRecognized { reason: String },
}

impl Recognition {
    pub fn is_statement(&self) -> bool {
        matches!(self, Recognition::Statement(_))
    }

    pub fn is_nested(&self) -> bool {
        matches!(self, Recognition::NestedDetected)
    }

    pub fn statement(&self) -> Option<&SqlStatement> {
        match self {
            Recognition::Statement(s) => Some(s),
            _ => None,
        }
    }
}

/// Batch classification outcome: index lists per verdict class plus the
/// verdict for every input in order.
#[derive(Debug, Clone, PartialEq)]
pub struct RecognitionReport {
    pub recognized: Vec<usize>,
    pub nested: Vec<usize>,
    pub failed: Vec<usize>,
    pub verdicts: Vec<Recognition>,
}

impl RecognitionReport {
    pub fn total(&self) -> usize {
        self.verdicts.len()
    }

    /// Failure reasons paired with their statement index.
    pub fn failure_reasons(&self) -> Vec<(usize, &str)> {
        self.failed
            .iter()
            .map(|&i| match &self.verdicts[i] {
                Recognition::NotRecognized { reason } => (i, reason.as_str()),
                _ => (i, ""),
            })
            .collect()
    }
}

/// Classify every statement in order.
pub fn classify_batch<I, S>(statements: I) -> RecognitionReport
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut report = RecognitionReport {
        recognized: Vec::new(),
        nested: Vec::new(),
        failed: Vec::new(),
        verdicts: Vec::new(),
    };
    for (i, stmt) in statements.into_iter().enumerate() {
        let verdict = classify(stmt.as_ref());
        match &verdict {
            Recognition::Statement(_) => report.recognized.push(i),
            Recognition::NestedDetected => report.nested.push(i),
            Recognition::NotRecognized { .. } => report.failed.push(i),
        }
        report.verdicts.push(verdict);
    }
    report
}

/// Classify one statement.
pub fn classify(sql: &str) -> Recognition {
    let tokens = match tokenize(sql) {
        Ok(tokens) => tokens,
        Err(e) => return Recognition::NotRecognized { reason: e.to_string() },
    };
    if tokens.is_empty() {
        return Recognition::NotRecognized { reason: "empty statement".into() };
    }
    // A SELECT keyword inside parentheses marks a nested query regardless of
    // anything else; a SELECT at depth zero does not.
    let mut depth = 0i32;
    for t in &tokens {
        match &t.kind {
            TokenKind::BracketOpen => depth += 1,
            TokenKind::BracketClose => depth -= 1,
            TokenKind::Keyword(k) if k == "SELECT" && depth >= 1 => {
                return Recognition::NestedDetected;
            }
            _ => {}
        }
    }
    match parse_statement(&tokens) {
        Ok(stmt) => Recognition::Statement(stmt),
        Err(reason) => Recognition::NotRecognized { reason },
    }
}

fn parse_statement(tokens: &[Token]) -> Result<SqlStatement, String> {
    match tokens.last().map(|t| &t.kind) {
        Some(TokenKind::Semicolon) => {}
        _ => return Err("missing trailing semicolon".into()),
    }
    let body = &tokens[..tokens.len() - 1];
    if body.iter().any(|t| t.kind == TokenKind::Semicolon) {
        return Err("more than one statement".into());
    }
    if body.is_empty() {
        return Err("empty statement".into());
    }
    let mut m = Matcher { tokens: body, pos: 0 };
    let stmt = match &body[0].kind {
        TokenKind::Keyword(k) => match k.as_str() {
            "CREATE" => m.create()?,
            "DROP" => m.drop()?,
            "ALTER" => m.alter()?,
            "RENAME" => m.rename()?,
            "TRUNCATE" => m.truncate()?,
            "INSERT" => m.insert()?,
            "UPDATE" => m.update()?,
            "DELETE" => m.delete()?,
            "SELECT" => m.select()?,
            other => return Err(format!("statements cannot start with {other}")),
        },
        other => return Err(format!("statements cannot start with a {}", other.name())),
    };
    m.end()?;
    Ok(stmt)
}

/// Cursor over a token slice with pattern-matching helpers. Every failure
/// carries a human-readable reason naming what was expected and found.
struct Matcher<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Matcher<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("{} {:?}", t.kind.name(), t.lexeme),
            None => "end of statement".into(),
        }
    }

    fn end(&mut self) -> Result<(), String> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(format!("unexpected trailing input: {}", self.found()))
        }
    }

    fn keyword(&mut self, name: &str) -> Result<(), String> {
        match self.peek() {
            Some(t) if t.is_keyword(name) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(format!("expected {name}, found {}", self.found())),
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

    fn eat_logical(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(t) if t.is_logical(name)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => {
                self.pos += 1;
                Ok(t.lexeme.clone())
            }
            _ => Err(format!("expected an identifier, found {}", self.found())),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<String>, String> {
        let mut names = vec![self.ident()?];
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
            self.pos += 1;
            names.push(self.ident()?);
        }
        Ok(names)
    }

    fn punct(&mut self, kind: TokenKind, what: &str) -> Result<(), String> {
        match self.peek() {
            Some(t) if t.kind == kind => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(format!("expected {what}, found {}", self.found())),
        }
    }

    fn literal(&mut self) -> Result<Literal, String> {
        let t = self.peek().ok_or("expected a literal value, found end of statement")?;
        let lit = match &t.kind {
            TokenKind::Number => Literal::Int(
                t.lexeme.parse().map_err(|_| format!("integer {} out of range", t.lexeme))?,
            ),
            TokenKind::FloatNumber => Literal::Float(
                t.lexeme.parse().map_err(|_| format!("float {} out of range", t.lexeme))?,
            ),
            TokenKind::QuotedString => Literal::Str(t.value().to_string()),
            TokenKind::Identifier if t.lexeme.eq_ignore_ascii_case("true") => Literal::Bool(true),
            TokenKind::Identifier if t.lexeme.eq_ignore_ascii_case("false") => {
                Literal::Bool(false)
            }
            TokenKind::Identifier => {
                return Err(format!("bare word {:?} is not a quoted value", t.lexeme))
            }
            _ => return Err(format!("expected a literal value, found {}", self.found())),
        };
        self.pos += 1;
        Ok(lit)
    }

    fn compare_op(&mut self) -> Result<CompareOp, String> {
        match self.peek() {
            Some(Token { kind: TokenKind::ComparisonOp(sym), .. }) => {
                let op = CompareOp::parse(sym)
                    .ok_or_else(|| format!("unknown comparison operator {sym}"))?;
                self.pos += 1;
                Ok(op)
            }
            _ => Err(format!("expected a comparison operator, found {}", self.found())),
        }
    }

    fn cmp_cond(&mut self) -> Result<CmpCond, String> {
        let column = self.ident()?;
        let op = self.compare_op()?;
        let value = self.literal()?;
        Ok(CmpCond { column, op, value })
    }

    fn datatype(&mut self) -> Result<DataType, String> {
        let name = match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => t.lexeme.clone(),
            _ => return Err(format!("expected a type name, found {}", self.found())),
        };
        self.pos += 1;
        let mut width = None;
        if matches!(self.peek(), Some(t) if t.kind == TokenKind::BracketOpen) {
            self.pos += 1;
            let w = match self.peek() {
                Some(t) if t.kind == TokenKind::Number => t
                    .lexeme
                    .parse::<u32>()
                    .map_err(|_| format!("type width {} out of range", t.lexeme))?,
                _ => return Err(format!("expected a type width, found {}", self.found())),
            };
            self.pos += 1;
            self.punct(TokenKind::BracketClose, "')'")?;
            width = Some(w);
        }
        DataType::parse(&name, width).ok_or(format!("unknown type name {name:?}"))
    }

    // -- statements ---------------------------------------------------------

    fn create(&mut self) -> Result<SqlStatement, String> {
        self.keyword("CREATE")?;
        if self.eat_keyword("DATABASE") {
            let if_not_exists = self.if_not_exists()?;
            let name = self.ident()?;
            Ok(SqlStatement::CreateDatabase { name, if_not_exists })
        } else if self.eat_keyword("TABLE") {
            let if_not_exists = self.if_not_exists()?;
            let name = self.ident()?;
            self.punct(TokenKind::BracketOpen, "'('")?;
            let mut columns = vec![self.column_def()?];
            while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
                self.pos += 1;
                columns.push(self.column_def()?);
            }
            self.punct(TokenKind::BracketClose, "')'")?;
            Ok(SqlStatement::CreateTable { name, columns, if_not_exists })
        } else {
            Err(format!("expected DATABASE or TABLE after CREATE, found {}", self.found()))
        }
    }

    fn if_not_exists(&mut self) -> Result<bool, String> {
        if self.eat_keyword("IF") {
            if !self.eat_logical("NOT") {
                return Err(format!("expected NOT after IF, found {}", self.found()));
            }
            if !self.eat_logical("EXISTS") {
                return Err(format!("expected EXISTS after IF NOT, found {}", self.found()));
            }
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn column_def(&mut self) -> Result<ColumnDef, String> {
        let name = self.ident()?;
        let datatype = self.datatype()?;
        Ok(ColumnDef { name, datatype })
    }

    fn drop(&mut self) -> Result<SqlStatement, String> {
        self.keyword("DROP")?;
        let is_database = if self.eat_keyword("DATABASE") {
            true
        } else if self.eat_keyword("TABLE") {
            false
        } else {
            return Err(format!("expected DATABASE or TABLE after DROP, found {}", self.found()));
        };
        let if_exists = if self.eat_keyword("IF") {
            if !self.eat_logical("EXISTS") {
                return Err(format!("expected EXISTS after IF, found {}", self.found()));
            }
            true
        } else {
            false
        };
        let names = self.ident_list()?;
        Ok(if is_database {
            SqlStatement::DropDatabase { names, if_exists }
        } else {
            SqlStatement::DropTable { names, if_exists }
        })
    }

    fn alter(&mut self) -> Result<SqlStatement, String> {
        self.keyword("ALTER")?;
        // The TABLE keyword is optional on input; canonical output keeps it.
        self.eat_keyword("TABLE");
        let table = self.ident()?;
        let action = if self.eat_keyword("ADD") {
            AlterAction::Add
        } else if self.eat_keyword("DROP") {
            AlterAction::Drop
        } else if self.eat_keyword("MODIFY") {
            AlterAction::Modify
        } else {
            return Err(format!(
                "expected ADD, DROP or MODIFY after the table name, found {}",
                self.found()
            ));
        };
        self.eat_keyword("COLUMN");
        let column = self.ident()?;
        let datatype = self.datatype()?;
        Ok(SqlStatement::AlterColumn { table, action, column, datatype })
    }

    fn rename(&mut self) -> Result<SqlStatement, String> {
        self.keyword("RENAME")?;
        self.keyword("TABLE")?;
        let from = self.ident()?;
        self.keyword("TO")?;
        let to = self.ident()?;
        Ok(SqlStatement::RenameTable { from, to })
    }

    fn truncate(&mut self) -> Result<SqlStatement, String> {
        self.keyword("TRUNCATE")?;
        self.eat_keyword("TABLE");
        let table = self.ident()?;
        Ok(SqlStatement::Truncate { table })
    }

    fn insert(&mut self) -> Result<SqlStatement, String> {
        self.keyword("INSERT")?;
        self.keyword("INTO")?;
        let table = self.ident()?;
        self.punct(TokenKind::BracketOpen, "'('")?;
        let columns = self.ident_list()?;
        self.punct(TokenKind::BracketClose, "')'")?;
        self.keyword("VALUES")?;
        self.punct(TokenKind::BracketOpen, "'('")?;
        let mut values = vec![self.literal()?];
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
            self.pos += 1;
            values.push(self.literal()?);
        }
        self.punct(TokenKind::BracketClose, "')'")?;
        if columns.len() != values.len() {
            return Err(format!(
                "INSERT has {} columns but {} values",
                columns.len(),
                values.len()
            ));
        }
        Ok(SqlStatement::Insert { table, columns, values })
    }

    fn update(&mut self) -> Result<SqlStatement, String> {
        self.keyword("UPDATE")?;
        let table = self.ident()?;
        self.keyword("SET")?;
        let set_column = self.ident()?;
        match self.compare_op()? {
            CompareOp::Eq => {}
            other => return Err(format!("SET takes '=', found {:?}", other.symbol())),
        }
        let set_value = self.literal()?;
        self.keyword("WHERE")?;
        let condition = self.cmp_cond()?;
        Ok(SqlStatement::Update { table, set_column, set_value, condition })
    }

    fn delete(&mut self) -> Result<SqlStatement, String> {
        self.keyword("DELETE")?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        self.keyword("WHERE")?;
        let condition = self.cmp_cond()?;
        Ok(SqlStatement::Delete { table, condition })
    }

    fn select(&mut self) -> Result<SqlStatement, String> {
        self.keyword("SELECT")?;
        // `SELECT g, COUNT(c) FROM t GROUP BY g HAVING COUNT(c) op n` is its
        // own pattern, distinguished by the COUNT after the first column.
        if self.looks_like_having_projection() {
            return self.having_select();
        }
        let projection = self.projection()?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        let tail = self.select_tail()?;
        match (&projection, &tail) {
            // DISTINCT admits at most a single-comparison WHERE.
            (Projection::Distinct(_), None)
            | (Projection::Distinct(_), Some(SelectTail::Where(Filter::Single(Condition::Cmp(_))))) => {}
            (Projection::Distinct(_), Some(_)) => {
                return Err("DISTINCT takes at most a single-comparison WHERE".into())
            }
            // COUNT projections take no tail at all.
            (Projection::Count(_), Some(_)) => {
                return Err("COUNT queries take no WHERE or modifier".into())
            }
            _ => {}
        }
        Ok(SqlStatement::Select { projection, table, tail })
    }

    fn looks_like_having_projection(&self) -> bool {
        matches!(self.peek(), Some(t) if t.kind == TokenKind::Identifier)
            && matches!(self.tokens.get(self.pos + 1), Some(t) if t.kind == TokenKind::Comma)
            && matches!(self.tokens.get(self.pos + 2), Some(t) if t.is_keyword("COUNT"))
    }

    fn having_select(&mut self) -> Result<SqlStatement, String> {
        self.ident()?;
        self.punct(TokenKind::Comma, "','")?;
        self.keyword("COUNT")?;
        self.punct(TokenKind::BracketOpen, "'('")?;
        self.ident()?;
        self.punct(TokenKind::BracketClose, "')'")?;
        self.keyword("FROM")?;
        let table = self.ident()?;
        self.keyword("GROUP")?;
        self.keyword("BY")?;
        let group_column = self.ident()?;
        self.keyword("HAVING")?;
        self.keyword("COUNT")?;
        self.punct(TokenKind::BracketOpen, "'('")?;
        let count_column = self.ident()?;
        self.punct(TokenKind::BracketClose, "')'")?;
        let op = self.compare_op()?;
        let threshold = match self.peek() {
            Some(t) if t.kind == TokenKind::Number => t
                .lexeme
                .parse::<i64>()
                .map_err(|_| format!("threshold {} out of range", t.lexeme))?,
            _ => return Err(format!("expected a count threshold, found {}", self.found())),
        };
        self.pos += 1;
        Ok(SqlStatement::Select {
            projection: Projection::Columns(vec![group_column.clone()]),
            table,
            tail: Some(SelectTail::Having { group_column, count_column, op, threshold }),
        })
    }

    fn projection(&mut self) -> Result<Projection, String> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Star => {
                self.pos += 1;
                Ok(Projection::All)
            }
            Some(t) if t.is_keyword("DISTINCT") => {
                self.pos += 1;
                Ok(Projection::Distinct(self.ident_list()?))
            }
            Some(t) if t.is_keyword("COUNT") => {
                self.pos += 1;
                self.punct(TokenKind::BracketOpen, "'('")?;
                let col = self.ident()?;
                self.punct(TokenKind::BracketClose, "')'")?;
                Ok(Projection::Count(col))
            }
            Some(t) if t.kind == TokenKind::Identifier => Ok(Projection::Columns(self.ident_list()?)),
            _ => Err(format!("expected a projection, found {}", self.found())),
        }
    }

    fn select_tail(&mut self) -> Result<Option<SelectTail>, String> {
        if self.peek().is_none() {
            return Ok(None);
        }
        if self.eat_keyword("WHERE") {
            let filter = self.filter()?;
            return Ok(Some(SelectTail::Where(filter)));
        }
        if self.eat_keyword("ORDER") {
            self.keyword("BY")?;
            let column = self.ident()?;
            let direction = if self.eat_keyword("ASC") {
                Some(Direction::Asc)
            } else if self.eat_keyword("DESC") {
                Some(Direction::Desc)
            } else {
                None
            };
            return Ok(Some(SelectTail::OrderBy { column, direction }));
        }
        if self.eat_keyword("GROUP") {
            self.keyword("BY")?;
            let column = self.ident()?;
            return Ok(Some(SelectTail::GroupBy { column }));
        }
        Err(format!("expected WHERE, ORDER BY or GROUP BY, found {}", self.found()))
    }

    fn filter(&mut self) -> Result<Filter, String> {
        if self.eat_logical("NOT") {
            return Ok(Filter::Negated(self.cmp_cond()?));
        }
        let column = self.ident()?;
        match self.peek() {
            Some(Token { kind: TokenKind::ComparisonOp(_), .. }) => {
                let op = self.compare_op()?;
                let value = self.literal()?;
                let first = CmpCond { column, op, value };
                let conj = if self.eat_logical("AND") {
                    Some(Conj::And)
                } else if self.eat_logical("OR") {
                    Some(Conj::Or)
                } else {
                    None
                };
                match conj {
                    None => Ok(Filter::Single(Condition::Cmp(first))),
                    Some(conj) => {
                        let second = self.cmp_cond()?;
                        if matches!(self.peek(), Some(t) if t.is_logical("AND") || t.is_logical("OR"))
                        {
                            return Err("at most one AND/OR conjunction is allowed".into());
                        }
                        Ok(Filter::Pair(first, conj, second))
                    }
                }
            }
            Some(t) if t.is_logical("IN") => {
                self.pos += 1;
                self.punct(TokenKind::BracketOpen, "'('")?;
                let mut values = vec![self.literal()?];
                while matches!(self.peek(), Some(t) if t.kind == TokenKind::Comma) {
                    self.pos += 1;
                    values.push(self.literal()?);
                }
                self.punct(TokenKind::BracketClose, "')'")?;
                Ok(Filter::Single(Condition::In { column, values }))
            }
            Some(t) if t.is_logical("BETWEEN") => {
                self.pos += 1;
                let lo = self.literal()?;
                if !self.eat_logical("AND") {
                    return Err(format!("expected AND in BETWEEN, found {}", self.found()));
                }
                let hi = self.literal()?;
                Ok(Filter::Single(Condition::Between { column, lo, hi }))
            }
            Some(t) if t.is_logical("LIKE") => {
                self.pos += 1;
                match self.peek() {
                    Some(t) if t.kind == TokenKind::QuotedString => {
                        let pattern = t.value().to_string();
                        self.pos += 1;
                        Ok(Filter::Single(Condition::Like { column, pattern }))
                    }
                    _ => Err(format!("expected a quoted pattern after LIKE, found {}", self.found())),
                }
            }
            _ => Err(format!(
                "expected a comparison, IN, BETWEEN or LIKE after {column:?}, found {}",
                self.found()
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stmt(sql: &str) -> SqlStatement {
        match classify(sql) {
            Recognition::Statement(s) => s,
            other => panic!("expected a recognized statement for {sql:?}, got {other:?}"),
        }
    }

    fn reason(sql: &str) -> String {
        match classify(sql) {
            Recognition::NotRecognized { reason } => reason,
            other => panic!("expected a rejection for {sql:?}, got {other:?}"),
        }
    }

    #[test]
    fn alter_statements_parse_and_render_canonically() {
        for (action, kw) in
            [(AlterAction::Add, "ADD"), (AlterAction::Drop, "DROP"), (AlterAction::Modify, "MODIFY")]
        {
            let sql =
                format!("ALTER TABLE supplier {kw} COLUMN supplier_name varchar(255);");
            let parsed = stmt(&sql);
            assert_eq!(
                parsed,
                SqlStatement::AlterColumn {
                    table: "supplier".into(),
                    action,
                    column: "supplier_name".into(),
                    datatype: DataType::Varchar(Some(255)),
                }
            );
            assert_eq!(parsed.to_string(), sql);
        }
    }

    #[test]
    fn alter_without_table_keyword_is_accepted() {
        let parsed = stmt("ALTER supplier ADD supplier_name varchar(255);");
        assert_eq!(
            parsed.to_string(),
            "ALTER TABLE supplier ADD COLUMN supplier_name varchar(255);"
        );
    }

    #[test]
    fn create_database_and_table() {
        assert_eq!(
            stmt("CREATE DATABASE student_db;"),
            SqlStatement::CreateDatabase { name: "student_db".into(), if_not_exists: false }
        );
        let table = stmt(
            "CREATE TABLE student_information (ID int, Firstname varchar(255), \
             Lastname varchar(255), Gender varchar(50), Address varchar(255));",
        );
        match &table {
            SqlStatement::CreateTable { name, columns, if_not_exists } => {
                assert_eq!(name, "student_information");
                assert_eq!(columns.len(), 5);
                assert_eq!(columns[0], ColumnDef { name: "ID".into(), datatype: DataType::Int });
                assert_eq!(columns[3].datatype, DataType::Varchar(Some(50)));
                assert!(!if_not_exists);
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn drop_rename_truncate() {
        assert_eq!(
            stmt("DROP DATABASE IF EXISTS student_information;"),
            SqlStatement::DropDatabase {
                names: vec!["student_information".into()],
                if_exists: true
            }
        );
        assert_eq!(
            stmt("DROP TABLE a, b, c;"),
            SqlStatement::DropTable {
                names: vec!["a".into(), "b".into(), "c".into()],
                if_exists: false
            }
        );
        assert_eq!(
            stmt("RENAME TABLE student_record TO student_information;"),
            SqlStatement::RenameTable {
                from: "student_record".into(),
                to: "student_information".into()
            }
        );
        assert_eq!(
            stmt("TRUNCATE TABLE student_information;"),
            SqlStatement::Truncate { table: "student_information".into() }
        );
    }

    #[test]
    fn delete_with_single_condition() {
        assert_eq!(
            stmt("DELETE FROM student_information WHERE student_firstname = 'peter';"),
            SqlStatement::Delete {
                table: "student_information".into(),
                condition: CmpCond {
                    column: "student_firstname".into(),
                    op: CompareOp::Eq,
                    value: Literal::Str("peter".into()),
                },
            }
        );
    }

    #[test]
    fn insert_with_six_columns() {
        let parsed = stmt(
            "INSERT INTO student_information (FirstName, LastName, Address, City, \
             PostalCode, Country) VALUES ('Peter', 'Tom', '21 claim street', 'Rivonia', \
             '2001', 'South Africa');",
        );
        match &parsed {
            SqlStatement::Insert { table, columns, values } => {
                assert_eq!(table, "student_information");
                assert_eq!(columns.len(), 6);
                assert_eq!(values[5], Literal::Str("South Africa".into()));
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn insert_accepts_typed_literals() {
        let parsed = stmt(
            "INSERT INTO categories (category_id, category_name) VALUES (150, 'Miscellaneous');",
        );
        match &parsed {
            SqlStatement::Insert { values, .. } => {
                assert_eq!(values[0], Literal::Int(150));
            }
            other => panic!("wrong variant: {other:?}"),
        }
        let floats =
            stmt("INSERT INTO product (id, price, fresh) VALUES (1, 12.48, true);");
        match &floats {
            SqlStatement::Insert { values, .. } => {
                assert_eq!(values[1], Literal::Float(12.48));
                assert_eq!(values[2], Literal::Bool(true));
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn update_statement() {
        assert_eq!(
            stmt("UPDATE Student SET name = 'John' Where ID = 6;"),
            SqlStatement::Update {
                table: "Student".into(),
                set_column: "name".into(),
                set_value: Literal::Str("John".into()),
                condition: CmpCond {
                    column: "ID".into(),
                    op: CompareOp::Eq,
                    value: Literal::Int(6),
                },
            }
        );
    }

    #[test]
    fn select_variants() {
        assert_eq!(
            stmt("SELECT * FROM student_information;"),
            SqlStatement::Select {
                projection: Projection::All,
                table: "student_information".into(),
                tail: None
            }
        );
        assert_eq!(
            stmt("SELECT DISTINCT FirstName, LastName FROM student_information;"),
            SqlStatement::Select {
                projection: Projection::Distinct(vec!["FirstName".into(), "LastName".into()]),
                table: "student_information".into(),
                tail: None,
            }
        );
        assert_eq!(
            stmt("SELECT COUNT(name) FROM student;"),
            SqlStatement::Select {
                projection: Projection::Count("name".into()),
                table: "student".into(),
                tail: None,
            }
        );
    }

    #[test]
    fn select_with_conjunction_pairs() {
        let and = stmt(
            "SELECT * FROM student_information WHERE FirstName = 'peter' AND LastName = 'mark';",
        );
        match &and {
            SqlStatement::Select { tail: Some(SelectTail::Where(Filter::Pair(a, Conj::And, b))), .. } => {
                assert_eq!(a.column, "FirstName");
                assert_eq!(b.value, Literal::Str("mark".into()));
            }
            other => panic!("wrong shape: {other:?}"),
        }
        let or = stmt("SELECT * FROM Customers WHERE Country = 'South Africa' OR City = 'Harare';");
        assert!(matches!(
            or,
            SqlStatement::Select { tail: Some(SelectTail::Where(Filter::Pair(_, Conj::Or, _))), .. }
        ));
    }

    #[test]
    fn select_with_in_list() {
        let parsed = stmt(
            "SELECT * FROM student_information WHERE FirstName IN ('peter', 'john', 'felix');",
        );
        match &parsed {
            SqlStatement::Select {
                tail: Some(SelectTail::Where(Filter::Single(Condition::In { column, values }))),
                ..
            } => {
                assert_eq!(column, "FirstName");
                assert_eq!(values.len(), 3);
            }
            other => panic!("wrong shape: {other:?}"),
        }
    }

    #[test]
    fn select_between_like_not() {
        assert!(stmt("SELECT * FROM t WHERE age BETWEEN 18 AND 25;").to_string()
            .contains("BETWEEN 18 AND 25"));
        assert!(stmt("SELECT * FROM t WHERE name LIKE 'pe%';").to_string()
            .contains("LIKE 'pe%'"));
        assert!(matches!(
            stmt("SELECT * FROM t WHERE NOT age = 20;"),
            SqlStatement::Select { tail: Some(SelectTail::Where(Filter::Negated(_))), .. }
        ));
    }

    #[test]
    fn distinct_accepts_a_single_comparison_filter() {
        let parsed = stmt("SELECT DISTINCT name FROM t WHERE age = 20;");
        assert!(matches!(parsed, SqlStatement::Select { tail: Some(_), .. }));
        assert_eq!(
            reason("SELECT DISTINCT name FROM t WHERE a = 1 AND b = 2;"),
            "DISTINCT takes at most a single-comparison WHERE"
        );
    }

    #[test]
    fn nested_detection_fires_inside_parens_only() {
        assert_eq!(
            classify("DELETE FROM country WHERE city IN (SELECT city FROM country WHERE city = 'Pretoria');"),
            Recognition::NestedDetected
        );
        assert_eq!(
            classify("INSERT INTO Student (SELECT * FROM LateralStudent);"),
            Recognition::NestedDetected
        );
        // SELECT at depth zero is not a nested query.
        assert!(matches!(
            classify("INSERT INTO Student (a, b) SELECT a, b FROM Other;"),
            Recognition::NotRecognized { .. }
        ));
    }

    #[test]
    fn missing_semicolon_is_rejected() {
        assert_eq!(reason("SELECT * FROM t"), "missing trailing semicolon");
    }

    #[test]
    fn multiple_statements_are_rejected() {
        assert_eq!(reason("SELECT * FROM t; SELECT * FROM u;"), "more than one statement");
    }

    #[test]
    fn bare_word_rhs_is_rejected_with_reason() {
        let r = reason("DELETE FROM t WHERE name = peter;");
        assert!(r.contains("bare word"), "unexpected reason: {r}");
    }

    #[test]
    fn where_with_order_by_is_rejected() {
        let r = reason("SELECT a FROM t WHERE a = 1 ORDER BY a;");
        assert!(r.contains("unexpected trailing input"), "unexpected reason: {r}");
    }

    #[test]
    fn two_conjunctions_are_rejected() {
        assert_eq!(
            reason("SELECT * FROM t WHERE a = 1 AND b = 2 OR c = 3;"),
            "at most one AND/OR conjunction is allowed"
        );
    }

    #[test]
    fn order_and_group_by_parse() {
        assert_eq!(
            stmt("SELECT a, b FROM t ORDER BY a DESC;").to_string(),
            "SELECT a, b FROM t ORDER BY a DESC;"
        );
        assert_eq!(
            stmt("SELECT a FROM t GROUP BY a;").to_string(),
            "SELECT a FROM t GROUP BY a;"
        );
        assert_eq!(
            stmt("SELECT dept, COUNT(id) FROM emp GROUP BY dept HAVING COUNT(id) > 5;")
                .to_string(),
            "SELECT dept, COUNT(id) FROM emp GROUP BY dept HAVING COUNT(id) > 5;"
        );
    }

    #[test]
    fn lex_errors_become_rejections() {
        let r = reason("SELECT * FROM [Order];");
        assert!(r.contains("unexpected character"), "unexpected reason: {r}");
    }

    #[test]
    fn classify_batch_partitions_indices() {
        let report = classify_batch([
            "SELECT * FROM t;",
            "DELETE FROM t WHERE a IN (SELECT a FROM u);",
            "not sql",
        ]);
        assert_eq!(report.recognized, vec![0]);
        assert_eq!(report.nested, vec![1]);
        assert_eq!(report.failed, vec![2]);
        assert_eq!(report.total(), 3);
    }

    #[test]
    fn canonical_render_reparses_to_the_same_ast() {
        let sources = [
            "select distinct  name , age from  T ;",
            "delete from t where a != 10;",
            "insert into t (a) values (1);",
            "update t set a = 1 where b < 2;",
            "select * from t where x like '%y%';",
        ];
        for src in sources {
            let first = stmt(src);
            let second = stmt(&first.to_string());
            assert_eq!(first, second, "round-trip mismatch for {src}");
            assert_eq!(first.to_string(), second.to_string());
        }
    }
}

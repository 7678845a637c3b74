//! Template-based narration: render recognized statements as plain-English
//! sentences. Simple statements get one narration; nested statements get
//! three, one per [`NestedStyle`].

use crate::assets;
use crate::ast::{
    AlterAction, CmpCond, Condition, Conj, DataType, Direction, Filter, Literal, LogicalOp,
    NestedOp, NestedQuery, Projection, SelectSub, SelectTail, SqlStatement,
};
use crate::lexer::tokenize;
use crate::vocab::{VocabError, VocabularyMap};
use std::fmt;

/// Narration flavor, covering both the simple and the nested pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Simple,
    OuterToInner,
    InnerToOuter,
    CoJoined,
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Style::Simple => "simple",
            Style::OuterToInner => "outer-to-inner",
            Style::InnerToOuter => "inner-to-outer",
            Style::CoJoined => "co-joined",
        };
        f.write_str(name)
    }
}

/// The three narration orders for a nested query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NestedStyle {
    /// Narrate the inner query first, then the outer action.
    OuterToInner,
    /// Narrate the outer action first, then describe the inner retrieval.
    InnerToOuter,
    /// Present both halves as coordinated first and second queries.
    CoJoined,
}

impl NestedStyle {
    /// All styles, in narration order.
    pub const ALL: [NestedStyle; 3] =
        [NestedStyle::OuterToInner, NestedStyle::InnerToOuter, NestedStyle::CoJoined];
}

impl From<NestedStyle> for Style {
    fn from(s: NestedStyle) -> Style {
        match s {
            NestedStyle::OuterToInner => Style::OuterToInner,
            NestedStyle::InnerToOuter => Style::InnerToOuter,
            NestedStyle::CoJoined => Style::CoJoined,
        }
    }
}

/// One English rendering of a statement.
#[derive(Debug, Clone, PartialEq)]
pub struct Narration {
    pub style: Style,
    pub text: String,
    /// Lexemes of the statement's canonical rendering, in source order.
    pub token_index: Vec<String>,
}

/// Every vocabulary key the narrator fills; checked once at construction so
/// rendering itself never fails.
const REQUIRED_KEYS: &[&str] = &[
    "alter.sentence",
    "alter.action.add",
    "alter.action.drop",
    "alter.action.modify",
    "alter.allows.varchar",
    "alter.allows.varchar_any",
    "alter.allows.int",
    "alter.allows.bool",
    "alter.allows.float",
    "create.database",
    "create.table",
    "decl.int",
    "decl.varchar",
    "decl.varchar_any",
    "decl.bool",
    "decl.float",
    "drop.sentence",
    "drop.exists_tail",
    "rename.sentence",
    "truncate.sentence",
    "delete.sentence",
    "insert.sentence",
    "update.sentence",
    "select.sentence",
    "select.subject.all",
    "select.subject.all_where",
    "select.subject.all_and",
    "select.subject.distinct",
    "select.subject.columns",
    "select.subject.count",
    "where.single",
    "where.and",
    "where.or",
    "where.in",
    "where.not",
    "where.between",
    "where.like",
    "tail.order_by",
    "tail.order.asc",
    "tail.order.desc",
    "tail.group_by",
    "having.sentence",
    "nested.where",
    "nested.subject.all",
    "nested.subject.columns",
    "nested.subject.distinct",
    "o2i.sentence",
    "o2i.inner",
    "o2i.outer.delete",
    "o2i.outer.select",
    "o2i.outer.update",
    "o2i.outer.insert",
    "o2i.outer.insert_cols",
    "o2i.link",
    "i2o.sentence",
    "i2o.core.delete",
    "i2o.core.select",
    "i2o.core.update",
    "i2o.insert.sentence",
    "i2o.core.insert",
    "i2o.core.insert_cols",
    "i2o.tail",
    "i2o.tail.all",
    "i2o.tail.distinct",
    "i2o.tail.from",
    "i2o.tail.cond",
    "i2o.rel.in",
    "i2o.rel.any",
    "i2o.rel.exists",
    "i2o.rel.cmp",
    "i2o.rel.like",
    "i2o.rel.between",
    "i2o.rel.not",
    "i2o.rel.xor",
    "i2o.rel.and",
    "i2o.rel.or",
    "i2o.rel.unique",
    "i2o.rel.isnull",
    "cj.sentence",
    "cj.first.delete",
    "cj.first.select",
    "cj.first.update",
    "cj.first.insert",
    "cj.first.insert_cols",
];

/// Renders statements to English using a validated vocabulary.
#[derive(Debug, Clone)]
pub struct Narrator {
    vocab: VocabularyMap,
}

impl Narrator {
    /// Build a narrator, verifying the vocabulary covers every template the
    /// renderer fills.
    pub fn new(vocab: VocabularyMap) -> Result<Self, VocabError> {
        vocab.require(REQUIRED_KEYS)?;
        Ok(Narrator { vocab })
    }

    /// Narrator over the embedded default vocabulary.
    pub fn with_default_vocabulary() -> Self {
        let vocab = VocabularyMap::parse(assets::VOCABULARY)
            .expect("embedded vocabulary is well-formed");
        Narrator::new(vocab).expect("embedded vocabulary covers every template")
    }

    fn fill(&self, key: &str, args: &[(&str, &str)]) -> String {
        self.vocab
            .fill(key, args)
            .expect("templates validated at construction use known placeholders")
    }

    /// Narrate a simple (non-nested) statement.
    pub fn narrate_simple(&self, stmt: &SqlStatement) -> Narration {
        let text = self.simple_text(stmt);
        Narration { style: Style::Simple, text, token_index: token_index(&stmt.to_string()) }
    }

    /// Narrate a nested statement in one style.
    pub fn narrate_nested(&self, query: &NestedQuery, style: NestedStyle) -> Narration {
        let text = match style {
            NestedStyle::OuterToInner => self.outer_to_inner(query),
            NestedStyle::InnerToOuter => self.inner_to_outer(query),
            NestedStyle::CoJoined => self.co_joined(query),
        };
        Narration { style: style.into(), text, token_index: token_index(&query.to_string()) }
    }

    /// Narrate a nested statement in all three styles, in [`NestedStyle::ALL`]
    /// order.
    pub fn narrate_all(&self, query: &NestedQuery) -> Vec<Narration> {
        NestedStyle::ALL.iter().map(|style| self.narrate_nested(query, *style)).collect()
    }

    fn simple_text(&self, stmt: &SqlStatement) -> String {
        match stmt {
            SqlStatement::CreateDatabase { name, .. } => {
                self.fill("create.database", &[("name", name)])
            }
            SqlStatement::CreateTable { name, columns, .. } => {
                let decls: Vec<String> =
                    columns.iter().map(|c| self.declaration(&c.name, &c.datatype)).collect();
                self.fill("create.table", &[("name", name), ("decls", &decls.join(", "))])
            }
            SqlStatement::DropDatabase { names, if_exists } => {
                self.drop_sentence(names, *if_exists, "database", "databases")
            }
            SqlStatement::DropTable { names, if_exists } => {
                self.drop_sentence(names, *if_exists, "table", "tables")
            }
            SqlStatement::AlterColumn { table, action, column, datatype } => {
                let action = match action {
                    AlterAction::Add => self.fill("alter.action.add", &[]),
                    AlterAction::Drop => self.fill("alter.action.drop", &[]),
                    AlterAction::Modify => self.fill("alter.action.modify", &[]),
                };
                let allows = match datatype {
                    DataType::Varchar(Some(n)) => {
                        self.fill("alter.allows.varchar", &[("n", &n.to_string())])
                    }
                    DataType::Varchar(None) => self.fill("alter.allows.varchar_any", &[]),
                    DataType::Int => self.fill("alter.allows.int", &[]),
                    DataType::Bool => self.fill("alter.allows.bool", &[]),
                    DataType::Float => self.fill("alter.allows.float", &[]),
                };
                self.fill(
                    "alter.sentence",
                    &[("table", table), ("action", &action), ("column", column), ("allows", &allows)],
                )
            }
            SqlStatement::RenameTable { from, to } => {
                self.fill("rename.sentence", &[("from", from), ("to", to)])
            }
            SqlStatement::Truncate { table } => {
                self.fill("truncate.sentence", &[("table", table)])
            }
            SqlStatement::Delete { table, condition } => {
                let clause = self.single_condition(condition);
                self.fill("delete.sentence", &[("table", table), ("where", &clause)])
            }
            SqlStatement::Insert { table, columns, values } => {
                let values: Vec<String> = values.iter().map(|v| v.bare()).collect();
                self.fill(
                    "insert.sentence",
                    &[
                        ("table", table),
                        ("columns", &columns.join(", ")),
                        ("values", &values.join(", ")),
                    ],
                )
            }
            SqlStatement::Update { table, set_column, set_value, condition } => {
                let clause = self.single_condition(condition);
                self.fill(
                    "update.sentence",
                    &[
                        ("column", set_column),
                        ("value", &set_value.to_string()),
                        ("table", table),
                        ("where", &clause),
                    ],
                )
            }
            SqlStatement::Select { projection, table, tail } => {
                self.select_text(projection, table, tail.as_ref())
            }
        }
    }

    fn drop_sentence(
        &self,
        names: &[String],
        if_exists: bool,
        singular: &str,
        plural: &str,
    ) -> String {
        let noun = if names.len() > 1 { plural } else { singular };
        let tail = if if_exists { self.fill("drop.exists_tail", &[]) } else { String::new() };
        self.fill(
            "drop.sentence",
            &[("names", &list_and(names)), ("noun", noun), ("tail", &tail)],
        )
    }

    fn declaration(&self, column: &str, datatype: &DataType) -> String {
        match datatype {
            DataType::Int => self.fill("decl.int", &[("column", column)]),
            DataType::Varchar(Some(n)) => {
                self.fill("decl.varchar", &[("column", column), ("n", &n.to_string())])
            }
            DataType::Varchar(None) => self.fill("decl.varchar_any", &[("column", column)]),
            DataType::Bool => self.fill("decl.bool", &[("column", column)]),
            DataType::Float => self.fill("decl.float", &[("column", column)]),
        }
    }

    fn select_text(
        &self,
        projection: &Projection,
        table: &str,
        tail: Option<&SelectTail>,
    ) -> String {
        if let Some(SelectTail::Having { group_column, count_column, op, threshold }) = tail {
            return self.fill(
                "having.sentence",
                &[
                    ("group", group_column),
                    ("table", table),
                    ("count", count_column),
                    ("op", op.english()),
                    ("n", &threshold.to_string()),
                ],
            );
        }
        let filter = match tail {
            Some(SelectTail::Where(f)) => Some(f),
            _ => None,
        };
        let subject = self.select_subject(projection, filter);
        let tail_text = match tail {
            None => String::new(),
            Some(SelectTail::Where(f)) => self.filter_phrase(f),
            Some(SelectTail::OrderBy { column, direction }) => {
                let direction = match direction {
                    None => String::new(),
                    Some(Direction::Asc) => self.fill("tail.order.asc", &[]),
                    Some(Direction::Desc) => self.fill("tail.order.desc", &[]),
                };
                self.fill("tail.order_by", &[("column", column), ("direction", &direction)])
            }
            Some(SelectTail::GroupBy { column }) => {
                self.fill("tail.group_by", &[("column", column)])
            }
            Some(SelectTail::Having { .. }) => unreachable!("handled above"),
        };
        self.fill(
            "select.sentence",
            &[("subject", &subject), ("table", table), ("tail", &tail_text)],
        )
    }

    fn select_subject(&self, projection: &Projection, filter: Option<&Filter>) -> String {
        match projection {
            Projection::All => match filter {
                None => self.fill("select.subject.all", &[]),
                Some(Filter::Pair(_, Conj::And, _)) => self.fill("select.subject.all_and", &[]),
                Some(_) => self.fill("select.subject.all_where", &[]),
            },
            Projection::Distinct(cols) => {
                self.fill("select.subject.distinct", &[("columns", &list_and(cols))])
            }
            Projection::Columns(cols) => {
                self.fill("select.subject.columns", &[("columns", &list_and(cols))])
            }
            Projection::Count(col) => self.fill("select.subject.count", &[("column", col)]),
        }
    }

    fn verb(&self, op: crate::ast::CompareOp) -> String {
        match op {
            crate::ast::CompareOp::Eq => "is".to_string(),
            other => format!("is {}", other.english()),
        }
    }

    fn single_condition(&self, cond: &CmpCond) -> String {
        self.fill(
            "where.single",
            &[
                ("column", &cond.column),
                ("verb", &self.verb(cond.op)),
                ("value", &cond.value.to_string()),
            ],
        )
    }

    fn filter_phrase(&self, filter: &Filter) -> String {
        match filter {
            Filter::Single(Condition::Cmp(c)) => self.single_condition(c),
            Filter::Single(Condition::In { column, values }) => {
                let values: Vec<String> = values.iter().map(Literal::to_string).collect();
                self.fill("where.in", &[("column", column), ("values", &values.join(", "))])
            }
            Filter::Single(Condition::Between { column, lo, hi }) => self.fill(
                "where.between",
                &[("column", column), ("lo", &lo.to_string()), ("hi", &hi.to_string())],
            ),
            Filter::Single(Condition::Like { column, pattern }) => self.fill(
                "where.like",
                &[("column", column), ("value", &format!("'{pattern}'"))],
            ),
            Filter::Pair(c1, conj, c2) => {
                let key = match conj {
                    Conj::And => "where.and",
                    Conj::Or => "where.or",
                };
                self.fill(
                    key,
                    &[
                        ("c1", &c1.column),
                        ("v1", &self.verb(c1.op)),
                        ("val1", &c1.value.to_string()),
                        ("c2", &c2.column),
                        ("v2", &self.verb(c2.op)),
                        ("val2", &c2.value.to_string()),
                    ],
                )
            }
            Filter::Negated(c) => {
                let rest = match c.op {
                    crate::ast::CompareOp::Eq => c.value.to_string(),
                    other => format!("{} {}", other.english(), c.value),
                };
                self.fill("where.not", &[("column", &c.column), ("rest", &rest)])
            }
        }
    }

    // --- nested styles ---

    fn nested_subject(&self, projection: &Projection) -> String {
        match projection {
            Projection::All => self.fill("nested.subject.all", &[]),
            Projection::Columns(cols) => {
                self.fill("nested.subject.columns", &[("columns", &list_and(cols))])
            }
            Projection::Distinct(cols) => {
                self.fill("nested.subject.distinct", &[("columns", &list_and(cols))])
            }
            Projection::Count(col) => {
                self.fill("nested.subject.columns", &[("columns", col)])
            }
        }
    }

    fn nested_where(&self, condition: Option<&CmpCond>) -> String {
        match condition {
            None => String::new(),
            Some(c) => self.fill(
                "nested.where",
                &[("column", &c.column), ("op", c.op.english()), ("value", &c.value.bare())],
            ),
        }
    }

    /// The outer clause may omit its link column when the inner clause has
    /// already spoken it verbatim (as the condition column or a projected
    /// column); otherwise the column must be voiced to keep the narration
    /// faithful to the statement.
    fn link_suffix(&self, link: &str, inner: &SelectSub) -> String {
        let in_condition = inner.condition.as_ref().is_some_and(|c| c.column == link);
        let in_projection = match &inner.projection {
            Projection::Columns(cols) | Projection::Distinct(cols) => {
                cols.iter().any(|c| c == link)
            }
            Projection::Count(col) => col == link,
            Projection::All => false,
        };
        if in_condition || in_projection {
            String::new()
        } else {
            self.fill("o2i.link", &[("column", link)])
        }
    }

    fn outer_to_inner(&self, query: &NestedQuery) -> String {
        let inner = query.inner();
        let inner_clause = self.fill(
            "o2i.inner",
            &[
                ("subject", &self.nested_subject(&inner.projection)),
                ("table", &inner.table),
                ("where", &self.nested_where(inner.condition.as_ref())),
            ],
        );
        let outer_clause = match query {
            NestedQuery::DeleteSub { table, where_column, .. } => self.fill(
                "o2i.outer.delete",
                &[("table", table), ("link", &self.link_suffix(where_column, inner))],
            ),
            NestedQuery::SelectSubQ { projection, table, in_column, .. } => self.fill(
                "o2i.outer.select",
                &[
                    ("subject", &self.nested_subject(projection)),
                    ("table", table),
                    ("link", &self.link_suffix(in_column, inner)),
                ],
            ),
            NestedQuery::UpdateSub { table, set_column, set_value, in_column, .. } => self.fill(
                "o2i.outer.update",
                &[
                    ("column", set_column),
                    ("value", &set_value.bare()),
                    ("table", table),
                    ("link", &self.link_suffix(in_column, inner)),
                ],
            ),
            NestedQuery::InsertSub { table, columns, .. } => {
                if columns.is_empty() {
                    self.fill("o2i.outer.insert", &[("table", table)])
                } else {
                    self.fill(
                        "o2i.outer.insert_cols",
                        &[("columns", &list_and(columns)), ("table", table)],
                    )
                }
            }
        };
        self.fill("o2i.sentence", &[("inner", &inner_clause), ("outer", &outer_clause)])
    }

    fn rel_phrase(&self, op: &NestedOp) -> String {
        match op {
            NestedOp::Logical(LogicalOp::In) => self.fill("i2o.rel.in", &[]),
            NestedOp::Logical(LogicalOp::Any) => self.fill("i2o.rel.any", &[]),
            NestedOp::Logical(LogicalOp::Exists) => self.fill("i2o.rel.exists", &[]),
            NestedOp::Logical(LogicalOp::Like) => self.fill("i2o.rel.like", &[]),
            NestedOp::Logical(LogicalOp::Between) => self.fill("i2o.rel.between", &[]),
            NestedOp::Logical(LogicalOp::Not) => self.fill("i2o.rel.not", &[]),
            NestedOp::Logical(LogicalOp::Xor) => self.fill("i2o.rel.xor", &[]),
            NestedOp::Logical(LogicalOp::And) => self.fill("i2o.rel.and", &[]),
            NestedOp::Logical(LogicalOp::Or) => self.fill("i2o.rel.or", &[]),
            NestedOp::Logical(LogicalOp::Unique) => self.fill("i2o.rel.unique", &[]),
            NestedOp::Logical(LogicalOp::IsNull) => self.fill("i2o.rel.isnull", &[]),
            NestedOp::Cmp(op) => self.fill("i2o.rel.cmp", &[("op", op.english())]),
        }
    }

    fn i2o_tail(&self, inner: &SelectSub, outer_table: &str) -> String {
        let from = if inner.table == outer_table {
            String::new()
        } else {
            self.fill("i2o.tail.from", &[("table", &inner.table)])
        };
        let cond = match &inner.condition {
            None => String::new(),
            Some(c) => self.fill(
                "i2o.tail.cond",
                &[("column", &c.column), ("op", c.op.english()), ("value", &c.value.bare())],
            ),
        };
        match &inner.projection {
            Projection::All => self.fill("i2o.tail.all", &[("from", &from), ("cond", &cond)]),
            Projection::Columns(cols) => self.fill(
                "i2o.tail",
                &[("columns", &list_and(cols)), ("from", &from), ("cond", &cond)],
            ),
            Projection::Distinct(cols) => self.fill(
                "i2o.tail.distinct",
                &[("columns", &list_and(cols)), ("from", &from), ("cond", &cond)],
            ),
            Projection::Count(col) => self.fill(
                "i2o.tail",
                &[("columns", col.as_str()), ("from", &from), ("cond", &cond)],
            ),
        }
    }

    fn inner_to_outer(&self, query: &NestedQuery) -> String {
        let inner = query.inner();
        let tail = self.i2o_tail(inner, query.outer_table());
        match query {
            NestedQuery::DeleteSub { table, where_column, op, .. } => {
                let core = self.fill("i2o.core.delete", &[("table", table)]);
                self.fill(
                    "i2o.sentence",
                    &[
                        ("core", &core),
                        ("column", where_column),
                        ("rel", &self.rel_phrase(op)),
                        ("tail", &tail),
                    ],
                )
            }
            NestedQuery::SelectSubQ { projection, table, in_column, .. } => {
                let core = self.fill(
                    "i2o.core.select",
                    &[("subject", &self.nested_subject(projection)), ("table", table)],
                );
                self.fill(
                    "i2o.sentence",
                    &[
                        ("core", &core),
                        ("column", in_column),
                        ("rel", &self.fill("i2o.rel.in", &[])),
                        ("tail", &tail),
                    ],
                )
            }
            NestedQuery::UpdateSub { table, set_column, set_value, in_column, .. } => {
                let core = self.fill(
                    "i2o.core.update",
                    &[("column", set_column), ("value", &set_value.bare()), ("table", table)],
                );
                self.fill(
                    "i2o.sentence",
                    &[
                        ("core", &core),
                        ("column", in_column),
                        ("rel", &self.fill("i2o.rel.in", &[])),
                        ("tail", &tail),
                    ],
                )
            }
            NestedQuery::InsertSub { table, columns, .. } => {
                let core = if columns.is_empty() {
                    self.fill("i2o.core.insert", &[("table", table)])
                } else {
                    self.fill(
                        "i2o.core.insert_cols",
                        &[("columns", &list_and(columns)), ("table", table)],
                    )
                };
                self.fill("i2o.insert.sentence", &[("core", &core), ("tail", &tail)])
            }
        }
    }

    fn co_joined(&self, query: &NestedQuery) -> String {
        let inner = query.inner();
        let first = match query {
            NestedQuery::DeleteSub { table, where_column, .. } => {
                self.fill("cj.first.delete", &[("table", table), ("column", where_column)])
            }
            NestedQuery::SelectSubQ { projection, table, in_column, .. } => self.fill(
                "cj.first.select",
                &[
                    ("subject", &self.nested_subject(projection)),
                    ("table", table),
                    ("column", in_column),
                ],
            ),
            NestedQuery::UpdateSub { table, set_column, set_value, in_column, .. } => self.fill(
                "cj.first.update",
                &[
                    ("set_column", set_column),
                    ("set_value", &set_value.bare()),
                    ("table", table),
                    ("column", in_column),
                ],
            ),
            NestedQuery::InsertSub { table, columns, .. } => {
                if columns.is_empty() {
                    self.fill("cj.first.insert", &[("table", table)])
                } else {
                    self.fill(
                        "cj.first.insert_cols",
                        &[("columns", &list_and(columns)), ("table", table)],
                    )
                }
            }
        };
        self.fill(
            "cj.sentence",
            &[
                ("first", &first),
                ("subject", &self.nested_subject(&inner.projection)),
                ("table", &inner.table),
                ("where", &self.nested_where(inner.condition.as_ref())),
            ],
        )
    }
}

/// Join names as prose: `a`, `a and b`, `a, b and c`.
fn list_and(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

/// Lexemes of a statement's canonical rendering, in source order.
fn token_index(canonical: &str) -> Vec<String> {
    tokenize(canonical)
        .expect("canonical statement renderings always lex")
        .into_iter()
        .map(|t| t.lexeme)
        .collect()
}

/// Canonical form for comparing narrations: lowercase, fold the wording
/// variants `almost`->`at most` and `character`->`characters`, strip
/// everything but letters, digits, underscores and spaces, and collapse
/// whitespace.
pub fn normalize(text: &str) -> String {
    let lowered = text.to_lowercase();
    let cleaned: String = lowered
        .chars()
        .filter(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == '_' || c.is_whitespace())
        .collect();
    let mut words: Vec<String> = Vec::new();
    for word in cleaned.split_whitespace() {
        match word {
            "almost" => {
                words.push("at".to_string());
                words.push("most".to_string());
            }
            "character" => words.push("characters".to_string()),
            other => words.push(other.to_string()),
        }
    }
    words.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::ColumnDef;
    use crate::nested::parse_nested;
    use crate::recognizer::{classify, Recognition};

    fn narrator() -> Narrator {
        Narrator::with_default_vocabulary()
    }

    fn narrate_sql(sql: &str) -> Narration {
        match classify(sql) {
            Recognition::Statement(stmt) => narrator().narrate_simple(&stmt),
            other => panic!("expected a simple statement for {sql}: {other:?}"),
        }
    }

    fn assert_narrates(sql: &str, expected: &str) {
        let narration = narrate_sql(sql);
        assert_eq!(
            normalize(&narration.text),
            normalize(expected),
            "sql: {sql}\nactual text: {}",
            narration.text
        );
    }

    #[test]
    fn alter_sentences() {
        assert_narrates(
            "ALTER TABLE supplier ADD COLUMN supplier_name varchar(255);",
            "This query alters the supplier table by adding a new column called supplier_name \
             that allows alphanumeric entry with at most 255 characters",
        );
        assert_narrates(
            "ALTER TABLE supplier DROP COLUMN supplier_name varchar(255);",
            "This query alters the supplier table by removing a new column called supplier_name \
             that allows alphanumeric entry with at most 255 characters",
        );
        assert_narrates(
            "ALTER TABLE supplier MODIFY COLUMN supplier_name varchar(255);",
            "This query alters the supplier table by modifying a new column called supplier_name \
             that allows alphanumeric entry with at most 255 characters",
        );
    }

    #[test]
    fn create_sentences() {
        assert_narrates(
            "CREATE DATABASE student_db;",
            "This query creates a database named student_db",
        );
        assert_narrates(
            "CREATE TABLE student_information (ID int, Firstname varchar(255), \
             Lastname varchar(255), Gender varchar(50), Address varchar(255));",
            "This query creates a table named student_information, and declares ID as an \
             integer, Firstname as an alphanumeric entry of almost 255 character, Lastname as \
             an alphanumeric entry of at most 255 characters, Gender as an alphanumeric entry \
             of at most 50 character, Address as an alphanumeric entry of at most 255 \
             characters.",
        );
    }

    #[test]
    fn drop_rename_truncate_sentences() {
        assert_narrates(
            "DROP DATABASE IF EXISTS student_information;",
            "This query erases the student_information database from the computer memory \
             given that it previously exists",
        );
        assert_narrates(
            "RENAME TABLE student_record TO student_information;",
            "This query renames the student_record table to student_information",
        );
        assert_narrates(
            "TRUNCATE TABLE student_information;",
            "This query empties the contents from the student_information table",
        );
    }

    #[test]
    fn delete_and_insert_sentences() {
        assert_narrates(
            "DELETE FROM student_information WHERE student_firstname = 'peter';",
            "This query removes from the student_information table where the \
             student_firstname is peter",
        );
        assert_narrates(
            "INSERT INTO student_information (FirstName, LastName, Address, City, PostalCode, \
             Country) VALUES ('Peter', 'Tom', '21 claim street', 'Rivonia', '2001', \
             'South Africa');",
            "This query adds into the student_information table into columns; FirstName, \
             LastName, Address, City, PostalCode, Country with details; Peter, Tom, \
             21 claim street, Rivonia, 2001, South Africa",
        );
    }

    #[test]
    fn select_sentences() {
        assert_narrates(
            "SELECT * FROM student_information;",
            "The query displays all information from the student_information table",
        );
        assert_narrates(
            "SELECT DISTINCT FirstName, LastName FROM student_information;",
            "The query displays only the distinct column - FirstName and LastName information \
             from the student_information table",
        );
        assert_narrates(
            "SELECT * FROM student_information WHERE FirstName = 'peter' AND LastName = 'mark';",
            "The query displays all the details from the student_information table where the \
             FirstName is 'peter', and the LastName is 'mark'",
        );
        assert_narrates(
            "SELECT * FROM Customers WHERE Country = 'South Africa' OR City = 'Harare';",
            "The query displays all the information from the Customers table where the Country \
             is 'South Africa', or City is Harare",
        );
        assert_narrates(
            "SELECT * FROM student_information WHERE FirstName IN ('peter', 'john', 'felix');",
            "The query displays all the information from the student_information table where \
             the FirstName are either 'peter', 'john', 'felix'",
        );
    }

    #[test]
    fn update_sentence_voices_every_identifier() {
        let narration = narrate_sql("UPDATE Student SET name = 'John' WHERE ID = 6;");
        for needle in ["Student", "name", "John", "ID", "6"] {
            assert!(narration.text.contains(needle), "missing {needle}: {}", narration.text);
        }
    }

    #[test]
    fn nested_delete_three_styles() {
        let sql = "DELETE FROM country WHERE city IN \
                   (SELECT city FROM country WHERE city = 'Pretoria');";
        let query = parse_nested(sql).unwrap();
        let narrator = narrator();
        let o2i = narrator.narrate_nested(&query, NestedStyle::OuterToInner);
        assert_eq!(
            normalize(&o2i.text),
            normalize(
                "This query displays the city information from the country table where the \
                 city is equal to Pretoria and removes the entire information from the \
                 country table."
            ),
            "actual: {}",
            o2i.text
        );
        let i2o = narrator.narrate_nested(&query, NestedStyle::InnerToOuter);
        assert_eq!(
            normalize(&i2o.text),
            normalize(
                "This query removes the information from the country table where the city is \
                 contained in the values retrieved from the inner query, which gets all the \
                 city information that has a city equal to Pretoria"
            ),
            "actual: {}",
            i2o.text
        );
        let cj = narrator.narrate_nested(&query, NestedStyle::CoJoined);
        assert_eq!(
            normalize(&cj.text),
            normalize(
                "This nested query contains two queries, where the first query removes the \
                 contents from the country table where the city appears in the second query \
                 which displays the city information from the country table where the city is \
                 equal to Pretoria"
            ),
            "actual: {}",
            cj.text
        );
    }

    #[test]
    fn narrate_all_returns_three_distinct_styles() {
        let query = parse_nested(
            "SELECT * FROM orders WHERE id IN (SELECT id FROM archive WHERE year = 2001);",
        )
        .unwrap();
        let narrations = narrator().narrate_all(&query);
        assert_eq!(narrations.len(), 3);
        assert_eq!(narrations[0].style, Style::OuterToInner);
        assert_eq!(narrations[1].style, Style::InnerToOuter);
        assert_eq!(narrations[2].style, Style::CoJoined);
        assert_ne!(narrations[0].text, narrations[1].text);
        assert_ne!(narrations[1].text, narrations[2].text);
        assert_ne!(narrations[0].text, narrations[2].text);
    }

    #[test]
    fn token_index_lists_canonical_lexemes() {
        let narration = narrate_sql("SELECT * FROM t;");
        assert_eq!(narration.token_index, vec!["SELECT", "*", "FROM", "t", ";"]);
    }

    #[test]
    fn totality_over_every_statement_shape() {
        let narrator = narrator();
        let statements = [
            "CREATE DATABASE d;",
            "CREATE TABLE t (a int, b varchar(10), c boolean, d float);",
            "DROP TABLE a, b;",
            "DROP DATABASE d;",
            "ALTER TABLE t ADD c int;",
            "RENAME TABLE a TO b;",
            "TRUNCATE t;",
            "DELETE FROM t WHERE a = 1;",
            "INSERT INTO t (a, b) VALUES (1, 'x');",
            "UPDATE t SET a = 2 WHERE b = 'y';",
            "SELECT COUNT(a) FROM t;",
            "SELECT a FROM t ORDER BY b DESC;",
            "SELECT * FROM t GROUP BY a;",
            "SELECT a, COUNT(b) FROM t GROUP BY a HAVING COUNT(b) > 3;",
            "SELECT * FROM t WHERE a BETWEEN 1 AND 5;",
            "SELECT * FROM t WHERE a LIKE 'p%';",
            "SELECT * FROM t WHERE NOT a = 1;",
            "SELECT * FROM t WHERE a > 1 AND b < 2;",
        ];
        for sql in statements {
            match classify(sql) {
                Recognition::Statement(stmt) => {
                    let narration = narrator.narrate_simple(&stmt);
                    assert!(!narration.text.is_empty(), "empty narration for {sql}");
                    assert!(!narration.token_index.is_empty());
                }
                other => panic!("setup: {sql} did not classify: {other:?}"),
            }
        }
    }

    #[test]
    fn faithfulness_and_length_for_nested_shapes() {
        let narrator = narrator();
        let sources = [
            "DELETE FROM t WHERE link IN (SELECT other FROM u WHERE k = 'v');",
            "DELETE FROM t WHERE link > (SELECT * FROM u);",
            "UPDATE t SET col = 7 WHERE link IN (SELECT link FROM u WHERE k = 2);",
            "INSERT INTO t (SELECT * FROM u WHERE k = 'v');",
            "INSERT INTO t (a, b) (SELECT a, b FROM u);",
            "SELECT DISTINCT a FROM t WHERE link IN (SELECT link FROM u WHERE a = 'x');",
        ];
        for sql in sources {
            let query = parse_nested(sql).unwrap();
            let mut pieces: Vec<String> = Vec::new();
            match &query {
                NestedQuery::DeleteSub { table, where_column, .. } => {
                    pieces.push(table.clone());
                    pieces.push(where_column.clone());
                }
                NestedQuery::UpdateSub { table, set_column, set_value, in_column, .. } => {
                    pieces.extend([table.clone(), set_column.clone(), set_value.bare(),
                        in_column.clone()]);
                }
                NestedQuery::InsertSub { table, columns, .. } => {
                    pieces.push(table.clone());
                    pieces.extend(columns.iter().cloned());
                }
                NestedQuery::SelectSubQ { table, in_column, projection, .. } => {
                    pieces.push(table.clone());
                    pieces.push(in_column.clone());
                    if let Projection::Columns(cols) | Projection::Distinct(cols) = projection {
                        pieces.extend(cols.iter().cloned());
                    }
                }
            }
            let inner = query.inner();
            pieces.push(inner.table.clone());
            if let Projection::Columns(cols) | Projection::Distinct(cols) = &inner.projection {
                pieces.extend(cols.iter().cloned());
            }
            if let Some(c) = &inner.condition {
                pieces.push(c.column.clone());
                pieces.push(c.value.bare());
            }
            for narration in narrator.narrate_all(&query) {
                for piece in &pieces {
                    assert!(
                        narration.text.contains(piece.as_str()),
                        "{:?} narration of {sql} lost {piece:?}: {}",
                        narration.style,
                        narration.text
                    );
                }
                let total: usize = pieces.iter().map(String::len).sum();
                assert!(
                    narration.text.len() >= total,
                    "narration shorter than its identifiers for {sql}"
                );
            }
        }
    }

    #[test]
    fn narration_is_deterministic() {
        let narrator = narrator();
        let stmt = SqlStatement::CreateTable {
            name: "t".into(),
            columns: vec![ColumnDef { name: "a".into(), datatype: DataType::Int }],
            if_not_exists: false,
        };
        assert_eq!(narrator.narrate_simple(&stmt), narrator.narrate_simple(&stmt));
    }

    #[test]
    fn missing_vocabulary_key_is_rejected_at_construction() {
        let err = Narrator::new(VocabularyMap::parse("a=1\n").unwrap()).unwrap_err();
        assert!(matches!(err, VocabError::MissingKey { .. }));
    }

    #[test]
    fn normalize_folds_variant_wording() {
        assert_eq!(normalize("Almost 255 CHARACTER,"), "at most 255 characters");
        assert_eq!(normalize("the 'peter' - value;"), "the peter value");
        assert_eq!(normalize("a  b\tc"), "a b c");
    }

    #[test]
    fn update_condition_verb_reflects_operator() {
        let narration = narrate_sql("UPDATE t SET a = 1 WHERE b >= 2;");
        assert!(
            narration.text.contains("is greater than or equal to 2"),
            "actual: {}",
            narration.text
        );
    }
}

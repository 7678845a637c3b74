//! Abstract syntax for the simple-SQL dialect and the one-level nested forms.
//!
//! Every node renders to a canonical textual form — single spaces, uppercase
//! keywords, lowercase type names, identifiers verbatim, trailing semicolon —
//! via [`std::fmt::Display`]. Rendering then re-classifying is a fixed point.

use std::fmt;

/// A typed literal value.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
}

impl Literal {
    /// Render without quoting (for prose contexts).
    pub fn bare(&self) -> String {
        match self {
            Literal::Int(n) => n.to_string(),
            Literal::Float(x) => format_float(*x),
            Literal::Bool(b) => b.to_string(),
            Literal::Str(s) => s.clone(),
        }
    }
}

/// Format a float so it always re-lexes as a FloatNumber (never as an int).
pub fn format_float(x: f64) -> String {
    if x.fract() == 0.0 {
        format!("{x:.1}")
    } else {
        format!("{x}")
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(n) => write!(f, "{n}"),
            Literal::Float(x) => write!(f, "{}", format_float(*x)),
            Literal::Bool(b) => write!(f, "{b}"),
            Literal::Str(s) => write!(f, "'{s}'"),
        }
    }
}

/// Column data types of the dialect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataType {
    Int,
    Varchar(Option<u32>),
    Bool,
    Float,
}

impl fmt::Display for DataType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataType::Int => write!(f, "int"),
            DataType::Varchar(Some(n)) => write!(f, "varchar({n})"),
            DataType::Varchar(None) => write!(f, "varchar"),
            DataType::Bool => write!(f, "bool"),
            DataType::Float => write!(f, "float"),
        }
    }
}

impl DataType {
    /// Parse a type name as written in SQL (`boolean` and `integer` accepted
    /// as aliases; canonical rendering is `bool` / `int`).
    pub fn parse(name: &str, width: Option<u32>) -> Option<DataType> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "int" | "integer" => Some(DataType::Int),
            "varchar" => Some(DataType::Varchar(width)),
            "bool" | "boolean" => Some(DataType::Bool),
            "float" => Some(DataType::Float),
            _ => None,
        }
    }
}

/// One column declaration in CREATE TABLE / ALTER.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnDef {
    pub name: String,
    pub datatype: DataType,
}

impl fmt::Display for ColumnDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.name, self.datatype)
    }
}

/// Binary comparison operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Gt,
    Lt,
    Ne,
    NotLt,
    NotGt,
    Ge,
    Le,
    NeAngle,
}

impl CompareOp {
    pub const ALL: [CompareOp; 9] = [
        CompareOp::Eq,
        CompareOp::Gt,
        CompareOp::Lt,
        CompareOp::Ne,
        CompareOp::NotLt,
        CompareOp::NotGt,
        CompareOp::Ge,
        CompareOp::Le,
        CompareOp::NeAngle,
    ];

    pub fn symbol(&self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::Gt => ">",
            CompareOp::Lt => "<",
            CompareOp::Ne => "!=",
            CompareOp::NotLt => "!<",
            CompareOp::NotGt => "!>",
            CompareOp::Ge => ">=",
            CompareOp::Le => "<=",
            CompareOp::NeAngle => "<>",
        }
    }

    pub fn parse(sym: &str) -> Option<CompareOp> {
        CompareOp::ALL.iter().copied().find(|op| op.symbol() == sym)
    }

    /// English rendering without a leading verb ("equal to", "greater than").
    pub fn english(&self) -> &'static str {
        match self {
            CompareOp::Eq => "equal to",
            CompareOp::Gt => "greater than",
            CompareOp::Lt => "less than",
            CompareOp::Ne | CompareOp::NeAngle => "not equal to",
            CompareOp::NotLt => "not less than",
            CompareOp::NotGt => "not greater than",
            CompareOp::Ge => "greater than or equal to",
            CompareOp::Le => "less than or equal to",
        }
    }
}

impl fmt::Display for CompareOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Word-shaped logical operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicalOp {
    And,
    Or,
    Any,
    Like,
    Not,
    Between,
    Exists,
    In,
    Xor,
    IsNull,
    Unique,
}

impl LogicalOp {
    pub fn word(&self) -> &'static str {
        match self {
            LogicalOp::And => "AND",
            LogicalOp::Or => "OR",
            LogicalOp::Any => "ANY",
            LogicalOp::Like => "LIKE",
            LogicalOp::Not => "NOT",
            LogicalOp::Between => "BETWEEN",
            LogicalOp::Exists => "EXISTS",
            LogicalOp::In => "IN",
            LogicalOp::Xor => "XOR",
            LogicalOp::IsNull => "IS NULL",
            LogicalOp::Unique => "UNIQUE",
        }
    }

    pub fn parse(word: &str) -> Option<LogicalOp> {
        let upper = word.to_ascii_uppercase();
        [
            LogicalOp::And,
            LogicalOp::Or,
            LogicalOp::Any,
            LogicalOp::Like,
            LogicalOp::Not,
            LogicalOp::Between,
            LogicalOp::Exists,
            LogicalOp::In,
            LogicalOp::Xor,
            LogicalOp::IsNull,
            LogicalOp::Unique,
        ]
        .into_iter()
        .find(|op| op.word() == upper)
    }
}

impl fmt::Display for LogicalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// What a SELECT projects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Columns(Vec<String>),
    Distinct(Vec<String>),
    Count(String),
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projection::All => write!(f, "*"),
            Projection::Columns(cols) => write!(f, "{}", cols.join(", ")),
            Projection::Distinct(cols) => write!(f, "DISTINCT {}", cols.join(", ")),
            Projection::Count(col) => write!(f, "COUNT({col})"),
        }
    }
}

/// A single `column op literal` comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CmpCond {
    pub column: String,
    pub op: CompareOp,
    pub value: Literal,
}

impl fmt::Display for CmpCond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.column, self.op, self.value)
    }
}

/// One WHERE condition of a simple statement.
#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    Cmp(CmpCond),
    In { column: String, values: Vec<Literal> },
    Between { column: String, lo: Literal, hi: Literal },
    Like { column: String, pattern: String },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Cmp(c) => write!(f, "{c}"),
            Condition::In { column, values } => {
                let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "{column} IN ({})", vals.join(", "))
            }
            Condition::Between { column, lo, hi } => {
                write!(f, "{column} BETWEEN {lo} AND {hi}")
            }
            Condition::Like { column, pattern } => write!(f, "{column} LIKE '{pattern}'"),
        }
    }
}

/// Conjunction of a two-condition filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conj {
    And,
    Or,
}

impl fmt::Display for Conj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conj::And => write!(f, "AND"),
            Conj::Or => write!(f, "OR"),
        }
    }
}

/// The WHERE clause of a simple SELECT/-like statement: one condition, one
/// conjunction of two comparisons, or one negated comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Filter {
    Single(Condition),
    Pair(CmpCond, Conj, CmpCond),
    Negated(CmpCond),
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Single(c) => write!(f, "{c}"),
            Filter::Pair(a, conj, b) => write!(f, "{a} {conj} {b}"),
            Filter::Negated(c) => write!(f, "NOT {c}"),
        }
    }
}

/// Sort direction for ORDER BY.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Asc,
    Desc,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Asc => write!(f, "ASC"),
            Direction::Desc => write!(f, "DESC"),
        }
    }
}

/// The tail of a simple SELECT: either a WHERE filter or exactly one
/// modifier. The dialect's patterns never combine them.
#[derive(Debug, Clone, PartialEq)]
pub enum SelectTail {
    Where(Filter),
    OrderBy { column: String, direction: Option<Direction> },
    GroupBy { column: String },
    /// `SELECT g, COUNT(c) FROM t GROUP BY g HAVING COUNT(c) op n;`
    Having { group_column: String, count_column: String, op: CompareOp, threshold: i64 },
}

/// A simple (non-nested) statement.
#[derive(Debug, Clone, PartialEq)]
pub enum SqlStatement {
    CreateDatabase { name: String, if_not_exists: bool },
    CreateTable { name: String, columns: Vec<ColumnDef>, if_not_exists: bool },
    DropDatabase { names: Vec<String>, if_exists: bool },
    DropTable { names: Vec<String>, if_exists: bool },
    AlterColumn { table: String, action: AlterAction, column: String, datatype: DataType },
    RenameTable { from: String, to: String },
    Truncate { table: String },
    Insert { table: String, columns: Vec<String>, values: Vec<Literal> },
    Update { table: String, set_column: String, set_value: Literal, condition: CmpCond },
    Delete { table: String, condition: CmpCond },
    Select { projection: Projection, table: String, tail: Option<SelectTail> },
}

/// The three column actions of ALTER.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlterAction {
    Add,
    Drop,
    Modify,
}

impl AlterAction {
    pub fn keyword(&self) -> &'static str {
        match self {
            AlterAction::Add => "ADD",
            AlterAction::Drop => "DROP",
            AlterAction::Modify => "MODIFY",
        }
    }
}

impl SqlStatement {
    /// Construct an INSERT, rejecting empty or mismatched column/value lists.
    pub fn insert(
        table: impl Into<String>,
        columns: Vec<String>,
        values: Vec<Literal>,
    ) -> Result<SqlStatement, AstError> {
        if columns.is_empty() {
            return Err(AstError::EmptyInsertColumns);
        }
        if columns.len() != values.len() {
            return Err(AstError::InsertArityMismatch {
                columns: columns.len(),
                values: values.len(),
            });
        }
        Ok(SqlStatement::Insert { table: table.into(), columns, values })
    }

    /// The single table this statement targets (the first name for DROP lists).
    pub fn table_name(&self) -> &str {
        match self {
            SqlStatement::CreateDatabase { name, .. } => name,
            SqlStatement::CreateTable { name, .. } => name,
            SqlStatement::DropDatabase { names, .. } => &names[0],
            SqlStatement::DropTable { names, .. } => &names[0],
            SqlStatement::AlterColumn { table, .. } => table,
            SqlStatement::RenameTable { from, .. } => from,
            SqlStatement::Truncate { table } => table,
            SqlStatement::Insert { table, .. } => table,
            SqlStatement::Update { table, .. } => table,
            SqlStatement::Delete { table, .. } => table,
            SqlStatement::Select { table, .. } => table,
        }
    }
}

/// AST construction errors.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AstError {
    #[error("INSERT requires at least one column")]
    EmptyInsertColumns,
    #[error("INSERT has {columns} columns but {values} values")]
    InsertArityMismatch { columns: usize, values: usize },
}

impl fmt::Display for SqlStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SqlStatement::CreateDatabase { name, if_not_exists } => {
                if *if_not_exists {
                    write!(f, "CREATE DATABASE IF NOT EXISTS {name};")
                } else {
                    write!(f, "CREATE DATABASE {name};")
                }
            }
            SqlStatement::CreateTable { name, columns, if_not_exists } => {
                let cols: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
                if *if_not_exists {
                    write!(f, "CREATE TABLE IF NOT EXISTS {name} ({});", cols.join(", "))
                } else {
                    write!(f, "CREATE TABLE {name} ({});", cols.join(", "))
                }
            }
            SqlStatement::DropDatabase { names, if_exists } => {
                if *if_exists {
                    write!(f, "DROP DATABASE IF EXISTS {};", names.join(", "))
                } else {
                    write!(f, "DROP DATABASE {};", names.join(", "))
                }
            }
            SqlStatement::DropTable { names, if_exists } => {
                if *if_exists {
                    write!(f, "DROP TABLE IF EXISTS {};", names.join(", "))
                } else {
                    write!(f, "DROP TABLE {};", names.join(", "))
                }
            }
            SqlStatement::AlterColumn { table, action, column, datatype } => {
                write!(
                    f,
                    "ALTER TABLE {table} {} COLUMN {column} {datatype};",
                    action.keyword()
                )
            }
            SqlStatement::RenameTable { from, to } => {
                write!(f, "RENAME TABLE {from} TO {to};")
            }
            SqlStatement::Truncate { table } => write!(f, "TRUNCATE TABLE {table};"),
            SqlStatement::Insert { table, columns, values } => {
                let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(
                    f,
                    "INSERT INTO {table} ({}) VALUES ({});",
                    columns.join(", "),
                    vals.join(", ")
                )
            }
            SqlStatement::Update { table, set_column, set_value, condition } => {
                write!(f, "UPDATE {table} SET {set_column} = {set_value} WHERE {condition};")
            }
            SqlStatement::Delete { table, condition } => {
                write!(f, "DELETE FROM {table} WHERE {condition};")
            }
            SqlStatement::Select { projection, table, tail } => {
                match tail {
                    None => write!(f, "SELECT {projection} FROM {table};"),
                    Some(SelectTail::Where(filter)) => {
                        write!(f, "SELECT {projection} FROM {table} WHERE {filter};")
                    }
                    Some(SelectTail::OrderBy { column, direction }) => match direction {
                        Some(dir) => write!(
                            f,
                            "SELECT {projection} FROM {table} ORDER BY {column} {dir};"
                        ),
                        None => {
                            write!(f, "SELECT {projection} FROM {table} ORDER BY {column};")
                        }
                    },
                    Some(SelectTail::GroupBy { column }) => {
                        write!(f, "SELECT {projection} FROM {table} GROUP BY {column};")
                    }
                    Some(SelectTail::Having { group_column, count_column, op, threshold }) => {
                        write!(
                            f,
                            "SELECT {group_column}, COUNT({count_column}) FROM {table} \
                             GROUP BY {group_column} HAVING COUNT({count_column}) {op} {threshold};"
                        )
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Nested (one-level) queries
// ---------------------------------------------------------------------------

/// The inner SELECT of a nested query: projection, table, and an optional
/// single comparison (mandatory under the strict grammar).
#[derive(Debug, Clone, PartialEq)]
pub struct SelectSub {
    pub projection: Projection,
    pub table: String,
    pub condition: Option<CmpCond>,
}

impl fmt::Display for SelectSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.condition {
            Some(cond) => write!(f, "SELECT {} FROM {} WHERE {cond}", self.projection, self.table),
            None => write!(f, "SELECT {} FROM {}", self.projection, self.table),
        }
    }
}

/// The operator linking an outer DELETE to its subquery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NestedOp {
    Cmp(CompareOp),
    Logical(LogicalOp),
}

impl fmt::Display for NestedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedOp::Cmp(op) => write!(f, "{op}"),
            NestedOp::Logical(op) => write!(f, "{op}"),
        }
    }
}

/// A statement embedding exactly one SELECT subquery.
#[derive(Debug, Clone, PartialEq)]
pub enum NestedQuery {
    UpdateSub {
        table: String,
        set_column: String,
        set_op: CompareOp,
        set_value: Literal,
        in_column: String,
        inner: SelectSub,
    },
    DeleteSub {
        table: String,
        where_column: String,
        op: NestedOp,
        inner: SelectSub,
    },
    InsertSub {
        table: String,
        columns: Vec<String>,
        inner: SelectSub,
    },
    SelectSubQ {
        projection: Projection,
        table: String,
        in_column: String,
        inner: SelectSub,
    },
}

impl NestedQuery {
    pub fn inner(&self) -> &SelectSub {
        match self {
            NestedQuery::UpdateSub { inner, .. }
            | NestedQuery::DeleteSub { inner, .. }
            | NestedQuery::InsertSub { inner, .. }
            | NestedQuery::SelectSubQ { inner, .. } => inner,
        }
    }

    pub fn outer_table(&self) -> &str {
        match self {
            NestedQuery::UpdateSub { table, .. }
            | NestedQuery::DeleteSub { table, .. }
            | NestedQuery::InsertSub { table, .. }
            | NestedQuery::SelectSubQ { table, .. } => table,
        }
    }
}

impl fmt::Display for NestedQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedQuery::UpdateSub { table, set_column, set_op, set_value, in_column, inner } => {
                write!(
                    f,
                    "UPDATE {table} SET {set_column} {set_op} {set_value} \
                     WHERE {in_column} IN ({inner});"
                )
            }
            NestedQuery::DeleteSub { table, where_column, op, inner } => {
                write!(f, "DELETE FROM {table} WHERE {where_column} {op} ({inner});")
            }
            NestedQuery::InsertSub { table, columns, inner } => {
                write!(f, "INSERT INTO {table} ({}) ({inner});", columns.join(", "))
            }
            NestedQuery::SelectSubQ { projection, table, in_column, inner } => {
                write!(f, "SELECT {projection} FROM {table} WHERE {in_column} IN ({inner});")
            }
        }
    }
}

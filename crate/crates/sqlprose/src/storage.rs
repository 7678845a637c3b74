//! In-memory typed relational store: a schema file describes tables, CSV
//! fixtures seed them, and recognized statements execute against the live
//! data. Nested statements run in two phases — the inner query is fully
//! materialized before the outer statement touches any row.

use crate::assets;
use crate::ast::{
    format_float, AlterAction, CmpCond, ColumnDef, CompareOp, Condition, Conj, DataType,
    Direction, Filter, Literal, NestedOp, NestedQuery, Projection, SelectSub, SelectTail,
    SqlStatement,
};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// One stored cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl Value {
    /// Type tag used in error messages.
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Float(_) => "float",
            Value::Bool(_) => "bool",
            Value::Text(_) => "text",
            Value::Null => "null",
        }
    }

    fn from_literal(lit: &Literal) -> Value {
        match lit {
            Literal::Int(i) => Value::Int(*i),
            Literal::Float(x) => Value::Float(*x),
            Literal::Bool(b) => Value::Bool(*b),
            Literal::Str(s) => Value::Text(s.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => f.write_str(&format_float(*x)),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => f.write_str(s),
            Value::Null => Ok(()),
        }
    }
}

/// Declared shape of one table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableDef {
    pub name: String,
    pub columns: Vec<ColumnDef>,
    pub primary_key: Option<String>,
}

impl TableDef {
    /// Case-insensitive column lookup.
    pub fn column(&self, name: &str) -> Option<(usize, &ColumnDef)> {
        self.columns
            .iter()
            .enumerate()
            .find(|(_, c)| c.name.eq_ignore_ascii_case(name))
    }
}

/// A set of table definitions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Schema {
    pub tables: Vec<TableDef>,
}

impl Schema {
    /// Case-insensitive table lookup.
    pub fn table(&self, name: &str) -> Option<&TableDef> {
        self.tables.iter().find(|t| t.name.eq_ignore_ascii_case(name))
    }

    /// Names of every table, in declaration order.
    pub fn table_names(&self) -> Vec<&str> {
        self.tables.iter().map(|t| t.name.as_str()).collect()
    }

    /// Names of the tables that declare `column`, in declaration order.
    pub fn tables_with_column(&self, column: &str) -> Vec<&str> {
        self.tables
            .iter()
            .filter(|t| t.column(column).is_some())
            .map(|t| t.name.as_str())
            .collect()
    }
}

/// Schema-file problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: duplicate table {name:?}")]
    DuplicateTable { line: usize, name: String },
    #[error("line {line}: duplicate column {name:?} in table {table:?}")]
    DuplicateColumn { line: usize, table: String, name: String },
    #[error("line {line}: primary key {name:?} is not a column of table {table:?}")]
    UnknownPkColumn { line: usize, table: String, name: String },
}

/// Parse the schema format: `table NAME`, then `column NAME TYPE` and an
/// optional `pk NAME` per table; blank lines and `#` comments are skipped.
pub fn load_schema(text: &str) -> Result<Schema, SchemaError> {
    let mut schema = Schema::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed =
            |reason: &str| SchemaError::Malformed { line, reason: reason.to_string() };
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        match words.as_slice() {
            ["table", name] => {
                if schema.table(name).is_some() {
                    return Err(SchemaError::DuplicateTable { line, name: (*name).to_string() });
                }
                schema.tables.push(TableDef {
                    name: (*name).to_string(),
                    columns: Vec::new(),
                    primary_key: None,
                });
            }
            ["column", name, typetext] => {
                let datatype =
                    parse_type(typetext).ok_or_else(|| malformed("unknown column type"))?;
                let table =
                    schema.tables.last_mut().ok_or_else(|| malformed("column before table"))?;
                if table.columns.iter().any(|c| c.name.eq_ignore_ascii_case(name)) {
                    return Err(SchemaError::DuplicateColumn {
                        line,
                        table: table.name.clone(),
                        name: (*name).to_string(),
                    });
                }
                table.columns.push(ColumnDef { name: (*name).to_string(), datatype });
            }
            ["pk", name] => {
                let table = schema.tables.last_mut().ok_or_else(|| malformed("pk before table"))?;
                if !table.columns.iter().any(|c| c.name.eq_ignore_ascii_case(name)) {
                    return Err(SchemaError::UnknownPkColumn {
                        line,
                        table: table.name.clone(),
                        name: (*name).to_string(),
                    });
                }
                table.primary_key = Some((*name).to_string());
            }
            _ => return Err(malformed("expected table, column or pk")),
        }
    }
    Ok(schema)
}

fn parse_type(text: &str) -> Option<DataType> {
    let (name, width) = match text.split_once('(') {
        Some((name, rest)) => {
            let digits = rest.strip_suffix(')')?;
            (name, Some(digits.parse().ok()?))
        }
        None => (text, None),
    };
    DataType::parse(name, width)
}

/// Statement outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum ExecResult {
    /// A result set with its column headers.
    Rows { header: Vec<String>, rows: Vec<Vec<Value>> },
    /// Rows touched by a mutation.
    Affected { count: usize },
    /// A database or table came into existence.
    Created,
    /// A database or table was removed.
    Dropped,
}

impl ExecResult {
    /// Row count of a result set, if this is one.
    pub fn row_count(&self) -> Option<usize> {
        match self {
            ExecResult::Rows { rows, .. } => Some(rows.len()),
            _ => None,
        }
    }

    /// Affected-row count, if this is a mutation outcome.
    pub fn affected(&self) -> Option<usize> {
        match self {
            ExecResult::Affected { count } => Some(*count),
            _ => None,
        }
    }
}

/// Execution failure.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExecError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unknown column {column:?} in table {table:?}")]
    UnknownColumn { table: String, column: String },
    #[error("type mismatch for {table}.{column}: expected {expected}, got {got}")]
    TypeMismatch { table: String, column: String, expected: String, got: String },
    #[error("table {0:?} already exists")]
    DuplicateTable(String),
    #[error("column {column:?} already exists in table {table:?}")]
    DuplicateColumn { table: String, column: String },
    #[error("database {0:?} already exists")]
    DuplicateDatabase(String),
    #[error("unknown database {0:?}")]
    UnknownDatabase(String),
    #[error("expected {expected} values, got {got}")]
    ValueCountMismatch { expected: usize, got: usize },
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("fixture for table {table:?}, record {record}: {reason}")]
    BadFixture { table: String, record: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
struct Table {
    def: TableDef,
    rows: Vec<Vec<Value>>,
}

/// The live store: named databases plus tables with rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Database {
    databases: BTreeSet<String>,
    tables: Vec<Table>,
}

impl Database {
    /// Empty store.
    pub fn new() -> Self {
        Database::default()
    }

    /// Store with every table of `schema`, all empty.
    pub fn from_schema(schema: &Schema) -> Self {
        Database {
            databases: BTreeSet::new(),
            tables: schema
                .tables
                .iter()
                .map(|def| Table { def: def.clone(), rows: Vec::new() })
                .collect(),
        }
    }

    /// The embedded school sample: lecturer, student and class tables with
    /// their fixture rows.
    pub fn school() -> Self {
        let schema = load_schema(assets::SCHOOL_SCHEMA).expect("embedded schema is well-formed");
        let mut db = Database::from_schema(&schema);
        for (table, csv) in [
            ("lecturer", assets::SCHOOL_LECTURER_CSV),
            ("student", assets::SCHOOL_STUDENT_CSV),
            ("class", assets::SCHOOL_CLASS_CSV),
        ] {
            db.seed(table, csv).expect("embedded fixtures match the schema");
        }
        db
    }

    /// Current schema of the store.
    pub fn schema(&self) -> Schema {
        Schema { tables: self.tables.iter().map(|t| t.def.clone()).collect() }
    }

    /// Number of rows in `table`.
    pub fn row_count(&self, table: &str) -> Result<usize, ExecError> {
        Ok(self.table(table)?.rows.len())
    }

    fn table(&self, name: &str) -> Result<&Table, ExecError> {
        self.tables
            .iter()
            .find(|t| t.def.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| ExecError::UnknownTable(name.to_string()))
    }

    fn table_mut(&mut self, name: &str) -> Result<&mut Table, ExecError> {
        self.tables
            .iter_mut()
            .find(|t| t.def.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| ExecError::UnknownTable(name.to_string()))
    }

    /// Load CSV rows into `table`. The header must name the table's columns
    /// in order (case-insensitively); empty cells become NULL. Returns the
    /// number of rows added.
    pub fn seed(&mut self, table: &str, csv_text: &str) -> Result<usize, ExecError> {
        let name = self.table(table)?.def.name.clone();
        let def = self.table(table)?.def.clone();
        let bad = |record: usize, reason: String| ExecError::BadFixture {
            table: name.clone(),
            record,
            reason,
        };
        let mut reader = csv::ReaderBuilder::new().from_reader(csv_text.as_bytes());
        let headers = reader.headers().map_err(|e| bad(0, e.to_string()))?.clone();
        if headers.len() != def.columns.len() {
            return Err(bad(
                0,
                format!("header has {} fields, table has {}", headers.len(), def.columns.len()),
            ));
        }
        for (field, column) in headers.iter().zip(&def.columns) {
            if !field.eq_ignore_ascii_case(&column.name) {
                return Err(bad(0, format!("header field {field:?} is not column {:?}", column.name)));
            }
        }
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| bad(i + 1, e.to_string()))?;
            let mut row = Vec::with_capacity(def.columns.len());
            for (cell, column) in record.iter().zip(&def.columns) {
                row.push(parse_cell(cell, &column.datatype).map_err(|reason| bad(i + 1, reason))?);
            }
            rows.push(row);
        }
        let added = rows.len();
        self.table_mut(table)?.rows.extend(rows);
        Ok(added)
    }

    /// Render `table` as CSV, NULLs as empty cells.
    pub fn dump(&self, table: &str) -> Result<String, ExecError> {
        let table = self.table(table)?;
        let mut writer = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> = table.def.columns.iter().map(|c| c.name.as_str()).collect();
        writer.serialize(&header).expect("writing to a Vec cannot fail");
        for row in &table.rows {
            let cells: Vec<String> = row.iter().map(Value::to_string).collect();
            writer.serialize(&cells).expect("writing to a Vec cannot fail");
        }
        let bytes = writer.into_inner().expect("writer flushes cleanly");
        Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
    }

    /// Execute one simple statement.
    pub fn execute(&mut self, stmt: &SqlStatement) -> Result<ExecResult, ExecError> {
        match stmt {
            SqlStatement::CreateDatabase { name, if_not_exists } => {
                if !self.databases.insert(name.clone()) && !if_not_exists {
                    return Err(ExecError::DuplicateDatabase(name.clone()));
                }
                Ok(ExecResult::Created)
            }
            SqlStatement::DropDatabase { names, if_exists } => {
                for name in names {
                    if !self.databases.remove(name) && !if_exists {
                        return Err(ExecError::UnknownDatabase(name.clone()));
                    }
                }
                Ok(ExecResult::Dropped)
            }
            SqlStatement::CreateTable { name, columns, if_not_exists } => {
                if self.table(name).is_ok() {
                    return if *if_not_exists {
                        Ok(ExecResult::Created)
                    } else {
                        Err(ExecError::DuplicateTable(name.clone()))
                    };
                }
                self.tables.push(Table {
                    def: TableDef {
                        name: name.clone(),
                        columns: columns.clone(),
                        primary_key: None,
                    },
                    rows: Vec::new(),
                });
                Ok(ExecResult::Created)
            }
            SqlStatement::DropTable { names, if_exists } => {
                for name in names {
                    let before = self.tables.len();
                    self.tables.retain(|t| !t.def.name.eq_ignore_ascii_case(name));
                    if self.tables.len() == before && !if_exists {
                        return Err(ExecError::UnknownTable(name.clone()));
                    }
                }
                Ok(ExecResult::Dropped)
            }
            SqlStatement::AlterColumn { table, action, column, datatype } => {
                self.alter(table, *action, column, datatype)
            }
            SqlStatement::RenameTable { from, to } => {
                if self.table(to).is_ok() {
                    return Err(ExecError::DuplicateTable(to.clone()));
                }
                self.table_mut(from)?.def.name = to.clone();
                Ok(ExecResult::Affected { count: 0 })
            }
            SqlStatement::Truncate { table } => {
                let table = self.table_mut(table)?;
                let count = table.rows.len();
                table.rows.clear();
                Ok(ExecResult::Affected { count })
            }
            SqlStatement::Insert { table, columns, values } => self.insert(table, columns, values),
            SqlStatement::Update { table, set_column, set_value, condition } => {
                self.update(table, set_column, set_value, condition)
            }
            SqlStatement::Delete { table, condition } => self.delete(table, condition),
            SqlStatement::Select { projection, table, tail } => {
                self.select(projection, table, tail.as_ref())
            }
        }
    }

    fn alter(
        &mut self,
        table: &str,
        action: AlterAction,
        column: &str,
        datatype: &DataType,
    ) -> Result<ExecResult, ExecError> {
        let table = self.table_mut(table)?;
        let count = table.rows.len();
        match action {
            AlterAction::Add => {
                if table.def.column(column).is_some() {
                    return Err(ExecError::DuplicateColumn {
                        table: table.def.name.clone(),
                        column: column.to_string(),
                    });
                }
                table.def.columns.push(ColumnDef {
                    name: column.to_string(),
                    datatype: datatype.clone(),
                });
                for row in &mut table.rows {
                    row.push(Value::Null);
                }
            }
            AlterAction::Drop => {
                let (idx, _) = table.def.column(column).ok_or_else(|| ExecError::UnknownColumn {
                    table: table.def.name.clone(),
                    column: column.to_string(),
                })?;
                table.def.columns.remove(idx);
                for row in &mut table.rows {
                    row.remove(idx);
                }
            }
            AlterAction::Modify => {
                let (idx, _) = table.def.column(column).ok_or_else(|| ExecError::UnknownColumn {
                    table: table.def.name.clone(),
                    column: column.to_string(),
                })?;
                for row in &table.rows {
                    if !modifiable(&row[idx], datatype) {
                        return Err(ExecError::TypeMismatch {
                            table: table.def.name.clone(),
                            column: column.to_string(),
                            expected: datatype.to_string(),
                            got: row[idx].type_name().to_string(),
                        });
                    }
                }
                for row in &mut table.rows {
                    if let (Value::Int(i), DataType::Float) = (&row[idx], datatype) {
                        row[idx] = Value::Float(*i as f64);
                    }
                }
                table.def.columns[idx].datatype = datatype.clone();
            }
        }
        Ok(ExecResult::Affected { count })
    }

    fn insert(
        &mut self,
        table: &str,
        columns: &[String],
        values: &[Literal],
    ) -> Result<ExecResult, ExecError> {
        let def = self.table(table)?.def.clone();
        let mut row = vec![Value::Null; def.columns.len()];
        for (column, value) in columns.iter().zip(values) {
            let (idx, col) = def.column(column).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: column.clone(),
            })?;
            row[idx] = coerce(value, &col.datatype).ok_or_else(|| ExecError::TypeMismatch {
                table: def.name.clone(),
                column: col.name.clone(),
                expected: col.datatype.to_string(),
                got: Value::from_literal(value).type_name().to_string(),
            })?;
        }
        self.table_mut(table)?.rows.push(row);
        Ok(ExecResult::Affected { count: 1 })
    }

    fn update(
        &mut self,
        table: &str,
        set_column: &str,
        set_value: &Literal,
        condition: &CmpCond,
    ) -> Result<ExecResult, ExecError> {
        let def = self.table(table)?.def.clone();
        let (set_idx, set_col) =
            def.column(set_column).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: set_column.to_string(),
            })?;
        let new_value =
            coerce(set_value, &set_col.datatype).ok_or_else(|| ExecError::TypeMismatch {
                table: def.name.clone(),
                column: set_col.name.clone(),
                expected: set_col.datatype.to_string(),
                got: Value::from_literal(set_value).type_name().to_string(),
            })?;
        let test = compile_cmp(&def, condition)?;
        let table = self.table_mut(table)?;
        let mut count = 0;
        for row in &mut table.rows {
            if test.matches(row) {
                row[set_idx] = new_value.clone();
                count += 1;
            }
        }
        Ok(ExecResult::Affected { count })
    }

    fn delete(&mut self, table: &str, condition: &CmpCond) -> Result<ExecResult, ExecError> {
        let def = self.table(table)?.def.clone();
        let test = compile_cmp(&def, condition)?;
        let table = self.table_mut(table)?;
        let before = table.rows.len();
        table.rows.retain(|row| !test.matches(row));
        Ok(ExecResult::Affected { count: before - table.rows.len() })
    }

    fn select(
        &self,
        projection: &Projection,
        table: &str,
        tail: Option<&SelectTail>,
    ) -> Result<ExecResult, ExecError> {
        let table = self.table(table)?;
        let def = &table.def;
        match tail {
            Some(SelectTail::GroupBy { column }) => {
                return group_rows(def, &table.rows, column, None);
            }
            Some(SelectTail::Having { group_column, count_column, op, threshold }) => {
                return group_rows(
                    def,
                    &table.rows,
                    group_column,
                    Some((count_column.as_str(), *op, *threshold)),
                );
            }
            _ => {}
        }
        let mut rows: Vec<Vec<Value>> = match tail {
            Some(SelectTail::Where(filter)) => {
                let test = compile_filter(def, filter)?;
                table.rows.iter().filter(|row| test.matches(row)).cloned().collect()
            }
            _ => table.rows.clone(),
        };
        if let Some(SelectTail::OrderBy { column, direction }) = tail {
            let (idx, _) = def.column(column).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: column.clone(),
            })?;
            rows.sort_by(|a, b| order_values(&a[idx], &b[idx]));
            if *direction == Some(Direction::Desc) {
                rows.reverse();
            }
        }
        project(def, rows, projection)
    }

    /// Execute a nested statement in two phases: materialize the inner
    /// query's result against the current state, then apply the outer
    /// statement using only that materialized set.
    pub fn execute_nested(&mut self, query: &NestedQuery) -> Result<ExecResult, ExecError> {
        match query {
            NestedQuery::DeleteSub { table, where_column, op, inner } => {
                let values = self.inner_values(inner, where_column)?;
                let def = self.table(table)?.def.clone();
                let (idx, _) = def.column(where_column).ok_or_else(|| {
                    ExecError::UnknownColumn {
                        table: def.name.clone(),
                        column: where_column.clone(),
                    }
                })?;
                let keep = nested_keeper(op, &values)?;
                let table = self.table_mut(table)?;
                let before = table.rows.len();
                table.rows.retain(|row| keep(&row[idx]));
                Ok(ExecResult::Affected { count: before - table.rows.len() })
            }
            NestedQuery::SelectSubQ { projection, table, in_column, inner } => {
                let values = self.inner_values(inner, in_column)?;
                let table = self.table(table)?;
                let def = &table.def;
                let (idx, _) = def.column(in_column).ok_or_else(|| ExecError::UnknownColumn {
                    table: def.name.clone(),
                    column: in_column.clone(),
                })?;
                let rows: Vec<Vec<Value>> = table
                    .rows
                    .iter()
                    .filter(|row| values.iter().any(|v| value_eq(&row[idx], v)))
                    .cloned()
                    .collect();
                project(def, rows, projection)
            }
            NestedQuery::UpdateSub { table, set_column, set_value, in_column, inner, .. } => {
                let values = self.inner_values(inner, in_column)?;
                let def = self.table(table)?.def.clone();
                let (set_idx, set_col) =
                    def.column(set_column).ok_or_else(|| ExecError::UnknownColumn {
                        table: def.name.clone(),
                        column: set_column.clone(),
                    })?;
                let new_value = coerce(set_value, &set_col.datatype).ok_or_else(|| {
                    ExecError::TypeMismatch {
                        table: def.name.clone(),
                        column: set_col.name.clone(),
                        expected: set_col.datatype.to_string(),
                        got: Value::from_literal(set_value).type_name().to_string(),
                    }
                })?;
                let (idx, _) = def.column(in_column).ok_or_else(|| ExecError::UnknownColumn {
                    table: def.name.clone(),
                    column: in_column.clone(),
                })?;
                let table = self.table_mut(table)?;
                let mut count = 0;
                for row in &mut table.rows {
                    if values.iter().any(|v| value_eq(&row[idx], v)) {
                        row[set_idx] = new_value.clone();
                        count += 1;
                    }
                }
                Ok(ExecResult::Affected { count })
            }
            NestedQuery::InsertSub { table, columns, inner } => {
                let (_, source_rows) = self.inner_rows(inner)?;
                let def = self.table(table)?.def.clone();
                let targets: Vec<usize> = if columns.is_empty() {
                    (0..def.columns.len()).collect()
                } else {
                    columns
                        .iter()
                        .map(|c| {
                            def.column(c).map(|(i, _)| i).ok_or_else(|| {
                                ExecError::UnknownColumn {
                                    table: def.name.clone(),
                                    column: c.clone(),
                                }
                            })
                        })
                        .collect::<Result<_, _>>()?
                };
                let mut new_rows = Vec::with_capacity(source_rows.len());
                for source in &source_rows {
                    if source.len() != targets.len() {
                        return Err(ExecError::ValueCountMismatch {
                            expected: targets.len(),
                            got: source.len(),
                        });
                    }
                    let mut row = vec![Value::Null; def.columns.len()];
                    for (&target, value) in targets.iter().zip(source) {
                        let col = &def.columns[target];
                        row[target] =
                            adopt(value, &col.datatype).ok_or_else(|| ExecError::TypeMismatch {
                                table: def.name.clone(),
                                column: col.name.clone(),
                                expected: col.datatype.to_string(),
                                got: value.type_name().to_string(),
                            })?;
                    }
                    new_rows.push(row);
                }
                let count = new_rows.len();
                self.table_mut(table)?.rows.extend(new_rows);
                Ok(ExecResult::Affected { count })
            }
        }
    }

    /// Phase one for single-column membership: evaluate the inner query and
    /// keep the column named like the outer link (for `*`), or the first
    /// projected column.
    fn inner_values(&self, inner: &SelectSub, link: &str) -> Result<Vec<Value>, ExecError> {
        let (header, rows) = self.inner_rows(inner)?;
        if rows.is_empty() {
            return Ok(Vec::new());
        }
        let idx = header
            .iter()
            .position(|h| h.eq_ignore_ascii_case(link))
            .unwrap_or(0);
        Ok(rows.into_iter().map(|mut row| row.swap_remove(idx)).collect())
    }

    /// Evaluate an inner query to its full result set.
    fn inner_rows(&self, inner: &SelectSub) -> Result<(Vec<String>, Vec<Vec<Value>>), ExecError> {
        let table = self.table(&inner.table)?;
        let def = &table.def;
        let rows: Vec<Vec<Value>> = match &inner.condition {
            Some(cond) => {
                let test = compile_cmp(def, cond)?;
                table.rows.iter().filter(|row| test.matches(row)).cloned().collect()
            }
            None => table.rows.clone(),
        };
        match project(def, rows, &inner.projection)? {
            ExecResult::Rows { header, rows } => Ok((header, rows)),
            _ => unreachable!("projection always yields rows"),
        }
    }
}

/// Whether a stored value survives an ALTER MODIFY to `datatype`.
fn modifiable(value: &Value, datatype: &DataType) -> bool {
    matches!(
        (value, datatype),
        (Value::Null, _)
            | (Value::Int(_), DataType::Int)
            | (Value::Int(_), DataType::Float)
            | (Value::Float(_), DataType::Float)
            | (Value::Bool(_), DataType::Bool)
            | (Value::Text(_), DataType::Varchar(_))
    )
}

/// Convert a literal into a stored value of the column's type.
fn coerce(lit: &Literal, datatype: &DataType) -> Option<Value> {
    match (lit, datatype) {
        (Literal::Int(i), DataType::Int) => Some(Value::Int(*i)),
        (Literal::Int(i), DataType::Float) => Some(Value::Float(*i as f64)),
        (Literal::Float(x), DataType::Float) => Some(Value::Float(*x)),
        (Literal::Bool(b), DataType::Bool) => Some(Value::Bool(*b)),
        (Literal::Str(s), DataType::Varchar(_)) => Some(Value::Text(s.clone())),
        _ => None,
    }
}

/// Convert an already-stored value for insertion into a column of
/// `datatype`, coercing ints into float columns.
fn adopt(value: &Value, datatype: &DataType) -> Option<Value> {
    match (value, datatype) {
        (Value::Null, _) => Some(Value::Null),
        (Value::Int(i), DataType::Int) => Some(Value::Int(*i)),
        (Value::Int(i), DataType::Float) => Some(Value::Float(*i as f64)),
        (Value::Float(x), DataType::Float) => Some(Value::Float(*x)),
        (Value::Bool(b), DataType::Bool) => Some(Value::Bool(*b)),
        (Value::Text(s), DataType::Varchar(_)) => Some(Value::Text(s.clone())),
        _ => None,
    }
}

fn parse_cell(cell: &str, datatype: &DataType) -> Result<Value, String> {
    if cell.is_empty() {
        return Ok(Value::Null);
    }
    match datatype {
        DataType::Int => cell
            .parse()
            .map(Value::Int)
            .map_err(|_| format!("{cell:?} is not an integer")),
        DataType::Float => cell
            .parse()
            .map(Value::Float)
            .map_err(|_| format!("{cell:?} is not a float")),
        DataType::Bool => match cell {
            "true" => Ok(Value::Bool(true)),
            "false" => Ok(Value::Bool(false)),
            _ => Err(format!("{cell:?} is not a boolean")),
        },
        DataType::Varchar(_) => Ok(Value::Text(cell.to_string())),
    }
}

/// Equality with int/float coercion; NULL equals nothing.
pub fn value_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => x == y,
        (Value::Float(x), Value::Float(y)) => x == y,
        (Value::Int(x), Value::Float(y)) | (Value::Float(y), Value::Int(x)) => *x as f64 == *y,
        (Value::Bool(x), Value::Bool(y)) => x == y,
        (Value::Text(x), Value::Text(y)) => x == y,
        _ => false,
    }
}

/// Ordering comparison; returns None for NULLs or mixed types.
fn cmp_values(a: &Value, b: &Value) -> Option<Ordering> {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Some(x.cmp(y)),
        (Value::Float(x), Value::Float(y)) => x.partial_cmp(y),
        (Value::Int(x), Value::Float(y)) => (*x as f64).partial_cmp(y),
        (Value::Float(x), Value::Int(y)) => x.partial_cmp(&(*y as f64)),
        (Value::Text(x), Value::Text(y)) => Some(x.cmp(y)),
        (Value::Bool(x), Value::Bool(y)) => Some(x.cmp(y)),
        _ => None,
    }
}

/// Total ordering for ORDER BY: NULL first, then by type tag, then value.
fn order_values(a: &Value, b: &Value) -> Ordering {
    fn rank(v: &Value) -> u8 {
        match v {
            Value::Null => 0,
            Value::Bool(_) => 1,
            Value::Int(_) | Value::Float(_) => 2,
            Value::Text(_) => 3,
        }
    }
    rank(a).cmp(&rank(b)).then_with(|| cmp_values(a, b).unwrap_or(Ordering::Equal))
}

fn apply_cmp(op: CompareOp, row: &Value, lit: &Value) -> bool {
    if matches!(row, Value::Null) || matches!(lit, Value::Null) {
        return false;
    }
    match op {
        CompareOp::Eq => value_eq(row, lit),
        CompareOp::Ne | CompareOp::NeAngle => !value_eq(row, lit),
        CompareOp::Gt => cmp_values(row, lit) == Some(Ordering::Greater),
        CompareOp::Lt => cmp_values(row, lit) == Some(Ordering::Less),
        CompareOp::Ge => matches!(cmp_values(row, lit), Some(Ordering::Greater | Ordering::Equal)),
        CompareOp::Le => matches!(cmp_values(row, lit), Some(Ordering::Less | Ordering::Equal)),
        // "not less than" and "not greater than" read as >= and <=.
        CompareOp::NotLt => matches!(cmp_values(row, lit), Some(Ordering::Greater | Ordering::Equal)),
        CompareOp::NotGt => matches!(cmp_values(row, lit), Some(Ordering::Less | Ordering::Equal)),
    }
}

/// `%` matches any run of characters; everything else is literal.
fn like_match(text: &str, pattern: &str) -> bool {
    fn inner(text: &[char], pattern: &[char]) -> bool {
        match pattern.split_first() {
            None => text.is_empty(),
            Some(('%', rest)) => {
                (0..=text.len()).any(|skip| inner(&text[skip..], rest))
            }
            Some((c, rest)) => text.split_first().is_some_and(|(t, ts)| t == c && inner(ts, rest)),
        }
    }
    let text: Vec<char> = text.chars().collect();
    let pattern: Vec<char> = pattern.chars().collect();
    inner(&text, &pattern)
}

struct CompiledCmp {
    idx: usize,
    op: CompareOp,
    value: Value,
}

impl CompiledCmp {
    fn matches(&self, row: &[Value]) -> bool {
        apply_cmp(self.op, &row[self.idx], &self.value)
    }
}

enum CompiledCond {
    Cmp(CompiledCmp),
    In { idx: usize, values: Vec<Value> },
    Between { idx: usize, lo: Value, hi: Value },
    Like { idx: usize, pattern: String },
}

impl CompiledCond {
    fn matches(&self, row: &[Value]) -> bool {
        match self {
            CompiledCond::Cmp(c) => c.matches(row),
            CompiledCond::In { idx, values } => {
                values.iter().any(|v| value_eq(&row[*idx], v))
            }
            CompiledCond::Between { idx, lo, hi } => {
                apply_cmp(CompareOp::Ge, &row[*idx], lo) && apply_cmp(CompareOp::Le, &row[*idx], hi)
            }
            CompiledCond::Like { idx, pattern } => match &row[*idx] {
                Value::Text(s) => like_match(s, pattern),
                _ => false,
            },
        }
    }
}

enum CompiledFilter {
    Single(CompiledCond),
    Pair(CompiledCmp, Conj, CompiledCmp),
    Negated(CompiledCmp),
}

impl CompiledFilter {
    fn matches(&self, row: &[Value]) -> bool {
        match self {
            CompiledFilter::Single(c) => c.matches(row),
            CompiledFilter::Pair(a, Conj::And, b) => a.matches(row) && b.matches(row),
            CompiledFilter::Pair(a, Conj::Or, b) => a.matches(row) || b.matches(row),
            // A NULL never satisfies a comparison, negated or not.
            CompiledFilter::Negated(c) => {
                !matches!(&row[c.idx], Value::Null) && !c.matches(row)
            }
        }
    }
}

fn lookup(def: &TableDef, column: &str) -> Result<(usize, DataType), ExecError> {
    let (idx, col) = def.column(column).ok_or_else(|| ExecError::UnknownColumn {
        table: def.name.clone(),
        column: column.to_string(),
    })?;
    Ok((idx, col.datatype.clone()))
}

fn typed_value(def: &TableDef, column: &str, lit: &Literal) -> Result<(usize, Value), ExecError> {
    let (idx, datatype) = lookup(def, column)?;
    let value = coerce(lit, &datatype).ok_or_else(|| ExecError::TypeMismatch {
        table: def.name.clone(),
        column: column.to_string(),
        expected: datatype.to_string(),
        got: Value::from_literal(lit).type_name().to_string(),
    })?;
    Ok((idx, value))
}

fn compile_cmp(def: &TableDef, cond: &CmpCond) -> Result<CompiledCmp, ExecError> {
    let (idx, value) = typed_value(def, &cond.column, &cond.value)?;
    Ok(CompiledCmp { idx, op: cond.op, value })
}

fn compile_filter(def: &TableDef, filter: &Filter) -> Result<CompiledFilter, ExecError> {
    Ok(match filter {
        Filter::Single(Condition::Cmp(c)) => {
            CompiledFilter::Single(CompiledCond::Cmp(compile_cmp(def, c)?))
        }
        Filter::Single(Condition::In { column, values }) => {
            let mut idx = 0;
            let mut compiled = Vec::with_capacity(values.len());
            for value in values {
                let (i, v) = typed_value(def, column, value)?;
                idx = i;
                compiled.push(v);
            }
            if values.is_empty() {
                idx = lookup(def, column)?.0;
            }
            CompiledFilter::Single(CompiledCond::In { idx, values: compiled })
        }
        Filter::Single(Condition::Between { column, lo, hi }) => {
            let (idx, lo) = typed_value(def, column, lo)?;
            let (_, hi) = typed_value(def, column, hi)?;
            CompiledFilter::Single(CompiledCond::Between { idx, lo, hi })
        }
        Filter::Single(Condition::Like { column, pattern }) => {
            let (idx, _) = lookup(def, column)?;
            CompiledFilter::Single(CompiledCond::Like { idx, pattern: pattern.clone() })
        }
        Filter::Pair(a, conj, b) => {
            CompiledFilter::Pair(compile_cmp(def, a)?, *conj, compile_cmp(def, b)?)
        }
        Filter::Negated(c) => CompiledFilter::Negated(compile_cmp(def, c)?),
    })
}

/// Membership predicate for nested DELETE: which rows to keep.
fn nested_keeper<'a>(
    op: &NestedOp,
    values: &'a [Value],
) -> Result<Box<dyn Fn(&Value) -> bool + 'a>, ExecError> {
    match op {
        NestedOp::Logical(crate::ast::LogicalOp::In)
        | NestedOp::Logical(crate::ast::LogicalOp::Any)
        | NestedOp::Cmp(CompareOp::Eq) => {
            Ok(Box::new(move |v| !values.iter().any(|w| value_eq(v, w))))
        }
        NestedOp::Logical(crate::ast::LogicalOp::Exists) => {
            let delete_all = !values.is_empty();
            Ok(Box::new(move |_| !delete_all))
        }
        other => Err(ExecError::Unsupported(format!("operator {other} with a subquery"))),
    }
}

fn project(
    def: &TableDef,
    rows: Vec<Vec<Value>>,
    projection: &Projection,
) -> Result<ExecResult, ExecError> {
    let pick = |cols: &[String]| -> Result<(Vec<String>, Vec<usize>), ExecError> {
        let mut header = Vec::with_capacity(cols.len());
        let mut indices = Vec::with_capacity(cols.len());
        for col in cols {
            let (idx, c) = def.column(col).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: col.clone(),
            })?;
            header.push(c.name.clone());
            indices.push(idx);
        }
        Ok((header, indices))
    };
    match projection {
        Projection::All => {
            let header = def.columns.iter().map(|c| c.name.clone()).collect();
            Ok(ExecResult::Rows { header, rows })
        }
        Projection::Columns(cols) => {
            let (header, indices) = pick(cols)?;
            let rows = rows
                .into_iter()
                .map(|row| indices.iter().map(|&i| row[i].clone()).collect())
                .collect();
            Ok(ExecResult::Rows { header, rows })
        }
        Projection::Distinct(cols) => {
            let (header, indices) = pick(cols)?;
            let mut seen: Vec<Vec<Value>> = Vec::new();
            for row in rows {
                let projected: Vec<Value> = indices.iter().map(|&i| row[i].clone()).collect();
                if !seen.contains(&projected) {
                    seen.push(projected);
                }
            }
            Ok(ExecResult::Rows { header, rows: seen })
        }
        Projection::Count(col) => {
            let (idx, c) = def.column(col).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: col.clone(),
            })?;
            let count = rows.iter().filter(|row| !matches!(row[idx], Value::Null)).count();
            Ok(ExecResult::Rows {
                header: vec![format!("COUNT({})", c.name)],
                rows: vec![vec![Value::Int(count as i64)]],
            })
        }
    }
}

/// GROUP BY and HAVING: one output row per distinct group value, counting
/// either all rows (plain GROUP BY) or non-null values of the counted column
/// (HAVING), filtered by the optional threshold.
fn group_rows(
    def: &TableDef,
    rows: &[Vec<Value>],
    group_column: &str,
    having: Option<(&str, CompareOp, i64)>,
) -> Result<ExecResult, ExecError> {
    let (group_idx, group_col) =
        def.column(group_column).ok_or_else(|| ExecError::UnknownColumn {
            table: def.name.clone(),
            column: group_column.to_string(),
        })?;
    let counted = match having {
        Some((count_column, _, _)) => {
            let (idx, col) = def.column(count_column).ok_or_else(|| ExecError::UnknownColumn {
                table: def.name.clone(),
                column: count_column.to_string(),
            })?;
            Some((idx, col.name.clone()))
        }
        None => None,
    };
    let mut groups: Vec<(Value, i64)> = Vec::new();
    for row in rows {
        let key = &row[group_idx];
        let add = match &counted {
            Some((idx, _)) => i64::from(!matches!(row[*idx], Value::Null)),
            None => 1,
        };
        match groups.iter_mut().find(|(k, _)| k == key) {
            Some((_, count)) => *count += add,
            None => groups.push((key.clone(), add)),
        }
    }
    if let Some((_, op, threshold)) = having {
        groups.retain(|(_, count)| apply_cmp(op, &Value::Int(*count), &Value::Int(threshold)));
    }
    let count_header = match &counted {
        Some((_, name)) => format!("COUNT({name})"),
        None => "count".to_string(),
    };
    Ok(ExecResult::Rows {
        header: vec![group_col.name.clone(), count_header],
        rows: groups.into_iter().map(|(k, c)| vec![k, Value::Int(c)]).collect(),
    })
}

/// Convenience: classify one statement text (simple or nested) and execute it.
pub fn run_sql(db: &mut Database, sql: &str) -> Result<ExecResult, ExecError> {
    match crate::recognizer::classify(sql) {
        crate::recognizer::Recognition::Statement(stmt) => db.execute(&stmt),
        crate::recognizer::Recognition::NestedDetected => {
            match crate::nested::parse_nested(sql) {
                Ok(query) => db.execute_nested(&query),
                Err(e) => Err(ExecError::Unsupported(e.to_string())),
            }
        }
        crate::recognizer::Recognition::NotRecognized { reason } => {
            Err(ExecError::Unsupported(reason))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognizer::{classify, Recognition};

    fn stmt(sql: &str) -> SqlStatement {
        match classify(sql) {
            Recognition::Statement(s) => s,
            other => panic!("setup: {sql} did not classify: {other:?}"),
        }
    }

    fn nested(sql: &str) -> NestedQuery {
        crate::nested::parse_nested(sql).unwrap()
    }

    #[test]
    fn school_fixture_matches_documented_shape() {
        let db = Database::school();
        let schema = db.schema();
        assert_eq!(schema.table_names(), vec!["lecturer", "student", "class"]);
        assert_eq!(db.row_count("student").unwrap(), 6);
        assert_eq!(db.row_count("lecturer").unwrap(), 2);
        assert_eq!(db.row_count("class").unwrap(), 0);
    }

    #[test]
    fn select_star_returns_all_rows() {
        let mut db = Database::school();
        let result = db.execute(&stmt("SELECT * FROM student;")).unwrap();
        match result {
            ExecResult::Rows { header, rows } => {
                assert_eq!(header, vec!["id", "name", "age"]);
                assert_eq!(rows.len(), 6);
            }
            other => panic!("wrong result: {other:?}"),
        }
    }

    #[test]
    fn select_is_idempotent() {
        let mut db = Database::school();
        let q = stmt("SELECT name, age FROM student;");
        let first = db.execute(&q).unwrap();
        let second = db.execute(&q).unwrap();
        assert_eq!(first, second);
        assert_eq!(first.row_count(), Some(6));
    }

    #[test]
    fn insert_delete_conserve_rows() {
        let mut db = Database::school();
        let before = db.row_count("lecturer").unwrap();
        let added = db
            .execute(&stmt("INSERT INTO lecturer (id, name) VALUES (3, 'Mary');"))
            .unwrap();
        assert_eq!(added, ExecResult::Affected { count: 1 });
        assert_eq!(db.row_count("lecturer").unwrap(), before + 1);
        let removed = db.execute(&stmt("DELETE FROM lecturer WHERE name = 'Mary';")).unwrap();
        assert_eq!(removed, ExecResult::Affected { count: 1 });
        assert_eq!(db.row_count("lecturer").unwrap(), before);
    }

    #[test]
    fn update_touches_only_matching_rows() {
        let mut db = Database::school();
        let result = db.execute(&stmt("UPDATE student SET name = 'John' WHERE id = 6;")).unwrap();
        assert_eq!(result, ExecResult::Affected { count: 1 });
        let rows = db.execute(&stmt("SELECT name FROM student WHERE id = 6;")).unwrap();
        assert_eq!(
            rows,
            ExecResult::Rows {
                header: vec!["name".into()],
                rows: vec![vec![Value::Text("John".into())]],
            }
        );
    }

    #[test]
    fn case_insensitive_table_and_column_lookup() {
        let mut db = Database::school();
        let result = db.execute(&stmt("SELECT NAME FROM Student WHERE ID = 1;")).unwrap();
        assert_eq!(result.row_count(), Some(1));
    }

    #[test]
    fn unknown_table_and_column_errors() {
        let mut db = Database::school();
        assert_eq!(
            db.execute(&stmt("SELECT * FROM missing;")),
            Err(ExecError::UnknownTable("missing".into()))
        );
        assert_eq!(
            db.execute(&stmt("SELECT nope FROM student;")),
            Err(ExecError::UnknownColumn { table: "student".into(), column: "nope".into() })
        );
    }

    #[test]
    fn type_mismatch_is_reported() {
        let mut db = Database::school();
        let err = db.execute(&stmt("INSERT INTO lecturer (id, name) VALUES ('x', 'y');"));
        assert_eq!(
            err,
            Err(ExecError::TypeMismatch {
                table: "lecturer".into(),
                column: "id".into(),
                expected: "int".into(),
                got: "text".into(),
            })
        );
        let err = db.execute(&stmt("SELECT * FROM student WHERE age = 'old';"));
        assert!(matches!(err, Err(ExecError::TypeMismatch { .. })));
    }

    #[test]
    fn create_and_drop_table() {
        let mut db = Database::new();
        assert_eq!(db.execute(&stmt("CREATE TABLE t (a int);")), Ok(ExecResult::Created));
        assert_eq!(
            db.execute(&stmt("CREATE TABLE t (a int);")),
            Err(ExecError::DuplicateTable("t".into()))
        );
        assert_eq!(db.execute(&stmt("DROP TABLE t;")), Ok(ExecResult::Dropped));
        assert_eq!(
            db.execute(&stmt("DROP TABLE t;")),
            Err(ExecError::UnknownTable("t".into()))
        );
        assert_eq!(db.execute(&stmt("DROP TABLE IF EXISTS t;")), Ok(ExecResult::Dropped));
    }

    #[test]
    fn create_and_drop_database_registry() {
        let mut db = Database::new();
        assert_eq!(db.execute(&stmt("CREATE DATABASE d;")), Ok(ExecResult::Created));
        assert_eq!(
            db.execute(&stmt("CREATE DATABASE d;")),
            Err(ExecError::DuplicateDatabase("d".into()))
        );
        assert_eq!(db.execute(&stmt("DROP DATABASE d;")), Ok(ExecResult::Dropped));
        assert_eq!(
            db.execute(&stmt("DROP DATABASE d;")),
            Err(ExecError::UnknownDatabase("d".into()))
        );
        assert_eq!(db.execute(&stmt("DROP DATABASE IF EXISTS d;")), Ok(ExecResult::Dropped));
    }

    #[test]
    fn alter_add_drop_modify() {
        let mut db = Database::school();
        db.execute(&stmt("ALTER TABLE lecturer ADD COLUMN office varchar(20);")).unwrap();
        let rows = db.execute(&stmt("SELECT office FROM lecturer;")).unwrap();
        assert_eq!(
            rows,
            ExecResult::Rows {
                header: vec!["office".into()],
                rows: vec![vec![Value::Null], vec![Value::Null]],
            }
        );
        db.execute(&stmt("ALTER TABLE lecturer MODIFY COLUMN id float;")).unwrap();
        let rows = db.execute(&stmt("SELECT id FROM lecturer;")).unwrap();
        assert_eq!(
            rows,
            ExecResult::Rows {
                header: vec!["id".into()],
                rows: vec![vec![Value::Float(1.0)], vec![Value::Float(2.0)]],
            }
        );
        db.execute(&stmt("ALTER TABLE lecturer DROP COLUMN office varchar(20);")).unwrap();
        assert!(db.execute(&stmt("SELECT office FROM lecturer;")).is_err());
    }

    #[test]
    fn rename_and_truncate() {
        let mut db = Database::school();
        db.execute(&stmt("RENAME TABLE class TO classroom;")).unwrap();
        assert!(db.row_count("class").is_err());
        assert_eq!(db.row_count("classroom").unwrap(), 0);
        let result = db.execute(&stmt("TRUNCATE TABLE student;")).unwrap();
        assert_eq!(result, ExecResult::Affected { count: 6 });
        assert_eq!(db.row_count("student").unwrap(), 0);
    }

    #[test]
    fn filters_pairs_in_between_like_not() {
        let mut db = Database::school();
        let count = |db: &mut Database, sql: &str| {
            db.execute(&stmt(sql)).unwrap().row_count().unwrap()
        };
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE age > 21 AND age < 24;"), 3);
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE age = 20 OR age = 24;"), 2);
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE name IN ('Paul', 'Li');"), 2);
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE age BETWEEN 21 AND 23;"), 4);
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE name LIKE 'P%';"), 2);
        assert_eq!(count(&mut db, "SELECT * FROM student WHERE NOT age = 23;"), 4);
    }

    #[test]
    fn order_by_group_by_having_count_distinct() {
        let mut db = Database::school();
        let result = db.execute(&stmt("SELECT name FROM student ORDER BY age;")).unwrap();
        match result {
            ExecResult::Rows { rows, .. } => {
                let names: Vec<String> = rows.iter().map(|r| r[0].to_string()).collect();
                assert_eq!(names, vec!["John", "Peter", "Li", "Paul", "Smith", "Doe"]);
            }
            other => panic!("wrong result: {other:?}"),
        }
        let result = db.execute(&stmt("SELECT name FROM student ORDER BY age DESC;")).unwrap();
        match result {
            ExecResult::Rows { rows, .. } => assert_eq!(rows[0][0], Value::Text("Doe".into())),
            other => panic!("wrong result: {other:?}"),
        }
        let result = db.execute(&stmt("SELECT * FROM student GROUP BY age;")).unwrap();
        match result {
            ExecResult::Rows { header, rows } => {
                assert_eq!(header, vec!["age", "count"]);
                assert_eq!(rows.len(), 5);
                assert!(rows.contains(&vec![Value::Int(23), Value::Int(2)]));
            }
            other => panic!("wrong result: {other:?}"),
        }
        let result = db
            .execute(&stmt(
                "SELECT age, COUNT(name) FROM student GROUP BY age HAVING COUNT(name) > 1;",
            ))
            .unwrap();
        assert_eq!(
            result,
            ExecResult::Rows {
                header: vec!["age".into(), "COUNT(name)".into()],
                rows: vec![vec![Value::Int(23), Value::Int(2)]],
            }
        );
        let result = db.execute(&stmt("SELECT COUNT(name) FROM student;")).unwrap();
        assert_eq!(
            result,
            ExecResult::Rows {
                header: vec!["COUNT(name)".into()],
                rows: vec![vec![Value::Int(6)]],
            }
        );
        db.execute(&stmt("INSERT INTO student (id, name, age) VALUES (7, 'Li', 30);")).unwrap();
        let result = db.execute(&stmt("SELECT DISTINCT name FROM student;")).unwrap();
        assert_eq!(result.row_count(), Some(6));
    }

    #[test]
    fn nested_delete_uses_two_phases() {
        // The inner query reads the same table the outer DELETE mutates; the
        // value set must come from the pre-delete state.
        let mut db = Database::new();
        db.execute(&stmt("CREATE TABLE country (city varchar(50));")).unwrap();
        for city in ["Pretoria", "Harare", "Pretoria"] {
            db.execute(&stmt(&format!("INSERT INTO country (city) VALUES ('{city}');")))
                .unwrap();
        }
        let q = nested(
            "DELETE FROM country WHERE city IN \
             (SELECT city FROM country WHERE city = 'Pretoria');",
        );
        let result = db.execute_nested(&q).unwrap();
        assert_eq!(result, ExecResult::Affected { count: 2 });
        assert_eq!(db.row_count("country").unwrap(), 1);
    }

    #[test]
    fn nested_select_filters_by_membership() {
        let mut db = Database::school();
        let q = nested(
            "SELECT name FROM student WHERE id IN \
             (SELECT id FROM lecturer WHERE name = 'John');",
        );
        let result = db.execute_nested(&q).unwrap();
        assert_eq!(
            result,
            ExecResult::Rows {
                header: vec!["name".into()],
                rows: vec![vec![Value::Text("Paul".into())]],
            }
        );
    }

    #[test]
    fn nested_select_star_inner_uses_link_column() {
        let mut db = Database::school();
        let q = nested("SELECT name FROM student WHERE age IN (SELECT * FROM lecturer);");
        // The inner * projects lecturer's columns; no column is named "age",
        // so the first column (id) supplies the value set {1, 2}.
        let result = db.execute_nested(&q).unwrap();
        assert_eq!(result.row_count(), Some(0));
        let q = nested("SELECT name FROM student WHERE id IN (SELECT * FROM lecturer);");
        let result = db.execute_nested(&q).unwrap();
        assert_eq!(result.row_count(), Some(2));
    }

    #[test]
    fn nested_update_and_insert() {
        let mut db = Database::school();
        let q = nested(
            "UPDATE student SET age = 25 WHERE id IN \
             (SELECT id FROM lecturer WHERE name = 'Anna');",
        );
        assert_eq!(db.execute_nested(&q).unwrap(), ExecResult::Affected { count: 1 });
        let rows = db.execute(&stmt("SELECT age FROM student WHERE id = 2;")).unwrap();
        assert_eq!(
            rows,
            ExecResult::Rows { header: vec!["age".into()], rows: vec![vec![Value::Int(25)]] }
        );

        db.execute(&stmt("CREATE TABLE staff (id int, name varchar(255));")).unwrap();
        let q = nested("INSERT INTO staff (id, name) (SELECT id, name FROM lecturer);");
        assert_eq!(db.execute_nested(&q).unwrap(), ExecResult::Affected { count: 2 });
        assert_eq!(db.row_count("staff").unwrap(), 2);

        let q = nested("INSERT INTO staff (SELECT id, name FROM lecturer WHERE name = 'John');");
        assert_eq!(db.execute_nested(&q).unwrap(), ExecResult::Affected { count: 1 });
        assert_eq!(db.row_count("staff").unwrap(), 3);
    }

    #[test]
    fn nested_exists_and_unsupported_operators() {
        let mut db = Database::school();
        let q = nested("DELETE FROM class WHERE ID EXISTS (SELECT id FROM lecturer);");
        assert_eq!(db.execute_nested(&q).unwrap(), ExecResult::Affected { count: 0 });
        let q = nested(
            "DELETE FROM student WHERE id EXISTS (SELECT id FROM lecturer WHERE id = 99);",
        );
        assert_eq!(db.execute_nested(&q).unwrap(), ExecResult::Affected { count: 0 });
        assert_eq!(db.row_count("student").unwrap(), 6);
        let q = nested("DELETE FROM student WHERE id > (SELECT id FROM lecturer);");
        assert!(matches!(db.execute_nested(&q), Err(ExecError::Unsupported(_))));
    }

    #[test]
    fn seed_rejects_bad_fixtures() {
        let mut db = Database::school();
        let err = db.seed("lecturer", "id,name\nx,John\n");
        assert!(matches!(err, Err(ExecError::BadFixture { record: 1, .. })));
        let err = db.seed("lecturer", "id,wrong\n1,John\n");
        assert!(matches!(err, Err(ExecError::BadFixture { record: 0, .. })));
    }

    #[test]
    fn dump_round_trips_through_seed() {
        let db = Database::school();
        let dumped = db.dump("student").unwrap();
        assert!(dumped.starts_with("id,name,age\n"));
        let mut fresh = Database::from_schema(&db.schema());
        fresh.seed("student", &dumped).unwrap();
        assert_eq!(fresh.dump("student").unwrap(), dumped);
    }

    #[test]
    fn run_sql_dispatches_simple_and_nested() {
        let mut db = Database::school();
        assert_eq!(
            run_sql(&mut db, "SELECT * FROM student;").unwrap().row_count(),
            Some(6)
        );
        let result = run_sql(
            &mut db,
            "DELETE FROM student WHERE id IN (SELECT id FROM lecturer WHERE name = 'Anna');",
        )
        .unwrap();
        assert_eq!(result, ExecResult::Affected { count: 1 });
        assert!(run_sql(&mut db, "SELECT banana;").is_err());
    }

    #[test]
    fn like_matcher_handles_wildcards() {
        assert!(like_match("peter", "p%"));
        assert!(like_match("peter", "%er"));
        assert!(like_match("peter", "p%t%r"));
        assert!(like_match("peter", "peter"));
        assert!(!like_match("peter", "q%"));
        assert!(!like_match("peter", "peter%x"));
        assert!(like_match("", "%"));
    }
}

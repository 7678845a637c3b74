//! Post-execution feedback and clarification dialogue.
//!
//! After a statement runs, [`FeedbackWriter::feedback_for`] confirms in
//! plain English what happened, quoting the live result (row counts,
//! affected records). When synthesis fails, [`FeedbackWriter::clarify`]
//! turns the error into a question the user can answer; the
//! [`run_repl`] loop asks it, folds the reply back into the request and
//! retries once before giving up on that request.

use std::io::{self, BufRead, Write};

use crate::assets;
use crate::ast::{AlterAction, DataType, Projection, SqlStatement};
use crate::nested::NestedParser;
use crate::nl2sql::{SynonymLexicon, SynthesisError};
use crate::recognizer::{self, Recognition};
use crate::storage::{Database, ExecResult, Schema, Value};
use crate::vocab::{VocabError, VocabularyMap};

/// What a piece of feedback talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeedbackKind {
    /// Something new exists: a table, a database, an inserted record.
    Create,
    /// Rows were read back.
    Read,
    /// Existing content changed.
    Update,
    /// Content was removed.
    Delete,
    /// The request must name its table.
    ClarifyTable,
    /// The request's column lives in several tables.
    ClarifyAttribute,
    /// The request needs more keywords altogether.
    ClarifyKeywords,
}

/// A feedback sentence and its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feedback {
    pub kind: FeedbackKind,
    pub text: String,
}

/// Every template key the writer fills.
const REQUIRED_KEYS: &[&str] = &[
    "read.sentence",
    "read.all",
    "read.count",
    "update.one",
    "update.many",
    "update.id_phrase",
    "delete.one",
    "delete.many",
    "create.sentence",
    "create.decl.int",
    "create.decl.varchar",
    "create.decl.varchar_any",
    "create.decl.bool",
    "create.decl.float",
    "create.database",
    "insert.sentence",
    "drop.sentence",
    "truncate.sentence",
    "rename.sentence",
    "alter.sentence",
    "clarify.attribute",
    "clarify.table",
    "clarify.keywords",
];

/// Renders feedback sentences from a template set.
#[derive(Debug, Clone)]
pub struct FeedbackWriter {
    vocab: VocabularyMap,
    pluralize_last: bool,
}

impl FeedbackWriter {
    /// Wraps a template set, verifying every required key is present.
    /// `pluralize_last` reproduces the plain templates' habit of
    /// pluralizing the final column name in read feedback.
    pub fn new(vocab: VocabularyMap, pluralize_last: bool) -> Result<Self, VocabError> {
        vocab.require(REQUIRED_KEYS)?;
        Ok(FeedbackWriter {
            vocab,
            pluralize_last,
        })
    }

    /// The plain template set, quirks and all.
    pub fn plain() -> Self {
        let vocab = VocabularyMap::parse(assets::FEEDBACK).expect("embedded templates parse");
        Self::new(vocab, true).expect("embedded templates are complete")
    }

    /// The grammar-corrected template set.
    pub fn polished() -> Self {
        let vocab =
            VocabularyMap::parse(assets::FEEDBACK_POLISHED).expect("embedded templates parse");
        Self::new(vocab, false).expect("embedded templates are complete")
    }

    fn fill(&self, key: &str, args: &[(&str, &str)]) -> String {
        self.vocab
            .fill(key, args)
            .unwrap_or_else(|err| panic!("template {key:?} mismatch: {err}"))
    }

    /// Describes what `stmt` did, given the result it produced.
    pub fn feedback_for(&self, stmt: &SqlStatement, result: &ExecResult) -> Feedback {
        match stmt {
            SqlStatement::Select {
                projection, table, ..
            } => self.read_feedback(projection, table, result),
            SqlStatement::Update {
                table,
                set_column,
                set_value,
                condition,
            } => {
                let n = result.affected().unwrap_or(0);
                let key = if n == 1 { "update.one" } else { "update.many" };
                let where_phrase = if condition.column.eq_ignore_ascii_case("id") {
                    self.vocab.expect("update.id_phrase").to_string()
                } else {
                    condition.column.clone()
                };
                Feedback {
                    kind: FeedbackKind::Update,
                    text: self.fill(
                        key,
                        &[
                            ("n", &n.to_string()),
                            ("set_column", set_column),
                            ("set_value", &set_value.bare()),
                            ("where_phrase", &where_phrase),
                            ("value", &condition.value.bare()),
                            ("table", &capitalize(table)),
                        ],
                    ),
                }
            }
            SqlStatement::Delete { table, condition } => {
                let n = result.affected().unwrap_or(0);
                let key = if n == 1 { "delete.one" } else { "delete.many" };
                Feedback {
                    kind: FeedbackKind::Delete,
                    text: self.fill(
                        key,
                        &[
                            ("n", &n.to_string()),
                            ("table", table),
                            ("column", &condition.column),
                            ("value", &condition.value.bare()),
                        ],
                    ),
                }
            }
            SqlStatement::CreateTable { name, columns, .. } => {
                let declarations = columns
                    .iter()
                    .map(|def| self.declaration(&def.name, &def.datatype))
                    .collect::<Vec<_>>()
                    .join(", ");
                Feedback {
                    kind: FeedbackKind::Create,
                    text: self.fill(
                        "create.sentence",
                        &[("table", name), ("declarations", &declarations)],
                    ),
                }
            }
            SqlStatement::CreateDatabase { name, .. } => Feedback {
                kind: FeedbackKind::Create,
                text: self.fill("create.database", &[("name", name)]),
            },
            SqlStatement::Insert { table, .. } => Feedback {
                kind: FeedbackKind::Create,
                text: self.fill("insert.sentence", &[("table", table)]),
            },
            SqlStatement::DropTable { names, .. } => self.drop_feedback(names, "table"),
            SqlStatement::DropDatabase { names, .. } => self.drop_feedback(names, "database"),
            SqlStatement::Truncate { table } => Feedback {
                kind: FeedbackKind::Delete,
                text: self.fill("truncate.sentence", &[("table", table)]),
            },
            SqlStatement::RenameTable { from, to } => Feedback {
                kind: FeedbackKind::Update,
                text: self.fill("rename.sentence", &[("from", from), ("to", to)]),
            },
            SqlStatement::AlterColumn {
                table,
                action,
                column,
                ..
            } => {
                let doing = match action {
                    AlterAction::Add => "adding",
                    AlterAction::Drop => "removing",
                    AlterAction::Modify => "modifying",
                };
                Feedback {
                    kind: FeedbackKind::Update,
                    text: self.fill(
                        "alter.sentence",
                        &[("table", table), ("action", doing), ("column", column)],
                    ),
                }
            }
        }
    }

    fn read_feedback(&self, projection: &Projection, table: &str, result: &ExecResult) -> Feedback {
        let n = result.row_count().unwrap_or(0);
        let text = match projection {
            Projection::All => self.fill("read.all", &[("n", &n.to_string()), ("table", table)]),
            Projection::Columns(columns) | Projection::Distinct(columns) => {
                let mut listed: Vec<String> = columns.clone();
                if self.pluralize_last {
                    if let Some(last) = listed.last_mut() {
                        *last = pluralize(last);
                    }
                }
                self.fill(
                    "read.sentence",
                    &[
                        ("n", &n.to_string()),
                        ("columns", &join_and(&listed)),
                        ("table", table),
                    ],
                )
            }
            Projection::Count(column) => {
                let count = match result {
                    ExecResult::Rows { rows, .. } => match rows.first().and_then(|r| r.first()) {
                        Some(Value::Int(v)) => *v as usize,
                        _ => n,
                    },
                    _ => n,
                };
                self.fill(
                    "read.count",
                    &[
                        ("n", &count.to_string()),
                        ("column", column),
                        ("table", table),
                    ],
                )
            }
        };
        Feedback {
            kind: FeedbackKind::Read,
            text,
        }
    }

    fn drop_feedback(&self, names: &[String], noun: &str) -> Feedback {
        let noun = if names.len() == 1 {
            noun.to_string()
        } else {
            pluralize(noun)
        };
        Feedback {
            kind: FeedbackKind::Delete,
            text: self.fill(
                "drop.sentence",
                &[("names", &join_and(names)), ("noun", &noun)],
            ),
        }
    }

    fn declaration(&self, column: &str, datatype: &DataType) -> String {
        match datatype {
            DataType::Int => self.fill("create.decl.int", &[("column", column)]),
            DataType::Varchar(Some(n)) => self.fill(
                "create.decl.varchar",
                &[("column", column), ("n", &n.to_string())],
            ),
            DataType::Varchar(None) => self.fill("create.decl.varchar_any", &[("column", column)]),
            DataType::Bool => self.fill("create.decl.bool", &[("column", column)]),
            DataType::Float => self.fill("create.decl.float", &[("column", column)]),
        }
    }

    /// Turns a synthesis error into a clarification question.
    pub fn clarify(&self, error: &SynthesisError, schema: &Schema) -> Feedback {
        match error {
            SynthesisError::MissingTable => {
                let tables: Vec<String> = schema
                    .table_names()
                    .into_iter()
                    .map(capitalize)
                    .collect();
                Feedback {
                    kind: FeedbackKind::ClarifyTable,
                    text: self.fill("clarify.table", &[("tables", &join_or(&tables))]),
                }
            }
            SynthesisError::AmbiguousColumn { column, tables } => {
                let tables: Vec<String> = tables.iter().map(|name| capitalize(name)).collect();
                Feedback {
                    kind: FeedbackKind::ClarifyAttribute,
                    text: self.fill(
                        "clarify.attribute",
                        &[("column", column), ("tables", &join_or(&tables))],
                    ),
                }
            }
            SynthesisError::MissingAction | SynthesisError::Rejected(_) => self.keywords_prompt(),
        }
    }

    /// The give-me-more-keywords question, used when a retried request
    /// still cannot be resolved.
    pub fn keywords_prompt(&self) -> Feedback {
        Feedback {
            kind: FeedbackKind::ClarifyKeywords,
            text: self.vocab.expect("clarify.keywords").to_string(),
        }
    }
}

/// Naive English pluralization: s/x/ch/sh take "es", consonant-y takes
/// "ies", everything else takes "s".
pub fn pluralize(word: &str) -> String {
    let lower = word.to_ascii_lowercase();
    if lower.ends_with('s')
        || lower.ends_with('x')
        || lower.ends_with("ch")
        || lower.ends_with("sh")
    {
        return format!("{word}es");
    }
    if lower.ends_with('y') {
        let before_y = lower.chars().rev().nth(1);
        if before_y.is_some_and(|c| !"aeiou".contains(c)) {
            return format!("{}ies", &word[..word.len() - 1]);
        }
    }
    format!("{word}s")
}

fn capitalize(name: &str) -> String {
    let mut chars = name.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

fn join_and(items: &[String]) -> String {
    join_with(items, "and")
}

fn join_or(items: &[String]) -> String {
    join_with(items, "or")
}

fn join_with(items: &[String], word: &str) -> String {
    match items {
        [] => String::new(),
        [only] => only.clone(),
        [head @ .., last] => format!("{} {word} {last}", head.join(", ")),
    }
}

/// Runs the interactive loop: natural-language requests are synthesized
/// and executed with feedback; lines ending in `;` run as SQL directly.
/// A failed request gets one clarification question, the reply is
/// folded into the request, and a second failure ends with the keyword
/// prompt. `exit` or `quit` (or end of input) leaves the loop.
pub fn run_repl<R: BufRead, W: Write>(
    lexicon: &SynonymLexicon,
    db: &mut Database,
    writer: &FeedbackWriter,
    input: R,
    mut output: W,
) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        write!(output, "sql> ")?;
        output.flush()?;
        let Some(line) = lines.next() else { break };
        let line = line?;
        let request = line.trim();
        if request.is_empty() {
            continue;
        }
        if request.eq_ignore_ascii_case("exit") || request.eq_ignore_ascii_case("quit") {
            break;
        }
        if request.ends_with(';') {
            run_sql_line(db, writer, request, &mut output)?;
            continue;
        }
        match lexicon.synthesize(request, &db.schema()) {
            Ok(stmt) => run_synthesized(db, writer, &stmt, &mut output)?,
            Err(error) => {
                writeln!(output, "{}", writer.clarify(&error, &db.schema()).text)?;
                write!(output, "sql> ")?;
                output.flush()?;
                let Some(reply) = lines.next() else { break };
                let reply = reply?;
                let merged = format!("{request} {}", reply.trim());
                match lexicon.synthesize(&merged, &db.schema()) {
                    Ok(stmt) => run_synthesized(db, writer, &stmt, &mut output)?,
                    Err(_) => writeln!(output, "{}", writer.keywords_prompt().text)?,
                }
            }
        }
    }
    Ok(())
}

fn run_synthesized<W: Write>(
    db: &mut Database,
    writer: &FeedbackWriter,
    stmt: &SqlStatement,
    output: &mut W,
) -> io::Result<()> {
    writeln!(output, "{stmt}")?;
    match db.execute(stmt) {
        Ok(result) => {
            writeln!(output, "{}", writer.feedback_for(stmt, &result).text)?;
            write_rows(&result, output)
        }
        Err(error) => writeln!(output, "error: {error}"),
    }
}

fn run_sql_line<W: Write>(
    db: &mut Database,
    writer: &FeedbackWriter,
    sql: &str,
    output: &mut W,
) -> io::Result<()> {
    match recognizer::classify(sql) {
        Recognition::Statement(stmt) => match db.execute(&stmt) {
            Ok(result) => {
                writeln!(output, "{}", writer.feedback_for(&stmt, &result).text)?;
                write_rows(&result, output)
            }
            Err(error) => writeln!(output, "error: {error}"),
        },
        Recognition::NestedDetected => match NestedParser::new().parse(sql) {
            Ok(nested) => match db.execute_nested(&nested) {
                Ok(result) => {
                    match &result {
                        ExecResult::Rows { rows, .. } => {
                            writeln!(output, "{} rows", rows.len())?;
                        }
                        other => writeln!(output, "{} affected", other.affected().unwrap_or(0))?,
                    }
                    write_rows(&result, output)
                }
                Err(error) => writeln!(output, "error: {error}"),
            },
            Err(error) => writeln!(output, "error: {error}"),
        },
        Recognition::NotRecognized { reason } => writeln!(output, "error: {reason}"),
    }
}

fn write_rows<W: Write>(result: &ExecResult, output: &mut W) -> io::Result<()> {
    if let ExecResult::Rows { header, rows } = result {
        writeln!(output, "{}", header.join(", "))?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(Value::to_string).collect();
            writeln!(output, "{}", cells.join(", "))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::narrator::normalize;
    use crate::storage::load_schema;

    fn school() -> (SynonymLexicon, Database) {
        (SynonymLexicon::school(), Database::school())
    }

    #[test]
    fn pluralize_covers_the_documented_shapes() {
        assert_eq!(pluralize("age"), "ages");
        assert_eq!(pluralize("class"), "classes");
        assert_eq!(pluralize("box"), "boxes");
        assert_eq!(pluralize("city"), "cities");
        assert_eq!(pluralize("day"), "days");
        assert_eq!(pluralize("name"), "names");
    }

    #[test]
    fn read_feedback_pluralizes_last_column() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let stmt = lexicon
            .synthesize("Show the name and age of the student table", &db.schema())
            .unwrap();
        let result = db.execute(&stmt).unwrap();
        let feedback = writer.feedback_for(&stmt, &result);
        assert_eq!(feedback.kind, FeedbackKind::Read);
        assert_eq!(
            normalize(&feedback.text),
            normalize("There are 6 rows that contains name and ages in the student table")
        );
    }

    #[test]
    fn update_feedback_names_the_id_number() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let stmt = lexicon
            .synthesize(
                "Amend the student name to John whose id is equal to 6",
                &db.schema(),
            )
            .unwrap();
        let result = db.execute(&stmt).unwrap();
        let feedback = writer.feedback_for(&stmt, &result);
        assert_eq!(feedback.kind, FeedbackKind::Update);
        assert_eq!(
            normalize(&feedback.text),
            normalize(
                "You have updated a record with a name called John, whose ID number is \
                 equal to 6 in the Student table."
            )
        );
    }

    #[test]
    fn delete_feedback_counts_one_record() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let stmt = lexicon
            .synthesize(
                "Remove a record from the lecturer table where the name is John",
                &db.schema(),
            )
            .unwrap();
        let result = db.execute(&stmt).unwrap();
        let feedback = writer.feedback_for(&stmt, &result);
        assert_eq!(feedback.kind, FeedbackKind::Delete);
        assert_eq!(
            normalize(&feedback.text),
            normalize("You have deleted 1 record from the lecturer table where the name is John")
        );
    }

    #[test]
    fn create_feedback_lists_declarations() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        db.execute(&SqlStatement::DropTable {
            names: vec!["class".into()],
            if_exists: false,
        })
        .unwrap();
        let stmt = lexicon
            .synthesize(
                "Make a class table and specify ID as integer, name as alphanumeric entries \
                 with at most 45 characters and section as alphanumeric characters of at most \
                 45 characters",
                &db.schema(),
            )
            .unwrap();
        let result = db.execute(&stmt).unwrap();
        let feedback = writer.feedback_for(&stmt, &result);
        assert_eq!(feedback.kind, FeedbackKind::Create);
        assert_eq!(
            normalize(&feedback.text),
            normalize(
                "You have created a new table called class with the following information, \
                 ID stores integer values, name stores alphanumeric entries that contain 45 \
                 characters, section stores alphanumeric entries that contain 45 characters"
            )
        );
    }

    #[test]
    fn clarify_questions_match_the_documented_wording() {
        let (lexicon, db) = school();
        let writer = FeedbackWriter::plain();
        let schema = db.schema();
        let ambiguous = lexicon
            .synthesize("Show me the names in a table", &schema)
            .unwrap_err();
        let feedback = writer.clarify(&ambiguous, &schema);
        assert_eq!(feedback.kind, FeedbackKind::ClarifyAttribute);
        assert_eq!(
            feedback.text,
            "Do you mean the name in Lecturer, Student or Class table?"
        );
        let missing = lexicon
            .synthesize("Display all details from the table", &schema)
            .unwrap_err();
        let feedback = writer.clarify(&missing, &schema);
        assert_eq!(feedback.kind, FeedbackKind::ClarifyTable);
        assert_eq!(feedback.text, "Do you mean the Lecturer, Student or Class table?");
        let keywords = lexicon
            .synthesize("Show the information from the table", &schema)
            .unwrap_err();
        let feedback = writer.clarify(&keywords, &schema);
        assert_eq!(feedback.kind, FeedbackKind::ClarifyKeywords);
        assert_eq!(feedback.text, "Could you specify which Table, and its Attributes?");
    }

    #[test]
    fn polished_writer_fixes_agreement() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::polished();
        let stmt = lexicon
            .synthesize("Show the name and age of the student table", &db.schema())
            .unwrap();
        let result = db.execute(&stmt).unwrap();
        let feedback = writer.feedback_for(&stmt, &result);
        assert_eq!(
            feedback.text,
            "There are 6 rows that contain name and age in the student table."
        );
    }

    #[test]
    fn repl_clarification_dialogue_recovers() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let input = "Show me the names in a table\nstudent\nexit\n";
        let mut output = Vec::new();
        run_repl(
            &lexicon,
            &mut db,
            &writer,
            input.as_bytes(),
            &mut output,
        )
        .unwrap();
        let text = String::from_utf8(output).unwrap();
        assert!(text.contains("Do you mean the name in Lecturer, Student or Class table?"));
        assert!(text.contains("SELECT name FROM student;"));
        assert!(text.contains("There are 6 rows that contains names in the student table"));
        assert!(text.contains("Paul"));
    }

    #[test]
    fn repl_second_failure_prompts_for_keywords() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let input = "Show the information from the table\nnothing useful\n";
        let mut output = Vec::new();
        run_repl(
            &lexicon,
            &mut db,
            &writer,
            input.as_bytes(),
            &mut output,
        )
        .unwrap();
        let text = String::from_utf8(output).unwrap();
        assert!(text.contains("Could you specify which Table, and its Attributes?"));
        let occurrences = text
            .matches("Could you specify which Table, and its Attributes?")
            .count();
        assert_eq!(occurrences, 2, "first clarify plus final keyword prompt");
    }

    #[test]
    fn repl_runs_direct_sql_lines() {
        let (lexicon, mut db) = school();
        let writer = FeedbackWriter::plain();
        let input = "SELECT * FROM lecturer;\nDELETE FROM lecturer WHERE id IN (SELECT id FROM lecturer WHERE name = 'Anna');\nexit\n";
        let mut output = Vec::new();
        run_repl(
            &lexicon,
            &mut db,
            &writer,
            input.as_bytes(),
            &mut output,
        )
        .unwrap();
        let text = String::from_utf8(output).unwrap();
        assert!(text.contains("There are 2 rows in the lecturer table"));
        assert!(text.contains("1 affected"));
        assert_eq!(db.row_count("lecturer").unwrap(), 1);
    }

    #[test]
    fn schema_argument_orders_missing_table_prompt() {
        let writer = FeedbackWriter::plain();
        let schema = load_schema("table alpha\ncolumn id int\n\ntable beta\ncolumn id int\n")
            .unwrap();
        let feedback = writer.clarify(&SynthesisError::MissingTable, &schema);
        assert_eq!(feedback.text, "Do you mean the Alpha or Beta table?");
    }
}

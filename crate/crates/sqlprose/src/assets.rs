//! Embedded default assets: vocabulary and feedback templates, stopwords,
//! lexicons, schemas, fixtures, and the bundled corpora.

/// Narration vocabulary (template phrases), key=value format.
pub const VOCABULARY: &str = include_str!("../assets/vocabulary.txt");

/// Feedback templates, source-faithful wording.
pub const FEEDBACK: &str = include_str!("../assets/feedback.txt");

/// Feedback templates, grammar-corrected wording (`--polish`).
pub const FEEDBACK_POLISHED: &str = include_str!("../assets/feedback_polished.txt");

/// English stopword list, one word per line.
pub const STOPWORDS: &str = include_str!("../assets/stopwords.txt");

/// Action/column/table trigger lexicon for the product-catalog schema.
pub const XNORTHWIND_LEXICON: &str = include_str!("../assets/xnorthwind.lexicon");

/// Product-catalog schema (eight tables).
pub const XNORTHWIND_SCHEMA: &str = include_str!("../assets/xnorthwind.schema");

/// Trigger lexicon for the school schema.
pub const SCHOOL_LEXICON: &str = include_str!("../assets/school.lexicon");

/// School schema (lecturer, student, class).
pub const SCHOOL_SCHEMA: &str = include_str!("../assets/school.schema");

/// School fixture rows as CSV, one constant per table.
pub const SCHOOL_LECTURER_CSV: &str = include_str!("../assets/fixtures/school/lecturer.csv");
pub const SCHOOL_STUDENT_CSV: &str = include_str!("../assets/fixtures/school/student.csv");
pub const SCHOOL_CLASS_CSV: &str = include_str!("../assets/fixtures/school/class.csv");

/// 44 web-collected SQL statements exercising the recognizer's failure paths.
pub const WEB_QUERIES: &str = include_str!("../assets/web_queries.sql");

/// 20 natural-language/SQL pairs for synthesis evaluation (JSON).
pub const REQUEST_PAIRS: &str = include_str!("../assets/request_pairs.json");

/// Example machine definition: find/all/employees chain.
pub const FIND_EMPLOYEES_MACHINE: &str = include_str!("../assets/find_employees.machine");

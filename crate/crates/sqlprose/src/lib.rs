//! Bidirectional SQL comprehension toolkit.
//!
//! One direction turns SQL into plain-English narrations (lexer → recognizer
//! / nested parser → narrator). The other turns natural-language requests
//! into executable SQL (normalizer → jumping-finite-automaton gate →
//! generator), executes it against an in-memory store, and answers with
//! English feedback. Corpus loaders and seeded generators support accuracy
//! reporting over both directions.

pub mod assets;
pub mod ast;
pub mod corpus;
pub mod feedback;
pub mod gen;
pub mod jfa;
pub mod lexer;
pub mod narrator;
pub mod nested;
pub mod nl2sql;
pub mod recognizer;
pub mod storage;
pub mod vocab;

//! Narration vocabulary: a key=value phrase file with `{placeholder}`
//! substitution. Keeping every template phrase in one editable text file
//! means wording changes never require recompiling.

use std::collections::BTreeMap;
use thiserror::Error;

/// Vocabulary-file problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("line {line}: missing '=' separator")]
    MissingSeparator { line: usize },
    #[error("line {line}: empty key")]
    EmptyKey { line: usize },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key {key:?}")]
    MissingKey { key: String },
    #[error("template {key:?} references unknown placeholder {placeholder:?}")]
    UnknownPlaceholder { key: String, placeholder: String },
}

/// Parsed phrase table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VocabularyMap {
    entries: BTreeMap<String, String>,
}

impl VocabularyMap {
    /// Parse the key=value format: one entry per line, split on the first
    /// `=`; keys are trimmed, values keep their spacing; blank lines and
    /// full-line `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, VocabError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let (key, value) = raw
                .split_once('=')
                .ok_or(VocabError::MissingSeparator { line })?;
            let key = key.trim();
            if key.is_empty() {
                return Err(VocabError::EmptyKey { line });
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(VocabError::DuplicateKey { line, key: key.to_string() });
            }
        }
        Ok(VocabularyMap { entries })
    }

    /// Look up one phrase.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Look up a phrase that the caller has already validated to exist.
    pub fn expect(&self, key: &str) -> &str {
        self.get(key)
            .unwrap_or_else(|| panic!("vocabulary key {key:?} was validated at load time"))
    }

    /// Substitute `{name}` placeholders in the template stored under `key`.
    /// Unknown placeholders are an error; `{{` and `}}` escape literal braces.
    pub fn fill(&self, key: &str, args: &[(&str, &str)]) -> Result<String, VocabError> {
        let template = self.expect(key);
        let mut out = String::with_capacity(template.len());
        let mut chars = template.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '{' if chars.peek() == Some(&'{') => {
                    chars.next();
                    out.push('{');
                }
                '}' if chars.peek() == Some(&'}') => {
                    chars.next();
                    out.push('}');
                }
                '{' => {
                    let mut name = String::new();
                    for c in chars.by_ref() {
                        if c == '}' {
                            break;
                        }
                        name.push(c);
                    }
                    let value = args
                        .iter()
                        .find(|(k, _)| *k == name)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| VocabError::UnknownPlaceholder {
                            key: key.to_string(),
                            placeholder: name.clone(),
                        })?;
                    out.push_str(value);
                }
                other => out.push(other),
            }
        }
        Ok(out)
    }

    /// Number of phrases.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when no phrases were loaded.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Verify that every key in `required` is present.
    pub fn require(&self, required: &[&str]) -> Result<(), VocabError> {
        for key in required {
            if !self.entries.contains_key(*key) {
                return Err(VocabError::MissingKey { key: (*key).to_string() });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_skips_comments() {
        let v = VocabularyMap::parse("# intro\nalpha=one two\n\nbeta = with = signs\n").unwrap();
        assert_eq!(v.get("alpha"), Some("one two"));
        assert_eq!(v.get("beta"), Some(" with = signs"));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn duplicate_key_is_an_error() {
        let err = VocabularyMap::parse("a=1\na=2\n").unwrap_err();
        assert_eq!(err, VocabError::DuplicateKey { line: 2, key: "a".into() });
    }

    #[test]
    fn missing_separator_is_an_error() {
        let err = VocabularyMap::parse("justwords\n").unwrap_err();
        assert_eq!(err, VocabError::MissingSeparator { line: 1 });
    }

    #[test]
    fn empty_key_is_an_error() {
        let err = VocabularyMap::parse("=value\n").unwrap_err();
        assert_eq!(err, VocabError::EmptyKey { line: 1 });
    }

    #[test]
    fn fill_substitutes_placeholders() {
        let v = VocabularyMap::parse("greet=hello {name}, {name}!\n").unwrap();
        assert_eq!(v.fill("greet", &[("name", "sam")]).unwrap(), "hello sam, sam!");
    }

    #[test]
    fn fill_rejects_unknown_placeholder() {
        let v = VocabularyMap::parse("t={who}\n").unwrap();
        let err = v.fill("t", &[]).unwrap_err();
        assert_eq!(
            err,
            VocabError::UnknownPlaceholder { key: "t".into(), placeholder: "who".into() }
        );
    }

    #[test]
    fn escaped_braces_render_literally() {
        let v = VocabularyMap::parse("t=a {{literal}} {x}\n").unwrap();
        assert_eq!(v.fill("t", &[("x", "b")]).unwrap(), "a {literal} b");
    }

    #[test]
    fn require_reports_first_missing_key() {
        let v = VocabularyMap::parse("a=1\n").unwrap();
        assert!(v.require(&["a"]).is_ok());
        assert_eq!(v.require(&["a", "b"]).unwrap_err(), VocabError::MissingKey { key: "b".into() });
    }
}

use std::collections::HashSet;

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A finitely presented group `<generators | relators>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
    /// Generator designated as a central involution (its image is `±Id` in every factor).
    central_order2: Option<usize>,
}

impl GroupPresentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
        central_order2: Option<usize>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for name in &generator_names {
            if name.is_empty() {
                return Err(Error::structural("empty generator name"));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::structural(format!("duplicate generator `{name}`")));
            }
        }
        let g = generator_names.len();
        for (k, r) in relators.iter().enumerate() {
            if !r.is_reduced() {
                return Err(Error::structural(format!("relator {k} is not freely reduced")));
            }
            if r.max_generator().is_some_and(|m| m >= g) {
                return Err(Error::structural(format!(
                    "relator {k} uses an unknown generator"
                )));
            }
        }
        if central_order2.is_some_and(|c| c >= g) {
            return Err(Error::structural("central generator index out of range"));
        }
        Ok(GroupPresentation {
            generator_names,
            relators,
            central_order2,
        })
    }

    /// Free group on the given single-letter names.
    pub fn free(names: &[&str]) -> Result<Self> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), vec![], None)
    }

    /// Builds a presentation from letter strings such as `abAB`
    /// (uppercase = inverse); generator names must be single lowercase letters.
    pub fn parse(names: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| parse_word(&names, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, rels, None)
    }

    pub fn with_central_generator(mut self, j: usize) -> Result<Self> {
        if j >= self.generator_names.len() {
            return Err(Error::structural("central generator index out of range"));
        }
        self.central_order2 = Some(j);
        Ok(self)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn num_generators(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    pub fn central_order2(&self) -> Option<usize> {
        self.central_order2
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.generator_names, text)
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display(&self.generator_names)
    }
}

/// Parses a word written one character per letter; `1` or an empty string is
/// the identity. The result is freely reduced.
pub fn parse_word(names: &[String], text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Word::identity());
    }
    let mut letters = Vec::with_capacity(text.len());
    for ch in text.chars() {
        let lower = ch.to_lowercase().to_string();
        let Some(j) = names.iter().position(|n| *n == lower) else {
            return Err(Error::structural(format!("unknown generator `{ch}` in `{text}`")));
        };
        letters.push(Letter::new(j, ch.is_uppercase()));
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = GroupPresentation::parse(&["a", "b"], &["abAB"]).unwrap();
        assert_eq!(p.num_relators(), 1);
        assert_eq!(p.display_word(&p.relators()[0]), "abAB");
        assert_eq!(p.parse_word("aA").unwrap(), Word::identity());
        assert!(p.parse_word("c").is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        let err = GroupPresentation::free(&["a", "a"]).unwrap_err();
        assert_eq!(err.kind(), "structural");
    }
}

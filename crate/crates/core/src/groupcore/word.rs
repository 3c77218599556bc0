use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group on the generators.
///
/// Ordered shortlex (length first), which makes sorted containers list
/// the identity first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(j: usize) -> Self {
        Word(vec![Letter::new(j, false)])
    }

    pub fn generator_inverse(j: usize) -> Self {
        Word(vec![Letter::new(j, true)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Sum of exponents of generator `j`.
    pub fn exponent_sum(&self, j: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == j)
            .map(|l| l.exponent())
            .sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renders with one character per letter: lowercase names for generators,
    /// uppercase for inverses, `1` for the identity.
    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| {
                let name = &names[l.generator];
                if l.inverse {
                    name.to_uppercase()
                } else {
                    name.clone()
                }
            })
            .collect()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            if l.inverse {
                write!(f, "x{}^-1", l.generator)?;
            } else {
                write!(f, "x{}", l.generator)?;
            }
        }
        Ok(())
    }
}

/// Freely reduces raw `(generator, ±1)` letters over `num_generators` generators.
pub fn free_reduce(raw: &[(usize, i8)], num_generators: usize) -> Result<Word> {
    let mut letters = Vec::with_capacity(raw.len());
    for (pos, &(g, e)) in raw.iter().enumerate() {
        if g >= num_generators {
            return Err(Error::structural(format!(
                "letter {pos} references generator {g} but only {num_generators} exist"
            )));
        }
        if e != 1 && e != -1 {
            return Err(Error::structural(format!(
                "letter {pos} has exponent {e}; expected 1 or -1"
            )));
        }
        letters.push(Letter::new(g, e < 0));
    }
    Ok(Word::from_letters(letters))
}

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::word::Word;
use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, NumberField};

/// A finite formal sum `sum c_w * w` in L[F], L a number field and F the free group.
///
/// Words are kept freely reduced and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    field: Arc<NumberField>,
    terms: BTreeMap<Word, FieldElement>,
}

impl GroupAlgebraElement {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        GroupAlgebraElement {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::monomial(field, Word::identity(), FieldElement::one(field))
    }

    pub fn monomial(field: &Arc<NumberField>, word: Word, coeff: FieldElement) -> Self {
        let mut e = Self::zero(field);
        e.add_term(word, coeff);
        e
    }

    pub fn from_word(field: &Arc<NumberField>, word: Word) -> Self {
        Self::monomial(field, word, FieldElement::one(field))
    }

    pub fn scalar(field: &Arc<NumberField>, c: i64) -> Self {
        Self::monomial(field, Word::identity(), FieldElement::from_int(field, c))
    }

    /// `x_j - 1`.
    pub fn generator_minus_one(field: &Arc<NumberField>, j: usize) -> Self {
        let mut e = Self::from_word(field, Word::generator(j));
        e.add_term(Word::identity(), FieldElement::from_int(field, -1));
        e
    }

    /// Builds from `(word, coefficient)` pairs; repeated words are summed.
    pub fn from_terms(
        field: &Arc<NumberField>,
        terms: impl IntoIterator<Item = (Word, FieldElement)>,
    ) -> Result<Self> {
        let mut e = Self::zero(field);
        for (w, c) in terms {
            if c.field() != field {
                return Err(Error::structural("coefficient from a different field"));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> FieldElement {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: FieldElement) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for (w, a) in self.terms() {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero(&self.field);
        for (u, a) in self.terms() {
            out.add_term(w.concat(u), a.clone());
        }
        out
    }

    /// The involution `sum c_w w  ->  sum c_w w^{-1}`.
    pub fn invert_words(&self) -> Self {
        let mut out = Self::zero(&self.field);
        for (w, a) in self.terms() {
            out.add_term(w.inverse(), a.clone());
        }
        out
    }

    /// Sum of coefficients (image under the trivial representation).
    pub fn augmentation(&self) -> FieldElement {
        self.terms
            .values()
            .fold(FieldElement::zero(&self.field), |acc, c| &acc + c)
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}*{}", c, w.display(names)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An `rows x cols` matrix over L[F].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraMatrix {
    rows: usize,
    cols: usize,
    field: Arc<NumberField>,
    entries: Vec<GroupAlgebraElement>,
}

impl GroupAlgebraMatrix {
    pub fn from_entries(
        field: &Arc<NumberField>,
        rows: usize,
        cols: usize,
        entries: Vec<GroupAlgebraElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::structural(format!(
                "{} entries for a {rows}x{cols} group-algebra matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::structural("group-algebra entries over mixed fields"));
        }
        Ok(GroupAlgebraMatrix {
            rows,
            cols,
            field: field.clone(),
            entries,
        })
    }

    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        GroupAlgebraMatrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![GroupAlgebraElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = GroupAlgebraElement::one(field);
        }
        m
    }

    pub fn from_element(e: GroupAlgebraElement) -> Self {
        GroupAlgebraMatrix {
            rows: 1,
            cols: 1,
            field: e.field().clone(),
            entries: vec![e],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupAlgebraElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupAlgebraElement) {
        assert_eq!(e.field(), &self.field);
        let c = self.cols;
        self.entries[i * c + j] = e;
    }

    pub fn entries(&self) -> &[GroupAlgebraElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupAlgebraElement::is_zero)
    }

    /// Every word occurring in some entry.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().flat_map(|e| e.terms().map(|(w, _)| w))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{} group-algebra matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = GroupAlgebraElement::zero(&self.field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) || self.field != other.field {
            return Err(Error::structural("group-algebra matrix shape mismatch"));
        }
        Ok(GroupAlgebraMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// `[[A, C], [0, B]]`; pass a zero `C` for the block-diagonal sum.
    pub fn block_upper(a: &Self, c: &Self, b: &Self) -> Result<Self> {
        if c.rows != a.rows || c.cols != b.cols {
            return Err(Error::structural("off-diagonal block has the wrong shape"));
        }
        if a.field != b.field || a.field != c.field {
            return Err(Error::structural("blocks over mixed fields"));
        }
        let rows = a.rows + b.rows;
        let cols = a.cols + b.cols;
        let mut out = Self::zeros(&a.field, rows, cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.entries[i * cols + j] = a.get(i, j).clone();
            }
            for j in 0..c.cols {
                out.entries[i * cols + a.cols + j] = c.get(i, j).clone();
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.entries[(a.rows + i) * cols + a.cols + j] = b.get(i, j).clone();
            }
        }
        Ok(out)
    }

    pub fn block_diag(a: &Self, b: &Self) -> Result<Self> {
        Self::block_upper(a, &Self::zeros(&a.field, a.rows, b.cols), b)
    }

    /// Transpose with every word inverted (coefficients unchanged).
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).invert_words());
            }
        }
        GroupAlgebraMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field.clone(),
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_reduces_words() {
        let q = NumberField::rationals();
        let x = GroupAlgebraElement::from_word(&q, Word::generator(0));
        let xinv = GroupAlgebraElement::from_word(&q, Word::generator_inverse(0));
        assert_eq!(x.mul(&xinv), GroupAlgebraElement::one(&q));
        // (x - 1)(x + 1) = x^2 - 1
        let xm = GroupAlgebraElement::generator_minus_one(&q, 0);
        let xp = x.add(&GroupAlgebraElement::one(&q));
        let prod = xm.mul(&xp);
        assert_eq!(prod.num_terms(), 2);
        assert!(prod.augmentation().is_zero());
    }

    #[test]
    fn cancellation_drops_terms() {
        let q = NumberField::rationals();
        let x = GroupAlgebraElement::from_word(&q, Word::generator(0));
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn block_shapes() {
        let q = NumberField::rationals();
        let a = GroupAlgebraMatrix::identity(&q, 2);
        let b = GroupAlgebraMatrix::zeros(&q, 1, 3);
        let d = GroupAlgebraMatrix::block_diag(&a, &b).unwrap();
        assert_eq!((d.rows(), d.cols()), (3, 5));
        assert!(d.get(2, 4).is_zero());
        assert_eq!(d.get(1, 1), &GroupAlgebraElement::one(&q));
    }
}

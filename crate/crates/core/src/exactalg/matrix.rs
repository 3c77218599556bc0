use std::fmt;
use std::sync::Arc;

use super::field::{same_field, FieldElement, NumberField};
use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single number field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Arc<NumberField>,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, all of which must live in `field`.
    pub fn from_entries(
        field: &Arc<NumberField>,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::structural(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|e| !same_field(e.field(), field)) {
            return Err(Error::structural(format!(
                "entry {pos} belongs to {} but the matrix is over {field}",
                entries[pos].field()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            field: field.clone(),
            entries,
        })
    }

    pub fn from_ints(field: &Arc<NumberField>, rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::structural("ragged rows"));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| FieldElement::from_int(field, x)))
            .collect();
        Self::from_entries(field, r, c, entries)
    }

    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field: field.clone(),
            entries: vec![FieldElement::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = FieldElement::one(field);
        }
        m
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    /// Replaces one entry. Panics on a field mismatch or out-of-range index.
    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        assert!(same_field(value.field(), &self.field));
        let c = self.cols;
        self.entries[i * c + j] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::structural(format!(
                "matrices over different fields: {} and {}",
                self.field, other.field
            )))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::structural(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<Self> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::structural(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field.clone(),
            entries,
        }
    }

    /// Kronecker product `self ⊗ other`; row index of the result is `i*other.rows + k`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(&self.field, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Assembles a block matrix. Every block in a block-row must share its row
    /// count and every block in a block-column its column count.
    pub fn from_blocks(field: &Arc<NumberField>, blocks: &[Vec<ExactMatrix>]) -> Result<Self> {
        if blocks.is_empty() {
            return Ok(Self::zeros(field, 0, 0));
        }
        let ncols = blocks[0].len();
        if blocks.iter().any(|row| row.len() != ncols) {
            return Err(Error::structural("ragged block rows"));
        }
        let row_heights: Vec<usize> = blocks
            .iter()
            .map(|row| row.first().map_or(0, |b| b.rows))
            .collect();
        let col_widths: Vec<usize> = (0..ncols).map(|j| blocks[0][j].cols).collect();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                b.check_same_field(&blocks[0][0])?;
                if b.rows != row_heights[bi] || b.cols != col_widths[bj] {
                    return Err(Error::structural(format!(
                        "block ({bi},{bj}) has shape {}x{}, expected {}x{}",
                        b.rows, b.cols, row_heights[bi], col_widths[bj]
                    )));
                }
            }
        }
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.entries[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                    }
                }
                c0 += col_widths[bj];
            }
            r0 += row_heights[bi];
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let f = &self.field;
        Self::from_blocks(
            f,
            &[
                vec![self.clone(), Self::zeros(f, self.rows, other.cols)],
                vec![Self::zeros(f, other.rows, self.cols), other.clone()],
            ],
        )
    }

    pub fn vstack(parts: &[ExactMatrix], field: &Arc<NumberField>, cols: usize) -> Result<Self> {
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::structural("vstack column mismatch"));
            }
            rows += p.rows;
            entries.extend(p.entries.iter().cloned());
        }
        Self::from_entries(field, rows, cols, entries)
    }

    pub fn hstack(parts: &[ExactMatrix], field: &Arc<NumberField>, rows: usize) -> Result<Self> {
        let t: Vec<ExactMatrix> = parts.iter().map(ExactMatrix::transpose).collect();
        Ok(Self::vstack(&t, field, rows)?.transpose())
    }

    pub fn determinant_2x2(&self) -> Result<FieldElement> {
        if self.rows != 2 || self.cols != 2 {
            return Err(Error::structural("determinant_2x2 needs a 2x2 matrix"));
        }
        Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0))
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular or non-square.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut a: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut row: Vec<FieldElement> = self.entries[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        FieldElement::one(f)
                    } else {
                        FieldElement::zero(f)
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].inverse().ok()?;
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
        }
        let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some(ExactMatrix {
            rows: n,
            cols: n,
            field: f.clone(),
            entries,
        })
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

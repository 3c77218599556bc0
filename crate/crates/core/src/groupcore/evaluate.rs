use std::sync::Arc;

use super::algebra::{GroupAlgebraElement, GroupAlgebraMatrix};
use super::word::Word;
use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, NumberField};

/// Invertible square images of the generators, together with their inverses.
#[derive(Debug, Clone)]
pub struct GeneratorImages {
    field: Arc<NumberField>,
    dim: usize,
    forward: Vec<ExactMatrix>,
    inverse: Vec<ExactMatrix>,
}

impl GeneratorImages {
    /// Checks shapes and computes inverses; a singular image is a precondition error.
    pub fn new(images: Vec<ExactMatrix>) -> Result<Self> {
        let Some(first) = images.first() else {
            return Err(Error::structural("at least one generator image is required"));
        };
        let field = first.field().clone();
        let dim = first.rows();
        let mut inverse = Vec::with_capacity(images.len());
        for (j, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::structural(format!(
                    "image of generator {j} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != &field {
                return Err(Error::structural(format!(
                    "image of generator {j} lives in a different field"
                )));
            }
            let inv = m.inverse().ok_or_else(|| {
                Error::precondition(format!("image of generator {j} is not invertible"))
            })?;
            inverse.push(inv);
        }
        Ok(GeneratorImages {
            field,
            dim,
            forward: images,
            inverse,
        })
    }

    /// Images whose inverses are already known (e.g. symmetric powers of `g^{-1}`).
    pub fn with_inverses(forward: Vec<ExactMatrix>, inverse: Vec<ExactMatrix>) -> Result<Self> {
        if forward.len() != inverse.len() || forward.is_empty() {
            return Err(Error::structural("forward/inverse image counts differ"));
        }
        let field = forward[0].field().clone();
        let dim = forward[0].rows();
        for (f, i) in forward.iter().zip(&inverse) {
            if f.rows() != dim || f.cols() != dim || i.rows() != dim || i.cols() != dim {
                return Err(Error::structural("generator images of unequal size"));
            }
        }
        Ok(GeneratorImages {
            field,
            dim,
            forward,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn image(&self, j: usize) -> &ExactMatrix {
        &self.forward[j]
    }

    pub fn inverse_image(&self, j: usize) -> &ExactMatrix {
        &self.inverse[j]
    }
}

pub fn evaluate_word(w: &Word, images: &GeneratorImages) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::identity(&images.field, images.dim);
    for l in w.letters() {
        if l.generator >= images.len() {
            return Err(Error::structural(format!(
                "word uses generator {} but only {} images were given",
                l.generator,
                images.len()
            )));
        }
        let m = if l.inverse {
            &images.inverse[l.generator]
        } else {
            &images.forward[l.generator]
        };
        acc = acc.mul(m)?;
    }
    Ok(acc)
}

/// Linear extension of the word homomorphism.
pub fn evaluate_element(a: &GroupAlgebraElement, images: &GeneratorImages) -> Result<ExactMatrix> {
    if a.field() != &images.field {
        return Err(Error::structural(
            "group-algebra coefficients and images live in different fields",
        ));
    }
    let mut acc = ExactMatrix::zeros(&images.field, images.dim, images.dim);
    for (w, c) in a.terms() {
        let m = evaluate_word(w, images)?;
        acc = acc.add(&m.scale(c))?;
    }
    Ok(acc)
}

/// Block matrix of size `(rows*d) x (cols*d)`.
pub fn evaluate_matrix(a: &GroupAlgebraMatrix, images: &GeneratorImages) -> Result<ExactMatrix> {
    let blocks = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| evaluate_element(a.get(i, j), images))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if a.rows() == 0 || a.cols() == 0 {
        return Ok(ExactMatrix::zeros(
            &images.field,
            a.rows() * images.dim,
            a.cols() * images.dim,
        ));
    }
    ExactMatrix::from_blocks(&images.field, &blocks)
}

//! Fox calculus and the twisted chain complex of a presentation 2-complex.
//!
//! Row-vector convention: with g generators, r relators and d = dim W_λ,
//!
//! ```text
//! W^r --J--> W^g --D--> W
//! ```
//!
//! where `J` is `(r·d) x (g·d)` with blocks ρ(∂r_k/∂x_j) and `D` is `(g·d) x d`
//! with blocks ρ(x_j) - I. Then H_0 = d - rk D, H_1 = g·d - rk D - rk J and
//! H_2 = r·d - rk J.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{rank_exact, ExactMatrix, FieldElement, NumberField};
use crate::groupcore::{
    evaluate_matrix, GeneratorImages, GroupAlgebraElement, GroupAlgebraMatrix,
    GroupPresentation, Word,
};
use crate::repweights::{RepAssignment, WeightVector};

/// ∂w/∂x_j in the free group algebra.
pub fn fox_derivative(w: &Word, j: usize, field: &Arc<NumberField>) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(field);
    let one = FieldElement::one(field);
    let minus_one = FieldElement::from_int(field, -1);
    let letters = w.letters();
    for (pos, l) in letters.iter().enumerate() {
        if l.generator != j {
            continue;
        }
        let prefix = Word::from_letters(letters[..pos].iter().copied());
        if l.inverse {
            out.add_term(prefix.concat(&Word::generator_inverse(j)), minus_one.clone());
        } else {
            out.add_term(prefix, one.clone());
        }
    }
    out
}

/// The `r x g` matrix of Fox derivatives of the relators.
pub fn fox_jacobian(p: &GroupPresentation, field: &Arc<NumberField>) -> GroupAlgebraMatrix {
    let g = p.num_generators();
    let r = p.num_relators();
    let mut m = GroupAlgebraMatrix::zeros(field, r, g);
    for (k, rel) in p.relators().iter().enumerate() {
        for j in 0..g {
            m.set(k, j, fox_derivative(rel, j, field));
        }
    }
    m
}

/// The `g x 1` column of `x_j - 1`.
pub fn boundary_stack(p: &GroupPresentation, field: &Arc<NumberField>) -> GroupAlgebraMatrix {
    let g = p.num_generators();
    let mut m = GroupAlgebraMatrix::zeros(field, g, 1);
    for j in 0..g {
        m.set(j, 0, GroupAlgebraElement::generator_minus_one(field, j));
    }
    m
}

/// The evaluated boundary maps of the twisted complex.
#[derive(Debug, Clone)]
pub struct PresentationComplex {
    pub lambda: WeightVector,
    pub dim: usize,
    /// `(r·d) x (g·d)`
    pub jacobian: ExactMatrix,
    /// `(g·d) x d`
    pub boundary: ExactMatrix,
}

impl PresentationComplex {
    /// `J·D`, which must vanish.
    pub fn composite(&self) -> Result<ExactMatrix> {
        self.jacobian.mul(&self.boundary)
    }
}

/// Builds `J_ρ` and `D_ρ` for an admissible weight.
pub fn presentation_complex(
    p: &GroupPresentation,
    rep: &RepAssignment,
    lambda: &WeightVector,
) -> Result<PresentationComplex> {
    check_shapes(p, rep)?;
    rep.check_admissible(lambda)?;
    let field = rep.field();
    let d = lambda.dim();
    let g = p.num_generators();
    let r = p.num_relators();
    if g == 0 {
        return Ok(PresentationComplex {
            lambda: lambda.clone(),
            dim: d,
            jacobian: ExactMatrix::zeros(field, r * d, 0),
            boundary: ExactMatrix::zeros(field, 0, d),
        });
    }
    let images = rep.weight_images_unchecked(lambda)?;
    let jacobian = evaluate_matrix(&fox_jacobian(p, field), &images)?;
    let boundary = boundary_matrix(&images)?;
    Ok(PresentationComplex {
        lambda: lambda.clone(),
        dim: d,
        jacobian,
        boundary,
    })
}

fn boundary_matrix(images: &GeneratorImages) -> Result<ExactMatrix> {
    let d = images.dim();
    let id = ExactMatrix::identity(images.field(), d);
    let parts = (0..images.len())
        .map(|j| images.image(j).sub(&id))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::vstack(&parts, images.field(), d)
}

fn check_shapes(p: &GroupPresentation, rep: &RepAssignment) -> Result<()> {
    if p.num_generators() != rep.num_generators() {
        return Err(Error::structural(format!(
            "presentation has {} generators, representation has {}",
            p.num_generators(),
            rep.num_generators()
        )));
    }
    if p.num_relators() != rep.relator_signs().len() {
        return Err(Error::structural(
            "representation was validated against a different presentation",
        ));
    }
    Ok(())
}

/// Dimensions of H_0, H_1, H_2 of the twisted presentation complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub lambda: WeightVector,
    pub dim: usize,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_jacobian: usize,
    pub rank_boundary: usize,
    pub generators: usize,
    pub relators: usize,
    /// When false, `h2` is the homology of the presentation complex rather
    /// than group homology.
    pub aspherical: bool,
}

impl HomologyReport {
    pub fn h(&self, i: usize) -> usize {
        match i {
            0 => self.h0,
            1 => self.h1,
            2 => self.h2,
            _ => panic!("homology degree {i} out of range"),
        }
    }

    /// `h0 - h1 + h2 - d(1 - g + r)`; zero for every valid report.
    pub fn euler_defect(&self) -> i64 {
        let d = self.dim as i64;
        let chi = 1 - self.generators as i64 + self.relators as i64;
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64 - d * chi
    }
}

pub fn homology_dims(
    p: &GroupPresentation,
    rep: &RepAssignment,
    lambda: &WeightVector,
    aspherical: bool,
) -> Result<HomologyReport> {
    let cx = presentation_complex(p, rep, lambda)?;
    if !cx.composite()?.is_zero() {
        return Err(Error::structural(format!("J·D is not zero at λ = {lambda}")));
    }
    let report = report_from_complex(p, &cx, aspherical);
    if report.euler_defect() != 0 {
        return Err(Error::structural(format!("Euler identity fails at λ = {lambda}")));
    }
    Ok(report)
}

pub fn report_from_complex(
    p: &GroupPresentation,
    cx: &PresentationComplex,
    aspherical: bool,
) -> HomologyReport {
    let d = cx.dim;
    let g = p.num_generators();
    let r = p.num_relators();
    let rank_jacobian = rank_exact(&cx.jacobian);
    let rank_boundary = rank_exact(&cx.boundary);
    HomologyReport {
        lambda: cx.lambda.clone(),
        dim: d,
        h0: d - rank_boundary,
        h1: g * d - rank_boundary - rank_jacobian,
        h2: r * d - rank_jacobian,
        rank_jacobian,
        rank_boundary,
        generators: g,
        relators: r,
        aspherical,
    }
}

/// Common fixed vectors of the generator images on W_λ (no parity gate).
/// The images act on row vectors, so this is `d - rank` of the vertical
/// stack of `ρ(x_j) - I`.
pub fn invariants_dim(rep: &RepAssignment, lambda: &WeightVector) -> Result<usize> {
    let d = lambda.dim();
    if rep.num_generators() == 0 {
        return Ok(d);
    }
    let images = rep.weight_images_unchecked(lambda)?;
    Ok(d - rank_exact(&boundary_matrix(&images)?))
}

/// Coinvariants `W / span{(ρ(x_j) - I) W}` computed from the column action,
/// independent of [`invariants_dim`]; the two agree by duality.
pub fn coinvariants_dim(rep: &RepAssignment, lambda: &WeightVector) -> Result<usize> {
    let d = lambda.dim();
    if rep.num_generators() == 0 {
        return Ok(d);
    }
    let images = rep.weight_images_unchecked(lambda)?;
    let id = ExactMatrix::identity(images.field(), d);
    let parts = (0..images.len())
        .map(|j| images.image(j).sub(&id))
        .collect::<Result<Vec<_>>>()?;
    let wide = ExactMatrix::hstack(&parts, images.field(), d)?;
    Ok(d - rank_exact(&wide))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    #[test]
    fn fox_axioms() {
        let f = q();
        let p = GroupPresentation::free(&["x", "y"]).unwrap();
        let xy = p.parse_word("xy").unwrap();
        assert_eq!(fox_derivative(&xy, 0, &f), GroupAlgebraElement::one(&f));
        assert_eq!(
            fox_derivative(&xy, 1, &f),
            GroupAlgebraElement::from_word(&f, Word::generator(0))
        );
        let xinv = p.parse_word("X").unwrap();
        let expected = GroupAlgebraElement::monomial(&f, xinv.clone(), FieldElement::from_int(&f, -1));
        assert_eq!(fox_derivative(&xinv, 0, &f), expected);
        assert!(fox_derivative(&xinv, 1, &f).is_zero());
    }

    #[test]
    fn fundamental_identity() {
        let p = GroupPresentation::parse(&["a", "b"], &["abAB", "aabABaBBa", "abaBABabABAbabAB"])
            .unwrap();
        let f = q();
        for r in p.relators() {
            let mut sum = GroupAlgebraElement::zero(&f);
            for j in 0..2 {
                let term = fox_derivative(r, j, &f).mul(&GroupAlgebraElement::generator_minus_one(&f, j));
                sum = sum.add(&term);
            }
            let expected = GroupAlgebraElement::from_word(&f, r.clone()).sub(&GroupAlgebraElement::one(&f));
            assert_eq!(sum, expected);
        }
    }

    #[test]
    fn trivial_group() {
        let p = GroupPresentation::new(vec![], vec![], None).unwrap();
        let rep = RepAssignment::new(&p, vec![]).unwrap();
        let rep_report = homology_dims(&p, &rep, &WeightVector::single(3), true).unwrap();
        assert_eq!((rep_report.h0, rep_report.h1, rep_report.h2), (4, 0, 0));
        assert_eq!(rep_report.euler_defect(), 0);
    }

    #[test]
    fn free_group_shapes_and_sanov() {
        let p = GroupPresentation::free(&["a", "b"]).unwrap();
        let a = ExactMatrix::from_ints(&q(), &[&[1, 2], &[0, 1]]).unwrap();
        let b = ExactMatrix::from_ints(&q(), &[&[1, 0], &[2, 1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![a, b]).unwrap();
        let w = WeightVector::single(2);
        let cx = presentation_complex(&p, &rep, &w).unwrap();
        assert_eq!((cx.jacobian.rows(), cx.jacobian.cols()), (0, 6));
        assert_eq!((cx.boundary.rows(), cx.boundary.cols()), (6, 3));
        let h = homology_dims(&p, &rep, &w, true).unwrap();
        assert_eq!((h.h0, h.h1, h.h2), (0, 3, 0));
        assert_eq!(invariants_dim(&rep, &WeightVector::single(1)).unwrap(), 0);
    }

    #[test]
    fn trivial_images_give_zero_boundary() {
        let p = GroupPresentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let id = ExactMatrix::identity(&q(), 2);
        let rep = RepAssignment::single_factor(&p, vec![id.clone(), id]).unwrap();
        let cx = presentation_complex(&p, &rep, &WeightVector::single(2)).unwrap();
        assert!(cx.boundary.is_zero());
        assert!(cx.composite().unwrap().is_zero());
    }

    #[test]
    fn c2_invariants_and_parity() {
        let p = GroupPresentation::parse(&["g"], &["gg"])
            .unwrap()
            .with_central_generator(0)
            .unwrap();
        let minus = ExactMatrix::from_ints(&q(), &[&[-1, 0], &[0, -1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![minus]).unwrap();
        assert_eq!(invariants_dim(&rep, &WeightVector::single(2)).unwrap(), 3);
        assert_eq!(invariants_dim(&rep, &WeightVector::single(3)).unwrap(), 0);
        let err = homology_dims(&p, &rep, &WeightVector::single(3), false).unwrap_err();
        assert_eq!(err.kind(), "parity");
    }

    #[test]
    fn figure_eight_weight_two() {
        let field = NumberField::from_integers(&[1, -1, 1]).unwrap();
        let p = GroupPresentation::parse(&["a", "b"], &["abABaBAbaB"]).unwrap();
        let omega = FieldElement::generator(&field);
        let one = FieldElement::one(&field);
        let zero = FieldElement::zero(&field);
        let a = ExactMatrix::from_entries(&field, 2, 2, vec![one.clone(), one.clone(), zero.clone(), one.clone()])
            .unwrap();
        let b = ExactMatrix::from_entries(&field, 2, 2, vec![one.clone(), zero, omega, one]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![a, b]).unwrap();
        let w = WeightVector::single(2);
        let cx = presentation_complex(&p, &rep, &w).unwrap();
        assert_eq!((cx.jacobian.rows(), cx.jacobian.cols()), (3, 6));
        assert_eq!((cx.boundary.rows(), cx.boundary.cols()), (6, 3));
        assert!(cx.composite().unwrap().is_zero());
        let h = report_from_complex(&p, &cx, true);
        assert_eq!((h.h0, h.h1, h.h2), (0, 1, 1));
        assert_eq!(h.euler_defect(), 0);
        for l in [1u32, 3, 4] {
            let w = WeightVector::single(l);
            assert_eq!(
                invariants_dim(&rep, &w).unwrap(),
                coinvariants_dim(&rep, &w).unwrap()
            );
        }
    }
}

//! Irreducible representations W_λ = Sym^{λ1} C² ⊗ ... ⊗ Sym^{λn} C² of SL2 x ... x SL2,
//! and representation data for presented groups.
//!
//! Basis convention: Sym^λ has basis x^{λ-i} y^i for i = 0..λ, and
//! g = [[a, b], [c, d]] acts by x -> a x + c y, y -> b x + d y, so that
//! column i of `sym_power(g, λ)` holds the coefficients of
//! (a x + c y)^{λ-i} (b x + d y)^i. Kronecker factors follow the declared
//! factor order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, FieldElement, NumberField};
use crate::groupcore::{evaluate_word, GeneratorImages, GroupPresentation};

/// Highest weight (λ1, ..., λn).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(lambdas: Vec<u32>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(Error::structural("a weight vector needs at least one factor"));
        }
        Ok(WeightVector(lambdas))
    }

    pub fn single(lambda: u32) -> Self {
        WeightVector(vec![lambda])
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.0
    }

    pub fn factors(&self) -> usize {
        self.0.len()
    }

    /// dim W_λ = prod (λj + 1).
    pub fn dim(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).product()
    }

    pub fn min_weight(&self) -> u32 {
        *self.0.iter().min().unwrap()
    }
}

/// Renders as `2` or `2;4` (semicolons keep it CSV-safe).
impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for WeightVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lambdas = s
            .split([';', ','])
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(0, format!("invalid weight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(lambdas)
    }
}

fn check_det_one(g: &ExactMatrix) -> Result<()> {
    let det = g.determinant_2x2()?;
    if !det.is_one() {
        return Err(Error::precondition(format!("determinant is {det}, expected 1")));
    }
    Ok(())
}

fn poly_mul(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let field = a[0].field();
    let mut out = vec![FieldElement::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// The action of `g` on Sym^λ of the standard representation (size λ+1).
pub fn sym_power(g: &ExactMatrix, lambda: u32) -> Result<ExactMatrix> {
    check_det_one(g)?;
    Ok(sym_power_unchecked(g, lambda))
}

fn sym_power_unchecked(g: &ExactMatrix, lambda: u32) -> ExactMatrix {
    let field = g.field();
    let n = lambda as usize;
    // linear forms as coefficient lists in powers of y
    let image_x = [g.get(0, 0).clone(), g.get(1, 0).clone()];
    let image_y = [g.get(0, 1).clone(), g.get(1, 1).clone()];
    let one = vec![FieldElement::one(field)];
    let mut x_powers = vec![one.clone()];
    let mut y_powers = vec![one];
    for k in 1..=n {
        x_powers.push(poly_mul(&x_powers[k - 1], &image_x));
        y_powers.push(poly_mul(&y_powers[k - 1], &image_y));
    }
    let mut out = ExactMatrix::zeros(field, n + 1, n + 1);
    for i in 0..=n {
        let column = poly_mul(&x_powers[n - i], &y_powers[i]);
        for (k, c) in column.into_iter().enumerate() {
            out.set(k, i, c);
        }
    }
    out
}

/// `⊗_j sym_power(gs[j], λj)`, of dimension `prod (λj + 1)`.
pub fn weight_rep(gs: &[ExactMatrix], lambda: &WeightVector) -> Result<ExactMatrix> {
    if gs.len() != lambda.factors() {
        return Err(Error::structural(format!(
            "{} matrices for a weight with {} factors",
            gs.len(),
            lambda.factors()
        )));
    }
    let mut acc: Option<ExactMatrix> = None;
    for (g, &l) in gs.iter().zip(lambda.lambdas()) {
        let s = sym_power(g, l)?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.kronecker(&s)?,
        });
    }
    Ok(acc.unwrap())
}

/// `prod_{j : z_j = -I} (-1)^{λj}`, the scalar by which a central element acts.
pub fn central_character_value(lambda: &WeightVector, z: &[ExactMatrix]) -> Result<i8> {
    if z.len() != lambda.factors() {
        return Err(Error::structural("central element has the wrong number of factors"));
    }
    let mut value = 1i8;
    for (j, (m, &l)) in z.iter().zip(lambda.lambdas()).enumerate() {
        match scalar_sign(m) {
            Some(1) => {}
            Some(_) => {
                if l % 2 == 1 {
                    value = -value;
                }
            }
            None => {
                return Err(Error::precondition(format!(
                    "factor {j} of the central element is neither I nor -I"
                )))
            }
        }
    }
    Ok(value)
}

/// `Some(1)` for I, `Some(-1)` for -I, `None` otherwise.
pub fn scalar_sign(m: &ExactMatrix) -> Option<i8> {
    if m.is_identity() {
        return Some(1);
    }
    let neg = m.scale(&FieldElement::from_int(m.field(), -1));
    neg.is_identity().then_some(-1)
}

/// Central signs attached to the current weight: which designated central
/// elements act by `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    pub signs: BTreeMap<String, i8>,
}

impl CentralCharacter {
    pub fn is_trivial(&self) -> bool {
        self.signs.values().all(|&s| s == 1)
    }
}

/// Images of a presented group's generators in SL2(L)^n.
#[derive(Debug, Clone)]
pub struct RepAssignment {
    field: Arc<NumberField>,
    factors: usize,
    /// `images[generator][factor]`
    images: Vec<Vec<ExactMatrix>>,
    /// `relator_signs[relator][factor]`: relator maps to `sign * I`.
    relator_signs: Vec<Vec<i8>>,
    /// Per-factor sign of the designated central generator, if any.
    central: Option<(usize, Vec<i8>)>,
}

impl RepAssignment {
    /// Validates `det = 1` for every image and that every relator maps to `±I`
    /// in every factor; the first failure is reported.
    pub fn new(presentation: &GroupPresentation, images: Vec<Vec<ExactMatrix>>) -> Result<Self> {
        let g = presentation.num_generators();
        if images.len() != g {
            return Err(Error::structural(format!(
                "{} generator images for {g} generators",
                images.len()
            )));
        }
        let factors = images.first().map_or(1, Vec::len);
        if factors == 0 || images.iter().any(|v| v.len() != factors) {
            return Err(Error::structural("every generator needs one image per factor"));
        }
        let field = match images.first() {
            Some(v) => v[0].field().clone(),
            None => NumberField::rationals(),
        };
        for (j, per_factor) in images.iter().enumerate() {
            for (f, m) in per_factor.iter().enumerate() {
                if m.rows() != 2 || m.cols() != 2 {
                    return Err(Error::structural(format!(
                        "image of `{}` in factor {} is not 2x2",
                        presentation.generator_names()[j],
                        f + 1
                    )));
                }
                if m.field() != &field {
                    return Err(Error::Validation(format!(
                        "image of `{}` in factor {} lies outside the declared field",
                        presentation.generator_names()[j],
                        f + 1
                    )));
                }
                let det = m.determinant_2x2()?;
                if !det.is_one() {
                    return Err(Error::Validation(format!(
                        "image of `{}` in factor {} has determinant {det}",
                        presentation.generator_names()[j],
                        f + 1
                    )));
                }
            }
        }
        let mut relator_signs = Vec::with_capacity(presentation.num_relators());
        for (k, r) in presentation.relators().iter().enumerate() {
            let mut signs = Vec::with_capacity(factors);
            for f in 0..factors {
                let imgs = factor_images(&images, f)?;
                let value = evaluate_word(r, &imgs)?;
                let Some(s) = scalar_sign(&value) else {
                    return Err(Error::Validation(format!(
                        "relator {} (`{}`) does not map to ±I in factor {}",
                        k + 1,
                        presentation.display_word(r),
                        f + 1
                    )));
                };
                signs.push(s);
            }
            relator_signs.push(signs);
        }
        let central = match presentation.central_order2() {
            None => None,
            Some(c) => {
                let mut signs = Vec::with_capacity(factors);
                for (f, m) in images[c].iter().enumerate() {
                    let Some(s) = scalar_sign(m) else {
                        return Err(Error::Validation(format!(
                            "designated central generator `{}` is not ±I in factor {}",
                            presentation.generator_names()[c],
                            f + 1
                        )));
                    };
                    signs.push(s);
                }
                Some((c, signs))
            }
        };
        Ok(RepAssignment {
            field,
            factors,
            images,
            relator_signs,
            central,
        })
    }

    /// Single-factor representation from one 2x2 image per generator.
    pub fn single_factor(
        presentation: &GroupPresentation,
        images: Vec<ExactMatrix>,
    ) -> Result<Self> {
        Self::new(presentation, images.into_iter().map(|m| vec![m]).collect())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, generator: usize, factor: usize) -> &ExactMatrix {
        &self.images[generator][factor]
    }

    pub fn images(&self) -> &[Vec<ExactMatrix>] {
        &self.images
    }

    pub fn relator_signs(&self) -> &[Vec<i8>] {
        &self.relator_signs
    }

    pub fn central_generator(&self) -> Option<usize> {
        self.central.as_ref().map(|(c, _)| *c)
    }

    /// Factors in which some relator or the central generator maps to `-I`;
    /// weights must be even there for every sign pattern to act trivially.
    pub fn sign_factors(&self) -> Vec<bool> {
        let mut out = vec![false; self.factors];
        for signs in &self.relator_signs {
            for (f, &s) in signs.iter().enumerate() {
                out[f] |= s < 0;
            }
        }
        if let Some((_, signs)) = &self.central {
            for (f, &s) in signs.iter().enumerate() {
                out[f] |= s < 0;
            }
        }
        out
    }

    fn pattern_value(signs: &[i8], lambda: &WeightVector) -> (i8, Option<usize>) {
        let mut value = 1i8;
        let mut first = None;
        for (f, (&s, &l)) in signs.iter().zip(lambda.lambdas()).enumerate() {
            if s < 0 && l % 2 == 1 {
                value = -value;
                first.get_or_insert(f);
            }
        }
        (value, first)
    }

    pub fn central_character(&self, lambda: &WeightVector) -> CentralCharacter {
        let mut signs = BTreeMap::new();
        for (k, s) in self.relator_signs.iter().enumerate() {
            signs.insert(format!("relator {}", k + 1), Self::pattern_value(s, lambda).0);
        }
        if let Some((c, s)) = &self.central {
            signs.insert(format!("generator {}", c + 1), Self::pattern_value(s, lambda).0);
        }
        CentralCharacter { signs }
    }

    /// The parity gate: every relator must act as `+Id` on W_λ and the
    /// designated central generator (if any) must act trivially.
    pub fn check_admissible(&self, lambda: &WeightVector) -> Result<()> {
        if lambda.factors() != self.factors {
            return Err(Error::structural(format!(
                "weight {lambda} has {} factors, representation has {}",
                lambda.factors(),
                self.factors
            )));
        }
        for (k, signs) in self.relator_signs.iter().enumerate() {
            let (value, first) = Self::pattern_value(signs, lambda);
            if value < 0 {
                let f = first.unwrap();
                return Err(Error::Parity {
                    factor: f + 1,
                    lambda: lambda.to_string(),
                    reason: format!("relator {} acts by -1 on W_λ", k + 1),
                });
            }
        }
        if let Some((c, signs)) = &self.central {
            let (value, first) = Self::pattern_value(signs, lambda);
            if value < 0 {
                return Err(Error::Parity {
                    factor: first.unwrap() + 1,
                    lambda: lambda.to_string(),
                    reason: format!("central generator {} acts by -1 on W_λ", c + 1),
                });
            }
        }
        Ok(())
    }

    /// The image `weight_rep` of generator `j` on W_λ (no parity check).
    pub fn weight_image(&self, j: usize, lambda: &WeightVector) -> Result<ExactMatrix> {
        weight_rep(&self.images[j], lambda)
    }

    /// All generator images on W_λ with their inverses, no parity check.
    pub fn weight_images_unchecked(&self, lambda: &WeightVector) -> Result<GeneratorImages> {
        if lambda.factors() != self.factors {
            return Err(Error::structural("weight/factor count mismatch"));
        }
        let mut forward = Vec::with_capacity(self.images.len());
        let mut inverse = Vec::with_capacity(self.images.len());
        for per_factor in &self.images {
            forward.push(weight_rep(per_factor, lambda)?);
            let inv: Vec<ExactMatrix> = per_factor.iter().map(sl2_inverse).collect();
            inverse.push(weight_rep(&inv, lambda)?);
        }
        if forward.is_empty() {
            return Err(Error::structural("representation of a group with no generators"));
        }
        GeneratorImages::with_inverses(forward, inverse)
    }

    /// Generator images on W_λ after passing the parity gate.
    pub fn weight_images(&self, lambda: &WeightVector) -> Result<GeneratorImages> {
        self.check_admissible(lambda)?;
        self.weight_images_unchecked(lambda)
    }
}

/// `[[a,b],[c,d]]^{-1} = [[d,-b],[-c,a]]` for determinant one.
pub fn sl2_inverse(m: &ExactMatrix) -> ExactMatrix {
    let f = m.field();
    ExactMatrix::from_entries(
        f,
        2,
        2,
        vec![
            m.get(1, 1).clone(),
            -m.get(0, 1),
            -m.get(1, 0),
            m.get(0, 0).clone(),
        ],
    )
    .expect("2x2 shape")
}

fn factor_images(images: &[Vec<ExactMatrix>], f: usize) -> Result<GeneratorImages> {
    let forward: Vec<ExactMatrix> = images.iter().map(|v| v[f].clone()).collect();
    let inverse: Vec<ExactMatrix> = forward.iter().map(sl2_inverse).collect();
    GeneratorImages::with_inverses(forward, inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(&q(), rows).unwrap()
    }

    #[test]
    fn small_symmetric_powers() {
        let g = m(&[&[2, 3], &[1, 2]]);
        assert!(sym_power(&g, 0).unwrap().is_identity());
        assert_eq!(sym_power(&g, 1).unwrap(), g);
        // (x)^{2-i} (x + y)^i expanded in x^2, xy, y^2
        let t = m(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            sym_power(&t, 2).unwrap(),
            m(&[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]])
        );
    }

    #[test]
    fn determinant_must_be_one() {
        let g = m(&[&[2, 0], &[0, 1]]);
        assert_eq!(sym_power(&g, 2).unwrap_err().kind(), "precondition");
    }

    #[test]
    fn weight_rep_dimensions() {
        let g = m(&[&[1, 1], &[0, 1]]);
        let h = m(&[&[1, 0], &[2, 1]]);
        let w = WeightVector::new(vec![2, 3]).unwrap();
        let r = weight_rep(&[g.clone(), h.clone()], &w).unwrap();
        assert_eq!((r.rows(), r.cols()), (12, 12));
        let id = ExactMatrix::identity(&q(), 2);
        assert!(weight_rep(&[id.clone(), id], &w).unwrap().is_identity());
        assert_eq!(
            weight_rep(std::slice::from_ref(&g), &WeightVector::single(4)).unwrap(),
            sym_power(&g, 4).unwrap()
        );
        assert_eq!(weight_rep(&[g], &w).unwrap_err().kind(), "structural");
    }

    #[test]
    fn central_values() {
        let minus = m(&[&[-1, 0], &[0, -1]]);
        let id = ExactMatrix::identity(&q(), 2);
        assert_eq!(central_character_value(&WeightVector::single(3), std::slice::from_ref(&minus)).unwrap(), -1);
        assert_eq!(central_character_value(&WeightVector::single(4), std::slice::from_ref(&minus)).unwrap(), 1);
        let w = WeightVector::new(vec![3, 5]).unwrap();
        assert_eq!(central_character_value(&w, &[id.clone(), id]).unwrap(), 1);
        let bad = m(&[&[1, 1], &[0, 1]]);
        assert!(central_character_value(&WeightVector::single(1), &[bad]).is_err());
    }

    #[test]
    fn parity_gate_on_c2() {
        let p = GroupPresentation::parse(&["g"], &["gg"])
            .unwrap()
            .with_central_generator(0)
            .unwrap();
        let rep = RepAssignment::single_factor(&p, vec![m(&[&[-1, 0], &[0, -1]])]).unwrap();
        assert_eq!(rep.relator_signs(), &[vec![1]]);
        assert!(rep.check_admissible(&WeightVector::single(2)).is_ok());
        match rep.check_admissible(&WeightVector::single(3)).unwrap_err() {
            Error::Parity { factor, .. } => assert_eq!(factor, 1),
            e => panic!("unexpected {e:?}"),
        }
        assert!(!rep.central_character(&WeightVector::single(3)).is_trivial());
    }

    #[test]
    fn relator_with_minus_identity() {
        // g^2 -> -I for g of order 4 in SL2
        let p = GroupPresentation::parse(&["g"], &["gg"]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![m(&[&[0, -1], &[1, 0]])]).unwrap();
        assert_eq!(rep.relator_signs(), &[vec![-1]]);
        assert!(rep.check_admissible(&WeightVector::single(3)).is_err());
        // relator image on W_λ is (-1)^λ Id
        for l in 0..5 {
            let w = WeightVector::single(l);
            let img = rep.weight_image(0, &w).unwrap();
            let sq = img.mul(&img).unwrap();
            let expected = if l % 2 == 0 { 1 } else { -1 };
            assert_eq!(scalar_sign(&sq), Some(expected));
            assert_eq!(rep.check_admissible(&w).is_ok(), l % 2 == 0);
        }
    }

    #[test]
    fn non_scalar_relator_rejected() {
        let p = GroupPresentation::parse(&["a"], &["aa"]).unwrap();
        let err = RepAssignment::single_factor(&p, vec![m(&[&[1, 1], &[0, 1]])]).unwrap_err();
        assert_eq!(err.kind(), "validation");
    }

    fn sl2_strategy() -> impl Strategy<Value = ExactMatrix> {
        // products of elementary unipotents stay in SL2(Z)
        proptest::collection::vec((-3i64..=3, any::<bool>()), 1..4).prop_map(|steps| {
            let mut acc = ExactMatrix::identity(&q(), 2);
            for (k, upper) in steps {
                let e = if upper { m(&[&[1, k], &[0, 1]]) } else { m(&[&[1, 0], &[k, 1]]) };
                acc = acc.mul(&e).unwrap();
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sym_power_is_multiplicative(g in sl2_strategy(), h in sl2_strategy(), l in 0u32..6) {
            let gh = g.mul(&h).unwrap();
            let lhs = sym_power(&gh, l).unwrap();
            let rhs = sym_power(&g, l).unwrap().mul(&sym_power(&h, l).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let inv = sym_power(&sl2_inverse(&g), l).unwrap();
            prop_assert!(inv.mul(&sym_power(&g, l).unwrap()).unwrap().is_identity());
        }

        #[test]
        fn central_scalar_multiple(g in sl2_strategy(), l1 in 0u32..4, l2 in 0u32..4, flip in any::<bool>()) {
            let w = WeightVector::new(vec![l1, l2]).unwrap();
            let minus = m(&[&[-1, 0], &[0, -1]]);
            let id = ExactMatrix::identity(&q(), 2);
            let z = vec![if flip { minus.clone() } else { id.clone() }, minus];
            let zg: Vec<ExactMatrix> = z.iter().map(|zi| zi.mul(&g).unwrap()).collect();
            let base = weight_rep(&[g.clone(), g.clone()], &w).unwrap();
            let value = central_character_value(&w, &z).unwrap();
            let scaled = base.scale(&FieldElement::from_int(&q(), value as i64));
            prop_assert_eq!(weight_rep(&zg, &w).unwrap(), scaled);
            prop_assert_eq!(base.rows(), w.dim());
        }
    }
}

//! Exactly computable Sylvester rank functions: ranks through W_λ, von Neumann
//! ranks of finite groups (plain and twisted by a central character) and
//! finite-quotient ranks.

mod finite;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

pub use finite::{
    FiniteCharacter, FiniteGroup, FiniteQuotientMap, GroupElement, ModMatrices, Permutation,
    ZnVector,
};

use crate::error::{Error, Result};
use crate::exactalg::{companion_embed, rank_exact, ExactMatrix, FieldElement, Rational};
use crate::groupcore::{evaluate_matrix, GroupAlgebraMatrix};
use crate::repweights::{RepAssignment, WeightVector};

/// Environment variable overriding [`DEFAULT_MEMORY_CAP`].
pub const MEMORY_CAP_ENV: &str = "SYLVRANK_MEMORY_CAP";

/// Largest side length of a materialized regular-representation matrix.
pub const DEFAULT_MEMORY_CAP: usize = 4096;

pub fn memory_cap() -> usize {
    std::env::var(MEMORY_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MEMORY_CAP)
}

/// An exact rank divided by a declared normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankValue {
    pub rank: usize,
    pub normalization: usize,
}

impl RankValue {
    pub fn new(rank: usize, normalization: usize) -> Self {
        assert!(normalization > 0, "rank normalization must be positive");
        RankValue {
            rank,
            normalization,
        }
    }

    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.rank), BigInt::from(self.normalization))
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `rk(ρ_λ(A)) / dim W_λ`.
pub fn sylvester_rank(
    a: &GroupAlgebraMatrix,
    rep: &RepAssignment,
    lambda: &WeightVector,
) -> Result<RankValue> {
    let m = evaluate_on_weight(a, rep, lambda)?;
    Ok(RankValue::new(rank_exact(&m), lambda.dim()))
}

/// The same rank computed after replacing every entry by its multiplication
/// matrix over ℚ, normalized by `dim W_λ · [L:ℚ]`.
pub fn sylvester_rank_embedded(
    a: &GroupAlgebraMatrix,
    rep: &RepAssignment,
    lambda: &WeightVector,
) -> Result<RankValue> {
    let m = evaluate_on_weight(a, rep, lambda)?;
    let deg = rep.field().degree();
    Ok(RankValue::new(rank_exact(&companion_embed(&m)), lambda.dim() * deg))
}

/// `ρ_λ(A)` after the parity gate.
pub fn evaluate_on_weight(
    a: &GroupAlgebraMatrix,
    rep: &RepAssignment,
    lambda: &WeightVector,
) -> Result<ExactMatrix> {
    if a.field() != rep.field() {
        return Err(Error::structural(
            "matrix coefficients and representation live in different fields",
        ));
    }
    rep.check_admissible(lambda)?;
    if rep.num_generators() == 0 {
        if a.words().any(|w| !w.is_identity()) {
            return Err(Error::structural("word in a group with no generators"));
        }
        let d = lambda.dim();
        let mut out = ExactMatrix::zeros(rep.field(), a.rows() * d, a.cols() * d);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let c = a.get(i, j).augmentation();
                for k in 0..d {
                    out.set(i * d + k, j * d + k, c.clone());
                }
            }
        }
        return Ok(out);
    }
    let images = rep.weight_images_unchecked(lambda)?;
    evaluate_matrix(a, &images)
}

fn check_cap(side: usize) -> Result<()> {
    let cap = memory_cap();
    if side > cap {
        return Err(Error::CapExceeded(format!(
            "regular-representation matrix of side {side} exceeds the memory cap {cap} (set {MEMORY_CAP_ENV} to raise it)"
        )));
    }
    Ok(())
}

/// Image of `A` under the right regular representation of `group` acting on
/// row vectors: the word `w` sends the basis vector `e_x` to `e_{x·w}`.
pub fn regular_matrix(a: &GroupAlgebraMatrix, group: &FiniteGroup) -> Result<ExactMatrix> {
    let q = group.order();
    let side = q * a.rows().max(a.cols()) * a.field().degree();
    check_cap(side)?;
    let field = a.field();
    let mut out = ExactMatrix::zeros(field, a.rows() * q, a.cols() * q);
    let mut translations: HashMap<usize, Vec<u32>> = HashMap::new();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for (w, c) in a.get(i, j).terms() {
                let y = group.element_of_word(w)?;
                let perm = translations
                    .entry(y)
                    .or_insert_with(|| group.right_translation(y));
                for (x, &xy) in perm.iter().enumerate() {
                    let (r, s) = (i * q + x, j * q + xy as usize);
                    let v = out.get(r, s) + c;
                    out.set(r, s, v);
                }
            }
        }
    }
    Ok(out)
}

/// `rk_L(A) / |Q|` with `A` acting on `L[Q]^r`; words of `A` are read in the
/// generators of `group`.
pub fn finite_vn_rank(a: &GroupAlgebraMatrix, group: &FiniteGroup) -> Result<RankValue> {
    let m = regular_matrix(a, group)?;
    Ok(RankValue::new(rank_exact(&m), group.order()))
}

/// Image of `A` on `L[Q]_χ = L[Q] / (z - χ(z))`, with basis a transversal of
/// `Q/Z` (the smallest index in each coset).
pub fn twisted_matrix(
    a: &GroupAlgebraMatrix,
    group: &FiniteGroup,
    chi: &FiniteCharacter,
) -> Result<ExactMatrix> {
    if a.field() != chi.field() {
        return Err(Error::structural("character values and matrix live in different fields"));
    }
    let q = group.order();
    let zs = chi.elements();
    // coset representative and the central correction x = rep(x) · z
    let mut rep_of = vec![usize::MAX; q];
    let mut correction = vec![0usize; q];
    let mut transversal = Vec::new();
    for x in 0..q {
        if rep_of[x] != usize::MAX {
            continue;
        }
        let t = transversal.len();
        transversal.push(x);
        for &z in zs {
            let y = group.mul(x, z);
            rep_of[y] = t;
            correction[y] = z;
        }
    }
    let n = transversal.len();
    check_cap(n * a.rows().max(a.cols()) * a.field().degree())?;
    let field = a.field();
    let mut out = ExactMatrix::zeros(field, a.rows() * n, a.cols() * n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for (w, c) in a.get(i, j).terms() {
                for (t, &x) in transversal.iter().enumerate() {
                    let y = group.act(x, w)?;
                    let value = chi.value_at(correction[y]).expect("correction lies in Z");
                    let (r, s) = (i * n + t, j * n + rep_of[y]);
                    let v = out.get(r, s) + &(c * value);
                    out.set(r, s, v);
                }
            }
        }
    }
    Ok(out)
}

/// `rk_L(A on L[Q]_χ) / |Q/Z|`.
pub fn twisted_finite_rank(
    a: &GroupAlgebraMatrix,
    group: &FiniteGroup,
    chi: &FiniteCharacter,
) -> Result<RankValue> {
    let m = twisted_matrix(a, group, chi)?;
    Ok(RankValue::new(rank_exact(&m), group.order() / chi.subgroup_order()))
}

/// `(1/|Z|) Σ_χ twisted_finite_rank(A, χ)` as an exact rational.
pub fn averaged_twisted_rank(
    a: &GroupAlgebraMatrix,
    group: &FiniteGroup,
    characters: &[FiniteCharacter],
) -> Result<Rational> {
    let mut sum = Rational::from_integer(0.into());
    for chi in characters {
        sum += twisted_finite_rank(a, group, chi)?.value();
    }
    Ok(sum / Rational::from_integer(BigInt::from(characters.len())))
}

/// Rank of `A` pushed into a finite quotient, normalized by the order of the
/// image. The regular representation of the full quotient restricted to the
/// image is a multiple of the image's regular representation, so the
/// normalized rank does not depend on which one is used.
pub fn luck_rank(a: &GroupAlgebraMatrix, quotient: &FiniteQuotientMap) -> Result<RankValue> {
    finite_vn_rank(a, quotient.group())
}

/// [`luck_rank`] along a chain; each quotient must factor through the next.
pub fn luck_sequence(
    a: &GroupAlgebraMatrix,
    chain: &[FiniteQuotientMap],
) -> Result<Vec<RankValue>> {
    for (k, pair) in chain.windows(2).enumerate() {
        if !pair[0].group().is_quotient_of(pair[1].group()) {
            return Err(Error::precondition(format!(
                "quotient chain is not nested at level {}: {} does not factor through {}",
                k + 1,
                pair[0].label(),
                pair[1].label()
            )));
        }
    }
    chain.par_iter().map(|q| luck_rank(a, q)).collect()
}

/// Convenience: `c` as a `1 x 1` coefficient.
pub fn scalar_matrix(c: FieldElement) -> GroupAlgebraMatrix {
    let field = c.field().clone();
    GroupAlgebraMatrix::from_element(crate::groupcore::GroupAlgebraElement::monomial(
        &field,
        crate::groupcore::Word::identity(),
        c,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::NumberField;
    use crate::foxhomology::fox_jacobian;
    use crate::groupcore::{GroupAlgebraElement, GroupPresentation, Word};
    use std::sync::Arc;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn t_minus_one(f: &Arc<NumberField>) -> GroupAlgebraMatrix {
        GroupAlgebraMatrix::from_element(GroupAlgebraElement::generator_minus_one(f, 0))
    }

    fn rv(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn c2_representation_ranks() {
        let p = GroupPresentation::parse(&["g"], &["gg"]).unwrap();
        let minus = ExactMatrix::from_ints(&q(), &[&[-1, 0], &[0, -1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![minus]).unwrap();
        let a = t_minus_one(&q());
        for l in 0..6u32 {
            let r = sylvester_rank(&a, &rep, &WeightVector::single(l)).unwrap();
            assert_eq!(r.value(), rv((l % 2) as i64, 1));
        }
        let one = scalar_matrix(FieldElement::one(&q()));
        assert_eq!(sylvester_rank(&one, &rep, &WeightVector::single(3)).unwrap().value(), rv(1, 1));
    }

    #[test]
    fn figure_eight_jacobian_rank() {
        let field = NumberField::from_integers(&[1, -1, 1]).unwrap();
        let p = GroupPresentation::parse(&["a", "b"], &["abABaBAbaB"]).unwrap();
        let w = FieldElement::generator(&field);
        let (o, z) = (FieldElement::one(&field), FieldElement::zero(&field));
        let a = ExactMatrix::from_entries(&field, 2, 2, vec![o.clone(), o.clone(), z.clone(), o.clone()]).unwrap();
        let b = ExactMatrix::from_entries(&field, 2, 2, vec![o.clone(), z, w, o]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![a, b]).unwrap();
        let jac = fox_jacobian(&p, &field);
        for l in [2u32, 4] {
            let lam = WeightVector::single(l);
            let r = sylvester_rank(&jac, &rep, &lam).unwrap();
            assert_eq!(r.value(), rv(l as i64, l as i64 + 1));
            assert_eq!(sylvester_rank_embedded(&jac, &rep, &lam).unwrap().value(), r.value());
        }
    }

    #[test]
    fn finite_ranks() {
        let f = q();
        let a = t_minus_one(&f);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(finite_vn_rank(&a, &c2).unwrap().value(), rv(1, 2));
        assert_eq!(finite_vn_rank(&a, &c3).unwrap().value(), rv(2, 3));
        let one = scalar_matrix(FieldElement::one(&f));
        assert_eq!(finite_vn_rank(&one, &c3).unwrap().value(), rv(1, 1));
    }

    #[test]
    fn twisted_c2() {
        let f = q();
        let a = t_minus_one(&f);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let chars = FiniteCharacter::cyclic_characters(&c2, 1, &FieldElement::from_int(&f, -1)).unwrap();
        assert_eq!(twisted_finite_rank(&a, &c2, &chars[0]).unwrap().value(), rv(0, 1));
        assert_eq!(twisted_finite_rank(&a, &c2, &chars[1]).unwrap().value(), rv(1, 1));
        let triv = FiniteCharacter::trivial(&f);
        assert_eq!(
            twisted_finite_rank(&a, &c2, &triv).unwrap(),
            finite_vn_rank(&a, &c2).unwrap()
        );
        assert_eq!(averaged_twisted_rank(&a, &c2, &chars).unwrap(), rv(1, 2));
    }

    #[test]
    fn luck_examples() {
        let f = q();
        let z = GroupPresentation::free(&["t"]).unwrap();
        let a = t_minus_one(&f);
        let chain: Vec<FiniteQuotientMap> = [2u64, 4, 8]
            .iter()
            .map(|&n| FiniteQuotientMap::abelian(&z, vec![n], vec![vec![1]]).unwrap())
            .collect();
        let vals: Vec<Rational> = luck_sequence(&a, &chain).unwrap().iter().map(|r| r.value()).collect();
        assert_eq!(vals, vec![rv(1, 2), rv(3, 4), rv(7, 8)]);
        let trivial = FiniteQuotientMap::abelian(&z, vec![1], vec![vec![0]]).unwrap();
        assert_eq!(luck_rank(&a, &trivial).unwrap().value(), rv(0, 1));
        let z2 = GroupPresentation::parse(&["s", "t"], &["stST"]).unwrap();
        let klein = FiniteQuotientMap::abelian(&z2, vec![2, 2], vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(luck_rank(&a, &klein).unwrap().value(), rv(1, 2));
        let bad: Vec<FiniteQuotientMap> = [3u64, 4]
            .iter()
            .map(|&n| FiniteQuotientMap::abelian(&z, vec![n], vec![vec![1]]).unwrap())
            .collect();
        assert_eq!(luck_sequence(&a, &bad).unwrap_err().kind(), "precondition");
    }

    #[test]
    fn duality_on_words() {
        let f = q();
        let p = GroupPresentation::free(&["a", "b"]).unwrap();
        let a = ExactMatrix::from_ints(&f, &[&[1, 2], &[0, 1]]).unwrap();
        let b = ExactMatrix::from_ints(&f, &[&[1, 0], &[2, 1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![a, b]).unwrap();
        let mut m = GroupAlgebraMatrix::zeros(&f, 1, 2);
        m.set(0, 0, GroupAlgebraElement::from_word(&f, p.parse_word("ab").unwrap()));
        let mut e = GroupAlgebraElement::from_word(&f, p.parse_word("b").unwrap());
        e.add_term(Word::identity(), FieldElement::from_int(&f, -1));
        m.set(0, 1, e);
        for l in 1..4 {
            let lam = WeightVector::single(l);
            assert_eq!(
                sylvester_rank(&m, &rep, &lam).unwrap().value(),
                sylvester_rank(&m.adjoint(), &rep, &lam).unwrap().value()
            );
        }
    }
}

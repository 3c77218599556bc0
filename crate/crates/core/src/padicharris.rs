//! Congruence quotients `U_1/U_i` of SL2(Z_p)^n and rank approximation along
//! the congruence filtration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, Rational};
use crate::groupcore::{GroupAlgebraMatrix, GroupPresentation};
use crate::rankfun::{luck_rank, FiniteQuotientMap, ModMatrices};
use crate::repweights::RepAssignment;

/// Default cap on enumerated group orders.
pub const DEFAULT_LEVEL_CAP: usize = 729;

/// `{g ∈ SL2(Z/p^i)^n : g ≡ I mod p}`.
#[derive(Debug, Clone)]
pub struct CongruenceQuotient {
    pub p: u64,
    pub level: u32,
    pub factors: usize,
    pub elements: Vec<ModMatrices>,
}

impl CongruenceQuotient {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.level)
    }

    pub fn contains(&self, g: &ModMatrices) -> bool {
        g.modulus == self.modulus()
            && g.mats.len() == self.factors
            && g.mats.iter().all(|m| is_congruent_unipotent(m, self.p, self.modulus()))
    }
}

fn is_congruent_unipotent(m: &[u64; 4], p: u64, modulus: u64) -> bool {
    let det = (m[0] as u128 * m[3] as u128 + (modulus as u128 - (m[1] as u128 * m[2] as u128) % modulus as u128))
        % modulus as u128;
    m[0] % p == 1 % p && m[1].is_multiple_of(p) && m[2].is_multiple_of(p) && m[3] % p == 1 % p && det == 1 % modulus as u128
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The order `p^{3n(i-1)}` of `U_1/U_i`, as a big integer.
pub fn congruence_index(p: u64, level: u32, factors: usize) -> BigInt {
    num_traits::pow(BigInt::from(p), 3 * factors * (level as usize - 1))
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::precondition("p = 2 is not supported; p must be an odd prime"));
    }
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    Ok(())
}

/// Full enumeration of `U_1/U_i` for `n` factors. Each factor is
/// `[[a, b], [c, d]]` with `a ≡ 1`, `b ≡ c ≡ 0 mod p`, and `d = (1 + bc)/a`.
pub fn congruence_quotient(p: u64, level: u32, factors: usize, cap: usize) -> Result<CongruenceQuotient> {
    check_prime(p)?;
    if level == 0 || factors == 0 {
        return Err(Error::precondition("level and factor count must be at least 1"));
    }
    let index = congruence_index(p, level, factors);
    if index > BigInt::from(cap) {
        return Err(Error::CapExceeded(format!(
            "congruence quotient of order {index} exceeds the cap {cap}"
        )));
    }
    let modulus = p.pow(level);
    let step = p;
    let lifts = modulus / p;
    let mut single = Vec::with_capacity((lifts * lifts * lifts) as usize);
    for ka in 0..lifts {
        let a = (1 + ka * step) % modulus;
        let a_inv = mod_inverse(a, modulus);
        for kb in 0..lifts {
            let b = kb * step;
            for kc in 0..lifts {
                let c = kc * step;
                let d = ((1 + (b as u128 * c as u128) % modulus as u128) * a_inv as u128 % modulus as u128) as u64;
                single.push([a, b, c, d]);
            }
        }
    }
    let mut elements = vec![ModMatrices {
        modulus,
        mats: vec![],
    }];
    for _ in 0..factors {
        let mut next = Vec::with_capacity(elements.len() * single.len());
        for e in &elements {
            for m in &single {
                let mut mats = e.mats.clone();
                mats.push(*m);
                next.push(ModMatrices { modulus, mats });
            }
        }
        elements = next;
    }
    Ok(CongruenceQuotient {
        p,
        level,
        factors,
        elements,
    })
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

/// One level of a congruence rank experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct HarrisRow {
    pub level: u32,
    /// `|U_1 : U_i| = p^{3n(i-1)}`
    pub index: BigInt,
    /// Order of the image of the group in `U_1/U_i`.
    pub image_order: usize,
    pub rank: Rational,
    /// `|rank - target|`
    pub error: Rational,
    /// `index^{-1/(3n)} = p^{-(i-1)}`
    pub envelope: Rational,
}

fn reduce_entry(x: &FieldElement, modulus: u64) -> Result<i64> {
    let q = x
        .as_rational()
        .ok_or_else(|| Error::precondition("congruence images must have rational entries"))?;
    if !q.denom().is_one() {
        return Err(Error::precondition("congruence images must have integer entries"));
    }
    let m = BigInt::from(modulus);
    Ok(q.numer().mod_floor(&m).to_i64().unwrap())
}

/// Generator images of `rep` reduced mod `p^level`, checking they lie in `U_1`.
pub fn reduce_images(rep: &RepAssignment, p: u64, level: u32) -> Result<Vec<ModMatrices>> {
    let modulus = p.pow(level);
    let mut out = Vec::with_capacity(rep.num_generators());
    for j in 0..rep.num_generators() {
        let mut mats = Vec::with_capacity(rep.factors());
        for f in 0..rep.factors() {
            let m = rep.image(j, f);
            let e: Vec<i64> = m
                .entries()
                .iter()
                .map(|x| reduce_entry(x, modulus))
                .collect::<Result<_>>()?;
            let mm = [e[0], e[1], e[2], e[3]].map(|x| x as u64);
            if !is_congruent_unipotent(&mm, p, modulus) {
                return Err(Error::precondition(format!(
                    "image of generator {} in factor {} is not congruent to I mod {p}",
                    j + 1,
                    f + 1
                )));
            }
            mats.push([e[0], e[1], e[2], e[3]]);
        }
        out.push(ModMatrices::new(modulus, mats));
    }
    Ok(out)
}

/// The finite quotient `Γ -> U_1/U_i` given by reducing the generator images.
pub fn congruence_map(
    presentation: &GroupPresentation,
    rep: &RepAssignment,
    p: u64,
    level: u32,
    cap: usize,
) -> Result<FiniteQuotientMap> {
    check_prime(p)?;
    let images = reduce_images(rep, p, level)?;
    let modulus = p.pow(level);
    let identity = ModMatrices::new(modulus, vec![[1, 0, 0, 1]; rep.factors()]);
    FiniteQuotientMap::new(
        presentation,
        &identity,
        &images,
        cap,
        format!("U1/U{level} mod {p}"),
    )
}

/// Normalized ranks of `A` over the congruence quotients at each level.
/// Ranks are taken over the image of the group, which gives the same
/// normalized value as the full quotient.
pub fn harris_sequence(
    a: &GroupAlgebraMatrix,
    presentation: &GroupPresentation,
    rep: &RepAssignment,
    p: u64,
    levels: &[u32],
    target: &Rational,
    cap: usize,
) -> Result<Vec<HarrisRow>> {
    check_prime(p)?;
    if levels.contains(&0) {
        return Err(Error::precondition("levels start at 1"));
    }
    let n = rep.factors();
    levels
        .par_iter()
        .map(|&level| {
            let quotient = congruence_map(presentation, rep, p, level, cap)?;
            let rank = luck_rank(a, &quotient)?.value();
            let error = num_traits::abs(&rank - target);
            Ok(HarrisRow {
                level,
                index: congruence_index(p, level, n),
                image_order: quotient.order(),
                error,
                rank,
                envelope: Rational::new(BigInt::one(), num_traits::pow(BigInt::from(p), level as usize - 1)),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{ExactMatrix, NumberField};
    use crate::groupcore::GroupAlgebraElement;
    use crate::rankfun::{luck_sequence, FiniteGroup, scalar_matrix};

    fn unipotent() -> (GroupPresentation, RepAssignment) {
        let p = GroupPresentation::free(&["t"]).unwrap();
        let t = ExactMatrix::from_ints(&NumberField::rationals(), &[&[1, 3], &[0, 1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![t]).unwrap();
        (p, rep)
    }

    fn rv(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn quotient_orders() {
        assert_eq!(congruence_quotient(3, 1, 1, 729).unwrap().order(), 1);
        let q = congruence_quotient(3, 2, 1, 729).unwrap();
        assert_eq!(q.order(), 27);
        assert!(q.elements.iter().all(|g| q.contains(g)));
        assert_eq!(congruence_quotient(3, 2, 2, 729).unwrap().order(), 729);
        assert_eq!(congruence_quotient(3, 3, 1, 729).unwrap().order(), 729);
        assert_eq!(congruence_quotient(3, 4, 1, 729).unwrap_err().kind(), "cap");
        assert_eq!(congruence_quotient(2, 2, 1, 729).unwrap_err().kind(), "precondition");
        assert_eq!(congruence_quotient(9, 2, 1, 729).unwrap_err().kind(), "precondition");
    }

    #[test]
    fn quotient_is_a_group() {
        let q = congruence_quotient(3, 2, 1, 729).unwrap();
        let gens: Vec<ModMatrices> = q.elements.clone();
        let g = FiniteGroup::generate(&q.elements[0], &gens, 1000).unwrap();
        assert_eq!(g.order(), 27);
    }

    #[test]
    fn unipotent_sequence() {
        let (p, rep) = unipotent();
        let f = rep.field().clone();
        let a = GroupAlgebraMatrix::from_element(GroupAlgebraElement::generator_minus_one(&f, 0));
        let rows = harris_sequence(&a, &p, &rep, 3, &[1, 2, 3, 4], &rv(1, 1), 1 << 20).unwrap();
        let ranks: Vec<Rational> = rows.iter().map(|r| r.rank.clone()).collect();
        assert_eq!(ranks, vec![rv(0, 1), rv(2, 3), rv(8, 9), rv(26, 27)]);
        for r in &rows {
            assert_eq!(r.error, r.envelope);
        }
        assert_eq!(rows[3].index, BigInt::from(19683));
        let three = scalar_matrix(FieldElement::from_int(&f, 3));
        for r in harris_sequence(&three, &p, &rep, 3, &[1, 2, 3], &rv(1, 1), 1 << 20).unwrap() {
            assert_eq!(r.rank, rv(1, 1));
        }
        let zero = GroupAlgebraMatrix::zeros(&f, 1, 1);
        for r in harris_sequence(&zero, &p, &rep, 3, &[1, 2, 3], &rv(0, 1), 1 << 20).unwrap() {
            assert_eq!(r.rank, rv(0, 1));
        }
    }

    #[test]
    fn agrees_with_luck_chain() {
        let (p, rep) = unipotent();
        let f = rep.field().clone();
        let a = GroupAlgebraMatrix::from_element(GroupAlgebraElement::generator_minus_one(&f, 0));
        let harris = harris_sequence(&a, &p, &rep, 3, &[1, 2, 3], &rv(1, 1), 1 << 20).unwrap();
        let chain: Vec<FiniteQuotientMap> = [1u64, 3, 9]
            .iter()
            .map(|&n| FiniteQuotientMap::abelian(&p, vec![n], vec![vec![1]]).unwrap())
            .collect();
        let luck = luck_sequence(&a, &chain).unwrap();
        for (h, l) in harris.iter().zip(&luck) {
            assert_eq!(h.rank, l.value());
        }
    }

    #[test]
    fn non_congruent_image_rejected() {
        let p = GroupPresentation::free(&["t"]).unwrap();
        let t = ExactMatrix::from_ints(&NumberField::rationals(), &[&[1, 1], &[0, 1]]).unwrap();
        let rep = RepAssignment::single_factor(&p, vec![t]).unwrap();
        assert_eq!(congruence_map(&p, &rep, 3, 2, 100).unwrap_err().kind(), "precondition");
    }
}

//! Finite groups given by generating elements, stored as Cayley-graph
//! permutations so that everything downstream is element-type agnostic.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{FieldElement, NumberField};
use crate::groupcore::{GroupPresentation, Letter, Word};

/// Concrete elements from which a [`FiniteGroup`] is generated.
pub trait GroupElement: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
    fn identity_like(&self) -> Self;
}

/// A permutation of `0..n`; `(σ·τ)(i) = τ(σ(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn cycle(n: u32) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }
    fn identity_like(&self) -> Self {
        Permutation((0..self.0.len() as u32).collect())
    }
}

/// An element of `Z/m_1 x ... x Z/m_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZnVector {
    pub moduli: Vec<u64>,
    pub values: Vec<u64>,
}

impl ZnVector {
    pub fn new(moduli: Vec<u64>, values: Vec<i64>) -> Self {
        let values = values
            .iter()
            .zip(&moduli)
            .map(|(&v, &m)| v.rem_euclid(m as i64) as u64)
            .collect();
        ZnVector { moduli, values }
    }
}

impl GroupElement for ZnVector {
    fn compose(&self, other: &Self) -> Self {
        ZnVector {
            moduli: self.moduli.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .zip(&self.moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        }
    }
    fn identity_like(&self) -> Self {
        ZnVector {
            moduli: self.moduli.clone(),
            values: vec![0; self.moduli.len()],
        }
    }
}

/// A tuple of 2x2 matrices `[a, b, c, d]` over `Z/modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrices {
    pub modulus: u64,
    pub mats: Vec<[u64; 4]>,
}

impl ModMatrices {
    pub fn new(modulus: u64, mats: Vec<[i64; 4]>) -> Self {
        let m = modulus as i64;
        ModMatrices {
            modulus,
            mats: mats
                .into_iter()
                .map(|e| e.map(|x| x.rem_euclid(m) as u64))
                .collect(),
        }
    }
}

impl GroupElement for ModMatrices {
    fn compose(&self, other: &Self) -> Self {
        let m = self.modulus as u128;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                let f = |a: u64, b: u64, c: u64, d: u64| {
                    ((a as u128 * b as u128 + c as u128 * d as u128) % m) as u64
                };
                [
                    f(x[0], y[0], x[1], y[2]),
                    f(x[0], y[1], x[1], y[3]),
                    f(x[2], y[0], x[3], y[2]),
                    f(x[2], y[1], x[3], y[3]),
                ]
            })
            .collect();
        ModMatrices {
            modulus: self.modulus,
            mats,
        }
    }
    fn identity_like(&self) -> Self {
        ModMatrices {
            modulus: self.modulus,
            mats: vec![[1, 0, 0, 1]; self.mats.len()],
        }
    }
}

/// A finite group with a fixed generating tuple. Elements are indices
/// `0..order`, the identity is `0`, and each element carries a word in the
/// generators (positive letters only) reaching it.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    /// `right[j][x] = x · g_j`
    right: Vec<Vec<u32>>,
    /// `left[j][x] = g_j · x`
    left: Vec<Vec<u32>>,
    /// `right_inv[j][x] = x · g_j^{-1}`
    right_inv: Vec<Vec<u32>>,
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Enumerates the subgroup generated by `gens`, refusing more than `cap`
    /// elements.
    pub fn generate<E: GroupElement>(identity: &E, gens: &[E], cap: usize) -> Result<Self> {
        let mut index: HashMap<E, u32> = HashMap::new();
        let mut elements = vec![identity.clone()];
        let mut words = vec![Vec::new()];
        index.insert(identity.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (j, g) in gens.iter().enumerate() {
                let y = elements[x].compose(g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "finite group exceeds the cap of {cap} elements"
                        )));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    let mut w = words[x].clone();
                    w.push(j);
                    words.push(w);
                    elements.push(y);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let right: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| elements.iter().map(|x| index[&x.compose(g)]).collect())
            .collect();
        let left: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| elements.iter().map(|x| index[&g.compose(x)]).collect())
            .collect();
        let right_inv = right.iter().map(|p| invert_perm(p)).collect();
        Ok(FiniteGroup {
            right,
            left,
            right_inv,
            words,
        })
    }

    /// Cyclic group of order `n` generated by one element.
    pub fn cyclic(n: u64) -> Result<Self> {
        let id = ZnVector::new(vec![n], vec![0]);
        Self::generate(&id, &[ZnVector::new(vec![n], vec![1])], usize::MAX)
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn num_generators(&self) -> usize {
        self.right.len()
    }

    pub fn word_of(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    pub fn right_perm(&self, j: usize) -> &[u32] {
        &self.right[j]
    }

    pub fn apply_letter(&self, x: usize, l: Letter) -> usize {
        if l.inverse {
            self.right_inv[l.generator][x] as usize
        } else {
            self.right[l.generator][x] as usize
        }
    }

    /// `x · w`.
    pub fn act(&self, x: usize, w: &Word) -> Result<usize> {
        let mut x = x;
        for &l in w.letters() {
            if l.generator >= self.num_generators() {
                return Err(Error::structural(format!(
                    "word uses generator {} but the finite group has {} generators",
                    l.generator,
                    self.num_generators()
                )));
            }
            x = self.apply_letter(x, l);
        }
        Ok(x)
    }

    pub fn element_of_word(&self, w: &Word) -> Result<usize> {
        self.act(0, w)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.words[y].iter().fold(x, |acc, &j| self.right[j][acc] as usize)
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.words[x]
            .iter()
            .rev()
            .fold(0, |acc, &j| self.right_inv[j][acc] as usize)
    }

    /// `x ↦ x · y` for every `x`.
    pub fn right_translation(&self, y: usize) -> Vec<u32> {
        (0..self.order()).map(|x| self.mul(x, y) as u32).collect()
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.num_generators()).all(|j| self.right[j][z] == self.left[j][z]))
            .collect()
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.num_generators()).all(|j| self.right[j][z] == self.left[j][z])
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// True when the generator map of `self` factors through `finer`, i.e.
    /// `g_j ↦ g_j` extends to a homomorphism `finer -> self`. Both groups must
    /// have the same number of generators.
    pub fn is_quotient_of(&self, finer: &FiniteGroup) -> bool {
        if self.num_generators() != finer.num_generators() {
            return false;
        }
        // the diagonal subgroup of finer x self is the graph of a map iff
        // its order equals |finer|
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        let mut image_of = vec![u32::MAX; finer.order()];
        let mut queue = VecDeque::from([(0u32, 0u32)]);
        seen.insert((0, 0), ());
        image_of[0] = 0;
        while let Some((a, b)) = queue.pop_front() {
            for j in 0..self.num_generators() {
                let next = (finer.right[j][a as usize], self.right[j][b as usize]);
                if seen.contains_key(&next) {
                    continue;
                }
                if image_of[next.0 as usize] != u32::MAX && image_of[next.0 as usize] != next.1 {
                    return false;
                }
                image_of[next.0 as usize] = next.1;
                seen.insert(next, ());
                queue.push_back(next);
            }
        }
        true
    }
}

fn invert_perm(p: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    inv
}

/// A character `χ: Z -> L^×` of a central subgroup `Z` of a finite group.
#[derive(Debug, Clone)]
pub struct FiniteCharacter {
    field: Arc<NumberField>,
    /// `values[k]` is χ of `elements[k]`
    elements: Vec<usize>,
    values: Vec<FieldElement>,
}

impl FiniteCharacter {
    /// Validates that `elements` is a central subgroup and `values`
    /// is multiplicative on it.
    pub fn new(group: &FiniteGroup, elements: Vec<usize>, values: Vec<FieldElement>) -> Result<Self> {
        if elements.len() != values.len() || elements.is_empty() {
            return Err(Error::structural("character needs one value per element of Z"));
        }
        let field = values[0].field().clone();
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &z)| (z, k)).collect();
        if pos.len() != elements.len() || elements.iter().any(|&z| z >= group.order()) {
            return Err(Error::structural("Z lists an element twice or out of range"));
        }
        for &z in &elements {
            if !group.is_central(z) {
                return Err(Error::precondition(format!("element {z} of Z is not central")));
            }
        }
        for (a, &za) in elements.iter().enumerate() {
            for (b, &zb) in elements.iter().enumerate() {
                let Some(&c) = pos.get(&group.mul(za, zb)) else {
                    return Err(Error::precondition("Z is not closed under multiplication"));
                };
                if &values[a] * &values[b] != values[c] {
                    return Err(Error::precondition("character is not multiplicative"));
                }
            }
        }
        Ok(FiniteCharacter {
            field,
            elements,
            values,
        })
    }

    /// The trivial character of the trivial subgroup.
    pub fn trivial(field: &Arc<NumberField>) -> Self {
        FiniteCharacter {
            field: field.clone(),
            elements: vec![0],
            values: vec![FieldElement::one(field)],
        }
    }

    /// All characters of the cyclic central subgroup generated by `z`, given a
    /// primitive `m`-th root of unity in the coefficient field (`m = ord z`).
    pub fn cyclic_characters(group: &FiniteGroup, z: usize, root: &FieldElement) -> Result<Vec<Self>> {
        let m = group.element_order(z);
        let field = root.field().clone();
        let mut root_powers = vec![FieldElement::one(&field)];
        for k in 1..=m {
            root_powers.push(&root_powers[k - 1] * root);
        }
        if !root_powers[m].is_one() || (1..m).any(|k| root_powers[k].is_one()) {
            return Err(Error::precondition(format!(
                "coefficient is not a primitive {m}-th root of unity"
            )));
        }
        let mut elements = vec![0usize];
        for k in 1..m {
            elements.push(group.mul(elements[k - 1], z));
        }
        (0..m)
            .map(|c| {
                let values = (0..m).map(|e| root_powers[(c * e) % m].clone()).collect();
                Self::new(group, elements.clone(), values)
            })
            .collect()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn subgroup_order(&self) -> usize {
        self.elements.len()
    }

    pub fn value_at(&self, z: usize) -> Option<&FieldElement> {
        self.elements.iter().position(|&e| e == z).map(|k| &self.values[k])
    }
}

/// A homomorphism from a presented group onto a finite group, fixed by
/// generator images. The finite group is the one generated by the images,
/// so words of the presented group can be evaluated directly in it.
#[derive(Debug, Clone)]
pub struct FiniteQuotientMap {
    group: FiniteGroup,
    label: String,
}

impl FiniteQuotientMap {
    /// Checks that every relator maps to the identity.
    pub fn new<E: GroupElement>(
        presentation: &GroupPresentation,
        identity: &E,
        images: &[E],
        cap: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        if images.len() != presentation.num_generators() {
            return Err(Error::structural(format!(
                "{} images for {} generators",
                images.len(),
                presentation.num_generators()
            )));
        }
        let group = FiniteGroup::generate(identity, images, cap)?;
        Self::from_group(presentation, group, label)
    }

    pub fn from_group(
        presentation: &GroupPresentation,
        group: FiniteGroup,
        label: impl Into<String>,
    ) -> Result<Self> {
        for (k, r) in presentation.relators().iter().enumerate() {
            if group.element_of_word(r)? != 0 {
                return Err(Error::Relator(format!(
                    "relator {} (`{}`) is not killed by the quotient",
                    k + 1,
                    presentation.display_word(r)
                )));
            }
        }
        Ok(FiniteQuotientMap {
            group,
            label: label.into(),
        })
    }

    /// `t ↦ 1` in `Z/n` for a one-generator presentation, or more generally
    /// every generator mapped to the given residues.
    pub fn abelian(
        presentation: &GroupPresentation,
        moduli: Vec<u64>,
        images: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let id = ZnVector::new(moduli.clone(), vec![0; moduli.len()]);
        let imgs: Vec<ZnVector> = images
            .into_iter()
            .map(|v| ZnVector::new(moduli.clone(), v))
            .collect();
        let label = moduli.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" x ");
        Self::new(presentation, &id, &imgs, usize::MAX, label)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Order of the image of the presented group.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_inverses() {
        let s3 = FiniteGroup::generate(
            &Permutation(vec![0, 1, 2]),
            &[Permutation(vec![1, 0, 2]), Permutation(vec![1, 2, 0])],
            100,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center(), vec![0]);
        for x in 0..6 {
            assert_eq!(s3.mul(x, s3.inverse(x)), 0);
            for y in 0..6 {
                for z in 0..6 {
                    assert_eq!(s3.mul(s3.mul(x, y), z), s3.mul(x, s3.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn quaternion_center() {
        let id = ModMatrices::new(3, vec![[1, 0, 0, 1]]);
        let i = ModMatrices::new(3, vec![[0, -1, 1, 0]]);
        let j = ModMatrices::new(3, vec![[1, 1, 1, -1]]);
        let q8 = FiniteGroup::generate(&id, &[i, j], 100).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.center().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            FiniteGroup::generate(&Permutation::cycle(5).identity_like(), &[Permutation::cycle(5)], 3)
                .unwrap_err()
                .kind(),
            "cap"
        );
    }

    #[test]
    fn nested_quotients() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(z2.is_quotient_of(&z4));
        assert!(!z4.is_quotient_of(&z2));
        assert!(!z3.is_quotient_of(&z4));
    }

    #[test]
    fn relator_must_die() {
        let p = GroupPresentation::parse(&["a", "b"], &["abAB"]).unwrap();
        let id = Permutation(vec![0, 1, 2]);
        let a = Permutation(vec![1, 0, 2]);
        let b = Permutation(vec![1, 2, 0]);
        let err = FiniteQuotientMap::new(&p, &id, &[a, b], 100, "S3").unwrap_err();
        assert_eq!(err.kind(), "relator");
        assert!(FiniteQuotientMap::abelian(&p, vec![2, 2], vec![vec![1, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn character_validation() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        let q = NumberField::rationals();
        let bad = FiniteCharacter::new(
            &c4,
            vec![0, 1, 2, 3],
            vec![1, 1, -1, -1].into_iter().map(|v| FieldElement::from_int(&q, v)).collect(),
        );
        assert!(bad.is_err());
        let qi = NumberField::from_integers(&[1, 0, 1]).unwrap();
        let chars = FiniteCharacter::cyclic_characters(&c4, 1, &FieldElement::generator(&qi)).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(FiniteCharacter::cyclic_characters(&c4, 1, &FieldElement::from_int(&q, -1)).is_err());
    }
}

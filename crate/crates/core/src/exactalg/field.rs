use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// The field Q(alpha) = Q[x]/(minpoly), stored by its monic minimal polynomial.
///
/// Degree one means Q itself; the canonical choice is the polynomial `x`, so
/// that alpha = 0 and every element is its constant coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients constant term first; the last entry is always 1.
    minpoly: Vec<Rational>,
}

impl NumberField {
    /// Builds the field from minimal-polynomial coefficients (constant term first).
    ///
    /// A non-monic polynomial is scaled to be monic. Irreducibility is not
    /// checked here; census loading runs [`super::poly::certify_irreducible`].
    pub fn new(mut minpoly: Vec<Rational>) -> Result<Arc<Self>> {
        while minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(Error::structural(
                "minimal polynomial must have degree at least 1",
            ));
        }
        let lead = minpoly.last().cloned().unwrap();
        if !lead.is_one() {
            for c in minpoly.iter_mut() {
                *c /= lead.clone();
            }
        }
        Ok(Arc::new(NumberField { minpoly }))
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Arc<Self>> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// The rational numbers, presented as Q[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Arc::new(NumberField {
            minpoly: vec![Rational::zero(), Rational::one()],
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Reduces a polynomial in alpha modulo the minimal polynomial,
    /// returning exactly `degree` coefficients.
    pub(crate) fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = poly.len() - deg;
            for (i, m) in self.minpoly[..deg].iter().enumerate() {
                poly[base + i] -= &top * m;
            }
        }
        poly.resize(deg, Rational::zero());
        poly
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.minpoly.iter().map(|c| c.to_string()).collect();
        write!(f, "Q[x]/({})", parts.join(" "))
    }
}

pub(crate) fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of a [`NumberField`], as a polynomial in alpha of degree < field degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(Error::structural(format!(
                "{} coefficients given for a field of degree {}",
                coeffs.len(),
                field.degree()
            )));
        }
        Ok(Self::from_poly(field, coeffs))
    }

    /// Any polynomial in alpha, reduced modulo the minimal polynomial.
    pub fn from_poly(field: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = q;
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(n)))
    }

    /// The generator alpha.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn check_field(&self, other: &Self) {
        assert!(
            same_field(&self.field, &other.field),
            "arithmetic between elements of different number fields"
        );
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::precondition("inverse of zero"));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, q.recip()));
        }
        // invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m)
        let mut r0 = trim(self.field.minpoly.clone());
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return Err(Error::precondition(
                "element shares a factor with the minimal polynomial; field is not a field",
            ));
        }
        let c = r0[0].recip();
        let inv: Vec<Rational> = s0.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_poly(&self.field, inv))
    }

    /// Rational content: the positive rational q with coeffs / q primitive integral.
    pub(crate) fn content(coeffs: &[Rational]) -> Option<Rational> {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        let mut any = false;
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            any = true;
            num = num_integer::Integer::gcd(&num, c.numer());
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        any.then(|| Rational::new(num, den))
    }

    /// Comma-separated power-basis coefficients, trailing zeros trimmed.
    pub fn to_coeff_string(&self) -> String {
        let mut end = self.coeffs.len();
        while end > 1 && self.coeffs[end - 1].is_zero() {
            end -= 1;
        }
        self.coeffs[..end]
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `c0,c1,...` (rationals such as `-3/4`) in the power basis.
    pub fn parse(field: &Arc<NumberField>, text: &str) -> std::result::Result<Self, String> {
        let coeffs = text
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FieldElement::new(field, coeffs).map_err(|e| e.to_string())
    }
}

pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("invalid rational `{s}`");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_coeff_string())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rational() {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "({})", self.to_coeff_string())
        }
    }
}

impl Add<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_field(rhs);
        if self.field.is_rational() {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * self.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::from_poly(&self.field, prod)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// --- dense polynomial helpers over Q (coefficients constant term first) ---

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] -= &c * bi;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn reduction_mod_minpoly() {
        // w^2 - w + 1 = 0, so w^2 = w - 1 and w^3 = -1
        let f = NumberField::from_integers(&[1, -1, 1]).unwrap();
        let w = FieldElement::generator(&f);
        let w2 = &w * &w;
        assert_eq!(w2.coeffs(), &[q(-1), q(1)]);
        let w3 = &w2 * &w;
        assert_eq!(w3, FieldElement::from_int(&f, -1));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = NumberField::from_integers(&[-2, 0, 0, 1]).unwrap();
        let a = FieldElement::new(&f, vec![q(1), q(3), q(-2)]).unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(FieldElement::zero(&f).inverse().is_err());
    }

    #[test]
    fn non_monic_minpoly_is_normalized() {
        let f = NumberField::from_integers(&[2, 0, 2]).unwrap();
        assert_eq!(f.minpoly(), &[q(1), q(0), q(1)]);
        assert!(NumberField::from_integers(&[3]).is_err());
    }

    #[test]
    fn parse_coefficients() {
        let f = NumberField::from_integers(&[1, 0, 1]).unwrap();
        let a = FieldElement::parse(&f, "-1, 1/2").unwrap();
        assert_eq!(a.coeffs(), &[q(-1), Rational::new(1.into(), 2.into())]);
        assert!(FieldElement::parse(&f, "1,2,3").is_err());
        assert!(FieldElement::parse(&f, "1/0").is_err());
        assert_eq!(a.to_coeff_string(), "-1,1/2");
    }
}

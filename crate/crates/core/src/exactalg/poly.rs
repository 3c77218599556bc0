//! Irreducibility certification for minimal polynomials over Q.
//!
//! Uses the rational root test for small degree and distinct-degree
//! factorization modulo a handful of primes: if the factor-degree patterns
//! leave no proper subset sum common to every prime, no factorization over Q
//! exists.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Every tested prime admits a consistent proper factorization.
    Undetermined,
}

const PRIMES: [u64; 14] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Integer polynomial with the same roots (denominators cleared, content removed).
pub fn primitive_integer_poly(coeffs: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    ints
}

pub fn certify_irreducible(minpoly: &[Rational]) -> Irreducibility {
    let f = primitive_integer_poly(minpoly);
    let n = f.len() - 1;
    if n <= 1 {
        return Irreducibility::Irreducible;
    }
    if f[0].is_zero() {
        return Irreducibility::Reducible;
    }
    if has_rational_root(&f) {
        return Irreducibility::Reducible;
    }
    if n <= 3 {
        return Irreducibility::Irreducible;
    }
    let mut possible: BTreeSet<usize> = (1..n).collect();
    for &p in PRIMES.iter() {
        let Some(degrees) = factor_degrees_mod_p(&f, p) else {
            continue;
        };
        let sums = subset_sums(&degrees);
        possible.retain(|k| sums.contains(k));
        if possible.is_empty() {
            return Irreducibility::Irreducible;
        }
    }
    Irreducibility::Undetermined
}

fn has_rational_root(f: &[BigInt]) -> bool {
    let lead = f.last().unwrap().abs();
    let constant = f[0].abs();
    // bounded search keeps this cheap; large coefficients fall back to the modular test
    if lead.bits() > 40 || constant.bits() > 40 {
        return false;
    }
    let ps = divisors(constant.to_u64().unwrap());
    let qs = divisors(lead.to_u64().unwrap());
    for &p in &ps {
        for &q in &qs {
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                let mut acc = Rational::zero();
                for c in f.iter().rev() {
                    acc = acc * &r + Rational::from_integer(c.clone());
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &p in parts {
        let next: Vec<usize> = sums.iter().map(|s| s + p).collect();
        sums.extend(next);
    }
    sums
}

// --- arithmetic in F_p[x], coefficients constant term first ---

fn reduce_mod_p(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect()
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r.last().unwrap() * inv_lead % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_div_exact(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let inv_lead = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() * inv_lead % p;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = trim(r);
    }
    trim(q)
}

fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

/// Degrees of the irreducible factors of f mod p, or `None` when p divides the
/// leading coefficient or f is not squarefree mod p.
fn factor_degrees_mod_p(f: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let fp = trim(reduce_mod_p(f, p));
    if fp.len() != f.len() {
        return None;
    }
    if poly_gcd(&fp, &derivative(&fp, p), p).len() > 1 {
        return None;
    }
    let mut rest = fp;
    let mut degrees = vec![];
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut k = 1;
    while rest.len() > 2 * k {
        // h = x^(p^k) mod rest
        let mut base = h.clone();
        let mut acc = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, &rest, p);
            }
            base = poly_mulmod(&base, &base, &rest, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&trim(diff), &rest, p);
        let gdeg = g.len() - 1;
        if gdeg > 0 {
            degrees.extend(std::iter::repeat_n(k, gdeg / k));
            rest = poly_div_exact(&rest, &g, p);
            h = poly_rem(&h, &rest, p);
        }
        k += 1;
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    Some(degrees)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn small_degree_cases() {
        assert_eq!(certify_irreducible(&poly(&[1, -1, 1])), Irreducibility::Irreducible);
        assert_eq!(certify_irreducible(&poly(&[1, 0, 1])), Irreducibility::Irreducible);
        assert_eq!(certify_irreducible(&poly(&[-1, 0, 1])), Irreducibility::Reducible);
        assert_eq!(certify_irreducible(&poly(&[-2, 0, 0, 1])), Irreducibility::Irreducible);
        assert_eq!(certify_irreducible(&poly(&[2, 3, 1])), Irreducibility::Reducible);
    }

    #[test]
    fn quartic_cases() {
        // x^4 - 2 is irreducible (Eisenstein); (x^2+1)(x^2+2) is not
        assert_eq!(certify_irreducible(&poly(&[-2, 0, 0, 0, 1])), Irreducibility::Irreducible);
        assert_ne!(certify_irreducible(&poly(&[2, 0, 3, 0, 1])), Irreducibility::Irreducible);
        // x^4 + 1 splits mod every prime: the modular test cannot certify it
        assert_eq!(certify_irreducible(&poly(&[1, 0, 0, 0, 1])), Irreducibility::Undetermined);
    }

    #[test]
    fn factor_degrees_of_known_split() {
        // x^2 + 1 splits mod 5, stays irreducible mod 7
        let f: Vec<BigInt> = [1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(factor_degrees_mod_p(&f, 5), Some(vec![1, 1]));
        assert_eq!(factor_degrees_mod_p(&f, 7), Some(vec![2]));
        let g: Vec<BigInt> = [-1, 0, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        // x^3 - 1 = (x - 1)(x^2 + x + 1); mod 5 the quadratic is irreducible
        assert_eq!(factor_degrees_mod_p(&g, 5), Some(vec![1, 2]));
    }
}

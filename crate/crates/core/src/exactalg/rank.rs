use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{FieldElement, NumberField};
use super::matrix::ExactMatrix;
use super::Rational;

/// Exact rank of a matrix over its number field.
///
/// Rows are first cleared of denominators and made primitive, then reduced by
/// one-step Bareiss elimination. Over Q this runs on big integers; over a proper
/// extension the same recurrence runs on field elements, with every product
/// reduced modulo the minimal polynomial and the Bareiss division carried out
/// as multiplication by an exact inverse.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    if m.field().is_rational() {
        let rows = (0..m.rows())
            .map(|i| {
                let row: Vec<Rational> = (0..m.cols())
                    .map(|j| m.get(i, j).coeffs()[0].clone())
                    .collect();
                primitive_integer_row(&row)
            })
            .collect();
        bareiss_rank_integer(rows)
    } else {
        let rows = (0..m.rows())
            .map(|i| primitive_field_row((0..m.cols()).map(|j| m.get(i, j).clone()).collect()))
            .collect();
        bareiss_rank_field(rows)
    }
}

/// Scales a rational row to a primitive integer row (same row space).
fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in row.iter().filter(|c| !c.is_zero()) {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = row
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in ints.iter_mut() {
            *x /= &g;
        }
    }
    ints
}

fn primitive_field_row(row: Vec<FieldElement>) -> Vec<FieldElement> {
    let all: Vec<Rational> = row.iter().flat_map(|e| e.coeffs().iter().cloned()).collect();
    match FieldElement::content(&all) {
        Some(c) if !c.is_one() => {
            let inv = c.recip();
            row.iter().map(|e| e.scale(&inv)).collect()
        }
        _ => row,
    }
}

pub(crate) fn bareiss_rank_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        // smallest nonzero pivot keeps intermediate minors short
        let pivot = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].bits());
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = pv * &row[j] - &lead * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pv.clone();
        rank += 1;
    }
    rank
}

fn bareiss_rank_field(mut a: Vec<Vec<FieldElement>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let field = a[0][0].field().clone();
    let mut rank = 0;
    let mut prev_inv: Option<FieldElement> = None;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let pivot = (rank..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| size_hint(&a[r][col]));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        for row in rest.iter_mut() {
            let lead = std::mem::replace(&mut row[col], FieldElement::zero(&field));
            if lead.is_zero() {
                // the update reduces to a rescale by pv / prev
                for j in col + 1..ncols {
                    if !row[j].is_zero() {
                        let v = pv * &row[j];
                        row[j] = match &prev_inv {
                            Some(inv) => &v * inv,
                            None => v,
                        };
                    }
                }
                continue;
            }
            for j in col + 1..ncols {
                let v = pv * &row[j] - &lead * &prow[j];
                row[j] = match &prev_inv {
                    Some(inv) => &v * inv,
                    None => v,
                };
            }
        }
        prev_inv = Some(pv.inverse().expect("nonzero pivot is invertible"));
        rank += 1;
    }
    rank
}

fn size_hint(e: &FieldElement) -> u64 {
    e.coeffs()
        .iter()
        .map(|c| c.numer().bits() + c.denom().bits())
        .sum()
}

/// Multiplication-by-`x` matrix in the power basis 1, alpha, ..., alpha^{d-1}.
pub fn multiplication_matrix(x: &FieldElement) -> ExactMatrix {
    let field = x.field();
    let d = field.degree();
    let q = NumberField::rationals();
    let mut out = ExactMatrix::zeros(&q, d, d);
    let alpha = FieldElement::generator(field);
    let mut col = x.clone();
    for k in 0..d {
        for (i, c) in col.coeffs().iter().enumerate() {
            out.set(i, k, FieldElement::from_rational(&q, c.clone()));
        }
        if k + 1 < d {
            col = &col * &alpha;
        }
    }
    out
}

/// Replaces every entry by its multiplication matrix, giving a matrix over Q of
/// size `(d*rows) x (d*cols)` whose rank is `d * rank_exact(m)`.
pub fn companion_embed(m: &ExactMatrix) -> ExactMatrix {
    let q = NumberField::rationals();
    if m.field().is_rational() {
        return ExactMatrix::from_entries(
            &q,
            m.rows(),
            m.cols(),
            m.entries()
                .iter()
                .map(|e| FieldElement::from_rational(&q, e.coeffs()[0].clone()))
                .collect(),
        )
        .expect("shape preserved");
    }
    let blocks: Vec<Vec<ExactMatrix>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| multiplication_matrix(m.get(i, j))).collect())
        .collect();
    ExactMatrix::from_blocks(&q, &blocks).expect("uniform block shapes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_field() -> std::sync::Arc<NumberField> {
        NumberField::from_integers(&[1, -1, 1]).unwrap()
    }

    #[test]
    fn identity_and_proportional_rows() {
        let q = NumberField::rationals();
        assert_eq!(rank_exact(&ExactMatrix::identity(&q, 2)), 2);
        let m = ExactMatrix::from_ints(&q, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(rank_exact(&m), 1);
        assert_eq!(rank_exact(&ExactMatrix::zeros(&q, 3, 0)), 0);
    }

    #[test]
    fn omega_matrix_has_full_rank() {
        // det [[w,1],[-1,w]] = w^2 + 1 = w after reduction by w^2 - w + 1
        let f = omega_field();
        let w = FieldElement::generator(&f);
        let one = FieldElement::one(&f);
        let m = ExactMatrix::from_entries(&f, 2, 2, vec![w.clone(), one.clone(), -&one, w.clone()])
            .unwrap();
        let det = m.determinant_2x2().unwrap();
        assert_eq!(det, w);
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn field_rank_detects_dependence() {
        // second row = w * first row
        let f = omega_field();
        let w = FieldElement::generator(&f);
        let a = FieldElement::from_int(&f, 3);
        let b = &w + &FieldElement::one(&f);
        let m = ExactMatrix::from_entries(&f, 2, 2, vec![a.clone(), b.clone(), &w * &a, &w * &b])
            .unwrap();
        assert_eq!(rank_exact(&m), 1);
    }

    #[test]
    fn companion_of_omega() {
        let f = omega_field();
        let m = ExactMatrix::from_entries(&f, 1, 1, vec![FieldElement::generator(&f)]).unwrap();
        let c = companion_embed(&m);
        let q = NumberField::rationals();
        // w*1 = w, w*w = w - 1
        assert_eq!(c, ExactMatrix::from_ints(&q, &[&[0, -1], &[1, 1]]).unwrap());
        assert_eq!(rank_exact(&c), 2);

        let z = ExactMatrix::zeros(&f, 2, 3);
        let cz = companion_embed(&z);
        assert_eq!((cz.rows(), cz.cols()), (4, 6));
        assert_eq!(rank_exact(&cz), 0);

        let r = ExactMatrix::from_ints(&q, &[&[1, 2]]).unwrap();
        assert_eq!(companion_embed(&r), r);
    }
}

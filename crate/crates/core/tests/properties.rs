use num_traits::Zero;
use proptest::prelude::*;

use sylvrank::census::builtin_entry;
use sylvrank::exactalg::{rank_exact, ExactMatrix, FieldElement, NumberField, Rational};
use sylvrank::foxhomology::{fox_derivative, homology_dims};
use sylvrank::groupcore::{GroupAlgebraElement, Letter, Word};
use sylvrank::repweights::{sym_power, WeightVector};

/// Plain Gauss-Jordan over Q, kept deliberately separate from the library.
fn naive_rank(rows: usize, cols: usize, data: &[i64]) -> usize {
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| (0..cols).map(|j| Rational::from_integer(data[i * cols + j].into())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_rank_matches_gauss_jordan(
        rows in 1usize..6,
        cols in 1usize..6,
        seed in prop::collection::vec(-3i64..=3, 36),
        dup in any::<bool>(),
    ) {
        let mut data: Vec<i64> = seed[..rows * cols].to_vec();
        if dup && rows > 1 {
            for j in 0..cols {
                data[(rows - 1) * cols + j] = 2 * data[j] - data[cols + j];
            }
        }
        let q = NumberField::rationals();
        let entries = data.iter().map(|&x| FieldElement::from_int(&q, x)).collect();
        let m = ExactMatrix::from_entries(&q, rows, cols, entries).unwrap();
        prop_assert_eq!(rank_exact(&m), naive_rank(rows, cols, &data));
    }

    #[test]
    fn fox_fundamental_identity(w in word_strategy(3, 8)) {
        // sum_j (∂w/∂x_j)(x_j - 1) = w - 1
        let q = NumberField::rationals();
        let mut sum = GroupAlgebraElement::zero(&q);
        for j in 0..3 {
            let d = fox_derivative(&w, j, &q);
            sum = sum.add(&d.mul(&GroupAlgebraElement::generator_minus_one(&q, j)));
        }
        let expected = GroupAlgebraElement::from_word(&q, w.clone()).sub(&GroupAlgebraElement::one(&q));
        prop_assert_eq!(sum, expected);
    }

    #[test]
    fn free_group_homology_is_dimension_of_weight(l in 1u32..10) {
        let e = builtin_entry("sanov-f2").unwrap();
        let h = homology_dims(&e.presentation, &e.rep, &WeightVector::single(l), true).unwrap();
        prop_assert_eq!((h.h0, h.h1, h.h2), (0, l as usize + 1, 0));
        prop_assert_eq!(h.euler_defect(), 0);
    }

    #[test]
    fn sym_power_trace_of_diagonal(a in 1i64..5, l in 0u32..7) {
        // diag(a, 1/a) acts on x^{λ-i} y^i by a^{λ-2i}
        let q = NumberField::rationals();
        let g = ExactMatrix::from_entries(&q, 2, 2, vec![
            FieldElement::from_int(&q, a),
            FieldElement::from_int(&q, 0),
            FieldElement::from_int(&q, 0),
            FieldElement::from_rational(&q, Rational::new(1.into(), a.into())),
        ]).unwrap();
        let s = sym_power(&g, l).unwrap();
        let mut trace = Rational::zero();
        for i in 0..=l as usize {
            trace += s.get(i, i).as_rational().unwrap();
        }
        let mut expected = Rational::zero();
        for i in 0..=l as i32 {
            expected += Rational::from_integer(a.into()).pow(l as i32 - 2 * i);
        }
        prop_assert_eq!(trace, expected);
    }
}

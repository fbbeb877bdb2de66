//! Series-level properties of minimization, checked on random automata by
//! evaluating words with a naive matrix product chain.

use proptest::prelude::*;

use modsplit::algebra::{Field, Matrix, Scalar};
use modsplit::wfa::{equivalent, left_reduce, minimize, right_reduce, WeightedAutomaton};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7)), Just(Field::Rational)]
}

fn automaton() -> impl Strategy<Value = WeightedAutomaton> {
    (fields(), 1usize..=4, 1usize..=2).prop_flat_map(|(f, n, k)| {
        let entry = prop_oneof![2 => Just(0i64), 3 => -2i64..=2];
        (
            proptest::collection::vec(entry.clone(), n),
            proptest::collection::vec(proptest::collection::vec(entry.clone(), n * n), k),
            proptest::collection::vec(entry, n),
        )
            .prop_map(move |(l, mu, g)| {
                let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
                let mu = mu
                    .iter()
                    .map(|m| Matrix::from_fn(f, n, n, |i, j| f.from_i64(m[i * n + j])))
                    .collect();
                let alphabet = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
                WeightedAutomaton::new(f, alphabet, v(&l), mu, v(&g)).unwrap()
            })
    })
}

fn words() -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(proptest::collection::vec(0usize..2, 0..7), 12)
}

/// λ · μ(a₁) ⋯ μ(a_k) · γ as an explicit matrix chain.
fn naive_weight(a: &WeightedAutomaton, w: &[usize]) -> Scalar {
    let f = a.field();
    let n = a.dim();
    if n == 0 {
        return f.zero();
    }
    let row = Matrix::from_fn(f, 1, n, |_, j| a.lambda()[j].clone());
    let col = Matrix::from_fn(f, n, 1, |i, _| a.gamma()[i].clone());
    let chain = w.iter().fold(row, |acc, &l| acc.mul(&a.mu()[l]));
    chain.mul(&col).get(0, 0).clone()
}

fn fit(w: &[usize], letters: usize) -> Vec<usize> {
    w.iter().map(|&l| l % letters).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reductions_preserve_the_series(a in automaton(), ws in words()) {
        let k = a.alphabet().len();
        let (l, _) = left_reduce(&a);
        let (r, _) = right_reduce(&a);
        let m = minimize(&a);
        for w in &ws {
            let w = fit(w, k);
            let expected = naive_weight(&a, &w);
            prop_assert_eq!(&a.weight(&w), &expected);
            prop_assert_eq!(&naive_weight(&l, &w), &expected);
            prop_assert_eq!(&naive_weight(&r, &w), &expected);
            prop_assert_eq!(&naive_weight(&m, &w), &expected);
        }
        prop_assert!(m.dim() <= l.dim().min(r.dim()));
    }

    #[test]
    fn minimal_dimension_is_an_invariant(a in automaton()) {
        let m = minimize(&a);
        prop_assert_eq!(minimize(&m).dim(), m.dim());
        prop_assert_eq!(minimize(&a.transpose()).dim(), m.dim());
        prop_assert!(equivalent(&a, &m).unwrap());
    }

    #[test]
    fn sums_and_mirror_images(a in automaton(), ws in words()) {
        let k = a.alphabet().len();
        let f = a.field();
        let two = a.direct_sum(&a).unwrap();
        let t = a.transpose();
        for w in &ws {
            let w = fit(w, k);
            let x = naive_weight(&a, &w);
            prop_assert_eq!(naive_weight(&two, &w), &x + &x);
            let rev: Vec<usize> = w.iter().rev().copied().collect();
            prop_assert_eq!(naive_weight(&t, &rev), x);
        }
        // the doubled series needs no more states than the original
        prop_assert_eq!(minimize(&two).dim(), if f.characteristic() == 2 { 0 } else { minimize(&a).dim() });
        prop_assert!(equivalent(&two, &a.scaled(&f.from_i64(2))).unwrap());
    }
}

//! Permutation modules over ℚ. By Maschke's theorem these are semisimple;
//! the expected signatures come from the rational character theory of each
//! group, and each summand is checked to be stable and to span its share.

use modsplit::algebra::matrix::rank_of;
use modsplit::algebra::{Field, Scalar};
use modsplit::decompose::complete_decomposition;
use modsplit::endo::{SearchConfig, Verdict};
use modsplit::module::{coordinate_tuple, is_stable};
use modsplit::perm::{decompose_permutation, regular_module, PermutationPresentation};

const Q: Field = Field::Rational;

fn group(degree: usize, gens: &[(&str, &[usize])]) -> PermutationPresentation {
    PermutationPresentation::new(degree, gens.iter().map(|(l, p)| (l.to_string(), p.to_vec())).collect()).unwrap()
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn e(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| if i == j { Q.one() } else { Q.zero() }).collect()
}

fn regular_signature(p: &PermutationPresentation) -> Vec<usize> {
    let (reg, m) = regular_module(p, 200).unwrap();
    let r = complete_decomposition(&m, &SearchConfig::default(), &coordinate_tuple).unwrap();
    assert!(r.is_complete(), "{}", r.summary());
    let action = reg.action();
    let all: Vec<_> = r.summands.iter().flat_map(|s| s.basis.clone()).collect();
    assert_eq!(rank_of(Q, m.dim(), &all), m.dim());
    for s in &r.summands {
        assert!(is_stable(&action, &s.basis));
        assert_eq!(s.certificate.verdict, Verdict::Indecomposable);
    }
    r.signature
}

#[test]
fn cyclic_groups_split_by_divisors() {
    // ℚ[C_n] ≅ ∏_{d | n} ℚ(ζ_d), one summand of dimension φ(d) per divisor
    assert_eq!(regular_signature(&group(4, &[("c", &cycle(4))])), [1, 1, 2]);
    assert_eq!(regular_signature(&group(5, &[("c", &cycle(5))])), [1, 4]);
    assert_eq!(regular_signature(&group(6, &[("c", &cycle(6))])), [1, 1, 2, 2]);
    assert_eq!(regular_signature(&group(8, &[("c", &cycle(8))])), [1, 1, 2, 4]);
}

#[test]
fn natural_modules() {
    let s4 = group(4, &[("s1", &[1, 0, 2, 3]), ("s2", &[0, 2, 1, 3]), ("s3", &[0, 1, 3, 2])]);
    let r = decompose_permutation(&s4, &e(4, 0), &SearchConfig::default()).unwrap();
    assert_eq!(r.signature, [1, 3]);
    assert_eq!(r.summands[0].basis, [vec![Q.one(); 4]]);

    // the square's symmetry group on its vertices: trivial ⊕ sign-like ⊕ 2-dim
    let d4 = group(4, &[("r", &cycle(4)), ("f", &[0, 3, 2, 1])]);
    let r = decompose_permutation(&d4, &e(4, 0), &SearchConfig::default()).unwrap();
    assert_eq!(r.signature, [1, 1, 2]);

    // a sum of coordinates generates only the invariant line
    let r = decompose_permutation(&d4, &vec![Q.from_i64(3); 4], &SearchConfig::default()).unwrap();
    assert_eq!(r.signature, [1]);
}

#[test]
fn regular_module_of_s3_and_d4() {
    let s3 = group(3, &[("s1", &[1, 0, 2]), ("s2", &[0, 2, 1])]);
    assert_eq!(regular_signature(&s3), [1, 1, 2, 2]);
    let d4 = group(4, &[("r", &cycle(4)), ("f", &[0, 3, 2, 1])]);
    assert_eq!(regular_signature(&d4), [1, 1, 1, 1, 2, 2]);
}

#[test]
fn rational_generator_entries() {
    let s3 = group(3, &[("s1", &[1, 0, 2]), ("s2", &[0, 2, 1])]);
    let g: Vec<Scalar> = ["1/2", "-3", "0"].iter().map(|t| Q.parse_scalar(t).unwrap()).collect();
    let r = decompose_permutation(&s3, &g, &SearchConfig::default()).unwrap();
    assert_eq!(r.signature, [1, 2]);
    // the line is spanned by a positive multiple of (1,1,1)
    let line = &r.summands[0].basis[0];
    assert!(line.iter().all(|x| x == &line[0]));
}

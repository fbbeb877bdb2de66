//! Boolean functions in algebraic normal form and the variable-permutation
//! action of `S_n` on the `2^n` monomials.
//!
//! Monomials are indexed by the bitmask of their variables (bit `i-1` for
//! `x_i`), so the basis order is `1, x1, x2, x1x2, x3, …`.

use std::sync::Arc;

use crate::algebra::{Field, Matrix, Scalar};
use crate::decompose::{complete_decomposition, DecompositionReport};
use crate::endo::SearchConfig;
use crate::error::{Error, Result};
use crate::module::{orbit_basis, AlgebraAction, CyclicModule};

/// Largest supported variable count.
pub const DEFAULT_N_CAP: usize = 12;

const GF2: Field = Field::Prime(2);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    coeffs: Vec<Scalar>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > DEFAULT_N_CAP {
        return Err(Error::InvalidInput(format!(
            "variable count must be between 1 and {DEFAULT_N_CAP}, got {n}"
        )));
    }
    Ok(())
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(BooleanFunction {
            n,
            coeffs: vec![GF2.zero(); 1 << n],
        })
    }

    /// From a GF(2) coefficient vector indexed by monomial bitmask.
    pub fn from_coeffs(n: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        check_n(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                context: "ANF coefficient vector".into(),
                expected: 1 << n,
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| c.field() != GF2) {
            return Err(Error::FieldMismatch {
                expected: GF2.to_string(),
                found: "another field".into(),
            });
        }
        Ok(BooleanFunction { n, coeffs })
    }

    /// The function with exactly the given monomials (bitmasks).
    pub fn from_monomials(n: usize, masks: &[usize]) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for &m in masks {
            if m >= 1 << n {
                return Err(Error::InvalidInput(format!("monomial mask {m} needs more than {n} variables")));
            }
            f.coeffs[m] += &GF2.one();
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Monomial masks with coefficient 1, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&m| self.coeffs[m].is_one()).collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.support().iter().map(|m| m.count_ones()).max()
    }

    /// Value at the point whose `x_i` is bit `i-1` of `point`: the sum of
    /// coefficients of monomials contained in the point's support.
    pub fn evaluate(&self, point: usize) -> bool {
        self.support().iter().filter(|&&m| m & point == m).count() % 2 == 1
    }

    pub fn truth_table(&self) -> Vec<bool> {
        (0..1usize << self.n).map(|x| self.evaluate(x)).collect()
    }

    /// ANF from a truth table (binary Möbius transform).
    pub fn from_truth_table(n: usize, table: &[bool]) -> Result<Self> {
        check_n(n)?;
        if table.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                context: "truth table".into(),
                expected: 1 << n,
                found: table.len(),
            });
        }
        let mut a: Vec<bool> = table.to_vec();
        for i in 0..n {
            for m in 0..a.len() {
                if m & (1 << i) != 0 {
                    a[m] ^= a[m ^ (1 << i)];
                }
            }
        }
        Ok(BooleanFunction {
            n,
            coeffs: a.into_iter().map(|b| GF2.from_i64(b as i64)).collect(),
        })
    }

    /// Canonical text: monomials by (degree, mask), juxtaposed variables.
    pub fn render(&self) -> String {
        render_vector(&self.coeffs)
    }
}

impl std::fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn monomial_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| format!("x{}", i + 1))
        .collect()
}

/// Renders a GF(2) vector over the monomial basis as an ANF sum.
pub fn render_vector(v: &[Scalar]) -> String {
    let mut masks: Vec<usize> = (0..v.len()).filter(|&m| v[m].is_one()).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    if masks.is_empty() {
        return "0".into();
    }
    masks.into_iter().map(monomial_name).collect::<Vec<_>>().join("+")
}

/// Parses `sum of terms`, each `0`, `1`, or a product of `x<k>` joined by
/// `*` or juxtaposed. Whitespace is ignored; positions in errors are byte
/// offsets into `text`.
pub fn parse_anf(text: &str, n: usize) -> Result<BooleanFunction> {
    check_n(n)?;
    let toks: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |position: usize, message: String| Error::Parse { position, message };
    if toks.is_empty() {
        return Err(err(0, "empty expression".into()));
    }
    let mut f = BooleanFunction::zero(n)?;
    let mut i = 0;
    loop {
        // one term
        let start = toks.get(i).map_or(text.len(), |t| t.0);
        let mut mask = 0usize;
        let mut factors = 0;
        let mut constant_zero = false;
        loop {
            match toks.get(i) {
                Some(&(p, 'x')) => {
                    i += 1;
                    let digits_start = i;
                    let mut k = 0usize;
                    while let Some(&(_, c)) = toks.get(i) {
                        let Some(d) = c.to_digit(10) else { break };
                        k = k.saturating_mul(10).saturating_add(d as usize);
                        i += 1;
                    }
                    if i == digits_start {
                        return Err(err(p, "expected a variable index after `x`".into()));
                    }
                    if k == 0 || k > n {
                        return Err(err(p, format!("unknown variable x{k} (expected x1..x{n})")));
                    }
                    mask |= 1 << (k - 1);
                }
                Some(&(_, '1')) => i += 1,
                Some(&(_, '0')) => {
                    constant_zero = true;
                    i += 1;
                }
                Some(&(p, c)) => return Err(err(p, format!("unexpected `{c}`"))),
                None => return Err(err(start, "expected a term".into())),
            }
            factors += 1;
            match toks.get(i) {
                Some(&(_, '*')) => {
                    i += 1;
                    if toks.get(i).is_none() {
                        return Err(err(text.len(), "expected a factor after `*`".into()));
                    }
                }
                Some(&(_, 'x')) => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        if !constant_zero {
            f.coeffs[mask] += &GF2.one();
        }
        match toks.get(i) {
            None => return Ok(f),
            Some(&(p, '+')) => {
                i += 1;
                if toks.get(i).is_none() {
                    return Err(err(p, "dangling `+`".into()));
                }
            }
            Some(&(p, c)) => return Err(err(p, format!("unexpected `{c}`"))),
        }
    }
}

/// Permutation of monomial masks induced by swapping variables `i` and `i+1`
/// (1-based `i`).
fn swap_bits(mask: usize, i: usize) -> usize {
    let (a, b) = (i - 1, i);
    let (ba, bb) = ((mask >> a) & 1, (mask >> b) & 1);
    if ba == bb {
        mask
    } else {
        mask ^ (1 << a) ^ (1 << b)
    }
}

/// `S_n` on the monomial space, presented by `s1 … s{n-1}`, where `s_i`
/// exchanges `x_i` and `x_{i+1}`.
pub fn sn_action(n: usize) -> Result<AlgebraAction> {
    check_n(n)?;
    let dim = 1 << n;
    let gens = (1..n)
        .map(|i| {
            let mut m = Matrix::zeros(GF2, dim, dim);
            for mask in 0..dim {
                m.set(swap_bits(mask, i), mask, GF2.one());
            }
            (format!("s{i}"), m)
        })
        .collect();
    AlgebraAction::new(GF2, dim, gens)
}

/// `A·f` for `A = GF(2)[S_n]`.
pub fn boolean_module(f: &BooleanFunction) -> Result<CyclicModule> {
    let action = Arc::new(sn_action(f.n)?);
    orbit_basis(&action, &f.coeffs)
}

/// Decomposes `A·f`, naming vectors by their ANF.
pub fn decompose_boolean(f: &BooleanFunction, config: &SearchConfig) -> Result<DecompositionReport> {
    let m = boolean_module(f)?;
    complete_decomposition(&m, config, &|v: &[Scalar]| render_vector(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn masks(f: &BooleanFunction) -> Vec<usize> {
        f.support()
    }

    #[test]
    fn parse_examples() {
        let f = parse_anf("x1*x2 + x1 + x3", 3).unwrap();
        assert_eq!(masks(&f), vec![0b001, 0b011, 0b100]);
        assert!(parse_anf("x1 + x1", 2).unwrap().is_zero());
        assert_eq!(masks(&parse_anf("x1*x1", 1).unwrap()), vec![1]);
        assert_eq!(parse_anf("x1x2 + 1", 2).unwrap(), parse_anf("1+x2*x1", 2).unwrap());
        assert!(parse_anf("0", 2).unwrap().is_zero());
        assert_eq!(masks(&parse_anf("1*x2", 2).unwrap()), vec![2]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let pos = |s: &str, n| match parse_anf(s, n) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected a parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos("", 3), 0);
        assert_eq!(pos("   ", 3), 0);
        assert_eq!(pos("x1 + x4", 3), 5);
        assert_eq!(pos("x1 + y", 3), 5);
        assert_eq!(pos("x1 +", 3), 3);
        assert_eq!(pos("x1 ++ x2", 3), 4);
        assert_eq!(pos("x", 3), 0);
        assert_eq!(pos("x0", 3), 0);
        assert_eq!(pos("x1*", 3), 3);
        assert_eq!(pos("x1 x2 2", 3), 3);
        assert_eq!(pos("x1 x2 )", 3), 6);
        assert!(matches!(parse_anf("x1", 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn render_order() {
        let f = parse_anf("x1*x2+x1+x3", 3).unwrap();
        assert_eq!(f.render(), "x1+x3+x1x2");
        assert_eq!(BooleanFunction::zero(2).unwrap().render(), "0");
        assert_eq!(parse_anf("1+x2", 2).unwrap().render(), "1+x2");
    }

    #[test]
    fn generators_are_involutions_with_braid_relations() {
        for n in 1..=5 {
            let a = sn_action(n).unwrap();
            let dim = 1 << n;
            let id = Matrix::identity(GF2, dim);
            for g in a.generators() {
                assert_eq!(g.mul(g), id);
                for j in 0..dim {
                    assert_eq!(g.column(j).iter().filter(|c| c.is_one()).count(), 1);
                    assert_eq!(g.row(j).iter().filter(|c| c.is_one()).count(), 1);
                }
            }
            for w in a.generators().windows(2) {
                let (s, t) = (&w[0], &w[1]);
                assert_eq!(s.mul(t).mul(s), t.mul(s).mul(t));
            }
        }
        assert!(sn_action(DEFAULT_N_CAP + 1).is_err());
    }

    #[test]
    fn orbit_of_g_transitions() {
        let a = sn_action(3).unwrap();
        let g = parse_anf("x1+x2+x3+x1*x3+x2*x3+x1*x2*x3", 3).unwrap();
        let s1 = a.generator("s1").unwrap();
        let s2 = a.generator("s2").unwrap();
        assert_eq!(s1.mul_vec(g.coeffs()), g.coeffs());
        let b = parse_anf("x1+x2+x3+x1*x2+x2*x3+x1*x2*x3", 3).unwrap();
        assert_eq!(s2.mul_vec(g.coeffs()), b.coeffs());
    }

    #[test]
    fn symmetric_functions_are_lines() {
        for (expr, n) in [("x1*x2+x1*x3+x2*x3", 3), ("x1+x2+x3+x4", 4), ("1", 2), ("x1x2x3", 3)] {
            let f = parse_anf(expr, n).unwrap();
            let r = decompose_boolean(&f, &SearchConfig::default()).unwrap();
            assert_eq!(r.signature, vec![1], "{expr}");
        }
        let zero = decompose_boolean(&BooleanFunction::zero(3).unwrap(), &SearchConfig::default()).unwrap();
        assert!(zero.signature.is_empty());
    }

    fn function(n: usize) -> impl Strategy<Value = BooleanFunction> {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |bits| BooleanFunction::from_truth_table(n, &bits).unwrap())
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(f in (1usize..=5).prop_flat_map(function)) {
            prop_assert_eq!(parse_anf(&f.render(), f.n()).unwrap(), f);
        }

        #[test]
        fn truth_table_round_trip(f in (1usize..=5).prop_flat_map(function)) {
            prop_assert_eq!(BooleanFunction::from_truth_table(f.n(), &f.truth_table()).unwrap(), f);
        }

        /// `(σ_i·f)(x) = f(x with x_i, x_{i+1} exchanged)`, checked pointwise.
        #[test]
        fn action_relabels_variables(f in (2usize..=5).prop_flat_map(function), pick in 0usize..4) {
            let n = f.n();
            let i = pick % (n - 1) + 1;
            let a = sn_action(n).unwrap();
            let g = BooleanFunction::from_coeffs(n, a.generators()[i - 1].mul_vec(f.coeffs())).unwrap();
            for x in 0..1usize << n {
                prop_assert_eq!(g.evaluate(x), f.evaluate(swap_bits(x, i)));
            }
        }
    }
}

use super::EndoAlgebra;
use crate::algebra::matrix::Vector;
use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};

/// Every idempotent of a finite-field endomorphism algebra, in
/// lexicographic coordinate order (0 first, 1 among them).
///
/// Fails in characteristic 0, or when `p^dim` exceeds `cap`.
pub fn enumerate_idempotents(endo: &EndoAlgebra, cap: u64) -> Result<Vec<Vector>> {
    scan_idempotents(endo, cap).map(|(found, _)| found)
}

/// Number of elements `p^d`, if it fits under `cap`.
pub(crate) fn element_count(field: Field, d: usize, cap: u64) -> Result<u64> {
    let p = match field {
        Field::Prime(p) => p,
        Field::Rational => {
            return Err(Error::WrongCharacteristic {
                op: "idempotent enumeration",
                expected: "a prime",
            })
        }
    };
    let total = u32::try_from(d).ok().and_then(|d| p.checked_pow(d));
    match total {
        Some(t) if t <= cap => Ok(t),
        _ => Err(Error::BudgetExceeded {
            needed: format!("{p}^{d}"),
            cap,
        }),
    }
}

/// Odometer walk over all coordinate vectors, keeping the current element as
/// a residue matrix. Bumping digit `k` adds `basis[k]` once; a wrap from
/// `p−1` to 0 is also one addition since `p·basis[k] = 0`.
pub(crate) fn scan_idempotents(endo: &EndoAlgebra, cap: u64) -> Result<(Vec<Vector>, u64)> {
    let d = endo.dim();
    let total = element_count(endo.field(), d, cap)?;
    let p = endo.field().characteristic();
    let m = endo.module_dim();
    let basis: Vec<Vec<u64>> = endo
        .basis()
        .iter()
        .map(|b| b.entries().iter().map(Field::residue).collect())
        .collect();
    let mut cur = vec![0u64; m * m];
    let mut digits = vec![0u64; d];
    let mut found = Vec::new();
    let to_vector = |digits: &[u64]| -> Vector {
        digits
            .iter()
            .map(|&x| Scalar::Mod { value: x, modulus: p })
            .collect()
    };
    let mut scanned = 0u64;
    loop {
        scanned += 1;
        if is_idempotent(&cur, m, p) {
            found.push(to_vector(&digits));
        }
        let mut k = d;
        loop {
            if k == 0 {
                debug_assert_eq!(scanned, total);
                return Ok((found, scanned));
            }
            k -= 1;
            digits[k] += 1;
            for (c, b) in cur.iter_mut().zip(&basis[k]) {
                *c = (*c + b) % p;
            }
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn is_idempotent(a: &[u64], m: usize, p: u64) -> bool {
    for i in 0..m {
        for j in 0..m {
            let mut s = 0u64;
            for k in 0..m {
                s = (s + a[i * m + k] * a[k * m + j]) % p;
            }
            if s != a[i * m + j] {
                return false;
            }
        }
    }
    true
}

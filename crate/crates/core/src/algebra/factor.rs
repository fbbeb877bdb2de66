//! Polynomial factorization over GF(p) (Berlekamp) and ℚ (Zassenhaus:
//! factor modulo a good prime, Hensel lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::matrix::Matrix;
use super::poly::{squarefree_decomposition, Factorization, Poly};
use crate::error::{Error, Result};

/// Default degree cap for [`factor_q`].
pub const DEFAULT_DEGREE_CAP: usize = 32;

// Above this modulus the Berlekamp split switches from scanning every
// constant to random equal-degree splitting.
const SCAN_ALL_CONSTANTS_BELOW: u64 = 1 << 12;

/// Complete factorization into monic irreducibles over GF(p).
pub fn factor_gfp(f: &Poly) -> Result<Factorization> {
    if !f.field().is_finite() {
        return Err(Error::WrongCharacteristic {
            op: "factor_gfp",
            expected: "a prime field",
        });
    }
    let sqf = squarefree_decomposition(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sqf.factors {
        for h in berlekamp_split(g) {
            factors.push((h, *m));
        }
    }
    let mut out = Factorization {
        unit: sqf.unit,
        factors,
    };
    out.sort();
    Ok(out)
}

/// Dimension of the Berlekamp algebra `{v : v^p ≡ v mod f}` of a squarefree
/// polynomial over GF(p); equals the number of irreducible factors.
pub fn berlekamp_rank(f: &Poly) -> usize {
    berlekamp_kernel(&f.monic()).len()
}

/// Certifies irreducibility over GF(p): squarefree with a one-dimensional
/// Berlekamp algebra.
pub fn is_irreducible_gfp(f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => f.gcd(&f.derivative()).is_one() && berlekamp_rank(f) == 1,
    }
}

fn berlekamp_kernel(g: &Poly) -> Vec<Poly> {
    let field = g.field();
    let p = field.characteristic();
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let xp = Poly::x(field).pow_mod(p as u128, g);
    let mut cur = Poly::one(field);
    let mut columns = Vec::with_capacity(n);
    for _ in 0..n {
        columns.push((0..n).map(|i| cur.coeff(i)).collect::<Vec<_>>());
        cur = cur.mul(&xp).rem(g);
    }
    let q = Matrix::from_columns(field, n, &columns);
    q.sub(&Matrix::identity(field, n))
        .kernel_basis()
        .into_iter()
        .map(|v| Poly::new(field, v))
        .collect()
}

/// Splits a monic squarefree polynomial into its irreducible factors.
fn berlekamp_split(g: &Poly) -> Vec<Poly> {
    let g = g.monic();
    if g.degree().unwrap_or(0) <= 1 {
        return vec![g];
    }
    let field = g.field();
    let p = field.characteristic();
    let kernel = berlekamp_kernel(&g);
    let r = kernel.len();
    let mut factors = vec![g.clone()];
    if r == 1 {
        return factors;
    }
    let try_split = |factors: &mut Vec<Poly>, w: &Poly, shift: &dyn Fn(&Poly, &Poly) -> Poly| {
        let mut next = Vec::with_capacity(factors.len() + 1);
        for u in factors.drain(..) {
            if u.degree().unwrap_or(0) <= 1 {
                next.push(u);
                continue;
            }
            let h = u.gcd(&shift(w, &u));
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < u.degree().unwrap() {
                let other = u.exact_div(&h).expect("gcd divides").monic();
                next.push(h);
                next.push(other);
            } else {
                next.push(u);
            }
        }
        *factors = next;
    };
    if p < SCAN_ALL_CONSTANTS_BELOW {
        'outer: for v in kernel.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
            for s in field.elements().expect("finite field") {
                let shifted = v.sub(&Poly::constant(s));
                try_split(&mut factors, &shifted, &|w, _| w.clone());
                if factors.len() == r {
                    break 'outer;
                }
            }
        }
    } else {
        // p odd and large: gcd(u, w^((p-1)/2) - 1) for random w in the kernel span
        let mut rng = ChaCha8Rng::seed_from_u64(0x6265_726c);
        let e = (p as u128 - 1) / 2;
        while factors.len() < r {
            let w = kernel.iter().fold(Poly::zero(field), |acc, v| {
                acc.add(&v.scale(&field.from_i64(rng.gen_range(0..p as i64))))
            });
            try_split(&mut factors, &w, &|w, u| {
                w.pow_mod(e, u).sub(&Poly::one(field))
            });
        }
    }
    factors
}

/// Complete factorization into monic irreducibles over ℚ.
pub fn factor_q(f: &Poly, degree_cap: usize) -> Result<Factorization> {
    if f.field() != Field::Rational {
        return Err(Error::WrongCharacteristic {
            op: "factor_q",
            expected: "characteristic 0",
        });
    }
    let degree = f.degree().ok_or(Error::ZeroPolynomial("factorization"))?;
    if degree > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: degree_cap,
        });
    }
    let sqf = squarefree_decomposition(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sqf.factors {
        for h in zassenhaus(&primitive_integer(g)) {
            factors.push((from_integer(&h).monic(), *m));
        }
    }
    let mut out = Factorization {
        unit: sqf.unit,
        factors,
    };
    out.sort();
    Ok(out)
}

/// Integer polynomial, lowest degree first, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive integer multiple of a rational polynomial with positive leading coefficient.
fn primitive_integer(g: &Poly) -> ZPoly {
    let rats: Vec<&BigRational> = g.coeffs().iter().map(|c| c.as_rational().expect("rational")).collect();
    let lcm = rats.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: ZPoly = rats.iter().map(|q| (*q * &lcm).to_integer()).collect();
    make_primitive(ints)
}

fn make_primitive(a: ZPoly) -> ZPoly {
    let a = ztrim(a);
    if a.is_empty() {
        return a;
    }
    let mut c = content(&a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.into_iter().map(|x| x / &c).collect()
}

fn from_integer(a: &[BigInt]) -> Poly {
    Poly::new(Field::Rational, a.iter().map(|c| Field::Rational.from_bigint(c)).collect())
}

fn to_gfp(a: &[BigInt], field: Field) -> Poly {
    Poly::new(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

fn from_gfp(a: &Poly) -> ZPoly {
    a.coeffs().iter().map(|c| BigInt::from(Field::residue(c))).collect()
}

/// Exact division in ℤ[t]; `None` if the quotient is not an integer polynomial.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let q = from_integer(a).exact_div(&from_integer(b))?;
    q.coeffs()
        .iter()
        .map(|c| {
            let r = c.as_rational().unwrap();
            r.is_integer().then(|| r.to_integer())
        })
        .collect()
}

fn next_prime(p: u64) -> u64 {
    (p + 1..).find(|&q| super::field::is_prime(q)).unwrap()
}

/// Factors a primitive squarefree integer polynomial into primitive irreducibles.
fn zassenhaus(f: &[BigInt]) -> Vec<ZPoly> {
    let f = f.to_vec();
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    // smallest prime not dividing the leading coefficient or the discriminant
    let mut p = 2;
    let (field, fp) = loop {
        if !(&lc % BigInt::from(p)).is_zero() {
            let field = Field::Prime(p);
            let fp = to_gfp(&f, field);
            if fp.gcd(&fp.derivative()).is_one() {
                break (field, fp);
            }
        }
        p = next_prime(p);
    };
    let modular = berlekamp_split(&fp.monic());
    if modular.len() == 1 {
        return vec![f];
    }
    // Mignotte-style bound on the coefficients of any factor, times lc
    let max_coef = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max_coef * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2 {
        pk *= &pb;
        k += 1;
    }
    let lifted = multi_lift(&zmod(&f, &pk), &modular, field, k, &pk);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f;
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in combinations(&remaining, s) {
            let lc_cur = current.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc_cur], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &pk));
            let candidate = make_primitive(zsymmetric(&prod, &pk));
            if candidate.len() < 2 {
                continue;
            }
            if let Some(q) = zdiv_exact(&current, &candidate) {
                found = Some((subset, candidate, q));
                break;
            }
        }
        match found {
            Some((subset, candidate, q)) => {
                remaining.retain(|i| !subset.contains(i));
                result.push(candidate);
                current = make_primitive(q);
            }
            None => s += 1,
        }
    }
    result.push(current);
    result
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` to monic factors modulo `p^k`.
fn multi_lift(f: &[BigInt], factors: &[Poly], field: Field, k: u32, pk: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), pk);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), pk)];
    }
    let mid = factors.len() / 2;
    let one = Poly::one(field);
    let g0 = factors[..mid].iter().fold(one.clone(), |a, b| a.mul(b));
    let lc = to_gfp(&[f.last().unwrap().clone()], field);
    let h0 = factors[mid..].iter().fold(lc, |a, b| a.mul(b));
    let (g, h) = lift_pair(f, &g0, &h0, field, k, pk);
    let mut out = multi_lift(&g, &factors[..mid], field, k, pk);
    out.extend(multi_lift(&h, &factors[mid..], field, k, pk));
    out
}

/// Linear Hensel lifting of `f ≡ g0·h0 (mod p)` with `g0` monic and
/// coprime to `h0`, up to precision `p^k`.
fn lift_pair(f: &[BigInt], g0: &Poly, h0: &Poly, field: Field, k: u32, pk: &BigInt) -> (ZPoly, ZPoly) {
    let p = BigInt::from(field.characteristic());
    let (gcd, _a, b) = g0.ext_gcd(h0);
    debug_assert!(gcd.is_one());
    let mut g = from_gfp(g0);
    let mut h = from_gfp(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let next = &pj * &p;
        let gh = zmul(&g, &h);
        let len = f.len().max(gh.len());
        let diff: ZPoly = (0..len)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let c = gh.get(i).cloned().unwrap_or_default();
                (a - c).mod_floor(&next)
            })
            .collect();
        let e = to_gfp(&diff.iter().map(|c| c / &pj).collect::<Vec<_>>(), field);
        let r = b.mul(&e).rem(g0);
        let dh = e.sub(&r.mul(h0)).exact_div(g0).expect("Hensel step divides");
        let add = |x: &mut ZPoly, d: &Poly| {
            let d = from_gfp(d);
            if x.len() < d.len() {
                x.resize(d.len(), BigInt::zero());
            }
            for (xi, di) in x.iter_mut().zip(&d) {
                *xi += di * &pj;
            }
        };
        add(&mut g, &r);
        add(&mut h, &dh);
        g = zmod(&g, &next);
        h = zmod(&h, &next);
        pj = next;
    }
    debug_assert_eq!(&pj, pk);
    (g, h)
}

/// Convenience: the irreducible factors over whichever field `f` lives in.
pub fn factor(f: &Poly) -> Result<Factorization> {
    match f.field() {
        Field::Rational => factor_q(f, DEFAULT_DEGREE_CAP),
        Field::Prime(_) => factor_gfp(f),
    }
}

/// Irreducibility over the polynomial's own field.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fac = factor(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

//! Endomorphism algebras of modules given by a restricted action, splitting
//! elements and locality certificates.
//!
//! An [`EndoAlgebra`] is the commutant of the restricted generator matrices.
//! Its basis always starts with the identity, so the unit element has
//! coordinates `(1, 0, …, 0)`.

mod certificate;
mod enumerate;
mod strategy;

pub use certificate::{
    Certificate, Evidence, IndecomposableProof, SplitEvidence, SplitSource, TrailEntry, TrailOutcome, Verdict,
};
pub use enumerate::enumerate_idempotents;
pub use strategy::{
    find_splitting_element, find_splitting_element_with, SearchConfig, SearchContext, SplitStrategy,
    StrategyOutcome, StrategyRegistry,
};

use crate::algebra::matrix::{is_zero_vector, SpanBuilder, Vector};
use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::module::{CyclicModule, ModuleSpace};

/// `End_A(M)` as an algebra of `m×m` matrices with structure constants.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    field: Field,
    module_dim: usize,
    action: Vec<Matrix>,
    basis: Vec<Matrix>,
    /// `structure[i][j]` holds the coordinates of `basis[i]·basis[j]`.
    structure: Vec<Vec<Vector>>,
    span: SpanBuilder,
}

/// Commutant of the restricted action of a cyclic module.
pub fn compute_end(m: &CyclicModule) -> EndoAlgebra {
    EndoAlgebra::commutant(m.field(), m.dim(), m.restricted_action())
}

/// Commutant of the restricted action of an arbitrary stable subspace.
pub fn compute_end_space(m: &ModuleSpace) -> EndoAlgebra {
    EndoAlgebra::commutant(m.field(), m.dim(), m.restricted_action())
}

fn flatten(x: &Matrix) -> Vector {
    x.entries().to_vec()
}

impl EndoAlgebra {
    /// Solves `X·R = R·X` for every `R` in `action` as one linear system on
    /// the `m²` entries of `X`.
    pub fn commutant(field: Field, m: usize, action: &[Matrix]) -> Self {
        let unknowns = m * m;
        let mut rows: Vec<Vector> = Vec::new();
        for r in action {
            // (XR − RX)[i][j] = Σ_k X[i][k]·R[k][j] − R[i][k]·X[k][j]
            for i in 0..m {
                for j in 0..m {
                    let mut row = vec![field.zero(); unknowns];
                    for k in 0..m {
                        row[i * m + k] += r.get(k, j);
                        row[k * m + j] -= r.get(i, k);
                    }
                    if !is_zero_vector(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = if rows.is_empty() {
            Matrix::zeros(field, 1, unknowns)
        } else {
            Matrix::from_rows(field, unknowns, rows).expect("rows have m² entries")
        };
        let mut span = SpanBuilder::new(field, unknowns);
        let mut basis = Vec::new();
        if m > 0 {
            let id = Matrix::identity(field, m);
            span.insert(&flatten(&id));
            basis.push(id);
        }
        for v in system.kernel_basis() {
            if span.insert(&v) {
                basis.push(Matrix::from_entries(field, m, m, v));
            }
        }
        let structure = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        span.coordinates(&flatten(&a.mul(b)))
                            .expect("commutant is closed under multiplication")
                    })
                    .collect()
            })
            .collect();
        EndoAlgebra {
            field,
            module_dim: m,
            action: action.to_vec(),
            basis,
            structure,
            span,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// The restricted action this algebra commutes with.
    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn unit(&self) -> Vector {
        let mut v = vec![self.field.zero(); self.dim()];
        if let Some(first) = v.first_mut() {
            *first = self.field.one();
        }
        v
    }

    pub fn zero(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn matrix_of(&self, coords: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.module_dim, self.module_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Coordinates of `x`, or `None` if `x` does not commute with the action.
    pub fn coordinates_of(&self, x: &Matrix) -> Option<Vector> {
        if x.rows() != self.module_dim || x.cols() != self.module_dim || x.field() != self.field {
            return None;
        }
        self.span.coordinates(&flatten(x))
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.coordinates_of(x).is_some()
    }

    /// Product in coordinates via the structure constants.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                crate::algebra::matrix::axpy(&mut out, &c, &self.structure[i][j]);
            }
        }
        out
    }

    pub fn is_idempotent(&self, e: &[Scalar]) -> bool {
        self.mul(e, e) == e
    }

    fn checked(&self, e: &Matrix) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::NotAnEndomorphism)
        }
    }

    /// `e^m = 0`. Fails if `e` is not in the algebra.
    pub fn is_nilpotent(&self, e: &Matrix) -> Result<bool> {
        self.checked(e)?;
        Ok(e.pow(self.module_dim as u64)?.is_zero())
    }

    /// `rank(e) = m`. Fails if `e` is not in the algebra.
    pub fn is_invertible(&self, e: &Matrix) -> Result<bool> {
        self.checked(e)?;
        Ok(e.rank() == self.module_dim)
    }

    /// Left multiplication by `basis[i]` as a `d×d` matrix on coordinates.
    pub fn left_regular(&self, i: usize) -> Matrix {
        Matrix::from_columns(self.field, self.dim(), &self.structure[i])
    }
}

/// Basis of the column space of `x`.
pub(crate) fn image_basis(x: &Matrix) -> Vec<Vector> {
    let r = x.transpose().rref();
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

/// The pair `(ker e^m, im e^m)` when `e` is neither nilpotent nor invertible.
///
/// Both pieces are checked directly for stability under the action.
pub fn fitting_split(endo: &EndoAlgebra, e: &Matrix) -> Result<Option<(Vec<Vector>, Vec<Vector>)>> {
    endo.checked(e)?;
    let m = endo.module_dim;
    let p = e.pow(m as u64)?;
    if p.is_zero() || p.rank() == m {
        return Ok(None);
    }
    let ker = p.kernel_basis();
    let im = image_basis(&p);
    for piece in [&ker, &im] {
        if !crate::module::is_stable_under(endo.field, m, &endo.action, piece) {
            return Err(Error::Invariant("Fitting summand is not stable".into()));
        }
    }
    Ok(Some((ker, im)))
}

/// Fitting split of a cyclic module by one of its endomorphisms.
pub fn fitting_split_module(m: &CyclicModule, e: &Matrix) -> Result<Option<(Vec<Vector>, Vec<Vector>)>> {
    fitting_split(&compute_end(m), e)
}

/// Projection onto `span(a)` along `span(b)`, where `a ∪ b` is a basis.
pub(crate) fn projection(field: Field, m: usize, a: &[Vector], b: &[Vector]) -> Result<Matrix> {
    let cols: Vec<Vector> = a.iter().chain(b).cloned().collect();
    let p = Matrix::from_columns(field, m, &cols);
    let inv = p
        .inverse()
        .ok_or_else(|| Error::Invariant("summands do not form a direct sum".into()))?;
    let mut d = Matrix::zeros(field, m, m);
    for i in 0..a.len() {
        d.set(i, i, field.one());
    }
    Ok(p.mul(&d).mul(&inv))
}

/// Trace-form radical `{x : Tr(L_x L_y) = 0 ∀y}` in characteristic 0, as
/// coordinate vectors. Each element is checked nilpotent and the span is
/// checked to be a two-sided ideal.
pub fn radical_char0(endo: &EndoAlgebra) -> Result<Vec<Vector>> {
    if endo.field != Field::Rational {
        return Err(Error::WrongCharacteristic {
            op: "trace-form radical",
            expected: "0",
        });
    }
    let d = endo.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let left: Vec<Matrix> = (0..d).map(|i| endo.left_regular(i)).collect();
    let gram = Matrix::from_fn(endo.field, d, d, |i, j| left[i].mul(&left[j]).trace());
    let rad = gram.kernel_basis();
    let mut span = SpanBuilder::new(endo.field, d);
    for r in &rad {
        span.insert(r);
        if !endo.matrix_of(r).pow(endo.module_dim as u64)?.is_zero() {
            return Err(Error::Invariant("radical element is not nilpotent".into()));
        }
    }
    for r in &rad {
        for k in 0..d {
            let mut unit = endo.zero();
            unit[k] = endo.field.one();
            if !span.contains(&endo.mul(&unit, r)) || !span.contains(&endo.mul(r, &unit)) {
                return Err(Error::Invariant("radical is not an ideal".into()));
            }
        }
    }
    Ok(rad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{orbit_basis, AlgebraAction};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    const Q: Field = Field::Rational;

    fn action(field: Field, n: usize, gens: Vec<Matrix>) -> Arc<AlgebraAction> {
        let named = gens.into_iter().enumerate().map(|(i, m)| (format!("s{}", i + 1), m)).collect();
        Arc::new(AlgebraAction::new(field, n, named).unwrap())
    }

    fn s3_perm(field: Field) -> Arc<AlgebraAction> {
        action(
            field,
            3,
            vec![
                Matrix::from_i64(field, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                Matrix::from_i64(field, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            ],
        )
    }

    #[test]
    fn identity_action_gives_full_matrix_algebra() {
        for m in 1..=3 {
            let e = EndoAlgebra::commutant(Q, m, &[Matrix::identity(Q, m)]);
            assert_eq!(e.dim(), m * m);
            assert!(e.basis()[0].is_identity());
        }
    }

    #[test]
    fn commutant_elements_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [Field::Prime(2), Q, Field::Prime(5)] {
            for _ in 0..10 {
                let gens: Vec<Matrix> = (0..2)
                    .map(|_| Matrix::from_fn(field, 4, 4, |_, _| field.from_i64(rng.gen_range(-1..=1))))
                    .collect();
                let e = EndoAlgebra::commutant(field, 4, &gens);
                assert!(e.dim() >= 1);
                for b in e.basis() {
                    for g in &gens {
                        assert_eq!(b.mul(g), g.mul(b));
                    }
                }
                // structure constants agree with matrix products
                for i in 0..e.dim() {
                    for j in 0..e.dim() {
                        let mut a = e.zero();
                        a[i] = field.one();
                        let mut b = e.zero();
                        b[j] = field.one();
                        assert_eq!(e.matrix_of(&e.mul(&a, &b)), e.basis()[i].mul(&e.basis()[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn nilpotent_and_invertible_dichotomy() {
        let e = EndoAlgebra::commutant(Q, 2, &[Matrix::identity(Q, 2)]);
        let zero = Matrix::zeros(Q, 2, 2);
        let one = Matrix::identity(Q, 2);
        let idem = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        assert!(e.is_nilpotent(&zero).unwrap() && !e.is_invertible(&zero).unwrap());
        assert!(!e.is_nilpotent(&one).unwrap() && e.is_invertible(&one).unwrap());
        assert!(!e.is_nilpotent(&idem).unwrap() && !e.is_invertible(&idem).unwrap());
        assert!(fitting_split(&e, &one).unwrap().is_none());
        assert!(fitting_split(&e, &zero).unwrap().is_none());
        let (k, i) = fitting_split(&e, &idem).unwrap().unwrap();
        assert_eq!((k.len(), i.len()), (1, 1));

        let swap = Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]);
        let e2 = EndoAlgebra::commutant(Q, 2, &[swap]);
        assert_eq!(e.is_nilpotent(&zero), Ok(true));
        assert_eq!(e2.is_nilpotent(&idem), Err(Error::NotAnEndomorphism));
        assert!(fitting_split(&e2, &idem).is_err());
    }

    #[test]
    fn fitting_pieces_are_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let field = Field::Prime(3);
            let gens: Vec<Matrix> = (0..2)
                .map(|_| Matrix::from_fn(field, 4, 4, |_, _| field.from_i64(rng.gen_range(0..3))))
                .collect();
            let e = EndoAlgebra::commutant(field, 4, &gens);
            for b in e.basis() {
                if let Some((k, i)) = fitting_split(&e, b).unwrap() {
                    assert_eq!(k.len() + i.len(), 4);
                    let mut all = k.clone();
                    all.extend(i.clone());
                    assert_eq!(crate::algebra::matrix::rank_of(field, 4, &all), 4);
                    for g in &gens {
                        for piece in [&k, &i] {
                            let mut span = SpanBuilder::new(field, 4);
                            piece.iter().for_each(|v| {
                                span.insert(v);
                            });
                            assert!(piece.iter().all(|v| span.contains(&g.mul_vec(v))));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_commutes() {
        let m = orbit_basis(&s3_perm(Q), &[Q.one(), Q.zero(), Q.zero()]).unwrap();
        let e = compute_end(&m);
        assert_eq!(e.dim(), 2);
        let inv = m.contains(&[Q.one(), Q.one(), Q.one()]).unwrap().unwrap();
        let complement = vec![
            m.contains(&[Q.one(), Q.from_i64(-1), Q.zero()]).unwrap().unwrap(),
            m.contains(&[Q.zero(), Q.one(), Q.from_i64(-1)]).unwrap().unwrap(),
        ];
        let p = projection(Q, 3, &[inv], &complement).unwrap();
        assert_eq!(p.mul(&p), p);
        assert!(e.contains(&p));
    }

    #[test]
    fn radical_of_semisimple_and_path_algebra() {
        let m = orbit_basis(&s3_perm(Q), &[Q.one(), Q.zero(), Q.zero()]).unwrap();
        assert!(radical_char0(&compute_end(&m)).unwrap().is_empty());

        // Left multiplication by e11 and e12 on upper-triangular 2×2 matrices
        // (coordinates e11, e12, e22); the endomorphisms are right
        // multiplications, an upper-triangular algebra with 1-dim radical.
        let l11 = Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let l12 = Matrix::from_i64(Q, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let act = action(Q, 3, vec![l11, l12]);
        let one = [Q.one(), Q.zero(), Q.one()];
        let module = orbit_basis(&act, &one).unwrap();
        assert_eq!(module.dim(), 3);
        let e = compute_end(&module);
        assert_eq!(e.dim(), 3);
        let rad = radical_char0(&e).unwrap();
        assert_eq!(rad.len(), 1);
        assert!(!e.matrix_of(&rad[0]).is_zero());

        let scalars = EndoAlgebra::commutant(Q, 1, &[Matrix::identity(Q, 1)]);
        assert!(radical_char0(&scalars).unwrap().is_empty());
        let f2 = EndoAlgebra::commutant(Field::Prime(2), 1, &[]);
        assert!(radical_char0(&f2).is_err());
    }
}

//! Dense matrices and column vectors over a [`Field`].

use std::fmt;

use serde::{Serialize, Serializer};

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Column vector; the field is implied by its entries (or carried alongside
/// when the vector may be empty).
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, len: usize) -> Vector {
    vec![field.zero(); len]
}

pub fn unit_vector(field: Field, len: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, len);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let mut it = a.iter().zip(b);
    let (x, y) = it.next()?;
    let mut acc = x * y;
    for (x, y) in it {
        acc += &(x * y);
    }
    Some(acc)
}

/// `a + c·b`, in place.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

/// Lexicographic comparison using [`Scalar::canonical_cmp`].
pub fn lex_cmp(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.canonical_cmp(y);
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: format!("matrix row {i}"),
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        Matrix::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Entries in row-major order; doubles as the vectorization used to
    /// treat matrices as points of a linear space.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_entries(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix, context: &str) {
        assert_eq!(self.field, other.field, "{context}: field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "{context}: shape mismatch"
        );
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other, "add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other, "sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "mul: field mismatch");
        assert_eq!(self.cols, other.rows, "mul: shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `self · v` for a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "mul_vec: length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `v · self` for a row vector.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len(), "vec_mul: length mismatch");
        let mut out = zero_vector(self.field, self.cols);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// Exact k-th power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                let neg = -&f;
                let row = &mut m.data[i * m.cols..(i + 1) * m.cols];
                axpy(row, &neg, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivot_columns: pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = zero_vector(self.field, self.cols);
                v[free] = self.field.one();
                for (r, &p) in pivot_columns.iter().enumerate() {
                    v[p] = -reduced.get(r, free);
                }
                v
            })
            .collect()
    }

    /// Solves `self · x = b`, returning `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                context: "solve right-hand side".into(),
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = Matrix::from_fn(self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Rref {
            reduced,
            pivot_columns,
            ..
        } = aug.rref();
        if pivot_columns.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.field, self.cols);
        for (r, &p) in pivot_columns.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let r = aug.rref();
        if r.pivot_columns.iter().take(n).enumerate().any(|(i, &p)| p != i) || r.rank < n {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| r.reduced.get(i, n + j).clone()))
    }

    /// Entries as decimal strings, the JSON wire form.
    pub fn to_string_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| s.to_string()).collect())
            .collect()
    }

    /// Parses a grid of decimal strings; an empty grid yields a 0×`cols` matrix.
    pub fn from_string_grid(field: Field, grid: &[Vec<String>], cols: usize) -> Result<Self> {
        let rows = grid
            .iter()
            .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, cols, rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{:?}", self.field, self.to_string_grid())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_grid().serialize(s)
    }
}

/// Incrementally built echelon basis that remembers how each reduced row is
/// expressed through the vectors originally inserted.
///
/// Inserting vectors in order and asking for membership is exactly what the
/// covering-tree constructions need.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    field: Field,
    len: usize,
    rows: Vec<EchelonRow>,
}

#[derive(Clone, Debug)]
struct EchelonRow {
    pivot: usize,
    vector: Vector,
    // coefficients over the originally inserted vectors
    combo: Vector,
}

impl SpanBuilder {
    pub fn new(field: Field, len: usize) -> Self {
        SpanBuilder {
            field,
            len,
            rows: Vec::new(),
        }
    }

    /// Number of independent vectors inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    fn reduce(&self, v: &[Scalar]) -> (Vector, Vector) {
        assert_eq!(v.len(), self.len, "SpanBuilder: vector length mismatch");
        let mut rem = v.to_vec();
        let mut combo = zero_vector(self.field, self.rows.len());
        for row in &self.rows {
            let c = rem[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            axpy(&mut rem, &-&c, &row.vector);
            axpy(&mut combo, &c, &row.combo);
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v).0)
    }

    /// Coordinates of `v` over the inserted vectors, if it lies in their span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        let (rem, combo) = self.reduce(v);
        is_zero_vector(&rem).then_some(combo)
    }

    /// Inserts `v` if it is independent of the current span; returns whether it was kept.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let (rem, combo) = self.reduce(v);
        let Some(pivot) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let n = self.rows.len();
        for row in &mut self.rows {
            row.combo.push(self.field.zero());
        }
        // rem = v - sum combo_i * original_i
        let mut own = combo.iter().map(|c| -c).collect::<Vector>();
        own.push(self.field.one());
        debug_assert_eq!(own.len(), n + 1);
        let inv = rem[pivot].inv().expect("nonzero pivot");
        self.rows.push(EchelonRow {
            pivot,
            vector: scale(&rem, &inv),
            combo: scale(&own, &inv),
        });
        true
    }
}

/// Rank of a list of vectors of common length.
pub fn rank_of(field: Field, len: usize, vectors: &[Vector]) -> usize {
    let mut b = SpanBuilder::new(field, len);
    for v in vectors {
        b.insert(v);
    }
    b.rank()
}

/// Canonical basis of a span: nonzero rows of the reduced echelon form,
/// sorted lexicographically ascending.
pub fn canonical_basis(field: Field, len: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, len, vectors.to_vec()).expect("consistent lengths");
    let r = m.rref();
    let mut rows: Vec<Vector> = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
    rows.sort_by(|a, b| lex_cmp(a, b));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const GF2: Field = Field::Prime(2);
    const Q: Field = Field::Rational;

    fn random_matrix(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(-3..=3)))
    }

    // Determinant by cofactor expansion; independent of elimination.
    fn det_cofactor(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return m.field().one();
        }
        let mut acc = m.field().zero();
        for j in 0..n {
            let a = m.get(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(m.field(), n - 1, n - 1, |i, k| {
                m.get(i + 1, if k < j { k } else { k + 1 }).clone()
            });
            let term = a * &det_cofactor(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    // Rank as the largest k with a nonvanishing k×k minor.
    fn rank_by_minors(m: &Matrix) -> usize {
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub = Matrix::from_fn(m.field(), k, k, |i, j| m.get(rs[i], cs[j]).clone());
                    if !det_cofactor(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_identity_and_equal_rows() {
        let id = Matrix::identity(GF2, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);

        let m = Matrix::from_i64(GF2, &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(GF2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_rank_matches_minor_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..20 {
            let mut m = random_matrix(Q, 5, 5, &mut rng);
            // force some rank deficiency on odd trials
            if trial % 2 == 1 {
                let r0 = m.row(0).to_vec();
                let r1 = m.row(1).to_vec();
                for j in 0..5 {
                    m.set(4, j, &r0[j] + &(&r1[j] * &Q.from_i64(2)));
                }
            }
            assert_eq!(m.rank(), rank_by_minors(&m), "trial {trial}");
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Q, 3).kernel_basis().is_empty());
        let k = Matrix::zeros(Q, 2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(rank_of(Q, 2, &k), 2);
        let k = Matrix::from_i64(GF2, &[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![GF2.one(), GF2.one()]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q.from_i64(3), Q.from_i64(-1)];
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_i64(GF2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[GF2.one(), GF2.zero()]).unwrap(), None);
        assert!(m.solve(&[GF2.one()]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut solved = 0;
        while solved < 10 {
            let m = random_matrix(Q, 4, 4, &mut rng);
            if m.rank() < 4 {
                continue;
            }
            let b: Vector = (0..4).map(|_| Q.from_i64(rng.gen_range(-5..=5))).collect();
            let x = m.solve(&b).unwrap().expect("full rank");
            assert_eq!(m.mul_vec(&x), b);
            solved += 1;
        }
    }

    #[test]
    fn pow_examples() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        assert!(m.pow(0).unwrap().is_identity());
        let j = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert!(j.pow(3).unwrap().is_zero());
        assert!(!j.pow(2).unwrap().is_zero());
        let f7 = Field::Prime(7);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(f7, 3, 3, &mut rng);
        let naive = (0..4).fold(m.clone(), |acc, _| acc.mul(&m));
        assert_eq!(m.pow(5).unwrap(), naive);
        assert!(Matrix::zeros(Q, 2, 3).pow(2).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn span_builder_coordinates() {
        let mut b = SpanBuilder::new(Q, 3);
        let v1 = vec![Q.from_i64(1), Q.from_i64(2), Q.from_i64(0)];
        let v2 = vec![Q.from_i64(0), Q.from_i64(1), Q.from_i64(1)];
        assert!(b.insert(&v1));
        assert!(b.insert(&v2));
        let w: Vector = v1.iter().zip(&v2).map(|(a, c)| &(a * &Q.from_i64(3)) - c).collect();
        assert!(!b.insert(&w));
        assert_eq!(b.coordinates(&w).unwrap(), vec![Q.from_i64(3), Q.from_i64(-1)]);
        assert!(b.coordinates(&[Q.one(), Q.zero(), Q.zero()]).is_none());
    }

    #[test]
    fn canonical_basis_is_sorted_rref() {
        let vs = vec![
            vec![GF2.zero(), GF2.one(), GF2.one()],
            vec![GF2.one(), GF2.zero(), GF2.one()],
        ];
        let b = canonical_basis(GF2, 3, &vs);
        assert_eq!(b[0], vec![GF2.zero(), GF2.one(), GF2.one()]);
        assert_eq!(b[1], vec![GF2.one(), GF2.zero(), GF2.one()]);
    }

    fn small_q_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                Matrix::from_fn(Q, r, c, |i, j| {
                    Scalar::Rational(BigRational::from_integer(BigInt::from(v[i * c + j])))
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_q_matrix()) {
            let once = m.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once);
        }

        #[test]
        fn kernel_vectors_annihilate(m in small_q_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(k.len(), m.cols() - m.rank());
            prop_assert_eq!(rank_of(Q, m.cols(), &k), k.len());
            for v in &k {
                prop_assert!(is_zero_vector(&m.mul_vec(v)));
            }
        }
    }
}

//! Exact dense linear algebra over a prime field `F_p` with `p <= 97`.
//!
//! Vectors are `Vec<u32>` of reduced residues. Matrices act on column vectors.
//! The Kronecker product uses row-major pair indices `(i, j) -> i * dim2 + j`,
//! so `vec(A X B) = (A ⊗ Bᵀ) vec(X)` for row-major `vec`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if prime && p <= 97 {
            Ok(Self { p })
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    pub fn unit_vector(self, n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1 % self.p;
        v
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn sub_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.sub(x, y)).collect()
    }

    pub fn scale_vec(self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.mul(c, x)).collect()
    }

    /// `acc += c * a`.
    pub fn axpy(self, acc: &mut [u32], c: u32, a: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, &y) in acc.iter_mut().zip(a) {
            *x = (*x + c * y) % self.p;
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        (a.iter().zip(b).map(|(&x, &y)| (x * y) as u64).sum::<u64>() % self.p as u64) as u32
    }

    /// Every vector of `F_p^n`, in lexicographic order. Caller bounds `p^n`.
    pub fn all_vectors(self, n: usize) -> impl Iterator<Item = Vec<u32>> {
        let total = (self.p as u64).pow(n as u32);
        (0..total).map(move |mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % self.p as u64) as u32;
                    k /= self.p as u64;
                    d
                })
                .collect()
        })
    }
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// A dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c) % field.p);
            }
        }
        Self { field, rows, cols, data }
    }

    /// Builds from signed integer rows, reducing each entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |r, c| field.reduce(rows[r][c])))
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        Self::from_fn(field, v.len(), 1, |r, _| v[r])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.cols).map(|c| self.column(c))
    }

    pub fn set_column(&mut self, c: usize, v: &[u32]) {
        for (r, &x) in v.iter().enumerate() {
            self.set(r, c, x);
        }
    }

    /// Row-major flattening, the `vec` used by [`Matrix::kronecker`].
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, v: &[u32]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self { field, rows, cols, data: v.to_vec() }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch {:?} x {:?}", self.shape(), other.shape());
        let p = self.field.p;
        let mut out = vec![0u32; self.rows * other.cols];
        for r in 0..self.rows {
            let acc = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for (x, &y) in acc.iter_mut().zip(other.row(k)) {
                    *x = (*x + a * y) % p;
                }
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: other.cols, data: out }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        Matrix { data: self.field.scale_vec(c % self.field.p, &self.data), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    /// Horizontal concatenation; all blocks share the row count.
    pub fn hstack(field: PrimeField, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for r in 0..rows {
                out.data[r * cols + off..r * cols + off + b.cols].copy_from_slice(b.row(r));
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share the column count.
    pub fn vstack(field: PrimeField, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Matrix { field, rows, cols, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c))
    }

    /// `(A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l]` with row-major pair indices.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = other.shape();
        Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |r, c| self.field.mul(self.get(r / r2, c / c2), other.get(r % r2, c % c2)))
    }

    pub fn rref(&self) -> Rref {
        let p = self.field.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| m.get(r, col) != 0) else { continue };
            if sel != prow {
                for c in 0..m.cols {
                    m.data.swap(sel * m.cols + c, prow * m.cols + c);
                }
            }
            let inv = self.field.inv(m.get(prow, col));
            for c in col..m.cols {
                let i = prow * m.cols + c;
                m.data[i] = m.data[i] * inv % p;
            }
            let pivot_row: Vec<u32> = m.row(prow)[col..].to_vec();
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                let base = r * m.cols + col;
                for (k, &y) in pivot_row.iter().enumerate() {
                    if y != 0 {
                        m.data[base + k] = (m.data[base + k] + neg * y) % p;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Null space `{x : A x = 0}` with the standard free-variable basis.
    pub fn kernel(&self) -> Subspace {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.pivots.contains(c)).collect();
        let vectors: Vec<Vec<u32>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (i, &pc) in rref.pivots.iter().enumerate() {
                    v[pc] = self.field.neg(rref.matrix.get(i, f));
                }
                v
            })
            .collect();
        Subspace { field: self.field, basis: Matrix::from_columns(self.field, self.cols, &vectors) }
    }

    /// One solution of `A x = b`, free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, &Matrix::column_vector(self.field, b)]);
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.matrix.get(i, self.cols);
        }
        Some(x)
    }

    /// One solution `X` of `A X = B`, column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let rref = aug.rref();
        if rref.pivots.iter().any(|&pc| pc >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in rref.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, rref.matrix.get(i, self.cols + c));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.field, self.rows))?;
        self.matmul(&x).is_identity().then_some(x)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::spanned_by(self.field, self.rows, self)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_bijective(&self) -> bool {
        self.rows == self.cols && self.is_injective()
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix { data: self.field.add_vec(&self.data, &rhs.data), ..self.clone() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix { data: self.field.sub_vec(&self.data, &rhs.data), ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// A subspace of `F_p^n`, stored as a matrix whose columns form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        Self { field, basis: Matrix::zeros(field, n, 0) }
    }

    pub fn full(field: PrimeField, n: usize) -> Self {
        Self { field, basis: Matrix::identity(field, n) }
    }

    /// The span of the columns of `m`; keeps the pivot columns as basis.
    pub fn spanned_by(field: PrimeField, n: usize, m: &Matrix) -> Self {
        assert_eq!(m.rows(), n);
        let rref = m.rref();
        Self { field, basis: m.select_columns(&rref.pivots) }
    }

    pub fn from_vectors(field: PrimeField, n: usize, vs: &[Vec<u32>]) -> Self {
        Self::spanned_by(field, n, &Matrix::from_columns(field, n, vs))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.columns().collect()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.basis.solve(v)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.columns().all(|v| self.contains(&v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim();
        Subspace::spanned_by(self.field, n, &Matrix::hstack(self.field, n, &[&self.basis, &other.basis]))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient_dim();
        let stacked = Matrix::hstack(self.field, n, &[&self.basis, &other.basis.scale(self.field.p() - 1)]);
        let k = stacked.kernel();
        let vs: Vec<Vec<u32>> = k.vectors().iter().map(|c| self.basis.mul_vec(&c[..self.dim()])).collect();
        Subspace::from_vectors(self.field, n, &vs)
    }

    /// Image of this subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::spanned_by(self.field, m.rows(), &m.matmul(&self.basis))
    }
}

/// `F_p^n / W` with a canonical projection and a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// Quotient of `F_p^n` by `relations`. The surviving coordinates are the
/// non-pivot columns of the reduced relation rows; the section sends each
/// to its standard basis vector, so `projection * section = I`.
pub fn quotient_space(relations: &Subspace) -> Quotient {
    let field = relations.field();
    let n = relations.ambient_dim();
    let rref = relations.basis().transpose().rref();
    let keep: Vec<usize> = (0..n).filter(|c| !rref.pivots.contains(c)).collect();
    let mut projection = Matrix::zeros(field, keep.len(), n);
    for (q, &k) in keep.iter().enumerate() {
        projection.set(q, k, 1);
    }
    for (i, &pc) in rref.pivots.iter().enumerate() {
        for (q, &k) in keep.iter().enumerate() {
            projection.set(q, pc, field.neg(rref.matrix.get(i, k)));
        }
    }
    let section = Matrix::from_fn(field, n, keep.len(), |r, c| u32::from(keep[c] == r));
    Quotient { projection, section }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn arb_pair(max: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1..=max, 1..=max, 1..=max).prop_flat_map(|(p, r, c1, c2)| {
            (proptest::collection::vec(0..p, r * c1), proptest::collection::vec(0..p, r * c2))
                .prop_map(move |(a, b)| (Matrix::from_vec(f(p), r, c1, &a), Matrix::from_vec(f(p), r, c2, &b)))
        })
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 1..=max, 1..=max)
            .prop_flat_map(|(p, r, c)| proptest::collection::vec(0..p, r * c).prop_map(move |d| Matrix::from_vec(f(p), r, c, &d)))
    }

    #[test]
    fn modulus_validation() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(101).is_err());
    }

    #[test]
    fn inverses_exist_for_all_nonzero() {
        for p in [2, 3, 5, 7, 97] {
            let k = f(p);
            for a in 1..p {
                assert_eq!(k.mul(a, k.inv(a)), 1);
            }
        }
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let k = f(3);
        let a = Matrix::from_rows(k, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(a.solve(&[2, 1]).unwrap(), vec![2, 0, 1]);
        let b = Matrix::from_rows(k, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(b.solve(&[1, 0]).is_none());
    }

    #[test]
    fn quotient_of_diagonal_relation() {
        let k = f(5);
        let w = Subspace::from_vectors(k, 2, &[vec![1, 4]]);
        let q = quotient_space(&w);
        assert_eq!(q.dim(), 1);
        assert!(q.projection.mul_vec(&[1, 4]).iter().all(|&x| x == 0));
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(7)) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            prop_assert!(m.matmul(m.kernel().basis()).is_zero());
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix(6)) {
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.pivots, twice.pivots);
        }

        #[test]
        fn solve_none_means_rank_increase(m in arb_matrix(6), seed in any::<u64>()) {
            let k = m.field();
            let b: Vec<u32> = (0..m.rows()).map(|i| ((seed >> (i % 60)) as u32) % k.p()).collect();
            let aug = Matrix::hstack(k, m.rows(), &[&m, &Matrix::column_vector(k, &b)]);
            match m.solve(&b) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => prop_assert!(aug.rank() > m.rank()),
            }
        }

        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix(6)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solve_returns_a_solution(m in arb_matrix(6), seed in any::<u64>()) {
            let k = m.field();
            let x0: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) as u32) % k.p()).collect();
            let b = m.mul_vec(&x0);
            let x = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x), b);
        }

        #[test]
        fn quotient_laws(m in arb_matrix(6)) {
            let w = m.column_space();
            let q = quotient_space(&w);
            prop_assert_eq!(q.dim() + w.dim(), m.rows());
            prop_assert!(q.projection.matmul(&q.section).is_identity());
            prop_assert!(q.projection.matmul(w.basis()).is_zero());
        }

        #[test]
        fn kronecker_vec_identity(a in arb_matrix(3), seed in any::<u64>()) {
            let k = a.field();
            let n = a.cols();
            let x = Matrix::from_fn(k, n, 2, |r, c| ((seed >> ((r * 2 + c) % 60)) as u32) % k.p());
            let b = Matrix::from_fn(k, 2, 3, |r, c| ((seed >> ((r + c * 7) % 60)) as u32 + 1) % k.p());
            let lhs = a.matmul(&x).matmul(&b).to_vec();
            let rhs = a.kronecker(&b.transpose()).mul_vec(&x.to_vec());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_roundtrip(m in arb_matrix(5)) {
            if let Some(inv) = m.inverse() {
                prop_assert!(inv.matmul(&m).is_identity());
            } else {
                prop_assert!(m.rows() != m.cols() || m.rank() < m.rows());
            }
        }

        #[test]
        fn intersection_is_contained((a, b) in arb_pair(5)) {
            let (u, v) = (a.column_space(), b.column_space());
            let i = u.intersection(&v);
            prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
            prop_assert_eq!(i.dim() + u.sum(&v).dim(), u.dim() + v.dim());
        }
    }
}

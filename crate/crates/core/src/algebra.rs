//! Finite-dimensional unital associative algebras over `F_p`, given by
//! structure constants `e_i e_j = Σ_k mul[i][j][k] e_k`, and their morphisms.

use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::exactla::{Matrix, PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: PrimeField,
    dim: usize,
    mul: Vec<u32>,
    unit: Vec<u32>,
}

/// Enumeration cap for searches over subsets of an algebra.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

impl Algebra {
    /// Builds from nested structure constants, reducing entries mod `p`.
    pub fn new(field: PrimeField, dim: usize, mul: &[Vec<Vec<i64>>], unit: &[i64]) -> Result<Self> {
        let shape_ok = mul.len() == dim && mul.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim)) && unit.len() == dim;
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!("structure constants must be {dim}x{dim}x{dim} with a length-{dim} unit")));
        }
        let flat = mul.iter().flatten().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Self { field, dim, mul: flat, unit: unit.iter().map(|&x| field.reduce(x)).collect() })
    }

    fn from_flat(field: PrimeField, dim: usize, mul: Vec<u32>, unit: Vec<u32>) -> Self {
        debug_assert_eq!(mul.len(), dim * dim * dim);
        Self { field, dim, mul, unit }
    }

    /// Structure constants from a product on coordinate vectors.
    pub fn from_product(field: PrimeField, dim: usize, unit: Vec<u32>, product: impl Fn(usize, usize) -> Vec<u32>) -> Self {
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mul.extend(product(i, j));
            }
        }
        Self::from_flat(field, dim, mul, unit)
    }

    /// The ground field `F_p` as a one-dimensional algebra.
    pub fn ground(field: PrimeField) -> Self {
        Self::from_flat(field, 1, vec![1], vec![1])
    }

    /// `A × B` with basis `(e_i, 0)` followed by `(0, f_j)`.
    pub fn product(a: &Algebra, b: &Algebra) -> Self {
        let n = a.dim + b.dim;
        let unit = [a.unit.clone(), b.unit.clone()].concat();
        Self::from_product(a.field, n, unit, |i, j| {
            let mut v = vec![0; n];
            if i < a.dim && j < a.dim {
                v[..a.dim].copy_from_slice(a.structure(i, j));
            } else if i >= a.dim && j >= a.dim {
                v[a.dim..].copy_from_slice(b.structure(i - a.dim, j - a.dim));
            }
            v
        })
    }

    /// `F_p^n` with orthogonal idempotent basis.
    pub fn split(field: PrimeField, n: usize) -> Self {
        Self::from_product(field, n, vec![1; n], |i, j| {
            let mut v = vec![0; n];
            if i == j {
                v[i] = 1;
            }
            v
        })
    }

    pub fn opposite(&self) -> Self {
        Self::from_product(self.field, self.dim, self.unit.clone(), |i, j| self.structure(j, i).to_vec())
    }

    /// `F_p[x]/(x^n + c_{n-1} x^{n-1} + ... + c_0)` on the basis `1, x, ..., x^{n-1}`.
    pub fn polynomial_quotient(field: PrimeField, lower_coeffs: &[u32]) -> Self {
        let n = lower_coeffs.len();
        let reduce = |mut poly: Vec<u32>| {
            for d in (n..poly.len()).rev() {
                let c = poly[d];
                if c == 0 {
                    continue;
                }
                poly[d] = 0;
                for (k, &a) in lower_coeffs.iter().enumerate() {
                    poly[d - n + k] = field.sub(poly[d - n + k], field.mul(c, a));
                }
            }
            poly.truncate(n);
            poly
        };
        Self::from_product(field, n, field.unit_vector(n, 0), |i, j| {
            let mut poly = vec![0; 2 * n];
            poly[i + j] = 1;
            reduce(poly)
        })
    }

    /// `M_n(F_p)` on matrix units `E_{ab}` indexed `a * n + b`.
    pub fn matrix_algebra(field: PrimeField, n: usize) -> Self {
        let unit = (0..n * n).map(|k| u32::from(k / n == k % n)).collect();
        Self::from_product(field, n * n, unit, |i, j| {
            let mut v = vec![0; n * n];
            let (a, b, c, d) = (i / n, i % n, j / n, j % n);
            if b == c {
                v[a * n + d] = 1;
            }
            v
        })
    }

    /// Upper triangular 2x2 matrices on the basis `e11, e12, e22`.
    pub fn upper_triangular(field: PrimeField) -> Self {
        let table = |i: usize, j: usize| -> Vec<u32> {
            match (i, j) {
                (0, 0) => vec![1, 0, 0],
                (0, 1) => vec![0, 1, 0],
                (1, 2) => vec![0, 1, 0],
                (2, 2) => vec![0, 0, 1],
                _ => vec![0, 0, 0],
            }
        };
        Self::from_product(field, 3, vec![1, 0, 1], table)
    }

    /// The algebra spanned by `basis` under `product`, which must be closed.
    /// Coordinates of products are found by solving against the basis.
    pub fn from_matrix_basis(field: PrimeField, basis: &[Matrix], unit: &Matrix, product: impl Fn(&Matrix, &Matrix) -> Matrix) -> Result<Self> {
        let n = basis.first().map_or(0, |b| b.rows() * b.cols());
        let stacked = Matrix::from_columns(field, n, &basis.iter().map(Matrix::to_vec).collect::<Vec<_>>());
        let coords = |m: &Matrix| {
            stacked
                .solve(&m.to_vec())
                .ok_or_else(|| Error::Validation(vec![Violation::new("closure under multiplication", "product leaves the span")]))
        };
        let dim = basis.len();
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for a in basis {
            for b in basis {
                mul.extend(coords(&product(a, b))?);
            }
        }
        let unit = if dim == 0 { vec![] } else { coords(unit)? };
        Ok(Self::from_flat(field, dim, mul, unit))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[u32] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        self.field.unit_vector(self.dim, i)
    }

    /// Coordinates of `e_i e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.dim + j) * self.dim;
        &self.mul[s..s + self.dim]
    }

    pub fn structure_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.structure(i, j).to_vec()).collect()).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    self.field.axpy(&mut out, self.field.mul(x, y), self.structure(i, j));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mul(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(a, &self.basis_element(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mul(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_element(j), a)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.unit.len() != self.dim || self.mul.len() != self.dim.pow(3) {
            out.push(Violation::new("shape", format!("dim {}", self.dim)));
            return out;
        }
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                out.push(Violation::new("unit law", format!("e_{i}")));
            }
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let l = self.mul(self.structure(i, j), &self.basis_element(k));
                    let r = self.mul(&e, self.structure(j, k));
                    if l != r {
                        out.push(Violation::new("associativity", format!("(e_{i}, e_{j}, e_{k})")));
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.structure(i, j) == self.structure(j, i)))
    }

    pub fn is_central(&self, a: &[u32]) -> bool {
        (0..self.dim).all(|i| {
            let e = self.basis_element(i);
            self.mul(a, &e) == self.mul(&e, a)
        })
    }

    pub fn is_idempotent(&self, a: &[u32]) -> bool {
        self.mul(a, a) == a
    }

    /// The center, as the kernel of the stacked commutators with basis elements.
    pub fn center(&self) -> Subspace {
        let blocks: Vec<Matrix> = (0..self.dim)
            .map(|i| {
                let e = self.basis_element(i);
                &self.right_mul(&e) - &self.left_mul(&e)
            })
            .collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        Matrix::vstack(self.field, self.dim, &refs).kernel()
    }

    /// All central idempotents, by enumerating the center.
    pub fn central_idempotents(&self) -> Result<Vec<Vec<u32>>> {
        let center = self.center();
        let size = (self.field.p() as u64).checked_pow(center.dim() as u32).unwrap_or(u64::MAX);
        if size > ENUMERATION_LIMIT {
            return Err(Error::SearchSpaceTooLarge(format!("center has {size} elements")));
        }
        Ok(self.field.all_vectors(center.dim()).map(|c| center.basis().mul_vec(&c)).filter(|e| self.is_idempotent(e)).collect())
    }

    /// Sub-algebra on the span of `basis`; errors unless closed and unital.
    pub fn subalgebra(self: &Arc<Self>, basis: &Subspace) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
        let vs = basis.vectors();
        let mut mul = Vec::new();
        for a in &vs {
            for b in &vs {
                let c = basis
                    .coords(&self.mul(a, b))
                    .ok_or_else(|| Error::Validation(vec![Violation::new("closure under multiplication", "subspace basis pair")]))?;
                mul.extend(c);
            }
        }
        let unit = basis.coords(&self.unit).ok_or_else(|| Error::Validation(vec![Violation::new("contains the unit", "subspace")]))?;
        let sub = Arc::new(Self::from_flat(self.field, vs.len(), mul, unit));
        let inc = AlgebraMorphism::new(sub.clone(), self.clone(), basis.basis().clone())?;
        Ok((sub, inc))
    }

    /// Quotient by a two-sided ideal; errors unless `ideal` is one.
    pub fn quotient(self: &Arc<Self>, ideal: &Subspace) -> Result<(Arc<Algebra>, AlgebraMorphism)> {
        for v in ideal.vectors() {
            for i in 0..self.dim {
                let e = self.basis_element(i);
                if !ideal.contains(&self.mul(&e, &v)) || !ideal.contains(&self.mul(&v, &e)) {
                    return Err(Error::Validation(vec![Violation::new("two-sided ideal", format!("e_{i}"))]));
                }
            }
        }
        let q = crate::exactla::quotient_space(ideal);
        let dim = q.dim();
        let quot = Self::from_product(self.field, dim, q.projection.mul_vec(&self.unit), |i, j| {
            let a = q.section.column(i);
            let b = q.section.column(j);
            q.projection.mul_vec(&self.mul(&a, &b))
        });
        let quot = Arc::new(quot);
        let map = AlgebraMorphism::new(self.clone(), quot.clone(), q.projection)?;
        Ok((quot, map))
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal_generated(&self, gens: &[Vec<u32>]) -> Subspace {
        let mut vs = Vec::new();
        for g in gens {
            for i in 0..self.dim {
                let l = self.mul(&self.basis_element(i), g);
                for j in 0..self.dim {
                    vs.push(self.mul(&l, &self.basis_element(j)));
                }
            }
        }
        Subspace::from_vectors(self.field, self.dim, &vs)
    }

    /// Sub-algebra generated by the given elements together with the unit.
    pub fn subalgebra_generated(&self, gens: &[Vec<u32>]) -> Subspace {
        let mut span = Subspace::from_vectors(self.field, self.dim, &[gens.to_vec(), vec![self.unit.clone()]].concat());
        loop {
            let vs = span.vectors();
            let products: Vec<Vec<u32>> = vs.iter().flat_map(|a| vs.iter().map(move |b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
            let next = span.sum(&Subspace::from_vectors(self.field, self.dim, &products));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }
}

/// A unital algebra map; `matrix` is `target.dim x source.dim`, column `j`
/// holding the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch(format!("morphism matrix is {:?}, expected {}x{}", matrix.shape(), target.dim(), source.dim())));
        }
        if source.field() != target.field() {
            return Err(Error::DimensionMismatch("algebras over different fields".into()));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let m = Matrix::identity(a.field(), a.dim());
        Self { source: a.clone(), target: a, matrix: m }
    }

    /// The structure map `F_p → A`.
    pub fn unit_map(a: Arc<Algebra>) -> Self {
        let k = Arc::new(Algebra::ground(a.field()));
        let m = Matrix::column_vector(a.field(), a.one());
        Self { source: k, target: a, matrix: m }
    }

    pub fn field(&self) -> PrimeField {
        self.source.field()
    }

    pub fn apply(&self, a: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(a)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if *self.target != *other.source {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        AlgebraMorphism::new(self.source.clone(), other.target.clone(), other.matrix.matmul(&self.matrix))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.source.validate();
        out.extend(self.target.validate());
        if !out.is_empty() {
            return out;
        }
        if self.apply(self.source.one()) != self.target.one() {
            out.push(Violation::new("unit preservation", "φ(1)"));
        }
        for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let lhs = self.apply(self.source.structure(i, j));
                let rhs = self.target.mul(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    out.push(Violation::new("multiplicativity", format!("(e_{i}, e_{j})")));
                }
            }
        }
        out
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn constructions_validate() {
        for p in [2, 3, 5] {
            let k = PrimeField::new(p).unwrap();
            assert!(Algebra::ground(k).validate().is_empty());
            assert!(Algebra::upper_triangular(k).validate().is_empty());
            assert!(Algebra::matrix_algebra(k, 2).validate().is_empty());
            assert!(Algebra::polynomial_quotient(k, &[1, 1]).validate().is_empty());
            assert!(Algebra::split(k, 3).validate().is_empty());
            let t = Algebra::upper_triangular(k);
            assert!(Algebra::product(&t, &Algebra::ground(k)).validate().is_empty());
            assert!(t.opposite().validate().is_empty());
        }
    }

    #[test]
    fn broken_unit_is_reported() {
        let a = Algebra::new(f2(), 2, &[vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]], &[1, 0]).unwrap();
        assert!(!a.validate().is_empty());
    }

    #[test]
    fn opposite_is_an_involution() {
        let t = Algebra::upper_triangular(f2());
        assert_eq!(t.opposite().opposite(), t);
        assert_ne!(t.opposite(), t);
        let c = Algebra::polynomial_quotient(f2(), &[1, 1]);
        assert_eq!(c.opposite(), c);
    }

    #[test]
    fn central_idempotents_of_small_algebras() {
        assert_eq!(Algebra::ground(f2()).central_idempotents().unwrap().len(), 2);
        let mut e = Algebra::split(f2(), 2).central_idempotents().unwrap();
        e.sort();
        assert_eq!(e, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let t = Algebra::upper_triangular(f2());
        let ti = t.central_idempotents().unwrap();
        assert!(ti.contains(&vec![0, 0, 0]) && ti.contains(&vec![1, 0, 1]));
        assert!(!t.is_central(&[1, 0, 0]) && !t.is_central(&[0, 0, 1]));
    }

    #[test]
    fn f4_is_a_field() {
        let f4 = Algebra::polynomial_quotient(f2(), &[1, 1]);
        for a in f2().all_vectors(2).filter(|v| v != &vec![0, 0]) {
            assert!(f2().all_vectors(2).any(|b| f4.mul(&a, &b) == vec![1, 0]));
        }
    }

    #[test]
    fn quotient_and_subalgebra_are_morphisms() {
        let t = Arc::new(Algebra::upper_triangular(f2()));
        let ideal = t.ideal_generated(&[vec![0, 1, 0]]);
        assert_eq!(ideal.dim(), 1);
        let (q, pi) = t.quotient(&ideal).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(pi.validate().is_empty());
        let diag = t.subalgebra_generated(&[vec![1, 0, 0]]);
        let (_, inc) = t.subalgebra(&diag).unwrap();
        assert!(inc.validate().is_empty());
    }

    #[test]
    fn non_multiplicative_map_is_rejected() {
        let k = Arc::new(Algebra::ground(f2()));
        let s = Arc::new(Algebra::split(f2(), 2));
        let bad = AlgebraMorphism::new(k, s, Matrix::from_rows(f2(), &[vec![1], vec![0]]).unwrap()).unwrap();
        assert!(bad.validate().iter().any(|v| v.law == "unit preservation"));
    }
}

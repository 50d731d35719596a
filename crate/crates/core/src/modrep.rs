//! Modules, bimodules, Hom spaces, balanced tensor products, invariants,
//! dual bases and endomorphism algebras.
//!
//! Every action and every map is stored as a matrix acting on column
//! vectors from the left. Notation written with maps on the right of their
//! arguments translates as follows, for `M` an `(S,R)`-bimodule with left
//! action `λ` and right action `ρ`:
//!
//! | right-operator notation | matrix form                                  |
//! |-------------------------|----------------------------------------------|
//! | `(m)f`                  | `F m`                                        |
//! | `(m)(f·g)`, "f then g"  | `G F m`                                      |
//! | `m·r`                   | `ρ(r) m`, with `ρ(r r') = ρ(r') ρ(r)`        |
//! | `(m)(r·f)` = `(m r)f`   | `F ρ(r) m`                                   |
//! | `(m)(f·r)` = `((m)f) r` | `ρ(r) F m`                                   |
//! | `(f·s)(m)` for `f ∈ *M` | `Rmul_S(s) F m`, right multiplication in `S` |
//!
//! A left module is a bimodule whose right algebra is the ground field, and
//! a right module one whose left algebra is the ground field.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result, Violation};
use crate::exactla::{quotient_space, Matrix, PrimeField, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

fn ground(field: PrimeField) -> Arc<Algebra> {
    Arc::new(Algebra::ground(field))
}

impl Bimodule {
    pub fn new(left: Arc<Algebra>, right: Arc<Algebra>, dim: usize, left_action: Vec<Matrix>, right_action: Vec<Matrix>) -> Result<Self> {
        let sq = |ms: &[Matrix], n: usize, who: &str| -> Result<()> {
            if ms.len() != n || ms.iter().any(|m| m.shape() != (dim, dim)) {
                return Err(Error::DimensionMismatch(format!("{who} action needs {n} matrices of size {dim}x{dim}")));
            }
            Ok(())
        };
        sq(&left_action, left.dim(), "left")?;
        sq(&right_action, right.dim(), "right")?;
        if left.field() != right.field() {
            return Err(Error::DimensionMismatch("algebras over different fields".into()));
        }
        Ok(Self { left, right, dim, left_action, right_action })
    }

    /// A left module over `algebra`.
    pub fn left_module(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<Self> {
        let k = ground(algebra.field());
        let dim = action.first().map_or(0, Matrix::rows);
        let id = Matrix::identity(algebra.field(), dim);
        Self::new(algebra, k, dim, action, vec![id])
    }

    /// A right module over `algebra`.
    pub fn right_module(algebra: Arc<Algebra>, action: Vec<Matrix>) -> Result<Self> {
        let k = ground(algebra.field());
        let dim = action.first().map_or(0, Matrix::rows);
        let id = Matrix::identity(algebra.field(), dim);
        Self::new(k, algebra, dim, vec![id], action)
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &Arc<Algebra>) -> Self {
        let left = (0..a.dim()).map(|i| a.left_mul(&a.basis_element(i))).collect();
        let right = (0..a.dim()).map(|i| a.right_mul(&a.basis_element(i))).collect();
        Self { left: a.clone(), right: a.clone(), dim: a.dim(), left_action: left, right_action: right }
    }

    pub fn left_regular(a: &Arc<Algebra>) -> Self {
        Self::regular(a).forget_right()
    }

    pub fn right_regular(a: &Arc<Algebra>) -> Self {
        Self::regular(a).forget_left()
    }

    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>) -> Self {
        let z = Matrix::zeros(left.field(), 0, 0);
        let (l, r) = (vec![z.clone(); left.dim()], vec![z; right.dim()]);
        Self { left, right, dim: 0, left_action: l, right_action: r }
    }

    pub fn field(&self) -> PrimeField {
        self.left.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    /// `λ(s)` for an arbitrary element `s` of the left algebra.
    pub fn act_left(&self, s: &[u32]) -> Matrix {
        combine(self.field(), self.dim, &self.left_action, s)
    }

    /// `ρ(r)` for an arbitrary element `r` of the right algebra.
    pub fn act_right(&self, r: &[u32]) -> Matrix {
        combine(self.field(), self.dim, &self.right_action, r)
    }

    pub fn forget_left(&self) -> Self {
        let k = ground(self.field());
        Self { left: k, left_action: vec![Matrix::identity(self.field(), self.dim)], ..self.clone() }
    }

    pub fn forget_right(&self) -> Self {
        let k = ground(self.field());
        Self { right: k, right_action: vec![Matrix::identity(self.field(), self.dim)], ..self.clone() }
    }

    /// Restricts one or both actions along algebra maps into the current algebras.
    pub fn restrict(&self, left: Option<&AlgebraMorphism>, right: Option<&AlgebraMorphism>) -> Result<Self> {
        let mut out = self.clone();
        if let Some(phi) = left {
            if *phi.target != *self.left {
                return Err(Error::DimensionMismatch("left restriction along a map with the wrong target".into()));
            }
            out.left = phi.source.clone();
            out.left_action = phi.matrix.columns().map(|c| self.act_left(&c)).collect();
        }
        if let Some(phi) = right {
            if *phi.target != *self.right {
                return Err(Error::DimensionMismatch("right restriction along a map with the wrong target".into()));
            }
            out.right = phi.source.clone();
            out.right_action = phi.matrix.columns().map(|c| self.act_right(&c)).collect();
        }
        Ok(out)
    }

    /// An `(S,R)`-bimodule viewed as an `(R^op, S^op)`-bimodule.
    pub fn swap_sides(&self) -> Self {
        Self {
            left: Arc::new(self.right.opposite()),
            right: Arc::new(self.left.opposite()),
            dim: self.dim,
            left_action: self.right_action.clone(),
            right_action: self.left_action.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Self> {
        if *self.left != *other.left || *self.right != *other.right {
            return Err(Error::DimensionMismatch("direct sum of modules over different algebras".into()));
        }
        let n = self.dim + other.dim;
        let blk = |a: &Matrix, b: &Matrix| {
            Matrix::from_fn(self.field(), n, n, |r, c| match (r < self.dim, c < self.dim) {
                (true, true) => a.get(r, c),
                (false, false) => b.get(r - self.dim, c - self.dim),
                _ => 0,
            })
        };
        Ok(Self {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: n,
            left_action: self.left_action.iter().zip(&other.left_action).map(|(a, b)| blk(a, b)).collect(),
            right_action: self.right_action.iter().zip(&other.right_action).map(|(a, b)| blk(a, b)).collect(),
        })
    }

    /// The sub-bimodule on an invariant subspace, in the coordinates of its basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<Self> {
        let restrict = |a: &Matrix| -> Result<Matrix> {
            sub.basis().solve_matrix(&a.matmul(sub.basis())).ok_or_else(|| Error::NotInvariant("subspace is not stable under the actions".into()))
        };
        Ok(Self {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: sub.dim(),
            left_action: self.left_action.iter().map(restrict).collect::<Result<_>>()?,
            right_action: self.right_action.iter().map(restrict).collect::<Result<_>>()?,
        })
    }

    /// The quotient by an invariant subspace together with the projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(Self, Matrix)> {
        self.submodule(sub)?;
        let q = quotient_space(sub);
        let act = |a: &Matrix| q.projection.matmul(a).matmul(&q.section);
        let m = Self {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: q.dim(),
            left_action: self.left_action.iter().map(act).collect(),
            right_action: self.right_action.iter().map(act).collect(),
        };
        Ok((m, q.projection))
    }

    /// The sub-bimodule generated by the given vectors.
    pub fn generated_by(&self, vs: &[Vec<u32>]) -> Subspace {
        let mut span = Subspace::from_vectors(self.field(), self.dim, vs);
        loop {
            let mut all = span.vectors();
            for v in span.vectors() {
                all.extend(self.left_action.iter().map(|a| a.mul_vec(&v)));
                all.extend(self.right_action.iter().map(|a| a.mul_vec(&v)));
            }
            let next = Subspace::from_vectors(self.field(), self.dim, &all);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let id = Matrix::identity(self.field(), self.dim);
        if self.act_left(self.left.one()) != id {
            out.push(Violation::new("left unit acts as identity", "λ(1)"));
        }
        if self.act_right(self.right.one()) != id {
            out.push(Violation::new("right unit acts as identity", "ρ(1)"));
        }
        for i in 0..self.left.dim() {
            for j in 0..self.left.dim() {
                if self.left_action[i].matmul(&self.left_action[j]) != self.act_left(self.left.structure(i, j)) {
                    out.push(Violation::new("left action is multiplicative", format!("(e_{i}, e_{j})")));
                }
            }
        }
        for i in 0..self.right.dim() {
            for j in 0..self.right.dim() {
                if self.right_action[j].matmul(&self.right_action[i]) != self.act_right(self.right.structure(i, j)) {
                    out.push(Violation::new("right action is multiplicative", format!("(e_{i}, e_{j})")));
                }
            }
        }
        for (i, l) in self.left_action.iter().enumerate() {
            for (j, r) in self.right_action.iter().enumerate() {
                if l.matmul(r) != r.matmul(l) {
                    out.push(Violation::new("left and right actions commute", format!("(s_{i}, r_{j})")));
                }
            }
        }
        out
    }
}

fn combine(field: PrimeField, dim: usize, ms: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zeros(field, dim, dim);
    for (m, &c) in ms.iter().zip(coeffs) {
        if c != 0 {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

/// Which actions a Hom space must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    None,
    Left,
    Right,
    Both,
}

/// A space of linear maps `source → target` given by a basis of matrices.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: PrimeField,
    source_dim: usize,
    target_dim: usize,
    basis: Vec<Matrix>,
    stacked: Matrix,
}

impl HomSpace {
    pub fn from_basis(field: PrimeField, source_dim: usize, target_dim: usize, basis: Vec<Matrix>) -> Self {
        let cols: Vec<Vec<u32>> = basis.iter().map(Matrix::to_vec).collect();
        let stacked = Matrix::from_columns(field, source_dim * target_dim, &cols);
        Self { field, source_dim, target_dim, basis, stacked }
    }

    /// All linear maps.
    pub fn all(field: PrimeField, source_dim: usize, target_dim: usize) -> Self {
        let basis =
            (0..target_dim * source_dim).map(|k| Matrix::from_fn(field, target_dim, source_dim, |r, c| u32::from(r * source_dim + c == k))).collect();
        Self::from_basis(field, source_dim, target_dim, basis)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn combine(&self, coeffs: &[u32]) -> Matrix {
        let v = self.stacked.mul_vec(coeffs);
        Matrix::from_vec(self.field, self.target_dim, self.source_dim, &v)
    }

    pub fn coords(&self, f: &Matrix) -> Option<Vec<u32>> {
        if f.shape() != (self.target_dim, self.source_dim) {
            return None;
        }
        self.stacked.solve(&f.to_vec())
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        self.coords(f).is_some()
    }

    /// The subspace of maps on which the linear `residual` vanishes.
    pub fn constrain(&self, residual: impl Fn(&Matrix) -> Vec<u32>) -> HomSpace {
        let cols: Vec<Vec<u32>> = self.basis.iter().map(&residual).collect();
        let rows = cols.first().map_or(0, Vec::len);
        let k = Matrix::from_columns(self.field, rows, &cols).kernel();
        let basis = k.vectors().iter().map(|c| self.combine(c)).collect();
        HomSpace::from_basis(self.field, self.source_dim, self.target_dim, basis)
    }

    /// Some map `f` in the space with `linear(f) = target`, free coordinates zero.
    pub fn solve(&self, linear: impl Fn(&Matrix) -> Vec<u32>, target: &[u32]) -> Option<Matrix> {
        let cols: Vec<Vec<u32>> = self.basis.iter().map(linear).collect();
        let a = Matrix::from_columns(self.field, target.len(), &cols);
        a.solve(target).map(|c| self.combine(&c))
    }
}

fn intertwining_block(field: PrimeField, a_src: &Matrix, b_tgt: &Matrix) -> Matrix {
    // F a = b F for F : n x m, as a linear map on vec(F).
    let (n, m) = (b_tgt.rows(), a_src.rows());
    &b_tgt.kronecker(&Matrix::identity(field, m)) - &Matrix::identity(field, n).kronecker(&a_src.transpose())
}

/// Linear maps `m → n` commuting with the declared actions.
pub fn hom_space(m: &Bimodule, n: &Bimodule, sides: Sides) -> Result<HomSpace> {
    let field = m.field();
    let mut blocks = Vec::new();
    if matches!(sides, Sides::Left | Sides::Both) {
        if *m.left != *n.left {
            return Err(Error::DimensionMismatch("left Hom between modules over different algebras".into()));
        }
        blocks.extend(m.left_action.iter().zip(&n.left_action).map(|(a, b)| intertwining_block(field, a, b)));
    }
    if matches!(sides, Sides::Right | Sides::Both) {
        if *m.right != *n.right {
            return Err(Error::DimensionMismatch("right Hom between modules over different algebras".into()));
        }
        blocks.extend(m.right_action.iter().zip(&n.right_action).map(|(a, b)| intertwining_block(field, a, b)));
    }
    let unknowns = m.dim * n.dim;
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let kernel = if refs.is_empty() { Subspace::full(field, unknowns) } else { Matrix::vstack(field, unknowns, &refs).kernel() };
    let basis = kernel.vectors().iter().map(|v| Matrix::from_vec(field, n.dim, m.dim, v)).collect();
    Ok(HomSpace::from_basis(field, m.dim, n.dim, basis))
}

/// `M ⊗_R N` for `M` with right `R`-action and `N` with left `R`-action,
/// as a quotient of `M ⊗_K N` carrying the outer actions.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub module: Bimodule,
    pub projection: Matrix,
    pub section: Matrix,
    relations: Subspace,
    left_factor: Bimodule,
    right_factor: Bimodule,
}

pub fn tensor_over(m: &Bimodule, n: &Bimodule) -> Result<TensorProduct> {
    if *m.right != *n.left {
        return Err(Error::DimensionMismatch("tensor factors are not balanced over the same algebra".into()));
    }
    let field = m.field();
    let amb = m.dim * n.dim;
    let (im, in_) = (Matrix::identity(field, m.dim), Matrix::identity(field, n.dim));
    let gens: Vec<Matrix> = m.right_action.iter().zip(&n.left_action).map(|(r, l)| &r.kronecker(&in_) - &im.kronecker(l)).collect();
    let refs: Vec<&Matrix> = gens.iter().collect();
    let relations = Matrix::hstack(field, amb, &refs).column_space();
    let q = quotient_space(&relations);
    let act = |a: &Matrix| q.projection.matmul(a).matmul(&q.section);
    let module = Bimodule {
        left: m.left.clone(),
        right: n.right.clone(),
        dim: q.dim(),
        left_action: m.left_action.iter().map(|l| act(&l.kronecker(&in_))).collect(),
        right_action: n.right_action.iter().map(|r| act(&im.kronecker(r))).collect(),
    };
    Ok(TensorProduct { module, projection: q.projection, section: q.section, relations, left_factor: m.clone(), right_factor: n.clone() })
}

impl TensorProduct {
    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    pub fn left_factor(&self) -> &Bimodule {
        &self.left_factor
    }

    pub fn right_factor(&self) -> &Bimodule {
        &self.right_factor
    }

    pub fn ambient_dim(&self) -> usize {
        self.left_factor.dim * self.right_factor.dim
    }

    /// Class of `x ⊗ y`.
    pub fn pure(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let amb: Vec<u32> = x.iter().flat_map(|&a| y.iter().map(move |&b| f.mul(a, b))).collect();
        self.projection.mul_vec(&amb)
    }

    /// Class of `e_i ⊗ e_k`.
    pub fn basis_pure(&self, i: usize, k: usize) -> Vec<u32> {
        self.projection.column(i * self.right_factor.dim + k)
    }

    /// A representative in `M ⊗_K N` of a class.
    pub fn lift(&self, v: &[u32]) -> Vec<u32> {
        self.section.mul_vec(v)
    }

    /// The map on the quotient induced by `f(i, k)`, the image of `e_i ⊗ e_k`.
    /// Fails when `f` is not balanced.
    pub fn descend(&self, rows: usize, f: impl Fn(usize, usize) -> Vec<u32>) -> Result<Matrix> {
        let cols: Vec<Vec<u32>> =
            (0..self.left_factor.dim).flat_map(|i| (0..self.right_factor.dim).map(move |k| (i, k))).map(|(i, k)| f(i, k)).collect();
        let amb = Matrix::from_columns(self.field(), rows, &cols);
        self.descend_ambient(&amb)
    }

    /// Descends a matrix defined on `M ⊗_K N`.
    pub fn descend_ambient(&self, amb: &Matrix) -> Result<Matrix> {
        if !amb.matmul(self.relations.basis()).is_zero() {
            return Err(Error::Validation(vec![Violation::new("map is balanced over the tensor algebra", "relation space")]));
        }
        Ok(amb.matmul(&self.section))
    }
}

/// `f ⊗ g : src → dst` on balanced tensor products.
pub fn tensor_map(src: &TensorProduct, dst: &TensorProduct, f: &Matrix, g: &Matrix) -> Matrix {
    dst.projection.matmul(&f.kronecker(g)).matmul(&src.section)
}

/// The tensor products needed to re-bracket `A ⊗ B ⊗ C`.
#[derive(Clone, Debug)]
pub struct TripleTensor {
    pub ab: TensorProduct,
    pub ab_c: TensorProduct,
    pub bc: TensorProduct,
    pub a_bc: TensorProduct,
}

impl TripleTensor {
    pub fn new(a: &Bimodule, b: &Bimodule, c: &Bimodule) -> Result<Self> {
        let ab = tensor_over(a, b)?;
        let ab_c = tensor_over(&ab.module, c)?;
        let bc = tensor_over(b, c)?;
        let a_bc = tensor_over(a, &bc.module)?;
        Ok(Self { ab, ab_c, bc, a_bc })
    }

    /// `(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`.
    pub fn assoc(&self) -> Matrix {
        let f = self.ab.field();
        let (da, dc) = (self.ab.left_factor.dim, self.bc.right_factor.dim);
        let step1 = self.ab.section.kronecker(&Matrix::identity(f, dc)).matmul(&self.ab_c.section);
        let step2 = Matrix::identity(f, da).kronecker(&self.bc.projection).matmul(&step1);
        self.a_bc.projection.matmul(&step2)
    }

    /// `A ⊗ (B ⊗ C) → (A ⊗ B) ⊗ C`.
    pub fn assoc_inv(&self) -> Matrix {
        let f = self.ab.field();
        let (da, dc) = (self.ab.left_factor.dim, self.bc.right_factor.dim);
        let step1 = Matrix::identity(f, da).kronecker(&self.bc.section).matmul(&self.a_bc.section);
        let step2 = self.ab.projection.kronecker(&Matrix::identity(f, dc)).matmul(&step1);
        self.ab_c.projection.matmul(&step2)
    }

    /// Class of `x ⊗ y ⊗ z` in `A ⊗ (B ⊗ C)`.
    pub fn pure3(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        self.a_bc.pure(x, &self.bc.pure(y, z))
    }
}

/// `R ⊗_R N → N`, `r ⊗ n ↦ r n`; the left factor must be `R` itself.
pub fn left_unitor(rn: &TensorProduct) -> Result<Matrix> {
    let n = &rn.right_factor;
    if rn.left_factor.dim != n.left.dim() {
        return Err(Error::DimensionMismatch("left unitor needs the algebra itself as left factor".into()));
    }
    rn.descend(n.dim, |i, k| n.left_action[i].column(k))
}

/// `M ⊗_R R → M`, `m ⊗ r ↦ m r`; the right factor must be `R` itself.
pub fn right_unitor(mr: &TensorProduct) -> Result<Matrix> {
    let m = &mr.left_factor;
    if mr.right_factor.dim != m.right.dim() {
        return Err(Error::DimensionMismatch("right unitor needs the algebra itself as right factor".into()));
    }
    mr.descend(m.dim, |i, k| m.right_action[k].column(i))
}

/// `M^S = {m : s m = m s}` for a bimodule with equal left and right algebras.
pub fn invariants(m: &Bimodule) -> Result<Subspace> {
    if *m.left != *m.right {
        return Err(Error::DimensionMismatch("invariants need the same algebra on both sides".into()));
    }
    let blocks: Vec<Matrix> = m.left_action.iter().zip(&m.right_action).map(|(l, r)| l - r).collect();
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::vstack(m.field(), m.dim, &refs).kernel())
}

/// A finite dual basis `{(e_i, *e_i)}` of a left module: `m = Σ (*e_i m) e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub elements: Vec<Vec<u32>>,
    /// Left-linear maps `M → S`, each `dim S x dim M`.
    pub functionals: Vec<Matrix>,
}

impl DualBasis {
    /// Checks the dual basis law on every basis vector of `m`.
    pub fn verify(&self, m: &Bimodule) -> bool {
        let f = m.field();
        (0..m.dim).all(|j| {
            let e = f.unit_vector(m.dim, j);
            let mut acc = vec![0; m.dim];
            for (g, fun) in self.elements.iter().zip(&self.functionals) {
                let s = fun.mul_vec(&e);
                acc = f.add_vec(&acc, &m.act_left(&s).mul_vec(g));
            }
            acc == e
        })
    }
}

/// Generating set chosen greedily among the standard basis vectors, each
/// step taking the vector that enlarges the generated submodule most.
pub fn left_generators(m: &Bimodule) -> Vec<Vec<u32>> {
    let f = m.field();
    let cyclic = |v: &[u32]| -> Vec<Vec<u32>> { m.left_action.iter().map(|a| a.mul_vec(v)).collect() };
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut images: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(f, m.dim);
    while span.dim() < m.dim {
        let best = (0..m.dim)
            .map(|j| f.unit_vector(m.dim, j))
            .filter(|e| !span.contains(e))
            .map(|e| {
                let grown = Subspace::from_vectors(f, m.dim, &[images.clone(), cyclic(&e)].concat());
                (grown.dim(), e)
            })
            .fold(None::<(usize, Vec<u32>)>, |acc, cand| match acc {
                Some(a) if a.0 >= cand.0 => Some(a),
                _ => Some(cand),
            })
            .expect("a basis vector outside a proper subspace exists");
        images.extend(cyclic(&best.1));
        gens.push(best.1);
        span = Subspace::from_vectors(f, m.dim, &images);
    }
    gens
}

/// A dual basis of `m` over its left algebra, if `m` is projective.
/// Splits the cover `S^k → M` from a minimal generating set.
pub fn fgp_dual_basis(m: &Bimodule) -> Result<Option<DualBasis>> {
    let s = &m.left;
    let field = m.field();
    let gens = left_generators(m);
    let k = gens.len();
    let ds = s.dim();
    let cover_cols: Vec<Vec<u32>> = gens.iter().flat_map(|g| m.left_action.iter().map(move |a| a.mul_vec(g))).collect();
    let cover = Matrix::from_columns(field, m.dim, &cover_cols);
    let mut free = Bimodule::zero(s.clone(), ground(field));
    for _ in 0..k {
        free = free.direct_sum(&Bimodule::left_regular(s))?;
    }
    let hom = hom_space(&m.forget_right(), &free, Sides::Left)?;
    let target = Matrix::identity(field, m.dim).to_vec();
    let Some(section) = hom.solve(|f| cover.matmul(f).to_vec(), &target) else {
        return Ok(None);
    };
    let functionals = (0..k).map(|i| section.select_rows(&(i * ds..(i + 1) * ds).collect::<Vec<_>>())).collect();
    Ok(Some(DualBasis { elements: gens, functionals }))
}

/// Span of the images of all left-linear maps `M → S`.
pub fn trace_ideal(m: &Bimodule) -> Result<Subspace> {
    let s = &m.left;
    let hom = hom_space(&m.forget_right(), &Bimodule::left_regular(s), Sides::Left)?;
    let cols: Vec<Vec<u32>> = hom.basis().iter().flat_map(|f| f.columns().collect::<Vec<_>>()).collect();
    Ok(Subspace::from_vectors(m.field(), s.dim(), &cols))
}

pub fn is_generator(m: &Bimodule) -> Result<bool> {
    Ok(trace_ideal(m)?.dim() == m.left.dim())
}

/// `Hom_S(M, Q)` as a left module over the right algebra of `M`, acting by
/// `r·f = f ∘ ρ_M(r)`; elements are coordinates in the returned Hom basis.
pub fn hom_module(m: &Bimodule, q: &Bimodule) -> Result<(HomSpace, Bimodule)> {
    let hom = hom_space(&m.forget_right(), &q.forget_right(), Sides::Left)?;
    let action = m
        .right_action
        .iter()
        .map(|r| {
            let cols: Vec<Vec<u32>> = hom.basis().iter().map(|f| hom.coords(&f.matmul(r)).expect("r·f stays left-linear")).collect();
            Matrix::from_columns(m.field(), hom.dim(), &cols)
        })
        .collect();
    let module = if hom.dim() == 0 { Bimodule::zero(m.right.clone(), ground(m.field())) } else { Bimodule::left_module(m.right.clone(), action)? };
    Ok((hom, module))
}

/// `*M = Hom_S(M, S)` as an `(R, S)`-bimodule: `r·f = f ∘ ρ_M(r)`, `f·s = Rmul(s) ∘ f`.
pub fn dual_module(m: &Bimodule) -> Result<(HomSpace, Bimodule)> {
    let s = &m.left;
    let hom = hom_space(&m.forget_right(), &Bimodule::left_regular(s), Sides::Left)?;
    let coords_of = |g: Matrix| hom.coords(&g).expect("dual module actions stay left-linear");
    let field = m.field();
    let on_basis = |op: &dyn Fn(&Matrix) -> Matrix| {
        let cols: Vec<Vec<u32>> = hom.basis().iter().map(|f| coords_of(op(f))).collect();
        Matrix::from_columns(field, hom.dim(), &cols)
    };
    let left: Vec<Matrix> = m.right_action.iter().map(|r| on_basis(&|f: &Matrix| f.matmul(r))).collect();
    let right: Vec<Matrix> = (0..s.dim()).map(|i| on_basis(&|f: &Matrix| s.right_mul(&s.basis_element(i)).matmul(f))).collect();
    let module = Bimodule::new(m.right.clone(), s.clone(), hom.dim(), left, right)?;
    Ok((hom, module))
}

/// `End_S(M)` with the product "first `f`, then `g`" and the map
/// `χ : R → End_S(M)` sending `r` to right multiplication by `r`.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: Arc<Algebra>,
    pub hom: HomSpace,
    pub chi: AlgebraMorphism,
}

impl EndomorphismAlgebra {
    /// The endomorphism with the given coordinates.
    pub fn element(&self, coords: &[u32]) -> Matrix {
        self.hom.combine(coords)
    }

    /// `End_S(M)` as an `R`-bimodule through `χ`.
    pub fn as_bimodule(&self) -> Result<Bimodule> {
        Bimodule::regular(&self.algebra).restrict(Some(&self.chi), Some(&self.chi))
    }
}

pub fn endomorphism_algebra(m: &Bimodule) -> Result<EndomorphismAlgebra> {
    let field = m.field();
    let hom = hom_space(&m.forget_right(), &m.forget_right(), Sides::Left)?;
    let coords = |f: &Matrix| hom.coords(f).ok_or_else(|| Error::Validation(vec![Violation::new("endomorphism is left-linear", "basis product")]));
    let mut mul = Vec::new();
    for f in hom.basis() {
        for g in hom.basis() {
            mul.push(coords(&g.matmul(f))?);
        }
    }
    let d = hom.dim();
    let unit = coords(&Matrix::identity(field, m.dim))?;
    let algebra = Arc::new(Algebra::from_product(field, d, unit, |i, j| mul[i * d + j].clone()));
    let chi_cols: Vec<Vec<u32>> = m.right_action.iter().map(coords).collect::<Result<_>>()?;
    let chi = AlgebraMorphism::new(m.right.clone(), algebra.clone(), Matrix::from_columns(field, d, &chi_cols))?;
    Ok(EndomorphismAlgebra { algebra, hom, chi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn f4() -> Arc<Algebra> {
        Arc::new(Algebra::polynomial_quotient(f2(), &[1, 1]))
    }

    #[test]
    fn regular_bimodules_validate() {
        for a in [Algebra::upper_triangular(f2()), Algebra::matrix_algebra(f2(), 2), Algebra::split(f2(), 3)] {
            let a = Arc::new(a);
            assert!(Bimodule::regular(&a).validate().is_empty());
            assert!(Bimodule::regular(&a).swap_sides().validate().is_empty());
        }
    }

    #[test]
    fn unit_tensor_is_the_module() {
        let t = Arc::new(Algebra::upper_triangular(f2()));
        let n = Bimodule::left_regular(&t);
        let rn = tensor_over(&Bimodule::regular(&t), &n).unwrap();
        assert_eq!(rn.dim(), n.dim());
        assert!(left_unitor(&rn).unwrap().is_bijective());
    }

    #[test]
    fn tensor_dimensions_of_fixtures() {
        let s = f4();
        let k = Arc::new(Algebra::ground(f2()));
        let phi = AlgebraMorphism::unit_map(s.clone());
        let sr = Bimodule::regular(&s).restrict(None, Some(&phi)).unwrap();
        let rs = Bimodule::regular(&s).restrict(Some(&phi), None).unwrap();
        assert_eq!(tensor_over(&sr, &rs).unwrap().dim(), 4);
        let r = Arc::new(Algebra::split(f2(), 2));
        let kk = Arc::new(Algebra::ground(f2()));
        let proj = AlgebraMorphism::new(r, kk.clone(), Matrix::from_rows(f2(), &[vec![1, 0]]).unwrap()).unwrap();
        let sr = Bimodule::regular(&kk).restrict(None, Some(&proj)).unwrap();
        let rs = Bimodule::regular(&kk).restrict(Some(&proj), None).unwrap();
        assert_eq!(tensor_over(&sr, &rs).unwrap().dim(), 1);
        assert_eq!(*k, *kk);
    }

    #[test]
    fn bimodule_maps_f4_to_f2_count_matches_enumeration() {
        let s = f4();
        let r = Arc::new(Algebra::ground(f2()));
        let phi = AlgebraMorphism::unit_map(s.clone());
        let src = Bimodule::regular(&s).restrict(Some(&phi), Some(&phi)).unwrap();
        let tgt = Bimodule::regular(&r);
        let hom = hom_space(&src, &tgt, Sides::Both).unwrap();
        let brute = f2().all_vectors(2).filter(|v| {
            let m = Matrix::from_vec(f2(), 1, 2, v);
            let l = src.left_action().iter().zip(tgt.left_action()).all(|(a, b)| m.matmul(a) == b.matmul(&m));
            let r = src.right_action().iter().zip(tgt.right_action()).all(|(a, b)| m.matmul(a) == b.matmul(&m));
            l && r
        });
        assert_eq!(1usize << hom.dim(), brute.count());
    }

    #[test]
    fn hom_between_different_algebras_is_rejected() {
        let a = Arc::new(Algebra::split(f2(), 2));
        let b = f4();
        assert!(hom_space(&Bimodule::left_regular(&a), &Bimodule::left_regular(&b), Sides::Left).is_err());
    }

    #[test]
    fn dual_basis_of_free_and_non_projective_modules() {
        let t = Arc::new(Algebra::upper_triangular(f2()));
        let reg = Bimodule::left_regular(&t);
        let db = fgp_dual_basis(&reg).unwrap().unwrap();
        assert!(db.verify(&reg));
        // The simple module on which e22 acts as 1 and e11, e12 as 0 is not projective.
        let k = f2();
        let simple = Bimodule::left_module(t.clone(), vec![Matrix::zeros(k, 1, 1), Matrix::zeros(k, 1, 1), Matrix::identity(k, 1)]).unwrap();
        assert!(simple.validate().is_empty());
        assert!(fgp_dual_basis(&simple).unwrap().is_none());
        let s = f4();
        let free1 = Bimodule::left_regular(&s);
        let db1 = fgp_dual_basis(&free1).unwrap().unwrap();
        assert_eq!(db1.elements, vec![vec![1, 0]]);
        let free2 = free1.direct_sum(&free1).unwrap();
        let db2 = fgp_dual_basis(&free2).unwrap().unwrap();
        assert_eq!(db2.elements.len(), 2);
        assert!(db2.verify(&free2));
    }

    #[test]
    fn generator_via_trace_ideal() {
        let s = Arc::new(Algebra::split(f2(), 2));
        assert!(is_generator(&Bimodule::left_regular(&s)).unwrap());
        let one_factor = Bimodule::left_module(s.clone(), vec![Matrix::identity(f2(), 1), Matrix::zeros(f2(), 1, 1)]).unwrap();
        assert!(!is_generator(&one_factor).unwrap());
        assert!(!is_generator(&Bimodule::zero(s.clone(), Arc::new(Algebra::ground(f2())))).unwrap());
    }

    #[test]
    fn endomorphisms_of_f2_squared_form_m2() {
        let k = Arc::new(Algebra::ground(f2()));
        let m = Bimodule::regular(&k).direct_sum(&Bimodule::regular(&k)).unwrap();
        let end = endomorphism_algebra(&m).unwrap();
        assert_eq!(end.algebra.dim(), 4);
        assert!(end.algebra.validate().is_empty());
        assert!(!end.algebra.is_commutative());
        assert_eq!(end.chi.apply(&[1]), end.algebra.one());
        assert!(end.chi.validate().is_empty());
    }

    #[test]
    fn dual_module_is_a_bimodule() {
        let t = Arc::new(Algebra::upper_triangular(f2()));
        let (_, d) = dual_module(&Bimodule::regular(&t)).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(d.validate().is_empty());
    }

    #[test]
    fn associator_is_invertible() {
        let t = Arc::new(Algebra::upper_triangular(f2()));
        let r = Bimodule::regular(&t);
        let tri = TripleTensor::new(&r, &r, &r).unwrap();
        assert!(tri.assoc().matmul(&tri.assoc_inv()).is_identity());
    }
}

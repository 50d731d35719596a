//! Corings over a finite-dimensional algebra `R` and their right comodules.
//!
//! An `R`-coring is an `R`-bimodule `C` with a coassociative
//! comultiplication `Δ : C → C ⊗_R C` and a counit `ε : C → R`, both
//! bimodule maps. The forgetful functor `F` from right comodules to right
//! `R`-modules has right adjoint `G = − ⊗_R C`, with unit `ρ_M` and counit
//! `n ⊗ c ↦ n ε(c)`.
//!
//! `G` is naturally full exactly when some `z ∈ C^R` satisfies
//! `c = ε(c) z` for every `c`, equivalently when `ε` has a bimodule section.
//! `F` is naturally full exactly when `c ε(d) = ε(c) d` for all `c, d`,
//! equivalently when `Δ` is surjective.
//!
//! `Δ` is stored as a lift into `C ⊗_K C`; every law is checked after
//! projecting to `C ⊗_R C`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraMorphism, ENUMERATION_LIMIT};
use crate::bimodfunc::Induction;
use crate::error::{check, Error, Result, Violation};
use crate::exactla::{is_zero_vec, Matrix, Subspace};
use crate::modrep::{
    fgp_dual_basis, hom_space, invariants, left_unitor, right_unitor, tensor_map, tensor_over, Bimodule, HomSpace, Sides, TensorProduct, TripleTensor,
};
use crate::oracle::adjunction::{self as adj, Adjunction, Family};
use crate::oracle::family::right_module_family;
use crate::report::{Condition, FamilyEvidence, Options, SplittingSummary};
use crate::scalars::{multiplication_map, sweedler_tensor};

/// Enumeration cap for grouplikes found while assembling test families.
const FAMILY_GROUPLIKE_LIMIT: u64 = 4096;

#[derive(Clone, Debug)]
pub struct Coring {
    base: Arc<Algebra>,
    carrier: Bimodule,
    delta: Matrix,
    epsilon: Matrix,
    cc: TensorProduct,
}

impl Coring {
    /// `delta` is `dim C² x dim C` with row index `i·dim C + j`; `epsilon`
    /// is `dim R x dim C`. Shapes are checked here, the laws by [`Coring::validate`].
    pub fn new(base: Arc<Algebra>, carrier: Bimodule, delta: Matrix, epsilon: Matrix) -> Result<Self> {
        let n = carrier.dim();
        if *carrier.left_algebra() != base || *carrier.right_algebra() != base {
            return Err(Error::DimensionMismatch("coring carrier must be a bimodule over the base on both sides".into()));
        }
        if delta.shape() != (n * n, n) || epsilon.shape() != (base.dim(), n) {
            return Err(Error::DimensionMismatch(format!("Δ must be {}x{n} and ε {}x{n}", n * n, base.dim())));
        }
        let cc = tensor_over(&carrier, &carrier)?;
        Ok(Self { base, carrier, delta, epsilon, cc })
    }

    /// Builds and validates.
    pub fn checked(base: Arc<Algebra>, carrier: Bimodule, delta: Matrix, epsilon: Matrix) -> Result<Self> {
        let c = Self::new(base, carrier, delta, epsilon)?;
        check(c.validate())?;
        Ok(c)
    }

    pub fn base(&self) -> &Arc<Algebra> {
        &self.base
    }

    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// The stored lift of `Δ` into `C ⊗_K C`.
    pub fn delta_lift(&self) -> &Matrix {
        &self.delta
    }

    /// `Δ : C → C ⊗_R C` in quotient coordinates.
    pub fn delta(&self) -> Matrix {
        self.cc.projection.matmul(&self.delta)
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }

    /// `C ⊗_R C`.
    pub fn cc(&self) -> &TensorProduct {
        &self.cc
    }

    fn regular_base(&self) -> Bimodule {
        Bimodule::regular(&self.base)
    }

    /// Every coring law, each failure located at a basis element.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.carrier.validate();
        if !out.is_empty() {
            return out;
        }
        let field = self.carrier.field();
        let delta = self.delta();
        let hom_eps = hom_space(&self.carrier, &self.regular_base(), Sides::Both);
        if !hom_eps.is_ok_and(|h| h.contains(&self.epsilon)) {
            out.push(Violation::new("ε is an R-bimodule map", "ε"));
        }
        let hom_delta = hom_space(&self.carrier, &self.cc.module, Sides::Both);
        if !hom_delta.is_ok_and(|h| h.contains(&delta)) {
            out.push(Violation::new("Δ is an R-bimodule map into C⊗_R C", "Δ"));
        }
        let Ok(t) = TripleTensor::new(&self.carrier, &self.carrier, &self.carrier) else {
            out.push(Violation::new("C⊗_R C⊗_R C is computable", "carrier"));
            return out;
        };
        let id = Matrix::identity(field, self.dim());
        let left = t.assoc().matmul(&tensor_map(&t.ab, &t.ab_c, &delta, &id)).matmul(&delta);
        let right = tensor_map(&t.ab, &t.a_bc, &id, &delta).matmul(&delta);
        for c in first_differing_columns(&left, &right) {
            out.push(Violation::new("coassociativity (Δ⊗C)Δ = (C⊗Δ)Δ", format!("basis element c_{c}")));
        }
        let unit_checks = self.counit_composites();
        match unit_checks {
            Ok((l, r)) => {
                for c in first_differing_columns(&l, &id) {
                    out.push(Violation::new("left counit law (ε⊗C)Δ = C", format!("basis element c_{c}")));
                }
                for c in first_differing_columns(&r, &id) {
                    out.push(Violation::new("right counit law (C⊗ε)Δ = C", format!("basis element c_{c}")));
                }
            }
            Err(_) => out.push(Violation::new("counit composites are computable", "ε")),
        }
        out
    }

    /// `(ε⊗C)Δ` and `(C⊗ε)Δ`, both as maps `C → C`.
    fn counit_composites(&self) -> Result<(Matrix, Matrix)> {
        let field = self.carrier.field();
        let id = Matrix::identity(field, self.dim());
        let delta = self.delta();
        let rc = tensor_over(&self.regular_base(), &self.carrier)?;
        let cr = tensor_over(&self.carrier, &self.regular_base())?;
        let l = left_unitor(&rc)?.matmul(&tensor_map(&self.cc, &rc, &self.epsilon, &id)).matmul(&delta);
        let r = right_unitor(&cr)?.matmul(&tensor_map(&self.cc, &cr, &id, &self.epsilon)).matmul(&delta);
        Ok((l, r))
    }

    /// `C` as a right comodule over itself.
    pub fn regular_comodule(&self) -> Result<Comodule> {
        Comodule::new(self, self.carrier.forget_left(), self.delta())
    }

    /// The opposite coring over `R^op`: same carrier with sides swapped,
    /// `Δ^op(c) = c₂ ⊗ c₁` and the same counit. Left comodules over `C` are
    /// right comodules over it.
    pub fn opposite(&self) -> Result<Coring> {
        let n = self.dim();
        let field = self.carrier.field();
        let twist = Matrix::from_fn(field, n * n, n * n, |r, c| u32::from(r == (c % n) * n + c / n));
        Coring::new(Arc::new(self.base.opposite()), self.carrier.swap_sides(), twist.matmul(&self.delta), self.epsilon.clone())
    }
}

/// Indices of columns where two equally shaped matrices differ.
fn first_differing_columns(a: &Matrix, b: &Matrix) -> Vec<usize> {
    if a.shape() != b.shape() {
        return vec![0];
    }
    (0..a.cols()).filter(|&c| a.column(c) != b.column(c)).collect()
}

/// A right comodule: a right `R`-module `M` with `ρ : M → M ⊗_R C`.
#[derive(Clone, Debug)]
pub struct Comodule {
    module: Bimodule,
    rho: Matrix,
    mc: TensorProduct,
}

impl Comodule {
    /// `module` is a right `R`-module; `rho` is given in coordinates of `M ⊗_R C`.
    pub fn new(coring: &Coring, module: Bimodule, rho: Matrix) -> Result<Self> {
        let mc = tensor_over(&module, coring.carrier())?;
        if rho.shape() != (mc.dim(), module.dim()) {
            return Err(Error::DimensionMismatch(format!("ρ must be {}x{}", mc.dim(), module.dim())));
        }
        Ok(Self { module, rho, mc })
    }

    /// Builds from a coaction lifted into `M ⊗_K C`.
    pub fn from_lift(coring: &Coring, module: Bimodule, rho_lift: &Matrix) -> Result<Self> {
        let mc = tensor_over(&module, coring.carrier())?;
        let rho = mc.projection.matmul(rho_lift);
        Self::new(coring, module, rho)
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn mc(&self) -> &TensorProduct {
        &self.mc
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Right linearity, coassociativity and the counit law of `ρ`.
    pub fn validate(&self, coring: &Coring) -> Vec<Violation> {
        let mut out = self.module.validate();
        if !out.is_empty() {
            return out;
        }
        let field = self.module.field();
        if !hom_space(&self.module, &self.mc.module, Sides::Right).is_ok_and(|h| h.contains(&self.rho)) {
            out.push(Violation::new("ρ is right R-linear", "ρ"));
        }
        let Ok(t) = TripleTensor::new(&self.module, coring.carrier(), coring.carrier()) else {
            out.push(Violation::new("M⊗_R C⊗_R C is computable", "module"));
            return out;
        };
        let id_m = Matrix::identity(field, self.dim());
        let id_c = Matrix::identity(field, coring.dim());
        let left = t.assoc().matmul(&tensor_map(&t.ab, &t.ab_c, &self.rho, &id_c)).matmul(&self.rho);
        let right = tensor_map(&t.ab, &t.a_bc, &id_m, &coring.delta()).matmul(&self.rho);
        for c in first_differing_columns(&left, &right) {
            out.push(Violation::new("coassociativity (ρ⊗C)ρ = (M⊗Δ)ρ", format!("basis element m_{c}")));
        }
        match counit_of(coring, &self.module).map(|e| e.matmul(&self.rho)) {
            Ok(m) => {
                for c in first_differing_columns(&m, &id_m) {
                    out.push(Violation::new("counit law (M⊗ε)ρ = M", format!("basis element m_{c}")));
                }
            }
            Err(_) => out.push(Violation::new("counit composite is computable", "ρ")),
        }
        out
    }

    /// `M^{co C} = {m : ρ(m) = m ⊗ g}`.
    pub fn coinvariants(&self, g: &[u32]) -> Subspace {
        let field = self.module.field();
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|k| self.mc.pure(&field.unit_vector(self.dim(), k), g)).collect();
        let diag = Matrix::from_columns(field, self.mc.dim(), &cols);
        (&self.rho - &diag).kernel()
    }
}

/// `N ⊗_R C → N`, `n ⊗ c ↦ n ε(c)`.
fn counit_of(coring: &Coring, n: &Bimodule) -> Result<Matrix> {
    let field = n.field();
    let nc = tensor_over(n, coring.carrier())?;
    let nr = tensor_over(n, &coring.regular_base())?;
    let id = Matrix::identity(field, n.dim());
    Ok(right_unitor(&nr)?.matmul(&tensor_map(&nc, &nr, &id, &coring.epsilon)))
}

/// `N ⊗_R C` with coaction `n ⊗ c ↦ n ⊗ c₁ ⊗ c₂`.
pub fn cofree(coring: &Coring, n: &Bimodule) -> Result<Comodule> {
    let t = TripleTensor::new(n, coring.carrier(), coring.carrier())?;
    let id = Matrix::identity(n.field(), n.dim());
    let rho = t.assoc_inv().matmul(&tensor_map(&t.ab, &t.a_bc, &id, &coring.delta()));
    Comodule::new(coring, t.ab.module.clone(), rho)
}

/// Colinear right-linear maps between comodules.
pub fn colinear_maps(a: &Comodule, b: &Comodule) -> Result<HomSpace> {
    let id_c = Matrix::identity(a.module.field(), a.mc.right_factor().dim());
    let hom = hom_space(&a.module, &b.module, Sides::Right)?;
    Ok(hom.constrain(|f| (&b.rho.matmul(f) - &tensor_map(&a.mc, &b.mc, f, &id_c).matmul(&a.rho)).to_vec()))
}

/// The forgetful functor from right comodules and its right adjoint `− ⊗_R C`.
#[derive(Clone, Debug)]
pub struct CoringForgetful {
    coring: Coring,
}

impl CoringForgetful {
    pub fn new(coring: &Coring) -> Self {
        Self { coring: coring.clone() }
    }

    /// `ν_M = counit at the underlying module`, the splitting built from
    /// `ϑ(c ⊗ d) = ε(c) ε(d)`.
    pub fn nu_from_counit(&self, m: &Comodule) -> Result<Matrix> {
        counit_of(&self.coring, &m.module)
    }

    /// `ξ_N(n) = n ⊗ z`.
    pub fn xi_from_element(&self, z: &[u32], n: &Bimodule) -> Result<Matrix> {
        let nc = tensor_over(n, self.coring.carrier())?;
        let field = n.field();
        let cols: Vec<Vec<u32>> = (0..n.dim()).map(|k| nc.pure(&field.unit_vector(n.dim(), k), z)).collect();
        Ok(Matrix::from_columns(field, nc.dim(), &cols))
    }
}

impl Adjunction for CoringForgetful {
    type Src = Comodule;
    type Tgt = Bimodule;

    fn left(&self, m: &Comodule) -> Result<Bimodule> {
        Ok(m.module.clone())
    }

    fn left_map(&self, _: &Comodule, _: &Comodule, f: &Matrix) -> Result<Matrix> {
        Ok(f.clone())
    }

    fn right(&self, n: &Bimodule) -> Result<Comodule> {
        cofree(&self.coring, n)
    }

    fn right_map(&self, n: &Bimodule, n2: &Bimodule, g: &Matrix) -> Result<Matrix> {
        let id = Matrix::identity(g.field(), self.coring.dim());
        Ok(tensor_map(&tensor_over(n, self.coring.carrier())?, &tensor_over(n2, self.coring.carrier())?, g, &id))
    }

    fn unit(&self, m: &Comodule) -> Result<Matrix> {
        Ok(m.rho.clone())
    }

    fn counit(&self, n: &Bimodule) -> Result<Matrix> {
        counit_of(&self.coring, n)
    }

    fn hom_src(&self, a: &Comodule, b: &Comodule) -> Result<HomSpace> {
        colinear_maps(a, b)
    }

    fn hom_tgt(&self, a: &Bimodule, b: &Bimodule) -> Result<HomSpace> {
        hom_space(a, b, Sides::Right)
    }
}

/// Right `R`-modules for the cotensor side.
pub fn module_family(coring: &Coring, seed: u64) -> Result<Family<Bimodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0e1);
    right_module_family(coring.base(), vec![], &mut rng)
}

/// Comodules for the forgetful side: cofree comodules on the module family,
/// `C` itself, and `R` through a grouplike when one is cheap to find.
pub fn comodule_family(coring: &Coring, seed: u64) -> Result<Family<Comodule>> {
    let mut objects = Vec::new();
    for (label, n) in module_family(coring, seed)?.objects {
        objects.push((format!("cofree({label})"), cofree(coring, &n)?));
    }
    if coring.dim() > 0 {
        objects.push(("coring".to_string(), coring.regular_comodule()?));
    }
    if let Ok(gs) = grouplikes_bounded(coring, FAMILY_GROUPLIKE_LIMIT) {
        if let Some(g) = gs.first() {
            objects.push(("base_via_grouplike".to_string(), base_comodule(coring, g)?));
        }
    }
    Ok(Family::new(objects))
}

#[derive(Clone, Debug, Serialize)]
pub struct CotensorReport {
    pub naturally_full: bool,
    /// `z ∈ C^R` with `c = ε(c) z`.
    pub witness_z: Option<Vec<u32>>,
    /// Bimodule section `ξ : R → C` of `ε`, with `ξ ∘ ε = id_C`.
    pub witness_xi: Option<Matrix>,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForgetfulReport {
    pub naturally_full: bool,
    pub delta_surjective: bool,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentCriteria(msg.into())
}

fn witness_violation(msg: impl Into<String>) -> Error {
    Error::WitnessViolation(msg.into())
}

/// Solves `ε(c_i) z = c_i` for every basis `c_i` with `z ∈ C^R`.
pub fn cotensor_witness(coring: &Coring) -> Result<Option<Vec<u32>>> {
    let c = coring.carrier();
    let field = c.field();
    let inv = invariants(c)?;
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..c.dim() {
        blocks.push(c.act_left(&coring.epsilon.column(i)).matmul(inv.basis()));
        rhs.extend(field.unit_vector(c.dim(), i));
    }
    if blocks.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    Ok(Matrix::vstack(field, inv.dim(), &refs).solve(&rhs).map(|y| inv.basis().mul_vec(&y)))
}

/// A bimodule map `ξ : R → C` with `ξ ∘ ε = id_C`.
pub fn counit_section(coring: &Coring) -> Result<Option<Matrix>> {
    let hom = hom_space(&coring.regular_base(), coring.carrier(), Sides::Both)?;
    let id = Matrix::identity(coring.carrier().field(), coring.dim());
    Ok(hom.solve(|xi| xi.matmul(&coring.epsilon).to_vec(), &id.to_vec()))
}

pub fn analyze_cotensor_functor(coring: &Coring, opts: &Options) -> Result<CotensorReport> {
    check(coring.validate())?;
    let z = cotensor_witness(coring)?;
    let xi = counit_section(coring)?;
    if z.is_some() != xi.is_some() {
        return Err(inconsistent("cotensor: invariant z with c = ε(c)z and a bimodule section of ε disagree"));
    }
    if let (Some(z), Some(xi)) = (&z, &xi) {
        let cols: Vec<Vec<u32>> = (0..coring.base.dim()).map(|i| coring.carrier.act_left(&coring.base.basis_element(i)).mul_vec(z)).collect();
        let from_z = Matrix::from_columns(coring.carrier.field(), coring.dim(), &cols);
        if !from_z.matmul(&coring.epsilon).is_identity() || !xi.matmul(&coring.epsilon).is_identity() {
            return Err(witness_violation("cotensor: r ↦ r z does not split ε"));
        }
    }
    let conditions = vec![
        Condition::exact("invariant_counit_expansion", z.is_some(), "z ∈ C^R with c = ε(c)z for every basis c"),
        Condition::exact("counit_bimodule_section", xi.is_some(), "ξ : R → C bimodule map with ξ∘ε = id_C"),
    ];
    let mut evidence = None;
    if opts.family_checks {
        let a = CoringForgetful::new(coring);
        let fam = module_family(coring, opts.seed)?;
        let per_object = adj::right_full_on_family(&a, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 3);
        let (splitting, family_system) = match &z {
            Some(z) => {
                if per_object.iter().any(|(_, ok)| !ok) {
                    return Err(inconsistent("cotensor: witness found but a counit component does not split"));
                }
                let w = adj::verify_right_splitting(
                    &a,
                    &fam,
                    |n| a.xi_from_element(z, n),
                    "invariant_counit_expansion",
                    opts.naturality_samples,
                    &mut rng,
                )?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::right_family_system(&a, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(CotensorReport { naturally_full: z.is_some(), witness_z: z, witness_xi: xi, conditions, evidence })
}

/// Whether `c ε(d) = ε(c) d` on every basis pair.
pub fn counit_identity_holds(coring: &Coring) -> bool {
    let c = coring.carrier();
    let field = c.field();
    (0..c.dim()).all(|i| {
        let ci = field.unit_vector(c.dim(), i);
        let ei = coring.epsilon.column(i);
        (0..c.dim()).all(|j| {
            let dj = field.unit_vector(c.dim(), j);
            c.act_right(&coring.epsilon.column(j)).mul_vec(&ci) == c.act_left(&ei).mul_vec(&dj)
        })
    })
}

pub fn analyze_forgetful_functor(coring: &Coring, opts: &Options) -> Result<ForgetfulReport> {
    check(coring.validate())?;
    let identity = counit_identity_holds(coring);
    let delta_surjective = coring.delta().rank() == coring.cc.dim();
    if identity != delta_surjective {
        return Err(inconsistent(format!("forgetful: counit identity {identity} but Δ surjective {delta_surjective}")));
    }
    let conditions = vec![
        Condition::exact("counit_commutation", identity, "c ε(d) = ε(c) d on basis pairs"),
        Condition::exact(
            "comultiplication_surjective",
            delta_surjective,
            format!("rank Δ = {}, dim C⊗_R C = {}", coring.delta().rank(), coring.cc.dim()),
        ),
    ];
    let mut evidence = None;
    if opts.family_checks {
        let a = CoringForgetful::new(coring);
        let fam = comodule_family(coring, opts.seed)?;
        let per_object = adj::left_full_on_family(&a, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 4);
        let (splitting, family_system) = if identity {
            if per_object.iter().any(|(_, ok)| !ok) {
                return Err(inconsistent("forgetful: criterion holds but a unit component does not split"));
            }
            let w = adj::verify_left_splitting(&a, &fam, |m| a.nu_from_counit(m), "counit_commutation", opts.naturality_samples, &mut rng)?;
            (Some(SplittingSummary::from(&w)), None)
        } else {
            (None, Some(adj::left_family_system(&a, &fam)?))
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(ForgetfulReport { naturally_full: identity, delta_surjective, conditions, evidence })
}

/// An `R`-ring `φ : R → A` with an `R`-bimodule map `E : A → R`, `φ ∘ E = id_A`.
#[derive(Clone, Debug)]
pub struct SectionedRing {
    pub phi: AlgebraMorphism,
    pub section: Matrix,
}

impl SectionedRing {
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.phi.validate();
        if !out.is_empty() {
            return out;
        }
        let a_rr = Bimodule::regular(&self.phi.target).restrict(Some(&self.phi), Some(&self.phi));
        let ok = a_rr.and_then(|m| hom_space(&m, &Bimodule::regular(&self.phi.source), Sides::Both)).is_ok_and(|h| h.contains(&self.section));
        if !ok {
            out.push(Violation::new("E is an R-bimodule map", "E"));
        }
        if !self.phi.matrix.matmul(&self.section).is_identity() {
            out.push(Violation::new("φ∘E = id_A", "E"));
        }
        out
    }
}

/// From a coring whose cotensor functor is naturally full, the ring on `C`
/// with `c·c' = ξ(ε(c)ε(c'))`, unit `z`, `φ = ξ` and `E = ε`.
pub fn coring_to_ring(coring: &Coring) -> Result<SectionedRing> {
    check(coring.validate())?;
    let z = cotensor_witness(coring)?.ok_or_else(|| Error::CriterionNotMet("no z ∈ C^R with c = ε(c)z".into()))?;
    let c = coring.carrier();
    let r = coring.base();
    let field = c.field();
    let xi = |x: &[u32]| c.act_left(x).mul_vec(&z);
    let a = Arc::new(Algebra::from_product(field, c.dim(), z.clone(), |i, j| xi(&r.mul(&coring.epsilon.column(i), &coring.epsilon.column(j)))));
    let phi_m = Matrix::from_columns(field, c.dim(), &(0..r.dim()).map(|i| xi(&r.basis_element(i))).collect::<Vec<_>>());
    let phi = AlgebraMorphism::new(r.clone(), a, phi_m)?;
    let ring = SectionedRing { phi, section: coring.epsilon.clone() };
    check(ring.validate()).map_err(|e| witness_violation(format!("coring to ring: {e}")))?;
    Ok(ring)
}

/// From an `R`-ring with section, the coring `A` with `Δ(c) = c ⊗ 1` and `ε = E`.
pub fn ring_to_coring(ring: &SectionedRing) -> Result<Coring> {
    check(ring.validate()).map_err(|e| Error::CriterionNotMet(format!("φ∘E = id_A fails: {e}")))?;
    let a = &ring.phi.target;
    let field = a.field();
    let carrier = Bimodule::regular(a).restrict(Some(&ring.phi), Some(&ring.phi))?;
    let cols: Vec<Vec<u32>> =
        (0..a.dim()).map(|i| Matrix::column_vector(field, &a.basis_element(i)).kronecker(&Matrix::column_vector(field, a.one())).to_vec()).collect();
    let delta = Matrix::from_columns(field, a.dim() * a.dim(), &cols);
    let coring = Coring::checked(ring.phi.source.clone(), carrier, delta, ring.section.clone())?;
    Ok(coring)
}

/// Whether two corings over the same base agree on carrier actions, `Δ` and `ε`.
pub fn same_coring(a: &Coring, b: &Coring) -> bool {
    a.base == b.base && a.carrier == b.carrier && a.delta() == b.delta() && a.epsilon == b.epsilon
}

/// Whether two sectioned rings agree on structure constants, `φ` and `E`.
pub fn same_ring(a: &SectionedRing, b: &SectionedRing) -> bool {
    a.phi.target == b.phi.target && a.phi.matrix == b.phi.matrix && a.section == b.section && a.phi.source == b.phi.source
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub ring_dim: usize,
    pub exact: bool,
}

/// Coring → ring → coring, compared exactly.
pub fn coring_round_trip(coring: &Coring) -> Result<RoundTrip> {
    let ring = coring_to_ring(coring)?;
    let back = ring_to_coring(&ring)?;
    Ok(RoundTrip { ring_dim: ring.phi.target.dim(), exact: same_coring(coring, &back) })
}

/// Ring → coring → ring, compared exactly.
pub fn ring_round_trip(ring: &SectionedRing) -> Result<RoundTrip> {
    let coring = ring_to_coring(ring)?;
    let back = coring_to_ring(&coring)?;
    Ok(RoundTrip { ring_dim: ring.phi.target.dim(), exact: same_ring(ring, &back) })
}

/// `C ⊗_R C → R`, `c ⊗ d ↦ ε(c) ε(d)`.
pub fn counit_square(coring: &Coring) -> Result<Matrix> {
    let r = coring.base();
    coring.cc.descend(r.dim(), |i, k| r.mul(&coring.epsilon.column(i), &coring.epsilon.column(k)))
}

/// The linear map `ϑ ↦ c₁ϑ(c₂ ⊗ d) − ϑ(c ⊗ d₁)d₂` from maps `C⊗_R C → R`
/// to maps `C⊗_R C → C`.
pub struct Normalization {
    t: TripleTensor,
    cr: TensorProduct,
    rc: TensorProduct,
    lhs_pre: Matrix,
    rhs_pre: Matrix,
    r_unit: Matrix,
    l_unit: Matrix,
}

impl Normalization {
    pub fn new(coring: &Coring) -> Result<Self> {
        let c = coring.carrier();
        let id = Matrix::identity(c.field(), c.dim());
        let delta = coring.delta();
        let t = TripleTensor::new(c, c, c)?;
        let cr = tensor_over(c, &coring.regular_base())?;
        let rc = tensor_over(&coring.regular_base(), c)?;
        let lhs_pre = t.assoc().matmul(&tensor_map(&coring.cc, &t.ab_c, &delta, &id));
        let rhs_pre = t.assoc_inv().matmul(&tensor_map(&coring.cc, &t.a_bc, &id, &delta));
        let r_unit = right_unitor(&cr)?;
        let l_unit = left_unitor(&rc)?;
        Ok(Self { t, cr, rc, lhs_pre, rhs_pre, r_unit, l_unit })
    }

    pub fn residual(&self, theta: &Matrix) -> Matrix {
        let field = theta.field();
        let dc = self.t.bc.right_factor().dim();
        let lhs = self.r_unit.matmul(&tensor_map(&self.t.a_bc, &self.cr, &Matrix::identity(field, dc), theta)).matmul(&self.lhs_pre);
        let rhs = self.l_unit.matmul(&tensor_map(&self.t.ab_c, &self.rc, theta, &Matrix::identity(field, dc))).matmul(&self.rhs_pre);
        &lhs - &rhs
    }
}

/// `R`-bimodule maps `ϑ : C ⊗_R C → R` satisfying the normalization identity.
pub fn normalized_maps(coring: &Coring) -> Result<HomSpace> {
    let norm = Normalization::new(coring)?;
    let hom = hom_space(&coring.cc.module, &coring.regular_base(), Sides::Both)?;
    Ok(hom.constrain(|th| norm.residual(th).to_vec()))
}

/// A cointegral: a normalized bimodule map `ϑ` with `ϑ ∘ Δ = ε`.
pub fn coseparability_witness(coring: &Coring) -> Result<Option<Matrix>> {
    let space = normalized_maps(coring)?;
    let delta = coring.delta();
    Ok(space.solve(|th| th.matmul(&delta).to_vec(), &coring.epsilon.to_vec()))
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedReport {
    /// Present when the cotensor functor is naturally full.
    pub fgp_left: Option<bool>,
    pub fgp_right: Option<bool>,
    /// `f ↦ z f(z)` on left `R`-linear `f : C → R` is bijective.
    pub frobenius_bijective: Option<bool>,
    /// `1 ∈ ε(C)`, under which the forgetful criterion implies the cotensor one.
    pub counit_surjective: bool,
    /// Present when the forgetful functor is naturally full.
    pub counit_square_bimodule: Option<bool>,
    pub counit_square_cointegral: Option<bool>,
    pub counit_square_normalized: Option<bool>,
    /// Some normalized `ϑ` with `ϑ ∘ Δ = ε` exists.
    pub coseparable: bool,
}

/// Consequences of the two criteria, each checked directly. Every implied
/// property that fails raises a witness violation.
pub fn derived_checks(coring: &Coring, witness_z: Option<&[u32]>, forgetful_nf: bool) -> Result<DerivedReport> {
    let c = coring.carrier();
    let r = coring.base();
    let field = c.field();
    let counit_surjective = coring.epsilon.is_surjective();
    let coseparable = coseparability_witness(coring)?.is_some();
    let mut rep = DerivedReport {
        fgp_left: None,
        fgp_right: None,
        frobenius_bijective: None,
        counit_surjective,
        counit_square_bimodule: None,
        counit_square_cointegral: None,
        counit_square_normalized: None,
        coseparable,
    };
    if let Some(z) = witness_z {
        if !forgetful_nf {
            return Err(witness_violation("cotensor naturally full but forgetful not"));
        }
        let left = fgp_dual_basis(&c.forget_right())?.is_some();
        let right = fgp_dual_basis(&c.swap_sides().forget_right())?.is_some();
        let hom = hom_space(&c.forget_right(), &Bimodule::left_regular(r), Sides::Left)?;
        let cols: Vec<Vec<u32>> = hom.basis().iter().map(|f| c.act_right(&f.mul_vec(z)).mul_vec(z)).collect();
        let phi = Matrix::from_columns(field, c.dim(), &cols);
        let bij = hom.dim() == c.dim() && phi.is_bijective();
        rep.fgp_left = Some(left);
        rep.fgp_right = Some(right);
        rep.frobenius_bijective = Some(bij);
        if !(left && right && bij) {
            return Err(witness_violation(format!("cotensor naturally full: fgp left {left}, right {right}, Frobenius map bijective {bij}")));
        }
    } else if forgetful_nf && counit_surjective {
        return Err(witness_violation("forgetful naturally full with surjective counit, yet no z"));
    }
    if forgetful_nf {
        let theta = counit_square(coring)?;
        let bimodule = hom_space(&coring.cc.module, &coring.regular_base(), Sides::Both)?.contains(&theta);
        let cointegral = theta.matmul(&coring.delta()) == coring.epsilon;
        let normalized = Normalization::new(coring)?.residual(&theta).is_zero();
        rep.counit_square_bimodule = Some(bimodule);
        rep.counit_square_cointegral = Some(cointegral);
        rep.counit_square_normalized = Some(normalized);
        if !(bimodule && cointegral && normalized && coseparable) {
            return Err(witness_violation(format!(
                "forgetful naturally full: ε⊗ε bimodule {bimodule}, cointegral {cointegral}, normalized {normalized}"
            )));
        }
    }
    Ok(rep)
}

fn grouplikes_bounded(coring: &Coring, limit: u64) -> Result<Vec<Vec<u32>>> {
    let r = coring.base();
    let field = r.field();
    let Some(g0) = coring.epsilon.solve(r.one()) else { return Ok(Vec::new()) };
    let ker = coring.epsilon.kernel();
    let size = (field.p() as u64).checked_pow(ker.dim() as u32).unwrap_or(u64::MAX);
    if size > limit {
        return Err(Error::SearchSpaceTooLarge(format!("{}^{} candidates with ε(g) = 1", field.p(), ker.dim())));
    }
    let delta = coring.delta();
    Ok(field
        .all_vectors(ker.dim())
        .map(|c| field.add_vec(&g0, &ker.basis().mul_vec(&c)))
        .filter(|g| delta.mul_vec(g) == coring.cc.pure(g, g))
        .collect())
}

/// All `g` with `Δ(g) = g ⊗ g` and `ε(g) = 1`, enumerating only the affine
/// space `ε(g) = 1`.
pub fn grouplikes(coring: &Coring) -> Result<Vec<Vec<u32>>> {
    grouplikes_bounded(coring, ENUMERATION_LIMIT)
}

/// `R` as a right comodule through a grouplike: `ρ(r) = 1 ⊗ g r`.
pub fn base_comodule(coring: &Coring, g: &[u32]) -> Result<Comodule> {
    let r = coring.base();
    let module = Bimodule::right_regular(r);
    let rc = tensor_over(&module, coring.carrier())?;
    let field = r.field();
    let cols: Vec<Vec<u32>> = (0..r.dim()).map(|i| rc.pure(r.one(), &coring.carrier.act_right(&r.basis_element(i)).mul_vec(g))).collect();
    Comodule::new(coring, module, Matrix::from_columns(field, rc.dim(), &cols))
}

/// `B = {r : r g = g r}` as a subspace of `R`, with its algebra and inclusion.
pub fn coinvariant_subalgebra(coring: &Coring, g: &[u32]) -> Result<(Subspace, Arc<Algebra>, AlgebraMorphism)> {
    let r = coring.base();
    let c = coring.carrier();
    let cols: Vec<Vec<u32>> = (0..r.dim())
        .map(|i| {
            let e = r.basis_element(i);
            c.field().sub_vec(&c.act_left(&e).mul_vec(g), &c.act_right(&e).mul_vec(g))
        })
        .collect();
    let b = Matrix::from_columns(r.field(), c.dim(), &cols).kernel();
    let (alg, inc) = r.subalgebra(&b).map_err(|_| witness_violation("coinvariants of R are not a subalgebra"))?;
    Ok((b, alg, inc))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiReport {
    pub bimodule_map: bool,
    pub normalized: bool,
    pub unital_on_grouplike: bool,
    pub hypotheses_met: bool,
    /// `α_N` bijective for `N = B` and `N = R` over `B`, when the hypotheses hold.
    pub alpha_bijective: Vec<(String, bool)>,
}

/// Checks the hypotheses on `χ : C ⊗_R C → R` and, when they hold, that
/// `α_N : N → (N ⊗_B R)^{co C}`, `n ↦ n ⊗ 1`, is bijective with inverse
/// induced by `t(r) = χ(g r ⊗ g)`.
pub fn check_chi_condition(coring: &Coring, g: &[u32], chi: &Matrix) -> Result<ChiReport> {
    let delta = coring.delta();
    if delta.mul_vec(g) != coring.cc.pure(g, g) || coring.epsilon.mul_vec(g) != coring.base.one() {
        return Err(Error::Validation(vec![Violation::new("g is grouplike", "g")]));
    }
    let r = coring.base();
    let c = coring.carrier();
    let field = c.field();
    let bimodule_map = hom_space(&coring.cc.module, &coring.regular_base(), Sides::Both)?.contains(chi);
    let normalized = Normalization::new(coring)?.residual(chi).is_zero();
    let unital_on_grouplike = chi.mul_vec(&coring.cc.pure(g, g)) == r.one();
    let hypotheses_met = bimodule_map && normalized && unital_on_grouplike;
    let mut alpha_bijective = Vec::new();
    if hypotheses_met {
        let (b_space, b_alg, inc) = coinvariant_subalgebra(coring, g)?;
        let t_of = |x: &[u32]| chi.mul_vec(&coring.cc.pure(&c.act_right(x).mul_vec(g), g));
        let t_coords = (0..r.dim())
            .map(|i| b_space.coords(&t_of(&r.basis_element(i))).ok_or_else(|| witness_violation("t(r) ∉ B")))
            .collect::<Result<Vec<_>>>()?;
        let r_over_b = Bimodule::regular(r).restrict(Some(&inc), None)?;
        let objects = [
            ("coinvariant_ring", Bimodule::right_regular(&b_alg)),
            ("base_over_coinvariants", Bimodule::regular(r).restrict(None, Some(&inc))?.forget_left()),
        ];
        for (label, n) in objects {
            let nr = tensor_over(&n, &r_over_b)?;
            let nrc = tensor_over(&nr.module, c)?;
            let comod_cols: Vec<Vec<u32>> = (0..nr.dim())
                .map(|k| {
                    let mut acc = vec![0; nrc.dim()];
                    for (idx, &x) in nr.lift(&field.unit_vector(nr.dim(), k)).iter().enumerate().filter(|(_, &x)| x != 0) {
                        let (i, j) = (idx / r.dim(), idx % r.dim());
                        let n1 = nr.pure(&field.unit_vector(n.dim(), i), r.one());
                        field.axpy(&mut acc, x, &nrc.pure(&n1, &c.act_right(&r.basis_element(j)).mul_vec(g)));
                    }
                    acc
                })
                .collect();
            let comod = Comodule::new(coring, nr.module.clone(), Matrix::from_columns(field, nrc.dim(), &comod_cols))?;
            let co = comod.coinvariants(g);
            let alpha_cols: Vec<Vec<u32>> = (0..n.dim()).map(|i| nr.pure(&field.unit_vector(n.dim(), i), r.one())).collect();
            let alpha = Matrix::from_columns(field, nr.dim(), &alpha_cols);
            let theta = nr.descend(n.dim(), |i, k| n.act_right(&t_coords[k]).column(i))?;
            let lands = alpha_cols.iter().all(|v| co.contains(v));
            let ok = lands && alpha.is_injective() && co.dim() == n.dim() && theta.matmul(&alpha).is_identity();
            if !ok {
                return Err(witness_violation(format!("α_N is not bijective at {label} although the hypotheses hold")));
            }
            alpha_bijective.push((label.to_string(), ok));
        }
    }
    Ok(ChiReport { bimodule_map, normalized, unital_on_grouplike, hypotheses_met, alpha_bijective })
}

/// The Sweedler coring `S ⊗_R S` over `S` of `φ : R → S`, with
/// `Δ(a ⊗ a') = (a ⊗ 1) ⊗_S (1 ⊗ a')` and `ε` the multiplication.
pub fn sweedler_coring(phi: &AlgebraMorphism) -> Result<Coring> {
    check(phi.validate())?;
    let s = &phi.target;
    let field = s.field();
    let ss = sweedler_tensor(phi)?;
    let one = s.one();
    let n = ss.dim();
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|k| {
            let lift = ss.lift(&field.unit_vector(n, k));
            let mut acc = vec![0; n * n];
            for (idx, &x) in lift.iter().enumerate().filter(|(_, &x)| x != 0) {
                let (i, j) = (idx / s.dim(), idx % s.dim());
                let a = ss.pure(&s.basis_element(i), one);
                let b = ss.pure(one, &s.basis_element(j));
                let v = Matrix::column_vector(field, &a).kronecker(&Matrix::column_vector(field, &b)).to_vec();
                field.axpy(&mut acc, x, &v);
            }
            acc
        })
        .collect();
    let delta = Matrix::from_columns(field, n * n, &cols);
    let eps = multiplication_map(phi, &ss)?;
    Coring::checked(s.clone(), ss.module, delta, eps)
}

/// The comatrix coring `M ⊗_R *M` over `S` of an `(S, R)`-bimodule `M`
/// that is finitely generated projective over `S`, with
/// `Δ(m ⊗ μ) = Σ (m ⊗ *e_i) ⊗_S (e_i ⊗ μ)` and `ε(m ⊗ μ) = (m)μ`.
pub fn comatrix_coring(m: &Bimodule) -> Result<Coring> {
    check(m.validate())?;
    let db = fgp_dual_basis(&m.forget_right())?.ok_or_else(|| Error::NotProjective("M is not projective over S".into()))?;
    let field = m.field();
    let s = m.left_algebra();
    let (dual, mm) = Induction::new(m)?.comatrix_tensor()?;
    let dual_coords = db
        .functionals
        .iter()
        .map(|f| dual.coords(f).ok_or_else(|| Error::WitnessViolation("dual basis functional is not left-linear".into())))
        .collect::<Result<Vec<_>>>()?;
    let n = mm.dim();
    let dd = dual.dim();
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|k| {
            let lift = mm.lift(&field.unit_vector(n, k));
            let mut acc = vec![0; n * n];
            for (idx, &x) in lift.iter().enumerate().filter(|(_, &x)| x != 0) {
                let (j, l) = (idx / dd, idx % dd);
                let mj = field.unit_vector(m.dim(), j);
                let mu = field.unit_vector(dd, l);
                for (e, fe) in db.elements.iter().zip(&dual_coords) {
                    let a = mm.pure(&mj, fe);
                    let b = mm.pure(e, &mu);
                    let v = Matrix::column_vector(field, &a).kronecker(&Matrix::column_vector(field, &b)).to_vec();
                    field.axpy(&mut acc, x, &v);
                }
            }
            acc
        })
        .collect();
    let delta = Matrix::from_columns(field, n * n, &cols);
    let eps = mm.descend(s.dim(), |i, k| dual.basis()[k].column(i))?;
    Coring::checked(s.clone(), mm.module, delta, eps)
}

/// `R` with `Δ(r) = r ⊗ 1` and `ε = id`.
pub fn trivial_coring(r: &Arc<Algebra>) -> Result<Coring> {
    let field = r.field();
    let cols: Vec<Vec<u32>> =
        (0..r.dim()).map(|i| Matrix::column_vector(field, &r.basis_element(i)).kronecker(&Matrix::column_vector(field, r.one())).to_vec()).collect();
    let delta = Matrix::from_columns(field, r.dim() * r.dim(), &cols);
    Coring::checked(r.clone(), Bimodule::regular(r), delta, Matrix::identity(field, r.dim()))
}

/// The dual coalgebra `A*` over the ground field of an algebra `A`.
pub fn dual_coalgebra(a: &Algebra) -> Result<Coring> {
    let field = a.field();
    let n = a.dim();
    let k = Arc::new(Algebra::ground(field));
    let carrier = Bimodule::new(k.clone(), k.clone(), n, vec![Matrix::identity(field, n)], vec![Matrix::identity(field, n)])?;
    let delta = Matrix::from_fn(field, n * n, n, |row, col| a.structure(row / n, row % n)[col]);
    let eps = Matrix::from_fn(field, 1, n, |_, c| a.one()[c]);
    Coring::checked(k, carrier, delta, eps)
}

#[derive(Clone, Debug, Serialize)]
pub struct GrouplikeReport {
    pub elements: Vec<Vec<u32>>,
    /// `dim B` for the first grouplike.
    pub coinvariant_subalgebra_dim: Option<usize>,
    /// Present when a cointegral exists, checked at the first grouplike.
    pub chi_condition: Option<ChiReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoringReport {
    pub cotensor: CotensorReport,
    pub forgetful: ForgetfulReport,
    pub derived: DerivedReport,
    /// Absent when the grouplike search space is too large.
    pub grouplikes: Option<GrouplikeReport>,
    pub notes: Vec<String>,
}

pub fn analyze_coring(coring: &Coring, opts: &Options) -> Result<CoringReport> {
    let cotensor = analyze_cotensor_functor(coring, opts)?;
    let forgetful = analyze_forgetful_functor(coring, opts)?;
    let derived = derived_checks(coring, cotensor.witness_z.as_deref(), forgetful.naturally_full)?;
    let mut notes = Vec::new();
    if is_zero_vec(&coring.epsilon.to_vec()) && coring.dim() > 0 {
        notes.push("ε = 0: no element has counit 1".to_string());
    }
    let grouplikes = match grouplikes(coring) {
        Ok(elements) => {
            let mut sub_dim = None;
            let mut chi_condition = None;
            if let Some(g) = elements.first() {
                sub_dim = Some(coinvariant_subalgebra(coring, g)?.0.dim());
                if let Some(chi) = coseparability_witness(coring)? {
                    chi_condition = Some(check_chi_condition(coring, g, &chi)?);
                }
            }
            Some(GrouplikeReport { elements, coinvariant_subalgebra_dim: sub_dim, chi_condition })
        }
        Err(Error::SearchSpaceTooLarge(msg)) => {
            notes.push(format!("grouplike search skipped: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(CoringReport { cotensor, forgetful, derived, grouplikes, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::scalars::is_ring_epimorphism;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn proj() -> AlgebraMorphism {
        let r = Arc::new(Algebra::split(f(2), 2));
        let k = Arc::new(Algebra::ground(f(2)));
        AlgebraMorphism::new(r, k, Matrix::from_rows(f(2), &[vec![1, 0]]).unwrap()).unwrap()
    }

    fn f4() -> AlgebraMorphism {
        AlgebraMorphism::unit_map(Arc::new(Algebra::polynomial_quotient(f(2), &[1, 1])))
    }

    fn plane() -> Bimodule {
        let k = Arc::new(Algebra::ground(f(2)));
        let id = Matrix::identity(f(2), 2);
        Bimodule::new(k.clone(), k, 2, vec![id.clone()], vec![id]).unwrap()
    }

    #[test]
    fn trivial_coring_is_valid_and_both_functors_naturally_full() {
        let r = Arc::new(Algebra::upper_triangular(f(3)));
        let c = trivial_coring(&r).unwrap();
        let rep = analyze_coring(&c, &Options::default()).unwrap();
        assert!(rep.cotensor.naturally_full && rep.forgetful.naturally_full);
        assert_eq!(rep.cotensor.witness_z.as_deref(), Some(r.one()));
        assert!(rep.cotensor.evidence.unwrap().splitting.is_some());
        assert!(rep.forgetful.evidence.unwrap().splitting.is_some());
        assert_eq!(rep.grouplikes.unwrap().elements, vec![r.one().to_vec()]);
    }

    #[test]
    fn zeroed_comultiplication_breaks_the_counit_law() {
        let r = Arc::new(Algebra::ground(f(2)));
        let c = trivial_coring(&r).unwrap();
        let broken = Coring::new(r, c.carrier().clone(), Matrix::zeros(f(2), 1, 1), c.epsilon().clone()).unwrap();
        assert!(broken.validate().iter().any(|v| v.law.contains("counit")));
    }

    #[test]
    fn matrix_coring_has_neither_property() {
        let c = comatrix_coring(&plane()).unwrap();
        assert_eq!(c.dim(), 4);
        let rep = analyze_coring(&c, &Options::default()).unwrap();
        assert!(!rep.cotensor.naturally_full);
        assert!(!rep.forgetful.naturally_full);
        assert!(matches!(coring_to_ring(&c), Err(Error::CriterionNotMet(_))));
    }

    #[test]
    fn sweedler_forgetful_matches_epimorphism() {
        for phi in [proj(), f4(), crate::scalars::build_triangular_example(f(2)).1] {
            let c = sweedler_coring(&phi).unwrap();
            let rep = analyze_forgetful_functor(&c, &Options::default()).unwrap();
            assert_eq!(rep.naturally_full, is_ring_epimorphism(&phi).unwrap().epimorphism);
        }
    }

    #[test]
    fn sweedler_of_f4_grouplikes_and_coinvariants() {
        let c = sweedler_coring(&f4()).unwrap();
        let s = c.base().clone();
        assert_eq!(c.dim(), 4);
        let one_one = sweedler_tensor(&f4()).unwrap().pure(s.one(), s.one());
        let gs = grouplikes(&c).unwrap();
        assert!(gs.contains(&one_one));
        let (b, alg, _) = coinvariant_subalgebra(&c, &one_one).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn projection_sweedler_round_trips() {
        let c = sweedler_coring(&proj()).unwrap();
        let rep = analyze_coring(&c, &Options::default()).unwrap();
        assert!(rep.cotensor.naturally_full);
        assert_eq!(rep.derived.fgp_left, Some(true));
        assert_eq!(rep.derived.frobenius_bijective, Some(true));
        assert!(coring_round_trip(&c).unwrap().exact);
        let ring = coring_to_ring(&c).unwrap();
        assert!(ring_round_trip(&ring).unwrap().exact);
    }

    #[test]
    fn ring_with_section_round_trips() {
        let a = Algebra::upper_triangular(f(3));
        let r = Arc::new(Algebra::product(&a, &Algebra::ground(f(3))));
        let a = Arc::new(a);
        let phi = AlgebraMorphism::new(r.clone(), a.clone(), Matrix::from_fn(f(3), 3, 4, |i, j| u32::from(i == j))).unwrap();
        let section = Matrix::from_fn(f(3), 4, 3, |i, j| u32::from(i == j));
        let ring = SectionedRing { phi, section };
        assert!(ring.validate().is_empty());
        assert!(ring_round_trip(&ring).unwrap().exact);
        let c = ring_to_coring(&ring).unwrap();
        assert!(analyze_cotensor_functor(&c, &Options::default()).unwrap().naturally_full);
    }

    #[test]
    fn comatrix_of_regular_is_trivial() {
        let r = Arc::new(Algebra::upper_triangular(f(2)));
        let c = comatrix_coring(&Bimodule::regular(&r)).unwrap();
        assert_eq!(c.dim(), r.dim());
        let rep = analyze_coring(&c, &Options::default()).unwrap();
        assert!(rep.cotensor.naturally_full && rep.forgetful.naturally_full);
    }

    #[test]
    fn comatrix_refuses_non_projective() {
        let t = Arc::new(Algebra::upper_triangular(f(2)));
        let simples = crate::oracle::family::simple_modules(&t).unwrap();
        let np = simples.into_iter().find(|s| fgp_dual_basis(s).unwrap().is_none()).unwrap();
        let k = Arc::new(Algebra::ground(f(2)));
        let m = Bimodule::new(t, k, np.dim(), np.left_action().to_vec(), vec![Matrix::identity(f(2), np.dim())]).unwrap();
        assert!(matches!(comatrix_coring(&m), Err(Error::NotProjective(_))));
    }

    #[test]
    fn dual_coalgebras_validate() {
        for a in [Algebra::polynomial_quotient(f(2), &[1, 1]), Algebra::upper_triangular(f(3)), Algebra::split(f(2), 2)] {
            let c = dual_coalgebra(&a).unwrap();
            let rep = analyze_coring(&c, &Options::default()).unwrap();
            assert_eq!(rep.forgetful.naturally_full, a.dim() == 1);
        }
    }

    #[test]
    fn opposite_preserves_the_cotensor_verdict() {
        for m in [plane(), Bimodule::regular(&Arc::new(Algebra::split(f(2), 2)))] {
            let c = comatrix_coring(&m).unwrap();
            let op = c.opposite().unwrap();
            assert!(op.validate().is_empty());
            assert_eq!(cotensor_witness(&c).unwrap().is_some(), cotensor_witness(&op).unwrap().is_some());
        }
    }

    #[test]
    fn coseparable_trivial_coring_meets_chi_hypotheses() {
        let r = Arc::new(Algebra::upper_triangular(f(2)));
        let c = trivial_coring(&r).unwrap();
        let chi = coseparability_witness(&c).unwrap().unwrap();
        let rep = check_chi_condition(&c, r.one(), &chi).unwrap();
        assert!(rep.hypotheses_met);
        assert!(rep.alpha_bijective.iter().all(|(_, ok)| *ok));
        let zero = Matrix::zeros(f(2), r.dim(), c.cc().dim());
        assert!(!check_chi_condition(&c, r.one(), &zero).unwrap().hypotheses_met);
    }

    #[test]
    fn comodule_family_validates() {
        let c = sweedler_coring(&f4()).unwrap();
        for (label, m) in comodule_family(&c, 0).unwrap().objects {
            assert!(m.validate(&c).is_empty(), "{label}");
        }
        let a = CoringForgetful::new(&c);
        let fam = comodule_family(&c, 0).unwrap();
        adj::triangle_identities(&a, &fam, &module_family(&c, 0).unwrap()).unwrap();
    }
}

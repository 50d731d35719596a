//! Morphisms of corings and the functors they induce.
//!
//! A morphism `(Φ, φ) : C → D` from an `R`-coring to an `S`-coring is an
//! algebra map `φ : R → S` with an `R`-bimodule map `Φ : C → D` compatible
//! with the comultiplications through `ω : D ⊗_R D → D ⊗_S D` and with the
//! counits. It induces `F = − ⊗_R S` from right `C`-comodules to right
//! `D`-comodules, with coaction `m ⊗ s ↦ (m₀ ⊗ 1) ⊗ Φ(m₁) s`, and its right
//! adjoint `G = − □_D L` for the `(D, C)`-bicomodule `L = S ⊗_R C`.
//!
//! Cotensor products are computed as explicit kernels inside `N ⊗_S L`.
//! Tensoring that kernel with `C` (or `S`) must again be injective for the
//! induced coaction to exist; this is checked on every object and reported
//! as [`Error::EqualizerNotPreserved`] when it fails.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::corings::{cofree, colinear_maps, trivial_coring, Comodule, Coring};
use crate::error::{check, Error, Result, Violation};
use crate::exactla::Matrix;
use crate::modrep::{hom_space, right_unitor, tensor_map, tensor_over, Bimodule, HomSpace, Sides, TensorProduct, TripleTensor};
use crate::oracle::adjunction::{self as adj, Adjunction, Family};
use crate::oracle::family::simple_modules;
use crate::report::{Condition, FamilyEvidence, Options, SplittingSummary};
use crate::scalars::{target_as_left_right, target_as_right_left};

#[derive(Clone, Debug)]
pub struct CoringMorphism {
    source: Coring,
    target: Coring,
    phi: AlgebraMorphism,
    map: Matrix,
    /// `S` as an `(R, S)`-bimodule.
    s_rs: Bimodule,
    /// `D` as an `(R, S)`-bimodule.
    d_rs: Bimodule,
    /// `L = S ⊗_R C`.
    l: TensorProduct,
    /// `L → D ⊗_S L`, `s ⊗ c ↦ s Φ(c₁) ⊗ (1 ⊗ c₂)`.
    lambda_l: Matrix,
    /// `L → L ⊗_R C`, `s ⊗ c ↦ (s ⊗ c₁) ⊗ c₂`.
    rho_l: Matrix,
}

/// Every compatibility law of `(Φ, φ)`, after validating both corings and `φ`.
pub fn validate_coring_morphism(source: &Coring, target: &Coring, phi: &AlgebraMorphism, map: &Matrix) -> Vec<Violation> {
    let mut out = source.validate();
    out.extend(target.validate());
    out.extend(phi.validate());
    if !out.is_empty() {
        return out;
    }
    if *phi.source != **source.base() || *phi.target != **target.base() {
        out.push(Violation::new("φ goes from the base of C to the base of D", "φ"));
        return out;
    }
    if map.shape() != (target.dim(), source.dim()) {
        out.push(Violation::new(format!("Φ is {}x{}", target.dim(), source.dim()), "Φ"));
        return out;
    }
    let Ok(d_rr) = target.carrier().restrict(Some(phi), Some(phi)) else {
        out.push(Violation::new("D restricts along φ", "D"));
        return out;
    };
    if !hom_space(source.carrier(), &d_rr, Sides::Both).is_ok_and(|h| h.contains(map)) {
        out.push(Violation::new("Φ is R-bilinear through φ", "Φ"));
    }
    let eps_c = phi.matrix.matmul(source.epsilon());
    let eps_d = target.epsilon().matmul(map);
    for c in (0..source.dim()).filter(|&c| eps_c.column(c) != eps_d.column(c)) {
        out.push(Violation::new("counit square φ∘ε_C = ε_D∘Φ", format!("basis element c_{c}")));
    }
    let Ok(drd) = tensor_over(&d_rr, &d_rr) else {
        out.push(Violation::new("D ⊗_R D is computable", "D"));
        return out;
    };
    let omega = target.cc().projection.matmul(&drd.section);
    let lhs = omega.matmul(&tensor_map(source.cc(), &drd, map, map)).matmul(&source.delta());
    let rhs = target.delta().matmul(map);
    for c in (0..source.dim()).filter(|&c| lhs.column(c) != rhs.column(c)) {
        out.push(Violation::new("comultiplication square ω∘(Φ⊗Φ)∘Δ_C = Δ_D∘Φ", format!("basis element c_{c}")));
    }
    out
}

/// A right `C`-comodule obtained as a cotensor product `N □_D L`.
#[derive(Clone, Debug)]
pub struct CotensorSpace {
    /// `N ⊗_S L`.
    pub ambient: TensorProduct,
    /// Columns span the kernel, in coordinates of `ambient`.
    pub inclusion: Matrix,
    pub module: Bimodule,
    /// Induced coaction `K → K ⊗_R C`.
    pub rho: Matrix,
}

impl CotensorSpace {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// `F M = M ⊗_R S` with its `D`-coaction.
#[derive(Clone, Debug)]
pub struct Induced {
    pub tensor: TensorProduct,
    pub rho: Matrix,
}

fn not_preserved(msg: impl Into<String>) -> Error {
    Error::EqualizerNotPreserved(msg.into())
}

fn witness_violation(msg: impl Into<String>) -> Error {
    Error::WitnessViolation(msg.into())
}

/// Solves `inj · X = m` for an injective `inj`.
fn factor_through(inj: &Matrix, m: &Matrix, what: &str) -> Result<Matrix> {
    if !inj.is_injective() {
        return Err(not_preserved(format!("{what}: tensoring the cotensor inclusion is not injective")));
    }
    inj.solve_matrix(m).ok_or_else(|| not_preserved(format!("{what}: image does not lie in the tensored cotensor")))
}

impl CoringMorphism {
    /// Builds and validates.
    pub fn new(source: Coring, target: Coring, phi: AlgebraMorphism, map: Matrix) -> Result<Self> {
        check(validate_coring_morphism(&source, &target, &phi, &map))?;
        let field = phi.field();
        let s = &phi.target;
        let s_sr = target_as_left_right(&phi)?;
        let s_rs = target_as_right_left(&phi)?;
        let d_rs = target.carrier().restrict(Some(&phi), None)?;
        let l = tensor_over(&s_sr, source.carrier())?;
        let dl = tensor_over(target.carrier(), &l.module)?;
        let n = source.dim();
        let delta = source.delta_lift();
        let lambda_l = l.descend(dl.dim(), |b, c| {
            let mut acc = vec![0; dl.dim()];
            for u in 0..n {
                let sphi = target.carrier().act_left(&s.basis_element(b)).mul_vec(&map.column(u));
                for v in 0..n {
                    let y = delta.get(u * n + v, c);
                    if y != 0 {
                        field.axpy(&mut acc, y, &dl.pure(&sphi, &l.pure(s.one(), &field.unit_vector(n, v))));
                    }
                }
            }
            acc
        })?;
        let t = TripleTensor::new(&s_sr, source.carrier(), source.carrier())?;
        let rho_l = t.assoc_inv().matmul(&tensor_map(&t.ab, &t.a_bc, &Matrix::identity(field, s.dim()), &source.delta()));
        Ok(Self { source, target, phi, map, s_rs, d_rs, l, lambda_l, rho_l })
    }

    /// `(φ, φ)` between the trivial corings of `R` and `S`.
    pub fn from_algebra_map(phi: &AlgebraMorphism) -> Result<Self> {
        Self::new(trivial_coring(&phi.source)?, trivial_coring(&phi.target)?, phi.clone(), phi.matrix.clone())
    }

    /// `(ε_C, id_R)` into the trivial coring of `R`.
    pub fn counit_morphism(coring: &Coring) -> Result<Self> {
        let r = coring.base().clone();
        Self::new(coring.clone(), trivial_coring(&r)?, AlgebraMorphism::identity(r), coring.epsilon().clone())
    }

    /// `(id, id)` on a coring.
    pub fn identity(coring: &Coring) -> Result<Self> {
        let r = coring.base().clone();
        let id = Matrix::identity(r.field(), coring.dim());
        Self::new(coring.clone(), coring.clone(), AlgebraMorphism::identity(r), id)
    }

    pub fn source(&self) -> &Coring {
        &self.source
    }

    pub fn target(&self) -> &Coring {
        &self.target
    }

    pub fn phi(&self) -> &AlgebraMorphism {
        &self.phi
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    /// `S ⊗_R C` as an `(S, R)`-bimodule.
    pub fn bicomodule(&self) -> &TensorProduct {
        &self.l
    }

    fn s(&self) -> &Arc<Algebra> {
        &self.phi.target
    }

    fn id(&self, n: usize) -> Matrix {
        Matrix::identity(self.phi.field(), n)
    }

    /// `θ : C ⊗_R S → D`, `c ⊗ s ↦ Φ(c) s`.
    fn theta(&self, cs: &TensorProduct) -> Result<Matrix> {
        let d = self.target.carrier();
        cs.descend(d.dim(), |c, s| d.act_right(&self.s().basis_element(s)).mul_vec(&self.map.column(c)))
    }

    /// `M ⊗_R S` for a right `C`-comodule structure `ρ_M` on `m`.
    pub fn induce(&self, m: &Bimodule, rho_m: &Matrix) -> Result<Induced> {
        let s = self.s();
        let field = self.phi.field();
        let ms = tensor_over(m, &self.s_rs)?;
        let t = TripleTensor::new(m, self.source.carrier(), &self.s_rs)?;
        let rho_s = tensor_map(&ms, &t.ab_c, rho_m, &self.id(s.dim()));
        let md = tensor_over(m, &self.d_rs)?;
        let m_theta = tensor_map(&t.a_bc, &md, &self.id(m.dim()), &self.theta(&t.bc)?);
        let msd = tensor_over(&ms.module, self.target.carrier())?;
        let dd = self.target.dim();
        let omega = md.descend(msd.dim(), |i, j| msd.pure(&ms.pure(&field.unit_vector(m.dim(), i), s.one()), &field.unit_vector(dd, j)))?;
        let rho = omega.matmul(&m_theta).matmul(&t.assoc()).matmul(&rho_s);
        Ok(Induced { tensor: ms, rho })
    }

    /// `N □_D L` for a right `D`-comodule structure `ρ_N` on `n`.
    pub fn cotensor(&self, n: &Bimodule, rho_n: &Matrix) -> Result<CotensorSpace> {
        let d = self.target.carrier();
        let t = TripleTensor::new(n, d, &self.l.module)?;
        let nl = tensor_over(n, &self.l.module)?;
        let via_n = tensor_map(&nl, &t.ab_c, rho_n, &self.id(self.l.dim()));
        let via_l = t.assoc_inv().matmul(&tensor_map(&nl, &t.a_bc, &self.id(n.dim()), &self.lambda_l));
        let kernel = (&via_n - &via_l).kernel();
        let module = nl.module.submodule(&kernel)?;
        let inclusion = kernel.basis().clone();
        let t2 = TripleTensor::new(n, &self.l.module, self.source.carrier())?;
        let rho_x = t2.assoc_inv().matmul(&tensor_map(&t2.ab, &t2.a_bc, &self.id(n.dim()), &self.rho_l));
        let kc = tensor_over(&module, self.source.carrier())?;
        let k_c = tensor_map(&kc, &t2.ab_c, &inclusion, &self.id(self.source.dim()));
        let rho = factor_through(&k_c, &rho_x.matmul(&inclusion), "K ⊗_R C")?;
        Ok(CotensorSpace { ambient: nl, inclusion, module, rho })
    }

    /// `η_M(m) = (m₀ ⊗ 1) □ (1 ⊗ m₁)` into the cotensor of the induced comodule.
    fn unit_into(&self, m: &Bimodule, rho_m: &Matrix, cot: &CotensorSpace) -> Result<Matrix> {
        let field = self.phi.field();
        let s = self.s();
        let ms = tensor_over(m, &self.s_rs)?;
        let mc = tensor_over(m, self.source.carrier())?;
        let amb = &cot.ambient;
        let n = self.source.dim();
        let emb = mc.descend(amb.dim(), |i, c| {
            amb.pure(&ms.pure(&field.unit_vector(m.dim(), i), s.one()), &self.l.pure(s.one(), &field.unit_vector(n, c)))
        })?;
        cot.inclusion.solve_matrix(&emb.matmul(rho_m)).ok_or_else(|| witness_violation("unit does not land in the cotensor"))
    }

    /// `(n □ (s ⊗ c)) ⊗ s' ↦ n s φ(ε(c)) s'`.
    fn counit_from(&self, n: &Bimodule, cot: &CotensorSpace) -> Result<Matrix> {
        let s = self.s();
        let field = self.phi.field();
        let eps = self.source.epsilon();
        let ell = self.l.descend(s.dim(), |b, c| s.mul(&s.basis_element(b), &self.phi.apply(&eps.column(c))))?;
        let ns = tensor_over(n, &Bimodule::regular(s))?;
        let mu = right_unitor(&ns)?.matmul(&tensor_map(&cot.ambient, &ns, &self.id(n.dim()), &ell)).matmul(&cot.inclusion);
        let ks = tensor_over(&cot.module, &self.s_rs)?;
        ks.descend(n.dim(), |i, j| n.act_right(&field.unit_vector(s.dim(), j)).mul_vec(&mu.column(i)))
    }

    /// The left `C`-coaction on `GFC`, a kernel inside `(C ⊗_R S) ⊗_S L`.
    fn left_coaction_on_gfc(&self, cs: &TensorProduct, cot: &CotensorSpace) -> Result<(TensorProduct, Matrix)> {
        let c = self.source.carrier();
        let t = TripleTensor::new(c, c, &self.s_rs)?;
        let lambda_cs = t.assoc().matmul(&tensor_map(cs, &t.ab_c, &self.source.delta(), &self.id(self.s().dim())));
        let t3 = TripleTensor::new(c, &cs.module, &self.l.module)?;
        let lambda_x = t3.assoc().matmul(&tensor_map(&cot.ambient, &t3.ab_c, &lambda_cs, &self.id(self.l.dim())));
        let ck = tensor_over(c, &cot.module)?;
        let c_k = tensor_map(&ck, &t3.a_bc, &self.id(c.dim()), &cot.inclusion);
        let lambda_k = factor_through(&c_k, &lambda_x.matmul(&cot.inclusion), "C ⊗_R K")?;
        Ok((ck, lambda_k))
    }

    /// `GFC` as a `C`-bicomodule, the unit `η_C`, and the `C`-bicomodule maps `GFC → C`.
    pub fn gfc_bicomodule_maps(&self) -> Result<(CotensorSpace, Matrix, HomSpace)> {
        let c = self.source.carrier();
        let delta = self.source.delta();
        let fc = self.induce(c, &delta)?;
        let cot = self.cotensor(&fc.tensor.module, &fc.rho)?;
        let eta = self.unit_into(c, &delta, &cot)?;
        let (ck, lambda_k) = self.left_coaction_on_gfc(&fc.tensor, &cot)?;
        let kc = tensor_over(&cot.module, c)?;
        let cc = self.source.cc();
        let id_c = self.id(c.dim());
        let hom = hom_space(&cot.module, c, Sides::Both)?.constrain(|nu| {
            let right = &delta.matmul(nu) - &tensor_map(&kc, cc, nu, &id_c).matmul(&cot.rho);
            let left = &delta.matmul(nu) - &tensor_map(&ck, cc, &id_c, nu).matmul(&lambda_k);
            let mut v = right.to_vec();
            v.extend(left.to_vec());
            v
        });
        Ok((cot, eta, hom))
    }

    /// `ν_C : GFC → C`, a `C`-bicomodule map with `η_C ∘ ν_C = id`.
    pub fn induction_witness(&self) -> Result<Option<Matrix>> {
        let (cot, eta, hom) = self.gfc_bicomodule_maps()?;
        let id = self.id(cot.dim());
        Ok(hom.solve(|nu| eta.matmul(nu).to_vec(), &id.to_vec()))
    }

    /// `S ⊗_R C ⊗_R S` as an `S`-bimodule.
    pub fn scs(&self) -> Result<TensorProduct> {
        tensor_over(&self.l.module, &self.s_rs)
    }

    /// `Φ̂(s ⊗ c ⊗ s') = s Φ(c) s'`.
    pub fn phi_hat(&self) -> Result<Matrix> {
        let d = self.target.carrier();
        let s = self.s();
        let ell = self.l.descend(d.dim(), |b, c| d.act_left(&s.basis_element(b)).mul_vec(&self.map.column(c)))?;
        self.scs()?.descend(d.dim(), |i, j| d.act_right(&s.basis_element(j)).mul_vec(&ell.column(i)))
    }

    /// The `D`-bicomodule maps `D → S ⊗_R C ⊗_R S`.
    pub fn scs_bicomodule_maps(&self) -> Result<(TensorProduct, HomSpace)> {
        let field = self.phi.field();
        let s = self.s();
        let d = self.target.carrier();
        let scs = self.scs()?;
        let id_s = self.id(s.dim());
        let t = TripleTensor::new(d, &self.l.module, &self.s_rs)?;
        let lambda = t.assoc().matmul(&tensor_map(&scs, &t.ab_c, &self.lambda_l, &id_s));
        let tl = TripleTensor::new(&self.l.module, self.source.carrier(), &self.s_rs)?;
        let ld = tensor_over(&self.l.module, &self.d_rs)?;
        let l_theta = tensor_map(&tl.a_bc, &ld, &self.id(self.l.dim()), &self.theta(&tl.bc)?);
        let scsd = tensor_over(&scs.module, d)?;
        let omega =
            ld.descend(scsd.dim(), |i, j| scsd.pure(&scs.pure(&field.unit_vector(self.l.dim(), i), s.one()), &field.unit_vector(d.dim(), j)))?;
        let rho = omega.matmul(&l_theta).matmul(&tl.assoc()).matmul(&tensor_map(&scs, &tl.ab_c, &self.rho_l, &id_s));
        let dd = self.target.cc();
        let delta = self.target.delta();
        let id_d = self.id(d.dim());
        let hom = hom_space(d, &scs.module, Sides::Both)?.constrain(|psi| {
            let left = &lambda.matmul(psi) - &tensor_map(dd, &t.a_bc, &id_d, psi).matmul(&delta);
            let right = &rho.matmul(psi) - &tensor_map(dd, &scsd, psi, &id_d).matmul(&delta);
            let mut v = left.to_vec();
            v.extend(right.to_vec());
            v
        });
        Ok((scs, hom))
    }

    /// `Ψ̂ : D → S ⊗_R C ⊗_R S`, a `D`-bicomodule map with `Ψ̂ ∘ Φ̂ = id`.
    pub fn cotensor_witness(&self) -> Result<Option<Matrix>> {
        let (scs, hom) = self.scs_bicomodule_maps()?;
        let phi_hat = self.phi_hat()?;
        let id = self.id(scs.dim());
        Ok(hom.solve(|psi| psi.matmul(&phi_hat).to_vec(), &id.to_vec()))
    }
}

/// The adjunction `− ⊗_R S ⊣ − □_D (S ⊗_R C)` on explicit comodules.
#[derive(Clone, Debug)]
pub struct MorphismAdjunction {
    m: CoringMorphism,
}

impl MorphismAdjunction {
    pub fn new(m: &CoringMorphism) -> Self {
        Self { m: m.clone() }
    }

    fn cot(&self, n: &Comodule) -> Result<CotensorSpace> {
        self.m.cotensor(n.module(), n.rho())
    }

    /// `ν_M = r_M ∘ (M ⊗ ε∘ν_C) ∘ κ_M`, where `κ_M` applies `ρ_M` to the first factor.
    pub fn nu_from_witness(&self, nu_c: &Matrix, m: &Comodule) -> Result<Matrix> {
        let mm = &self.m;
        let c = mm.source.carrier();
        let module = m.module();
        let fm = mm.induce(module, m.rho())?;
        let cot_m = mm.cotensor(&fm.tensor.module, &fm.rho)?;
        let fc = mm.induce(c, &mm.source.delta())?;
        let cot_c = mm.cotensor(&fc.tensor.module, &fc.rho)?;
        let t1 = TripleTensor::new(module, c, &mm.s_rs)?;
        let psi = t1.assoc().matmul(&tensor_map(&fm.tensor, &t1.ab_c, m.rho(), &mm.id(mm.s().dim())));
        let t2 = TripleTensor::new(module, &fc.tensor.module, &mm.l.module)?;
        let kappa = t2.assoc().matmul(&tensor_map(&cot_m.ambient, &t2.ab_c, &psi, &mm.id(mm.l.dim())));
        let mk = tensor_over(module, &cot_c.module)?;
        let m_k = tensor_map(&mk, &t2.a_bc, &mm.id(module.dim()), &cot_c.inclusion);
        let y = factor_through(&m_k, &kappa.matmul(&cot_m.inclusion), "M ⊗_R K")?;
        let mr = tensor_over(module, &Bimodule::regular(mm.source.base()))?;
        let eps_nu = mm.source.epsilon().matmul(nu_c);
        Ok(right_unitor(&mr)?.matmul(&tensor_map(&mk, &mr, &mm.id(module.dim()), &eps_nu)).matmul(&y))
    }

    /// `ξ_N`: `(N ⊗ Ψ̂) ∘ ρ_N` read inside `(N □_D L) ⊗_R S`.
    pub fn xi_from_witness(&self, psi: &Matrix, n: &Comodule) -> Result<Matrix> {
        let mm = &self.m;
        let module = n.module();
        let cot = self.cot(n)?;
        let scs = mm.scs()?;
        let nd = tensor_over(module, mm.target.carrier())?;
        let nscs = tensor_over(module, &scs.module)?;
        let n_psi = tensor_map(&nd, &nscs, &mm.id(module.dim()), psi);
        let t = TripleTensor::new(module, &mm.l.module, &mm.s_rs)?;
        let v = t.assoc_inv().matmul(&n_psi).matmul(n.rho());
        let ks = tensor_over(&cot.module, &mm.s_rs)?;
        let k_s = tensor_map(&ks, &t.ab_c, &cot.inclusion, &mm.id(mm.s().dim()));
        factor_through(&k_s, &v, "K ⊗_R S")
    }
}

impl Adjunction for MorphismAdjunction {
    type Src = Comodule;
    type Tgt = Comodule;

    fn left(&self, m: &Comodule) -> Result<Comodule> {
        let fm = self.m.induce(m.module(), m.rho())?;
        Comodule::new(&self.m.target, fm.tensor.module, fm.rho)
    }

    fn left_map(&self, a: &Comodule, b: &Comodule, f: &Matrix) -> Result<Matrix> {
        let s = &self.m.s_rs;
        Ok(tensor_map(&tensor_over(a.module(), s)?, &tensor_over(b.module(), s)?, f, &self.m.id(s.dim())))
    }

    fn right(&self, n: &Comodule) -> Result<Comodule> {
        let cot = self.cot(n)?;
        Comodule::new(&self.m.source, cot.module, cot.rho)
    }

    fn right_map(&self, a: &Comodule, b: &Comodule, g: &Matrix) -> Result<Matrix> {
        let (ka, kb) = (self.cot(a)?, self.cot(b)?);
        let gl = tensor_map(&ka.ambient, &kb.ambient, g, &self.m.id(self.m.l.dim())).matmul(&ka.inclusion);
        kb.inclusion.solve_matrix(&gl).ok_or_else(|| witness_violation("G(g) leaves the cotensor"))
    }

    fn unit(&self, m: &Comodule) -> Result<Matrix> {
        let fm = self.m.induce(m.module(), m.rho())?;
        let cot = self.m.cotensor(&fm.tensor.module, &fm.rho)?;
        self.m.unit_into(m.module(), m.rho(), &cot)
    }

    fn counit(&self, n: &Comodule) -> Result<Matrix> {
        self.m.counit_from(n.module(), &self.cot(n)?)
    }

    fn hom_src(&self, a: &Comodule, b: &Comodule) -> Result<HomSpace> {
        colinear_maps(a, b)
    }

    fn hom_tgt(&self, a: &Comodule, b: &Comodule) -> Result<HomSpace> {
        colinear_maps(a, b)
    }
}

fn right_simples(alg: &Arc<Algebra>) -> Result<Vec<Bimodule>> {
    let op = Arc::new(alg.opposite());
    Ok(simple_modules(&op)?.into_iter().map(|m| m.swap_sides().forget_left()).collect())
}

/// The coring itself and the cofree comodules on the simple right modules.
pub fn comodule_test_family(coring: &Coring) -> Result<Family<Comodule>> {
    let mut objects = vec![("coring".to_string(), coring.regular_comodule()?)];
    for (i, s) in right_simples(coring.base())?.into_iter().enumerate() {
        objects.push((format!("cofree(simple[{i}])"), cofree(coring, &s)?));
    }
    Ok(Family::new(objects))
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionReport {
    pub naturally_full: bool,
    /// `C`-bicomodule map `ν_C : GFC → C` with `η_C ∘ ν_C = id`.
    pub witness_nu: Option<Matrix>,
    pub gfc_dim: usize,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CotensorSideReport {
    pub naturally_full: bool,
    /// `D`-bicomodule map `Ψ̂ : D → S ⊗_R C ⊗_R S` with `Ψ̂ ∘ Φ̂ = id`.
    pub witness_psi: Option<Matrix>,
    pub phi_hat_injective: bool,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoringMorphismReport {
    pub induction: InductionReport,
    pub cotensor: CotensorSideReport,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentCriteria(msg.into())
}

/// Natural fullness of `− ⊗_R S` on right comodules.
pub fn analyze_f_naturally_full(m: &CoringMorphism, opts: &Options) -> Result<InductionReport> {
    let (cot, eta, hom) = m.gfc_bicomodule_maps()?;
    let id = m.id(cot.dim());
    let nu = hom.solve(|nu| eta.matmul(nu).to_vec(), &id.to_vec());
    let conditions = vec![Condition::exact(
        "bicomodule_unit_retraction",
        nu.is_some(),
        format!("C-bicomodule ν_C : GFC → C with η_C∘ν_C = id, dim GFC = {}", cot.dim()),
    )];
    let mut evidence = None;
    if opts.family_checks {
        let a = MorphismAdjunction::new(m);
        let fam = comodule_test_family(&m.source)?;
        let per_object = adj::left_full_on_family(&a, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 5);
        let (splitting, family_system) = match &nu {
            Some(nu_c) => {
                if per_object.iter().any(|(_, ok)| !ok) {
                    return Err(inconsistent("induction: ν_C found but a unit component does not split"));
                }
                let w = adj::verify_left_splitting(
                    &a,
                    &fam,
                    |x| a.nu_from_witness(nu_c, x),
                    "bicomodule_unit_retraction",
                    opts.naturality_samples,
                    &mut rng,
                )?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::left_family_system(&a, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(InductionReport { naturally_full: nu.is_some(), witness_nu: nu, gfc_dim: cot.dim(), conditions, evidence })
}

/// Natural fullness of `− □_D (S ⊗_R C)` on right comodules.
pub fn analyze_g_naturally_full(m: &CoringMorphism, opts: &Options) -> Result<CotensorSideReport> {
    let psi = m.cotensor_witness()?;
    let phi_hat = m.phi_hat()?;
    let phi_hat_injective = phi_hat.is_injective();
    if psi.is_some() && !phi_hat_injective {
        return Err(inconsistent("cotensor side: Ψ̂ found but Φ̂ is not injective"));
    }
    let conditions = vec![Condition::exact(
        "bicomodule_retraction_of_phi_hat",
        psi.is_some(),
        format!("D-bicomodule Ψ̂ : D → S⊗_R C⊗_R S with Ψ̂∘Φ̂ = id, rank Φ̂ = {}", phi_hat.rank()),
    )];
    let mut evidence = None;
    if opts.family_checks {
        let a = MorphismAdjunction::new(m);
        let fam = comodule_test_family(&m.target)?;
        let per_object = adj::right_full_on_family(&a, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 6);
        let (splitting, family_system) = match &psi {
            Some(psi) => {
                if per_object.iter().any(|(_, ok)| !ok) {
                    return Err(inconsistent("cotensor side: Ψ̂ found but a counit component does not cosplit"));
                }
                let w = adj::verify_right_splitting(
                    &a,
                    &fam,
                    |x| a.xi_from_witness(psi, x),
                    "bicomodule_retraction_of_phi_hat",
                    opts.naturality_samples,
                    &mut rng,
                )?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::right_family_system(&a, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(CotensorSideReport { naturally_full: psi.is_some(), witness_psi: psi, phi_hat_injective, conditions, evidence })
}

pub fn analyze_coring_morphism(m: &CoringMorphism, opts: &Options) -> Result<CoringMorphismReport> {
    Ok(CoringMorphismReport { induction: analyze_f_naturally_full(m, opts)?, cotensor: analyze_g_naturally_full(m, opts)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corings::{analyze_cotensor_functor, analyze_forgetful_functor, dual_coalgebra, sweedler_coring};
    use crate::exactla::PrimeField;
    use crate::scalars::{analyze_extension, build_triangular_example, is_ring_epimorphism};

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn proj(k: PrimeField) -> AlgebraMorphism {
        let r = Arc::new(Algebra::split(k, 2));
        let s = Arc::new(Algebra::ground(k));
        AlgebraMorphism::new(r, s, Matrix::from_rows(k, &[vec![1, 0]]).unwrap()).unwrap()
    }

    fn f4_inclusion() -> AlgebraMorphism {
        let k = f2();
        let s = Arc::new(Algebra::polynomial_quotient(k, &[1, 1]));
        AlgebraMorphism::unit_map(s)
    }

    fn quick() -> Options {
        Options { family_checks: true, ..Options::default() }
    }

    #[test]
    fn reductions_validate() {
        let phi = f4_inclusion();
        assert!(CoringMorphism::from_algebra_map(&phi).is_ok());
        let c = sweedler_coring(&phi).unwrap();
        assert!(CoringMorphism::counit_morphism(&c).is_ok());
    }

    #[test]
    fn broken_counit_square_is_reported() {
        let phi = f4_inclusion();
        let c = trivial_coring(&phi.source).unwrap();
        let d = trivial_coring(&phi.target).unwrap();
        let bad = Matrix::zeros(f2(), 2, 1);
        let v = validate_coring_morphism(&c, &d, &phi, &bad);
        assert!(v.iter().any(|x| x.law.contains("counit")));
    }

    #[test]
    fn identity_morphism_is_naturally_full_both_ways() {
        let phi = f4_inclusion();
        let c = sweedler_coring(&phi).unwrap();
        let m = CoringMorphism::identity(&c).unwrap();
        let r = analyze_coring_morphism(&m, &quick()).unwrap();
        assert!(r.induction.naturally_full);
        assert!(r.cotensor.naturally_full);
        assert!(r.cotensor.phi_hat_injective);
    }

    #[test]
    fn cotensor_with_identity_recovers_the_comodule() {
        let c = dual_coalgebra(&Algebra::split(f2(), 2)).unwrap();
        let m = CoringMorphism::identity(&c).unwrap();
        for (_, n) in comodule_test_family(&c).unwrap().objects {
            let cot = m.cotensor(n.module(), n.rho()).unwrap();
            assert_eq!(cot.dim(), n.dim());
        }
    }

    #[test]
    fn algebra_map_reduction_matches_scalars() {
        let k = f2();
        let (_, tri) = build_triangular_example(k);
        for phi in [proj(k), f4_inclusion(), tri] {
            let m = CoringMorphism::from_algebra_map(&phi).unwrap();
            let r = analyze_coring_morphism(&m, &quick()).unwrap();
            assert_eq!(r.induction.naturally_full, analyze_extension(&phi, &quick()).unwrap().naturally_full);
            assert_eq!(r.cotensor.naturally_full, is_ring_epimorphism(&phi).unwrap().epimorphism);
        }
    }

    #[test]
    fn counit_reduction_matches_coring_verdicts() {
        let k = f2();
        let (_, tri) = build_triangular_example(k);
        let corings = [
            sweedler_coring(&proj(k)).unwrap(),
            sweedler_coring(&f4_inclusion()).unwrap(),
            sweedler_coring(&tri).unwrap(),
            dual_coalgebra(&Algebra::split(k, 2)).unwrap(),
            trivial_coring(&Arc::new(Algebra::upper_triangular(k))).unwrap(),
        ];
        for c in &corings {
            let m = CoringMorphism::counit_morphism(c).unwrap();
            let r = analyze_coring_morphism(&m, &quick()).unwrap();
            assert_eq!(r.induction.naturally_full, analyze_forgetful_functor(c, &quick()).unwrap().naturally_full);
            assert_eq!(r.cotensor.naturally_full, analyze_cotensor_functor(c, &quick()).unwrap().naturally_full);
        }
    }

    #[test]
    fn triangle_identities_hold() {
        let k = f2();
        let (_, tri) = build_triangular_example(k);
        for m in
            [CoringMorphism::from_algebra_map(&tri).unwrap(), CoringMorphism::counit_morphism(&sweedler_coring(&f4_inclusion()).unwrap()).unwrap()]
        {
            let a = MorphismAdjunction::new(&m);
            let src = comodule_test_family(m.source()).unwrap();
            let tgt = comodule_test_family(m.target()).unwrap();
            adj::triangle_identities(&a, &src, &tgt).unwrap();
            for (_, x) in &src.objects {
                let gf = a.right(&a.left(x).unwrap()).unwrap();
                assert!(gf.validate(m.source()).is_empty());
            }
            for (_, y) in &tgt.objects {
                assert!(a.right(y).unwrap().validate(m.source()).is_empty());
            }
        }
    }
}

//! Induction `M ⊗_R −` and coinduction `Hom_S(M, −)` along an
//! `(S, R)`-bimodule `M`.
//!
//! The functors form an adjunction `R-mod ⇄ S-mod` with unit
//! `η_P(p) = (m ↦ m ⊗ p)` and counit `ε_Q(m ⊗ f) = (m)f`. Maps are written
//! on the right of their arguments where that reads more naturally; the
//! translation to matrices is the table in [`crate::modrep`].
//!
//! Coinduction is naturally full exactly when some `z = Σ m_i ⊗ f_i` in
//! `(M ⊗_R *M)^S` satisfies the expansion identity
//! `m ⊗ id_M = Σ m_i ⊗ (?)f_i m` in `M ⊗_R End_S(M)` for every `m`, where
//! `(?)f m` is the endomorphism `x ↦ ((x)f) m`. When `M` is finitely
//! generated projective over `S`, induction is naturally full exactly when
//! `χ : R → End_S(M)` has an `R`-bimodule section.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::AlgebraMorphism;
use crate::error::{check, Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::modrep::{
    dual_module, endomorphism_algebra, fgp_dual_basis, hom_module, hom_space, invariants, is_generator, tensor_map, tensor_over, trace_ideal,
    Bimodule, EndomorphismAlgebra, HomSpace, Sides, TensorProduct,
};
use crate::oracle::adjunction::{self as adj, Adjunction, Family};
use crate::oracle::family::left_module_family;
use crate::report::{FamilyEvidence, Options, SplittingSummary};
use crate::scalars::{is_ring_epimorphism, section_of};

/// `dim Q x dim S` matrix `s ↦ s q`, so that `(?)f q` has matrix `N_q F`.
fn orbit_matrix(q: &Bimodule, v: &[u32]) -> Matrix {
    let cols: Vec<Vec<u32>> = q.left_action().iter().map(|a| a.mul_vec(v)).collect();
    Matrix::from_columns(q.field(), q.dim(), &cols)
}

/// The map `*M → Hom_S(M, Q)`, `f ↦ (?)f q`, in Hom coordinates.
fn expand_at(dual: &HomSpace, target: &HomSpace, q: &Bimodule, v: &[u32]) -> Result<Matrix> {
    let n = orbit_matrix(q, v);
    let cols = dual
        .basis()
        .iter()
        .map(|f| target.coords(&n.matmul(f)).ok_or_else(|| Error::WitnessViolation("(?)f q is not left-linear".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(q.field(), target.dim(), &cols))
}

/// The adjunction `M ⊗_R − ⊣ Hom_S(M, −)`.
#[derive(Clone, Debug)]
pub struct Induction {
    m: Bimodule,
}

impl Induction {
    pub fn new(m: &Bimodule) -> Result<Self> {
        check(m.validate())?;
        Ok(Self { m: m.clone() })
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.m
    }

    fn tensor(&self, p: &Bimodule) -> Result<TensorProduct> {
        tensor_over(&self.m, p)
    }

    fn hom(&self, q: &Bimodule) -> Result<(HomSpace, Bimodule)> {
        hom_module(&self.m, q)
    }

    /// `M ⊗_R *M` together with the Hom basis of `*M`.
    pub fn comatrix_tensor(&self) -> Result<(HomSpace, TensorProduct)> {
        let (dual, dual_mod) = dual_module(&self.m)?;
        Ok((dual, tensor_over(&self.m, &dual_mod)?))
    }

    /// `ξ_Q(q) = Σ m_i ⊗ (?)f_i q` for `z = Σ m_i ⊗ f_i` in `M ⊗_R *M`.
    pub fn xi_from_element(&self, z: &[u32], q: &Bimodule) -> Result<Matrix> {
        let (dual, mm) = self.comatrix_tensor()?;
        let (hom, hom_mod) = self.hom(q)?;
        let target = self.tensor(&hom_mod)?;
        let id = Matrix::identity(q.field(), self.m.dim());
        let cols = (0..q.dim())
            .map(|k| {
                let t = expand_at(&dual, &hom, q, &q.field().unit_vector(q.dim(), k))?;
                Ok(tensor_map(&mm, &target, &id, &t).mul_vec(z))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(q.field(), target.dim(), &cols))
    }

    /// `ν_P = Ẽ ∘ ψ⁻¹` where `ψ : End_S(M) ⊗_R P → Hom_S(M, M ⊗_R P)`,
    /// `(g ⊗ p) ↦ (m ↦ (m)g ⊗ p)`, and `Ẽ(g ⊗ p) = E(g) p`.
    pub fn nu_from_section(&self, end: &EndomorphismAlgebra, e_map: &Matrix, p: &Bimodule) -> Result<Matrix> {
        let field = p.field();
        let a = end.as_bimodule()?;
        let ap = tensor_over(&a, p)?;
        let mp = self.tensor(p)?;
        let (gfp, _) = self.hom(&mp.module)?;
        let dm = self.m.dim();
        let psi = ap.descend(gfp.dim(), |i, k| {
            let g = end.hom.basis()[i].clone();
            let pk = field.unit_vector(p.dim(), k);
            let cols: Vec<Vec<u32>> = (0..dm).map(|j| mp.pure(&g.column(j), &pk)).collect();
            gfp.coords(&Matrix::from_columns(field, mp.dim(), &cols)).expect("m ↦ (m)g ⊗ p is left-linear")
        })?;
        let psi_inv = psi.inverse().ok_or_else(|| Error::NotProjective("End_S(M) ⊗_R P → Hom_S(M, M ⊗_R P) is not invertible".into()))?;
        let e_tilde = ap.descend(p.dim(), |i, k| {
            let r = e_map.column(i);
            p.act_left(&r).column(k)
        })?;
        Ok(e_tilde.matmul(&psi_inv))
    }
}

impl Adjunction for Induction {
    type Src = Bimodule;
    type Tgt = Bimodule;

    fn left(&self, p: &Bimodule) -> Result<Bimodule> {
        Ok(self.tensor(p)?.module)
    }

    fn left_map(&self, p: &Bimodule, p2: &Bimodule, f: &Matrix) -> Result<Matrix> {
        let id = Matrix::identity(p.field(), self.m.dim());
        Ok(tensor_map(&self.tensor(p)?, &self.tensor(p2)?, &id, f))
    }

    fn right(&self, q: &Bimodule) -> Result<Bimodule> {
        Ok(self.hom(q)?.1)
    }

    fn right_map(&self, q: &Bimodule, q2: &Bimodule, g: &Matrix) -> Result<Matrix> {
        let (h1, _) = self.hom(q)?;
        let (h2, _) = self.hom(q2)?;
        let cols = h1
            .basis()
            .iter()
            .map(|f| h2.coords(&g.matmul(f)).ok_or_else(|| Error::DimensionMismatch("g ∘ f leaves Hom_S(M, Q')".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(q.field(), h2.dim(), &cols))
    }

    fn unit(&self, p: &Bimodule) -> Result<Matrix> {
        let field = p.field();
        let mp = self.tensor(p)?;
        let (gfp, _) = self.hom(&mp.module)?;
        let dm = self.m.dim();
        let cols = (0..p.dim())
            .map(|k| {
                let pk = field.unit_vector(p.dim(), k);
                let img: Vec<Vec<u32>> = (0..dm).map(|j| mp.pure(&field.unit_vector(dm, j), &pk)).collect();
                gfp.coords(&Matrix::from_columns(field, mp.dim(), &img)).ok_or_else(|| Error::WitnessViolation("m ↦ m ⊗ p is not left-linear".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(field, gfp.dim(), &cols))
    }

    fn counit(&self, q: &Bimodule) -> Result<Matrix> {
        let (hom, hom_mod) = self.hom(q)?;
        let t = self.tensor(&hom_mod)?;
        t.descend(q.dim(), |i, k| hom.basis()[k].column(i))
    }

    fn hom_src(&self, a: &Bimodule, b: &Bimodule) -> Result<HomSpace> {
        hom_space(a, b, Sides::Left)
    }

    fn hom_tgt(&self, a: &Bimodule, b: &Bimodule) -> Result<HomSpace> {
        hom_space(a, b, Sides::Left)
    }
}

/// Whether `z` satisfies the expansion identity in `M ⊗_R End_S(M)`.
pub fn expansion_identity_holds(m: &Bimodule, z: &[u32]) -> Result<bool> {
    let ind = Induction::new(m)?;
    Ok(expansion_residuals(&ind)?.iter().all(|(lin, rhs)| lin.mul_vec(z) == *rhs))
}

/// For each basis `m`, the linear map `z ↦ Σ m_i ⊗ (?)f_i m` and the target `m ⊗ id`.
fn expansion_residuals(ind: &Induction) -> Result<Vec<(Matrix, Vec<u32>)>> {
    let m = &ind.m;
    let field = m.field();
    let (dual, mm) = ind.comatrix_tensor()?;
    let (end, end_mod) = hom_module(m, &m.forget_right())?;
    let me = tensor_over(m, &end_mod)?;
    let id_coords = end.coords(&Matrix::identity(field, m.dim())).expect("identity is left-linear");
    let id = Matrix::identity(field, m.dim());
    let forgotten = m.forget_right();
    (0..m.dim())
        .map(|j| {
            let mj = field.unit_vector(m.dim(), j);
            let t = expand_at(&dual, &end, &forgotten, &mj)?;
            Ok((tensor_map(&mm, &me, &id, &t), me.pure(&mj, &id_coords)))
        })
        .collect()
}

/// Whether `ξ_Q ∘ ε_Q = id` for the transformation built from `z`; this is
/// the expansion identity tested against every `f : M → Q`.
pub fn expansion_at_object(m: &Bimodule, z: &[u32], q: &Bimodule) -> Result<bool> {
    let ind = Induction::new(m)?;
    let xi = ind.xi_from_element(z, q)?;
    Ok(xi.matmul(&ind.counit(q)?).is_identity())
}

#[derive(Clone, Debug, Serialize)]
pub struct CoinductionReport {
    pub naturally_full: bool,
    /// `z` in coordinates of `M ⊗_R *M`.
    pub witness_z: Option<Vec<u32>>,
    pub invariant_dim: usize,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InductionReport {
    pub naturally_full: bool,
    /// `E : End_S(M) → R` with `χ ∘ E = id`.
    pub witness_section: Option<Matrix>,
    pub central_idempotent: Option<Vec<u32>>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// `e = Σ (m_i) f_i`, present with a coinduction witness.
    pub central_idempotent: Option<Vec<u32>>,
    /// `M` generates over the corner `eSe`.
    pub generator_over_corner: Option<bool>,
    pub generator: bool,
    pub chi_epimorphism: bool,
    /// Present when `M` is a generator and `χ` a ring epimorphism: every
    /// tested counit component is bijective.
    pub fully_faithful_coinduction: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleReport {
    pub coinduction: CoinductionReport,
    /// Absent when `M` is not finitely generated projective over `S`.
    pub induction: Option<InductionReport>,
    pub structure: StructureReport,
    pub notes: Vec<String>,
}

fn left_s_family(m: &Bimodule, seed: u64) -> Result<Family<Bimodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc01d);
    let extras = if m.dim() > 0 { vec![("bimodule".to_string(), m.forget_right())] } else { vec![] };
    left_module_family(m.left_algebra(), extras, &mut rng)
}

fn left_r_family(m: &Bimodule, seed: u64) -> Result<Family<Bimodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1dc0);
    left_module_family(m.right_algebra(), vec![], &mut rng)
}

/// Solves the expansion identity jointly with membership in `(M ⊗_R *M)^S`.
pub fn coinduction_witness(m: &Bimodule) -> Result<(Option<Vec<u32>>, usize)> {
    let ind = Induction::new(m)?;
    let (_, mm) = ind.comatrix_tensor()?;
    let inv = invariants(&mm.module)?;
    let field = m.field();
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    for (lin, target) in expansion_residuals(&ind)? {
        blocks.push(lin.matmul(inv.basis()));
        rhs.extend(target);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(field, inv.dim(), &refs);
    Ok((system.solve(&rhs).map(|y| inv.basis().mul_vec(&y)), inv.dim()))
}

pub fn analyze_coinduction(m: &Bimodule, opts: &Options) -> Result<CoinductionReport> {
    let ind = Induction::new(m)?;
    let (witness_z, invariant_dim) = coinduction_witness(m)?;
    let mut evidence = None;
    if opts.family_checks {
        let fam = left_s_family(m, opts.seed)?;
        let per_object = adj::right_full_on_family(&ind, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 2);
        let (splitting, family_system) = match &witness_z {
            Some(z) => {
                if per_object.iter().any(|(_, ok)| !ok) {
                    return Err(Error::InconsistentCriteria("coinduction: witness found but a counit component does not split".into()));
                }
                let w =
                    adj::verify_right_splitting(&ind, &fam, |q| ind.xi_from_element(z, q), "expansion_identity", opts.naturality_samples, &mut rng)?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::right_family_system(&ind, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(CoinductionReport { naturally_full: witness_z.is_some(), witness_z, invariant_dim, evidence })
}

pub fn analyze_induction(m: &Bimodule, opts: &Options) -> Result<InductionReport> {
    let ind = Induction::new(m)?;
    if fgp_dual_basis(&m.forget_right())?.is_none() {
        return Err(Error::NotProjective("M is not projective as a left module".into()));
    }
    let end = endomorphism_algebra(m)?;
    let section = section_of(&end.chi)?;
    let r = m.right_algebra();
    let central_idempotent = match &section {
        Some(e_map) => {
            let e = e_map.mul_vec(end.algebra.one());
            let corner = crate::scalars::corner(r, &e);
            let ok =
                r.is_central(&e) && r.is_idempotent(&e) && corner.dim() == end.algebra.dim() && corner.image(&end.chi.matrix).dim() == corner.dim();
            if !ok {
                return Err(Error::InconsistentCriteria("induction: E(1) does not split off End_S(M)".into()));
            }
            Some(e)
        }
        None => None,
    };
    let mut evidence = None;
    if opts.family_checks {
        let fam = left_r_family(m, opts.seed)?;
        let per_object = adj::left_full_on_family(&ind, &fam)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 3);
        let (splitting, family_system) = match &section {
            Some(e_map) => {
                if per_object.iter().any(|(_, ok)| !ok) {
                    return Err(Error::InconsistentCriteria("induction: section found but a unit component does not cosplit".into()));
                }
                let w = adj::verify_left_splitting(
                    &ind,
                    &fam,
                    |p| ind.nu_from_section(&end, e_map, p),
                    "endomorphism_section",
                    opts.naturality_samples,
                    &mut rng,
                )?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::left_family_system(&ind, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }
    Ok(InductionReport { naturally_full: section.is_some(), witness_section: section, central_idempotent, evidence })
}

/// `S` modulo the ideal generated by `1 − e`, with `M` as a module over it.
fn corner_module(m: &Bimodule, e: &[u32]) -> Result<Option<Bimodule>> {
    let s = m.left_algebra();
    let field = m.field();
    let complement = field.sub_vec(s.one(), e);
    let ideal = s.ideal_generated(&[complement]);
    if ideal.dim() == s.dim() {
        return Ok(None);
    }
    let (s1, proj) = s.quotient(&ideal)?;
    let actions = (0..s1.dim())
        .map(|i| {
            let pre = proj.matrix.solve(&field.unit_vector(s1.dim(), i)).expect("quotient map is onto");
            m.act_left(&pre)
        })
        .collect();
    Ok(Some(Bimodule::left_module(s1, actions)?))
}

/// Consequences of a coinduction witness, and the generator criterion for
/// full faithfulness of coinduction.
pub fn structural_consequences(m: &Bimodule, witness_z: Option<&[u32]>) -> Result<StructureReport> {
    let ind = Induction::new(m)?;
    let s = m.left_algebra();
    let field = m.field();
    let mut central_idempotent = None;
    let mut generator_over_corner = None;
    if let Some(z) = witness_z {
        let (dual, mm) = ind.comatrix_tensor()?;
        let eval = mm.descend(s.dim(), |a, b| dual.basis()[b].column(a))?;
        let e = eval.mul_vec(z);
        if !(s.is_central(&e) && s.is_idempotent(&e)) {
            return Err(Error::WitnessViolation("e = Σ (m_i)f_i is not a central idempotent".into()));
        }
        if !m.act_left(&e).is_identity() {
            return Err(Error::WitnessViolation("e does not act as the identity on M".into()));
        }
        let se = Subspace::from_vectors(field, s.dim(), &(0..s.dim()).map(|i| s.mul(&s.basis_element(i), &e)).collect::<Vec<_>>());
        if !trace_ideal(&m.forget_right())?.same_as(&se) {
            return Err(Error::WitnessViolation("the trace ideal of M differs from S e".into()));
        }
        generator_over_corner = Some(match corner_module(m, &e)? {
            Some(m1) => is_generator(&m1)?,
            None => true,
        });
        central_idempotent = Some(e);
    }
    let generator = is_generator(&m.forget_right())?;
    let end = endomorphism_algebra(m)?;
    let chi_epimorphism = is_ring_epimorphism(&end.chi)?.epimorphism;
    let mut fully_faithful = None;
    if generator && chi_epimorphism {
        let objects = [Bimodule::left_regular(s), m.forget_right()];
        let all = objects.iter().map(|q| Ok(ind.counit(q)?.is_bijective())).collect::<Result<Vec<bool>>>()?;
        if !all.iter().all(|&b| b) {
            return Err(Error::WitnessViolation("generator with epimorphic χ but a counit component is not bijective".into()));
        }
        if witness_z.is_none() {
            return Err(Error::InconsistentCriteria("generator with epimorphic χ but coinduction is not naturally full".into()));
        }
        fully_faithful = Some(true);
    }
    Ok(StructureReport { central_idempotent, generator_over_corner, generator, chi_epimorphism, fully_faithful_coinduction: fully_faithful })
}

pub fn analyze_bimodule(m: &Bimodule, opts: &Options) -> Result<BimoduleReport> {
    let coinduction = analyze_coinduction(m, opts)?;
    let mut notes = Vec::new();
    let induction = match analyze_induction(m, opts) {
        Ok(r) => Some(r),
        Err(Error::NotProjective(msg)) => {
            notes.push(format!("induction not analyzed: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let structure = structural_consequences(m, coinduction.witness_z.as_deref())?;
    Ok(BimoduleReport { coinduction, induction, structure, notes })
}

/// Extension of scalars along `χ : R → End_S(M)`.
pub fn chi_of(m: &Bimodule) -> Result<AlgebraMorphism> {
    Ok(endomorphism_algebra(m)?.chi)
}

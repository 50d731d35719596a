//! Restriction and extension of scalars along an algebra map `φ : R → S`.
//!
//! Restriction `φ_* : S-mod → R-mod` is right adjoint to extension
//! `S ⊗_R − : R-mod → S-mod`, with unit `m ↦ 1 ⊗ m` and counit
//! `s ⊗ n ↦ s n`.
//!
//! Restriction is full, equivalently naturally full, exactly when `φ` is a
//! ring epimorphism. Six equivalent forms of this are evaluated: equal Hom
//! spaces, the epimorphism test, equal invariants, centrality of `1 ⊗ 1` in
//! `S ⊗_R S`, bijectivity of the multiplication `S ⊗_R S → S`, and
//! bijectivity of every counit component. Extension is naturally full
//! exactly when `φ` has an `R`-bimodule section `E : S → R` with
//! `φ ∘ E = id_S`; then `e = E(1)` is a central idempotent with `S ≅ R e`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::{check, Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::modrep::{hom_space, invariants, tensor_map, tensor_over, Bimodule, Sides, TensorProduct};
use crate::oracle::adjunction::{self as adj, Adjunction, Family};
use crate::oracle::family::left_module_family;
use crate::report::{Condition, FamilyEvidence, Options, SplittingSummary};

/// `S` as an `(S, R)`-bimodule through `φ`.
pub fn target_as_left_right(phi: &AlgebraMorphism) -> Result<Bimodule> {
    Bimodule::regular(&phi.target).restrict(None, Some(phi))
}

/// `S` as an `(R, S)`-bimodule through `φ`.
pub fn target_as_right_left(phi: &AlgebraMorphism) -> Result<Bimodule> {
    Bimodule::regular(&phi.target).restrict(Some(phi), None)
}

/// `S ⊗_R S` as an `S`-bimodule.
pub fn sweedler_tensor(phi: &AlgebraMorphism) -> Result<TensorProduct> {
    tensor_over(&target_as_left_right(phi)?, &target_as_right_left(phi)?)
}

/// The multiplication `S ⊗_R S → S`.
pub fn multiplication_map(phi: &AlgebraMorphism, ss: &TensorProduct) -> Result<Matrix> {
    let s = &phi.target;
    ss.descend(s.dim(), |i, k| s.structure(i, k).to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EpiVerdict {
    pub epimorphism: bool,
    pub kernel_dim: usize,
}

/// Ring epimorphism test: the multiplication `S ⊗_R S → S` has zero kernel.
pub fn is_ring_epimorphism(phi: &AlgebraMorphism) -> Result<EpiVerdict> {
    check(phi.validate())?;
    let ss = sweedler_tensor(phi)?;
    let kernel_dim = multiplication_map(phi, &ss)?.kernel().dim();
    Ok(EpiVerdict { epimorphism: kernel_dim == 0, kernel_dim })
}

/// The scalar extension adjunction, left adjoint `S ⊗_R −`.
#[derive(Clone, Debug)]
pub struct ScalarExtension {
    phi: AlgebraMorphism,
    s_r: Bimodule,
}

impl ScalarExtension {
    pub fn new(phi: &AlgebraMorphism) -> Result<Self> {
        Ok(Self { phi: phi.clone(), s_r: target_as_left_right(phi)? })
    }

    pub fn phi(&self) -> &AlgebraMorphism {
        &self.phi
    }

    fn tensor(&self, m: &Bimodule) -> Result<TensorProduct> {
        tensor_over(&self.s_r, m)
    }

    /// `ν_M(s ⊗ m) = E(s) m` for a bimodule section `E : S → R`.
    pub fn nu_from_section(&self, e_map: &Matrix, m: &Bimodule) -> Result<Matrix> {
        let t = self.tensor(m)?;
        t.descend(m.dim(), |i, k| m.act_left(&e_map.column(i)).column(k))
    }

    /// `ξ_N(n) = Σ e¹ ⊗ e² n` for `e ∈ S ⊗_R S`.
    pub fn xi_from_element(&self, ss: &TensorProduct, e: &[u32], n: &Bimodule) -> Result<Matrix> {
        let t = self.tensor(&n.restrict(Some(&self.phi), None)?)?;
        let lift = ss.lift(e);
        let ds = self.phi.target.dim();
        let field = n.field();
        let cols: Vec<Vec<u32>> = (0..n.dim())
            .map(|k| {
                let nk = field.unit_vector(n.dim(), k);
                let mut acc = vec![0; t.dim()];
                for (idx, &x) in lift.iter().enumerate().filter(|(_, &x)| x != 0) {
                    let (i, j) = (idx / ds, idx % ds);
                    let v = t.pure(&field.unit_vector(ds, i), &n.left_action()[j].mul_vec(&nk));
                    field.axpy(&mut acc, x, &v);
                }
                acc
            })
            .collect();
        Ok(Matrix::from_columns(field, t.dim(), &cols))
    }
}

impl Adjunction for ScalarExtension {
    type Src = Bimodule;
    type Tgt = Bimodule;

    fn left(&self, m: &Bimodule) -> Result<Bimodule> {
        Ok(self.tensor(m)?.module)
    }

    fn left_map(&self, m: &Bimodule, m2: &Bimodule, f: &Matrix) -> Result<Matrix> {
        let id = Matrix::identity(m.field(), self.s_r.dim());
        Ok(tensor_map(&self.tensor(m)?, &self.tensor(m2)?, &id, f))
    }

    fn right(&self, n: &Bimodule) -> Result<Bimodule> {
        n.restrict(Some(&self.phi), None)
    }

    fn right_map(&self, _: &Bimodule, _: &Bimodule, g: &Matrix) -> Result<Matrix> {
        Ok(g.clone())
    }

    fn unit(&self, m: &Bimodule) -> Result<Matrix> {
        let t = self.tensor(m)?;
        let one = self.phi.target.one().to_vec();
        let cols: Vec<Vec<u32>> = (0..m.dim()).map(|k| t.pure(&one, &m.field().unit_vector(m.dim(), k))).collect();
        Ok(Matrix::from_columns(m.field(), t.dim(), &cols))
    }

    fn counit(&self, n: &Bimodule) -> Result<Matrix> {
        let t = self.tensor(&self.right(n)?)?;
        t.descend(n.dim(), |i, k| n.left_action()[i].column(k))
    }

    fn hom_src(&self, a: &Bimodule, b: &Bimodule) -> Result<crate::modrep::HomSpace> {
        hom_space(a, b, Sides::Left)
    }

    fn hom_tgt(&self, a: &Bimodule, b: &Bimodule) -> Result<crate::modrep::HomSpace> {
        hom_space(a, b, Sides::Left)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub full: bool,
    pub naturally_full: bool,
    pub epimorphism: EpiVerdict,
    /// Classical separability: some `e ∈ (S ⊗_R S)^S` multiplies to 1.
    pub separable: bool,
    /// `π(1 ⊗ 1)`, present when it is `S`-invariant.
    pub witness_unit_tensor: Option<Vec<u32>>,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub naturally_full: bool,
    pub full_on_family: Option<bool>,
    /// `E : S → R` with `φ ∘ E = id_S`, as a `dim R x dim S` matrix.
    pub witness_section: Option<Matrix>,
    pub central_idempotent: Option<Vec<u32>>,
    pub conditions: Vec<Condition>,
    pub evidence: Option<FamilyEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarsReport {
    pub restriction: RestrictionReport,
    pub extension: ExtensionReport,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentCriteria(msg.into())
}

/// Left `S`-modules for the restriction checks.
pub fn restriction_family(phi: &AlgebraMorphism, seed: u64) -> Result<Family<Bimodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1);
    left_module_family(&phi.target, vec![], &mut rng)
}

/// Left `R`-modules for the extension checks, including `S` restricted.
pub fn extension_family(phi: &AlgebraMorphism, seed: u64) -> Result<Family<Bimodule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe7e0);
    let s = Bimodule::left_regular(&phi.target).restrict(Some(phi), None)?;
    left_module_family(&phi.source, vec![("target".to_string(), s)], &mut rng)
}

/// `S`-bimodules for the invariants comparison.
fn bimodule_family(phi: &AlgebraMorphism, ss: &TensorProduct) -> Result<Vec<(String, Bimodule)>> {
    let s = &phi.target;
    let sk = tensor_over(&Bimodule::regular(s).forget_right(), &Bimodule::regular(s).forget_left())?;
    Ok(vec![("regular".into(), Bimodule::regular(s)), ("tensor_over_source".into(), ss.module.clone()), ("tensor_over_ground".into(), sk.module)])
}

fn unit_tensor(phi: &AlgebraMorphism, ss: &TensorProduct) -> Vec<u32> {
    ss.pure(phi.target.one(), phi.target.one())
}

pub fn analyze_restriction(phi: &AlgebraMorphism, opts: &Options) -> Result<RestrictionReport> {
    check(phi.validate())?;
    let s = &phi.target;
    let field = s.field();
    let ss = sweedler_tensor(phi)?;
    let mult = multiplication_map(phi, &ss)?;
    let kernel = mult.kernel();
    let epi = EpiVerdict { epimorphism: kernel.dim() == 0, kernel_dim: kernel.dim() };
    let mut conditions = vec![Condition::exact("ring_epimorphism", epi.epimorphism, format!("kernel of S⊗_R S → S has dim {}", epi.kernel_dim))];

    let one = s.one().to_vec();
    let central = (0..s.dim()).all(|i| {
        let e = s.basis_element(i);
        ss.pure(&e, &one) == ss.pure(&one, &e)
    });
    conditions.push(Condition::exact("unit_tensor_invariant", central, "s⊗1 = 1⊗s for every basis s"));

    let bijective = ss.dim() == s.dim() && mult.rank() == s.dim();
    conditions.push(Condition::exact(
        "multiplication_bijective",
        bijective,
        format!("dim S⊗_R S = {}, dim S = {}, rank = {}", ss.dim(), s.dim(), mult.rank()),
    ));
    if central != epi.epimorphism || bijective != epi.epimorphism {
        return Err(inconsistent(format!(
            "restriction: epimorphism {} / invariant unit tensor {central} / bijective multiplication {bijective}",
            epi.epimorphism
        )));
    }
    let verdict = epi.epimorphism;

    let sep_space = invariants(&ss.module)?;
    let separable =
        Matrix::from_columns(field, s.dim(), &sep_space.vectors().iter().map(|v| mult.mul_vec(v)).collect::<Vec<_>>()).solve(&one).is_some();

    let mut evidence = None;
    if opts.family_checks {
        let fam = restriction_family(phi, opts.seed)?;
        let ext = ScalarExtension::new(phi)?;

        let counit_ok = fam.objects.iter().map(|(_, n)| Ok(ext.counit(n)?.is_bijective())).collect::<Result<Vec<bool>>>()?;
        let counit_verdict = counit_ok.iter().all(|&b| b);
        conditions.push(Condition::family("counit_bijective", counit_verdict, format!("{} test modules", fam.objects.len())));

        let mut homs_equal = true;
        for (_, a) in &fam.objects {
            for (_, b) in &fam.objects {
                let over_s = hom_space(a, b, Sides::Left)?.dim();
                let over_r = hom_space(&ext.right(a)?, &ext.right(b)?, Sides::Left)?.dim();
                homs_equal &= over_s == over_r;
            }
        }
        conditions.push(Condition::family("hom_spaces_agree", homs_equal, "Hom over S equals Hom over R on test pairs"));

        let mut inv_equal = true;
        for (_, m) in bimodule_family(phi, &ss)? {
            let over_s = invariants(&m)?.dim();
            let over_r = invariants(&m.restrict(Some(phi), Some(phi))?)?.dim();
            inv_equal &= over_s == over_r;
        }
        conditions.push(Condition::family("invariants_agree", inv_equal, "M^R = M^S on test bimodules"));

        for c in &conditions[3..] {
            if verdict && !c.verdict {
                return Err(inconsistent(format!("restriction: {} fails on the family although φ is an epimorphism", c.criterion)));
            }
        }
        if !verdict && counit_verdict {
            return Err(inconsistent("restriction: every counit component is bijective, including at S, yet φ is not an epimorphism"));
        }

        let per_object = adj::right_full_on_family(&ext, &fam)?;
        let full_on_family = per_object.iter().all(|(_, b)| *b);
        if full_on_family != verdict {
            return Err(inconsistent("restriction: per-object fullness on a family containing S disagrees with the epimorphism test"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let (splitting, family_system) = if verdict {
            let e = unit_tensor(phi, &ss);
            let w = adj::verify_right_splitting(
                &ext,
                &fam,
                |n| ext.xi_from_element(&ss, &e, n),
                "unit_tensor_invariant",
                opts.naturality_samples,
                &mut rng,
            )?;
            (Some(SplittingSummary::from(&w)), None)
        } else {
            (None, Some(adj::right_family_system(&ext, &fam)?))
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }

    Ok(RestrictionReport {
        full: verdict,
        naturally_full: verdict,
        epimorphism: epi,
        separable,
        witness_unit_tensor: verdict.then(|| unit_tensor(phi, &ss)),
        conditions,
        evidence,
    })
}

/// Solves for an `R`-bimodule map `E : S → R` with `φ ∘ E = id_S`.
pub fn section_of(phi: &AlgebraMorphism) -> Result<Option<Matrix>> {
    let s_rr = Bimodule::regular(&phi.target).restrict(Some(phi), Some(phi))?;
    let hom = hom_space(&s_rr, &Bimodule::regular(&phi.source), Sides::Both)?;
    let id = Matrix::identity(phi.field(), phi.target.dim());
    Ok(hom.solve(|e| phi.matrix.matmul(e).to_vec(), &id.to_vec()))
}

/// `R e` as a subspace of `R`.
pub fn corner(r: &Algebra, e: &[u32]) -> Subspace {
    let vs: Vec<Vec<u32>> = (0..r.dim()).map(|i| r.mul(&r.basis_element(i), e)).collect();
    Subspace::from_vectors(r.field(), r.dim(), &vs)
}

pub fn analyze_extension(phi: &AlgebraMorphism, opts: &Options) -> Result<ExtensionReport> {
    check(phi.validate())?;
    let r = &phi.source;
    let section = section_of(phi)?;
    let mut conditions = vec![Condition::exact(
        "bimodule_section_of_phi",
        section.is_some(),
        if section.is_some() { "E with φ∘E = id_S found" } else { "φ∘E = id_S has no bimodule solution" },
    )];
    let mut central_idempotent = None;
    if let Some(e_map) = &section {
        let e = e_map.mul_vec(phi.target.one());
        let idem = r.is_central(&e) && r.is_idempotent(&e);
        let re = corner(r, &e);
        let iso = re.dim() == phi.target.dim() && re.image(&phi.matrix).dim() == re.dim();
        conditions.push(Condition::exact("central_idempotent_corner", idem && iso, "e = E(1) is a central idempotent and φ maps R e onto S"));
        if !(idem && iso) {
            return Err(inconsistent("extension: the section's idempotent does not split off S"));
        }
        central_idempotent = Some(e);
    }
    let verdict = section.is_some();

    let mut evidence = None;
    let mut full_on_family = None;
    if opts.family_checks {
        let ext = ScalarExtension::new(phi)?;
        let fam = extension_family(phi, opts.seed)?;
        let per_object = adj::left_full_on_family(&ext, &fam)?;
        let full = per_object.iter().all(|(_, b)| *b);
        if verdict && !full {
            return Err(inconsistent("extension: naturally full but not full on the family"));
        }
        full_on_family = Some(full);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 1);
        let (splitting, family_system) = match &section {
            Some(e_map) => {
                let w = adj::verify_left_splitting(
                    &ext,
                    &fam,
                    |m| ext.nu_from_section(e_map, m),
                    "bimodule_section_of_phi",
                    opts.naturality_samples,
                    &mut rng,
                )?;
                (Some(SplittingSummary::from(&w)), None)
            }
            None => (None, Some(adj::left_family_system(&ext, &fam)?)),
        };
        evidence = Some(FamilyEvidence { per_object, splitting, family_system });
    }

    Ok(ExtensionReport { naturally_full: verdict, full_on_family, witness_section: section, central_idempotent, conditions, evidence })
}

pub fn analyze_scalars(phi: &AlgebraMorphism, opts: &Options) -> Result<ScalarsReport> {
    let restriction = analyze_restriction(phi, opts)?;
    let extension = analyze_extension(phi, opts)?;
    if extension.naturally_full && !restriction.naturally_full {
        return Err(inconsistent("extension naturally full forces restriction naturally full"));
    }
    Ok(ScalarsReport { restriction, extension })
}

/// Whether `ξ^e_S ∘ ε_S = id` on `S ⊗_R S` for an invariant `e`; this holds
/// exactly when `e = π(1 ⊗ 1)` and that element is invariant.
pub fn xi_splitting_check(phi: &AlgebraMorphism, e: &[u32]) -> Result<bool> {
    let ss = sweedler_tensor(phi)?;
    if !invariants(&ss.module)?.contains(e) {
        return Err(Error::NotInvariant("e is not S-invariant in S⊗_R S".into()));
    }
    let ext = ScalarExtension::new(phi)?;
    let s = Bimodule::left_regular(&phi.target);
    let xi = ext.xi_from_element(&ss, e, &s)?;
    let eps = ext.counit(&s)?;
    let verdict = xi.matmul(&eps).is_identity();
    if verdict != (unit_tensor(phi, &ss) == e) {
        return Err(inconsistent("ξ^e splits ε_S but e differs from 1⊗1"));
    }
    Ok(verdict)
}

/// Upper triangular 2x2 matrices over `F_p` with the projection onto the
/// `e11` corner; extension along it is full but not naturally full.
pub fn build_triangular_example(field: PrimeField) -> (Arc<Algebra>, AlgebraMorphism) {
    let r = Arc::new(Algebra::upper_triangular(field));
    let k = Arc::new(Algebra::ground(field));
    let m = Matrix::from_fn(field, 1, 3, |_, c| u32::from(c == 0));
    let phi = AlgebraMorphism::new(r.clone(), k, m).expect("shape is 1x3");
    (r, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn f4_inclusion() -> AlgebraMorphism {
        AlgebraMorphism::unit_map(Arc::new(Algebra::polynomial_quotient(f(2), &[1, 1])))
    }

    fn proj() -> AlgebraMorphism {
        let r = Arc::new(Algebra::split(f(2), 2));
        let k = Arc::new(Algebra::ground(f(2)));
        AlgebraMorphism::new(r, k, Matrix::from_rows(f(2), &[vec![1, 0]]).unwrap()).unwrap()
    }

    #[test]
    fn epimorphism_examples() {
        let id = AlgebraMorphism::identity(Arc::new(Algebra::ground(f(2))));
        assert_eq!(is_ring_epimorphism(&id).unwrap(), EpiVerdict { epimorphism: true, kernel_dim: 0 });
        assert_eq!(is_ring_epimorphism(&f4_inclusion()).unwrap(), EpiVerdict { epimorphism: false, kernel_dim: 2 });
        assert_eq!(is_ring_epimorphism(&proj()).unwrap(), EpiVerdict { epimorphism: true, kernel_dim: 0 });
    }

    #[test]
    fn invariant_tensors_of_f4() {
        let phi = f4_inclusion();
        let ss = sweedler_tensor(&phi).unwrap();
        let inv = invariants(&ss.module).unwrap();
        assert_eq!(inv.dim(), 2);
        assert!(!inv.contains(&unit_tensor(&phi, &ss)));
    }

    #[test]
    fn restriction_verdicts() {
        let opts = Options::default();
        assert!(!analyze_restriction(&f4_inclusion(), &opts).unwrap().naturally_full);
        let (_, tri) = build_triangular_example(f(2));
        let rep = analyze_restriction(&tri, &opts).unwrap();
        assert!(rep.naturally_full && rep.separable);
        assert!(rep.evidence.unwrap().splitting.is_some());
    }

    #[test]
    fn extension_of_projection_has_corner_idempotent() {
        let rep = analyze_extension(&proj(), &Options::default()).unwrap();
        assert!(rep.naturally_full);
        assert_eq!(rep.central_idempotent, Some(vec![1, 0]));
    }

    #[test]
    fn triangular_extension_is_full_not_naturally_full() {
        for p in [2, 3, 5] {
            let (r, phi) = build_triangular_example(f(p));
            assert!(r.validate().is_empty());
            let rep = analyze_extension(&phi, &Options::default()).unwrap();
            assert!(!rep.naturally_full);
            assert_eq!(rep.full_on_family, Some(true));
        }
    }

    #[test]
    fn extension_along_f4_fails_at_the_regular_module() {
        let phi = f4_inclusion();
        let ext = ScalarExtension::new(&phi).unwrap();
        let r = Bimodule::left_regular(&phi.source);
        assert!(adj::per_object_left(&ext, &r).unwrap().is_none());
    }

    #[test]
    fn xi_check_examples() {
        let phi = proj();
        let ss = sweedler_tensor(&phi).unwrap();
        assert!(xi_splitting_check(&phi, &unit_tensor(&phi, &ss)).unwrap());
        assert!(!xi_splitting_check(&phi, &vec![0; ss.dim()]).unwrap());
        let f4 = f4_inclusion();
        let ss4 = sweedler_tensor(&f4).unwrap();
        for e in invariants(&ss4.module).unwrap().vectors() {
            assert!(!xi_splitting_check(&f4, &e).unwrap());
        }
    }
}

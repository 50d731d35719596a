//! Property tests for the algebraic laws each module maintains. Structured
//! instances come from the seeded generators; proptest drives the seeds.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use natfull::algebra::{Algebra, AlgebraMorphism};
use natfull::bimodfunc::{analyze_bimodule, analyze_induction, expansion_at_object, expansion_identity_holds, Induction};
use natfull::cli::fixtures::{fix_f4, fix_mat2_bimodule, fix_proj, fix_tri};
use natfull::corings::{
    analyze_coring, comatrix_coring, coring_round_trip, dual_coalgebra, ring_to_coring, sweedler_coring, trivial_coring, Comodule,
};
use natfull::cormor::{comodule_test_family, CoringMorphism, MorphismAdjunction};
use natfull::exactla::{is_zero_vec, quotient_space, Matrix, PrimeField, Subspace};
use natfull::modrep::{fgp_dual_basis, hom_space, invariants, left_unitor, tensor_over, Bimodule, Sides};
use natfull::oracle::adjunction::triangle_identities;
use natfull::oracle::family::random_quotient;
use natfull::oracle::random::{projection_ring, random_algebra, random_coring, random_fgp_bimodule, random_morphism};
use natfull::oracle::suite::{run_kind, Kind, SuiteConfig};
use natfull::report::Options;
use natfull::scalars::{analyze_extension, analyze_restriction, is_ring_epimorphism, sweedler_tensor, target_as_left_right};

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).expect("prime")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quick() -> Options {
    Options { naturality_samples: 2, ..Options::default() }
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5)]
}

fn small_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3)]
}

/// A `rows x cols` matrix over `F_p` with `rows, cols ≤ 8`.
fn matrix() -> impl Strategy<Value = Matrix> {
    (prime(), 1usize..=8, 1usize..=8).prop_flat_map(|(p, r, c)| (Just(p), Just(r), Just(c), prop::collection::vec(0u32..97, r * c))).prop_map(
        |(p, r, c, v)| {
            let k = field(p);
            Matrix::from_fn(k, r, c, |i, j| v[i * c + j] % p)
        },
    )
}

/// Number of maps `m → n` commuting with both actions, by enumeration.
fn brute_force_hom_count(m: &Bimodule, n: &Bimodule) -> usize {
    let k = m.field();
    k.all_vectors(m.dim() * n.dim())
        .filter(|v| {
            let f = Matrix::from_vec(k, n.dim(), m.dim(), v);
            let left = m.left_action().iter().zip(n.left_action()).all(|(a, b)| f.matmul(a) == b.matmul(&f));
            let right = m.right_action().iter().zip(n.right_action()).all(|(a, b)| f.matmul(a) == b.matmul(&f));
            left && right
        })
        .count()
}

/// A left module over a random algebra: the regular module or a cyclic quotient.
fn random_left_module(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Bimodule {
    if rng.gen_bool(0.5) {
        if let Some(q) = random_quotient(a, 3, rng).expect("quotient") {
            return q;
        }
    }
    Bimodule::left_regular(a)
}

/// A surjection out of `a` onto its quotient by a random ideal.
fn random_surjection(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> AlgebraMorphism {
    let k = a.field();
    let g: Vec<u32> = (0..a.dim()).map(|_| rng.gen_range(0..k.p())).collect();
    let mut ideal = a.ideal_generated(&[g]);
    if ideal.dim() == a.dim() {
        ideal = Subspace::zero(k, a.dim());
    }
    a.quotient(&ideal).expect("proper ideal").1
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn rank_plus_nullity_is_the_column_count(a in matrix()) {
        prop_assert_eq!(a.rank() + a.kernel().dim(), a.cols());
        for v in a.kernel().vectors() {
            prop_assert!(is_zero_vec(&a.mul_vec(&v)));
        }
    }

    #[test]
    fn solve_is_exact_or_the_system_is_inconsistent(a in matrix(), seed in any::<u64>()) {
        let k = a.field();
        let mut r = rng(seed);
        let b: Vec<u32> = if r.gen_bool(0.5) {
            let x: Vec<u32> = (0..a.cols()).map(|_| r.gen_range(0..k.p())).collect();
            a.mul_vec(&x)
        } else {
            (0..a.rows()).map(|_| r.gen_range(0..k.p())).collect()
        };
        match a.solve(&b) {
            Some(x) => prop_assert_eq!(a.mul_vec(&x), b),
            None => {
                let aug = Matrix::hstack(k, a.rows(), &[&a, &Matrix::column_vector(k, &b)]);
                prop_assert!(aug.rank() > a.rank());
            }
        }
    }

    #[test]
    fn quotient_projection_splits_its_section(a in matrix()) {
        let k = a.field();
        let w = a.column_space();
        let q = quotient_space(&w);
        prop_assert!(q.projection.matmul(&q.section).is_identity());
        prop_assert_eq!(q.dim(), a.rows() - w.dim());
        prop_assert!(q.projection.matmul(w.basis()).is_zero());
        prop_assert_eq!(q.projection.field(), k);
    }

    #[test]
    fn rref_is_idempotent(a in matrix()) {
        let once = a.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn random_algebras_and_morphisms_validate(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 4, &mut rng(seed)).unwrap();
        prop_assert!(phi.source.validate().is_empty());
        prop_assert!(phi.target.validate().is_empty());
        prop_assert!(phi.validate().is_empty());
    }

    #[test]
    fn epimorphism_verdict_is_invariance_of_one_tensor_one(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 4, &mut rng(seed)).unwrap();
        let ss = sweedler_tensor(&phi).unwrap();
        let one = ss.pure(phi.target.one(), phi.target.one());
        let invariant = (0..phi.target.dim()).all(|i| {
            let s = phi.target.basis_element(i);
            ss.module.act_left(&s).mul_vec(&one) == ss.module.act_right(&s).mul_vec(&one)
        });
        prop_assert_eq!(is_ring_epimorphism(&phi).unwrap().epimorphism, invariant);
    }

    #[test]
    fn surjections_are_epimorphisms(p in small_prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_algebra(field(p), 4, &mut r);
        let phi = random_surjection(&a, &mut r);
        prop_assert!(phi.is_surjective());
        prop_assert!(is_ring_epimorphism(&phi).unwrap().epimorphism);
    }

    #[test]
    fn hom_space_matches_brute_force(p in small_prime(), seed in any::<u64>()) {
        let k = field(p);
        let mut r = rng(seed);
        let a = random_algebra(k, 3, &mut r);
        let m = random_left_module(&a, &mut r);
        let n = random_left_module(&a, &mut r);
        prop_assume!((p as f64).powi((m.dim() * n.dim()) as i32) <= 65536.0);
        let homs = hom_space(&m, &n, Sides::Both).unwrap();
        prop_assert_eq!((p as usize).pow(homs.dim() as u32), brute_force_hom_count(&m, &n));
    }

    #[test]
    fn tensoring_with_the_algebra_is_the_unitor(p in small_prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_algebra(field(p), 3, &mut r);
        let n = random_left_module(&a, &mut r);
        let rn = tensor_over(&Bimodule::regular(&a), &n).unwrap();
        prop_assert_eq!(rn.dim(), n.dim());
        let unitor = left_unitor(&rn).unwrap();
        prop_assert!(unitor.is_bijective());
        for i in 0..a.dim() {
            for j in 0..n.dim() {
                let e = a.basis_element(i);
                let m = n.field().unit_vector(n.dim(), j);
                prop_assert_eq!(unitor.mul_vec(&rn.pure(&e, &m)), n.act_left(&e).mul_vec(&m));
            }
        }
    }

    #[test]
    fn dual_bases_satisfy_the_dual_basis_law(p in small_prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = field(p);
        let m = if r.gen_bool(0.5) {
            random_fgp_bimodule(k, 3, &mut r).unwrap().forget_right()
        } else {
            let a = random_algebra(k, 3, &mut r);
            random_left_module(&a, &mut r)
        };
        if let Some(db) = fgp_dual_basis(&m).unwrap() {
            prop_assert!(db.verify(&m));
            prop_assert_eq!(db.elements.len(), db.functionals.len());
        }
    }

    #[test]
    fn invariants_are_the_common_kernel(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 3, &mut rng(seed)).unwrap();
        for m in [Bimodule::regular(&phi.target), sweedler_tensor(&phi).unwrap().module] {
            let inv = invariants(&m).unwrap();
            let mut common = Subspace::full(m.field(), m.dim());
            for i in 0..phi.target.dim() {
                let s = phi.target.basis_element(i);
                common = common.intersection(&(&m.act_left(&s) - &m.act_right(&s)).kernel());
            }
            prop_assert!(common.same_as(&inv));
        }
    }

    #[test]
    fn restriction_full_iff_naturally_full(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 4, &mut rng(seed)).unwrap();
        let res = analyze_restriction(&phi, &quick()).unwrap();
        prop_assert_eq!(res.full, res.naturally_full);
        let ext = analyze_extension(&phi, &quick()).unwrap();
        if ext.naturally_full {
            prop_assert_eq!(ext.full_on_family, Some(true));
        }
    }

    #[test]
    fn induction_along_the_target_is_extension(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 3, &mut rng(seed)).unwrap();
        let m = target_as_left_right(&phi).unwrap();
        prop_assert_eq!(
            analyze_induction(&m, &quick()).unwrap().naturally_full,
            analyze_extension(&phi, &quick()).unwrap().naturally_full
        );
    }

    #[test]
    fn expansion_identity_is_tested_by_the_algebra_and_the_module(p in small_prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_fgp_bimodule(field(p), 3, &mut r).unwrap();
        let (_, mm) = Induction::new(&m).unwrap().comatrix_tensor().unwrap();
        let inv = invariants(&mm.module).unwrap();
        let s = Bimodule::left_regular(m.left_algebra());
        let forgotten = m.forget_right();
        for _ in 0..8 {
            let coeffs: Vec<u32> = (0..inv.dim()).map(|_| r.gen_range(0..p)).collect();
            let z = inv.basis().mul_vec(&coeffs);
            let global = expansion_identity_holds(&m, &z).unwrap();
            let objectwise = expansion_at_object(&m, &z, &s).unwrap() && expansion_at_object(&m, &z, &forgotten).unwrap();
            prop_assert_eq!(global, objectwise);
        }
    }

    #[test]
    fn bimodule_analysis_has_consistent_consequences(p in small_prime(), seed in any::<u64>()) {
        let m = random_fgp_bimodule(field(p), 3, &mut rng(seed)).unwrap();
        let report = analyze_bimodule(&m, &quick()).unwrap();
        if report.coinduction.naturally_full {
            let e = report.structure.central_idempotent.as_deref().expect("central idempotent");
            let s = m.left_algebra();
            prop_assert!(s.is_central(e) && s.is_idempotent(e));
        }
    }

    #[test]
    fn constructed_corings_validate(p in small_prime(), seed in any::<u64>()) {
        let k = field(p);
        let mut r = rng(seed);
        let phi = random_morphism(k, 3, &mut r).unwrap();
        prop_assert!(sweedler_coring(&phi).unwrap().validate().is_empty());
        prop_assert!(trivial_coring(&phi.source).unwrap().validate().is_empty());
        prop_assert!(dual_coalgebra(&phi.target).unwrap().validate().is_empty());
        let m = random_fgp_bimodule(k, 2, &mut r).unwrap();
        prop_assert!(comatrix_coring(&m).unwrap().validate().is_empty());
        let a = random_algebra(k, 2, &mut r);
        let b = random_algebra(k, 2, &mut r);
        prop_assert!(ring_to_coring(&projection_ring(k, &a, &b)).unwrap().validate().is_empty());
    }

    #[test]
    fn coring_criteria_agree_and_round_trip(p in small_prime(), seed in any::<u64>()) {
        let c = random_coring(field(p), 4, 3, &mut rng(seed)).unwrap();
        prop_assert!(c.validate().is_empty());
        let report = analyze_coring(&c, &quick()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        if report.cotensor.naturally_full {
            prop_assert!(report.forgetful.naturally_full);
            prop_assert!(coring_round_trip(&c).unwrap().exact);
        }
        if report.forgetful.naturally_full && report.derived.counit_surjective {
            prop_assert!(report.cotensor.naturally_full);
        }
    }

    #[test]
    fn induced_coactions_are_coassociative(p in small_prime(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let phi = random_morphism(field(p), 3, &mut r).unwrap();
        let morphisms = [
            CoringMorphism::from_algebra_map(&phi).unwrap(),
            CoringMorphism::counit_morphism(&sweedler_coring(&phi).unwrap()).unwrap(),
        ];
        for m in &morphisms {
            for (_, n) in &comodule_test_family(m.target()).unwrap().objects {
                let k = m.cotensor(n.module(), n.rho()).unwrap();
                prop_assert!(k.inclusion.is_injective());
                let comod = Comodule::new(m.source(), k.module.clone(), k.rho.clone()).unwrap();
                prop_assert!(comod.validate(m.source()).is_empty());
            }
            for (_, x) in &comodule_test_family(m.source()).unwrap().objects {
                let ind = m.induce(x.module(), x.rho()).unwrap();
                let comod = Comodule::new(m.target(), ind.tensor.module.clone(), ind.rho.clone()).unwrap();
                prop_assert!(comod.validate(m.target()).is_empty());
            }
        }
    }

    #[test]
    fn coring_morphism_adjunctions_satisfy_the_triangle_identities(p in small_prime(), seed in any::<u64>()) {
        let phi = random_morphism(field(p), 3, &mut rng(seed)).unwrap();
        for m in [CoringMorphism::from_algebra_map(&phi).unwrap(), CoringMorphism::counit_morphism(&sweedler_coring(&phi).unwrap()).unwrap()] {
            let adj = MorphismAdjunction::new(&m);
            let src = comodule_test_family(m.source()).unwrap();
            let tgt = comodule_test_family(m.target()).unwrap();
            triangle_identities(&adj, &src, &tgt).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn suite_reports_are_deterministic(seed in any::<u64>()) {
        let cfg = SuiteConfig { seed, count: 3, max_dim: 3, ..SuiteConfig::default() };
        for kind in [Kind::Scalars, Kind::Corings, Kind::Composition] {
            let a = run_kind(kind, &cfg).to_json().unwrap();
            let b = run_kind(kind, &cfg).to_json().unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn fixture_algebras_validate() {
    let k = field(2);
    let mut algebras: Vec<Arc<Algebra>> = Vec::new();
    for phi in [fix_proj(), fix_f4(), fix_tri(2).unwrap(), fix_tri(3).unwrap(), fix_tri(5).unwrap()] {
        assert!(phi.validate().is_empty());
        algebras.push(phi.source);
        algebras.push(phi.target);
    }
    algebras.push(fix_mat2_bimodule().unwrap().left_algebra().clone());
    algebras.push(Arc::new(Algebra::ground(k)));
    for a in algebras {
        assert!(a.validate().is_empty(), "{a:?}");
    }
}

#[test]
fn coring_morphism_reductions_validate() {
    let phi = fix_tri(2).unwrap();
    let m = CoringMorphism::from_algebra_map(&phi).unwrap();
    assert!(m.source().validate().is_empty() && m.target().validate().is_empty());
}

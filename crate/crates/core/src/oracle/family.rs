//! Finite test families of left modules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::exactla::Subspace;
use crate::modrep::{hom_space, Bimodule, Sides};

use super::adjunction::Family;

/// Cap on the number of vectors tried when searching for a minimal cyclic submodule.
const CYCLIC_SEARCH_LIMIT: u64 = 4096;

/// Candidate generators: every nonzero vector when few enough, otherwise
/// the basis vectors followed by a fixed pseudo-random sample.
fn candidates(m: &Bimodule) -> (Vec<Vec<u32>>, bool) {
    let f = m.field();
    let total = (f.p() as u64).checked_pow(m.dim() as u32).unwrap_or(u64::MAX);
    if total <= CYCLIC_SEARCH_LIMIT {
        return (f.all_vectors(m.dim()).skip(1).collect(), true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(m.dim() as u64);
    let mut out: Vec<Vec<u32>> = (0..m.dim()).map(|i| f.unit_vector(m.dim(), i)).collect();
    out.extend((0..CYCLIC_SEARCH_LIMIT).map(|_| (0..m.dim()).map(|_| rng.gen_range(0..f.p())).collect::<Vec<u32>>()));
    (out, false)
}

/// A nonzero submodule of least dimension among the cyclic ones tried;
/// simple whenever the search was exhaustive.
fn minimal_cyclic(m: &Bimodule) -> Subspace {
    let (cands, _) = candidates(m);
    let mut best: Option<Subspace> = None;
    for v in cands.iter().filter(|v| v.iter().any(|&x| x != 0)) {
        let s = m.generated_by(std::slice::from_ref(v));
        if best.as_ref().is_none_or(|b| s.dim() < b.dim()) {
            let done = s.dim() == 1;
            best = Some(s);
            if done {
                break;
            }
        }
    }
    best.expect("nonzero module has a nonzero vector")
}

/// Composition factors of the left regular module, one per isomorphism
/// class. Every simple module occurs among them.
pub fn simple_modules(alg: &Arc<Algebra>) -> Result<Vec<Bimodule>> {
    let mut m = Bimodule::left_regular(alg);
    let mut found: Vec<Bimodule> = Vec::new();
    while m.dim() > 0 {
        let sub = minimal_cyclic(&m);
        let t = m.submodule(&sub)?;
        let mut known = false;
        for s in &found {
            if s.dim() == t.dim() && hom_space(s, &t, Sides::Left)?.dim() > 0 {
                known = true;
                break;
            }
        }
        if !known {
            found.push(t);
        }
        m = m.quotient(&sub)?.0;
    }
    Ok(found)
}

/// A seeded quotient of the left regular module of dimension `1..=max_dim`.
pub fn random_quotient<R: Rng>(alg: &Arc<Algebra>, max_dim: usize, rng: &mut R) -> Result<Option<Bimodule>> {
    let reg = Bimodule::left_regular(alg);
    let f = alg.field();
    for _ in 0..32 {
        let k = rng.gen_range(0..=alg.dim());
        let gens: Vec<Vec<u32>> = (0..k).map(|_| (0..alg.dim()).map(|_| rng.gen_range(0..f.p())).collect()).collect();
        let sub = reg.generated_by(&gens);
        let q = alg.dim() - sub.dim();
        if (1..=max_dim).contains(&q) {
            return Ok(Some(reg.quotient(&sub)?.0));
        }
    }
    Ok(None)
}

/// Regular module, its simple composition factors, the given extras and one
/// seeded random quotient of dimension at most 3.
pub fn left_module_family<R: Rng>(alg: &Arc<Algebra>, extras: Vec<(String, Bimodule)>, rng: &mut R) -> Result<Family<Bimodule>> {
    let mut objects = vec![("regular".to_string(), Bimodule::left_regular(alg))];
    for (i, s) in simple_modules(alg)?.into_iter().enumerate() {
        objects.push((format!("simple[{i}]"), s));
    }
    objects.extend(extras);
    if let Some(q) = random_quotient(alg, 3, rng)? {
        objects.push(("random".to_string(), q));
    }
    Ok(Family::new(objects))
}

/// The right-module analogue of [`left_module_family`], built over the
/// opposite algebra and turned around.
pub fn right_module_family<R: Rng>(alg: &Arc<Algebra>, extras: Vec<(String, Bimodule)>, rng: &mut R) -> Result<Family<Bimodule>> {
    let op = Arc::new(alg.opposite());
    let fam = left_module_family(&op, vec![], rng)?;
    let mut objects: Vec<(String, Bimodule)> = fam.objects.into_iter().map(|(l, m)| (l, m.swap_sides().forget_left())).collect();
    objects.extend(extras);
    Ok(Family::new(objects))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    #[test]
    fn simples_of_small_algebras() {
        let k = PrimeField::new(2).unwrap();
        assert_eq!(simple_modules(&Arc::new(Algebra::upper_triangular(k))).unwrap().len(), 2);
        assert_eq!(simple_modules(&Arc::new(Algebra::split(k, 3))).unwrap().len(), 3);
        let m2 = simple_modules(&Arc::new(Algebra::matrix_algebra(k, 2))).unwrap();
        assert_eq!(m2.len(), 1);
        assert_eq!(m2[0].dim(), 2);
        let f4 = simple_modules(&Arc::new(Algebra::polynomial_quotient(k, &[1, 1]))).unwrap();
        assert_eq!(f4.len(), 1);
        assert_eq!(f4[0].dim(), 2);
        for s in simple_modules(&Arc::new(Algebra::upper_triangular(k))).unwrap() {
            assert!(s.validate().is_empty());
        }
    }

    #[test]
    fn right_family_lives_over_the_algebra() {
        let k = PrimeField::new(3).unwrap();
        let t = Arc::new(Algebra::upper_triangular(k));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (_, m) in right_module_family(&t, vec![], &mut rng).unwrap().objects {
            assert_eq!(**m.right_algebra(), *t);
            assert!(m.validate().is_empty());
        }
    }
}

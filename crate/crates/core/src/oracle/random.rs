//! Seeded random instances: algebras, algebra maps, corings and finitely
//! generated projective bimodules, all of bounded dimension.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::corings::{comatrix_coring, dual_coalgebra, ring_to_coring, sweedler_coring, trivial_coring, Coring, SectionedRing};
use crate::error::Result;
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::modrep::{fgp_dual_basis, Bimodule};

/// Attempts before a generator falls back to its simplest instance.
const ATTEMPTS: usize = 64;

fn random_vec<R: Rng>(field: PrimeField, n: usize, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..field.p())).collect()
}

/// A catalog algebra of dimension `1..=max_dim`.
pub fn random_algebra<R: Rng>(field: PrimeField, max_dim: usize, rng: &mut R) -> Arc<Algebra> {
    let max_dim = max_dim.max(1);
    loop {
        let a = match rng.gen_range(0..7) {
            0 => Algebra::ground(field),
            1 => Algebra::split(field, rng.gen_range(1..=max_dim)),
            2 => {
                let d = rng.gen_range(1..=max_dim);
                Algebra::polynomial_quotient(field, &random_vec(field, d, rng))
            }
            3 => Algebra::upper_triangular(field),
            4 => Algebra::matrix_algebra(field, 2),
            5 if max_dim >= 2 => {
                let d = rng.gen_range(1..max_dim);
                let a = random_algebra(field, d, rng);
                let b = random_algebra(field, max_dim - a.dim(), rng);
                Algebra::product(&a, &b)
            }
            _ => Algebra::upper_triangular(field).opposite(),
        };
        if a.dim() <= max_dim {
            return Arc::new(a);
        }
    }
}

/// `F_p^n → F_p^m` induced by a function `{0..m} → {0..n}`.
fn split_map<R: Rng>(field: PrimeField, n: usize, m: usize, rng: &mut R) -> AlgebraMorphism {
    let f: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
    let mat = Matrix::from_fn(field, m, n, |j, i| u32::from(f[j] == i));
    AlgebraMorphism::new(Arc::new(Algebra::split(field, n)), Arc::new(Algebra::split(field, m)), mat).expect("shape m x n")
}

fn subalgebra_inclusion<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Result<AlgebraMorphism> {
    let k = rng.gen_range(0..=2);
    let gens: Vec<Vec<u32>> = (0..k).map(|_| random_vec(a.field(), a.dim(), rng)).collect();
    Ok(a.subalgebra(&a.subalgebra_generated(&gens))?.1)
}

pub(crate) fn quotient_map<R: Rng>(a: &Arc<Algebra>, rng: &mut R) -> Result<Option<AlgebraMorphism>> {
    let g = random_vec(a.field(), a.dim(), rng);
    let ideal = if rng.gen_bool(0.5) { a.ideal_generated(&[g]) } else { Subspace::zero(a.field(), a.dim()) };
    if ideal.dim() == a.dim() {
        return Ok(None);
    }
    Ok(Some(a.quotient(&ideal)?.1))
}

fn product_projection(field: PrimeField, a: &Arc<Algebra>, b: &Arc<Algebra>) -> AlgebraMorphism {
    let ab = Arc::new(Algebra::product(a, b));
    let mat = Matrix::from_fn(field, a.dim(), ab.dim(), |r, c| u32::from(r == c));
    AlgebraMorphism::new(ab, a.clone(), mat).expect("shape dim A x dim A×B")
}

pub(crate) fn diagonal(field: PrimeField, a: &Arc<Algebra>) -> AlgebraMorphism {
    let aa = Arc::new(Algebra::product(a, a));
    let n = a.dim();
    let mat = Matrix::from_fn(field, 2 * n, n, |r, c| u32::from(r % n == c));
    AlgebraMorphism::new(a.clone(), aa, mat).expect("shape 2n x n")
}

fn fits(phi: &AlgebraMorphism, max_dim: usize) -> bool {
    phi.source.dim() <= max_dim && phi.target.dim() <= max_dim && phi.source.dim() > 0 && phi.target.dim() > 0
}

/// An algebra map between algebras of dimension `1..=max_dim`, drawn from
/// unit maps, identities, subalgebra inclusions, quotient maps, maps between
/// split algebras, product projections, diagonals and their composites.
pub fn random_morphism<R: Rng>(field: PrimeField, max_dim: usize, rng: &mut R) -> Result<AlgebraMorphism> {
    let max_dim = max_dim.max(1);
    for _ in 0..ATTEMPTS {
        let a = random_algebra(field, max_dim, rng);
        let phi = match rng.gen_range(0..9) {
            0 => AlgebraMorphism::unit_map(a),
            1 => AlgebraMorphism::identity(a),
            2 => subalgebra_inclusion(&a, rng)?,
            3 => match quotient_map(&a, rng)? {
                Some(q) => q,
                None => continue,
            },
            4 => split_map(field, rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim), rng),
            5 => {
                let b = random_algebra(field, max_dim, rng);
                product_projection(field, &a, &b)
            }
            6 => diagonal(field, &a),
            7 => {
                let inc = subalgebra_inclusion(&a, rng)?;
                match quotient_map(&a, rng)? {
                    Some(q) => inc.then(&q)?,
                    None => continue,
                }
            }
            _ => match quotient_map(&a, rng)? {
                Some(q) => q.then(&diagonal(field, &q.target))?,
                None => continue,
            },
        };
        if fits(&phi, max_dim) {
            return Ok(phi);
        }
    }
    Ok(AlgebraMorphism::identity(Arc::new(Algebra::ground(field))))
}

/// `A × B → A` with the inclusion of `A` as section.
pub fn projection_ring(field: PrimeField, a: &Arc<Algebra>, b: &Arc<Algebra>) -> SectionedRing {
    let phi = product_projection(field, a, b);
    let section = phi.matrix.transpose();
    SectionedRing { phi, section }
}

/// An idempotent `e` whose left ideal `S e` is nonzero, preferring basis
/// idempotents and otherwise a central one.
fn random_idempotent<R: Rng>(s: &Algebra, rng: &mut R) -> Result<Vec<u32>> {
    let mut cands: Vec<Vec<u32>> = (0..s.dim()).map(|i| s.basis_element(i)).filter(|e| s.is_idempotent(e)).collect();
    cands.extend(s.central_idempotents()?.into_iter().filter(|e| e.iter().any(|&x| x != 0)));
    Ok(cands.choose(rng).cloned().unwrap_or_else(|| s.one().to_vec()))
}

/// An `(S, R)`-bimodule, finitely generated projective over `S`: `S`
/// through an algebra map `R → S`, a sum of two such, a corner `S e` over
/// the ground field, or row vectors over `M_2(F_p)`.
pub fn random_fgp_bimodule<R: Rng>(field: PrimeField, max_dim: usize, rng: &mut R) -> Result<Bimodule> {
    let max_dim = max_dim.max(1);
    for _ in 0..ATTEMPTS {
        let m = match rng.gen_range(0..4) {
            0 => {
                let phi = random_morphism(field, max_dim, rng)?;
                Bimodule::regular(&phi.target).restrict(None, Some(&phi))?
            }
            1 => {
                let phi = random_morphism(field, max_dim / 2, rng)?;
                let m = Bimodule::regular(&phi.target).restrict(None, Some(&phi))?;
                m.direct_sum(&m)?
            }
            2 => {
                let s = random_algebra(field, max_dim, rng);
                let e = random_idempotent(&s, rng)?;
                let vs: Vec<Vec<u32>> = (0..s.dim()).map(|i| s.mul(&s.basis_element(i), &e)).collect();
                let corner = Subspace::from_vectors(field, s.dim(), &vs);
                Bimodule::left_regular(&s).submodule(&corner)?
            }
            _ => {
                let k = Arc::new(Algebra::ground(field));
                let r = Arc::new(Algebra::matrix_algebra(field, 2));
                let right: Vec<Matrix> =
                    (0..4).map(|ab| Matrix::from_fn(field, 2, 2, |row, col| u32::from(row == ab % 2 && col == ab / 2))).collect();
                Bimodule::new(k, r, 2, vec![Matrix::identity(field, 2)], right)?
            }
        };
        if m.dim() > 0 && m.dim() <= max_dim.max(2) && fgp_dual_basis(&m.forget_right())?.is_some() {
            return Ok(m);
        }
    }
    Ok(Bimodule::regular(&Arc::new(Algebra::ground(field))))
}

/// A coring with `dim C ≤ max_coring` over a base of dimension `≤ max_base`:
/// trivial, Sweedler, dual coalgebra, comatrix, from a projection ring, or
/// the opposite of one of these.
pub fn random_coring<R: Rng>(field: PrimeField, max_coring: usize, max_base: usize, rng: &mut R) -> Result<Coring> {
    for _ in 0..ATTEMPTS {
        let c = match rng.gen_range(0..6) {
            0 => trivial_coring(&random_algebra(field, max_base.min(max_coring), rng))?,
            1 => sweedler_coring(&random_morphism(field, max_base, rng)?)?,
            2 => dual_coalgebra(&random_algebra(field, max_coring, rng))?,
            3 => comatrix_coring(&random_fgp_bimodule(field, max_base, rng)?)?,
            4 => {
                let a = random_algebra(field, max_base, rng);
                let b = random_algebra(field, max_base, rng);
                ring_to_coring(&projection_ring(field, &a, &b))?
            }
            _ => random_coring(field, max_coring, max_base, rng)?.opposite()?,
        };
        if c.dim() <= max_coring && c.base().dim() <= max_base && c.validate().is_empty() {
            return Ok(c);
        }
    }
    trivial_coring(&Arc::new(Algebra::ground(field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds_and_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2, 3] {
            let k = PrimeField::new(p).unwrap();
            for _ in 0..20 {
                let phi = random_morphism(k, 4, &mut rng).unwrap();
                assert!(phi.validate().is_empty());
                assert!(phi.source.dim() <= 4 && phi.target.dim() <= 4);
                let m = random_fgp_bimodule(k, 4, &mut rng).unwrap();
                assert!(m.validate().is_empty());
                assert!(fgp_dual_basis(&m.forget_right()).unwrap().is_some());
                let c = random_coring(k, 4, 3, &mut rng).unwrap();
                assert!(c.dim() <= 4 && c.base().dim() <= 3);
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let k = PrimeField::new(3).unwrap();
        let a = random_morphism(k, 4, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        let b = random_morphism(k, 4, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        assert_eq!(a, b);
    }
}

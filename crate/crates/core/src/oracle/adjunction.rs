//! Generic checks for an adjunction `F ⊣ G` given by explicit functor
//! actions, unit `η : 1 → GF` and counit `ε : FG → 1`.
//!
//! A left splitting is a family `ν_C : GFC → C` with `η_C ∘ ν_C = id`,
//! natural in `C`; it makes `F` naturally full through
//! `P(u) = ν_{C'} ∘ G(u) ∘ η_C`. A right splitting is a family
//! `ξ_D : D → FGD` with `ξ_D ∘ ε_D = id`, natural in `D`; it makes `G`
//! naturally full through `P(f) = ε_{D'} ∘ F(f) ∘ ξ_D`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::modrep::HomSpace;

pub trait Adjunction {
    /// Objects of the domain of the left adjoint `F`.
    type Src: Clone;
    /// Objects of the domain of the right adjoint `G`.
    type Tgt: Clone;

    fn left(&self, c: &Self::Src) -> Result<Self::Tgt>;
    fn left_map(&self, c: &Self::Src, c2: &Self::Src, f: &Matrix) -> Result<Matrix>;
    fn right(&self, d: &Self::Tgt) -> Result<Self::Src>;
    fn right_map(&self, d: &Self::Tgt, d2: &Self::Tgt, g: &Matrix) -> Result<Matrix>;
    /// `η_C : C → GFC`.
    fn unit(&self, c: &Self::Src) -> Result<Matrix>;
    /// `ε_D : FGD → D`.
    fn counit(&self, d: &Self::Tgt) -> Result<Matrix>;
    fn hom_src(&self, a: &Self::Src, b: &Self::Src) -> Result<HomSpace>;
    fn hom_tgt(&self, a: &Self::Tgt, b: &Self::Tgt) -> Result<HomSpace>;
}

/// A labelled finite list of test objects.
#[derive(Clone, Debug)]
pub struct Family<T> {
    pub objects: Vec<(String, T)>,
}

impl<T> Family<T> {
    pub fn new(objects: Vec<(String, T)>) -> Self {
        Self { objects }
    }

    pub fn labels(&self) -> Vec<String> {
        self.objects.iter().map(|(l, _)| l.clone()).collect()
    }
}

/// Which splitting a witness provides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingKind {
    /// `ν : GF → 1`, making the left adjoint naturally full.
    Nu,
    /// `ξ : 1 → FG`, making the right adjoint naturally full.
    Xi,
}

/// A splitting materialized on a family, with the counts of checks it passed.
#[derive(Clone, Debug, Serialize)]
pub struct SplittingWitness {
    pub kind: SplittingKind,
    pub origin: String,
    pub components: Vec<(String, Matrix)>,
    pub spanning_checks: usize,
    pub naturality_checks: usize,
}

/// Outcome of the naturality-constrained splitting system on a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVerdict {
    /// A natural splitting exists on the family.
    FamilyConsistent,
    /// No natural splitting exists even on the family.
    Refuted,
}

fn violation(msg: String) -> Error {
    Error::WitnessViolation(msg)
}

/// `ν_C` with `η_C ∘ ν_C = id_{GFC}`, ignoring naturality.
pub fn per_object_left<A: Adjunction>(adj: &A, c: &A::Src) -> Result<Option<Matrix>> {
    let gfc = adj.right(&adj.left(c)?)?;
    let eta = adj.unit(c)?;
    let hom = adj.hom_src(&gfc, c)?;
    let id = Matrix::identity(eta.field(), eta.rows());
    Ok(hom.solve(|nu| eta.matmul(nu).to_vec(), &id.to_vec()))
}

/// `ξ_D` with `ξ_D ∘ ε_D = id_{FGD}`, ignoring naturality.
pub fn per_object_right<A: Adjunction>(adj: &A, d: &A::Tgt) -> Result<Option<Matrix>> {
    let fgd = adj.left(&adj.right(d)?)?;
    let eps = adj.counit(d)?;
    let hom = adj.hom_tgt(d, &fgd)?;
    let id = Matrix::identity(eps.field(), eps.cols());
    Ok(hom.solve(|xi| xi.matmul(&eps).to_vec(), &id.to_vec()))
}

/// Per-object fullness of the left adjoint: each unit component splits.
pub fn left_full_on_family<A: Adjunction>(adj: &A, family: &Family<A::Src>) -> Result<Vec<(String, bool)>> {
    family.objects.iter().map(|(l, c)| Ok((l.clone(), per_object_left(adj, c)?.is_some()))).collect()
}

/// Per-object fullness of the right adjoint: each counit component cosplits.
pub fn right_full_on_family<A: Adjunction>(adj: &A, family: &Family<A::Tgt>) -> Result<Vec<(String, bool)>> {
    family.objects.iter().map(|(l, d)| Ok((l.clone(), per_object_right(adj, d)?.is_some()))).collect()
}

struct LeftData<A: Adjunction> {
    c: A::Src,
    fc: A::Tgt,
    gfc: A::Src,
    eta: Matrix,
}

fn left_data<A: Adjunction>(adj: &A, family: &Family<A::Src>) -> Result<Vec<LeftData<A>>> {
    family
        .objects
        .iter()
        .map(|(_, c)| {
            let fc = adj.left(c)?;
            let gfc = adj.right(&fc)?;
            Ok(LeftData { c: c.clone(), eta: adj.unit(c)?, fc, gfc })
        })
        .collect()
}

struct RightData<A: Adjunction> {
    d: A::Tgt,
    gd: A::Src,
    fgd: A::Tgt,
    eps: Matrix,
}

fn right_data<A: Adjunction>(adj: &A, family: &Family<A::Tgt>) -> Result<Vec<RightData<A>>> {
    family
        .objects
        .iter()
        .map(|(_, d)| {
            let gd = adj.right(d)?;
            let fgd = adj.left(&gd)?;
            Ok(RightData { d: d.clone(), eps: adj.counit(d)?, gd, fgd })
        })
        .collect()
}

fn random_element<R: Rng>(hom: &HomSpace, rng: &mut R) -> Matrix {
    let p = hom.field().p();
    let coeffs: Vec<u32> = (0..hom.dim()).map(|_| rng.gen_range(0..p)).collect();
    hom.combine(&coeffs)
}

/// Materializes `P` from `ν` and checks it on the family: the splitting
/// equation and naturality of `ν`, `F(P(u)) = u` on a basis of each
/// `Hom(FC, FC')`, naturality of `P` on sampled triples, and that
/// `F(η_C)` inverts `ε_{FC}`.
pub fn verify_left_splitting<A: Adjunction, R: Rng>(
    adj: &A,
    family: &Family<A::Src>,
    nu: impl Fn(&A::Src) -> Result<Matrix>,
    origin: &str,
    samples: usize,
    rng: &mut R,
) -> Result<SplittingWitness> {
    let data = left_data(adj, family)?;
    let labels = family.labels();
    let nus: Vec<Matrix> = family.objects.iter().map(|(_, c)| nu(c)).collect::<Result<_>>()?;
    let mut spanning = 0;
    let mut natural = 0;
    for (k, x) in data.iter().enumerate() {
        if !adj.hom_src(&x.gfc, &x.c)?.contains(&nus[k]) {
            return Err(violation(format!("ν at {} is not a morphism", labels[k])));
        }
        if !x.eta.matmul(&nus[k]).is_identity() {
            return Err(violation(format!("η∘ν ≠ id at {}", labels[k])));
        }
        let eps_fc = adj.counit(&x.fc)?;
        let f_eta = adj.left_map(&x.c, &x.gfc, &x.eta)?;
        if !f_eta.matmul(&eps_fc).is_identity() || !eps_fc.matmul(&f_eta).is_identity() {
            return Err(violation(format!("ε_FC is not inverse to F(η_C) at {}", labels[k])));
        }
    }
    let p_map = |a: usize, b: usize, u: &Matrix| -> Result<Matrix> {
        let gu = adj.right_map(&data[a].fc, &data[b].fc, u)?;
        Ok(nus[b].matmul(&gu).matmul(&data[a].eta))
    };
    for (a, xa) in data.iter().enumerate() {
        for (b, xb) in data.iter().enumerate() {
            let hom_c = adj.hom_src(&xa.c, &xb.c)?;
            for f in hom_c.basis() {
                let gff = adj.right_map(&xa.fc, &xb.fc, &adj.left_map(&xa.c, &xb.c, f)?)?;
                if nus[b].matmul(&gff) != f.matmul(&nus[a]) {
                    return Err(violation(format!("ν is not natural along {} → {}", labels[a], labels[b])));
                }
                natural += 1;
            }
            let hom_d = adj.hom_tgt(&xa.fc, &xb.fc)?;
            for u in hom_d.basis() {
                let pu = p_map(a, b, u)?;
                if !hom_c.contains(&pu) {
                    return Err(violation(format!("P(u) is not a morphism {} → {}", labels[a], labels[b])));
                }
                if adj.left_map(&xa.c, &xb.c, &pu)? != *u {
                    return Err(violation(format!("F(P(u)) ≠ u on {} → {}", labels[a], labels[b])));
                }
                spanning += 1;
            }
        }
    }
    let n = data.len();
    for _ in 0..if n == 0 { 0 } else { samples } {
        let idx: Vec<usize> = (0..4).map(|_| rng.gen_range(0..n)).collect();
        let (x, y, z, t) = (idx[0], idx[1], idx[2], idx[3]);
        let f = random_element(&adj.hom_src(&data[x].c, &data[y].c)?, rng);
        let g = random_element(&adj.hom_tgt(&data[y].fc, &data[z].fc)?, rng);
        let h = random_element(&adj.hom_src(&data[z].c, &data[t].c)?, rng);
        let ff = adj.left_map(&data[x].c, &data[y].c, &f)?;
        let fh = adj.left_map(&data[z].c, &data[t].c, &h)?;
        let lhs = p_map(x, t, &fh.matmul(&g).matmul(&ff))?;
        let rhs = h.matmul(&p_map(y, z, &g)?).matmul(&f);
        if lhs != rhs {
            return Err(violation(format!("P is not natural on ({}, {}, {}, {})", labels[x], labels[y], labels[z], labels[t])));
        }
        natural += 1;
    }
    Ok(SplittingWitness {
        kind: SplittingKind::Nu,
        origin: origin.to_string(),
        components: labels.into_iter().zip(nus).collect(),
        spanning_checks: spanning,
        naturality_checks: natural,
    })
}

/// Materializes `P` from `ξ` and checks it on the family, dually to
/// [`verify_left_splitting`].
pub fn verify_right_splitting<A: Adjunction, R: Rng>(
    adj: &A,
    family: &Family<A::Tgt>,
    xi: impl Fn(&A::Tgt) -> Result<Matrix>,
    origin: &str,
    samples: usize,
    rng: &mut R,
) -> Result<SplittingWitness> {
    let data = right_data(adj, family)?;
    let labels = family.labels();
    let xis: Vec<Matrix> = family.objects.iter().map(|(_, d)| xi(d)).collect::<Result<_>>()?;
    let mut spanning = 0;
    let mut natural = 0;
    for (k, x) in data.iter().enumerate() {
        if !adj.hom_tgt(&x.d, &x.fgd)?.contains(&xis[k]) {
            return Err(violation(format!("ξ at {} is not a morphism", labels[k])));
        }
        if !xis[k].matmul(&x.eps).is_identity() {
            return Err(violation(format!("ξ∘ε ≠ id at {}", labels[k])));
        }
        let eta_gd = adj.unit(&x.gd)?;
        let g_eps = adj.right_map(&x.fgd, &x.d, &x.eps)?;
        if !g_eps.matmul(&eta_gd).is_identity() || !eta_gd.matmul(&g_eps).is_identity() {
            return Err(violation(format!("η_GD is not inverse to G(ε_D) at {}", labels[k])));
        }
    }
    let p_map = |a: usize, b: usize, f: &Matrix| -> Result<Matrix> {
        let ff = adj.left_map(&data[a].gd, &data[b].gd, f)?;
        Ok(data[b].eps.matmul(&ff).matmul(&xis[a]))
    };
    for (a, xa) in data.iter().enumerate() {
        for (b, xb) in data.iter().enumerate() {
            let hom_d = adj.hom_tgt(&xa.d, &xb.d)?;
            for g in hom_d.basis() {
                let fgg = adj.left_map(&xa.gd, &xb.gd, &adj.right_map(&xa.d, &xb.d, g)?)?;
                if fgg.matmul(&xis[a]) != xis[b].matmul(g) {
                    return Err(violation(format!("ξ is not natural along {} → {}", labels[a], labels[b])));
                }
                natural += 1;
            }
            let hom_c = adj.hom_src(&xa.gd, &xb.gd)?;
            for f in hom_c.basis() {
                let pf = p_map(a, b, f)?;
                if !hom_d.contains(&pf) {
                    return Err(violation(format!("P(f) is not a morphism {} → {}", labels[a], labels[b])));
                }
                if adj.right_map(&xa.d, &xb.d, &pf)? != *f {
                    return Err(violation(format!("G(P(f)) ≠ f on {} → {}", labels[a], labels[b])));
                }
                spanning += 1;
            }
        }
    }
    let n = data.len();
    for _ in 0..if n == 0 { 0 } else { samples } {
        let idx: Vec<usize> = (0..4).map(|_| rng.gen_range(0..n)).collect();
        let (x, y, z, t) = (idx[0], idx[1], idx[2], idx[3]);
        let f = random_element(&adj.hom_tgt(&data[x].d, &data[y].d)?, rng);
        let g = random_element(&adj.hom_src(&data[y].gd, &data[z].gd)?, rng);
        let h = random_element(&adj.hom_tgt(&data[z].d, &data[t].d)?, rng);
        let gf = adj.right_map(&data[x].d, &data[y].d, &f)?;
        let gh = adj.right_map(&data[z].d, &data[t].d, &h)?;
        let lhs = p_map(x, t, &gh.matmul(&g).matmul(&gf))?;
        let rhs = h.matmul(&p_map(y, z, &g)?).matmul(&f);
        if lhs != rhs {
            return Err(violation(format!("P is not natural on ({}, {}, {}, {})", labels[x], labels[y], labels[z], labels[t])));
        }
        natural += 1;
    }
    Ok(SplittingWitness {
        kind: SplittingKind::Xi,
        origin: origin.to_string(),
        components: labels.into_iter().zip(xis).collect(),
        spanning_checks: spanning,
        naturality_checks: natural,
    })
}

/// Coordinates of a block of unknowns inside a joint system.
struct Block {
    offset: usize,
    hom: HomSpace,
}

fn blocks(homs: Vec<HomSpace>) -> (Vec<Block>, usize) {
    let mut offset = 0;
    let blocks = homs
        .into_iter()
        .map(|hom| {
            let b = Block { offset, hom };
            offset += b.hom.dim();
            b
        })
        .collect();
    (blocks, offset)
}

/// One term `± lin(x_block)` of a vector equation.
type Term<'a> = (&'a Block, &'a dyn Fn(&Matrix) -> Matrix, bool);

/// Accumulates rows of an affine system `A x = b` block by block.
struct System {
    unknowns: usize,
    rows: Vec<(Vec<u32>, u32)>,
}

impl System {
    /// Adds the vector equation `Σ_k lin_k(x_k) = rhs`, one row per entry.
    fn add(&mut self, parts: &[Term<'_>], rhs: &[u32], field: crate::exactla::PrimeField) {
        let mut rows = vec![vec![0u32; self.unknowns]; rhs.len()];
        for (block, lin, negate) in parts {
            for (t, basis) in block.hom.basis().iter().enumerate() {
                let v = lin(basis).to_vec();
                for (r, &x) in v.iter().enumerate() {
                    let x = if *negate { field.neg(x) } else { x };
                    rows[r][block.offset + t] = field.add(rows[r][block.offset + t], x);
                }
            }
        }
        self.rows.extend(rows.into_iter().zip(rhs.iter().copied()));
    }

    fn solvable(&self, field: crate::exactla::PrimeField) -> bool {
        if self.rows.is_empty() {
            return true;
        }
        let a = Matrix::from_fn(field, self.rows.len(), self.unknowns, |r, c| self.rows[r].0[c]);
        let b: Vec<u32> = self.rows.iter().map(|r| r.1).collect();
        a.solve(&b).is_some()
    }
}

/// Whether a natural `ν` with `η ∘ ν = id` exists on the family, solving
/// all components jointly with naturality along a basis of each Hom space.
pub fn left_family_system<A: Adjunction>(adj: &A, family: &Family<A::Src>) -> Result<FamilyVerdict> {
    let data = left_data(adj, family)?;
    let homs = data.iter().map(|x| adj.hom_src(&x.gfc, &x.c)).collect::<Result<Vec<_>>>()?;
    let (blocks, unknowns) = blocks(homs);
    let Some(field) = data.first().map(|x| x.eta.field()) else { return Ok(FamilyVerdict::FamilyConsistent) };
    let mut sys = System { unknowns, rows: Vec::new() };
    for (k, x) in data.iter().enumerate() {
        let eta = x.eta.clone();
        let id = Matrix::identity(field, eta.rows());
        sys.add(&[(&blocks[k], &move |nu: &Matrix| eta.matmul(nu), false)], &id.to_vec(), field);
    }
    for (a, xa) in data.iter().enumerate() {
        for (b, xb) in data.iter().enumerate() {
            for f in adj.hom_src(&xa.c, &xb.c)?.basis() {
                let gff = adj.right_map(&xa.fc, &xb.fc, &adj.left_map(&xa.c, &xb.c, f)?)?;
                let f = f.clone();
                let zero = vec![0; f.rows() * gff.cols()];
                let lhs = move |nu: &Matrix| nu.matmul(&gff);
                let rhs = move |nu: &Matrix| f.matmul(nu);
                sys.add(&[(&blocks[b], &lhs, false), (&blocks[a], &rhs, true)], &zero, field);
            }
        }
    }
    Ok(if sys.solvable(field) { FamilyVerdict::FamilyConsistent } else { FamilyVerdict::Refuted })
}

/// Whether a natural `ξ` with `ξ ∘ ε = id` exists on the family.
pub fn right_family_system<A: Adjunction>(adj: &A, family: &Family<A::Tgt>) -> Result<FamilyVerdict> {
    let data = right_data(adj, family)?;
    let homs = data.iter().map(|x| adj.hom_tgt(&x.d, &x.fgd)).collect::<Result<Vec<_>>>()?;
    let (blocks, unknowns) = blocks(homs);
    let Some(field) = data.first().map(|x| x.eps.field()) else { return Ok(FamilyVerdict::FamilyConsistent) };
    let mut sys = System { unknowns, rows: Vec::new() };
    for (k, x) in data.iter().enumerate() {
        let eps = x.eps.clone();
        let id = Matrix::identity(field, eps.cols());
        sys.add(&[(&blocks[k], &move |xi: &Matrix| xi.matmul(&eps), false)], &id.to_vec(), field);
    }
    for (a, xa) in data.iter().enumerate() {
        for (b, xb) in data.iter().enumerate() {
            for g in adj.hom_tgt(&xa.d, &xb.d)?.basis() {
                let fgg = adj.left_map(&xa.gd, &xb.gd, &adj.right_map(&xa.d, &xb.d, g)?)?;
                let g = g.clone();
                let zero = vec![0; fgg.rows() * g.cols()];
                let lhs = move |xi: &Matrix| fgg.matmul(xi);
                let rhs = move |xi: &Matrix| xi.matmul(&g);
                sys.add(&[(&blocks[a], &lhs, false), (&blocks[b], &rhs, true)], &zero, field);
            }
        }
    }
    Ok(if sys.solvable(field) { FamilyVerdict::FamilyConsistent } else { FamilyVerdict::Refuted })
}

/// Checks `ε_{FC} ∘ F(η_C) = id` and `G(ε_D) ∘ η_{GD} = id` on the families.
pub fn triangle_identities<A: Adjunction>(adj: &A, src: &Family<A::Src>, tgt: &Family<A::Tgt>) -> Result<()> {
    for (label, c) in &src.objects {
        let fc = adj.left(c)?;
        let gfc = adj.right(&fc)?;
        let composite = adj.counit(&fc)?.matmul(&adj.left_map(c, &gfc, &adj.unit(c)?)?);
        if !composite.is_identity() {
            return Err(violation(format!("ε_FC ∘ F(η_C) ≠ id at {label}")));
        }
    }
    for (label, d) in &tgt.objects {
        let gd = adj.right(d)?;
        let fgd = adj.left(&gd)?;
        let composite = adj.right_map(&fgd, d, &adj.counit(d)?)?.matmul(&adj.unit(&gd)?);
        if !composite.is_identity() {
            return Err(violation(format!("G(ε_D) ∘ η_GD ≠ id at {label}")));
        }
    }
    Ok(())
}

/// Shuffled sample of indices, used to bound the work on large families.
pub fn sample_indices<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k);
    idx.sort_unstable();
    idx
}

//! Composition laws for natural fullness along composable algebra maps
//! `α: A → B`, `β: B → C`.
//!
//! Checked implications:
//! * restrictions of `α` and `β` naturally full ⇒ restriction of `β ∘ α` is;
//! * restriction of `β ∘ α` naturally full ⇒ restriction of `β` is, since
//!   restriction along `α` is faithful;
//! * extensions along `α` and `β` naturally full ⇒ extension along `β ∘ α` is;
//! * extension along `β ∘ α` naturally full and `α` separable ⇒ extension
//!   along `β` is.

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::{Error, Result};
use crate::exactla::PrimeField;
use crate::report::{FamilyEvidence, Options};
use crate::scalars::{analyze_extension, analyze_restriction};

use super::random::{diagonal, quotient_map, random_morphism};

/// Verdicts for one composable pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionCheck {
    pub verdicts: Vec<(String, bool)>,
    /// True verdicts whose splitting was re-verified on a family.
    pub witnesses: usize,
}

impl CompositionCheck {
    pub fn verdicts(&self) -> impl Iterator<Item = (&str, bool)> {
        self.verdicts.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.verdicts().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    fn record(&mut self, name: &str, nf: bool, evidence: &Option<FamilyEvidence>) -> Result<()> {
        if nf {
            if evidence.as_ref().and_then(|e| e.splitting.as_ref()).is_none() {
                return Err(Error::WitnessViolation(format!("{name}: naturally full without a verified splitting")));
            }
            self.witnesses += 1;
        }
        self.verdicts.push((name.to_string(), nf));
        Ok(())
    }
}

fn implies(premise: bool, conclusion: bool, law: &str) -> Result<()> {
    if premise && !conclusion {
        return Err(Error::InconsistentCriteria(format!("composition law failed: {law}")));
    }
    Ok(())
}

/// An algebra map out of `b` with target of dimension at most `max_dim`:
/// the identity, a quotient, the diagonal, or a quotient followed by the
/// diagonal.
pub fn random_morphism_from<R: Rng>(field: PrimeField, b: &Arc<Algebra>, max_dim: usize, rng: &mut R) -> Result<AlgebraMorphism> {
    for _ in 0..16 {
        let beta = match rng.gen_range(0..4) {
            0 => AlgebraMorphism::identity(b.clone()),
            1 => match quotient_map(b, rng)? {
                Some(q) => q,
                None => continue,
            },
            2 => diagonal(field, b),
            _ => match quotient_map(b, rng)? {
                Some(q) => q.then(&diagonal(field, &q.target))?,
                None => continue,
            },
        };
        if beta.target.dim() <= max_dim.max(b.dim()) {
            return Ok(beta);
        }
    }
    Ok(AlgebraMorphism::identity(b.clone()))
}

/// A seeded composable pair with all dimensions at most `max_dim`, except
/// that `β` may be the identity on a larger `B`.
pub fn random_composable_pair<R: Rng>(field: PrimeField, max_dim: usize, rng: &mut R) -> Result<(AlgebraMorphism, AlgebraMorphism)> {
    let alpha = random_morphism(field, max_dim, rng)?;
    let beta = random_morphism_from(field, &alpha.target, max_dim, rng)?;
    Ok((alpha, beta))
}

/// Analyzes `α`, `β` and `β ∘ α` and checks every composition law.
pub fn check_pair(alpha: &AlgebraMorphism, beta: &AlgebraMorphism, opts: &Options) -> Result<CompositionCheck> {
    let gamma = alpha.then(beta)?;
    let (ra, rb, rc) = (analyze_restriction(alpha, opts)?, analyze_restriction(beta, opts)?, analyze_restriction(&gamma, opts)?);
    let (ea, eb, ec) = (analyze_extension(alpha, opts)?, analyze_extension(beta, opts)?, analyze_extension(&gamma, opts)?);

    implies(ra.naturally_full && rb.naturally_full, rc.naturally_full, "restrictions compose")?;
    implies(rc.naturally_full, rb.naturally_full, "composite restriction cancels on the outer map")?;
    implies(ea.naturally_full && eb.naturally_full, ec.naturally_full, "extensions compose")?;
    implies(ec.naturally_full && ra.separable, eb.naturally_full, "composite extension with separable inner map")?;

    let mut out = CompositionCheck::default();
    out.record("restriction_alpha_naturally_full", ra.naturally_full, &ra.evidence)?;
    out.record("restriction_beta_naturally_full", rb.naturally_full, &rb.evidence)?;
    out.record("restriction_composite_naturally_full", rc.naturally_full, &rc.evidence)?;
    out.record("extension_alpha_naturally_full", ea.naturally_full, &ea.evidence)?;
    out.record("extension_beta_naturally_full", eb.naturally_full, &eb.evidence)?;
    out.record("extension_composite_naturally_full", ec.naturally_full, &ec.evidence)?;
    out.verdicts.push(("composite_restriction_without_inner".into(), rc.naturally_full && !ra.naturally_full));
    out.verdicts.push(("alpha_separable".into(), ra.separable));
    Ok(out)
}

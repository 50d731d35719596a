//! Text and JSON rendering of analysis reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bimodfunc::BimoduleReport;
use crate::corings::CoringReport;
use crate::cormor::CoringMorphismReport;
use crate::error::Result;
use crate::oracle::adjunction::FamilyVerdict;
use crate::oracle::suite::{Outcome, SuiteReport};
use crate::report::{Condition, FamilyEvidence, Scope};
use crate::scalars::ScalarsReport;

use super::instance::FORMAT_VERSION;

/// The JSON envelope of every `analyze` command.
#[derive(Serialize)]
pub struct AnalysisReport<'a, T: Serialize> {
    pub format: &'static str,
    pub analyzer: &'static str,
    pub instance: &'a str,
    pub p: u32,
    pub report: &'a T,
}

pub fn json<T: Serialize>(analyzer: &'static str, instance: &str, p: u32, report: &T) -> Result<String> {
    let env = AnalysisReport { format: FORMAT_VERSION, analyzer, instance, p, report };
    Ok(serde_json::to_string_pretty(&env)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn vector(v: &[u32]) -> String {
    format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(", "))
}

fn conditions(out: &mut String, cs: &[Condition]) {
    for c in cs {
        let scope = match c.scope {
            Scope::Exact => "exact",
            Scope::Family => "family",
        };
        let _ = writeln!(out, "    [{scope}] {} = {}: {}", c.criterion, c.verdict, c.detail);
    }
}

fn evidence(out: &mut String, ev: &Option<FamilyEvidence>) {
    let Some(ev) = ev else { return };
    let failing: Vec<&str> = ev.per_object.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.as_str()).collect();
    if failing.is_empty() {
        let _ = writeln!(out, "    family: full on all {} objects", ev.per_object.len());
    } else {
        let _ = writeln!(out, "    family: not full at {}", failing.join(", "));
    }
    if let Some(s) = &ev.splitting {
        let _ = writeln!(
            out,
            "    witness: {} re-verified on [{}] ({} spanning checks, {} naturality checks)",
            s.origin,
            s.objects.join(", "),
            s.spanning_checks,
            s.naturality_checks
        );
    }
    match ev.family_system {
        Some(FamilyVerdict::Refuted) => {
            let _ = writeln!(out, "    family system: no natural splitting even on the family");
        }
        Some(FamilyVerdict::FamilyConsistent) => {
            let _ = writeln!(out, "    family system: criterion false, family-consistent");
        }
        None => {}
    }
}

fn headline(out: &mut String, name: &str, nf: bool, cs: &[Condition], ev: &Option<FamilyEvidence>) {
    let _ = writeln!(out, "{name}: naturally full: {}", yes(nf));
    conditions(out, cs);
    evidence(out, ev);
}

pub fn scalars_text(id: &str, r: &ScalarsReport) -> String {
    let mut out = format!("scalars along {id}\n");
    let res = &r.restriction;
    if res.full {
        let _ = writeln!(out, "restriction: full and naturally full (ker ε_S = 0)");
    } else {
        let _ = writeln!(out, "restriction: not full: ker ε_S has dim {}", res.epimorphism.kernel_dim);
    }
    let _ = writeln!(out, "    separable: {}", yes(res.separable));
    if let Some(e) = &res.witness_unit_tensor {
        let _ = writeln!(out, "    invariant unit tensor: {}", vector(e));
    }
    conditions(&mut out, &res.conditions);
    evidence(&mut out, &res.evidence);
    let ext = &r.extension;
    let full = match ext.full_on_family {
        Some(true) => "full on family; ",
        Some(false) => "not full on family; ",
        None => "",
    };
    if ext.naturally_full {
        let e = ext.central_idempotent.as_deref().map(vector).unwrap_or_default();
        let _ = writeln!(out, "extension: {full}naturally full: YES (bimodule section E with φ∘E = id, e = E(1) = {e})");
    } else {
        let _ = writeln!(out, "extension: {full}naturally full: NO (section system infeasible)");
    }
    conditions(&mut out, &ext.conditions);
    evidence(&mut out, &ext.evidence);
    out
}

pub fn bimodule_text(id: &str, r: &BimoduleReport) -> String {
    let mut out = format!("bimodule {id}\n");
    let co = &r.coinduction;
    let _ = writeln!(out, "coinduction: naturally full: {} (invariant space dim {})", yes(co.naturally_full), co.invariant_dim);
    if let Some(z) = &co.witness_z {
        let _ = writeln!(out, "    witness z = {}", vector(z));
    }
    evidence(&mut out, &co.evidence);
    match &r.induction {
        Some(ind) => {
            let _ = writeln!(out, "induction: naturally full: {}", yes(ind.naturally_full));
            if let Some(e) = &ind.central_idempotent {
                let _ = writeln!(out, "    central idempotent {}", vector(e));
            }
            evidence(&mut out, &ind.evidence);
        }
        None => {
            let _ = writeln!(out, "induction: not analyzed (bimodule is not finitely generated projective)");
        }
    }
    let s = &r.structure;
    let _ = writeln!(out, "structure: generator {}, χ epimorphism {}", yes(s.generator), yes(s.chi_epimorphism));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn coring_text(id: &str, r: &CoringReport) -> String {
    let mut out = format!("coring {id}\n");
    headline(&mut out, "cotensor", r.cotensor.naturally_full, &r.cotensor.conditions, &r.cotensor.evidence);
    if let Some(z) = &r.cotensor.witness_z {
        let _ = writeln!(out, "    witness z = {}", vector(z));
    }
    headline(&mut out, "forgetful", r.forgetful.naturally_full, &r.forgetful.conditions, &r.forgetful.evidence);
    let d = &r.derived;
    let opt = |b: Option<bool>| b.map_or("n/a", yes);
    let _ = writeln!(
        out,
        "derived: fgp left {}, fgp right {}, Frobenius map bijective {}, counit surjective {}, coseparable {}",
        opt(d.fgp_left),
        opt(d.fgp_right),
        opt(d.frobenius_bijective),
        yes(d.counit_surjective),
        yes(d.coseparable)
    );
    if let Some(g) = &r.grouplikes {
        let _ = writeln!(out, "grouplikes: {}", g.elements.len());
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn coring_morphism_text(id: &str, r: &CoringMorphismReport) -> String {
    let mut out = format!("coring morphism {id}\n");
    let f = &r.induction;
    headline(&mut out, "induction −⊗_R S", f.naturally_full, &f.conditions, &f.evidence);
    let _ = writeln!(out, "    dim GF(C) = {}", f.gfc_dim);
    let g = &r.cotensor;
    headline(&mut out, "cotensor −□_D (S⊗_R C)", g.naturally_full, &g.conditions, &g.evidence);
    let _ = writeln!(out, "    Φ̂ injective: {}", yes(g.phi_hat_injective));
    out
}

pub fn suite_text(r: &SuiteReport) -> String {
    let mut out =
        format!("suite: seed {}, {} instances per kind, primes {:?}, max dim {}\n", r.config.seed, r.config.count, r.config.primes, r.config.max_dim);
    for (kind, s) in &r.summaries {
        let _ = writeln!(
            out,
            "{:<24} {:>4} checked {:>4} skipped {:>4} violations {:>5} witnesses",
            kind.tag(),
            s.checked,
            s.skipped,
            s.violations,
            s.witnesses_verified
        );
    }
    for v in r.violations() {
        if let Outcome::Violation { message } = &v.outcome {
            let _ = writeln!(out, "VIOLATION {} (p = {}): {message}", v.id, v.p);
        }
    }
    let _ = writeln!(out, "{}", if r.is_clean() { "no violations" } else { "FAILED" });
    out
}

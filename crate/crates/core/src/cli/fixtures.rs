//! The built-in fixture catalog.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::corings::{comatrix_coring, sweedler_coring, trivial_coring};
use crate::cormor::CoringMorphism;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::modrep::Bimodule;
use crate::scalars::build_triangular_example;

use super::instance::{Builder, InstanceFile};

/// Catalog entry: id, whether it takes a prime, whether it takes a base
/// fixture, and a one-line description.
pub struct FixtureInfo {
    pub id: &'static str,
    pub takes_p: bool,
    pub takes_base: bool,
    pub description: &'static str,
}

pub const CATALOG: [FixtureInfo; 7] = [
    FixtureInfo { id: "FIX-ID", takes_p: false, takes_base: false, description: "identity map of F_2" },
    FixtureInfo { id: "FIX-PROJ", takes_p: false, takes_base: false, description: "projection F_2 × F_2 → F_2 onto the first factor" },
    FixtureInfo {
        id: "FIX-TRI",
        takes_p: true,
        takes_base: false,
        description: "upper triangular 2x2 matrices onto the e11 corner; extension full but not naturally full",
    },
    FixtureInfo { id: "FIX-F4", takes_p: false, takes_base: false, description: "inclusion F_2 → F_4" },
    FixtureInfo { id: "FIX-MAT2", takes_p: false, takes_base: false, description: "comatrix coring of F_2^2 over F_2 (2x2 matrix coalgebra)" },
    FixtureInfo {
        id: "FIX-SWE",
        takes_p: false,
        takes_base: true,
        description: "Sweedler coring of a fixture map (default FIX-PROJ), with its counit morphism",
    },
    FixtureInfo {
        id: "FIX-TRIV",
        takes_p: false,
        takes_base: true,
        description: "trivial coring of a fixture algebra (default F_2), with its identity morphism",
    },
];

fn f2() -> PrimeField {
    PrimeField::new(2).expect("2 is prime")
}

fn fix_id() -> AlgebraMorphism {
    AlgebraMorphism::identity(Arc::new(Algebra::ground(f2())))
}

pub fn fix_proj() -> AlgebraMorphism {
    let k = f2();
    let r = Arc::new(Algebra::split(k, 2));
    let s = Arc::new(Algebra::ground(k));
    AlgebraMorphism::new(r, s, Matrix::from_fn(k, 1, 2, |_, c| u32::from(c == 0))).expect("shape 1x2")
}

pub fn fix_tri(p: u32) -> Result<AlgebraMorphism> {
    Ok(build_triangular_example(PrimeField::new(p)?).1)
}

pub fn fix_f4() -> AlgebraMorphism {
    AlgebraMorphism::unit_map(Arc::new(Algebra::polynomial_quotient(f2(), &[1, 1])))
}

pub fn fix_mat2_bimodule() -> Result<Bimodule> {
    let k = Arc::new(Algebra::ground(f2()));
    Bimodule::new(k.clone(), k, 2, vec![Matrix::identity(f2(), 2)], vec![Matrix::identity(f2(), 2)])
}

/// The map behind a morphism fixture.
pub fn fixture_morphism(id: &str, p: u32) -> Result<AlgebraMorphism> {
    match id {
        "FIX-ID" => Ok(fix_id()),
        "FIX-PROJ" => Ok(fix_proj()),
        "FIX-TRI" => fix_tri(p),
        "FIX-F4" => Ok(fix_f4()),
        other => Err(Error::UnknownId(format!("{other:?} is not a morphism fixture"))),
    }
}

/// Emits a fixture. `p` applies to FIX-TRI and to a FIX-TRI base; `base`
/// names the morphism fixture behind FIX-SWE, or the fixture whose source
/// algebra FIX-TRIV uses.
pub fn emit(id: &str, p: Option<u32>, base: Option<&str>) -> Result<InstanceFile> {
    let info = CATALOG.iter().find(|f| f.id == id).ok_or_else(|| Error::UnknownId(format!("fixture {id:?}")))?;
    if p.is_some() && !info.takes_p && base != Some("FIX-TRI") {
        return Err(Error::Parse(format!("{id} does not take a prime")));
    }
    if base.is_some() && !info.takes_base {
        return Err(Error::Parse(format!("{id} does not take a base fixture")));
    }
    let p = p.unwrap_or(2);
    let file = match id {
        "FIX-ID" | "FIX-PROJ" | "FIX-TRI" | "FIX-F4" => {
            let phi = fixture_morphism(id, p)?;
            let mut b = Builder::new(phi.field().p(), info.description);
            b.algebra("R", &phi.source);
            b.algebra("S", &phi.target);
            b.morphism("phi", &phi);
            b.finish()
        }
        "FIX-MAT2" => {
            let c = comatrix_coring(&fix_mat2_bimodule()?)?;
            let mut b = Builder::new(2, info.description);
            b.algebra("K", c.base());
            b.coring("mat2", &c);
            b.finish()
        }
        "FIX-SWE" => {
            let phi = fixture_morphism(base.unwrap_or("FIX-PROJ"), p)?;
            let c = sweedler_coring(&phi)?;
            let triv = trivial_coring(&phi.target)?;
            let counit = CoringMorphism::counit_morphism(&c)?;
            let mut b = Builder::new(phi.field().p(), info.description);
            b.algebra("R", &phi.source);
            b.algebra("S", &phi.target);
            b.morphism("phi", &phi);
            b.coring("sweedler", &c);
            b.coring("trivial", &triv);
            b.coring_morphism("counit", &counit, "sweedler", "trivial");
            b.finish()
        }
        _ => {
            let r = match base {
                Some(f) => fixture_morphism(f, p)?.source,
                None => Arc::new(Algebra::ground(f2())),
            };
            let c = trivial_coring(&r)?;
            let id_morphism = CoringMorphism::identity(&c)?;
            let mut b = Builder::new(r.field().p(), info.description);
            b.algebra("R", &r);
            b.coring("trivial", &c);
            b.coring_morphism("identity", &id_morphism, "trivial", "trivial");
            b.finish()
        }
    };
    Ok(file)
}

/// File name under which a fixture ships in the repository.
pub fn file_name(id: &str) -> String {
    format!("{}.json", id.to_lowercase().replace('-', "_"))
}

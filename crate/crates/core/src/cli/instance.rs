//! The `natfull/1` JSON instance format: algebras, algebra maps, bimodules,
//! corings and coring morphisms keyed by string ids.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::corings::Coring;
use crate::cormor::{validate_coring_morphism, CoringMorphism};
use crate::error::{Error, Result, Violation};
use crate::exactla::{Matrix, PrimeField};
use crate::modrep::Bimodule;

pub const FORMAT_VERSION: &str = "natfull/1";

/// Row-major integer matrix, reduced mod `p` on load.
pub type Rows = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    /// Overrides the file-level prime; must agree with it when both are given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub dim: usize,
    /// `mul[i][j]` holds the coordinates of `e_i e_j`.
    pub mul: Vec<Vec<Vec<i64>>>,
    pub unit: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    /// `matrix[i][j]` is the coefficient of target basis `i` in `φ(e_j)`.
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismRef {
    Id(String),
    Inline(MorphismSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub left: String,
    pub right: String,
    pub dim: usize,
    /// Action matrix of each basis element of the left algebra.
    pub left_action: Vec<Rows>,
    /// Action matrix of each basis element of the right algebra.
    pub right_action: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoringSpec {
    pub base: String,
    /// A bimodule id over `base` on both sides.
    pub carrier: String,
    /// `dim C² x dim C`, row `i·dim C + j` for `c_i ⊗ c_j`.
    pub delta: Rows,
    /// `dim R x dim C`.
    pub epsilon: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoringMorphismSpec {
    pub phi: MorphismRef,
    #[serde(rename = "Phi")]
    pub map: Rows,
    pub source_coring: String,
    pub target_coring: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub corings: BTreeMap<String, CoringSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coring_morphisms: BTreeMap<String, CoringMorphismSpec>,
}

/// A fully resolved and validated instance file.
#[derive(Clone, Debug)]
pub struct Instance {
    pub file: InstanceFile,
    pub field: PrimeField,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub morphisms: BTreeMap<String, AlgebraMorphism>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub corings: BTreeMap<String, Coring>,
    pub coring_morphisms: BTreeMap<String, CoringMorphism>,
}

/// Violations found while resolving, with object paths as locations.
#[derive(Default)]
struct Problems(Vec<Violation>);

impl Problems {
    fn push(&mut self, path: &str, law: impl Into<String>) {
        self.0.push(Violation::new(law, path));
    }

    fn extend(&mut self, path: &str, vs: Vec<Violation>) {
        self.0.extend(vs.into_iter().map(|v| Violation::new(v.law, format!("{path} {}", v.location))));
    }

    fn error(&mut self, path: &str, e: Error) {
        match e {
            Error::Validation(vs) => self.extend(path, vs),
            other => self.push(path, other.to_string()),
        }
    }
}

fn matrix(field: PrimeField, rows: &Rows, shape: (usize, usize)) -> Result<Matrix> {
    if rows.is_empty() && shape.0 == 0 {
        return Ok(Matrix::zeros(field, 0, shape.1));
    }
    let m = Matrix::from_rows(field, rows)?;
    if m.shape() != shape {
        return Err(Error::DimensionMismatch(format!("expected a {}x{} matrix, got {}x{}", shape.0, shape.1, m.rows(), m.cols())));
    }
    Ok(m)
}

impl InstanceFile {
    pub fn new(p: u32) -> Self {
        Self { version: FORMAT_VERSION.into(), p: Some(p), ..Self::default() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", file.version)));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn prime(&self) -> Result<u32> {
        let mut primes = self.p.into_iter().chain(self.algebras.values().filter_map(|a| a.p));
        let p = primes.next().ok_or_else(|| Error::Parse("no prime given: set \"p\" at the top level".into()))?;
        if let Some(q) = primes.find(|&q| q != p) {
            return Err(Error::Parse(format!("conflicting primes {p} and {q}")));
        }
        Ok(p)
    }

    /// Builds every object and collects all violations.
    pub fn resolve(self) -> Result<Instance> {
        let field = PrimeField::new(self.prime()?)?;
        let mut bad = Problems::default();
        let mut algebras = BTreeMap::new();
        for (id, spec) in &self.algebras {
            let path = format!("algebras.{id}");
            match Algebra::new(field, spec.dim, &spec.mul, &spec.unit) {
                Ok(a) => {
                    let vs = a.validate();
                    if vs.is_empty() {
                        algebras.insert(id.clone(), Arc::new(a));
                    } else {
                        bad.extend(&path, vs);
                    }
                }
                Err(e) => bad.error(&path, e),
            }
        }
        let algebra = |bad: &mut Problems, path: &str, id: &str| -> Option<Arc<Algebra>> {
            let a = algebras.get(id).cloned();
            if a.is_none() && !self.algebras.contains_key(id) {
                bad.push(path, format!("unknown algebra {id:?}"));
            }
            a
        };
        let build_morphism = |bad: &mut Problems, path: &str, spec: &MorphismSpec| -> Option<AlgebraMorphism> {
            let (s, t) = (algebra(bad, path, &spec.source)?, algebra(bad, path, &spec.target)?);
            let phi = matrix(field, &spec.matrix, (t.dim(), s.dim())).and_then(|m| AlgebraMorphism::new(s, t, m));
            match phi {
                Ok(phi) => {
                    let vs = phi.validate();
                    if vs.is_empty() {
                        return Some(phi);
                    }
                    bad.extend(path, vs);
                }
                Err(e) => bad.error(path, e),
            }
            None
        };
        let mut morphisms = BTreeMap::new();
        for (id, spec) in &self.morphisms {
            if let Some(phi) = build_morphism(&mut bad, &format!("morphisms.{id}"), spec) {
                morphisms.insert(id.clone(), phi);
            }
        }
        let mut bimodules = BTreeMap::new();
        for (id, spec) in &self.bimodules {
            let path = format!("bimodules.{id}");
            let (Some(l), Some(r)) = (algebra(&mut bad, &path, &spec.left), algebra(&mut bad, &path, &spec.right)) else {
                continue;
            };
            let actions = |ms: &[Rows], a: &Algebra| -> Result<Vec<Matrix>> {
                if ms.len() != a.dim() {
                    return Err(Error::DimensionMismatch(format!("expected {} action matrices, got {}", a.dim(), ms.len())));
                }
                ms.iter().map(|m| matrix(field, m, (spec.dim, spec.dim))).collect()
            };
            let m = actions(&spec.left_action, &l).and_then(|la| Bimodule::new(l.clone(), r.clone(), spec.dim, la, actions(&spec.right_action, &r)?));
            match m {
                Ok(m) => {
                    let vs = m.validate();
                    if vs.is_empty() {
                        bimodules.insert(id.clone(), m);
                    } else {
                        bad.extend(&path, vs);
                    }
                }
                Err(e) => bad.error(&path, e),
            }
        }
        let mut corings = BTreeMap::new();
        for (id, spec) in &self.corings {
            let path = format!("corings.{id}");
            let Some(base) = algebra(&mut bad, &path, &spec.base) else { continue };
            let Some(carrier) = bimodules.get(&spec.carrier).cloned() else {
                if !self.bimodules.contains_key(&spec.carrier) {
                    bad.push(&path, format!("unknown bimodule {:?}", spec.carrier));
                }
                continue;
            };
            let n = carrier.dim();
            let c = matrix(field, &spec.delta, (n * n, n))
                .and_then(|d| Coring::checked(base.clone(), carrier, d, matrix(field, &spec.epsilon, (base.dim(), n))?));
            match c {
                Ok(c) => {
                    corings.insert(id.clone(), c);
                }
                Err(e) => bad.error(&path, e),
            }
        }
        let mut coring_morphisms = BTreeMap::new();
        for (id, spec) in &self.coring_morphisms {
            let path = format!("coring_morphisms.{id}");
            let phi = match &spec.phi {
                MorphismRef::Id(m) => {
                    let phi = morphisms.get(m).cloned();
                    if phi.is_none() && !self.morphisms.contains_key(m) {
                        bad.push(&path, format!("unknown morphism {m:?}"));
                    }
                    phi
                }
                MorphismRef::Inline(m) => build_morphism(&mut bad, &path, m),
            };
            let coring = |bad: &mut Problems, cid: &str| {
                let c = corings.get(cid).cloned();
                if c.is_none() && !self.corings.contains_key(cid) {
                    bad.push(&path, format!("unknown coring {cid:?}"));
                }
                c
            };
            let (src, tgt) = (coring(&mut bad, &spec.source_coring), coring(&mut bad, &spec.target_coring));
            let (Some(phi), Some(src), Some(tgt)) = (phi, src, tgt) else { continue };
            let map = match matrix(field, &spec.map, (tgt.dim(), src.dim())) {
                Ok(m) => m,
                Err(e) => {
                    bad.error(&path, e);
                    continue;
                }
            };
            let vs = validate_coring_morphism(&src, &tgt, &phi, &map);
            if !vs.is_empty() {
                bad.extend(&path, vs);
                continue;
            }
            match CoringMorphism::new(src, tgt, phi, map) {
                Ok(m) => {
                    coring_morphisms.insert(id.clone(), m);
                }
                Err(e) => bad.error(&path, e),
            }
        }
        if !bad.0.is_empty() {
            return Err(Error::Validation(bad.0));
        }
        Ok(Instance { file: self, field, algebras, morphisms, bimodules, corings, coring_morphisms })
    }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self> {
        InstanceFile::parse(text)?.resolve()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Object count per section, for reporting.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        BTreeMap::from([
            ("algebras", self.algebras.len()),
            ("morphisms", self.morphisms.len()),
            ("bimodules", self.bimodules.len()),
            ("corings", self.corings.len()),
            ("coring_morphisms", self.coring_morphisms.len()),
        ])
    }
}

/// Reads, parses and validates a file.
pub fn load(path: &Path) -> Result<Instance> {
    Instance::parse(&std::fs::read_to_string(path)?)
}

/// Picks `id` from a section, or its only entry when `id` is absent.
pub fn select<'a, T>(section: &'a BTreeMap<String, T>, id: Option<&str>, what: &str) -> Result<(&'a str, &'a T)> {
    match id {
        Some(id) => section.get_key_value(id).map(|(k, v)| (k.as_str(), v)).ok_or_else(|| Error::UnknownId(format!("{what} {id:?}"))),
        None if section.len() == 1 => Ok(section.iter().next().map(|(k, v)| (k.as_str(), v)).expect("one entry")),
        None => Err(Error::UnknownId(format!("{} {what}s in file; pass --id", section.len()))),
    }
}

fn rows(m: &Matrix) -> Rows {
    m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
}

impl AlgebraSpec {
    pub fn of(a: &Algebra) -> Self {
        let n = a.dim();
        let mul = (0..n).map(|i| (0..n).map(|j| a.structure(i, j).iter().map(|&x| i64::from(x)).collect()).collect()).collect();
        Self { p: None, dim: n, mul, unit: a.one().iter().map(|&x| i64::from(x)).collect() }
    }
}

/// Accumulates objects into an [`InstanceFile`], naming algebras on demand.
pub struct Builder {
    file: InstanceFile,
    names: Vec<(Arc<Algebra>, String)>,
}

impl Builder {
    pub fn new(p: u32, description: &str) -> Self {
        Self { file: InstanceFile { description: Some(description.into()), ..InstanceFile::new(p) }, names: Vec::new() }
    }

    /// Registers an algebra under `id`, or returns the id it already has.
    pub fn algebra(&mut self, id: &str, a: &Arc<Algebra>) -> String {
        if let Some((_, n)) = self.names.iter().find(|(b, _)| **b == **a) {
            return n.clone();
        }
        self.file.algebras.insert(id.into(), AlgebraSpec::of(a));
        self.names.push((a.clone(), id.into()));
        id.into()
    }

    fn algebra_name(&mut self, a: &Arc<Algebra>) -> String {
        let id = format!("A{}", self.names.len());
        self.algebra(&id, a)
    }

    pub fn morphism(&mut self, id: &str, phi: &AlgebraMorphism) -> &mut Self {
        let source = self.algebra_name(&phi.source);
        let target = self.algebra_name(&phi.target);
        self.file.morphisms.insert(id.into(), MorphismSpec { source, target, matrix: rows(&phi.matrix) });
        self
    }

    pub fn bimodule(&mut self, id: &str, m: &Bimodule) -> &mut Self {
        let left = self.algebra_name(m.left_algebra());
        let right = self.algebra_name(m.right_algebra());
        let spec = BimoduleSpec {
            left,
            right,
            dim: m.dim(),
            left_action: m.left_action().iter().map(rows).collect(),
            right_action: m.right_action().iter().map(rows).collect(),
        };
        self.file.bimodules.insert(id.into(), spec);
        self
    }

    /// Adds the coring and its carrier, the latter as `<id>.carrier`.
    pub fn coring(&mut self, id: &str, c: &Coring) -> &mut Self {
        let base = self.algebra_name(c.base());
        let carrier = format!("{id}.carrier");
        self.bimodule(&carrier, c.carrier());
        let spec = CoringSpec { base, carrier, delta: rows(c.delta_lift()), epsilon: rows(c.epsilon()) };
        self.file.corings.insert(id.into(), spec);
        self
    }

    /// Adds a coring morphism between corings already added under the given ids.
    pub fn coring_morphism(&mut self, id: &str, m: &CoringMorphism, source: &str, target: &str) -> &mut Self {
        let phi = m.phi();
        let spec = MorphismSpec { source: self.algebra_name(&phi.source), target: self.algebra_name(&phi.target), matrix: rows(&phi.matrix) };
        let spec =
            CoringMorphismSpec { phi: MorphismRef::Inline(spec), map: rows(m.map()), source_coring: source.into(), target_coring: target.into() };
        self.file.coring_morphisms.insert(id.into(), spec);
        self
    }

    pub fn finish(self) -> InstanceFile {
        self.file
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn round_trip_through_json() {
        let s = Arc::new(Algebra::split(f2(), 2));
        let k = Arc::new(Algebra::ground(f2()));
        let phi = AlgebraMorphism::new(s, k, Matrix::from_rows(f2(), &[vec![1, 0]]).unwrap()).unwrap();
        let mut b = Builder::new(2, "projection");
        b.morphism("proj", &phi);
        let text = b.finish().to_json().unwrap();
        let inst = Instance::parse(&text).unwrap();
        assert_eq!(inst.morphisms["proj"], phi);
    }

    #[test]
    fn entries_are_reduced_mod_p() {
        let text = r#"{"version":"natfull/1","p":3,"algebras":{"K":{"dim":1,"mul":[[[4]]],"unit":[-2]}}}"#;
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.algebras["K"].one(), &[1]);
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        assert!(matches!(Instance::parse(r#"{"version":"natfull/1","p":2,"alg"#), Err(Error::Parse(_))));
    }

    #[test]
    fn wrong_version_is_a_parse_error() {
        assert!(matches!(Instance::parse(r#"{"version":"natfull/0","p":2}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn non_multiplicative_map_names_the_basis_pair() {
        let text = r#"{"version":"natfull/1","p":2,
            "algebras":{"K2":{"dim":2,"mul":[[[1,0],[0,0]],[[0,0],[0,1]]],"unit":[1,1]},
                        "K":{"dim":1,"mul":[[[1]]],"unit":[1]}},
            "morphisms":{"bad":{"source":"K2","target":"K","matrix":[[1,1]]}}}"#;
        let Err(Error::Validation(vs)) = Instance::parse(text) else { panic!("expected a validation error") };
        assert!(
            vs.iter().any(|v| v.law == "multiplicativity" && v.location.contains("morphisms.bad") && v.location.contains("(e_0, e_1)")),
            "{vs:?}"
        );
    }

    #[test]
    fn unknown_references_are_reported() {
        let text = r#"{"version":"natfull/1","p":2,"morphisms":{"m":{"source":"X","target":"Y","matrix":[]}}}"#;
        let Err(Error::Validation(vs)) = Instance::parse(text) else { panic!("expected a validation error") };
        assert!(vs.iter().any(|v| v.law.contains("unknown algebra")));
    }
}

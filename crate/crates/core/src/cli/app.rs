//! Command-line surface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::bimodfunc::analyze_bimodule;
use crate::corings::analyze_coring;
use crate::cormor::analyze_coring_morphism;
use crate::error::{Error, Result};
use crate::modrep::Bimodule;
use crate::oracle::adjunction::{left_full_on_family, right_full_on_family, Family};
use crate::oracle::suite::{equivalence_suite, Kind, SuiteConfig};
use crate::report::Options;
use crate::scalars::{analyze_scalars, ScalarExtension, ScalarsReport};

use super::fixtures::{emit, CATALOG};
use super::instance::{load, select};
use super::render;

#[derive(Parser)]
#[command(name = "natfull", version, about = "Decide natural fullness of functors between module and comodule categories over F_p algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Run an analyzer on an object of an instance file.
    #[command(subcommand)]
    Analyze(Analyze),
    /// The built-in fixture catalog.
    #[command(subcommand)]
    Fixtures(Fixtures),
    /// The seeded equivalence suite.
    #[command(subcommand)]
    Suite(Suite),
}

#[derive(Args)]
struct Common {
    /// Object id; may be omitted when the file has exactly one.
    #[arg(long)]
    id: Option<String>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for family construction and naturality sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled naturality squares per witness.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// Skip the family-level oracle checks.
    #[arg(long)]
    no_family: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options { seed: self.seed, naturality_samples: self.samples, family_checks: !self.no_family }
    }
}

#[derive(Subcommand)]
enum Analyze {
    /// Restriction and extension of scalars along an algebra map.
    Scalars {
        #[arg(long)]
        morphism: PathBuf,
        /// Instance file whose bimodules are checked for per-object fullness.
        #[arg(long)]
        family: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Coinduction and induction along a bimodule.
    Bimodule {
        #[arg(long)]
        bimodule: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Forgetful and cotensor functors of a coring.
    Coring {
        #[arg(long)]
        coring: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The induction and cotensor functors of a coring morphism.
    CoringMorphism {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Fixtures {
    /// List the catalog.
    List,
    /// Print or write a fixture as an instance file.
    Emit {
        id: String,
        /// Prime for FIX-TRI.
        #[arg(long)]
        p: Option<u32>,
        /// Base fixture for FIX-SWE and FIX-TRIV.
        #[arg(long)]
        of: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Scalars,
    Corings,
    Bridge,
    AlgebraMapReduction,
    CounitReduction,
    CoalgebraMorphism,
    Composition,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Scalars => Kind::Scalars,
            KindArg::Corings => Kind::Corings,
            KindArg::Bridge => Kind::Bridge,
            KindArg::AlgebraMapReduction => Kind::AlgebraMapReduction,
            KindArg::CounitReduction => Kind::CounitReduction,
            KindArg::CoalgebraMorphism => Kind::CoalgebraMorphism,
            KindArg::Composition => Kind::Composition,
        }
    }
}

#[derive(Subcommand)]
enum Suite {
    /// Run the suite; exits nonzero on any violation.
    Run {
        #[arg(long, env = "NATFULL_SEED", default_value_t = 1)]
        seed: u64,
        /// Instances per kind.
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// A single prime; by default instances alternate between 2 and 3.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 3)]
        maxdim: usize,
        /// Restrict to some kinds; repeatable.
        #[arg(long, value_enum)]
        kind: Vec<KindArg>,
        /// Write the JSON report here; `-` for standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Per-object fullness on a user-supplied family.
#[derive(Serialize)]
struct CustomFamily {
    extension: Vec<(String, bool)>,
    restriction: Vec<(String, bool)>,
}

#[derive(Serialize)]
struct ScalarsOutput<'a> {
    #[serde(flatten)]
    report: &'a ScalarsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    custom_family: Option<CustomFamily>,
}

fn custom_family(phi: &AlgebraMorphism, path: &Path) -> Result<CustomFamily> {
    let fam = load(path)?;
    let adj = ScalarExtension::new(phi)?;
    let over = |a: &Algebra| -> Family<Bimodule> {
        Family::new(fam.bimodules.iter().filter(|(_, m)| **m.left_algebra() == *a).map(|(l, m)| (l.clone(), m.forget_right())).collect())
    };
    Ok(CustomFamily { extension: left_full_on_family(&adj, &over(&phi.source))?, restriction: right_full_on_family(&adj, &over(&phi.target))? })
}

fn analyze(cmd: &Analyze, out: &mut dyn Write) -> Result<()> {
    let text = match cmd {
        Analyze::Scalars { morphism, family, common } => {
            let inst = load(morphism)?;
            let (id, phi) = select(&inst.morphisms, common.id.as_deref(), "morphism")?;
            let report = analyze_scalars(phi, &common.options())?;
            let custom = family.as_ref().map(|f| custom_family(phi, f)).transpose()?;
            if common.json {
                render::json("scalars", id, inst.p(), &ScalarsOutput { report: &report, custom_family: custom })?
            } else {
                let mut t = render::scalars_text(id, &report);
                if let Some(c) = custom {
                    for (side, objs) in [("extension", &c.extension), ("restriction", &c.restriction)] {
                        for (l, ok) in objs {
                            t.push_str(&format!("{side} on {l}: {}\n", if *ok { "full" } else { "not full" }));
                        }
                    }
                }
                t
            }
        }
        Analyze::Bimodule { bimodule, common } => {
            let inst = load(bimodule)?;
            let (id, m) = select(&inst.bimodules, common.id.as_deref(), "bimodule")?;
            let report = analyze_bimodule(m, &common.options())?;
            if common.json {
                render::json("bimodule", id, inst.p(), &report)?
            } else {
                render::bimodule_text(id, &report)
            }
        }
        Analyze::Coring { coring, common } => {
            let inst = load(coring)?;
            let (id, c) = select(&inst.corings, common.id.as_deref(), "coring")?;
            let report = analyze_coring(c, &common.options())?;
            if common.json {
                render::json("coring", id, inst.p(), &report)?
            } else {
                render::coring_text(id, &report)
            }
        }
        Analyze::CoringMorphism { input, common } => {
            let inst = load(input)?;
            let (id, m) = select(&inst.coring_morphisms, common.id.as_deref(), "coring morphism")?;
            let report = analyze_coring_morphism(m, &common.options())?;
            if common.json {
                render::json("coring_morphism", id, inst.p(), &report)?
            } else {
                render::coring_morphism_text(id, &report)
            }
        }
    };
    writeln!(out, "{}", text.trim_end())?;
    Ok(())
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Violations,
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    match cli.command {
        Command::Validate { file } => {
            let inst = load(&file)?;
            let counts: Vec<String> = inst.counts().into_iter().filter(|(_, n)| *n > 0).map(|(k, n)| format!("{n} {k}")).collect();
            writeln!(out, "{}: valid over F_{} ({})", file.display(), inst.p(), counts.join(", "))?;
        }
        Command::Analyze(cmd) => analyze(&cmd, out)?,
        Command::Fixtures(Fixtures::List) => {
            for f in &CATALOG {
                let params = match (f.takes_p, f.takes_base) {
                    (true, _) => " [--p P]",
                    (_, true) => " [--of FIXTURE]",
                    _ => "",
                };
                writeln!(out, "{}{params}\t{}", f.id, f.description)?;
            }
        }
        Command::Fixtures(Fixtures::Emit { id, p, of, out: path }) => {
            let json = emit(&id, p, of.as_deref())?.to_json()?;
            match path {
                Some(path) => std::fs::write(path, json + "\n")?,
                None => writeln!(out, "{json}")?,
            }
        }
        Command::Suite(Suite::Run { seed, count, p, maxdim, kind, json }) => {
            let cfg = SuiteConfig {
                seed,
                count,
                primes: p.map_or_else(|| vec![2, 3], |p| vec![p]),
                max_dim: maxdim,
                kinds: if kind.is_empty() { Kind::ALL.to_vec() } else { kind.into_iter().map(Kind::from).collect() },
                ..SuiteConfig::default()
            };
            if let Some(p) = p {
                crate::exactla::PrimeField::new(p)?;
            }
            let report = equivalence_suite(&cfg);
            match json.as_deref() {
                Some(path) if path.as_os_str() == "-" => writeln!(out, "{}", report.to_json()?)?,
                Some(path) => {
                    std::fs::write(path, report.to_json()? + "\n")?;
                    write!(out, "{}", render::suite_text(&report))?;
                }
                None => write!(out, "{}", render::suite_text(&report))?,
            }
            if !report.is_clean() {
                return Ok(Status::Violations);
            }
        }
    }
    Ok(Status::Ok)
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 on a
/// validation error, a violation or any other failure, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(Status::Ok) => 0,
        Ok(Status::Violations) => 1,
        Err(Error::Validation(vs)) => {
            let _ = writeln!(err, "error: validation failed with {} violation(s)", vs.len());
            for v in vs {
                let _ = writeln!(err, "  {v}");
            }
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

//! Command-line front end for `qhopf-core`.
//!
//! Every command prints an ordered list of `key=value` lines. Exit codes:
//! 0 when all checks pass, 1 when a mathematical check fails, 2 for input
//! and usage errors, 3 when a resource budget is exceeded.

pub mod demo;
pub mod report;
pub mod spec;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qhopf_core::catalog::{associator_phi, associator_tensor, scaling_automorphism};
use qhopf_core::cohomology::BarComplex;
use qhopf_core::cohomology::{
    brute_force_h2_multiplicative, trivialize_associator_with_budget, SearchSpace, Trivialization,
};
use qhopf_core::quasihopf::{pseudotwist_transform, trivialize_rmatrix};
use qhopf_core::{Error, Scalar};

pub use demo::Demo;
pub use report::Report;
pub use spec::{parse_spec, SpecDocument, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "qhopf", version, about = "Verify and analyze finite-dimensional quasi-Hopf algebras over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Additive,
    MultBrute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Search {
    Full,
    Primitive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Associator,
    Rmatrix,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the bialgebra, associator and R-matrix axioms of a spec.
    Verify { spec: PathBuf },
    /// Cohomology of the spec's algebra with trivial coefficients.
    Cohomology {
        spec: PathBuf,
        #[arg(long = "degree", required = true)]
        degrees: Vec<usize>,
        #[arg(long, value_enum, default_value = "additive")]
        coeff: Coeff,
        #[arg(long, value_enum, default_value = "full")]
        search: Search,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Build the associator Φ_s over O(α_p), optionally rescaled by x ↦ μx.
    Associator {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long)]
        mu: Option<u64>,
    },
    /// Twist the associator or R-matrix of a spec away.
    Trivialize {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "associator")]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run a named end-to-end scenario.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum Failure {
    Spec(PathBuf, SpecError),
    Io(PathBuf, std::io::Error),
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_RESOURCE,
        Error::Internal(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) => exit_code(e),
            _ => EXIT_INPUT,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Spec(path, e) => format!("{}:{e}", path.display()),
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli.command) {
        Ok((code, report)) => Outcome {
            code,
            stdout: report.to_string(),
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
        },
    }
}

pub fn execute(command: &Command) -> Result<(i32, Report), Failure> {
    match command {
        Command::Verify { spec } => verify(&load(spec)?),
        Command::Cohomology {
            spec,
            degrees,
            coeff,
            search,
            budget,
        } => cohomology(&load(spec)?, degrees, *coeff, *search, *budget),
        Command::Associator { p, s, mu } => associator(*p, *s, *mu),
        Command::Trivialize { spec, target, budget } => trivialize(&load(spec)?, *target, *budget),
        Command::Demo { name, seed, trials } => Ok(demo::run_demo(*name, *seed, *trials)?),
    }
}

pub fn load(path: &Path) -> Result<SpecDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    parse_spec(&text).map_err(|e| Failure::Spec(path.to_path_buf(), e))
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn instantiate(doc: &SpecDocument) -> Result<qhopf_core::QuasiData, Failure> {
    doc.instantiate().map_err(|e| Failure::Spec(PathBuf::from("<spec>"), e))
}

pub fn verify(doc: &SpecDocument) -> Result<(i32, Report), Failure> {
    let q = instantiate(doc)?;
    let mut report = Report::new();
    report.push("spec.p", doc.p);
    report.push("spec.dim", q.hopf.dim());
    let bialgebra = q.hopf.check_bialgebra();
    report.checks("check.bialgebra", &bialgebra);
    let axioms = q.check_all()?;
    report.checks("check", &axioms);
    let ok = bialgebra.all_passed() && axioms.all_passed();
    report.flag("verify.result", ok);
    Ok((status(ok), report))
}

pub fn cohomology(
    doc: &SpecDocument,
    degrees: &[usize],
    coeff: Coeff,
    search: Search,
    budget: u64,
) -> Result<(i32, Report), Failure> {
    let q = instantiate(doc)?;
    let mut report = Report::new();
    report.push("spec.p", doc.p);
    report.push("spec.dim", q.hopf.dim());
    match coeff {
        Coeff::Additive => {
            report.push("cohomology.coeff", "additive");
            let complex = BarComplex::with_budget(q.hopf.algebra(), budget as usize);
            for &n in degrees {
                let c = complex.cohomology(n)?;
                let key = format!("cohomology.h{n}");
                report.push(format!("{key}.dim"), c.dim);
                report.push(format!("{key}.cocycles"), c.dim_cocycles);
                report.push(format!("{key}.coboundaries"), c.dim_coboundaries);
                for (k, r) in c.representatives.iter().enumerate() {
                    report.push(format!("{key}.representative.{}", k + 1), r);
                }
            }
        }
        Coeff::MultBrute => {
            if degrees != [2] {
                return Err(Failure::Usage("mult-brute computes degree 2 only".into()));
            }
            report.push("cohomology.coeff", "mult-brute");
            let space = match search {
                Search::Full => SearchSpace::Full,
                Search::Primitive => SearchSpace::PrimitiveExponentials,
            };
            report.push(
                "cohomology.search",
                if search == Search::Full { "full" } else { "primitive" },
            );
            let r = brute_force_h2_multiplicative(&q.hopf, space, budget)?;
            report.push("cohomology.h2.candidates", r.candidates);
            report.push("cohomology.h2.cocycles", r.cocycles);
            report.push("cohomology.h2.coboundaries", r.coboundaries);
            report.push("cohomology.h2.gauge_candidates", r.gauge_candidates);
            report.push("cohomology.h2.classes", r.classes);
            report.flag("cohomology.h2.all_coboundaries", r.all_coboundaries);
        }
    }
    Ok((EXIT_OK, report))
}

pub fn associator(p: u32, s: u64, mu: Option<u64>) -> Result<(i32, Report), Failure> {
    let s = (s % p.max(1) as u64) as Scalar;
    let q = associator_phi(p, s)?;
    let mut report = Report::new();
    report.push("associator.p", p);
    report.push("associator.s", s);
    report.push("associator.phi", &q.phi);
    let axioms = q.check_all()?;
    report.checks("check", &axioms);
    let mut ok = axioms.all_passed();
    if let Some(mu) = mu {
        let images = scaling_automorphism(p, mu as Scalar)?;
        let image = q.phi.map_each_slot(&images)?;
        report.push("associator.mu", mu % p as u64);
        report.push("associator.image", &image);
        let mut found = None;
        for t in 0..p {
            if associator_tensor(&q.hopf, t)? == image {
                found = Some(t);
                break;
            }
        }
        match found {
            Some(t) => report.push("associator.image.s", t),
            None => {
                report.push("associator.image.s", "none");
                ok = false;
            }
        }
    }
    report.flag("associator.result", ok);
    Ok((status(ok), report))
}

pub fn trivialize(doc: &SpecDocument, target: Target, budget: u64) -> Result<(i32, Report), Failure> {
    let q = instantiate(doc)?;
    let mut report = Report::new();
    report.push("spec.p", doc.p);
    report.push("spec.dim", q.hopf.dim());
    match target {
        Target::Associator => {
            report.push("trivialize.target", "associator");
            match trivialize_associator_with_budget(&q, budget as usize)? {
                Trivialization::Trivialized { twist, rounds } => {
                    let done = pseudotwist_transform(&q, &twist)?;
                    let ok = done.phi.is_one();
                    report.push("trivialize.result", "trivialized");
                    report.push("trivialize.rounds", rounds);
                    report.push("trivialize.twist", &twist);
                    report.push("trivialize.final", &done.phi);
                    report.flag("check.final_associator_trivial", ok);
                    Ok((status(ok), report))
                }
                Trivialization::Obstructed {
                    degree,
                    cocycle,
                    additive,
                    class,
                    rounds,
                } => {
                    report.push("trivialize.result", "obstructed");
                    report.push("trivialize.rounds", rounds);
                    report.push("trivialize.obstruction.degree", degree);
                    report.push("trivialize.obstruction.coords", report::list(&class));
                    report.push("trivialize.obstruction.tensor", &cocycle);
                    report.push("trivialize.obstruction.cocycle", &additive);
                    Ok((EXIT_CHECK_FAILED, report))
                }
            }
        }
        Target::Rmatrix => {
            report.push("trivialize.target", "rmatrix");
            let r = q
                .r
                .clone()
                .ok_or_else(|| Failure::Usage("spec has no [rmatrix] section".into()))?;
            let j = trivialize_rmatrix(&q)?;
            let conj = j.permute_slots(&[2, 1])?.invert()?.mul(&r)?.mul(&j)?;
            let ok = conj.is_one();
            report.push("trivialize.result", if ok { "trivialized" } else { "failed" });
            report.push("trivialize.twist", &j);
            report.flag("check.conjugated_rmatrix_trivial", ok);
            Ok((status(ok), report))
        }
    }
}

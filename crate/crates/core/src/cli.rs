//! The `wcli` command line. Exit codes: 0 when every check passes, 1 on a
//! mathematical mismatch, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::charengine::{CharKind, CharSpec};
use crate::error::Error;
use crate::grading::{self, Orbit};
use crate::isomorphism::{self, VerifyOptions, VERIFY_ORDER};
use crate::opecalc::OpeCaseId;
use crate::qseries::DEFAULT_ORDER;
use crate::report::{Output, Report};
use crate::rootdata::Label;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "wcli", about = "Characters, central charges and OPE systems of exceptional W-algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a normalized character.
    Char {
        /// universal, boundary, near-boundary or principal.
        kind: String,
        algebra: String,
        /// Nilpotent orbit; defaults to principal, or the subregular orbit
        /// for near-boundary.
        orbit: Option<String>,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        u: Option<i64>,
        /// Number of coefficients: the series is exact modulo q^order.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
    },
    /// Compare two characters, each given as `kind algebra orbit [p=P] [u=U]`.
    Compare {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i64,
    },
    /// Central charge of the W-algebra at level −h∨ + p/u.
    CentralCharge {
        algebra: String,
        orbit: Option<String>,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        u: i64,
    },
    /// Solve and verify one of the registered OPE systems.
    OpeSolve {
        /// g2-c1420-17, g2-c590-9 or b3-c135-8.
        case: String,
        /// Skip the independent re-check of the solved table.
        #[arg(long)]
        no_verify: bool,
    },
    /// Run every check behind the four isomorphisms.
    VerifyIsomorphisms {
        #[arg(long, default_value_t = VERIFY_ORDER)]
        order: i64,
        /// Skip the OPE solves.
        #[arg(long)]
        skip_ope: bool,
        /// Read golden tables from this directory instead of the embedded copies.
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Print the grading data of a registered orbit.
    Grading { algebra: String, orbit: Option<String> },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_)
        | Error::NonzeroResidual(_)
        | Error::InconsistentCharacter { .. }
        | Error::NormalizationFailure(_)
        | Error::UnresolvedBranch(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn orbit_arg(algebra: Label, orbit: Option<&str>, default: Orbit) -> crate::Result<Orbit> {
    orbit.map_or(Ok(default), |o| Orbit::parse(algebra, o))
}

fn execute(cli: &Cli, command: Vec<String>) -> crate::Result<Report> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Char { kind, algebra, orbit, p, u, order } => {
            let kind: CharKind = kind.parse()?;
            let algebra: Label = algebra.parse()?;
            let default = if kind == CharKind::NearBoundary { Orbit::Subregular } else { Orbit::Principal };
            let spec = CharSpec { kind, algebra, orbit: orbit_arg(algebra, orbit.as_deref(), default)?, p: *p, u: *u };
            let mut r = Report::new(command);
            r.input("spec", &spec).input("order", order);
            let series = spec.compute(*order)?;
            r.outputs.push(Output::Series { label: spec.to_string(), series: series.to_report() });
            r
        }
        Command::Compare { left, right, order } => {
            let a: CharSpec = left.parse()?;
            let b: CharSpec = right.parse()?;
            let mut r = Report::new(command);
            r.input("left", &a).input("right", &b).input("order", order);
            let cmp = a.compute(*order)?.compare(&b.compute(*order)?);
            r.verdict("characters agree", cmp.is_equal(), cmp.to_string());
            r.outputs.push(Output::Comparison { left: a.to_string(), right: b.to_string(), result: cmp });
            r
        }
        Command::CentralCharge { algebra, orbit, p, u } => {
            let algebra: Label = algebra.parse()?;
            let orbit = orbit_arg(algebra, orbit.as_deref(), Orbit::Principal)?;
            let c = grading::central_charge(algebra, orbit, *p, *u)?;
            let mut r = Report::new(command);
            r.input("algebra", algebra).input("orbit", orbit.name(algebra)).input("p", p).input("u", u);
            r.outputs.push(Output::CentralCharge {
                label: format!("{} at {p}/{u}", orbit.name(algebra)),
                value: c.to_string(),
            });
            r
        }
        Command::OpeSolve { case, no_verify } => {
            let id: OpeCaseId = case.parse()?;
            if !OpeCaseId::SOLVABLE.contains(&id) {
                return Err(Error::Unsupported(format!("{case} is declared but its OPE system is not solved")));
            }
            let mut r = Report::new(command);
            r.input("case", id.name());
            let (good, verified) = isomorphism::solve_case(id, &mut r)?;
            r.verdict("unique solution up to rescaling", good, format!("{} solved", id.name()));
            if !no_verify {
                r.verdict("solved table verifies", verified.is_some(), "all Jacobi and skew identities");
            }
            r
        }
        Command::VerifyIsomorphisms { order, skip_ope, golden_dir } => {
            let opts = VerifyOptions { order: *order, skip_ope: *skip_ope, golden_dir: golden_dir.as_deref() };
            isomorphism::verify_all(&opts, command)?
        }
        Command::Grading { algebra, orbit } => {
            let algebra: Label = algebra.parse()?;
            let orbit = orbit_arg(algebra, orbit.as_deref(), Orbit::Principal)?;
            let g = grading::orbit_grading(algebra, orbit)?;
            let mut r = Report::new(command);
            r.input("algebra", algebra).input("orbit", orbit.name(algebra));
            r.outputs.push(Output::Grading {
                label: format!("{} {}", algebra, orbit.name(algebra)),
                degrees: g.degrees.clone(),
                dimension: algebra.dimension() as i64,
            });
            r
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            // --help and --version are not errors
            let _ = if code == EXIT_OK { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    let command = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let report = match execute(&cli, command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let _ = out.write_all(text.as_bytes());
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

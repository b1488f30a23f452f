//! Command-line front end.
//!
//! Exit codes: `0` success (or vector passes), `1` check failed, `2` invalid
//! input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::catalog::{Family, SpaceDescriptor};
use crate::criteria::{randers_equigeodesic_test, sampled_metric_oracle, CriterionReport, OracleReport, TAU_CRIT};
use crate::error::Error;
use crate::report::{analyze, parse_vector_json, summary_text, to_json, AnalyzeOptions};
use crate::suite::{run_suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "equigeo", version, about = "Randers equigeodesic vectors on compact homogeneous spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a space, classify its Randers equigeodesic vectors, emit a JSON report.
    Analyze(SpaceArgs),
    /// Run the full verification suite and print a pass/fail table.
    Verify(CommonArgs),
    /// Test one vector (JSON array of m-coordinates) on a space.
    CheckVector {
        #[command(flatten)]
        space: SpaceArgs,
        /// JSON file holding the vector.
        #[arg(long)]
        vector: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Verdict threshold on normalized residuals.
    #[arg(long, default_value_t = TAU_CRIT)]
    pub tol: f64,
    /// Random metrics drawn by the sampling oracle.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArgs {
    /// Space family, e.g. sp-u1-sphere.
    #[arg(long)]
    pub space: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

impl SpaceArgs {
    fn descriptor(&self) -> Result<SpaceDescriptor, Error> {
        SpaceDescriptor::from_parts(self.space, self.n, self.n1, self.n2)
    }
}

/// Output of `check-vector`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorCheck {
    pub space: String,
    pub label: String,
    pub vector: Vec<f64>,
    pub test: CriterionReport,
    pub oracle: OracleReport,
    pub tol: f64,
}

fn validate_common(c: &CommonArgs) -> Result<(), Error> {
    if !(c.tol.is_finite() && c.tol > 0.0) {
        return Err(Error::InvalidInput(format!("--tol must be positive, got {}", c.tol)));
    }
    Ok(())
}

fn emit(json: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, format!("{json}\n"))
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn usage_error(e: Error) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

pub fn run_analyze(args: &SpaceArgs) -> i32 {
    let result = (|| {
        validate_common(&args.common)?;
        let d = args.descriptor()?;
        let c = &args.common;
        let report = analyze(&d, AnalyzeOptions { tol: c.tol, samples: c.samples, seed: c.seed })?;
        emit(&to_json(&report)?, &c.out)?;
        eprint!("{}", summary_text(&report));
        Ok(())
    })();
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => usage_error(e),
    }
}

pub fn run_verify_suite(args: &CommonArgs) -> i32 {
    if let Err(e) = validate_common(args) {
        return usage_error(e);
    }
    let report = run_suite(&SuiteOptions { seed: args.seed, samples: args.samples, tol: args.tol });
    print!("{}", report.table());
    println!("{}", if report.all_pass { "all checks passed" } else { "some checks FAILED" });
    if let Some(p) = &args.out {
        let written = to_json(&report).and_then(|j| emit(&j, &Some(p.clone())));
        if let Err(e) = written {
            return usage_error(e);
        }
    }
    if report.all_pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

pub fn run_check_vector(args: &SpaceArgs, vector: &PathBuf) -> i32 {
    let result = (|| {
        validate_common(&args.common)?;
        let c = &args.common;
        let d = args.descriptor()?;
        let space = d.build()?;
        let text = fs::read_to_string(vector)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", vector.display())))?;
        let v = parse_vector_json(&text, space.dim_m())?;
        let x = space.algebra().element(space.from_m(&v))?;
        let mut test = randers_equigeodesic_test(&space, &x)?;
        test.verdict = test.residual <= c.tol;
        let oracle = sampled_metric_oracle(&space, &x, c.samples.max(1), c.seed)?;
        let check = VectorCheck {
            space: d.family.name().into(),
            label: space.label().into(),
            vector: v.iter().copied().collect(),
            test,
            oracle,
            tol: c.tol,
        };
        emit(&to_json(&check)?, &c.out)?;
        eprintln!(
            "{}: test residual {:.3e} ({}), oracle max residual {:.3e} over {} metrics",
            check.label,
            check.test.residual,
            if check.test.verdict { "equigeodesic" } else { "not equigeodesic" },
            check.oracle.max_residual,
            check.oracle.n_samples
        );
        Ok(check.test.verdict)
    })();
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(e) => usage_error(e),
    }
}

/// Parses arguments and dispatches; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Verify(c) => run_verify_suite(c),
        Command::CheckVector { space, vector } => run_check_vector(space, vector),
    }
}

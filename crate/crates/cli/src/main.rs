//! `cubic-ode`: classify equations `y'' = P + 3Q y' + 3R y'^2 + S y'^3`,
//! test their equivalence to Painleve equations and run corpora.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 undecidable,
//! 3 not equivalent (or a failed corpus entry).

mod corpus;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_ode_core::catalog::{painleve, parse_params, Family};
use cubic_ode_core::equivalence::{check, Outcome, Target};
use cubic_ode_core::{analyze, parse_ode, point_transform, Case, CoreError, Engine, OdeCubic, PointMap};
use cubic_ode_expr::{parse_expr, AssumptionSet, ProbeConfig, RatFn};
use report::{Input, Report};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "cubic-ode", version, about = "Point classification of y'' = P + 3Q y' + 3R y'^2 + S y'^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Case of the classification tree and symmetry dimension.
    Classify(Single),
    /// Equivalence test against a Painleve target.
    Equiv {
        /// Target: p1, p2, p3zero or p4 (p4 checks necessary conditions only).
        #[arg(long)]
        target: Target,
        #[command(flatten)]
        single: Single,
    },
    /// Dump the pseudoinvariants and invariants that were computed.
    Invariants(Single),
    /// Apply a point transformation.
    Transform {
        /// New independent variable in terms of x and y.
        #[arg(long)]
        xnew: String,
        /// New dependent variable in terms of x and y.
        #[arg(long)]
        ynew: String,
        /// Inverse map, to write the result in the new variables.
        #[arg(long, requires = "yold")]
        xold: Option<String>,
        #[arg(long, requires = "xold")]
        yold: Option<String>,
        #[command(flatten)]
        single: Single,
    },
    /// Run every entry of a corpus file against its expectations.
    Corpus {
        path: std::path::PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
pub struct Common {
    /// Parameter assumption: `a!=0`, `a>0` or `a=1/2`. Repeatable.
    #[arg(long = "assume")]
    pub assume: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub digits: usize,
    /// Depth of invariant sequences for the symmetry dimension.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "probe-points", default_value_t = 16)]
    pub probe_points: usize,
    /// Include wall-clock time (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args)]
struct Single {
    /// The equation, e.g. "y'' = 6*y^2 + x".
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    equation: Option<String>,
    /// Painleve family instead of an equation: p1 ... p6, p34.
    #[arg(long)]
    family: Option<Family>,
    /// Comma-separated family parameters, e.g. `0,0,0,1/2`.
    #[arg(long, requires = "family")]
    params: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl Common {
    pub fn probe(&self) -> ProbeConfig {
        ProbeConfig { seed: self.seed, points: self.probe_points, digits: self.digits, ..ProbeConfig::default() }
    }

    pub fn assumptions(&self) -> Result<AssumptionSet, String> {
        let mut a = AssumptionSet::new();
        for item in &self.assume {
            a.parse_item(&item.replace(' ', ""))?;
        }
        Ok(a)
    }
}

/// Failure before any report exists.
pub struct Usage(pub String);

impl From<CoreError> for Usage {
    fn from(e: CoreError) -> Self {
        Usage(e.to_string())
    }
}

impl From<String> for Usage {
    fn from(e: String) -> Self {
        Usage(e)
    }
}

fn load(single: &Single) -> Result<(OdeCubic, Input), Usage> {
    let assume = single.common.assumptions()?;
    let ode = match (&single.equation, single.family) {
        (Some(text), None) => parse_ode(text, &assume)?,
        (None, Some(f)) => {
            let params = parse_params(single.params.as_deref().unwrap_or(""))?;
            painleve(f, &params)?.with_assumptions(assume)
        }
        _ => return Err(Usage("give an equation or --family".into())),
    };
    let input = Input {
        equation: single.equation.clone(),
        family: single.family.map(|f| f.name().to_string()),
        params: single.params.clone(),
        normalized: format!("y'' = {}", ode.rhs()),
    };
    Ok((ode, input))
}

fn base_report(command: &'static str, input: Input, common: &Common) -> Report {
    Report {
        schema_version: report::SCHEMA_VERSION,
        command,
        input,
        assumptions: common.assume.iter().map(|s| s.replace(' ', "")).collect(),
        probe: (&common.probe()).into(),
        classification: None,
        equivalence: Vec::new(),
        transform: None,
        quantities: Vec::new(),
        invariants: Vec::new(),
        timing_ms: None,
    }
}

fn emit(r: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r).expect("serializable report")),
        Format::Text => print!("{}", report::text(r)),
    }
}

fn rf(text: &str) -> Result<RatFn, Usage> {
    Ok(parse_expr(text).map_err(CoreError::from)?.to_ratfn().map_err(CoreError::from)?)
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let start = Instant::now();
    let (mut report, code, common) = match cli.command {
        Command::Classify(single) => {
            let (ode, input) = load(&single)?;
            let (res, engine) = analyze(&ode, single.common.probe(), single.common.depth);
            let code = if matches!(res.case, Case::Undecidable { .. }) { 2 } else { 0 };
            let mut r = base_report("classify", input, &single.common);
            r.quantities = report::quantities(&engine);
            r.classification = Some(res);
            (r, code, single.common)
        }
        Command::Invariants(single) => {
            let (ode, input) = load(&single)?;
            let (res, mut engine) = analyze(&ode, single.common.probe(), single.common.depth);
            let code = if matches!(res.case, Case::Undecidable { .. }) { 2 } else { 0 };
            let mut r = base_report("invariants", input, &single.common);
            r.invariants = report::case_invariants(&mut engine, &res.case);
            r.quantities = report::quantities(&engine);
            r.classification = Some(res);
            (r, code, single.common)
        }
        Command::Equiv { target, single } => {
            let (ode, input) = load(&single)?;
            let mut engine = Engine::new(&ode, single.common.probe());
            let res = check(target, &mut engine);
            let code = match res.verdict {
                Outcome::Equivalent | Outcome::NecessaryPass => 0,
                Outcome::NotEquivalent | Outcome::NecessaryFail => 3,
                Outcome::Undecidable => 2,
            };
            let mut r = base_report("equiv", input, &single.common);
            r.equivalence.push(res);
            r.quantities = report::quantities(&engine);
            (r, code, single.common)
        }
        Command::Transform { xnew, ynew, xold, yold, single } => {
            let (ode, input) = load(&single)?;
            let mut map = PointMap::new(rf(&xnew)?, rf(&ynew)?);
            if let (Some(xo), Some(yo)) = (&xold, &yold) {
                map = map.with_inverse(rf(xo)?, rf(yo)?);
            }
            let t = match point_transform(&ode, &map, &single.common.probe()) {
                Ok(t) => t,
                Err(CoreError::UndecidedMap(d)) => {
                    eprintln!("error: {d}");
                    return Ok(2);
                }
                Err(e) => return Err(e.into()),
            };
            let names = ["P", "Q", "R", "S"];
            let mut r = base_report("transform", input, &single.common);
            r.transform = Some(report::Transform {
                x_new: report::show(&map.xt),
                y_new: report::show(&map.yt),
                jacobian: report::show(&map.jacobian()),
                in_new_variables: t.in_new_variables,
                equation: format!("y'' = {}", t.ode.rhs()),
                coefficients: names.into_iter().zip(t.ode.coeffs()).map(|(n, c)| (n, report::show(c))).collect(),
            });
            (r, 0, single.common)
        }
        Command::Corpus { path, jobs, common } => return corpus::run(&path, jobs, &common),
    };
    if common.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    emit(&report, common.format);
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

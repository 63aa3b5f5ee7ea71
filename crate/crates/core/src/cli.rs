//! Command-line front end. Every report is echoed with the configuration
//! that produced it; exit status is 0 on success, 1 when a check fails and
//! 2 on usage errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    closed_form_line3_series, exponent_report, series_csv, verify_identity, AnalysisError, ModelPair, VerifyOptions,
};
use crate::continuum::{coefficient_mc, coefficient_quadrature, ContinuumError, ContinuumReport, ContinuumShape};
use crate::forest::{check_formula_with_budget, Family, ForestError, TestFunction, DEFAULT_FOREST_BUDGET, MAX_FOREST_N};
use crate::gas::{gas_report, occupancy_report, pressure_and_density_tm, GasError, GasModel, DEFAULT_WIDTH_BUDGET};
use crate::lattice::{enumerate_with, DbpReport, EnumerationOptions, LatticeError, LatticeModel, Strategy};
use crate::series::{rational_to_string, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Width budget once `--force` is given.
pub const FORCED_WIDTH_BUDGET: usize = 24;

#[derive(Parser, Debug)]
#[command(name = "dimred", version, about = "Directed branched polymers and the hard-core gases one dimension down")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Lift enumeration, width and forest-size budgets.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GasMethod {
    /// Closed form where one exists, transfer matrix otherwise.
    Auto,
    TransferMatrix,
    Occupancy,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContinuumMethod {
    Quadrature,
    MonteCarlo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    TreeWalk,
    LevelTransfer,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weighted DBP counts d_N for a lattice model.
    Enumerate {
        #[arg(long)]
        model: String,
        #[arg(long)]
        order: usize,
        /// JSON list of neighbor offsets, defining a custom model named by --model.
        #[arg(long)]
        neighbors: Option<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::LevelTransfer)]
        strategy: StrategyArg,
    },
    /// Pressure and density series of a hard-core gas.
    Gas {
        #[arg(long)]
        model: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = GasMethod::Auto)]
        method: GasMethod,
        /// Torus width for the occupancy route (default: the smallest exact width).
        #[arg(long)]
        width: Option<usize>,
    },
    /// Continuum DBP coefficients against N^N/N!.
    Continuum {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ContinuumMethod::Quadrature)]
        method: ContinuumMethod,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Numerical check of the forest-root formula.
    ForestCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "pure-exponential")]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Order-by-order comparison of d_N with the gas density.
    Verify {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Growth constant and exponent estimates.
    Exponents {
        #[arg(long)]
        model: String,
        #[arg(long)]
        order: usize,
        /// Fix the growth constant in the exponent fit.
        #[arg(long)]
        mu: Option<f64>,
        /// Number of trailing terms in the fit.
        #[arg(long)]
        window: Option<usize>,
    },
}

/// The complete description of a run, echoed in every JSON report.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<StrategyArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighbors: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    pub budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub force: bool,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct Budget {
    /// Enumeration order cap; absent when lifted.
    pub enumeration: Option<usize>,
    pub width: usize,
    pub forest: usize,
}

impl RunConfig {
    fn new(cli: &Cli) -> Self {
        let lattice_budget = |name: &str| LatticeModel::by_name(name.split(':').next().unwrap_or(name)).ok().map(|m| m.default_budget());
        let enumeration = match &cli.command {
            _ if cli.force => None,
            Command::Enumerate { model, neighbors: Some(json), .. } => {
                LatticeModel::from_json(model, json).ok().map(|m| m.default_budget())
            }
            Command::Enumerate { model, .. } | Command::Verify { pair: model, .. } => lattice_budget(model),
            _ => None,
        };
        let budget = Budget {
            enumeration,
            width: if cli.force { FORCED_WIDTH_BUDGET } else { DEFAULT_WIDTH_BUDGET },
            forest: if cli.force { MAX_FOREST_N } else { DEFAULT_FOREST_BUDGET },
        };
        let mut c = RunConfig {
            subcommand: "",
            model: None,
            order: None,
            method: None,
            strategy: None,
            neighbors: None,
            width: None,
            budget,
            samples: None,
            seed: None,
            tol: None,
            mu: None,
            window: None,
            force: cli.force,
            format: cli.format,
            output: cli.output.clone(),
        };
        match &cli.command {
            Command::Enumerate { model, order, neighbors, strategy } => {
                c.subcommand = "enumerate";
                c.model = Some(model.clone());
                c.order = Some(*order);
                c.neighbors = neighbors.clone();
                c.strategy = Some(*strategy);
            }
            Command::Gas { model, order, method, width } => {
                c.subcommand = "gas";
                c.model = Some(model.clone());
                c.order = Some(*order);
                c.method = Some(value_name(method));
                c.width = *width;
            }
            Command::Continuum { shape, order, method, samples, seed, tol } => {
                c.subcommand = "continuum";
                c.model = Some(shape.clone());
                c.order = Some(*order);
                c.method = Some(value_name(method));
                if *method == ContinuumMethod::MonteCarlo {
                    c.samples = Some(*samples);
                    c.seed = Some(*seed);
                } else {
                    c.tol = Some(*tol);
                }
            }
            Command::ForestCheck { n, family, seed, tol } => {
                c.subcommand = "forest-check";
                c.model = Some(family.clone());
                c.order = Some(*n);
                c.seed = Some(*seed);
                c.tol = Some(*tol);
            }
            Command::Verify { pair, order, tol } => {
                c.subcommand = "verify";
                c.model = Some(pair.clone());
                c.order = Some(*order);
                c.tol = Some(*tol);
            }
            Command::Exponents { model, order, mu, window } => {
                c.subcommand = "exponents";
                c.model = Some(model.clone());
                c.order = Some(*order);
                c.mu = *mu;
                c.window = *window;
            }
        }
        c
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

/// Failure category, mapped onto the exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overflow(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<GasError> for Failure {
    fn from(e: GasError) -> Self {
        match e {
            GasError::Overflow | GasError::Series(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ContinuumError> for Failure {
    fn from(e: ContinuumError) -> Self {
        match e {
            ContinuumError::Quadrature(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ForestError> for Failure {
    fn from(e: ForestError) -> Self {
        match e {
            ForestError::Tolerance { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Lattice(e) => e.into(),
            AnalysisError::Gas(e) => e.into(),
            AnalysisError::Continuum(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// A finished report: its JSON value, its CSV rendering, and whether the
/// check it embodies passed.
struct Outcome {
    report: serde_json::Value,
    csv: String,
    pass: bool,
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn csv_table<const K: usize>(header: [&str; K], rows: impl IntoIterator<Item = [String; K]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn sign_flipped(c: &Rational, n: usize) -> Rational {
    if n % 2 == 1 {
        c.clone()
    } else {
        -c.clone()
    }
}

fn check_order(order: usize) -> Result<(), Failure> {
    if order == 0 {
        return Err(Failure::Usage("order must be at least 1".into()));
    }
    Ok(())
}

fn execute(cli: &Cli, config: &RunConfig) -> Result<Outcome, Failure> {
    let enum_budget = |model: &LatticeModel| if cli.force { Some(usize::MAX) } else { Some(model.default_budget()) };
    match &cli.command {
        Command::Enumerate { model, order, neighbors, strategy } => {
            check_order(*order)?;
            let lattice = match neighbors {
                Some(json) => LatticeModel::from_json(model, json)?,
                None => LatticeModel::by_name(model)?,
            };
            let strategy = match strategy {
                StrategyArg::TreeWalk => Strategy::TreeWalk,
                StrategyArg::LevelTransfer => Strategy::LevelTransfer,
            };
            let opts = EnumerationOptions { strategy, budget: enum_budget(&lattice), ..Default::default() };
            let d = enumerate_with(&lattice, *order, &opts)?.weighted;
            let mu = crate::analysis::estimate_growth(&d).map(|g| g.mu).unwrap_or(f64::NAN);
            Ok(Outcome { report: to_value(&DbpReport::new(&lattice, &d)), csv: series_csv(&d, mu), pass: true })
        }
        Command::Gas { model, order, method, width } => {
            check_order(*order)?;
            let gas = GasModel::by_name(model)?;
            let budget = config.budget.width;
            let report = match method {
                GasMethod::Auto => gas_report(&gas, *order, budget)?,
                GasMethod::TransferMatrix => pressure_and_density_tm(&gas, *order, budget)?,
                GasMethod::Occupancy => occupancy_report(&gas, width.unwrap_or(gas.min_width(*order)), *order, budget)?,
            };
            let csv = csv_table(
                ["N", "pressure", "density"],
                (0..=*order).map(|n| {
                    [
                        n.to_string(),
                        report.pressure.as_ref().map(|p| rational_to_string(p.coeff(n))).unwrap_or_default(),
                        rational_to_string(report.density.coeff(n)),
                    ]
                }),
            );
            Ok(Outcome { report: to_value(&report), csv, pass: true })
        }
        Command::Continuum { shape, order, method, samples, seed, tol } => {
            check_order(*order)?;
            let shape = ContinuumShape::by_name(shape)?;
            let report = match method {
                ContinuumMethod::Quadrature => {
                    let q = coefficient_quadrature(shape, *order, *tol)?;
                    ContinuumReport::new(shape, *order, "quadrature", q.value, q.error)
                }
                ContinuumMethod::MonteCarlo => {
                    let e = coefficient_mc(shape, *order, *samples, *seed)?;
                    ContinuumReport::new(shape, *order, "monte-carlo", e.estimate, e.stderr)
                }
            };
            let target = crate::series::rational_to_f64(&report.target);
            let pass = match method {
                ContinuumMethod::Quadrature => (report.estimate - target).abs() <= tol.max(report.stderr),
                ContinuumMethod::MonteCarlo => report.sigmas.map_or(report.estimate == target, |s| s <= 3.0),
            };
            let csv = csv_table(
                ["shape", "N", "method", "estimate", "stderr", "target", "sigmas"],
                [[
                    shape.name().to_string(),
                    order.to_string(),
                    report.method.clone(),
                    float(report.estimate),
                    float(report.stderr),
                    rational_to_string(&report.target),
                    report.sigmas.map(float).unwrap_or_default(),
                ]],
            );
            Ok(Outcome { report: to_value(&report), csv, pass })
        }
        Command::ForestCheck { n, family, seed, tol } => {
            check_order(*n)?;
            if *n > MAX_FOREST_N {
                return Err(ForestError::BadOrder(*n).into());
            }
            let f = TestFunction::random(Family::by_name(family)?, *n, *seed)?;
            let report = check_formula_with_budget(&f, *tol, config.budget.forest)?;
            let join = |v: Vec<String>| v.join(" ");
            let csv = csv_table(
                ["roots", "links", "value"],
                report.terms.iter().map(|t| {
                    [
                        join(t.forest.roots().iter().map(|r| (r + 1).to_string()).collect()),
                        join(t.forest.links().iter().map(|(j, i)| format!("{}-{}", j + 1, i + 1)).collect()),
                        float(t.value),
                    ]
                }),
            );
            Ok(Outcome { pass: report.pass, report: to_value(&report), csv })
        }
        Command::Verify { pair, order, tol } => {
            check_order(*order)?;
            let pair = ModelPair::by_name(pair)?;
            let enumeration = EnumerationOptions {
                budget: match &pair {
                    ModelPair::Lattice { dbp, .. } => enum_budget(dbp),
                    ModelPair::Continuum { .. } => None,
                },
                ..Default::default()
            };
            let opts = VerifyOptions { enumeration, width_budget: config.budget.width, tol: *tol };
            let report = verify_identity(&pair, *order, &opts)?;
            let csv = csv_table(
                ["N", "dbp", "gas", "equal"],
                report.rows.iter().map(|r| {
                    let dbp = match &r.dbp {
                        crate::analysis::DbpValue::Exact(q) => rational_to_string(q),
                        crate::analysis::DbpValue::Approx { value, .. } => float(*value),
                    };
                    [r.n.to_string(), dbp, rational_to_string(&r.gas), r.equal.to_string()]
                }),
            );
            Ok(Outcome { pass: report.pass, report: to_value(&report), csv })
        }
        Command::Exponents { model, order, mu, window } => {
            check_order(*order)?;
            let (d, source, dimension) = exponent_series(model, *order, config.budget.width)?;
            let report = exponent_report(model, &source, &d, dimension, *mu, *window)?;
            let csv = series_csv(&d, mu.unwrap_or(report.mu_hat));
            Ok(Outcome { report: to_value(&report), csv, pass: true })
        }
    }
}

/// `d_N` for the exponent analysis: the closed form on the line, otherwise
/// the sign-flipped gas density (cheaper than enumeration at high order).
fn exponent_series(model: &str, order: usize, width_budget: usize) -> Result<(Vec<Rational>, String, usize), Failure> {
    if model == "line3" {
        return Ok((closed_form_line3_series(order), "closed-form".into(), 2));
    }
    let lattice = LatticeModel::by_name(model)?;
    let gas = GasModel::partner(&lattice);
    let report = gas_report(&gas, order, width_budget)?;
    let d = (1..=order).map(|n| sign_flipped(report.density.coeff(n), n)).collect();
    Ok((d, format!("{} density, {}", gas.name(), report.method), lattice.dimension() + 1))
}

/// Parse `args` (including the program name), run, and write the report to
/// `out` (or `--output`). Diagnostics go to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    if cli.force {
        let _ = writeln!(
            err,
            "warning: --force lifts the enumeration, width and forest budgets; runs may take very long"
        );
    }
    let config = RunConfig::new(&cli);
    let outcome = match execute(&cli, &config) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_FAILED;
        }
    };
    let text = match cli.format {
        Format::Json => {
            let doc = serde_json::json!({ "config": to_value(&config), "report": outcome.report });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Csv => outcome.csv,
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    if outcome.pass {
        EXIT_OK
    } else {
        let _ = writeln!(err, "check failed; see report");
        EXIT_FAILED
    }
}

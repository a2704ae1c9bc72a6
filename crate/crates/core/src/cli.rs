//! Command-line front end: `design`, `decode`, `simulate` and `bounds`.
//!
//! Exit codes: 0 on success, 1 on domain or I/O errors, 2 on usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::decode::{self, DecodeReport};
use crate::design::{self, Algorithm, DesignParams, NCOMP_BETA_DISPLAY};
use crate::error::{Error, Result};
use crate::model::{self, TestMatrix};
use crate::sim::{self, ExperimentSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "grouptest", version, about = "Non-adaptive probabilistic group testing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Choose design parameters and optionally draw a matrix.
    Design(DesignArgs),
    /// Decode an observed result vector against a matrix.
    Decode(DecodeArgs),
    /// Run a Monte Carlo sweep and emit CSV.
    Simulate(SimulateArgs),
    /// Print lower and upper bounds on the number of tests.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
struct DesignArgs {
    #[arg(long)]
    algo: Algorithm,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long = "T")]
    tests: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long = "K")]
    repetitions: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "Delta")]
    slack: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    #[arg(long)]
    algo: Algorithm,
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    results: PathBuf,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long = "Delta")]
    slack: Option<f64>,
    #[arg(long = "K")]
    repetitions: Option<usize>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Comma-separated noise levels.
    #[arg(long)]
    q: Option<String>,
    /// Comma-separated list or start:stop:step.
    #[arg(long = "T")]
    tests: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long = "K")]
    repetitions: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long = "Delta")]
    slack: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    #[arg(long = "budget-secs")]
    budget_secs: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Design(a) => cmd_design(a, out),
        Command::Decode(a) => cmd_decode(a, out, err),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Bounds(a) => cmd_bounds(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e).into())
}

fn with_path(path: &Path, e: Error) -> Failure {
    Failure::Domain(format!("{}: {e}", path.display()))
}

fn require_q(algo: Algorithm, q: Option<f64>) -> std::result::Result<f64, Failure> {
    q.ok_or_else(|| Failure::Usage(format!("--q is required for {algo}")))
}

fn cmd_design(a: DesignArgs, out: &mut dyn Write) -> CmdResult {
    let q = if a.algo.is_noisy() {
        require_q(a.algo, a.q)?
    } else {
        a.q.unwrap_or(0.0)
    };
    let mut params = design::design(a.algo, a.n, a.d, a.delta, q)?;
    apply_design_overrides(&mut params, &a, q)?;

    for (key, value) in params.summary() {
        writeln!(out, "{key}={value}")?;
    }
    if a.algo.is_noisy() {
        writeln!(out, "q={q}")?;
    }
    if let Some(path) = &a.out {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let matrix = params.sample_matrix(a.n, &mut rng)?;
        std::fs::write(path, matrix.to_text()).map_err(|e| Error::io(path, e))?;
        writeln!(out, "matrix={}", path.display())?;
    }
    Ok(())
}

fn apply_design_overrides(params: &mut DesignParams, a: &DesignArgs, q: f64) -> Result<()> {
    let bad = |msg: String| Error::InvalidParameter(msg);
    let applies = |name: &str, ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(bad(format!("--{name} does not apply to {}", params.algorithm)))
        }
    };
    if let Some(g) = a.g {
        applies("g", params.group_size.is_some())?;
        if g == 0 {
            return Err(bad("--g must be at least 1".into()));
        }
        params.group_size = Some(g);
    }
    if let Some(k) = a.repetitions {
        applies("K", params.repetitions.is_some())?;
        if k == 0 {
            return Err(bad("--K must be at least 1".into()));
        }
        params.tests = params.base_tests() * k;
        params.repetitions = Some(k);
    }
    if let Some(alpha) = a.alpha {
        applies("alpha", params.alpha.is_some())?;
        if !(alpha > 0.0) {
            return Err(bad(format!("--alpha = {alpha} must be positive")));
        }
        params.alpha = Some(alpha);
        params.inclusion_probability = Some(alpha / a.d as f64);
    }
    if let Some(p) = a.p {
        applies("p", params.inclusion_probability.is_some())?;
        params.inclusion_probability = Some(p);
    }
    if let Some(p) = params.inclusion_probability {
        if !(p > 0.0 && p < 1.0) {
            return Err(bad(format!("p = {p} must lie in (0, 1)")));
        }
    }
    if let Some(slack) = a.slack {
        applies("Delta", params.threshold_slack.is_some())?;
        if !design::ncomp_slack_valid(q, slack) {
            return Err(bad(format!("--Delta = {slack} outside the valid window for q = {q}")));
        }
        params.threshold_slack = Some(slack);
    }
    if let Some(t) = a.tests {
        if t == 0 {
            return Err(bad("--T must be at least 1".into()));
        }
        if let Some(k) = params.repetitions {
            if t < k {
                return Err(bad(format!("--T = {t} is smaller than K = {k}")));
            }
            params.tests = t - t % k;
        } else {
            params.tests = t;
        }
    }
    Ok(())
}

fn cmd_decode(a: DecodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let matrix = TestMatrix::parse_text(&read_file(&a.matrix)?).map_err(|e| with_path(&a.matrix, e))?;
    let results = model::parse_vector(&read_file(&a.results)?).map_err(|e| with_path(&a.results, e))?;

    let report: DecodeReport = match a.algo {
        Algorithm::Cbp => decode::decode_cbp(&matrix, &results)?,
        Algorithm::Comp => decode::decode_comp(&matrix, &results)?,
        Algorithm::Ncbp => {
            let k = a
                .repetitions
                .ok_or_else(|| Failure::Usage("--K is required for ncbp".into()))?;
            let base = ncbp_base(&matrix, results.len(), k)?;
            decode::decode_ncbp(&base, &results, k)?
        }
        Algorithm::Ncomp => {
            let q = require_q(a.algo, a.q)?;
            let slack = a
                .slack
                .ok_or_else(|| Failure::Usage("--Delta is required for ncomp".into()))?;
            decode::decode_ncomp(&matrix, &results, q, slack)?
        }
    };
    writeln!(out, "{}", report.estimate)?;
    let untested: Vec<String> = report.never_tested_items().map(|j| j.to_string()).collect();
    if !untested.is_empty() {
        let verdict = if a.algo.uses_group_sampling() {
            "declared defective"
        } else {
            "declared non-defective"
        };
        writeln!(err, "never-tested items ({verdict}): {}", untested.join(","))?;
    }
    Ok(())
}

/// Accepts either the base matrix (`rows * K == observations`) or the
/// expanded matrix written by `design` (`rows == observations`).
fn ncbp_base(matrix: &TestMatrix, observations: usize, k: usize) -> Result<TestMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("--K must be at least 1".into()));
    }
    if matrix.rows() * k == observations {
        return Ok(matrix.clone());
    }
    if matrix.rows() == observations && observations % k == 0 {
        let base_rows: Vec<_> = (0..observations / k).map(|i| matrix.row(i * k)).collect();
        for i in 0..matrix.rows() {
            if matrix.row(i) != base_rows[i / k] {
                return Err(Error::InvalidParameter(format!(
                    "matrix row {} differs from the first row of its block of K = {k}",
                    i + 1
                )));
            }
        }
        return TestMatrix::from_rows(&base_rows);
    }
    Err(Error::DimensionMismatch(format!(
        "{} observations fit neither a base matrix of {} rows nor its {k}-fold repetition",
        observations,
        matrix.rows()
    )))
}

fn cmd_simulate(a: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut settings: BTreeMap<String, String> = match &a.config {
        Some(path) => sim::parse_config(&read_file(path)?).map_err(|e| with_path(path, e))?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("algo", &a.algo),
        ("n", &a.n),
        ("d", &a.d),
        ("q", &a.q),
        ("T", &a.tests),
        ("trials", &a.trials),
        ("seed", &a.seed),
        ("delta", &a.delta),
        ("g", &a.g),
        ("p", &a.p),
        ("K", &a.repetitions),
        ("alpha", &a.alpha),
        ("Delta", &a.slack),
        ("workers", &a.workers),
        ("budget_secs", &a.budget_secs),
    ];
    for (key, value) in flags {
        if let Some(value) = value {
            if let Some(previous) = settings.insert(key.to_string(), value.clone()) {
                if &previous != value {
                    writeln!(err, "note: flag {key}={value} overrides config value {previous}")?;
                }
            }
        }
    }
    for key in ["algo", "n", "d", "T"] {
        if !settings.contains_key(key) {
            return Err(Failure::Usage(format!("missing {key} (give --{key} or set it in --config)")));
        }
    }
    let spec = ExperimentSpec::from_settings(&settings)?;
    let reports = sim::run_sweep(&spec)?;
    for r in reports.iter().filter(|r| r.under_sampled()) {
        writeln!(
            err,
            "warning: cell q={} T={} under-sampled: {} of {} trials within the time budget",
            r.q, r.tests, r.trials, r.requested_trials
        )?;
    }
    match &a.out {
        Some(path) => sim::write_csv_file(path, &reports)?,
        None => out.write_all(sim::to_csv(&reports).as_bytes())?,
    }
    Ok(())
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> CmdResult {
    if a.eps.is_none() && a.delta.is_none() {
        return Err(Failure::Usage("give --eps or --delta".into()));
    }
    let delta = a.delta.unwrap_or(1.0);
    let eps = a.eps.unwrap_or_else(|| (a.n as f64).powf(-delta));
    let r = bounds::bound_report(a.n, a.d, eps, delta, a.q)?;

    let no_q = "n/a (no --q given)".to_string();
    let mut rows: Vec<(&str, String)> = vec![
        ("n", r.n.to_string()),
        ("d", r.d.to_string()),
        ("eps", r.eps.to_string()),
        ("delta", r.delta.to_string()),
        ("q", r.q.map_or(no_q.clone(), |q| q.to_string())),
        ("lower_noiseless", r.lower_noiseless.to_string()),
        ("lower_noisy", r.lower_noisy.map_or(no_q.clone(), |v| v.to_string())),
        ("upper_cbp", r.upper_cbp.to_string()),
        ("upper_comp", r.upper_comp.to_string()),
        ("upper_ncbp", r.upper_ncbp.map_or(no_q.clone(), |v| v.to_string())),
    ];
    let ncomp = match (r.q, r.upper_ncomp) {
        (_, Some(t)) => t.to_string(),
        (Some(_), None) => "n/a (q = 0: use comp)".to_string(),
        (None, None) => no_q.clone(),
    };
    rows.push(("upper_ncomp", ncomp));
    if let (Some(beta), Some(q)) = (r.ncomp_beta, r.q) {
        let root_sum = r.delta.sqrt() + (1.0 + r.delta).sqrt();
        let display = NCOMP_BETA_DISPLAY * root_sum * root_sum / (1.0 - 2.0 * q).powi(2);
        rows.push(("beta_ncomp", beta.to_string()));
        rows.push(("beta_ncomp_display", format!("{display:.2}")));
    }
    for (key, value) in rows {
        writeln!(out, "{key}={value}")?;
    }
    Ok(())
}

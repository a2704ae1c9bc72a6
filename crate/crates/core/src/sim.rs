//! Monte Carlo harness: draw an instance, draw a fresh matrix, measure, add
//! noise, decode, score exact recovery. Repeated per cell and swept over
//! `(q, T)`.
//!
//! Every trial owns a ChaCha8 stream keyed by `(master seed, cell index)`
//! with the trial index as stream id, and cell totals are integer sums, so
//! results do not depend on how trials are scheduled across threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::BitVector;
use crate::decode::{decode_cbp, decode_comp, decode_ncbp, decode_ncomp};
use crate::design::{self, Algorithm, NCOMP_ALPHA};
use crate::error::{check_noise, Error, Result};
use crate::model::{apply_noise, noiseless_outcome, EstimateVector, InputVector, NoiseChannel};

pub const CSV_HEADER: &str =
    "algorithm,n,d,q,T,trials,successes,success_rate,false_pos_total,false_neg_total,seed";

/// Trials are dispatched in chunks of this size; the wall-time budget is
/// checked between chunks.
const CHUNK: u64 = 256;

/// Optional replacements for the default design parameters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub group_size: Option<usize>,
    pub inclusion_probability: Option<f64>,
    pub repetitions: Option<usize>,
    pub alpha: Option<f64>,
    pub threshold_slack: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    /// Noise levels to sweep.
    pub noise: Vec<f64>,
    /// Test counts to sweep. For NCBP this is the total including
    /// repetitions; `T / K` base tests are drawn.
    pub tests: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Error exponent used for default parameters (NCBP `K`, NCOMP `Delta`).
    pub delta: f64,
    pub overrides: Overrides,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    /// Per-cell wall-time budget. Cells that run out stop early and are
    /// flagged as under-sampled.
    pub time_budget: Option<Duration>,
}

impl ExperimentSpec {
    pub fn new(algorithm: Algorithm, n: usize, d: usize) -> Self {
        Self {
            algorithm,
            n,
            d,
            noise: vec![0.0],
            tests: Vec::new(),
            trials: 1000,
            seed: 0,
            delta: 1.0,
            overrides: Overrides::default(),
            workers: None,
            time_budget: None,
        }
    }

    /// Resolves every `(q, T)` cell, q-major, validating the whole sweep
    /// before anything runs.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        if self.tests.is_empty() {
            return Err(Error::InvalidSpec("no test counts given".into()));
        }
        if self.noise.is_empty() {
            return Err(Error::InvalidSpec("no noise levels given".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidSpec("trials must be at least 1".into()));
        }
        if self.d == 0 || self.d >= self.n {
            return Err(Error::InvalidSpec(format!(
                "need 1 <= d < n (got n = {}, d = {})",
                self.n, self.d
            )));
        }
        if let Some(0) = self.workers {
            return Err(Error::InvalidSpec("workers must be at least 1".into()));
        }
        let mut cells = Vec::with_capacity(self.noise.len() * self.tests.len());
        for &q in &self.noise {
            check_noise(q)?;
            for &tests in &self.tests {
                if tests == 0 {
                    return Err(Error::InvalidSpec("T must be at least 1".into()));
                }
                let decoder = self.resolve(q, tests)?;
                cells.push(Cell {
                    algorithm: self.algorithm,
                    n: self.n,
                    d: self.d,
                    q,
                    tests,
                    trials: self.trials,
                    seed: self.seed,
                    index: cells.len() as u64,
                    decoder,
                });
            }
        }
        Ok(cells)
    }

    fn resolve(&self, q: f64, tests: usize) -> Result<CellDesign> {
        let (n, d) = (self.n, self.d);
        let o = &self.overrides;
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::InvalidSpec(format!("{name} must be at least 1")))
            } else {
                Ok(v)
            }
        };
        let probability = |p: f64| {
            if p > 0.0 && p < 1.0 {
                Ok(p)
            } else {
                Err(Error::InvalidSpec(format!("p = {p} must lie in (0, 1)")))
            }
        };
        let group_size = || match o.group_size {
            Some(g) => positive("g", g),
            None => design::cbp_group_size(n, d),
        };
        Ok(match self.algorithm {
            Algorithm::Cbp => CellDesign::Cbp {
                group_size: group_size()?,
            },
            Algorithm::Comp => CellDesign::Comp {
                p: probability(o.inclusion_probability.unwrap_or(1.0 / d as f64))?,
            },
            Algorithm::Ncbp => {
                let repetitions = match o.repetitions {
                    Some(k) => positive("K", k)?,
                    None => design::ncbp_repetition(n, d, self.delta, q)?,
                };
                let base_tests = tests / repetitions;
                if base_tests == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "T = {tests} is smaller than the repetition factor K = {repetitions}"
                    )));
                }
                CellDesign::Ncbp {
                    group_size: group_size()?,
                    repetitions,
                    base_tests,
                }
            }
            Algorithm::Ncomp => {
                let alpha = o.alpha.unwrap_or(NCOMP_ALPHA);
                if !(alpha > 0.0) {
                    return Err(Error::InvalidSpec(format!("alpha = {alpha} must be positive")));
                }
                let p = probability(o.inclusion_probability.unwrap_or(alpha / d as f64))?;
                let slack = match o.threshold_slack {
                    Some(s) => s,
                    // with q = 0 the threshold is exact containment whatever Delta is
                    None if q == 0.0 => 0.0,
                    None => {
                        let g = design::gamma(n, d, self.delta)?;
                        design::ncomp_threshold_slack(alpha, q, g)
                    }
                };
                let valid = if q == 0.0 {
                    slack >= 0.0 && slack.is_finite()
                } else {
                    design::ncomp_slack_valid(q, slack)
                };
                if !valid {
                    return Err(Error::InvalidSpec(format!(
                        "Delta = {slack} outside the valid window for q = {q}"
                    )));
                }
                CellDesign::Ncomp { p, slack }
            }
        })
    }
}

/// Concrete per-cell decoder settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CellDesign {
    Cbp { group_size: usize },
    Comp { p: f64 },
    Ncbp { group_size: usize, repetitions: usize, base_tests: usize },
    Ncomp { p: f64, slack: f64 },
}

/// One `(algorithm, n, d, q, T)` point of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub q: f64,
    pub tests: usize,
    pub trials: u64,
    pub seed: u64,
    pub index: u64,
    pub decoder: CellDesign,
}

/// Everything one trial produced, kept for auditing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub input: InputVector,
    pub estimate: EstimateVector,
    pub false_positives: usize,
    pub false_negatives: usize,
}

impl TrialOutcome {
    pub fn success(&self) -> bool {
        self.false_positives == 0 && self.false_negatives == 0
    }
}

fn trial_rng(seed: u64, cell: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&cell.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

impl Cell {
    /// Runs trial number `trial` of this cell. Deterministic in
    /// `(seed, index, trial)`.
    pub fn run_trial(&self, trial: u64) -> Result<TrialOutcome> {
        let mut rng = trial_rng(self.seed, self.index, trial);
        let channel = NoiseChannel::new(self.q)?;
        let input = InputVector::random(self.n, self.d, &mut rng)?;
        let report = match self.decoder {
            CellDesign::Cbp { group_size } => {
                let m = design::cbp_matrix(self.n, self.tests, group_size, &mut rng)?;
                let y = noiseless_outcome(&m, &input)?;
                let (observed, _) = apply_noise(&y, &channel, &mut rng);
                decode_cbp(&m, &observed)?
            }
            CellDesign::Comp { p } => {
                let m = design::bernoulli_matrix(self.n, self.tests, p, &mut rng)?;
                let y = noiseless_outcome(&m, &input)?;
                let (observed, _) = apply_noise(&y, &channel, &mut rng);
                decode_comp(&m, &observed)?
            }
            CellDesign::Ncbp {
                group_size,
                repetitions,
                base_tests,
            } => {
                let base = design::cbp_matrix(self.n, base_tests, group_size, &mut rng)?;
                let y = design::repeat_outcome(&noiseless_outcome(&base, &input)?, repetitions);
                let (observed, _) = apply_noise(&y, &channel, &mut rng);
                decode_ncbp(&base, &observed, repetitions)?
            }
            CellDesign::Ncomp { p, slack } => {
                let m = design::bernoulli_matrix(self.n, self.tests, p, &mut rng)?;
                let y = noiseless_outcome(&m, &input)?;
                let (observed, _) = apply_noise(&y, &channel, &mut rng);
                decode_ncomp(&m, &observed, self.q, slack)?
            }
        };
        let (false_positives, false_negatives) = score(input.bits(), &report.estimate);
        Ok(TrialOutcome {
            input,
            estimate: report.estimate,
            false_positives,
            false_negatives,
        })
    }
}

/// `(false positives, false negatives)` of `estimate` against `truth`.
pub fn score(truth: &BitVector, estimate: &EstimateVector) -> (usize, usize) {
    let diff = truth.xor(estimate);
    let false_neg = diff.and_count(truth);
    (diff.count_ones() - false_neg, false_neg)
}

/// Aggregated statistics of one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub d: usize,
    pub q: f64,
    pub tests: usize,
    /// Trials actually run.
    pub trials: u64,
    pub requested_trials: u64,
    /// Trials with exact recovery.
    pub successes: u64,
    pub false_pos_total: u64,
    pub false_neg_total: u64,
    pub seed: u64,
    pub wall_time: Duration,
}

impl TrialReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn error_rate(&self) -> f64 {
        1.0 - self.success_rate()
    }

    /// Binomial standard error of the success rate.
    pub fn std_error(&self) -> f64 {
        let p = self.success_rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// The wall-time budget ran out before all requested trials finished.
    pub fn under_sampled(&self) -> bool {
        self.trials < self.requested_trials
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.n,
            self.d,
            self.q,
            self.tests,
            self.trials,
            self.successes,
            self.success_rate(),
            self.false_pos_total,
            self.false_neg_total,
            self.seed
        )
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    trials: u64,
    successes: u64,
    false_pos: u64,
    false_neg: u64,
}

impl Tally {
    fn add(self, other: Tally) -> Tally {
        Tally {
            trials: self.trials + other.trials,
            successes: self.successes + other.successes,
            false_pos: self.false_pos + other.false_pos,
            false_neg: self.false_neg + other.false_neg,
        }
    }
}

/// Runs all trials of `cell` on the current rayon pool.
pub fn run_cell(cell: &Cell, budget: Option<Duration>) -> Result<TrialReport> {
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut next = 0u64;
    while next < cell.trials {
        let end = (next + CHUNK).min(cell.trials);
        let chunk = (next..end)
            .into_par_iter()
            .map(|t| {
                let out = cell.run_trial(t)?;
                Ok(Tally {
                    trials: 1,
                    successes: out.success() as u64,
                    false_pos: out.false_positives as u64,
                    false_neg: out.false_negatives as u64,
                })
            })
            .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
        tally = tally.add(chunk);
        next = end;
        if budget.is_some_and(|b| start.elapsed() >= b) {
            break;
        }
    }
    Ok(TrialReport {
        algorithm: cell.algorithm,
        n: cell.n,
        d: cell.d,
        q: cell.q,
        tests: cell.tests,
        trials: tally.trials,
        requested_trials: cell.trials,
        successes: tally.successes,
        false_pos_total: tally.false_pos,
        false_neg_total: tally.false_neg,
        seed: cell.seed,
        wall_time: start.elapsed(),
    })
}

/// Runs every cell of the sweep, in cell order.
pub fn run_sweep(spec: &ExperimentSpec) -> Result<Vec<TrialReport>> {
    let cells = spec.cells()?;
    let run = || {
        cells
            .iter()
            .map(|c| run_cell(c, spec.time_budget))
            .collect::<Result<Vec<_>>>()
    };
    match spec.workers {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidSpec(format!("cannot start {workers} workers: {e}")))?
            .install(run),
        None => run(),
    }
}

pub fn to_csv(reports: &[TrialReport]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in reports {
        writeln!(out, "{}", r.csv_row()).unwrap();
    }
    out
}

pub fn write_csv_file(path: &Path, reports: &[TrialReport]) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(to_csv(reports).as_bytes())
        .map_err(|e| Error::io(path, e))
}

/// Parses `key=value` lines; `#` starts a comment. Later keys win.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(i + 1, format!("expected key=value, got {line:?}")))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::parse(i + 1, "empty key"));
        }
        out.insert(key.to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// Keys accepted by [`ExperimentSpec::from_settings`].
pub const SETTING_KEYS: &[&str] = &[
    "algo", "n", "d", "q", "T", "trials", "seed", "delta", "g", "p", "K", "alpha", "Delta",
    "workers", "budget_secs",
];

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("bad value for {key}: {value:?}")))
}

/// Parses `a,b,c` or an inclusive range `start:stop:step`.
pub fn parse_test_counts(value: &str) -> Result<Vec<usize>> {
    let value = value.trim();
    if value.is_empty() {
        return Ok(Vec::new());
    }
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        let [start, stop, step] = parts.as_slice() else {
            return Err(Error::InvalidSpec(format!("T range must be start:stop:step, got {value:?}")));
        };
        let (start, stop, step): (usize, usize, usize) = (
            parse_value("T", start)?,
            parse_value("T", stop)?,
            parse_value("T", step)?,
        );
        if step == 0 || stop < start {
            return Err(Error::InvalidSpec(format!("empty or endless T range {value:?}")));
        }
        return Ok((start..=stop).step_by(step).collect());
    }
    value.split(',').map(|v| parse_value("T", v)).collect()
}

impl ExperimentSpec {
    /// Builds a spec from `key=value` settings (config file and/or flags).
    /// `q` is a comma-separated list; `T` is a list or `start:stop:step`.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self> {
        if let Some(unknown) = settings.keys().find(|k| !SETTING_KEYS.contains(&k.as_str())) {
            return Err(Error::InvalidSpec(format!("unknown setting {unknown:?}")));
        }
        let get = |k: &str| settings.get(k).map(String::as_str);
        let required = |k: &str| get(k).ok_or_else(|| Error::InvalidSpec(format!("missing setting {k}")));

        let algorithm: Algorithm = required("algo")?.parse()?;
        let mut spec = ExperimentSpec::new(algorithm, parse_value("n", required("n")?)?, parse_value("d", required("d")?)?);
        spec.tests = parse_test_counts(required("T")?)?;
        if let Some(q) = get("q") {
            spec.noise = q.split(',').map(|v| parse_value("q", v)).collect::<Result<_>>()?;
        }
        if let Some(v) = get("trials") {
            spec.trials = parse_value("trials", v)?;
        }
        if let Some(v) = get("seed") {
            spec.seed = parse_value("seed", v)?;
        }
        if let Some(v) = get("delta") {
            spec.delta = parse_value("delta", v)?;
        }
        if let Some(v) = get("workers") {
            spec.workers = Some(parse_value("workers", v)?);
        }
        if let Some(v) = get("budget_secs") {
            let secs: f64 = parse_value("budget_secs", v)?;
            if !(secs > 0.0 && secs.is_finite()) {
                return Err(Error::InvalidSpec(format!("budget_secs = {secs} must be positive")));
            }
            spec.time_budget = Some(Duration::from_secs_f64(secs));
        }
        spec.overrides = Overrides {
            group_size: get("g").map(|v| parse_value("g", v)).transpose()?,
            inclusion_probability: get("p").map(|v| parse_value("p", v)).transpose()?,
            repetitions: get("K").map(|v| parse_value("K", v)).transpose()?,
            alpha: get("alpha").map(|v| parse_value("alpha", v)).transpose()?,
            threshold_slack: get("Delta").map(|v| parse_value("Delta", v)).transpose()?,
        };
        Ok(spec)
    }
}

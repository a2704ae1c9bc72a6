//! Random pooling designs and the closed-form parameter choices that go with
//! each decoder.
//!
//! Test counts and repetition factors are rounded up: adding tests can only
//! lower the error probability. The CBP group size is rounded up as well.
//!
//! Formulas written with natural logarithms (CBP, COMP, NCBP) use `ln`; the
//! NCOMP count `beta * d * log2(n)` uses a binary logarithm, which is where
//! the `ln 2` factor inside its `beta` comes from.

use std::f64::consts::{E, LN_2};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bits::{bernoulli_indices, words_for, BitVector, WORD_BITS};
use crate::error::{check_delta, check_instance, check_noise, Error, Result};
use crate::model::{ResultVector, TestMatrix};

/// NCOMP density scale `alpha` (with `p = alpha / d`) that minimises the
/// required number of tests.
pub const NCOMP_ALPHA: f64 = 0.5;

/// Rounded display value of [`ncomp_beta_coefficient`].
pub const NCOMP_BETA_DISPLAY: f64 = 4.36;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Cbp,
    Comp,
    Ncbp,
    Ncomp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Cbp, Algorithm::Comp, Algorithm::Ncbp, Algorithm::Ncomp];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Cbp => "cbp",
            Algorithm::Comp => "comp",
            Algorithm::Ncbp => "ncbp",
            Algorithm::Ncomp => "ncomp",
        }
    }

    /// Whether the algorithm is designed for a noisy channel.
    pub fn is_noisy(self) -> bool {
        matches!(self, Algorithm::Ncbp | Algorithm::Ncomp)
    }

    /// Whether the matrix is built from with-replacement row sampling
    /// (CBP family) rather than i.i.d. Bernoulli entries (COMP family).
    pub fn uses_group_sampling(self) -> bool {
        matches!(self, Algorithm::Cbp | Algorithm::Ncbp)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cbp" => Ok(Algorithm::Cbp),
            "comp" => Ok(Algorithm::Comp),
            "ncbp" => Ok(Algorithm::Ncbp),
            "ncomp" => Ok(Algorithm::Ncomp),
            _ => Err(Error::InvalidParameter(format!(
                "unknown algorithm {s:?} (expected cbp, comp, ncbp or ncomp)"
            ))),
        }
    }
}

/// Algorithm-specific design knobs. Fields that do not apply to an algorithm
/// are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignParams {
    pub algorithm: Algorithm,
    /// Total number of tests, including NCBP repetitions.
    pub tests: usize,
    /// Draws with replacement per test (CBP, NCBP).
    pub group_size: Option<usize>,
    /// Per-entry inclusion probability (COMP, NCOMP).
    pub inclusion_probability: Option<f64>,
    /// Repetitions of every base test (NCBP).
    pub repetitions: Option<usize>,
    /// Density scale with `p = alpha / d` (NCOMP).
    pub alpha: Option<f64>,
    /// Threshold slack `Delta` of the relaxed matching rule (NCOMP).
    pub threshold_slack: Option<f64>,
    /// Tests per `d ln n` for CBP, COMP and NCBP; tests per `d log2 n` for
    /// NCOMP. Unrounded.
    pub beta: f64,
}

impl DesignParams {
    /// Number of distinct base tests: `tests / K` for NCBP, `tests` otherwise.
    pub fn base_tests(&self) -> usize {
        self.tests / self.repetitions.unwrap_or(1)
    }

    /// `key=value` pairs for the parameters that apply, in a stable order.
    pub fn summary(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("algorithm", self.algorithm.to_string()), ("T", self.tests.to_string())];
        if let Some(g) = self.group_size {
            out.push(("g", g.to_string()));
        }
        if let Some(p) = self.inclusion_probability {
            out.push(("p", p.to_string()));
        }
        if let Some(k) = self.repetitions {
            out.push(("K", k.to_string()));
            out.push(("base_T", self.base_tests().to_string()));
        }
        if let Some(a) = self.alpha {
            out.push(("alpha", a.to_string()));
        }
        if let Some(delta) = self.threshold_slack {
            out.push(("Delta", delta.to_string()));
        }
        out.push(("beta", self.beta.to_string()));
        out
    }

    /// Draws a matrix for this design. NCBP returns the expanded matrix with
    /// every base row repeated `K` times.
    pub fn sample_matrix<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<TestMatrix> {
        match self.algorithm {
            Algorithm::Cbp => cbp_matrix(n, self.tests, self.required_group_size()?, rng),
            Algorithm::Ncbp => {
                let k = self.repetitions.ok_or_else(|| missing("K"))?;
                let base = cbp_matrix(n, self.base_tests(), self.required_group_size()?, rng)?;
                ncbp_matrix(&base, k)
            }
            Algorithm::Comp | Algorithm::Ncomp => {
                let p = self.inclusion_probability.ok_or_else(|| missing("p"))?;
                bernoulli_matrix(n, self.tests, p, rng)
            }
        }
    }

    fn required_group_size(&self) -> Result<usize> {
        self.group_size.ok_or_else(|| missing("g"))
    }
}

fn missing(name: &str) -> Error {
    Error::InvalidParameter(format!("design is missing parameter {name}"))
}

/// CBP design: each of the `tests` rows is `group_size` uniform draws with
/// replacement from `0..n`; an entry is 1 iff its item was drawn at least once.
pub fn cbp_matrix<R: Rng + ?Sized>(
    n: usize,
    tests: usize,
    group_size: usize,
    rng: &mut R,
) -> Result<TestMatrix> {
    if n == 0 || tests == 0 || group_size == 0 {
        return Err(Error::InvalidParameter(format!(
            "cbp_matrix needs n, T, g >= 1 (got n = {n}, T = {tests}, g = {group_size})"
        )));
    }
    let stride = words_for(n);
    let mut words = vec![0u64; tests * stride];
    for row in words.chunks_exact_mut(stride) {
        for _ in 0..group_size {
            let j = rng.random_range(0..n);
            row[j / WORD_BITS] |= 1 << (j % WORD_BITS);
        }
    }
    TestMatrix::from_row_words(tests, n, words)
}

/// COMP design: entries i.i.d. Bernoulli(`p`).
pub fn bernoulli_matrix<R: Rng + ?Sized>(
    n: usize,
    tests: usize,
    p: f64,
    rng: &mut R,
) -> Result<TestMatrix> {
    if n == 0 || tests == 0 {
        return Err(Error::InvalidParameter(format!(
            "bernoulli_matrix needs n, T >= 1 (got n = {n}, T = {tests})"
        )));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("inclusion probability p = {p} must lie in (0, 1)")));
    }
    let stride = words_for(n);
    let mut words = vec![0u64; tests * stride];
    bernoulli_indices(tests * n, p, rng, |k| {
        let (i, j) = (k / n, k % n);
        words[i * stride + j / WORD_BITS] |= 1 << (j % WORD_BITS);
    });
    TestMatrix::from_row_words(tests, n, words)
}

/// NCBP design: every row of `base` repeated `repetitions` times in place,
/// so rows `iK..iK+K-1` all equal base row `i`.
pub fn ncbp_matrix(base: &TestMatrix, repetitions: usize) -> Result<TestMatrix> {
    if repetitions == 0 {
        return Err(Error::InvalidParameter("repetition factor K must be at least 1".into()));
    }
    let mut words = Vec::with_capacity(base.rows() * repetitions * words_for(base.cols()));
    for i in 0..base.rows() {
        for _ in 0..repetitions {
            words.extend_from_slice(base.row_words(i));
        }
    }
    TestMatrix::from_row_words(base.rows() * repetitions, base.cols(), words)
}

/// Repeats each outcome `repetitions` times in block order. Equal to the
/// noiseless outcome of [`ncbp_matrix`] given the base outcome.
pub fn repeat_outcome(base: &ResultVector, repetitions: usize) -> ResultVector {
    let mut out = BitVector::zeros(base.len() * repetitions);
    for i in base.iter_ones() {
        for r in 0..repetitions {
            out.set(i * repetitions + r, true);
        }
    }
    out
}

/// CBP group size `g* = 1 / ln(n / (n - d))`, rounded up.
pub fn cbp_group_size(n: usize, d: usize) -> Result<usize> {
    check_instance(n, d)?;
    let log_ratio = -(-(d as f64) / n as f64).ln_1p();
    Ok(ceil_count(1.0 / log_ratio))
}

/// Tests sufficient for CBP with error at most `n^-delta`:
/// `ceil(2 (1 + delta) e d ln n)`.
pub fn cbp_test_count(n: usize, d: usize, delta: f64) -> Result<usize> {
    check_instance(n, d)?;
    check_delta(delta)?;
    Ok(ceil_count(cbp_beta(delta) * d as f64 * (n as f64).ln()))
}

/// Tests sufficient for COMP with error at most `n^-delta`:
/// `ceil(e (1 + delta) d ln n)`.
pub fn comp_test_count(n: usize, d: usize, delta: f64) -> Result<usize> {
    check_instance(n, d)?;
    check_delta(delta)?;
    Ok(ceil_count(comp_beta(delta) * d as f64 * (n as f64).ln()))
}

fn cbp_beta(delta: f64) -> f64 {
    2.0 * (1.0 + delta) * E
}

fn comp_beta(delta: f64) -> f64 {
    E * (1.0 + delta)
}

fn ceil_count(x: f64) -> usize {
    (x.ceil() as usize).max(1)
}

pub fn cbp_params(n: usize, d: usize, delta: f64) -> Result<DesignParams> {
    Ok(DesignParams {
        algorithm: Algorithm::Cbp,
        tests: cbp_test_count(n, d, delta)?,
        group_size: Some(cbp_group_size(n, d)?),
        inclusion_probability: None,
        repetitions: None,
        alpha: None,
        threshold_slack: None,
        beta: cbp_beta(delta),
    })
}

/// COMP design: `p = 1/d` and `T = ceil(e (1 + delta) d ln n)`.
pub fn comp_params(n: usize, d: usize, delta: f64) -> Result<DesignParams> {
    Ok(DesignParams {
        algorithm: Algorithm::Comp,
        tests: comp_test_count(n, d, delta)?,
        group_size: None,
        inclusion_probability: Some(1.0 / d as f64),
        repetitions: None,
        alpha: None,
        threshold_slack: None,
        beta: comp_beta(delta),
    })
}

/// Raw (unrounded) NCBP repetition requirement
/// `2 (ln ln n + ln d + delta ln n + 1 + ln(2 (1 + delta))) / (1 - 2q)^2`.
pub fn ncbp_repetition_raw(n: usize, d: usize, delta: f64, q: f64) -> Result<f64> {
    check_noise(q)?;
    check_delta(delta)?;
    if d == 0 {
        return Err(Error::InvalidInstance("d must be at least 1".into()));
    }
    if n < 3 {
        return Err(Error::InvalidInstance(format!("NCBP needs n >= 3 so that ln ln n > 0 (got n = {n})")));
    }
    let ln_n = (n as f64).ln();
    let numerator = 2.0 * (ln_n.ln() + (d as f64).ln() + delta * ln_n + 1.0 + (2.0 * (1.0 + delta)).ln());
    Ok(numerator / (1.0 - 2.0 * q).powi(2))
}

/// NCBP repetition factor `K`, the ceiling of [`ncbp_repetition_raw`].
pub fn ncbp_repetition(n: usize, d: usize, delta: f64, q: f64) -> Result<usize> {
    Ok(ceil_count(ncbp_repetition_raw(n, d, delta, q)?))
}

/// NCBP design: the CBP design with every test repeated `K` times. The total
/// test count is `cbp_test_count * K`.
pub fn ncbp_params(n: usize, d: usize, delta: f64, q: f64) -> Result<DesignParams> {
    let k = ncbp_repetition(n, d, delta, q)?;
    let base = cbp_params(n, d, delta)?;
    Ok(DesignParams {
        algorithm: Algorithm::Ncbp,
        tests: base.tests * k,
        repetitions: Some(k),
        beta: base.beta * k as f64,
        ..base
    })
}

/// Finite-`n` exponent ratio
/// `gamma = (ln d + delta ln n) / (ln(n - d) + delta ln n)`.
/// Tends to `delta / (1 + delta)` as `n` grows with `d` fixed.
pub fn gamma(n: usize, d: usize, delta: f64) -> Result<f64> {
    check_instance(n, d)?;
    check_delta(delta)?;
    let ln_n = (n as f64).ln();
    Ok(((d as f64).ln() + delta * ln_n) / (((n - d) as f64).ln() + delta * ln_n))
}

/// Threshold slack where the false-negative and false-positive requirements
/// on `beta` meet: `Delta* = e^-alpha (1 - 2q) / (q (1 + gamma^-1/2))`.
pub fn ncomp_threshold_slack(alpha: f64, q: f64, gamma: f64) -> f64 {
    (-alpha).exp() * (1.0 - 2.0 * q) / (q * (1.0 + gamma.powf(-0.5)))
}

/// Exact coefficient `2 e ln 2 / (1 - e^-2)`, displayed rounded as 4.36.
pub fn ncomp_beta_coefficient() -> f64 {
    2.0 * E * LN_2 / (1.0 - (-2.0f64).exp())
}

/// `beta* = 2 e (sqrt(delta) + sqrt(1 + delta))^2 ln 2 / ((1 - e^-2)(1 - 2q)^2)`.
pub fn ncomp_beta(delta: f64, q: f64) -> Result<f64> {
    check_noise(q)?;
    check_delta(delta)?;
    let root_sum = delta.sqrt() + (1.0 + delta).sqrt();
    Ok(ncomp_beta_coefficient() * root_sum * root_sum / (1.0 - 2.0 * q).powi(2))
}

/// Checks `Delta > 0` and `1 - q (1 + Delta) > q`, the range over which the
/// relaxed threshold separates defective from non-defective columns.
pub fn ncomp_slack_valid(q: f64, slack: f64) -> bool {
    slack > 0.0 && 1.0 - q * (1.0 + slack) > q
}

/// NCOMP design: `alpha = 0.5`, `p = alpha / d`, `Delta = Delta*` at the exact
/// finite-`n` gamma, and `T = ceil(beta* d log2 n)`.
///
/// Returns [`Error::UseNoiseless`] for `q = 0`.
pub fn ncomp_params(n: usize, d: usize, delta: f64, q: f64) -> Result<DesignParams> {
    check_noise(q)?;
    if q == 0.0 {
        return Err(Error::UseNoiseless);
    }
    check_instance(n, d)?;
    if delta <= 0.0 {
        return Err(Error::InvalidParameter(format!("NCOMP needs delta > 0 (got {delta})")));
    }
    let g = gamma(n, d, delta)?;
    let slack = ncomp_threshold_slack(NCOMP_ALPHA, q, g);
    if !ncomp_slack_valid(q, slack) {
        return Err(Error::InvalidParameter(format!(
            "threshold slack Delta = {slack} outside the valid window for q = {q}"
        )));
    }
    let beta = ncomp_beta(delta, q)?;
    Ok(DesignParams {
        algorithm: Algorithm::Ncomp,
        tests: ceil_count(beta * d as f64 * (n as f64).log2()),
        group_size: None,
        inclusion_probability: Some(NCOMP_ALPHA / d as f64),
        repetitions: None,
        alpha: Some(NCOMP_ALPHA),
        threshold_slack: Some(slack),
        beta,
    })
}

/// Default design for `algorithm`. `q` is ignored by the noiseless designs.
pub fn design(algorithm: Algorithm, n: usize, d: usize, delta: f64, q: f64) -> Result<DesignParams> {
    match algorithm {
        Algorithm::Cbp => cbp_params(n, d, delta),
        Algorithm::Comp => comp_params(n, d, delta),
        Algorithm::Ncbp => ncbp_params(n, d, delta, q),
        Algorithm::Ncomp => ncomp_params(n, d, delta, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn group_size_fixtures() {
        // 1 / ln(1000/990) = 99.499
        assert_eq!(cbp_group_size(1000, 10).unwrap(), 100);
        // 1 / ln 2 = 1.443
        assert_eq!(cbp_group_size(2, 1).unwrap(), 2);
        assert_eq!(cbp_group_size(500, 5).unwrap(), 100);
        assert_eq!(cbp_group_size(200, 4).unwrap(), 50);
        let g = cbp_group_size(1_000_000, 1).unwrap();
        assert!((g as f64 - 1e6).abs() <= 1.0, "g = {g}");
        assert!(matches!(cbp_group_size(10, 10), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn test_count_fixtures() {
        // 2e * 10 * ln 1000 = 375.54
        assert_eq!(comp_test_count(1000, 10, 1.0).unwrap(), 376);
        // 4e * 10 * ln 1000 = 751.09
        assert_eq!(cbp_test_count(1000, 10, 1.0).unwrap(), 752);
        // e * 10 * ln 1000 = 187.77
        assert_eq!(comp_test_count(1000, 10, 0.0).unwrap(), 188);
        assert_eq!(cbp_test_count(500, 5, 1.0).unwrap(), 338);
        assert_eq!(comp_test_count(500, 5, 1.0).unwrap(), 169);
    }

    #[test]
    fn comp_p_is_one_over_d() {
        for (n, d, delta) in [(1000, 10, 1.0), (50, 3, 0.2), (10_000, 7, 4.0)] {
            let params = comp_params(n, d, delta).unwrap();
            assert_eq!(params.inclusion_probability, Some(1.0 / d as f64));
        }
    }

    #[test]
    fn cbp_is_twice_comp_before_rounding() {
        assert!(close(cbp_beta(1.3), 2.0 * comp_beta(1.3), 1e-12));
    }

    #[test]
    fn ncbp_repetition_fixture() {
        // 2 (ln ln 16 + ln 16 + 1 + ln 4) = 12.357
        let raw = ncbp_repetition_raw(16, 1, 1.0, 0.0).unwrap();
        assert!(close(raw, 12.357329, 1e-5), "raw = {raw}");
        assert_eq!(ncbp_repetition(16, 1, 1.0, 0.0).unwrap(), 13);
        let ratio = ncbp_repetition_raw(16, 1, 1.0, 0.2).unwrap() / raw;
        assert!(close(ratio, 1.0 / 0.36, 1e-12));
        assert!(matches!(ncbp_repetition(16, 1, 1.0, 0.5), Err(Error::InvalidNoise(_))));
        assert!(matches!(ncbp_repetition(2, 1, 1.0, 0.1), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn ncbp_total_is_product() {
        let p = ncbp_params(200, 4, 1.0, 0.05).unwrap();
        let k = ncbp_repetition(200, 4, 1.0, 0.05).unwrap();
        assert_eq!(p.tests, cbp_test_count(200, 4, 1.0).unwrap() * k);
        assert_eq!(p.base_tests(), cbp_test_count(200, 4, 1.0).unwrap());
    }

    #[test]
    fn gamma_fixtures() {
        let g = gamma(1_000_000, 10, 1.0).unwrap();
        assert!(close(g, 0.583333, 1e-5), "gamma = {g}");
        let big = gamma(usize::MAX / 2, 10, 1.0).unwrap();
        assert!(close(big, 0.5, 0.05));
        assert!(gamma(10, 10, 1.0).is_err());
    }

    #[test]
    fn ncomp_fixtures() {
        let coeff = ncomp_beta_coefficient();
        assert!(close(coeff, 4.358150, 1e-6));
        assert!(close(ncomp_beta(1.0, 0.0).unwrap(), 25.401161, 1e-5));
        assert!(close(ncomp_beta(1.0, 0.1).unwrap(), 39.689314, 1e-5));
        assert!(close(ncomp_threshold_slack(0.5, 0.1, 0.5), 2.009866, 1e-6));
        let params = ncomp_params(1000, 10, 1.0, 0.1).unwrap();
        assert_eq!(params.tests, 3956);
        assert_eq!(params.inclusion_probability, Some(0.05));
    }

    #[test]
    fn ncomp_refuses_noiseless() {
        assert!(matches!(ncomp_params(100, 2, 1.0, 0.0), Err(Error::UseNoiseless)));
        assert!(matches!(ncomp_params(100, 2, 1.0, 0.5), Err(Error::InvalidNoise(_))));
    }

    #[test]
    fn ncbp_matrix_block_order() {
        let base = TestMatrix::from_dense(&[&[1, 0, 1], &[0, 1, 0]]).unwrap();
        let rep = ncbp_matrix(&base, 3).unwrap();
        assert_eq!(rep.rows(), 6);
        for i in 0..6 {
            assert_eq!(rep.row(i), base.row(i / 3));
        }
        assert_eq!(ncbp_matrix(&base, 1).unwrap(), base);
        assert!(ncbp_matrix(&base, 0).is_err());
    }

    #[test]
    fn cbp_matrix_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = cbp_matrix(30, 40, 1, &mut rng).unwrap();
        assert!((0..40).all(|i| m.row_weight(i) == 1));
        let m = cbp_matrix(1, 5, 3, &mut rng).unwrap();
        assert_eq!(m.count_ones(), 5);
        let m = cbp_matrix(50, 100, 7, &mut rng).unwrap();
        assert!((0..100).all(|i| m.row_weight(i) <= 7));
    }

    #[test]
    fn cbp_matrix_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (n, t, g) = (100usize, 10_000usize, 50usize);
        let m = cbp_matrix(n, t, g, &mut rng).unwrap();
        let p = 1.0 - 0.99f64.powi(50);
        assert!(close(p, 0.3950, 1e-4));
        for j in [0, 17, 99] {
            let sd = (t as f64 * p * (1.0 - p)).sqrt();
            assert!((m.col_weight(j) as f64 - t as f64 * p).abs() <= 3.0 * sd);
        }
    }

    #[test]
    fn bernoulli_matrix_density_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = bernoulli_matrix(1000, 1000, 0.01, &mut rng).unwrap();
        let sd = (1e6f64 * 0.01 * 0.99).sqrt();
        assert!((m.count_ones() as f64 - 1e4).abs() <= 3.0 * sd);

        let a = bernoulli_matrix(40, 30, 0.2, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = bernoulli_matrix(40, 30, 0.2, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert!(bernoulli_matrix(4, 4, 0.0, &mut rng).is_err());
        assert!(bernoulli_matrix(4, 4, 1.0, &mut rng).is_err());
    }

    #[test]
    fn bernoulli_matrix_golden() {
        // p = 1/d with d = 2, n = 4, T = 8, seed 2024
        let m = bernoulli_matrix(4, 8, 0.5, &mut ChaCha8Rng::seed_from_u64(2024)).unwrap();
        assert_eq!(m.to_text(), GOLDEN_BERNOULLI);
    }

    const GOLDEN_BERNOULLI: &str = "8 4\n1000\n0111\n1000\n0101\n0100\n1000\n0101\n1001\n";

    #[test]
    fn repeat_outcome_matches_expanded_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let base = cbp_matrix(20, 6, 4, &mut rng).unwrap();
        let x = crate::model::InputVector::new(20, [3, 11]).unwrap();
        let y = crate::model::noiseless_outcome(&base, &x).unwrap();
        let expanded = ncbp_matrix(&base, 5).unwrap();
        assert_eq!(repeat_outcome(&y, 5), crate::model::noiseless_outcome(&expanded, &x).unwrap());
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), a);
        }
        assert!("omp".parse::<Algorithm>().is_err());
    }
}

//! Closed-form bounds on the number of tests.
//!
//! Lower bounds hold for any non-adaptive algorithm with error at most
//! `eps`; upper bounds are the test counts of the four designs for error at
//! most `n^-delta`. Everything is returned as an unrounded real except the
//! upper bounds, which are the test counts the designs actually use.

use crate::design::{self, Algorithm};
use crate::error::{check_instance, check_noise, Error, Result};

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(q: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(q) + term(1.0 - q)
}

fn check_eps(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("error probability eps = {eps} must lie in [0, 1]")))
    }
}

/// `(1 - eps) d log2(n / d)`.
pub fn noiseless_lower_bound(n: usize, d: usize, eps: f64) -> Result<f64> {
    check_instance(n, d)?;
    check_eps(eps)?;
    Ok((1.0 - eps) * d as f64 * (n as f64 / d as f64).log2())
}

/// `(1 - eps) d log2(n / d) / (1 - H(q))`.
pub fn noisy_lower_bound(n: usize, d: usize, eps: f64, q: f64) -> Result<f64> {
    check_noise(q)?;
    Ok(noiseless_lower_bound(n, d, eps)? / (1.0 - binary_entropy(q)))
}

/// Probability that a 1 in a non-defective column is matched by a positive
/// observation, through the defectives' overlap or through noise:
/// `a = 1 - q - (1 - alpha/d)^d (1 - 2q)`.
pub fn ncomp_hiding_probability(d: usize, q: f64, alpha: f64) -> Result<f64> {
    check_noise(q)?;
    if d == 0 {
        return Err(Error::InvalidInstance("d must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha < d as f64) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, d = {d})")));
    }
    Ok(1.0 - q - (1.0 - alpha / d as f64).powi(d as i32) * (1.0 - 2.0 * q))
}

/// The `d`-independent lower estimate `(1 - q) - e^-alpha (1 - 2q)` of
/// [`ncomp_hiding_probability`].
pub fn ncomp_hiding_lower_estimate(q: f64, alpha: f64) -> f64 {
    (1.0 - q) - (-alpha).exp() * (1.0 - 2.0 * q)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub delta: f64,
    pub q: Option<f64>,
    pub lower_noiseless: f64,
    /// Present when `q` was supplied.
    pub lower_noisy: Option<f64>,
    pub upper_cbp: usize,
    pub upper_comp: usize,
    /// Present when `q` was supplied.
    pub upper_ncbp: Option<usize>,
    /// Present when `0 < q < 0.5`; NCOMP is not designed for `q = 0`.
    pub upper_ncomp: Option<usize>,
    /// Exact NCOMP `beta*` for the supplied `q`.
    pub ncomp_beta: Option<f64>,
}

/// Lower bounds at error `eps` and the four design test counts at error
/// exponent `delta`. Noisy entries are filled only when `q` is given.
pub fn bound_report(n: usize, d: usize, eps: f64, delta: f64, q: Option<f64>) -> Result<BoundReport> {
    let lower_noiseless = noiseless_lower_bound(n, d, eps)?;
    let lower_noisy = q.map(|q| noisy_lower_bound(n, d, eps, q)).transpose()?;
    let upper_cbp = design::cbp_test_count(n, d, delta)?;
    let upper_comp = design::comp_test_count(n, d, delta)?;
    let upper_ncbp = q
        .map(|q| design::ncbp_params(n, d, delta, q).map(|p| p.tests))
        .transpose()?;
    let (upper_ncomp, ncomp_beta) = match q {
        Some(q) if q > 0.0 => {
            let p = design::ncomp_params(n, d, delta, q)?;
            (Some(p.tests), Some(p.beta))
        }
        Some(q) => (None, Some(design::ncomp_beta(delta, q)?)),
        None => (None, None),
    };
    Ok(BoundReport {
        n,
        d,
        eps,
        delta,
        q,
        lower_noiseless,
        lower_noisy,
        upper_cbp,
        upper_comp,
        upper_ncbp,
        upper_ncomp,
        ncomp_beta,
    })
}

/// Upper bounds with `eps = n^-delta` on the lower-bound side.
pub fn upper_bounds(n: usize, d: usize, delta: f64, q: f64) -> Result<BoundReport> {
    let eps = (n as f64).powf(-delta);
    bound_report(n, d, eps, delta, Some(q))
}

impl BoundReport {
    pub fn upper(&self, algorithm: Algorithm) -> Option<usize> {
        match algorithm {
            Algorithm::Cbp => Some(self.upper_cbp),
            Algorithm::Comp => Some(self.upper_comp),
            Algorithm::Ncbp => self.upper_ncbp,
            Algorithm::Ncomp => self.upper_ncomp,
        }
    }
}

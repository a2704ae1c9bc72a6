//! The four decoders. Each maps a pooling matrix and an observed result
//! vector to an estimate of the defective set.

use crate::bits::{and_count, BitVector};
use crate::error::{check_noise, Error, Result};
use crate::model::{EstimateVector, ResultVector, TestMatrix};

/// Decoder output plus per-item diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct DecodeReport {
    pub estimate: EstimateVector,
    /// Items whose column is all zero. COMP and NCOMP declare them
    /// non-defective; CBP declares them defective.
    pub never_tested: BitVector,
    /// NCOMP only: `|S_i| - |T_i| (1 - q (1 + Delta))` per item. An item with
    /// at least one test is declared defective iff its margin is `>= 0`.
    pub margins: Option<Vec<f64>>,
}

impl DecodeReport {
    pub fn never_tested_items(&self) -> impl Iterator<Item = usize> + '_ {
        self.never_tested.iter_ones()
    }
}

fn check_dims(matrix: &TestMatrix, y: &ResultVector) -> Result<()> {
    if matrix.rows() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but result vector has length {}",
            matrix.rows(),
            y.len()
        )));
    }
    Ok(())
}

fn never_tested(matrix: &TestMatrix) -> BitVector {
    BitVector::from_indices(
        matrix.cols(),
        (0..matrix.cols()).filter(|&j| matrix.col_weight(j) == 0),
    )
}

/// CBP: clear every item that appears in a negative test and declare the
/// rest defective, `x_hat = 1 - m(y)`.
pub fn decode_cbp(matrix: &TestMatrix, y: &ResultVector) -> Result<DecodeReport> {
    check_dims(matrix, y)?;
    let mut cleared = BitVector::zeros(matrix.cols());
    for i in y.not().iter_ones() {
        cleared.or_assign_words(matrix.row_words(i));
    }
    Ok(DecodeReport {
        estimate: cleared.not(),
        never_tested: never_tested(matrix),
        margins: None,
    })
}

/// COMP: item `j` is defective iff every test containing it is positive.
pub fn decode_comp(matrix: &TestMatrix, y: &ResultVector) -> Result<DecodeReport> {
    check_dims(matrix, y)?;
    let mut estimate = BitVector::zeros(matrix.cols());
    let mut untested = BitVector::zeros(matrix.cols());
    let yw = y.words();
    for j in 0..matrix.cols() {
        let col = matrix.col_words(j);
        if col.iter().all(|&w| w == 0) {
            untested.set(j, true);
            continue;
        }
        if col.iter().zip(yw).all(|(&c, &o)| c & !o == 0) {
            estimate.set(j, true);
        }
    }
    Ok(DecodeReport {
        estimate,
        never_tested: untested,
        margins: None,
    })
}

/// Collapses each block of `repetitions` consecutive observations to one
/// outcome: positive iff at least `K/2` of the block is positive.
pub fn majority_vote(observed: &ResultVector, repetitions: usize) -> Result<ResultVector> {
    if repetitions == 0 {
        return Err(Error::InvalidParameter("repetition factor K must be at least 1".into()));
    }
    if observed.len() % repetitions != 0 {
        return Err(Error::DimensionMismatch(format!(
            "observed length {} is not a multiple of K = {repetitions}",
            observed.len()
        )));
    }
    let rows = observed.len() / repetitions;
    let mut counts = vec![0usize; rows];
    for k in observed.iter_ones() {
        counts[k / repetitions] += 1;
    }
    // count >= K/2, kept in integers
    Ok(BitVector::from_indices(
        rows,
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| 2 * c >= repetitions)
            .map(|(i, _)| i),
    ))
}

/// NCBP: majority vote over each block of `K` repeated tests, then CBP on
/// the base matrix.
pub fn decode_ncbp(
    base: &TestMatrix,
    observed: &ResultVector,
    repetitions: usize,
) -> Result<DecodeReport> {
    let voted = majority_vote(observed, repetitions)?;
    if voted.len() != base.rows() {
        return Err(Error::DimensionMismatch(format!(
            "observed length {} != K ({repetitions}) x base rows ({})",
            observed.len(),
            base.rows()
        )));
    }
    decode_cbp(base, &voted)
}

/// NCOMP: item `i` is defective iff `|S_i| >= |T_i| (1 - q (1 + Delta))`,
/// where `T_i` is the column support and `S_i` its overlap with the
/// observed positives. The right side is compared unrounded.
pub fn decode_ncomp(
    matrix: &TestMatrix,
    observed: &ResultVector,
    q: f64,
    slack: f64,
) -> Result<DecodeReport> {
    check_dims(matrix, observed)?;
    check_noise(q)?;
    if !(slack >= 0.0 && slack.is_finite()) {
        return Err(Error::InvalidParameter(format!("threshold slack Delta = {slack} must be >= 0")));
    }
    let factor = 1.0 - q * (1.0 + slack);
    let mut estimate = BitVector::zeros(matrix.cols());
    let mut untested = BitVector::zeros(matrix.cols());
    let mut margins = Vec::with_capacity(matrix.cols());
    let ow = observed.words();
    for j in 0..matrix.cols() {
        let col = matrix.col_words(j);
        let indicator = matrix.col_weight(j);
        let matching = and_count(col, ow);
        let margin = matching as f64 - indicator as f64 * factor;
        margins.push(margin);
        if indicator == 0 {
            untested.set(j, true);
        } else if margin >= 0.0 {
            estimate.set(j, true);
        }
    }
    Ok(DecodeReport {
        estimate,
        never_tested: untested,
        margins: Some(margins),
    })
}

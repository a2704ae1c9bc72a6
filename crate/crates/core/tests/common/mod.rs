//! Per-definition reference decoders over plain `Vec<Vec<bool>>` with
//! explicit set loops. Shares nothing with the packed implementation beyond
//! reading matrix entries.
#![allow(dead_code)]

use grouptest::{BitVector, InputVector, TestMatrix};
use rand::Rng;

pub fn dense(m: &TestMatrix) -> Vec<Vec<bool>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

pub fn to_bools(v: &BitVector) -> Vec<bool> {
    v.iter().collect()
}

pub fn naive_outcome(m: &[Vec<bool>], support: &[usize]) -> Vec<bool> {
    m.iter()
        .map(|row| support.iter().any(|&j| row[j]))
        .collect()
}

pub fn naive_cbp(m: &[Vec<bool>], y: &[bool]) -> Vec<bool> {
    let n = m.first().map_or(0, Vec::len);
    let mut cleared = vec![false; n];
    for (i, row) in m.iter().enumerate() {
        if !y[i] {
            for j in 0..n {
                if row[j] {
                    cleared[j] = true;
                }
            }
        }
    }
    cleared.iter().map(|c| !c).collect()
}

pub fn naive_comp(m: &[Vec<bool>], y: &[bool]) -> Vec<bool> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| {
            let tests: Vec<usize> = (0..m.len()).filter(|&i| m[i][j]).collect();
            !tests.is_empty() && tests.iter().all(|&i| y[i])
        })
        .collect()
}

pub fn naive_majority(y: &[bool], k: usize) -> Vec<bool> {
    y.chunks(k)
        .map(|block| {
            let ones = block.iter().filter(|&&b| b).count() as f64;
            ones >= k as f64 / 2.0
        })
        .collect()
}

pub fn naive_ncbp(base: &[Vec<bool>], y: &[bool], k: usize) -> Vec<bool> {
    naive_cbp(base, &naive_majority(y, k))
}

pub fn naive_ncomp(m: &[Vec<bool>], y: &[bool], q: f64, slack: f64) -> Vec<bool> {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| {
            let indicator: Vec<usize> = (0..m.len()).filter(|&i| m[i][j]).collect();
            let matching: Vec<usize> = indicator.iter().copied().filter(|&i| y[i]).collect();
            !indicator.is_empty()
                && matching.len() as f64 >= indicator.len() as f64 * (1.0 - q * (1.0 + slack))
        })
        .collect()
}

/// Random matrix with i.i.d. entries of density `p`.
pub fn random_matrix<R: Rng>(rows: usize, cols: usize, p: f64, rng: &mut R) -> TestMatrix {
    TestMatrix::from_row_indices(
        cols,
        (0..rows).map(|_| (0..cols).filter(|_| rng.random::<f64>() < p).collect::<Vec<_>>()),
    )
    .unwrap()
}

pub fn random_bits<R: Rng>(len: usize, p: f64, rng: &mut R) -> BitVector {
    BitVector::from_indices(len, (0..len).filter(|_| rng.random::<f64>() < p))
}

pub fn random_input<R: Rng>(n: usize, max_d: usize, rng: &mut R) -> InputVector {
    let d = rng.random_range(0..=max_d.min(n - 1));
    InputVector::random(n, d, rng).unwrap()
}

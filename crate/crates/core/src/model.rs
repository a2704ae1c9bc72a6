//! Domain types: the pooling matrix, the sparse input, result vectors and the
//! binary symmetric channel that corrupts them.

use std::fmt::Write as _;

use rand::Rng;

use crate::bits::{self, bernoulli_indices, words_for, BitVector, WORD_BITS};
use crate::error::{check_noise, Error, Result};

/// Outcomes of the `T` tests, noiseless or observed.
pub type ResultVector = BitVector;

/// The decoder's declared defective set, one bit per item.
pub type EstimateVector = BitVector;

/// A `T x n` binary pooling design.
///
/// Bits are stored twice, packed row-major and column-major, so row-centric
/// decoders (CBP) and column-centric decoders (COMP, NCOMP) both read
/// contiguous words. Both layouts are built at construction and never change.
#[derive(Clone, PartialEq, Eq)]
pub struct TestMatrix {
    rows: usize,
    cols: usize,
    row_stride: usize,
    col_stride: usize,
    row_words: Vec<u64>,
    col_words: Vec<u64>,
}

impl TestMatrix {
    /// Builds a matrix from the set bits of each row.
    pub fn from_row_indices<I, R>(cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = usize>,
    {
        let row_stride = words_for(cols);
        let mut row_words = Vec::new();
        let mut nrows = 0;
        for row in rows {
            let start = row_words.len();
            row_words.resize(start + row_stride, 0);
            for j in row {
                if j >= cols {
                    return Err(Error::DimensionMismatch(format!(
                        "column index {j} out of range for {cols} columns"
                    )));
                }
                row_words[start + j / WORD_BITS] |= 1 << (j % WORD_BITS);
            }
            nrows += 1;
        }
        Self::from_row_words(nrows, cols, row_words)
    }

    pub fn from_rows(rows: &[BitVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVector::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].len()
            )));
        }
        let row_words = rows.iter().flat_map(|r| r.words().iter().copied()).collect();
        Self::from_row_words(rows.len(), cols, row_words)
    }

    /// Convenience constructor from nested 0/1 slices, mostly for fixtures.
    pub fn from_dense(rows: &[&[u8]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            if let Some(&v) = r.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidParameter(format!("matrix entry {v} is not binary")));
            }
            out.push(BitVector::from_indices(
                cols,
                r.iter().enumerate().filter(|(_, &v)| v == 1).map(|(j, _)| j),
            ));
        }
        Self::from_rows(&out)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_row_indices(n, (0..n).map(|i| [i]))
            .expect("identity of size 0 is not a valid matrix")
    }

    pub(crate) fn from_row_words(rows: usize, cols: usize, row_words: Vec<u64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        let row_stride = words_for(cols);
        debug_assert_eq!(row_words.len(), rows * row_stride);
        let col_stride = words_for(rows);
        let mut col_words = vec![0u64; cols * col_stride];
        for i in 0..rows {
            let row = &row_words[i * row_stride..(i + 1) * row_stride];
            for j in bits::iter_ones(row) {
                col_words[j * col_stride + i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Ok(Self {
            rows,
            cols,
            row_stride,
            col_stride,
            row_words,
            col_words,
        })
    }

    /// Number of tests `T`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of items `n`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)` read from the row-major layout.
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.row_words[i * self.row_stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    /// Entry `(i, j)` read from the column-major layout.
    pub fn get_by_col(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.col_words[j * self.col_stride + i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.row_words[i * self.row_stride..(i + 1) * self.row_stride]
    }

    pub fn col_words(&self, j: usize) -> &[u64] {
        &self.col_words[j * self.col_stride..(j + 1) * self.col_stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn col(&self, j: usize) -> BitVector {
        BitVector::from_words(self.rows, self.col_words(j).to_vec())
    }

    pub fn col_weight(&self, j: usize) -> usize {
        self.col_words(j).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_ones(&self) -> usize {
        self.row_words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Renders the `T n` header followed by one `0`/`1` line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1) + 16);
        writeln!(out, "{} {}", self.rows, self.cols).unwrap();
        for i in 0..self.rows {
            let row = self.row_words(i);
            for j in 0..self.cols {
                out.push(if (row[j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format produced by [`TestMatrix::to_text`]. Errors carry
    /// the 1-based line number of the offending line.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing \"T n\" header"))?;
        let mut fields = header.split(' ');
        let (rows, cols) = match (fields.next(), fields.next(), fields.next()) {
            (Some(t), Some(n), None) => {
                let t: usize = t
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad test count {t:?}")))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad item count {n:?}")))?;
                (t, n)
            }
            _ => return Err(Error::parse(1, format!("expected \"T n\", got {header:?}"))),
        };
        if rows == 0 || cols == 0 {
            return Err(Error::parse(1, "T and n must both be at least 1"));
        }
        let mut parsed = Vec::with_capacity(rows);
        for expected in 0..rows {
            let (lineno, line) = lines.next().ok_or_else(|| {
                Error::parse(
                    expected + 2,
                    format!("truncated matrix: expected {rows} rows, found {expected}"),
                )
            })?;
            parsed.push(parse_bits(line, cols, lineno)?);
        }
        if let Some((lineno, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(Error::parse(
                lineno,
                format!("unexpected trailing content {extra:?} after {rows} rows"),
            ));
        }
        Self::from_rows(&parsed)
    }
}

impl std::fmt::Debug for TestMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TestMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 1024 {
            for i in 0..self.rows {
                write!(f, "\n  {}", self.row(i))?;
            }
        }
        Ok(())
    }
}

fn parse_bits(line: &str, expected_len: usize, lineno: usize) -> Result<BitVector> {
    if line.len() != expected_len {
        return Err(Error::parse(
            lineno,
            format!("expected {expected_len} characters, found {}: {line:?}", line.len()),
        ));
    }
    let mut v = BitVector::zeros(expected_len);
    for (j, c) in line.bytes().enumerate() {
        match c {
            b'0' => {}
            b'1' => v.set(j, true),
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("invalid character {:?} at column {}", other as char, j + 1),
                ))
            }
        }
    }
    Ok(v)
}

/// Parses a single line of `0`/`1` characters.
pub fn parse_vector(text: &str) -> Result<BitVector> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let (_, line) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty vector file"))?;
    if line.is_empty() {
        return Err(Error::parse(1, "empty vector"));
    }
    if let Some((lineno, extra)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(lineno, format!("unexpected trailing content {extra:?}")));
    }
    parse_bits(line, line.len(), 1)
}

/// The hidden `d`-sparse input: which of the `n` items are defective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputVector {
    bits: BitVector,
    support: Vec<usize>,
}

impl InputVector {
    pub fn new(n: usize, support: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut support: Vec<usize> = support.into_iter().collect();
        support.sort_unstable();
        support.dedup();
        if let Some(&j) = support.iter().find(|&&j| j >= n) {
            return Err(Error::DimensionMismatch(format!("defective index {j} out of range for n = {n}")));
        }
        if n > 0 && support.len() >= n {
            return Err(Error::InvalidInstance(format!(
                "support size {} must be smaller than n = {n}",
                support.len()
            )));
        }
        Ok(Self {
            bits: BitVector::from_indices(n, support.iter().copied()),
            support,
        })
    }

    /// Draws a support uniformly among all `d`-subsets of `0..n`.
    pub fn random<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Self> {
        if d >= n {
            return Err(Error::InvalidInstance(format!("d = {d} must be smaller than n = {n}")));
        }
        Self::new(n, rand::seq::index::sample(rng, n, d).into_iter())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of defectives `d`.
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    /// Sorted defective indices.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }
}

/// Binary symmetric channel: each outcome flips independently with
/// probability `q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseChannel {
    q: f64,
}

impl NoiseChannel {
    /// Rejects `q >= 0.5`: every bound has a pole there.
    pub fn new(q: f64) -> Result<Self> {
        check_noise(q)?;
        Ok(Self { q })
    }

    pub fn noiseless() -> Self {
        Self { q: 0.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Samples a noise vector of length `len`.
    pub fn sample_noise<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> BitVector {
        let mut words = vec![0u64; words_for(len)];
        bernoulli_indices(len, self.q, rng, |i| words[i / WORD_BITS] |= 1 << (i % WORD_BITS));
        BitVector::from_words(len, words)
    }
}

/// The noiseless outcome `y`: test `i` is positive iff it pools at least one
/// defective.
pub fn noiseless_outcome(matrix: &TestMatrix, x: &InputVector) -> Result<ResultVector> {
    if matrix.cols() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns but input has length {}",
            matrix.cols(),
            x.len()
        )));
    }
    let mut y = BitVector::zeros(matrix.rows());
    for &j in x.support() {
        y.or_assign_words(matrix.col_words(j));
    }
    Ok(y)
}

/// Passes `y` through the channel, returning `(y_hat, noise)` with
/// `noise = y XOR y_hat`.
pub fn apply_noise<R: Rng + ?Sized>(
    y: &ResultVector,
    channel: &NoiseChannel,
    rng: &mut R,
) -> (ResultVector, ResultVector) {
    let noise = channel.sample_noise(y.len(), rng);
    (y.xor(&noise), noise)
}

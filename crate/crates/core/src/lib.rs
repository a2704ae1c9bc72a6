//! Non-adaptive probabilistic group testing.
//!
//! Four decoders are provided: CBP and COMP for noiseless tests, and their
//! noisy counterparts NCBP (repeated tests with majority vote) and NCOMP
//! (column matching with a relaxed threshold). Alongside them live the
//! random pooling designs with their closed-form parameter choices, the
//! information-theoretic lower bounds, and a reproducible Monte Carlo
//! harness.
//!
//! ```
//! use grouptest::{decode, design, model};
//! use rand::SeedableRng;
//!
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let params = design::comp_params(500, 5, 1.0).unwrap();
//! let matrix = params.sample_matrix(500, &mut rng).unwrap();
//! let x = model::InputVector::random(500, 5, &mut rng).unwrap();
//! let y = model::noiseless_outcome(&matrix, &x).unwrap();
//! let report = decode::decode_comp(&matrix, &y).unwrap();
//! // COMP never misses a defective
//! assert!(x.support().iter().all(|&j| report.estimate.get(j)));
//! ```

mod bits;
pub mod bounds;
pub mod cli;
pub mod decode;
pub mod design;
pub mod error;
pub mod model;
pub mod sim;

pub use bits::BitVector;
pub use design::{Algorithm, DesignParams};
pub use error::{Error, Result};
pub use model::{EstimateVector, InputVector, NoiseChannel, ResultVector, TestMatrix};

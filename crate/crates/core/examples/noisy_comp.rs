// Noisy COMP: outcomes pass through a binary symmetric channel and each
// item is scored by how many of its tests came back positive.

use grouptest::decode::decode_ncomp;
use grouptest::design;
use grouptest::model::{apply_noise, noiseless_outcome};
use grouptest::{InputVector, NoiseChannel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (n, d, q) = (200, 4, 0.05);
    let params = design::ncomp_params(n, d, 1.0, q)?;
    let (p, slack) = (params.inclusion_probability.unwrap(), params.threshold_slack.unwrap());
    println!("T={} p={p} Delta={slack:.3} beta={:.3}", params.tests, params.beta);

    let m = design::bernoulli_matrix(n, params.tests, p, &mut rng)?;
    let x = InputVector::random(n, d, &mut rng)?;
    let (observed, flips) = apply_noise(&noiseless_outcome(&m, &x)?, &NoiseChannel::new(q)?, &mut rng);
    let est = decode_ncomp(&m, &observed, q, slack)?.estimate;
    println!("{} of {} outcomes flipped", flips.count_ones(), params.tests);
    println!("truth    {:?}", x.support());
    println!("estimate {:?}", est.iter_ones().collect::<Vec<_>>());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Noisy CBP: every test is run K times and a majority vote recovers each
// outcome before the noiseless decoder runs.

use grouptest::decode::{decode_ncbp, majority_vote};
use grouptest::design;
use grouptest::model::{apply_noise, noiseless_outcome};
use grouptest::{InputVector, NoiseChannel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (n, d, q) = (200, 4, 0.1);
    let params = design::ncbp_params(n, d, 1.0, q)?;
    let k = params.repetitions.unwrap();
    println!("g={} K={k} base_T={} T={}", params.group_size.unwrap(), params.base_tests(), params.tests);

    let base = design::cbp_matrix(n, params.base_tests(), params.group_size.unwrap(), &mut rng)?;
    let expanded = design::ncbp_matrix(&base, k)?;
    let x = InputVector::random(n, d, &mut rng)?;
    let truth = noiseless_outcome(&base, &x)?;
    let (observed, _) = apply_noise(&noiseless_outcome(&expanded, &x)?, &NoiseChannel::new(q)?, &mut rng);

    let voted = majority_vote(&observed, k)?;
    println!("vote errors: {}", voted.xor(&truth).count_ones());
    let est = decode_ncbp(&base, &observed, k)?.estimate;
    println!("truth    {:?}", x.support());
    println!("estimate {:?}", est.iter_ones().collect::<Vec<_>>());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

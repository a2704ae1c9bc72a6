// Draws a CBP and a COMP design, hides three defectives, and decodes them.

use grouptest::decode::{decode_cbp, decode_comp};
use grouptest::design;
use grouptest::model::noiseless_outcome;
use grouptest::InputVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (n, d) = (200, 3);
    let x = InputVector::new(n, vec![17, 88, 150])?;

    let cbp = design::cbp_params(n, d, 1.0)?;
    let m = design::cbp_matrix(n, cbp.tests, cbp.group_size.unwrap(), &mut rng)?;
    let est = decode_cbp(&m, &noiseless_outcome(&m, &x)?)?.estimate;
    println!("cbp  T={} found {:?}", cbp.tests, est.iter_ones().collect::<Vec<_>>());
    assert_eq!(&est, x.bits());

    let comp = design::comp_params(n, d, 1.0)?;
    let m = design::bernoulli_matrix(n, comp.tests, comp.inclusion_probability.unwrap(), &mut rng)?;
    let est = decode_comp(&m, &noiseless_outcome(&m, &x)?)?.estimate;
    println!("comp T={} found {:?}", comp.tests, est.iter_ones().collect::<Vec<_>>());
    assert_eq!(&est, x.bits());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

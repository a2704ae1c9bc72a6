// A small success-rate sweep written as CSV.

use grouptest::design::Algorithm;
use grouptest::sim::{self, ExperimentSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut spec = ExperimentSpec::new(Algorithm::Ncomp, 100, 2);
    spec.noise = vec![0.0, 0.05];
    spec.tests = sim::parse_test_counts("20:120:20")?;
    spec.trials = 200;
    spec.seed = 1;
    let reports = sim::run_sweep(&spec)?;
    print!("{}", sim::to_csv(&reports));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Prints the designed parameters of every algorithm for one instance.

use grouptest::design::{self, Algorithm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, d, delta, q) = (1000, 10, 1.0, 0.05);
    for algo in Algorithm::ALL {
        let params = design::design(algo, n, d, delta, if algo.is_noisy() { q } else { 0.0 })?;
        let line: Vec<String> = params.summary().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("{}", line.join(" "));
    }
    assert_eq!(design::comp_params(n, d, delta)?.tests, 376);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

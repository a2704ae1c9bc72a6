// Lower bounds next to each algorithm's test count over a few noise levels.

use grouptest::bounds;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, d) = (1000, 10);
    let eps = 1.0 / n as f64;
    println!("{:>5} {:>9} {:>6} {:>6} {:>7} {:>7}", "q", "lower", "cbp", "comp", "ncbp", "ncomp");
    for q in [0.0, 0.01, 0.05, 0.1, 0.2] {
        let r = bounds::bound_report(n, d, eps, 1.0, Some(q))?;
        let show = |v: Option<usize>| v.map_or("-".to_string(), |t| t.to_string());
        println!(
            "{q:>5} {:>9.1} {:>6} {:>6} {:>7} {:>7}",
            r.lower_noisy.unwrap(),
            r.upper_cbp,
            r.upper_comp,
            show(r.upper_ncbp),
            show(r.upper_ncomp),
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

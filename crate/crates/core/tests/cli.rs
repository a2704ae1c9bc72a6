use std::fs;
use std::path::Path;

use grouptest::cli::{self, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("grouptest").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn value<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key}= in {stdout:?}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn design_comp_reports_the_parameters() {
    let o = run(&["design", "--algo", "comp", "--n", "1000", "--d", "10"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(value(&o.stdout, "algorithm"), "comp");
    assert_eq!(value(&o.stdout, "T"), "376");
    assert_eq!(value(&o.stdout, "p"), "0.1");
}

#[test]
fn design_cbp_and_ncomp() {
    let o = run(&["design", "--algo", "cbp", "--n", "1000", "--d", "10"]);
    assert_eq!(value(&o.stdout, "g"), "100");
    assert_eq!(value(&o.stdout, "T"), "752");

    let o = run(&["design", "--algo", "ncomp", "--n", "1000", "--d", "10", "--q", "0.1"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(value(&o.stdout, "T"), "3956");
    assert_eq!(value(&o.stdout, "p"), "0.05");
    assert_eq!(value(&o.stdout, "q"), "0.1");
    let beta: f64 = value(&o.stdout, "beta").parse().unwrap();
    assert!((beta - 39.6892).abs() < 1e-3, "{beta}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["design", "--algo", "comp", "--d", "10"]).code, EXIT_USAGE);
    assert_eq!(run(&["design", "--algo", "bogus", "--n", "10", "--d", "1"]).code, EXIT_USAGE);
    assert_eq!(run(&["design", "--algo", "ncomp", "--n", "100", "--d", "2"]).code, EXIT_USAGE);
    assert_eq!(run(&["bounds", "--n", "100", "--d", "2"]).code, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["simulate", "--algo", "comp", "--n", "10", "--d", "2"]).code, EXIT_USAGE);
}

#[test]
fn help_exits_0() {
    let o = run(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("simulate"));
}

#[test]
fn domain_errors_exit_1() {
    let o = run(&["design", "--algo", "ncomp", "--n", "100", "--d", "2", "--q", "0"]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.to_lowercase().contains("use comp"), "{}", o.stderr);
    assert_eq!(run(&["design", "--algo", "comp", "--n", "10", "--d", "10"]).code, EXIT_DOMAIN);
    assert_eq!(
        run(&["design", "--algo", "ncbp", "--n", "100", "--d", "2", "--q", "0.5"]).code,
        EXIT_DOMAIN
    );
}

#[test]
fn decode_identity_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "3 3\n100\n010\n001\n");
    let y = write(dir.path(), "y.txt", "010\n");
    for algo in ["cbp", "comp"] {
        let o = run(&["decode", "--algo", algo, "--matrix", &m, "--results", &y]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), "010");
    }
}

#[test]
fn decode_ncomp_threshold() {
    let dir = tempfile::tempdir().unwrap();
    // column 0 is in four tests, two of them positive
    let m = write(dir.path(), "m.txt", "4 2\n10\n10\n10\n11\n");
    let y = write(dir.path(), "y.txt", "1100\n");
    let args = |delta: &'static str| {
        run(&["decode", "--algo", "ncomp", "--matrix", &m, "--results", &y, "--q", "0.25", "--Delta", delta])
    };
    // threshold 4 * (1 - 0.25 * 2) = 2 -> defective
    assert_eq!(args("1").stdout.trim(), "10");
    // threshold 4 * (1 - 0.25 * 1.5) = 2.5 -> not
    assert_eq!(args("0.5").stdout.trim(), "00");
}

#[test]
fn decode_reports_never_tested_items() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "2 3\n100\n100\n");
    let y = write(dir.path(), "y.txt", "00\n");
    let o = run(&["decode", "--algo", "comp", "--matrix", &m, "--results", &y]);
    assert_eq!(o.stdout.trim(), "000");
    assert!(o.stderr.contains("1,2"), "{}", o.stderr);
    let o = run(&["decode", "--algo", "cbp", "--matrix", &m, "--results", &y]);
    assert_eq!(o.stdout.trim(), "011");
}

#[test]
fn malformed_matrix_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "3 2\n10\n01\n");
    let y = write(dir.path(), "y.txt", "101\n");
    let o = run(&["decode", "--algo", "comp", "--matrix", &m, "--results", &y]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("line 4"), "{}", o.stderr);

    let m = write(dir.path(), "bad.txt", "2 2\n10\n0x\n");
    let o = run(&["decode", "--algo", "comp", "--matrix", &m, "--results", &y]);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);

    let missing = dir.path().join("nope.txt");
    let o = run(&["decode", "--algo", "comp", "--matrix", missing.to_str().unwrap(), "--results", &y]);
    assert_eq!(o.code, EXIT_DOMAIN);
}

#[test]
fn design_then_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    let o = run(&[
        "design", "--algo", "comp", "--n", "20", "--d", "2", "--T", "40", "--seed", "3", "--out",
        m.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(value(&o.stdout, "matrix"), m.to_str().unwrap());
    let matrix = grouptest::TestMatrix::parse_text(&fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (40, 20));

    let x = grouptest::InputVector::new(20, vec![7]).unwrap();
    let y = grouptest::model::noiseless_outcome(&matrix, &x).unwrap();
    let yp = write(dir.path(), "y.txt", &format!("{y}\n"));
    let o = run(&["decode", "--algo", "comp", "--matrix", m.to_str().unwrap(), "--results", &yp]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    // with 40 tests at p = 1/2 every other item shows up in a negative test
    assert_eq!(o.stdout.trim(), "00000001000000000000");
}

#[test]
fn ncbp_decode_accepts_expanded_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    let o = run(&[
        "design", "--algo", "ncbp", "--n", "16", "--d", "1", "--q", "0.1", "--K", "3", "--out",
        m.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let matrix = grouptest::TestMatrix::parse_text(&fs::read_to_string(&m).unwrap()).unwrap();
    let x = grouptest::InputVector::new(16, vec![5]).unwrap();
    let y = grouptest::model::noiseless_outcome(&matrix, &x).unwrap();
    let yp = write(dir.path(), "y.txt", &format!("{y}\n"));
    let base = ["decode", "--algo", "ncbp", "--matrix", m.to_str().unwrap(), "--results", &yp];
    assert_eq!(run(&base).code, EXIT_USAGE);
    let o = run(&[&base[..], &["--K", "3"]].concat());
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(&o.stdout.trim()[5..6], "1");
    assert_eq!(run(&[&base[..], &["--K", "2"]].concat()).code, EXIT_DOMAIN);
}

#[test]
fn simulate_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.cfg", "algo=comp\nn=100\nd=2\nT=20,60\ntrials=50\nseed=5\n");
    let o = run(&["simulate", "--config", &cfg, "--trials", "30"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stderr.contains("note: flag trials=30 overrides config value 50"), "{}", o.stderr);
    let rows: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("comp,100,2,0,20,30,"), "{}", rows[1]);
    assert!(rows[2].ends_with(",5"));
}

#[test]
fn simulate_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let args = [
        "simulate", "--algo", "comp", "--n", "100", "--d", "2", "--T", "20:100:40", "--trials", "200",
        "--out", out.to_str().unwrap(),
    ];
    let o = run(&args);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4);

    let unwritable = dir.path().join("missing-dir").join("r.csv");
    let mut bad = args;
    bad[12] = unwritable.to_str().unwrap();
    let o = run(&bad);
    assert_eq!(o.code, EXIT_DOMAIN);
    assert!(o.stderr.contains("missing-dir"), "{}", o.stderr);
}

#[test]
fn simulate_rejects_unknown_config_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sweep.cfg", "algo=comp\nn=100\nd=2\nT=20\nbogus=1\n");
    assert_eq!(run(&["simulate", "--config", &cfg]).code, EXIT_DOMAIN);
}

#[test]
fn bounds_report() {
    let o = run(&["bounds", "--n", "1024", "--d", "1", "--eps", "0"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(value(&o.stdout, "lower_noiseless"), "10");
    assert_eq!(value(&o.stdout, "lower_noisy"), "n/a (no --q given)");
    assert_eq!(value(&o.stdout, "upper_ncomp"), "n/a (no --q given)");

    let o = run(&["bounds", "--n", "1024", "--d", "1", "--eps", "0", "--q", "0.11"]);
    let noisy: f64 = value(&o.stdout, "lower_noisy").parse().unwrap();
    assert!((noisy - 19.997).abs() < 0.01, "{noisy}");
    assert!(value(&o.stdout, "upper_ncomp").parse::<f64>().is_ok());

    let o = run(&["bounds", "--n", "1024", "--d", "1", "--eps", "0", "--q", "0"]);
    assert_eq!(value(&o.stdout, "upper_ncomp"), "n/a (q = 0: use comp)");

    let o = run(&["bounds", "--n", "1024", "--d", "4", "--eps", "1"]);
    assert_eq!(value(&o.stdout, "lower_noiseless"), "0");

    let o = run(&["bounds", "--n", "1000", "--d", "10", "--delta", "1", "--q", "0.1"]);
    assert_eq!(value(&o.stdout, "eps"), "0.001");
    assert_eq!(value(&o.stdout, "upper_comp"), "376");
}

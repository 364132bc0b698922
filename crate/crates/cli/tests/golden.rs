//! Reports compared byte for byte against files in `tests/golden`.
//! Set `QHOPF_UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn spec(name: &str) -> String {
    root().join("../../specs").join(name).display().to_string()
}

fn check(name: &str, args: &[&str], code: i32) {
    let mut full = vec!["qhopf".to_string()];
    full.extend(args.iter().map(|a| a.to_string()));
    let out = qhopf_cli::run(&full);
    assert_eq!(out.code, code, "{name}: {}{}", out.stdout, out.stderr);
    assert!(out.stderr.is_empty(), "{name}: {}", out.stderr);
    let path = root().join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("QHOPF_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(out.stdout, expected, "{name}");
    let again = qhopf_cli::run(&full);
    assert_eq!(again, out, "{name} is not deterministic");
}

#[test]
fn verify_reports() {
    check("verify_alpha_phi_p3", &["verify", &spec("alpha_phi_p3.spec")], 0);
    check("verify_z2_r_epsilon", &["verify", &spec("z2_r_epsilon.spec")], 0);
    check("verify_dual_numbers_p2", &["verify", &spec("dual_numbers_p2.spec")], 0);
    check("verify_skew_r_p3", &["verify", &spec("skew_r_p3.spec")], 0);
}

#[test]
fn cohomology_reports() {
    check(
        "cohomology_alpha_product_h3",
        &["cohomology", &spec("alpha_product_3x3.spec"), "--degree", "3"],
        0,
    );
    check(
        "cohomology_alpha3_h123",
        &["cohomology", &spec("alpha3.spec"), "--degree", "1", "--degree", "2", "--degree", "3"],
        0,
    );
    check(
        "cohomology_cyclic3_brute",
        &["cohomology", &spec("cyclic3.spec"), "--degree", "2", "--coeff", "mult-brute"],
        0,
    );
}

#[test]
fn trivialize_reports() {
    check("trivialize_alpha_phi_p3", &["trivialize", &spec("alpha_phi_p3.spec")], 1);
    check("trivialize_alpha3", &["trivialize", &spec("alpha3.spec")], 0);
    check(
        "trivialize_skew_r_p3",
        &["trivialize", &spec("skew_r_p3.spec"), "--target", "rmatrix"],
        0,
    );
}

#[test]
fn associator_reports() {
    check("associator_p3", &["associator", "--p", "3", "--s", "1"], 0);
    check("associator_p5_mu2", &["associator", "--p", "5", "--s", "1", "--mu", "2"], 0);
}

#[test]
fn demo_reports() {
    for name in [
        "nontrivial-associator",
        "exp-degree-one",
        "h3-basis",
        "skew-twist",
        "trichotomy",
        "graded",
    ] {
        check(&format!("demo_{}", name.replace('-', "_")), &["demo", name], 0);
    }
}

#[test]
fn demo_reports_its_seed() {
    let out = qhopf_cli::run(["qhopf", "demo", "skew-twist", "--seed", "7", "--trials", "12"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("demo.seed=7\n"));
    assert!(out.stdout.contains("demo.trials=12\n"));
}

use std::process::{Command, Output};

fn finprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finprop"))
        .args(args)
        .env_remove("FINPROP_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn evaluates_the_coproduct_on_an_interval_point() {
    let out = finprop(&["eval", "--d", "1", "--term", "delta", "--point", "1/4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(0), (1/2)");
}

#[test]
fn normal_forms_are_stable_under_reparsing() {
    for term in ["delta ; (delta | id) ; (mu(1/2) | id)", "mu(1/3) ; delta", "(delta | delta) ; (id | swap | id) ; (mu(1/4) | mu(2/3))"] {
        let first = finprop(&["normalize", term]);
        assert!(first.status.success(), "{term}");
        let form = stdout(&first);
        let again = finprop(&["normalize", &form]);
        assert_eq!(stdout(&again), form);
        let json = finprop(&["--format", "json", "normalize", term]);
        assert!(serde_json::from_slice::<serde_json::Value>(&json.stdout).is_ok());
    }
}

#[test]
fn ill_typed_terms_exit_with_code_one() {
    let out = finprop(&["normalize", "delta ; (mu(1/2) | id)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot compose"));
    assert_eq!(finprop(&["parse", "mu(1/2"]).status.code(), Some(1));
}

#[test]
fn first_square_is_nonzero_on_the_projective_plane() {
    let out = finprop(&["sq", "-k", "1", "--complex", &data("rp2.sc"), "--cocycle", &data("gen1.cc")]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("degree 2, nonzero in cohomology"));
}

#[test]
fn coproduct_surface_is_a_pair_of_pants() {
    let out = finprop(&["surface", "delta"]);
    assert!(stdout(&out).contains("genus 0, 3 boundary circles"));
    let dot = finprop(&["--format", "dot", "surface", "delta"]);
    assert!(stdout(&dot).starts_with("graph") || stdout(&dot).starts_with("digraph"));
}

#[test]
fn verification_is_reproducible() {
    let args = ["verify", "--seed", "7", "--criteria", "2,9"];
    let (a, b) = (finprop(&args), finprop(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("2 of 2 criteria passed"));
}

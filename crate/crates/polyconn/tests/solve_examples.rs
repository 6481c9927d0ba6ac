//! Certified solves of the benchmark polynomials: routing-point and
//! singular-point counts must come out exactly.

mod common;

use polyconn::solve::{solve_critical, SolveConfig};
use polyconn::RoutingFunction;

fn run_example(which: usize) {
    let f = common::ex_poly(which);
    let n = f.nvars();
    let rf = RoutingFunction::new(f, vec![0; n]).unwrap();
    let report = solve_critical(&rf, &SolveConfig::default())
        .unwrap_or_else(|e| panic!("example {} failed to solve: {}", which, e));
    let (want_roots, want_singular) = common::ex_expected_counts(which);
    assert_eq!(
        report.roots.len(),
        want_roots,
        "example {}: routing point count",
        which
    );
    assert_eq!(
        report.singulars.len(),
        want_singular,
        "example {}: singular point count",
        which
    );
    // Morse-theoretic sanity: a bounded-below smooth function with finitely
    // many critical points has at least one local maximum per component,
    // and every index is in 0..=n; detailed index checks live downstream.
    assert!(report.roots.iter().all(|r| r.g_value > 0.0));
}

#[test]
fn example_one_counts() {
    run_example(1);
}

#[test]
fn example_two_counts() {
    run_example(2);
}

#[test]
fn example_three_counts() {
    run_example(3);
}

#[test]
fn example_four_counts() {
    run_example(4);
}

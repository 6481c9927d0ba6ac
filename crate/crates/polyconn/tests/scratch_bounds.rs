//! Temporary: measure PRS elimination bounds for the benchmark systems.

mod common;

use polyconn::gcd::elimination_bound;
use polyconn::RoutingFunction;

#[test]
fn measure_prs_bounds() {
    for which in [1usize, 2] {
        let f = common::ex_poly(which);
        let n = f.nvars();
        let rf = RoutingFunction::new(f, vec![0; n]).unwrap();
        let q = rf.critical_system();
        let t0 = std::time::Instant::now();
        let b1 = elimination_bound(&q[0], &q[1], 1, 2);
        let b2 = elimination_bound(&q[0], &q[1], 2, 1);
        eprintln!(
            "example {}: b1 = {:?}, b2 = {:?}  ({:?})",
            which,
            b1,
            b2,
            t0.elapsed()
        );
    }
}

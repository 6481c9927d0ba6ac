//! Temporary: probe isolation cost for example 2.

mod common;

use polyconn::interval::{Box_, Interval};
use polyconn::solve::{solve_critical, SolveConfig};
use polyconn::RoutingFunction;

#[test]
fn probe_example_two_isolation() {
    let f = common::ex_poly(2);
    let rf = RoutingFunction::new(f, vec![0, 0]).unwrap();
    let mut cfg = SolveConfig::default();
    cfg.region_override = Some(Box_::new(vec![
        Interval::new(-6.0, 6.0),
        Interval::new(-6.0, 6.0),
    ]));
    cfg.max_boxes = 30_000_000;
    let t0 = std::time::Instant::now();
    match solve_critical(&rf, &cfg) {
        Ok(rep) => eprintln!(
            "tight region: roots={} singulars={} boxes={} ({:?})",
            rep.roots.len(),
            rep.singulars.len(),
            rep.boxes_processed,
            t0.elapsed()
        ),
        Err(e) => eprintln!("tight region FAILED after {:?}: {}", t0.elapsed(), e),
    }
}

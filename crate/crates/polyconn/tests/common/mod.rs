//! Shared fixtures for integration tests: the worked example plus four
//! benchmark polynomials, with their expected solver outcomes.

#![allow(dead_code)]

use polyconn::poly::parse_poly;
use polyconn::{MultiPoly, RoutingFunction};

/// Quartic with two nested components: `f = (x1^2 + x2^2)(x1^2 + x2^2 - 2)`
/// expanded. `{f != 0}` has a punctured-disk component and an unbounded
/// component.
pub const TOY_F: &str = "-2*x1^2 + x1^4 - 2*x2^2 + 2*x1^2*x2^2 + x2^4";

/// Degree-10 bivariate with 21 routing points for the origin-centered
/// weight.
pub const EX1_F: &str = "1280000*x1^10 + 2560000*x1^8*x2^2 - 2016000*x1^8 \
    + 1280000*x1^7*x2 + 1280000*x1^6*x2^4 - 2336000*x1^6*x2^2 + 793800*x1^6 \
    - 1280000*x1^5*x2 - 1280000*x1^4*x2^4 + 1056000*x1^4*x2^2 - 59080*x1^4 \
    + 2560000*x1^2*x2^4 - 738560*x1^2*x2^2 + 736*x1^2 + 1280000*x1*x2^3 \
    - 1280*x1*x2 + 1280000*x2^6 + 222720*x2^4 + 57576*x2^2 - 45";

/// Degree-16 bivariate (two interlocking degree-8 curves) with 47 routing
/// points and 12 singular points.
pub const EX2_F: &str = "4096*x1^16 - 16384*x1^14 + 26624*x1^12 - 22528*x1^10 \
    - 1024*x1^8*x2^4 + 1024*x1^8*x2^2 + 10496*x1^8 + 2048*x1^6*x2^4 \
    - 2048*x1^6*x2^2 - 2560*x1^6 - 1280*x1^4*x2^4 + 1280*x1^4*x2^2 + 256*x1^4 \
    + 256*x1^2*x2^4 - 256*x1^2*x2^2 - 4096*x2^16 + 16384*x2^14 - 26624*x2^12 \
    + 22528*x2^10 - 10560*x2^8 + 2688*x2^6 - 352*x2^4 + 32*x2^2 - 1";

/// Degree-6 trivariate with 16 routing points and 4 singular points.
pub const EX3_F: &str = "-31 - 16*x1^2 + 8*x1^4 + 4*x1^6 + 16*x2 + 16*x1^2*x2 \
    + 4*x1^4*x2 - 32*x2^2 + 8*x1^4*x2^2 + 16*x2^3 + 8*x1^2*x2^3 - 8*x2^4 \
    + 4*x1^2*x2^4 + 4*x2^5 + 96*x3^2 - 64*x1^2*x3^2 + 8*x1^4*x3^2 \
    - 48*x2*x3^2 + 8*x1^2*x2*x3^2 - 16*x2^2*x3^2 + 8*x1^2*x2^2*x3^2 \
    + 8*x2^3*x3^2 - 8*x3^4 + 4*x1^2*x3^4 + 4*x2*x3^4";

/// Degree-5 trivariate with 20 routing points.
pub const EX4_F: &str = "20*x1^4*x2 + 20*x1^2*x2*x3^2 - 60*x1^2*x2 + 20*x1^2 \
    - 20*x2*x3^2 + 40*x2 + 20*x3^2 - 41";

pub fn toy_poly() -> MultiPoly {
    parse_poly(TOY_F, 2).unwrap()
}

pub fn toy_routing() -> RoutingFunction {
    RoutingFunction::new(toy_poly(), vec![0, 1]).unwrap()
}

pub fn ex_poly(which: usize) -> MultiPoly {
    let (src, n) = match which {
        1 => (EX1_F, 2),
        2 => (EX2_F, 2),
        3 => (EX3_F, 3),
        4 => (EX4_F, 3),
        _ => panic!("examples are numbered 1..=4"),
    };
    parse_poly(src, n).unwrap()
}

/// Expected routing-point and singular-point counts at the origin center.
pub fn ex_expected_counts(which: usize) -> (usize, usize) {
    match which {
        1 => (21, 0),
        2 => (47, 12),
        3 => (16, 4),
        4 => (20, 0),
        _ => panic!("examples are numbered 1..=4"),
    }
}

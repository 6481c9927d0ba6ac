//! Temporary: exact values of f, Q, det JQ, det Hess f at the algebraic
//! diagonal point (-c, -c), c = cos(pi/8), minimal polynomial 8t^4-8t^2+1.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use polyconn::poly::MultiPoly;
use polyconn::RoutingFunction;

type QPoly = Vec<BigRational>;

fn minpoly() -> QPoly {
    // 8t^4 - 8t^2 + 1
    vec![
        BigRational::from_integer(BigInt::from(1)),
        BigRational::zero(),
        BigRational::from_integer(BigInt::from(-8)),
        BigRational::zero(),
        BigRational::from_integer(BigInt::from(8)),
    ]
}

/// p(x1, x2) at x1 = s1*t, x2 = s2*t as a univariate in t.
fn restrict_diag(p: &MultiPoly, s1: i64, s2: i64) -> QPoly {
    let mut out: QPoly = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exps();
        let (e1, e2) = (e[0] as usize, e[1] as usize);
        let deg = e1 + e2;
        if out.len() <= deg {
            out.resize(deg + 1, BigRational::zero());
        }
        let sign = s1.pow(e1 as u32) * s2.pow(e2 as u32);
        out[deg] += c * BigRational::from_integer(BigInt::from(sign));
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Remainder of a mod m (monic-scaled rational division).
fn poly_rem(a: &QPoly, m: &QPoly) -> QPoly {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let lead = m[dm].clone();
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let q = r.last().unwrap() / &lead;
        for (j, mc) in m.iter().enumerate() {
            let delta = &q * mc;
            r[j + k] -= delta;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mul_mod(a: &QPoly, b: &QPoly, m: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_rem(&out, m)
}

fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

fn show(label: &str, v: &QPoly) {
    if v.is_empty() {
        eprintln!("  {} = 0 exactly", label);
    } else {
        let approx: Vec<f64> = v
            .iter()
            .map(|c| {
                use num_traits::ToPrimitive;
                c.to_f64().unwrap_or(f64::NAN)
            })
            .collect();
        eprintln!("  {} != 0, residue coeffs ~ {:?}", label, approx);
    }
}

fn add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

/// p at (X, Y) where X, Y are ring elements of Q[t]/(m).
fn eval_at(p: &MultiPoly, xc: &QPoly, yc: &QPoly, m: &QPoly) -> QPoly {
    let maxd = p.total_degree().max(0) as usize;
    let one = vec![BigRational::one()];
    let mut xp: Vec<QPoly> = vec![one.clone()];
    for k in 1..=maxd {
        let prev = xp[k - 1].clone();
        xp.push(mul_mod(&prev, xc, m));
    }
    let mut yp: Vec<QPoly> = vec![one];
    for k in 1..=maxd {
        let prev = yp[k - 1].clone();
        yp.push(mul_mod(&prev, yc, m));
    }
    let mut acc: QPoly = Vec::new();
    for (mo, c) in p.terms() {
        let e = mo.exps();
        let term = mul_mod(&xp[e[0] as usize], &yp[e[1] as usize], m);
        let scaled: QPoly = term.iter().map(|v| v * c).collect();
        acc = add(&acc, &scaled);
    }
    poly_rem(&acc, m)
}

#[test]
fn circle_point_structure() {
    let f = common::ex_poly(2);
    let rf = RoutingFunction::new(f.clone(), vec![0, 0]).unwrap();
    let q = rf.critical_system();
    let m = minpoly();

    // In Q(c), c = cos(pi/8): s' = sin(pi/8) = (2c^2-1)/(2c), and
    // 1/c = 8c - 8c^3 from the minimal polynomial.
    let rat = |n: i64| BigRational::from_integer(BigInt::from(n));
    let t: QPoly = vec![rat(0), rat(1)];
    let inv_t: QPoly = vec![rat(0), rat(8), rat(0), rat(-8)];
    let two_t2_m1: QPoly = vec![rat(-1), rat(0), rat(2)];
    let half = vec![BigRational::new(BigInt::from(1), BigInt::from(2))];
    let sp = mul_mod(&mul_mod(&two_t2_m1, &inv_t, &m), &half, &m);
    let neg = |p: &QPoly| -> QPoly { p.iter().map(|c| -c).collect() };

    let cases: Vec<(&str, QPoly, QPoly)> = vec![
        ("(-c, -s')", neg(&t), neg(&sp)),
        ("(-s', -c)", neg(&sp), neg(&t)),
        ("(c, s')", t.clone(), sp.clone()),
        ("(c, -s')", t.clone(), neg(&sp)),
        ("(s', c)", sp.clone(), t.clone()),
        ("(s', -c)", sp.clone(), neg(&t)),
    ];
    for (tag, xc, yc) in &cases {
        eprintln!("at {}:", tag);
        show("f", &eval_at(&f, xc, yc, &m));
        show("df/dx1", &eval_at(&f.partial(1).unwrap(), xc, yc, &m));
        show("df/dx2", &eval_at(&f.partial(2).unwrap(), xc, yc, &m));
        show("Q1", &eval_at(&q[0], xc, yc, &m));
        show("Q2", &eval_at(&q[1], xc, yc, &m));
        let j11 = eval_at(&q[0].partial(1).unwrap(), xc, yc, &m);
        let j12 = eval_at(&q[0].partial(2).unwrap(), xc, yc, &m);
        let j21 = eval_at(&q[1].partial(1).unwrap(), xc, yc, &m);
        let j22 = eval_at(&q[1].partial(2).unwrap(), xc, yc, &m);
        show("det JQ", &sub(&mul_mod(&j11, &j22, &m), &mul_mod(&j12, &j21, &m)));
    }
}

#[test]
fn diagonal_point_structure() {
    let f = common::ex_poly(2);
    let rf = RoutingFunction::new(f.clone(), vec![0, 0]).unwrap();
    let q = rf.critical_system();
    let m = minpoly();

    for (s1, s2, tag) in [(-1i64, -1i64, "(-c,-c)"), (1, 1, "(+c,+c)"), (1, -1, "(+c,-c)")] {
        eprintln!("at {}:", tag);
        let fr = poly_rem(&restrict_diag(&f, s1, s2), &m);
        show("f", &fr);
        let f1 = poly_rem(&restrict_diag(&f.partial(1).unwrap(), s1, s2), &m);
        let f2 = poly_rem(&restrict_diag(&f.partial(2).unwrap(), s1, s2), &m);
        show("df/dx1", &f1);
        show("df/dx2", &f2);
        let q1 = poly_rem(&restrict_diag(&q[0], s1, s2), &m);
        let q2 = poly_rem(&restrict_diag(&q[1], s1, s2), &m);
        show("Q1", &q1);
        show("Q2", &q2);
        // det JQ = J11*J22 - J12*J21 in Q(c)
        let j11 = poly_rem(&restrict_diag(&q[0].partial(1).unwrap(), s1, s2), &m);
        let j12 = poly_rem(&restrict_diag(&q[0].partial(2).unwrap(), s1, s2), &m);
        let j21 = poly_rem(&restrict_diag(&q[1].partial(1).unwrap(), s1, s2), &m);
        let j22 = poly_rem(&restrict_diag(&q[1].partial(2).unwrap(), s1, s2), &m);
        let det = sub(&mul_mod(&j11, &j22, &m), &mul_mod(&j12, &j21, &m));
        show("det JQ", &det);
        // det Hess f
        let h11 = poly_rem(
            &restrict_diag(&f.partial(1).unwrap().partial(1).unwrap(), s1, s2),
            &m,
        );
        let h12 = poly_rem(
            &restrict_diag(&f.partial(1).unwrap().partial(2).unwrap(), s1, s2),
            &m,
        );
        let h22 = poly_rem(
            &restrict_diag(&f.partial(2).unwrap().partial(2).unwrap(), s1, s2),
            &m,
        );
        let deth = sub(&mul_mod(&h11, &h22, &m), &mul_mod(&h12, &h12, &m));
        show("det Hess f", &deth);
        let one = vec![BigRational::one()];
        let _ = one;
    }
}

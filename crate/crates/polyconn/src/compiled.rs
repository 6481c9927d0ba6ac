//! Compiled polynomial evaluation.
//!
//! [`crate::poly::MultiPoly`] stores exact rational coefficients in a
//! `BTreeMap`, which is the right shape for algebra but far too slow for
//! the inner loops of root isolation and trajectory tracing. A
//! [`CompiledPoly`] flattens the term list once — each coefficient both as
//! a nearest float and as a certified interval enclosure — and evaluates
//! with per-variable power tables, so one evaluation costs
//! `O(terms + total_degree)` multiplications.
//!
//! Interval evaluation uses parity-aware interval powers, so even powers
//! of sign-changing coordinates stay nonnegative (important for the tight
//! enclosures of `U = |x-c|^2 + 1` and `f^2`).

use crate::interval::{Box_, Interval};
use crate::poly::MultiPoly;
use crate::scalar::Real;
use crate::Result;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// One polynomial, flattened for evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    /// `(float coefficient, certified coefficient enclosure, exponents)`
    terms: Vec<(f64, Interval, Vec<u32>)>,
    /// Exact coefficients, parallel to `terms` (for the cancellation-proof
    /// evaluation path).
    exact: Vec<BigRational>,
    /// Per-variable maximum exponent (sizes the power tables).
    max_exp: Vec<u32>,
}

impl CompiledPoly {
    pub fn compile(p: &MultiPoly) -> CompiledPoly {
        let nvars = p.nvars();
        let mut terms = Vec::with_capacity(p.num_terms());
        let mut exact = Vec::with_capacity(p.num_terms());
        let mut max_exp = vec![0u32; nvars];
        for (m, c) in p.terms() {
            let enclosure = Interval::from_rational(c);
            let approx = enclosure.mid();
            let exps = m.exps().to_vec();
            for (v, &e) in exps.iter().enumerate() {
                max_exp[v] = max_exp[v].max(e);
            }
            terms.push((approx, enclosure, exps));
            exact.push(c.clone());
        }
        CompiledPoly {
            nvars,
            terms,
            exact,
            max_exp,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Float evaluation with power tables, generic over the scalar width.
    pub fn eval<R: Real>(&self, x: &[R]) -> R {
        debug_assert_eq!(x.len(), self.nvars);
        // Power tables: powers[v][e] = x[v]^e.
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(self.nvars);
        for (v, &xv) in x.iter().enumerate() {
            let top = self.max_exp[v] as usize;
            let mut tab = Vec::with_capacity(top + 1);
            tab.push(R::one());
            for e in 1..=top {
                let prev = tab[e - 1];
                tab.push(prev * xv);
            }
            powers.push(tab);
        }
        let mut acc = R::zero();
        for (c, _, exps) in &self.terms {
            let mut t = R::from_f64_lossy(*c);
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t * powers[v][e as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Certified interval evaluation over a box.
    pub fn eval_interval(&self, x: &Box_) -> Interval {
        debug_assert_eq!(x.dim(), self.nvars);
        let mut powers: Vec<Vec<Interval>> = Vec::with_capacity(self.nvars);
        for (v, xv) in x.coords.iter().enumerate() {
            let top = self.max_exp[v] as usize;
            let mut tab = Vec::with_capacity(top + 1);
            for e in 0..=top {
                tab.push(xv.powi(e as u32));
            }
            powers.push(tab);
        }
        let mut acc = Interval::zero();
        for (_, c, exps) in &self.terms {
            let mut t = *c;
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Interval evaluation at an exact point (zero-width box).
    pub fn eval_interval_point(&self, x: &[f64]) -> Interval {
        let coords = x.iter().map(|&v| Interval::point(v)).collect();
        self.eval_interval(&Box_::new(coords))
    }

    /// Exact rational evaluation at a float point, returned as a thin
    /// certified interval.
    ///
    /// Floats are dyadic rationals, so this is free of any rounding until
    /// the final conversion. It is the only reliable evaluation where the
    /// value sits many orders of magnitude below the individual terms —
    /// float or float-interval arithmetic returns pure cancellation noise
    /// there (e.g. terms of size 1e7 cancelling down to 1e-12).
    pub fn eval_exact_interval(&self, x: &[f64]) -> Interval {
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(self.nvars);
        for (v, &xv) in x.iter().enumerate() {
            let base = match BigRational::from_float(xv) {
                Some(r) => r,
                None => return Interval::new(f64::NEG_INFINITY, f64::INFINITY),
            };
            let top = self.max_exp[v] as usize;
            let mut tab = Vec::with_capacity(top + 1);
            tab.push(BigRational::one());
            for e in 1..=top {
                let prev = tab[e - 1].clone();
                tab.push(prev * &base);
            }
            powers.push(tab);
        }
        let mut acc = BigRational::zero();
        for ((_, _, exps), c) in self.terms.iter().zip(self.exact.iter()) {
            let mut t = c.clone();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            acc += t;
        }
        Interval::from_rational(&acc)
    }
}

/// A square polynomial map `F: R^n -> R^n` together with its Jacobian,
/// all compiled.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub n: usize,
    components: Vec<CompiledPoly>,
    /// `jac[i][j] = d F_i / d x_j`
    jacobian: Vec<Vec<CompiledPoly>>,
}

impl CompiledSystem {
    /// Compile `polys` (length = number of variables) and its exact
    /// Jacobian.
    pub fn compile(polys: &[MultiPoly]) -> Result<CompiledSystem> {
        let n = polys.len();
        let mut components = Vec::with_capacity(n);
        let mut jacobian = Vec::with_capacity(n);
        for p in polys {
            if p.nvars() != n {
                return Err(crate::Error::DimensionMismatch {
                    left: p.nvars(),
                    right: n,
                });
            }
            components.push(CompiledPoly::compile(p));
            let mut row = Vec::with_capacity(n);
            for j in 1..=n {
                row.push(CompiledPoly::compile(&p.partial(j)?));
            }
            jacobian.push(row);
        }
        Ok(CompiledSystem {
            n,
            components,
            jacobian,
        })
    }

    pub fn eval<R: Real>(&self, x: &[R]) -> Vec<R> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    /// Row-major `n x n` Jacobian values.
    pub fn eval_jacobian<R: Real>(&self, x: &[R]) -> Vec<R> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for row in &self.jacobian {
            for p in row {
                out.push(p.eval(x));
            }
        }
        out
    }

    pub fn eval_interval(&self, x: &Box_) -> Vec<Interval> {
        self.components.iter().map(|p| p.eval_interval(x)).collect()
    }

    pub fn eval_interval_point(&self, x: &[f64]) -> Vec<Interval> {
        self.components
            .iter()
            .map(|p| p.eval_interval_point(x))
            .collect()
    }

    /// `F(x)` as thin certified intervals, sharp even under catastrophic
    /// cancellation: components whose float enclosure straddles zero are
    /// re-evaluated exactly.
    pub fn eval_point_sharp(&self, x: &[f64]) -> Vec<Interval> {
        self.components
            .iter()
            .map(|p| {
                let iv = p.eval_interval_point(x);
                if iv.contains_zero() {
                    p.eval_exact_interval(x)
                } else {
                    iv
                }
            })
            .collect()
    }

    /// Row-major interval Jacobian over a box.
    pub fn eval_jacobian_interval(&self, x: &Box_) -> Vec<Interval> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for row in &self.jacobian {
            for p in row {
                out.push(p.eval_interval(x));
            }
        }
        out
    }

    pub fn component(&self, i: usize) -> &CompiledPoly {
        &self.components[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, RationalPoint};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn compiled_matches_exact_on_rationals() {
        let p = parse_poly(
            "-2*x1^2 + x1^4 - 2*x2^2 + 2*x1^2*x2^2 + x2^4",
            2,
        )
        .unwrap();
        let c = CompiledPoly::compile(&p);
        // At (19/5, -1/2) the exact value is 1864161/10000 = 186.4161.
        let pt = RationalPoint::parse("19/5,-1/2").unwrap();
        let exact = p.eval_exact(&pt).unwrap();
        let x = pt.to_f64_vec();
        let fx = c.eval(&x[..]);
        let want = BigRational::new(BigInt::from(1864161i64), BigInt::from(10000i64));
        assert_eq!(exact, want);
        assert!((fx - 186.4161).abs() < 1e-10);

        // Interval evaluation encloses the exact value.
        let iv = c.eval_interval_point(&x);
        assert!(
            BigRational::from_float(iv.lo).unwrap() <= exact
                && exact <= BigRational::from_float(iv.hi).unwrap()
        );
    }

    #[test]
    fn generic_widths_agree() {
        let p = parse_poly("x1^3 - 2*x1*x2 + 1/4", 2).unwrap();
        let c = CompiledPoly::compile(&p);
        let x64 = [1.5f64, -0.75];
        let x32 = [1.5f32, -0.75];
        let v64 = c.eval(&x64[..]);
        let v32 = c.eval(&x32[..]);
        assert!((v64 - v32 as f64).abs() < 1e-5);
    }

    #[test]
    fn system_jacobian_values() {
        // F = (x1^2 - x2, x1 x2): J = [[2x1, -1], [x2, x1]]
        let f1 = parse_poly("x1^2 - x2", 2).unwrap();
        let f2 = parse_poly("x1*x2", 2).unwrap();
        let sys = CompiledSystem::compile(&[f1, f2]).unwrap();
        let x = [3.0f64, 5.0];
        assert_eq!(sys.eval(&x[..]), vec![4.0, 15.0]);
        assert_eq!(sys.eval_jacobian(&x[..]), vec![6.0, -1.0, 5.0, 3.0]);
    }

    #[test]
    fn interval_eval_narrows_with_the_box() {
        // Expanded forms suffer interval dependency on wide boxes (e.g.
        // x2^2 - 2*x2 cannot see it is (x2-1)^2 - 1), but enclosures must
        // tighten linearly as the box shrinks.
        let u = parse_poly("x1^2 + (x2 - 1)^2 + 1", 2).unwrap();
        let c = CompiledPoly::compile(&u);
        let tight = c.eval_interval(&Box_::around(&[0.5, 0.5], 1e-8));
        // Exact value at (0.5, 0.5) is 1.5.
        assert!(tight.contains(1.5));
        assert!(tight.width() < 1e-6);
    }

    proptest! {
        // Interval evaluation over a box encloses the float evaluation at
        // sampled interior points.
        #[test]
        fn interval_encloses_samples(
            cx in -3.0f64..3.0, cy in -3.0f64..3.0,
            r in 0.0f64..0.5,
            tx in -1.0f64..=1.0, ty in -1.0f64..=1.0,
        ) {
            let p = parse_poly(
                "x1^4 + 2*x1^2*x2^2 + x2^4 - 2*x1^2 - 2*x2^2", 2,
            ).unwrap();
            let c = CompiledPoly::compile(&p);
            let b = Box_::around(&[cx, cy], r);
            let sample = [cx + tx * r, cy + ty * r];
            let sample = [
                sample[0].clamp(b.coords[0].lo, b.coords[0].hi),
                sample[1].clamp(b.coords[1].lo, b.coords[1].hi),
            ];
            let iv = c.eval_interval(&b);
            // Compare against an exact rational evaluation of the float
            // sample to avoid relying on float eval rounding.
            let pt = RationalPoint::new(vec![
                BigRational::from_float(sample[0]).unwrap(),
                BigRational::from_float(sample[1]).unwrap(),
            ]);
            let exact = p.eval_exact(&pt).unwrap();
            prop_assert!(BigRational::from_float(iv.lo).unwrap() <= exact);
            prop_assert!(exact <= BigRational::from_float(iv.hi).unwrap());
        }
    }
}

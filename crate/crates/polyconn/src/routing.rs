//! The routing function `g` and its critical system.
//!
//! For a polynomial `f` in `n` variables and a grid center `c`, define
//!
//! ```text
//!     U = (x1-c1)^2 + ... + (xn-cn)^2 + 1,       gamma = deg(f) + 1,
//!     g = f^2 / U^gamma.
//! ```
//!
//! `g` is smooth, nonnegative, vanishes exactly on `{f = 0}`, and tends to
//! zero at infinity (the weight `U^gamma` grows one degree faster than
//! `f^2`). Its gradient factors as
//!
//! ```text
//!     grad g = (f / U^(gamma+1)) * Q,
//!     Q_i    = 2 (d_i f) U - gamma f (d_i U),
//! ```
//!
//! so away from `{f = 0}` the critical points of `g` are exactly the real
//! zeros of the polynomial system `Q` (the *critical system*) with
//! `f != 0`. On the zero set itself `g` attains its minimum 0, hence
//! `grad g = 0` there too — which is why downstream code always pairs a
//! critical-system zero with a sign test on `f`.
//!
//! Hessian formulas (with `P = f / U^(gamma+1)`):
//!
//! ```text
//!     Hess g = Q (grad P)^T + P * JQ,
//!     d_j P  = ((d_j f) U - (gamma+1) f (d_j U)) / U^(gamma+2),
//! ```
//!
//! and at a critical point the first term vanishes, leaving
//! `Hess g = P * JQ`.
//!
//! The weight `U` is always evaluated structurally (as a sum of squares
//! plus one) rather than from its expanded form, so float evaluations are
//! accurate and interval evaluations never lose the lower bound `U >= 1`
//! to the dependency problem.

use num_rational::BigRational;
use num_traits::Zero;

use crate::compiled::{CompiledPoly, CompiledSystem};
use crate::interval::{Box_, Interval};
use crate::linalg::Matrix;
use crate::poly::{MultiPoly, RationalPoint};
use crate::{Error, Result};

/// The routing function `g = f^2 / U^gamma` for one `(f, c)` pair, with
/// exact polynomial data and compiled evaluators.
#[derive(Clone, Debug)]
pub struct RoutingFunction {
    f: MultiPoly,
    weight: MultiPoly,
    critical_system: Vec<MultiPoly>,
    center: Vec<i64>,
    gamma: u32,
    // Compiled evaluators.
    f_c: CompiledPoly,
    grad_f_c: CompiledSystem,
    q_c: CompiledSystem,
}

impl RoutingFunction {
    /// Build the routing data for `f` and integer center `c`.
    pub fn new(f: MultiPoly, center: Vec<i64>) -> Result<RoutingFunction> {
        let n = f.nvars();
        if center.len() != n {
            return Err(Error::DimensionMismatch {
                left: center.len(),
                right: n,
            });
        }
        let deg = f.total_degree();
        if deg < 1 {
            return Err(Error::InvalidInput(
                "routing needs a nonconstant polynomial".into(),
            ));
        }
        let gamma = (deg + 1) as u32;

        // U = sum (x_i - c_i)^2 + 1, exactly.
        let mut weight = MultiPoly::one(n);
        for (i, &ci) in center.iter().enumerate() {
            let xi = MultiPoly::var(n, i + 1)?;
            let shifted = xi.sub(&MultiPoly::constant_i64(n, ci))?;
            weight = weight.add(&shifted.mul(&shifted)?)?;
        }

        // Q_i = 2 (d_i f) U - gamma f (d_i U), with d_i U = 2 (x_i - c_i).
        let gamma_poly = MultiPoly::constant_i64(n, gamma as i64);
        let two = MultiPoly::constant_i64(n, 2);
        let mut critical_system = Vec::with_capacity(n);
        for i in 1..=n {
            let df = f.partial(i)?;
            let xi = MultiPoly::var(n, i)?;
            let du = two
                .mul(&xi.sub(&MultiPoly::constant_i64(n, center[i - 1]))?)?;
            let qi = two
                .mul(&df)?
                .mul(&weight)?
                .sub(&gamma_poly.mul(&f)?.mul(&du)?)?;
            critical_system.push(qi);
        }

        let f_c = CompiledPoly::compile(&f);
        let mut grads = Vec::with_capacity(n);
        for i in 1..=n {
            grads.push(f.partial(i)?);
        }
        let grad_f_c = CompiledSystem::compile(&grads)?;
        let q_c = CompiledSystem::compile(&critical_system)?;

        Ok(RoutingFunction {
            f,
            weight,
            critical_system,
            center,
            gamma,
            f_c,
            grad_f_c,
            q_c,
        })
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    /// The weight polynomial `U` (expanded form).
    pub fn weight_poly(&self) -> &MultiPoly {
        &self.weight
    }

    /// The critical system `Q` as exact polynomials.
    pub fn critical_system(&self) -> &[MultiPoly] {
        &self.critical_system
    }

    pub fn center(&self) -> &[i64] {
        &self.center
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Compiled critical system (shared by the root isolator).
    pub fn critical_system_compiled(&self) -> &CompiledSystem {
        &self.q_c
    }

    /// Compiled gradient of `f` (shared by the singularity classifier;
    /// its Jacobian is the Hessian of `f`).
    pub fn grad_f_compiled(&self) -> &CompiledSystem {
        &self.grad_f_c
    }

    pub fn f_compiled(&self) -> &CompiledPoly {
        &self.f_c
    }

    /// Homogeneous part of `f` of top degree (used by region certificates).
    pub fn leading_form(&self) -> MultiPoly {
        let deg = self.f.total_degree();
        let mut out = MultiPoly::zero(self.nvars());
        for (m, c) in self.f.terms() {
            if m.degree() == deg as u64 {
                let mono = crate::poly::MultiPoly::from_term(
                    self.nvars(),
                    m.exps().to_vec(),
                    c.clone(),
                );
                out = out.add(&mono).expect("same nvars");
            }
        }
        out
    }

    // -- float evaluation ---------------------------------------------------

    /// `U(x)`, evaluated structurally.
    pub fn eval_weight(&self, x: &[f64]) -> f64 {
        let mut acc = 1.0;
        for (xi, &ci) in x.iter().zip(self.center.iter()) {
            let d = xi - ci as f64;
            acc += d * d;
        }
        acc
    }

    pub fn eval_f(&self, x: &[f64]) -> f64 {
        self.f_c.eval(x)
    }

    /// `g(x) = f(x)^2 / U(x)^gamma`.
    pub fn eval_g(&self, x: &[f64]) -> f64 {
        let fv = self.f_c.eval(x);
        let uv = self.eval_weight(x);
        (fv * fv) / uv.powi(self.gamma as i32)
    }

    /// `grad g(x) = P(x) Q(x)` with `P = f / U^(gamma+1)`.
    pub fn eval_grad_g(&self, x: &[f64]) -> Vec<f64> {
        let fv = self.f_c.eval(x);
        let uv = self.eval_weight(x);
        let p = fv / uv.powi(self.gamma as i32 + 1);
        self.q_c.eval(x).into_iter().map(|q| p * q).collect()
    }

    /// Hessian of `g` under the assumption `Q(x) = 0` (critical point):
    /// `P * JQ`, symmetrized. Returns the matrix and the largest absolute
    /// asymmetry `|H_ij - H_ji| / 2` observed before symmetrization.
    pub fn eval_hess_g_at_critical(&self, x: &[f64]) -> (Matrix<f64>, f64) {
        let n = self.nvars();
        let fv = self.f_c.eval(x);
        let uv = self.eval_weight(x);
        let p = fv / uv.powi(self.gamma as i32 + 1);
        let jq = self.q_c.eval_jacobian(x);
        let mut h = Matrix::zeros(n, n);
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let hij = p * jq[i * n + j];
                let hji = p * jq[j * n + i];
                asym = asym.max(0.5 * (hij - hji).abs());
                h.set(i, j, 0.5 * (hij + hji));
            }
        }
        (h, asym)
    }

    /// Full Hessian of `g`, valid anywhere: `Q (grad P)^T + P * JQ`.
    pub fn eval_hess_g_general(&self, x: &[f64]) -> Matrix<f64> {
        let n = self.nvars();
        let fv = self.f_c.eval(x);
        let uv = self.eval_weight(x);
        let u_g1 = uv.powi(self.gamma as i32 + 1);
        let u_g2 = u_g1 * uv;
        let p = fv / u_g1;
        let grad_f = self.grad_f_c.eval(x);
        let q = self.q_c.eval(x);
        let jq = self.q_c.eval_jacobian(x);
        // d_j P = ((d_j f) U - (gamma+1) f (d_j U)) / U^(gamma+2)
        let mut grad_p = vec![0.0f64; n];
        for j in 0..n {
            let du = 2.0 * (x[j] - self.center[j] as f64);
            grad_p[j] = (grad_f[j] * uv - (self.gamma as f64 + 1.0) * fv * du) / u_g2;
        }
        let mut h = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, q[i] * grad_p[j] + p * jq[i * n + j]);
            }
        }
        h
    }

    // -- exact evaluation ---------------------------------------------------

    /// Exact test `f(p) != 0` for a rational point.
    pub fn f_nonzero_at_exact(&self, p: &RationalPoint) -> Result<bool> {
        Ok(!self.f.eval_exact(p)?.is_zero())
    }

    /// Exact test `grad g(p) = 0` for a rational point: since
    /// `grad g = P Q` and `P != 0` off `{f = 0}`, for points with
    /// `f(p) != 0` this is equivalent to `Q(p) = 0` componentwise.
    pub fn critical_at_exact(&self, p: &RationalPoint) -> Result<bool> {
        for q in &self.critical_system {
            if !q.eval_exact(p)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact `g(p)` as a rational number.
    pub fn eval_g_exact(&self, p: &RationalPoint) -> Result<BigRational> {
        let fv = self.f.eval_exact(p)?;
        let uv = self.weight.eval_exact(p)?;
        let mut upow = BigRational::from_integer(1.into());
        for _ in 0..self.gamma {
            upow *= &uv;
        }
        Ok(&fv * &fv / upow)
    }

    // -- interval evaluation ------------------------------------------------

    /// Structural interval enclosure of `U` over a box; never dips below 1.
    pub fn eval_weight_interval(&self, x: &Box_) -> Interval {
        let mut acc = Interval::one();
        for (xi, &ci) in x.coords.iter().zip(self.center.iter()) {
            let d = xi.sub(&Interval::point(ci as f64));
            acc = acc.add(&d.square());
        }
        acc
    }

    pub fn eval_f_interval(&self, x: &Box_) -> Interval {
        self.f_c.eval_interval(x)
    }

    /// Certified enclosure of `g` over a box.
    pub fn eval_g_interval(&self, x: &Box_) -> Interval {
        let f2 = self.f_c.eval_interval(x).square();
        let u = self.eval_weight_interval(x);
        let upow = u.powi(self.gamma);
        f2.checked_div(&upow)
            .expect("U^gamma >= 1 cannot contain zero")
    }

    /// Certified enclosure of the critical system over a box.
    pub fn eval_q_interval(&self, x: &Box_) -> Vec<Interval> {
        self.q_c.eval_interval(x)
    }

    /// Row-major interval Jacobian of the critical system over a box.
    pub fn eval_jq_interval(&self, x: &Box_) -> Vec<Interval> {
        self.q_c.eval_jacobian_interval(x)
    }
}

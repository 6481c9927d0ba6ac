//! Certified isolation and classification of critical-system zeros.
//!
//! Entry point: [`solve_critical`], which for one routing function
//!
//! 1. probes (for `n = 2`, exactly) whether the critical system has a
//!    positive-dimensional complex zero set — if so the center is
//!    degenerate and the caller must perturb;
//! 2. finds a box guaranteed to contain every real zero
//!    ([`search_region`]);
//! 3. isolates the zeros inside that box by branch-and-prune with
//!    Krawczyk existence/uniqueness certificates ([`isolate_real_roots`]);
//! 4. splits the zeros into *routing points* (`f != 0`, certified by an
//!    interval sign of `f`) and *singular points* of `{f = 0}` (certified
//!    exactly after rationalizing the coordinates, through a Krawczyk
//!    certificate on the gradient system of `f`, or — for degenerate
//!    zeros on a diagonal line — by exact restriction to the line)
//!    ([`classify_roots`]);
//! 5. certifies that the Hessian of `g` is nonsingular at every routing
//!    point ([`hessian_nondegeneracy`]).
//!
//! Any failure that perturbing the center could cure is reported as
//! [`Error::Degenerate`] with a diagnosis string; hard failures (budget
//! exhaustion with an inconclusive picture) use the same channel, since
//! the caller's remedy is identical.
//!
//! The Krawczyk operator for a square system `F` on a box `X` with
//! midpoint `m` and any nonsingular float matrix `Y`:
//!
//! ```text
//!     K(X) = m - Y F(m) + (I - Y JF(X)) (X - m)
//! ```
//!
//! computed here entirely in outward-rounded interval arithmetic. If
//! `K(X)` lies in the interior of `X`, then `F` has exactly one zero in
//! `X`; if `K(X)` misses `X`, there is none.

use crate::compiled::CompiledSystem;
use crate::interval::{Box_, Interval};
use crate::linalg::{
    self, float_mat_times_imat, identity_minus_imat, imat_vec, interval_det, Matrix,
};
use crate::poly::{MultiPoly, RationalPoint};
use crate::routing::RoutingFunction;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// Tuning knobs for the solver.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Explicit region override (skips [`search_region`]).
    pub region_override: Option<Box_>,
    /// Budget on processed boxes before the isolator gives up.
    pub max_boxes: usize,
    /// Target box radius, relative to the region scale, for tightened
    /// root enclosures.
    pub tighten_radius_rel: f64,
    /// Relative tolerance on `|f(center)|` accepted when certifying a
    /// singular point through the gradient system.
    pub singular_f_tol_rel: f64,
    /// Doubling attempts for the search-region radius.
    pub max_region_doublings: u32,
    /// Width, relative to a box's own coordinate scale, below which an
    /// uncertifiable box is set aside as stalled instead of split further.
    /// Stalled clusters are then ruled out (or resolved deeper) exactly.
    pub stall_width_rel: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            region_override: None,
            max_boxes: 2_000_000,
            tighten_radius_rel: 1e-12,
            singular_f_tol_rel: 1e-3,
            max_region_doublings: 20,
            stall_width_rel: 1e-9,
        }
    }
}

/// A certified routing point (zero of the critical system with `f != 0`).
#[derive(Clone, Debug)]
pub struct RoutingRoot {
    /// Center of the tightened enclosure.
    pub center: Vec<f64>,
    /// Tightened certified box (the zero is unique inside it).
    pub enclosure: Box_,
    /// `g` at the center.
    pub g_value: f64,
}

/// A certified singular point of `{f = 0}` (zero of the critical system
/// with `f = 0`).
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub center: Vec<f64>,
    pub enclosure: Box_,
    /// Exact coordinates when the point rationalizes (e.g. the origin).
    pub rational: Option<RationalPoint>,
}

/// Everything [`solve_critical`] establishes for one center.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub region: Box_,
    /// `false` when the far-field exclusion leaned on the documented
    /// shell heuristic (possible for n = 3 only).
    pub region_certified: bool,
    pub roots: Vec<RoutingRoot>,
    pub singulars: Vec<SingularPoint>,
    pub boxes_processed: usize,
}

// ---------------------------------------------------------------------------
// Krawczyk machinery
// ---------------------------------------------------------------------------

enum Krawczyk {
    /// Unique zero in the tested box; payload = intersection of K with it.
    Unique(Box_),
    /// No zero in the tested box.
    Empty,
    /// K cut the box down to the payload (strictly, on some axis).
    Contracted(Box_),
    Inconclusive,
}

fn krawczyk_step(sys: &CompiledSystem, x: &Box_) -> Krawczyk {
    let n = sys.n;
    let m = x.mid();
    let jm = Matrix::new(n, n, sys.eval_jacobian(&m[..]));
    let y = match jm.inverse() {
        Some(y) => y,
        None => return Krawczyk::Inconclusive,
    };
    // Sharp F(m): the cancellation-noise floor of plain float intervals
    // (roughly `ulp of the largest term` times the term count) caps how
    // small a |F| the operator can see; roots squeezed exponentially
    // close to the zero set of f live far below it.
    let fm = sys.eval_point_sharp(&m);
    // y * F(m), interval vector.
    let mut yfm = vec![Interval::zero(); n];
    for i in 0..n {
        let mut acc = Interval::zero();
        for j in 0..n {
            acc = acc.add(&fm[j].scale(y.get(i, j)));
        }
        yfm[i] = acc;
    }
    let jx = sys.eval_jacobian_interval(x);
    let c = identity_minus_imat(&float_mat_times_imat(&y, &jx, n), n);
    let xm: Vec<Interval> = x
        .coords
        .iter()
        .zip(m.iter())
        .map(|(iv, &mi)| iv.sub(&Interval::point(mi)))
        .collect();
    let cxm = imat_vec(&c, n, &xm);
    let mut k_coords = Vec::with_capacity(n);
    for i in 0..n {
        let ki = Interval::point(m[i]).sub(&yfm[i]).add(&cxm[i]);
        k_coords.push(ki);
    }
    let k = Box_::new(k_coords);

    if !k.intersects(x) {
        return Krawczyk::Empty;
    }
    if x.contains_box_strictly(&k) {
        return Krawczyk::Unique(k.intersect(x).expect("intersecting"));
    }
    let t = k.intersect(x).expect("intersecting");
    // Count it as a contraction only if some axis shrank appreciably,
    // otherwise we might loop forever on an unmovable box.
    let shrank = t
        .coords
        .iter()
        .zip(x.coords.iter())
        .any(|(a, b)| a.width() < 0.9 * b.width());
    if shrank {
        Krawczyk::Contracted(t)
    } else {
        Krawczyk::Inconclusive
    }
}

/// Contract a certified enclosure until its radius drops below `target`
/// (absolute), or no further progress is made.
fn tighten_enclosure(sys: &CompiledSystem, b: &Box_, target: f64) -> Box_ {
    let mut cur = b.clone();
    for _ in 0..200 {
        if cur.max_width() <= 2.0 * target {
            break;
        }
        match krawczyk_step(sys, &cur) {
            Krawczyk::Unique(t) | Krawczyk::Contracted(t) => {
                if t.max_width() >= cur.max_width() {
                    break;
                }
                cur = t;
            }
            _ => break,
        }
    }
    cur
}

/// Plain float Newton iteration (no certification); used for diagnosis
/// and for snapping trajectory endpoints to candidate roots.
pub(crate) fn newton_refine(
    sys: &CompiledSystem,
    x0: &[f64],
    max_iter: usize,
    tol: f64,
) -> Option<Vec<f64>> {
    let mut x = x0.to_vec();
    for _ in 0..max_iter {
        let fx = sys.eval(&x[..]);
        let residual = fx.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let j = Matrix::new(sys.n, sys.n, sys.eval_jacobian(&x[..]));
        let step = j.solve(&fx)?;
        for i in 0..x.len() {
            x[i] -= step[i];
        }
        let step_norm = step.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if residual < tol && step_norm < tol.max(1e-14 * (1.0 + linalg::norm2(&x))) {
            return Some(x);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Branch-and-prune isolation
// ---------------------------------------------------------------------------

pub(crate) struct IsolationOutcome {
    pub certified: Vec<Box_>,
    pub leftovers: Vec<Box_>,
    pub boxes_processed: usize,
    pub budget_exhausted: bool,
}

/// Isolate all zeros of `sys` inside `region`.
///
/// Returns certified (unique-zero) boxes plus whatever undecidable
/// material remains — boxes driven below the width floor or past the
/// budget. The caller interprets leftovers.
pub(crate) fn isolate_zeros(
    sys: &CompiledSystem,
    region: &Box_,
    max_boxes: usize,
    stall_width_rel: f64,
) -> IsolationOutcome {
    // Roots of symmetric systems love sitting exactly on bisection grid
    // lines; the off-center split ratio avoids them.
    let split_ratio = 0.5 + 1.0 / 64.0;

    let mut queue: Vec<Box_> = vec![region.inflate(1e-9, 0.0)];
    let mut certified: Vec<Box_> = Vec::new();
    let mut leftovers: Vec<Box_> = Vec::new();
    let mut processed = 0usize;
    let mut budget_exhausted = false;

    let debug = std::env::var_os("POLYCONN_DEBUG_ISOLATE").is_some();
    while let Some(b) = queue.pop() {
        processed += 1;
        if debug && processed % 500_000 == 0 {
            eprintln!(
                "isolate: {} boxes, current width {:.3e} at {:?}, queue {}, certified {}",
                processed,
                b.max_width(),
                b.mid(),
                queue.len(),
                certified.len()
            );
        }
        if processed > max_boxes {
            budget_exhausted = true;
            leftovers.push(b);
            leftovers.extend(queue);
            break;
        }
        // Prune: some component's enclosure excludes zero.
        let fx = sys.eval_interval(&b);
        if fx.iter().any(|iv| !iv.contains_zero()) {
            continue;
        }
        let m = b.mid();
        if mean_value_excludes(sys, &b) {
            continue;
        }
        // Below the stall width, interval tests have told us everything
        // they ever will: a simple real zero certifies long before this,
        // so whatever survives here is pathological (typically a complex
        // pair squeezed against the real plane, which no amount of real
        // subdivision can exclude). Hand it to the exact machinery.
        if b.max_width() < stall_width_rel * local_scale(&m) {
            leftovers.push(b);
            continue;
        }
        // A touch of inflation catches zeros sitting on the box boundary.
        let test_box = b.inflate(0.05, 0.0);
        let mut resolved = false;
        match krawczyk_step(sys, &test_box) {
            Krawczyk::Unique(k) => {
                certified.push(k);
                resolved = true;
            }
            Krawczyk::Empty => resolved = true,
            Krawczyk::Contracted(t) => {
                match t.intersect(&b) {
                    // The contraction left b entirely: no zero in b.
                    None => resolved = true,
                    Some(t2) => {
                        // Only requeue if b genuinely shrank, else we would
                        // spin on the same box; fall through to a split
                        // otherwise.
                        let shrank = t2
                            .coords
                            .iter()
                            .zip(b.coords.iter())
                            .any(|(a, bb)| a.width() < 0.9 * bb.width());
                        if shrank {
                            queue.push(t2);
                            resolved = true;
                        }
                    }
                }
            }
            Krawczyk::Inconclusive => {}
        }
        if resolved {
            continue;
        }
        let (l, r) = b.split_at(b.widest_axis(), split_ratio);
        queue.push(l);
        queue.push(r);
    }

    // The same zero can be certified from two overlapping test boxes;
    // tighten every certificate and keep one per zero.
    let tightened: Vec<Box_> = certified
        .iter()
        .map(|b| {
            let target = 1e-12 * local_scale(&b.mid());
            tighten_enclosure(sys, b, target)
        })
        .collect();

    IsolationOutcome {
        certified: dedupe_by_overlap(tightened),
        leftovers,
        boxes_processed: processed,
        budget_exhausted,
    }
}

/// Keep one enclosure per zero. Merging is by overlap, never by distance —
/// distinct zeros can sit closer together than any fixed threshold
/// (squeezed clusters), while duplicate certificates of one zero contract
/// onto the same point and so must intersect.
fn dedupe_by_overlap(mut tightened: Vec<Box_>) -> Vec<Box_> {
    tightened.sort_by(|a, b| {
        a.mid()
            .partial_cmp(&b.mid())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut unique: Vec<Box_> = Vec::new();
    'outer: for t in tightened {
        for u in &unique {
            if t.intersects(u) {
                continue 'outer;
            }
        }
        unique.push(t);
    }
    unique
}

/// Interpret an inconclusive isolation run.
fn diagnose_stall(
    sys: &CompiledSystem,
    region: &Box_,
    leftovers: &[Box_],
    budget_exhausted: bool,
) -> String {
    let prefix = if budget_exhausted {
        "box budget exhausted"
    } else {
        "width floor reached"
    };
    if leftovers.is_empty() {
        return format!("unresolved_cluster: {} with no surviving boxes", prefix);
    }
    let n = region.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for b in leftovers {
        let m = b.mid();
        for i in 0..n {
            lo[i] = lo[i].min(m[i]);
            hi[i] = hi[i].max(m[i]);
        }
    }
    let spread = (0..n).fold(0.0f64, |acc, i| acc.max(hi[i] - lo[i]));
    let region_diam = region
        .coords
        .iter()
        .fold(0.0f64, |acc, c| acc.max(c.width()));
    if leftovers.len() > 200 && spread > 0.05 * region_diam {
        return format!(
            "positive_dimensional: {} undecided boxes spread over {:.3} (region diameter {:.3}) — \
             the critical set appears to contain a curve",
            leftovers.len(),
            spread,
            region_diam
        );
    }
    // A tight cluster: see whether Newton converges to a point with a
    // (numerically) singular Jacobian.
    let mean: Vec<f64> = {
        let mut acc = vec![0.0f64; n];
        for b in leftovers {
            for (i, v) in b.mid().iter().enumerate() {
                acc[i] += v;
            }
        }
        acc.iter().map(|v| v / leftovers.len() as f64).collect()
    };
    if let Some(p) = newton_refine(sys, &mean, 80, 1e-10) {
        let j = Matrix::new(sys.n, sys.n, sys.eval_jacobian(&p[..]));
        let det = j.det().abs();
        let scale = j.max_abs().powi(sys.n as i32).max(1e-300);
        if det < 1e-8 * scale {
            return format!(
                "singular_hessian: cluster of {} boxes converges to {:?} where |det J| = {:.3e} \
                 (relative {:.3e})",
                leftovers.len(),
                p,
                det,
                det / scale
            );
        }
    }
    format!(
        "unresolved_cluster: {} with {} undecided boxes (spread {:.3e})",
        prefix,
        leftovers.len(),
        spread
    )
}

// ---------------------------------------------------------------------------
// Search region
// ---------------------------------------------------------------------------

/// Find a closed box certain to contain every real zero of the critical
/// system. The second component reports whether the far-field exclusion
/// is fully certified.
///
/// For `n = 2` the box comes from exact PRS elimination with a
/// Fujiwara-style root bound per coordinate — always certified. For
/// `n >= 3` the radius is grown by doubling until, on every direction
/// cone, some critical-system component (or the radial combination `s`)
/// is dominated by its homogeneous top form beyond the radius; cones
/// where the top forms degenerate fall back to interval-verified shells
/// over `[rho, 16 rho]`, and the tail beyond that is accepted without
/// proof (reported as `false`).
pub fn search_region(rf: &RoutingFunction, cfg: &SolveConfig) -> Result<(Box_, bool)> {
    if let Some(region) = &cfg.region_override {
        return Ok((region.clone(), true));
    }
    let n = rf.nvars();
    let c_norm = rf
        .center()
        .iter()
        .fold(0.0f64, |acc, &c| acc.max((c as f64).abs()));

    if n == 2 {
        let q = rf.critical_system();
        let b1 = crate::gcd::elimination_bound(&q[0], &q[1], 1, 2);
        let b2 = crate::gcd::elimination_bound(&q[0], &q[1], 2, 1);
        return match (b1, b2) {
            (Some(b1), Some(b2)) => {
                let rho = b1.max(b2).max(c_norm) + 1.0;
                Ok((Box_::around(&vec![0.0; n], rho), true))
            }
            _ => Err(Error::Degenerate(
                "positive_dimensional: the critical system has a common factor, so its \
                 real zero set is unbounded or a curve"
                    .into(),
            )),
        };
    }

    let coeff_mag = rf
        .f()
        .max_coeff_abs()
        .to_f64_approx()
        .max(1.0)
        .ln()
        .max(0.0);
    let mut rho = 2.0 + c_norm + coeff_mag;
    let cones = ConeData::build(rf)?;
    for _ in 0..=cfg.max_region_doublings {
        match cones.certify(rf, rho) {
            ConeOutcome::Certified => return Ok((Box_::around(&vec![0.0; n], rho), true)),
            ConeOutcome::ShellOnly => return Ok((Box_::around(&vec![0.0; n], rho), false)),
            ConeOutcome::Failed => rho *= 2.0,
        }
    }
    Err(Error::Degenerate(
        "unresolved_cluster: no radius certified after doubling; the far field could not \
         be excluded"
            .into(),
    ))
}

/// Homogeneous decomposition of the critical system plus the radial
/// combination `s = sum (x_i - c_i) Q_i`, used for far-field exclusion
/// when `n >= 3`.
struct ConeData {
    /// For each candidate polynomial: compiled homogeneous parts by
    /// degree, lowest first, with the top part last.
    parts: Vec<Vec<crate::compiled::CompiledPoly>>,
}

#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum ConeOutcome {
    /// Every direction cone is dominated by a top form: nothing outside
    /// the radius, proven.
    Certified,
    /// Some cones needed the shell fallback: the shell `[rho, 16 rho]` is
    /// verified zero-free there, the tail beyond it is not.
    ShellOnly,
    Failed,
}

impl ConeData {
    fn build(rf: &RoutingFunction) -> Result<ConeData> {
        let n = rf.nvars();
        let mut polys: Vec<MultiPoly> = rf.critical_system().to_vec();
        // s = sum (x_i - c_i) Q_i; its top form is -2 |y|^2 f_d(y), which
        // rescues directions where single top forms vanish but f_d does
        // not.
        let mut s = MultiPoly::zero(n);
        for (i, q) in rf.critical_system().iter().enumerate() {
            let xi = MultiPoly::var(n, i + 1)?;
            let shift = xi.sub(&MultiPoly::constant_i64(n, rf.center()[i]))?;
            s = s.add(&shift.mul(q)?)?;
        }
        polys.push(s);

        let mut parts = Vec::with_capacity(polys.len());
        for p in &polys {
            let deg = p.total_degree();
            if deg < 0 {
                continue;
            }
            let mut by_degree: Vec<MultiPoly> =
                vec![MultiPoly::zero(n); deg as usize + 1];
            for (m, c) in p.terms() {
                let d = m.degree() as usize;
                let term = MultiPoly::from_term(n, m.exps().to_vec(), c.clone());
                by_degree[d] = by_degree[d].add(&term)?;
            }
            parts.push(
                by_degree
                    .iter()
                    .map(crate::compiled::CompiledPoly::compile)
                    .collect(),
            );
        }
        Ok(ConeData { parts })
    }

    /// Decide the far field at radius `rho` (in the max norm).
    fn certify(&self, rf: &RoutingFunction, rho: f64) -> ConeOutcome {
        let n = rf.nvars();
        let mut used_shell = false;
        // Cube faces: axis a fixed at +-1, remaining coordinates in
        // [-1, 1]^(n-1); every x with max-norm >= rho is lambda * y for a
        // face point y and lambda >= rho.
        for axis in 0..n {
            for &side in &[-1.0f64, 1.0] {
                let face = FaceBox {
                    axis,
                    side,
                    rest: vec![Interval::new(-1.0, 1.0); n - 1],
                };
                match self.certify_face(rf, rho, &face, 0) {
                    FaceOutcome::Dominated => {}
                    FaceOutcome::Shell => used_shell = true,
                    FaceOutcome::Failed => return ConeOutcome::Failed,
                }
            }
        }
        if used_shell {
            ConeOutcome::ShellOnly
        } else {
            ConeOutcome::Certified
        }
    }

    fn certify_face(
        &self,
        rf: &RoutingFunction,
        rho: f64,
        face: &FaceBox,
        depth: u32,
    ) -> FaceOutcome {
        let y = face.to_box();
        if self.dominates(rho, &y) {
            return FaceOutcome::Dominated;
        }
        if depth < 5 {
            let (a, b) = face.split();
            let ra = self.certify_face(rf, rho, &a, depth + 1);
            let rb = self.certify_face(rf, rho, &b, depth + 1);
            return match (ra, rb) {
                (FaceOutcome::Failed, _) | (_, FaceOutcome::Failed) => FaceOutcome::Failed,
                (FaceOutcome::Shell, _) | (_, FaceOutcome::Shell) => FaceOutcome::Shell,
                _ => FaceOutcome::Dominated,
            };
        }
        // Top forms vanish on this cone (they can, identically, for some
        // inputs): verify the shell [rho, 16 rho] directly and accept the
        // (documented) unverified tail beyond it.
        if self.shell_free(rf, rho, face) {
            FaceOutcome::Shell
        } else {
            FaceOutcome::Failed
        }
    }

    /// True when, on the direction box `y`, some candidate polynomial has
    /// `rho * mig(top(y)) > sum of |lower parts|(y)` — which makes the
    /// polynomial nonzero at `lambda y` for every `lambda >= rho >= 1`.
    fn dominates(&self, rho: f64, y: &Box_) -> bool {
        'poly: for parts in &self.parts {
            let top = match parts.last() {
                Some(t) => t.eval_interval(y),
                None => continue,
            };
            if top.contains_zero() {
                continue;
            }
            let mut lower = 0.0f64;
            for p in &parts[..parts.len() - 1] {
                lower += p.eval_interval(y).mag();
                if lower >= rho * top.mig() {
                    continue 'poly;
                }
            }
            if rho * top.mig() > lower {
                return true;
            }
        }
        false
    }

    /// Interval-verify that the critical system has no zero with
    /// direction in `face` and max-norm in `[rho, 16 rho]`.
    fn shell_free(&self, rf: &RoutingFunction, rho: f64, face: &FaceBox) -> bool {
        // Dyadic lambda segments.
        let mut lambda = rho;
        for _ in 0..4 {
            let seg = Interval::new(lambda, lambda * 2.0);
            if !self.segment_free(rf, &seg, face, 0) {
                return false;
            }
            lambda *= 2.0;
        }
        true
    }

    fn segment_free(
        &self,
        rf: &RoutingFunction,
        lambda: &Interval,
        face: &FaceBox,
        depth: u32,
    ) -> bool {
        let y = face.to_box();
        let x = Box_::new(y.coords.iter().map(|c| c.mul(lambda)).collect());
        let q = rf.eval_q_interval(&x);
        if q.iter().any(|iv| !iv.contains_zero()) {
            return true;
        }
        if depth >= 6 {
            return false;
        }
        let (a, b) = face.split();
        // Also split the lambda segment once the faces get small.
        if depth >= 3 {
            let mid = lambda.mid();
            let l1 = Interval::new(lambda.lo, mid);
            let l2 = Interval::new(mid, lambda.hi);
            return self.segment_free(rf, &l1, &a, depth + 1)
                && self.segment_free(rf, &l2, &a, depth + 1)
                && self.segment_free(rf, &l1, &b, depth + 1)
                && self.segment_free(rf, &l2, &b, depth + 1);
        }
        self.segment_free(rf, lambda, &a, depth + 1)
            && self.segment_free(rf, lambda, &b, depth + 1)
    }
}

#[derive(PartialEq, Eq, Clone, Copy, Debug)]
enum FaceOutcome {
    Dominated,
    Shell,
    Failed,
}

/// A box on one face of the unit cube boundary: coordinate `axis` pinned
/// to `side`, the others ranging over `rest`.
#[derive(Clone, Debug)]
struct FaceBox {
    axis: usize,
    side: f64,
    rest: Vec<Interval>,
}

impl FaceBox {
    fn to_box(&self) -> Box_ {
        let n = self.rest.len() + 1;
        let mut coords = Vec::with_capacity(n);
        let mut k = 0;
        for i in 0..n {
            if i == self.axis {
                coords.push(Interval::point(self.side));
            } else {
                coords.push(self.rest[k]);
                k += 1;
            }
        }
        Box_::new(coords)
    }

    fn split(&self) -> (FaceBox, FaceBox) {
        // Split the widest free coordinate.
        let mut widest = 0;
        let mut w = -1.0;
        for (i, c) in self.rest.iter().enumerate() {
            if c.width() > w {
                w = c.width();
                widest = i;
            }
        }
        let c = self.rest[widest];
        let mid = c.mid();
        let mut a = self.clone();
        let mut b = self.clone();
        a.rest[widest] = Interval::new(c.lo, mid);
        b.rest[widest] = Interval::new(mid, c.hi);
        (a, b)
    }
}

// ---------------------------------------------------------------------------
// Public pipeline pieces
// ---------------------------------------------------------------------------

/// Isolate all real zeros of the critical system inside `region`.
///
/// For `n = 2` this goes through exact elimination: interval subdivision
/// alone can spend unbounded effort crawling along the thin slivers of
/// near-vanishing `Q` that squeezed zero sets produce. For `n >= 3` it is
/// interval subdivision, with uncertifiable stall clusters reported as
/// degenerate.
pub fn isolate_real_roots(
    rf: &RoutingFunction,
    region: &Box_,
    cfg: &SolveConfig,
) -> Result<(Vec<Box_>, usize)> {
    let sys = rf.critical_system_compiled();
    if rf.nvars() == 2 {
        return isolate_exact_bivariate(rf, sys, cfg);
    }
    let out = isolate_zeros(sys, region, cfg.max_boxes, cfg.stall_width_rel);
    if out.budget_exhausted || !out.leftovers.is_empty() {
        return Err(Error::Degenerate(diagnose_stall(
            sys,
            region,
            &out.leftovers,
            out.budget_exhausted,
        )));
    }
    Ok((out.certified, out.boxes_processed))
}

/// Mean-value-form exclusion: `F(X) ⊆ F(m) + J(X)(X - m)` componentwise;
/// any component bounded away from zero proves `X` zero-free. The slack
/// shrinks quadratically with box width where direct evaluation improves
/// only linearly — without it, subdivision crawls forever along thin
/// strips where every component is small but nonzero. The center value is
/// evaluated exactly when the float interval straddles zero, so the test
/// keeps its power below the floating-point cancellation-noise floor.
fn mean_value_excludes(sys: &CompiledSystem, b: &Box_) -> bool {
    let m = b.mid();
    let fm = sys.eval_point_sharp(&m);
    let jx = sys.eval_jacobian_interval(b);
    let dim = b.dim();
    for i in 0..dim {
        let mut acc = fm[i];
        for j in 0..dim {
            let dj = b.coords[j].sub(&Interval::point(m[j]));
            acc = acc.add(&jx[i * dim + j].mul(&dj));
        }
        if !acc.contains_zero() {
            return true;
        }
    }
    false
}

/// Outcome of one interval attempt on a candidate box.
enum Candidate {
    Empty,
    Unique(Box_),
    Undecided,
}

/// Exclude or certify one candidate box: direct interval evaluation, then
/// the mean-value form around the (exactly evaluated) center, then the
/// Krawczyk test. The tiny absolute inflation gives boxes with an exactly
/// hit coordinate an interior for the uniqueness argument.
fn resolve_candidate(sys: &CompiledSystem, b: &Box_) -> Candidate {
    let b = b.inflate(0.0, 1e-15 * local_scale(&b.mid()));
    let fx = sys.eval_interval(&b);
    if fx.iter().any(|iv| !iv.contains_zero()) {
        return Candidate::Empty;
    }
    if mean_value_excludes(sys, &b) {
        return Candidate::Empty;
    }
    match krawczyk_step(sys, &b) {
        Krawczyk::Unique(k) => Candidate::Unique(k),
        Krawczyk::Empty => Candidate::Empty,
        Krawczyk::Contracted(t) => {
            if t.intersect(&b).is_none() {
                Candidate::Empty
            } else {
                Candidate::Undecided
            }
        }
        Krawczyk::Inconclusive => Candidate::Undecided,
    }
}

/// Isolate all real zeros of the bivariate critical system exactly.
///
/// Every real zero's coordinates appear among the real roots of the two
/// projection eliminations (tail and side polynomials), so the zeros lie
/// on a finite grid of window products. Each candidate box is excluded or
/// Krawczyk-certified, escalating through exact window refinement; the
/// stubborn remainder — where a zero of the system sits nearby in complex
/// space — falls back to an exact projected-root count over the window
/// strip. Complex-conjugate pairs squeezed against the real plane, which
/// make pure subdivision crawl forever, never enter at all: their
/// projections are complex and contribute no real windows.
fn isolate_exact_bivariate(
    rf: &RoutingFunction,
    sys: &CompiledSystem,
    _cfg: &SolveConfig,
) -> Result<(Vec<Box_>, usize)> {
    let q = rf.critical_system();
    let mut axes: Vec<Vec<crate::gcd::IsolatedRoot>> = Vec::with_capacity(2);
    let mut strips: Vec<Vec<crate::gcd::ZPoly>> = Vec::with_capacity(2);
    for keep in 1..=2usize {
        let elim = crate::gcd::eliminate_variable(&q[0], &q[1], keep, 3 - keep).ok_or_else(|| {
            Error::Degenerate(
                "positive_dimensional: the critical system has a common factor, so its \
                 zero set contains a curve"
                    .into(),
            )
        })?;
        let polys = crate::gcd::projection_squarefree(&elim);
        let mut wins: Vec<crate::gcd::IsolatedRoot> = Vec::new();
        for p in &polys {
            let rs = crate::gcd::isolate_univariate_roots(p).ok_or_else(|| {
                Error::Degenerate(
                    "unresolved_cluster: projected roots too entangled to isolate".into(),
                )
            })?;
            wins.extend(rs);
        }
        for r in wins.iter_mut() {
            let local = 1.0 + r.lo().abs().max(r.hi().abs());
            r.refine(1e-6 * local);
        }
        axes.push(wins);
        strips.push(polys);
    }
    let (xs, ys) = {
        let mut it = axes.into_iter();
        (it.next().unwrap(), it.next().unwrap())
    };

    // Candidate grid, filtered by one cheap interval evaluation. Distinct
    // windows may isolate the same projected root (it can divide both the
    // tail and a side polynomial), which only means a zero gets certified
    // twice; the final overlap dedupe keeps one enclosure.
    let cand_box = |x: &crate::gcd::IsolatedRoot, y: &crate::gcd::IsolatedRoot| Box_ {
        coords: vec![
            Interval::new(x.lo(), x.hi()),
            Interval::new(y.lo(), y.hi()),
        ],
    };
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut examined = 0usize;
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            examined += 1;
            let b = cand_box(x, y);
            let fx = sys.eval_interval(&b);
            if fx.iter().any(|iv| !iv.contains_zero()) {
                continue;
            }
            pending.push((i, j));
        }
    }

    // Windows from different projection polynomials frequently isolate
    // the same root in the same dyadic interval (a degenerate fiber makes
    // the tail and several sides share it), so candidates repeat; one
    // resolution settles every candidate with a bit-identical box.
    let box_key = |b: &Box_| -> Vec<(u64, u64)> {
        b.coords
            .iter()
            .map(|c| (c.lo.to_bits(), c.hi.to_bits()))
            .collect()
    };

    let mut xs = xs;
    let mut ys = ys;
    let mut certified: Vec<Box_> = Vec::new();
    for round in 0..4usize {
        let mut undecided: Vec<(usize, usize)> = Vec::new();
        let mut seen: HashMap<Vec<(u64, u64)>, usize> = HashMap::new();
        let mut outcomes: Vec<Candidate> = Vec::new();
        for &(i, j) in &pending {
            let b = cand_box(&xs[i], &ys[j]);
            let key = box_key(&b);
            let oi = match seen.get(&key) {
                Some(&oi) => oi,
                None => {
                    examined += 1;
                    let out = resolve_candidate(sys, &b);
                    if let Candidate::Unique(k) = &out {
                        certified.push(k.clone());
                    }
                    outcomes.push(out);
                    seen.insert(key, outcomes.len() - 1);
                    outcomes.len() - 1
                }
            };
            if matches!(outcomes[oi], Candidate::Undecided) {
                undecided.push((i, j));
            }
        }
        pending = undecided;
        if pending.is_empty() {
            break;
        }
        if round < 3 {
            let target_rel = [1e-9, 1e-12, 2.5e-14][round];
            for &(i, j) in &pending {
                let lx = 1.0 + xs[i].lo().abs().max(xs[i].hi().abs());
                xs[i].refine(target_rel * lx);
                let ly = 1.0 + ys[j].lo().abs().max(ys[j].hi().abs());
                ys[j].refine(target_rel * ly);
            }
        }
    }

    // Last resort for candidates no interval test can settle, with two
    // exact tools. Zero distinct projected roots over either window
    // strip proves the candidate empty (the nearby system zero is a
    // complex-conjugate pair whose projections are real only in one
    // coordinate). Otherwise the candidate holds a genuinely degenerate
    // real zero — a tangential self-intersection of {f = 0} makes the
    // critical system's Jacobian singular at the zero itself, which
    // defeats every interval operator — and the line/circle restriction
    // certificates decide it by exact univariate algebra.
    let mut degenerate: Vec<Box_> = Vec::new();
    let mut settled: HashMap<Vec<(u64, u64)>, ()> = HashMap::new();
    for &(i, j) in &pending {
        let key = box_key(&cand_box(&xs[i], &ys[j]));
        if settled.contains_key(&key) {
            continue;
        }
        let sx = crate::gcd::distinct_strip_roots(&strips[0], xs[i].lo(), xs[i].hi());
        let sy = crate::gcd::distinct_strip_roots(&strips[1], ys[j].lo(), ys[j].hi());
        if sx == Some(0) || sy == Some(0) {
            settled.insert(key, ());
            continue;
        }
        if sx == Some(1) && sy == Some(1) {
            let enc = diagonal_zero_box(q, &mut xs[i], &mut ys[j])
                .or_else(|| circle_zero_box(q, &xs[i], &ys[j]));
            if let Some(enc) = enc {
                degenerate.push(enc);
                settled.insert(key, ());
                continue;
            }
        }
        return Err(Error::Degenerate(format!(
            "unresolved_cluster: cannot certify or exclude a zero near {:?} \
             (distinct strip roots: {:?} x, {:?} y)",
            cand_box(&xs[i], &ys[j]).mid(),
            sx,
            sy
        )));
    }

    let mut tightened: Vec<Box_> = certified
        .iter()
        .map(|b| {
            let target = 1e-12 * local_scale(&b.mid());
            tighten_enclosure(sys, b, target)
        })
        .collect();
    tightened.extend(degenerate);
    Ok((dedupe_by_overlap(tightened), examined))
}

/// Certify a degenerate zero of the bivariate critical system on a
/// diagonal line `x2 = s*x1` through the candidate window pair.
///
/// The caller has established that the window strips each contain exactly
/// one distinct projected zero coordinate, so the candidate box holds at
/// most one zero. Restricting the system to the diagonal turns existence
/// into exact univariate algebra: the squarefree gcd of the restrictions
/// has a real root `t` in the x-window iff `(t, s*t)` is a zero of the
/// full system. The windows are first refined until the mirrored x-window
/// lands inside the y-window (the line zero is then inside the box) or
/// the windows separate (the line misses this candidate).
fn diagonal_zero_box(
    q: &[MultiPoly],
    wx: &mut crate::gcd::IsolatedRoot,
    wy: &mut crate::gcd::IsolatedRoot,
) -> Option<Box_> {
    'line: for s in [1i64, -1] {
        let mut contained = false;
        for _ in 0..64 {
            let (mlo, mhi) = if s == 1 {
                (wx.lo(), wx.hi())
            } else {
                (-wx.hi(), -wx.lo())
            };
            if mlo >= wy.lo() && mhi <= wy.hi() {
                contained = true;
                break;
            }
            if mhi < wy.lo() || mlo > wy.hi() {
                continue 'line;
            }
            wx.refine(0.5 * wx.width());
            wy.refine(0.5 * wy.width());
        }
        if !contained {
            continue;
        }
        let h = crate::gcd::line_common_zeros(&q[0], &q[1], s);
        if h.len() <= 1 {
            continue;
        }
        if crate::gcd::count_real_roots_window(&h, wx.lo(), wx.hi()) != Some(1) {
            continue;
        }
        let xi = Interval::new(wx.lo(), wx.hi());
        let yi = if s == 1 {
            xi
        } else {
            Interval::new(-wx.hi(), -wx.lo())
        };
        return Some(Box_::new(vec![xi, yi]));
    }
    None
}

/// Smallest-denominator rational in the closed interval `[lo, hi]`,
/// by continued-fraction descent over the exact dyadic endpoints.
fn simplest_rational_in(lo: f64, hi: f64) -> Option<BigRational> {
    fn simplest(a: BigRational, b: BigRational) -> BigRational {
        let zero = BigRational::zero();
        if a <= zero && zero <= b {
            return zero;
        }
        if b < zero {
            return -simplest(-b, -a);
        }
        // 0 < a <= b: the candidate with denominator 1 is ceil(a); when
        // that overshoots, recurse on the fractional parts (reciprocals
        // swap the endpoints and keep the interval nonempty).
        let ca = a.ceil();
        if ca <= b {
            return ca;
        }
        let i = a.floor();
        &i + (simplest((b - &i).recip(), (a - &i).recip())).recip()
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return None;
    }
    let a = BigRational::from_float(lo)?;
    let b = BigRational::from_float(hi)?;
    Some(simplest(a, b))
}

/// Outward interval enclosure of `sigma * sqrt(rho - x^2)` over
/// `[lo, hi]`, or `None` unless `rho - x^2 > 0` holds exactly on the
/// whole range (which also proves the branch values are real).
fn circle_branch_interval(rho: &BigRational, lo: f64, hi: f64, sigma: i32) -> Option<Interval> {
    use num_traits::ToPrimitive;
    let a = BigRational::from_float(lo)?;
    let b = BigRational::from_float(hi)?;
    let (a2, b2) = (&a * &a, &b * &b);
    let x2_hi = if a2 > b2 { a2.clone() } else { b2.clone() };
    let x2_lo = if lo <= 0.0 && hi >= 0.0 {
        BigRational::zero()
    } else if a2 < b2 {
        a2
    } else {
        b2
    };
    let under_lo = rho - x2_hi;
    let under_hi = rho - x2_lo;
    if under_lo <= BigRational::zero() {
        return None;
    }
    // `to_f64` is only near-faithful; pad two ulps before rounding the
    // square roots outward.
    let l = under_lo.to_f64()?.next_down().next_down().max(0.0);
    let u = under_hi.to_f64()?.next_up().next_up();
    let s_lo = l.sqrt().next_down();
    let s_hi = u.sqrt().next_up();
    Some(if sigma > 0 {
        Interval::new(s_lo, s_hi)
    } else {
        Interval::new(-s_hi, -s_lo)
    })
}

/// Certify a degenerate zero of the bivariate critical system on a
/// circle `x^2 + y^2 = rho` through the candidate window pair — the
/// companion of [`diagonal_zero_box`] for zeros the diagonals miss.
///
/// `rho` is *discovered* as the smallest-denominator rational in the
/// interval of `x^2 + y^2` over the windows; a wrong guess costs
/// nothing, because every later step is an exact test that simply
/// fails. On the circle, each polynomial collapses modulo
/// `y^2 - (rho - x^2)` to `A(x) + B(x)*y`, which vanishes on the branch
/// `y = sigma*sqrt(rho - x^2)` exactly where the branch product
/// `N = den(rho)*A^2 - B^2*(num(rho) - den(rho)*x^2)` vanishes with the
/// matching sign of `A*B`. A window count of the squarefree gcd of the
/// two branch products plus exact branch-sign tests certify the zero;
/// the windows are refined until the branch's y-range lands inside the
/// y-window, so the emitted box provably contains it.
fn circle_zero_box(
    q: &[MultiPoly],
    wx: &crate::gcd::IsolatedRoot,
    wy: &crate::gcd::IsolatedRoot,
) -> Option<Box_> {
    let sigma: i32 = if wy.lo() > 0.0 {
        1
    } else if wy.hi() < 0.0 {
        -1
    } else {
        return None;
    };
    let xi = Interval::new(wx.lo(), wx.hi());
    let yi = Interval::new(wy.lo(), wy.hi());
    let riv = xi.mul(&xi).add(&yi.mul(&yi));
    let rho = simplest_rational_in(riv.lo, riv.hi)?;
    if rho <= BigRational::zero() || rho.denom().bits() > 24 {
        return None;
    }
    let (a1, b1) = crate::gcd::reduce_mod_circle(&q[0], &rho);
    let (a2, b2) = crate::gcd::reduce_mod_circle(&q[1], &rho);
    let n1 = crate::gcd::circle_branch_product(&a1, &b1, &rho);
    let n2 = crate::gcd::circle_branch_product(&a2, &b2, &rho);
    let g = crate::gcd::squarefree_part(&crate::gcd::z_gcd(&n1, &n2));
    if g.len() <= 1 {
        return None;
    }
    if crate::gcd::count_real_roots_window(&g, wx.lo(), wx.hi()) != Some(1) {
        return None;
    }
    // All further narrowing bisects the root of `g` itself — `g` is tiny
    // next to the projection polynomials behind the windows, and its
    // window only ever shrinks, which keeps every test below monotone.
    let mut gr = crate::gcd::isolated_root_in_window(&g, wx.lo(), wx.hi())?;
    // Shrink until the branch arc over the root's window sits inside the
    // y-window (the circle zero is then inside the candidate box) or the
    // two separate (the circle misses this candidate).
    let mut contained = false;
    for _ in 0..200 {
        let t = circle_branch_interval(&rho, gr.lo(), gr.hi(), sigma)?;
        if t.lo >= wy.lo() && t.hi <= wy.hi() {
            contained = true;
            break;
        }
        if t.hi < wy.lo() || t.lo > wy.hi() {
            return None;
        }
        if gr.width() < 1e-300 {
            return None;
        }
        gr.refine(0.5 * gr.width());
    }
    if !contained {
        return None;
    }
    // Both polynomials must vanish on branch `sigma` at the root. The
    // sign tests may need a narrower window to become decisive;
    // shrinking `gr` keeps the root and the containment above.
    for (a, b) in [(&a1, &b1), (&a2, &b2)] {
        loop {
            match crate::gcd::vanishing_branch(&g, a, b, gr.lo(), gr.hi()) {
                Some(0) => break,
                Some(s) if s == sigma => break,
                Some(_) => return None,
                None => {
                    if gr.width() < 1e-300 {
                        return None;
                    }
                    gr.refine(0.5 * gr.width());
                }
            }
        }
    }
    let y_iv = circle_branch_interval(&rho, gr.lo(), gr.hi(), sigma)?;
    Some(Box_::new(vec![Interval::new(gr.lo(), gr.hi()), y_iv]))
}

/// Split certified zero boxes into routing points and singular points.
///
/// All tolerances are relative to each root's own magnitude (`1 + |x|`,
/// max norm), not to the search region: the region radius says nothing
/// about how precisely an individual zero can or must be located.
pub fn classify_roots(
    rf: &RoutingFunction,
    boxes: &[Box_],
    cfg: &SolveConfig,
) -> Result<(Vec<RoutingRoot>, Vec<SingularPoint>)> {
    let sys = rf.critical_system_compiled();
    let mut roots = Vec::new();
    let mut singulars = Vec::new();
    let mut coord_max = 0.0f64;

    for b in boxes {
        let local = local_scale(&b.mid());
        let target = cfg.tighten_radius_rel * local;
        let tight = tighten_enclosure(sys, b, target);
        let center = tight.mid();
        coord_max = coord_max.max(center.iter().fold(0.0, |a, &v| a.max(v.abs())));

        // (1) f certified nonzero on the enclosure: routing point. This
        // must run first — a critical point of f itself (f != 0) also
        // zeroes the critical system's gradient factor but is a perfectly
        // good routing point.
        //
        // The interval test alone cannot see values under its own
        // cancellation-noise floor, and routing points can be squeezed
        // exponentially close to {f = 0}; when it straddles zero, retry
        // with the exact value at the center minus a first-order
        // remainder bound over the (tiny) enclosure:
        //   |f(x)| >= |f(m)| - sum_j mag(d_j f over X) rad_j(X).
        let f_iv = rf.eval_f_interval(&tight);
        let f_nonzero = if !f_iv.contains_zero() {
            true
        } else {
            let fc = rf.f_compiled().eval_exact_interval(&center);
            let grad = rf.grad_f_compiled();
            let mut remainder = 0.0f64;
            for j in 0..tight.dim() {
                let dj = grad.component(j).eval_interval(&tight);
                remainder += dj.mag() * tight.coords[j].rad();
            }
            fc.mig() > remainder
        };
        if f_nonzero {
            let g_value = exact_g(rf, &center)?;
            roots.push(RoutingRoot {
                center,
                enclosure: tight,
                g_value,
            });
            continue;
        }

        // (2) Exact rationalization: if the coordinates rationalize with
        // a small denominator and satisfy Q = 0 and f = 0 exactly, the
        // point is a certified singular point.
        if let Some(p) = rationalize_point(&center, 1_000_000) {
            if rf.critical_at_exact(&p)? && !rf.f_nonzero_at_exact(&p)? {
                singulars.push(SingularPoint {
                    center: p.to_f64_vec(),
                    enclosure: tight,
                    rational: Some(p),
                });
                continue;
            }
        }

        // (3) Krawczyk certificate on grad f: a nondegenerate zero of the
        // gradient system whose enclosure also pins f near zero. (The
        // critical system vanishes wherever f = 0 and grad f = 0, so this
        // is the expected shape of a singular point.)
        let grad_sys = rf.grad_f_compiled();
        let local = local_scale(&center);
        let test = tight.inflate(0.0, 1e-9 * local);
        let is_grad_zero = matches!(krawczyk_step(grad_sys, &test), Krawczyk::Unique(_));
        let f_center = rf.f_compiled().eval_exact_interval(&center).mag();
        if is_grad_zero && f_center < cfg.singular_f_tol_rel * local {
            singulars.push(SingularPoint {
                center,
                enclosure: tight,
                rational: None,
            });
            continue;
        }

        // (4) Exact restriction certificates (n = 2 only): a tangential
        // self-intersection of {f = 0} is a zero where the Hessian of f
        // is itself singular, so the Krawczyk test above is structurally
        // blind to it. When the enclosure pins a zero on a diagonal line
        // x2 = s*x1 or a rational circle x^2 + y^2 = rho, restricting to
        // the curve reduces everything to exact univariate algebra: the
        // gcd of the restricted system locates the zero, and exact root
        // and sign tests against restricted f decide whether f vanishes
        // there.
        if rf.nvars() == 2 {
            match diagonal_classify(rf, &tight).or_else(|| circle_classify(rf, &tight)) {
                Some(true) => {
                    singulars.push(SingularPoint {
                        center,
                        enclosure: tight,
                        rational: None,
                    });
                    continue;
                }
                Some(false) => {
                    let g_value = exact_g(rf, &center)?;
                    roots.push(RoutingRoot {
                        center,
                        enclosure: tight,
                        g_value,
                    });
                    continue;
                }
                None => {}
            }
        }

        return Err(Error::Degenerate(format!(
            "unresolved_cluster: certified zero near {:?} is neither a routing point \
             (f-interval {} straddles zero) nor a certifiable singular point",
            center, f_iv
        )));
    }

    // Deterministic ordering: lexicographic by coordinates, quantized so
    // that sub-enclosure numerical noise (e.g. an x-coordinate of -1e-17
    // vs +3e-18 on an axis root) cannot scramble the labels.
    let quantum = 1e-9 * (1.0 + coord_max);
    roots.sort_by_key(|r| lex_key(&r.center, quantum));
    singulars.sort_by_key(|s| lex_key(&s.center, quantum));
    Ok((roots, singulars))
}

/// Classify the zero inside an enclosure that sits on a diagonal line
/// `x2 = s*x1`, by exact restriction to the line.
///
/// Sound because the enclosure is guaranteed (by the isolation phase) to
/// contain exactly one zero of the critical system: if the mirrored
/// x-interval lies inside the y-interval, a root `t` of the restricted
/// system's gcd in the x-interval puts the point `(t, s*t)` inside the
/// enclosure, so it *is* that unique zero. `Some(true)` means `f`
/// vanishes there (a singular point of `{f = 0}`), `Some(false)` means
/// `f` is exactly nonzero there (a routing point), `None` means the
/// certificate does not apply.
fn diagonal_classify(rf: &RoutingFunction, b: &Box_) -> Option<bool> {
    let q = rf.critical_system();
    let (xi, yi) = (b.coords[0], b.coords[1]);
    for s in [1i64, -1] {
        let (mlo, mhi) = if s == 1 {
            (xi.lo, xi.hi)
        } else {
            (-xi.hi, -xi.lo)
        };
        if !(mlo >= yi.lo && mhi <= yi.hi) {
            continue;
        }
        let h = crate::gcd::line_common_zeros(&q[0], &q[1], s);
        if h.len() <= 1 {
            continue;
        }
        if crate::gcd::count_real_roots_window(&h, xi.lo, xi.hi) != Some(1) {
            continue;
        }
        if let Some(v) = crate::gcd::vanishes_at_line_root(&h, rf.f(), s, xi.lo, xi.hi) {
            return Some(v);
        }
    }
    None
}

/// Classify the zero inside an enclosure that sits on a rational circle
/// `x^2 + y^2 = rho` — the companion of [`diagonal_classify`].
///
/// Same soundness structure: the enclosure holds exactly one zero of the
/// critical system; if the branch arc over the x-interval lies inside
/// the y-interval and the squarefree gcd of the branch products has
/// exactly one root there on the matching branch, that point *is* the
/// zero. `f` restricted to the circle also collapses to `A + B*y`, so
/// whether it vanishes at the zero is again an exact root/sign question:
/// its branch product not sharing the root means `f != 0` on *either*
/// branch (`Some(false)`); sharing it, the vanishing branch of `f` must
/// be compared with the zero's own branch.
fn circle_classify(rf: &RoutingFunction, b: &Box_) -> Option<bool> {
    let q = rf.critical_system();
    let (xi, yi) = (b.coords[0], b.coords[1]);
    let sigma: i32 = if yi.lo > 0.0 {
        1
    } else if yi.hi < 0.0 {
        -1
    } else {
        return None;
    };
    let riv = xi.mul(&xi).add(&yi.mul(&yi));
    let rho = simplest_rational_in(riv.lo, riv.hi)?;
    if rho <= BigRational::zero() || rho.denom().bits() > 24 {
        return None;
    }
    let t = circle_branch_interval(&rho, xi.lo, xi.hi, sigma)?;
    if !(t.lo >= yi.lo && t.hi <= yi.hi) {
        return None;
    }
    let (a1, b1) = crate::gcd::reduce_mod_circle(&q[0], &rho);
    let (a2, b2) = crate::gcd::reduce_mod_circle(&q[1], &rho);
    let n1 = crate::gcd::circle_branch_product(&a1, &b1, &rho);
    let n2 = crate::gcd::circle_branch_product(&a2, &b2, &rho);
    let g = crate::gcd::squarefree_part(&crate::gcd::z_gcd(&n1, &n2));
    if g.len() <= 1 {
        return None;
    }
    if crate::gcd::count_real_roots_window(&g, xi.lo, xi.hi) != Some(1) {
        return None;
    }
    for (a, b) in [(&a1, &b1), (&a2, &b2)] {
        match crate::gcd::vanishing_branch(&g, a, b, xi.lo, xi.hi) {
            Some(0) => {}
            Some(s) if s == sigma => {}
            _ => return None,
        }
    }
    let (af, bf) = crate::gcd::reduce_mod_circle(rf.f(), &rho);
    let nf = crate::gcd::circle_branch_product(&af, &bf, &rho);
    if !crate::gcd::shares_window_root(&g, &nf, xi.lo, xi.hi)? {
        return Some(false);
    }
    match crate::gcd::vanishing_branch(&g, &af, &bf, xi.lo, xi.hi) {
        Some(0) => Some(true),
        Some(s) if s == sigma => Some(true),
        Some(_) => Some(false),
        None => None,
    }
}

/// Magnitude of a point for relative tolerances: `1 + |x|` in the max
/// norm.
fn local_scale(x: &[f64]) -> f64 {
    1.0 + x.iter().fold(0.0f64, |a, &v| a.max(v.abs()))
}

/// `g` at a float point through exact rational arithmetic — float
/// evaluation of `f` loses to cancellation exactly at the points that
/// matter (routing points squeezed against `{f = 0}`, where `g` is
/// minuscule but must stay provably positive).
fn exact_g(rf: &RoutingFunction, x: &[f64]) -> Result<f64> {
    let coords = x
        .iter()
        .map(|&v| {
            BigRational::from_float(v).ok_or_else(|| {
                Error::InvalidInput(format!("non-finite coordinate {} in root center", v))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p = RationalPoint::new(coords);
    Ok(rf.eval_g_exact(&p)?.to_f64_approx())
}

/// Quantized lexicographic sort key for near-exact coordinates.
pub(crate) fn lex_key(center: &[f64], quantum: f64) -> Vec<i64> {
    center
        .iter()
        .map(|&v| {
            let q = (v / quantum).round();
            if q.is_finite() {
                q as i64
            } else if q > 0.0 {
                i64::MAX
            } else {
                i64::MIN
            }
        })
        .collect()
}

/// Try to read float coordinates as exact small-denominator rationals
/// (continued fractions, denominator capped).
fn rationalize_point(x: &[f64], max_denom: u64) -> Option<RationalPoint> {
    let mut coords = Vec::with_capacity(x.len());
    for &v in x {
        coords.push(rationalize(v, max_denom)?);
    }
    Some(RationalPoint::new(coords))
}

fn rationalize(v: f64, max_denom: u64) -> Option<BigRational> {
    if !v.is_finite() {
        return None;
    }
    // Continued-fraction convergents.
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (BigInt::from(v.floor() as i64), BigInt::from(1));
    let mut frac = v - v.floor();
    for _ in 0..40 {
        let cand = BigRational::new(p1.clone(), q1.clone());
        let cand_f = cand.to_f64_approx();
        if (cand_f - v).abs() <= 1e-9 * (1.0 + v.abs()) {
            return Some(cand);
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let ai = BigInt::from(a as i64);
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        if q2 > BigInt::from(max_denom) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let cand = BigRational::new(p1, q1);
    if (cand.to_f64_approx() - v).abs() <= 1e-9 * (1.0 + v.abs()) {
        Some(cand)
    } else {
        None
    }
}

/// Certify `det JQ != 0` on every routing enclosure (hence `Hess g`
/// nonsingular there, since `Hess g = P JQ` at critical points and
/// `P != 0` wherever `f != 0`).
pub fn hessian_nondegeneracy(rf: &RoutingFunction, roots: &[RoutingRoot]) -> Result<()> {
    for (idx, root) in roots.iter().enumerate() {
        let jq = rf.eval_jq_interval(&root.enclosure);
        let det = interval_det(&jq, rf.nvars());
        if det.contains_zero() {
            return Err(Error::Degenerate(format!(
                "singular_hessian: at routing point {} near {:?} the certified det JQ \
                 enclosure {} contains zero",
                idx, root.center, det
            )));
        }
    }
    Ok(())
}

/// Full certified solve for one `(f, c)` pair.
pub fn solve_critical(rf: &RoutingFunction, cfg: &SolveConfig) -> Result<SolveReport> {
    // Exact degeneracy probe (n = 2): a common factor of the critical
    // system means a positive-dimensional zero set — perturb, don't
    // search.
    if rf.nvars() == 2 {
        let q = rf.critical_system();
        if let Some(true) = crate::gcd::has_common_factor(&q[0], &q[1]) {
            return Err(Error::Degenerate(
                "positive_dimensional: the two critical-system components share a \
                 nonconstant factor (exact gcd), so critical points form a curve"
                    .into(),
            ));
        }
    }
    let (region, region_certified) = search_region(rf, cfg)?;
    let (boxes, boxes_processed) = isolate_real_roots(rf, &region, cfg)?;
    let (roots, singulars) = classify_roots(rf, &boxes, cfg)?;
    hessian_nondegeneracy(rf, &roots)?;
    Ok(SolveReport {
        region,
        region_certified,
        roots,
        singulars,
        boxes_processed,
    })
}

// Small helper reused by tests and the pipeline.
pub(crate) trait ToF64Approx {
    fn to_f64_approx(&self) -> f64;
}

impl ToF64Approx for BigRational {
    fn to_f64_approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiled::CompiledSystem;
    use crate::poly::parse_poly;
    use num_traits::Zero;

    const TOY: &str = "-2*x1^2 + x1^4 - 2*x2^2 + 2*x1^2*x2^2 + x2^4";

    fn toy_rf(center: Vec<i64>) -> RoutingFunction {
        RoutingFunction::new(parse_poly(TOY, 2).unwrap(), center).unwrap()
    }

    #[test]
    fn isolates_circle_line_intersection() {
        let f1 = parse_poly("x1^2 + x2^2 - 25", 2).unwrap();
        let f2 = parse_poly("x1 - 3", 2).unwrap();
        let sys = CompiledSystem::compile(&[f1, f2]).unwrap();
        let region = Box_::around(&[0.0, 0.0], 10.0);
        let out = isolate_zeros(&sys, &region, 100_000, 1e-9);
        assert!(out.leftovers.is_empty());
        assert_eq!(out.certified.len(), 2);
        let mut centers: Vec<Vec<f64>> = out.certified.iter().map(|b| b.mid()).collect();
        centers.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((centers[0][0] - 3.0).abs() < 1e-9);
        assert!((centers[0][1] + 4.0).abs() < 1e-9);
        assert!((centers[1][1] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn isolates_root_on_bisection_gridline() {
        // The unique zero (0,0) sits exactly on every symmetric bisection
        // line; the asymmetric split plus test-box inflation must still
        // certify it (and only it).
        let f1 = parse_poly("x1", 2).unwrap();
        let f2 = parse_poly("x2", 2).unwrap();
        let sys = CompiledSystem::compile(&[f1, f2]).unwrap();
        let region = Box_::around(&[0.0, 0.0], 4.0);
        let out = isolate_zeros(&sys, &region, 100_000, 1e-9);
        assert!(out.leftovers.is_empty());
        assert_eq!(out.certified.len(), 1);
        let c = out.certified[0].mid();
        assert!(c[0].abs() < 1e-10 && c[1].abs() < 1e-10);
    }

    #[test]
    fn no_roots_means_empty() {
        let f1 = parse_poly("x1^2 + x2^2 + 1", 2).unwrap();
        let f2 = parse_poly("x1 - x2", 2).unwrap();
        let sys = CompiledSystem::compile(&[f1, f2]).unwrap();
        let out = isolate_zeros(&sys, &Box_::around(&[0.0, 0.0], 5.0), 100_000, 1e-9);
        assert!(out.certified.is_empty());
        assert!(out.leftovers.is_empty());
    }

    #[test]
    fn toy_shifted_center_full_solve() {
        let rf = toy_rf(vec![0, 1]);
        let report = solve_critical(&rf, &SolveConfig::default()).unwrap();
        assert!(report.region_certified);

        // Four routing points on the x2-axis, one singular point at the
        // origin.
        assert_eq!(report.roots.len(), 4);
        assert_eq!(report.singulars.len(), 1);

        let expected: [[f64; 2]; 4] = [
            [0.0, -5.543569751896865],
            [0.0, -0.6560685302000588],
            [0.0, 1.0],
            [0.0, 2.1996382725648423],
        ];
        for (root, want) in report.roots.iter().zip(expected.iter()) {
            assert!(
                (root.center[0] - want[0]).abs() < 1e-7
                    && (root.center[1] - want[1]).abs() < 1e-7,
                "root {:?} != expected {:?}",
                root.center,
                want
            );
        }
        // g at the exact critical point (0,1) is exactly 1.
        assert!((report.roots[2].g_value - 1.0).abs() < 1e-12);
        // The other max, per the prototype of this configuration.
        assert!((report.roots[3].g_value - 2.1846324).abs() < 1e-5);

        // The singular point rationalizes to the exact origin.
        let sing = &report.singulars[0];
        assert!(sing.center[0].abs() < 1e-9 && sing.center[1].abs() < 1e-9);
        let p = sing.rational.as_ref().expect("origin rationalizes");
        assert!(p.coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn toy_origin_center_is_degenerate() {
        let rf = toy_rf(vec![0, 0]);
        match solve_critical(&rf, &SolveConfig::default()) {
            Err(Error::Degenerate(msg)) => {
                assert!(
                    msg.contains("positive_dimensional"),
                    "diagnosis should identify the curve: {}",
                    msg
                );
            }
            other => panic!("expected degenerate, got {:?}", other.map(|r| r.roots.len())),
        }
    }

    #[test]
    fn stall_diagnosis_on_critical_curve() {
        // Bypass the exact probe and let the isolator hit its budget on
        // the genuinely positive-dimensional configuration.
        let rf = toy_rf(vec![0, 0]);
        let region = Box_::around(&[0.0, 0.0], 8.0);
        let cfg = SolveConfig {
            region_override: Some(region.clone()),
            max_boxes: 100_000,
            ..SolveConfig::default()
        };
        match isolate_real_roots(&rf, &region, &cfg) {
            Err(Error::Degenerate(msg)) => {
                assert!(
                    msg.contains("positive_dimensional"),
                    "expected curve diagnosis, got: {}",
                    msg
                );
            }
            Ok((boxes, _)) => panic!("must not certify a curve, got {} boxes", boxes.len()),
            Err(e) => panic!("unexpected error {:?}", e),
        }
    }

    #[test]
    fn hessian_certificate_passes_on_toy() {
        let rf = toy_rf(vec![0, 1]);
        let report = solve_critical(&rf, &SolveConfig::default()).unwrap();
        assert!(hessian_nondegeneracy(&rf, &report.roots).is_ok());
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        let r = rationalize(0.5, 1000).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(1), BigInt::from(2)));
        let r = rationalize(-0.6560685302, 10).map(|c| c.to_f64_approx());
        // No denominator <= 10 matches this irrational-looking value.
        assert!(r.is_none() || (r.unwrap() + 0.6560685302).abs() > 1e-9);
        let r = rationalize(3.8, 100).unwrap();
        assert_eq!(r, BigRational::new(BigInt::from(19), BigInt::from(5)));
        assert_eq!(
            rationalize(0.0, 10).unwrap(),
            BigRational::from_integer(0.into())
        );
    }

    #[test]
    fn newton_refine_converges() {
        let f1 = parse_poly("x1^2 + x2^2 - 25", 2).unwrap();
        let f2 = parse_poly("x1 - 3", 2).unwrap();
        let sys = CompiledSystem::compile(&[f1, f2]).unwrap();
        let p = newton_refine(&sys, &[2.5, 3.5], 50, 1e-12).unwrap();
        assert!((p[0] - 3.0).abs() < 1e-10);
        assert!((p[1] - 4.0).abs() < 1e-10);
    }
}

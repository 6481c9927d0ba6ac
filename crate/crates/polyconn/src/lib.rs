//! Connectivity queries in the complement of a real polynomial hypersurface.
//!
//! Given a squarefree polynomial `f` with integer (or rational) coefficients
//! in `n >= 2` variables and two rational points `p`, `q` with `f(p) != 0`
//! and `f(q) != 0`, this crate decides whether `p` and `q` lie in the same
//! connected component of the open set `{x : f(x) != 0}`.
//!
//! The method builds an auxiliary "routing function"
//!
//! ```text
//!     g = f^2 / U^gamma,      U = (x1-c1)^2 + ... + (xn-cn)^2 + 1,
//! ```
//!
//! with `gamma = deg(f) + 1` and an integer grid center `c`. The function
//! `g` is nonnegative, vanishes exactly on `{f = 0}`, and decays at
//! infinity, so every connected component of `{f != 0}` contains at least
//! one local maximum of `g`. The critical points of `g` away from `{f = 0}`
//! (its *routing points*) are the real solutions of the polynomial system
//!
//! ```text
//!     Q_i = 2 (d_i f) U - gamma f (d_i U),      i = 1..n,
//! ```
//!
//! that do not lie on `{f = 0}`. The pipeline is:
//!
//! 1. enumerate grid centers `c` in graded lexicographic order until the
//!    system above has finitely many real solutions, all with nonsingular
//!    Hessian ([`perturb`], [`solve`]);
//! 2. isolate those solutions with certified interval boxes ([`solve`]);
//! 3. compute Morse data (index, eigenpairs) at each routing point
//!    ([`eigen`]);
//! 4. trace steepest-ascent trajectories of `g` out of every saddle along
//!    its positive eigendirections; each trajectory terminates at another
//!    routing point ([`destination`]);
//! 5. close the resulting adjacency relation into an equivalence relation
//!    `M`; two routing points are in the same component of `{f != 0}` iff
//!    they are related ([`connect`]);
//! 6. answer a query `(p, q)` by tracing from each point to a routing point
//!    and consulting `M`.
//!
//! All root isolation is backed by interval arithmetic with outward
//! rounding and Krawczyk existence/uniqueness certificates; degenerate
//! configurations (positive-dimensional critical sets, singular Hessians)
//! are detected and answered by perturbing `c`, never by silently guessing.
//!
//! The binary target exposes the pipeline as `solve` / `query` / `trace` /
//! `info` subcommands; see the crate README.

pub mod cache;
pub mod cli;
pub mod compiled;
pub mod connect;
pub mod destination;
pub mod eigen;
pub mod error;
pub mod gcd;
pub mod interval;
pub mod linalg;
pub mod perturb;
pub mod pipeline;
pub mod poly;
pub mod routing;
pub mod scalar;
pub mod solve;

pub use error::Error;
pub use poly::{MultiPoly, RationalPoint, SquarefreeStatus};
pub use routing::RoutingFunction;

/// Floating-point scalar used by the concrete pipeline.
///
/// Numeric kernels (dense linear algebra, the Jacobi eigensolver, the
/// Runge-Kutta stepper, compiled polynomial evaluation) are generic over
/// [`scalar::Real`]; everything certified additionally relies on `f64`
/// interval arithmetic, so the assembled pipeline is pinned to `f64`.
pub type Scalar = f64;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

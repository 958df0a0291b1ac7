//! Generalized trigonometric, hyperbolic and Jacobian elliptic functions,
//! together with the Fourier/operator machinery that verifies when the
//! family `f_n(x, k) = sn_pq(2 n K_pq(k) x, k)` forms a basis of the
//! Lebesgue spaces `L^alpha(0, 1)`.
//!
//! The building blocks:
//!
//! * [`trig`] - `sin_pq`, `cos_pq`, `tan_pq`, their inverse integrals, and
//!   the half period `pi_pq`.
//! * [`hyper`] - `sinh_pq`, `cosh_pq`, `tanh_pq`.
//! * [`elliptic`] - the complete integral `K_pq(k)`, the functions
//!   `sn/cn/dn`, the p-Laplacian residual, and the `k -> 1` degeneration.
//! * [`analysis`] - monotonicity, convexity, symmetry and sandwich
//!   estimates for `K_pq(k)`.
//! * [`fourier`] - sine coefficients `tau_m` of `f_1` with certified tail
//!   bounds.
//! * [`operator`] - the isometries `M_m`, the operator `T = sum tau_m M_m`,
//!   its Neumann-series inverse, and expansion of grid functions in the
//!   `f_n` basis.
//! * [`basis`] - the decision procedures for each sufficient basis
//!   criterion and modulus-threshold root finding.

pub mod analysis;
pub mod basis;
pub mod elliptic;
pub mod error;
pub mod exponents;
pub mod fourier;
pub mod hyper;
pub mod operator;
pub mod quad;
mod reduce;
pub mod special;
pub mod trig;

pub use elliptic::{asn, complete_k, eval_elliptic, EllipticKind, EllipticParams, EllipticValue};
pub use error::{Error, Result};
pub use exponents::{ExponentPair, Tolerance};
pub use hyper::{eval_hyp, HypKind};
pub use special::beta;
pub use trig::{artanh_r, asin_pq, asin_r, eval_trig, pi_pq, TrigKind};
mod kernel;
mod num;

//! Exponent-pair domain type and quadrature tolerances.

use crate::error::{Error, Result};
use crate::special;
use serde::Serialize;

/// A validated pair of exponents `(p, q)` with `1 < p, q < infinity`,
/// together with the derived conjugate `p' = p/(p-1)`, the combined
/// exponent `r = max{p', q}`, and the cached half period
///
/// ```text
/// pi_pq = 2 * int_0^1 (1 - t^q)^(-1/p) dt = (2/q) B(1 - 1/p, 1/q).
/// ```
///
/// The half period is computed once at construction (closed form via
/// log-gamma), so sharing an `ExponentPair` across threads never recomputes
/// or mutates anything.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentPair {
    p: f64,
    q: f64,
    p_prime: f64,
    r: f64,
    half_period: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::domain(format!("p must lie in (1, inf), got {p}")));
        }
        if !q.is_finite() || q <= 1.0 {
            return Err(Error::domain(format!("q must lie in (1, inf), got {q}")));
        }
        let p_prime = p / (p - 1.0);
        let r = p_prime.max(q);
        let half_period = 2.0 / q * special::beta(1.0 - 1.0 / p, 1.0 / q)?;
        Ok(ExponentPair {
            p,
            q,
            p_prime,
            r,
            half_period,
        })
    }

    /// The pair `(r', r)`, for which the half period takes the form
    /// `(2/r) B(1/r, 1/r)`.
    pub fn symmetric(r: f64) -> Result<Self> {
        if !r.is_finite() || r <= 1.0 {
            return Err(Error::domain(format!("r must lie in (1, inf), got {r}")));
        }
        Self::new(r / (r - 1.0), r)
    }

    /// The dual pair `(q', p')` appearing in the complete-integral symmetry
    /// relation.
    pub fn dual(&self) -> Result<Self> {
        Self::new(self.q / (self.q - 1.0), self.p_prime)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p_prime(&self) -> f64 {
        self.p_prime
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// The half period `pi_pq`.
    pub fn half_period(&self) -> f64 {
        self.half_period
    }
}

/// Quadrature tolerances and the refinement cap used by the adaptive rules.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !abs_tol.is_finite() || abs_tol <= 0.0 {
            return Err(Error::domain("abs_tol must be positive"));
        }
        if !rel_tol.is_finite() || rel_tol <= 0.0 {
            return Err(Error::domain("rel_tol must be positive"));
        }
        Ok(Tolerance {
            abs_tol,
            rel_tol,
            max_subdivisions,
        })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 20,
        }
    }
}

//! Range reduction for the periodic extensions.
//!
//! Both the trigonometric and the elliptic families extend a principal
//! branch on `[0, Q]` (Q = quarter period) by the reflection
//! `f(2Q - x) = f(x)` and the antiperiod `f(x + 2Q) = -f(x)`, giving a
//! `4Q`-periodic sine-like function and the matching cosine-like companion.

/// Where a reduced argument landed and the signs it picked up.
#[derive(Debug, Clone, Copy)]
pub struct Reduced {
    /// Argument mapped into the principal branch `[0, Q]`.
    pub principal: f64,
    /// Sign of the sine-like function.
    pub sign_s: f64,
    /// Sign of the cosine-like function.
    pub sign_c: f64,
}

/// Reduce `x` modulo the full period `4 * quarter`, tracking reflection signs.
pub fn reduce(x: f64, quarter: f64) -> Reduced {
    let period = 4.0 * quarter;
    let mut u = x % period;
    if u < 0.0 {
        u += period;
    }
    // Quadrant bookkeeping: s follows the sine pattern + + - -, c the
    // cosine pattern + - - +.
    if u <= quarter {
        Reduced {
            principal: u,
            sign_s: 1.0,
            sign_c: 1.0,
        }
    } else if u <= 2.0 * quarter {
        Reduced {
            principal: 2.0 * quarter - u,
            sign_s: 1.0,
            sign_c: -1.0,
        }
    } else if u <= 3.0 * quarter {
        Reduced {
            principal: u - 2.0 * quarter,
            sign_s: -1.0,
            sign_c: -1.0,
        }
    } else {
        Reduced {
            principal: period - u,
            sign_s: -1.0,
            sign_c: 1.0,
        }
    }
}

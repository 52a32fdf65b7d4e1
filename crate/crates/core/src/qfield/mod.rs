//! Exact arithmetic in Q, Q(q), Q(q)[x] and Q(q)(x).
//!
//! `sigma_q` substitutes `x -> q x`, `delta_x = x d/dx` and `delta_q = q d/dq`.
//! They satisfy `sigma_q delta_x = delta_x sigma_q` and
//! `delta_q sigma_q = sigma_q (delta_x + delta_q)`.

mod polyx;
mod qpoly;
mod qrat;
mod ratx;
mod resultant;

pub use polyx::{interpolate, resultant, resultant_x_direct, PolyX};
pub use resultant::resultant_x;
pub use qpoly::QPoly;
pub use qrat::QRat;
pub use ratx::RatX;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: input must be nonzero")]
    ZeroInput(&'static str),
}

/// Returns `n` with `mu = q^n`, or `None` when `mu` is not a power of `q`.
pub fn q_power_test(mu: &QRat) -> Result<Option<i64>, FieldError> {
    mu.q_power_test()
}

//! Exact computer algebra for linear q-difference equations over Q(q)(x).
//!
//! The crate decides when solutions of `y(qx) = a(x) y(x)` are differentially
//! algebraic, solves rational q-telescoping problems, searches integrability
//! certificates, and checks the theta-function and jet-prolongation identities
//! that these decisions rest on. Everything is exact; there is no floating point.

pub mod ellring;
pub mod expr;
pub mod integrability;
pub mod linalg;
pub mod mpoly;
pub mod orbit;
pub mod prolong;
pub mod qfield;
pub mod rank1;
pub mod ring;
pub mod telescope;
pub mod theta;

pub use expr::{parse_matrix, parse_qrat, parse_ratx, ParseError};
pub use linalg::{solve_linear, Matrix};
pub use mpoly::MPoly;
pub use qfield::{q_power_test, FieldError, PolyX, QPoly, QRat, RatX};
pub use ring::{Field, Ring};

//! Arithmetic of genus-2 hyperelliptic Jacobians over small odd prime fields,
//! together with the additive-walk generator `W_n = nD + W_0` and the
//! linear-complexity machinery used to analyse its coordinate streams.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`] — exact arithmetic in `F_p` and its quadratic extension `F_p²`,
//! - [`poly`] — dense univariate polynomials over those fields,
//! - [`curve`] — the curve `Y² = f(X)` with `f` monic quintic, point
//!   enumeration and Hasse–Weil bookkeeping,
//! - [`jacobian`] — Mumford representation and Cantor's group law,
//! - [`grant`] — the projective `P^8` model of the Jacobian: coordinate
//!   embedding, the 13+1 defining equations, and the explicit addition law
//!   on the affine chart,
//! - [`generator`] — the walk itself and coordinate output streams,
//! - [`lincomp`] — Berlekamp–Massey, complexity profiles, and the lower-bound
//!   formula for the streams.
//!
//! Everything is exact modular arithmetic; there are no floats anywhere in
//! the math path. All values are immutable after construction and safe to
//! share across threads.

pub mod curve;
mod error;
pub mod field;
pub mod generator;
pub mod grant;
pub mod jacobian;
pub mod lincomp;
pub mod poly;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

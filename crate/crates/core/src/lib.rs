//! Jacobi theta functions with certified truncation error, and the sharp
//! Gabor frame bounds of the standard Gaussian window on separable lattices
//! of integer redundancy.
//!
//! The crate is organised bottom-up:
//!
//! - [`theta`] evaluates θ₃, θ₄, θ_o and Θ(z, is) together with their first
//!   two derivatives in `s`, each value carrying a rigorous error bound.
//! - [`frame`] turns theta values into the lower and upper frame bounds
//!   `A(β)`, `B(β)` for redundancy `n = 1/(αβ)`.
//! - [`oracle`] holds brute-force references: naive partial sums and a
//!   direct two-dimensional evaluation of Janssen's function.
//! - [`verify`] runs the log-convexity, monotonicity and extremality
//!   statements as numerical check suites.
//! - [`sweep`] tabulates bounds over `β`, locates the optimal lattice and
//!   writes CSV/SVG artifacts.
//! - [`cli`] backs the `gabor-theta` binary.

pub mod cli;
pub mod error;
pub mod frame;
pub mod oracle;
pub mod sweep;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};
pub use frame::{frame_bounds, frame_bounds_even, frame_bounds_odd, FrameBounds, LatticeParams, Parity};
pub use oracle::{GridSpec, Scale};
pub use theta::{eval_theta, DerivativeOrder, Method, ThetaFamily, ThetaValue};

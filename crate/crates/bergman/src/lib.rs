//! Diagonal Bergman kernels for five families of planar domains and the
//! Levi form of `log K` with respect to the family parameter.
//!
//! The crate provides:
//!
//! * [`elliptic`] — complete/incomplete elliptic integrals, Jacobi sn/cn/dn
//!   for complex argument, Weierstrass P and zeta on rectangular lattices;
//! * [`families`] — the annulus, disc, slit-disc, rectangle and half-strip
//!   families, their conformal maps and closed-form diagonal kernels;
//! * [`levi`] — finite-difference and closed-form Levi forms in the
//!   parameter, plus boundary-approach probes for the limit theorems;
//! * [`oracles`] — independent brute-force cross-checks (Laurent series,
//!   Gram-Schmidt, quadrature, lattice sums) used only by tests and the
//!   self-test surface.

pub mod elliptic;
pub mod error;
pub mod families;
pub mod guide;
pub mod levi;
pub mod oracles;

pub use error::{Error, Result};

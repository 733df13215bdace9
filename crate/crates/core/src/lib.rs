//! Geodesic model spaces, order-compatible semigroups, and monotone
//! fixed-point schemes.
//!
//! The crate is organized bottom-up:
//!
//! * [`geometry`] — constant-curvature model spaces, geodesics, comparison
//!   triangles, and the convexity modulus;
//! * [`order`] — partial orders on those spaces plus sampled validation of
//!   the closed-interval and interpolation-compatibility axioms;
//! * [`semigroup`] — one-parameter families of order-preserving
//!   nonexpansive maps with a closed-form instance gallery and sampled
//!   axiom validation;
//! * [`schemes`] — the explicit interpolation scheme, the implicit
//!   anchored scheme with its inner Picard loop, and uniform asymptotic
//!   regularity estimates;
//! * [`analysis`] — asymptotic centers, segment projection, and
//!   fixed-point-set certificates;
//! * [`config`] — the experiment configuration consumed by the `catk`
//!   binary.

pub mod analysis;
pub mod config;
pub mod csvio;
pub mod error;
pub mod geometry;
pub mod numfmt;
pub mod order;
pub mod report;
pub mod schemes;
pub mod semigroup;
pub mod tol;

pub use error::{Error, Result};

//! Centralized numeric tolerances.
//!
//! Every tolerance used by more than one module lives here so that the
//! relationships between them stay visible: point invariants are tightest,
//! order comparisons sit just above roundoff, and sampled certificates get
//! the loosest budgets.

/// Point-invariant defect allowed on sphere norms and hyperboloid Minkowski
/// norms.
pub const POINT_INVARIANT_EPS: f64 = 1e-12;

/// Slack allowed in coordinatewise and arc-coordinate order comparisons.
pub const ORDER_EPS: f64 = 1e-12;

/// Two points are treated as equal when their distance is below this.
pub const POINT_EQ_EPS: f64 = 1e-12;

/// Distance from a point to a segment beyond which arc-order comparisons
/// refuse the input.
pub const SEGMENT_MEMBERSHIP_EPS: f64 = 1e-9;

/// Law-of-cosines arguments may exceed [-1, 1] by at most this before the
/// triple is declared unrealizable; anything closer is clamped.
pub const TRIG_CLAMP_EPS: f64 = 1e-12;

/// Comparison-triangle vertices must reproduce the requested side lengths
/// to this accuracy.
pub const TRIANGLE_SIDE_EPS: f64 = 1e-10;

/// Comparison-distance slack below this magnitude counts as zero; sampled
/// slack certificates require slack >= -CAT_SLACK_FLOOR.
pub const CAT_SLACK_FLOOR: f64 = 1e-9;

/// Relative tolerance (in units of the lattice step) for deciding whether a
/// time lies on a discrete index lattice.
pub const DISCRETE_INDEX_EPS: f64 = 1e-9;

/// Sampled semigroup-axiom checks (flow property, order preservation,
/// nonexpansiveness) use this additive budget.
pub const AXIOM_EPS: f64 = 1e-9;

/// Residual below which a point counts as fixed for preconditions.
pub const FIX_RESIDUAL_EPS: f64 = 1e-10;

/// Residual bound certified along segments of asymptotically regular points.
pub const AR_FIX_EPS: f64 = 1e-8;

/// Angle defect allowed in projection right-angle certificates.
pub const ANGLE_EPS: f64 = 1e-6;

/// Arc-parameter resolution for segment projection.
pub const PROJECTION_PARAM_EPS: f64 = 1e-12;

/// Near-antipodal margin (radians) at which sphere geodesics are rejected
/// as numerically non-unique.
pub const ANTIPODAL_MARGIN: f64 = 1e-9;

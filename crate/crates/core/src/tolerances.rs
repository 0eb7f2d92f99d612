//! Shared numeric tolerances.
//!
//! Every threshold used by the verification harness and the norm
//! estimators is defined here. Order and cone predicates are exact
//! (no tolerance): they compare floats that tests and samplers
//! construct exactly. The remaining computations are short
//! max/multiply chains, so rounding stays many orders of magnitude
//! below these bounds.

/// Algebraic operator identities (monotonicity, subadditivity,
/// homogeneity, the fundamental inequality), relative to the scale of
/// the compared quantities.
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Comparisons between empirical norm estimates and exact formulas,
/// absolute. The deterministic probes attain the exact values, so the
/// slack only covers rescaling rounding in the pair sampler.
pub const ESTIMATE_TOL: f64 = 1e-12;

/// Max-plus conjugation identity, relative.
pub const CONJUGATION_REL_TOL: f64 = 1e-12;

/// Replaying a stored witness must reproduce the reported value to
/// this relative accuracy.
pub const WITNESS_REPLAY_REL_TOL: f64 = 1e-12;

/// Positive homogeneity on non-dyadic scalars, relative. Dyadic
/// scalars (0, 0.5, 1, 2) scale exactly in binary floating point.
pub const HOMOGENEITY_REL_TOL: f64 = 1e-14;

/// Interval-to-grid snap: a grid point within `GRID_SNAP_FACTOR`
/// mesh widths of an interval endpoint counts as inside the interval.
pub const GRID_SNAP_FACTOR: f64 = 1e-9;

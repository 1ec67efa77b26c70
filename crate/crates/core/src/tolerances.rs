//! Tolerances shared across modules.

/// `|det g − 1|` accepted for a group element.
pub const DET: f64 = 1e-10;

/// Trace accepted by the exponential, relative to `1 + ‖A‖_F`.
pub const TRACE: f64 = 1e-12;

/// Below this `|λ|` the exponential uses the even series for `sinh λ / λ`.
pub const SINHC_SERIES: f64 = 1e-4;

/// Slice condition `st − |b|² = 1`, relative to `max(1, st)`.
pub const SLICE: f64 = 1e-9;

/// `st ≥ 1 − COORDS` for invariant coordinates.
pub const COORDS: f64 = 1e-9;

/// Below this value of `sinh 2h` the `K`-phase is set to zero.
pub const DEGENERATE_H: f64 = 1e-8;

/// Decompositions with a larger reconstruction residual are rejected.
pub const RECONSTRUCTION: f64 = 1e-7;

/// Boundary band for bundle membership.
pub const BOUNDARY: f64 = 1e-10;

/// Second differences, monotonicity steps and containment gaps.
pub const GRID: f64 = 1e-10;

/// `max |δ|` below which `δ` counts as identically zero.
pub const DELTA_ZERO: f64 = 1e-12;

/// Normalization check `|ρ(0) − 1|`.
pub const NORMALIZED: f64 = 1e-12;

/// A submean margin below `−REFUTE` refutes plurisubharmonicity.
pub const REFUTE: f64 = 1e-5;

//! Numerical tolerances shared across the crate.

/// Relative tolerance for membership in the cubic `x² + y² + z² = xyz`.
pub const VARIETY_EPS: f64 = 1e-9;

/// A trace `t` counts as numerically real when `|Im t| <= REAL_EPS`.
pub const REAL_EPS: f64 = 1e-9;

/// Traces whose modulus would exceed this are reported as saturated.
pub const SATURATION: f64 = 1e150;

/// Default small-trace threshold; values above it are not certified.
pub const DEFAULT_THRESHOLD: f64 = 0.5;

/// Default floor at which the reduction descent stops.
pub const DEFAULT_FLOOR: f64 = 1e-12;

/// Default half-width of the neighbor search window.
pub const DEFAULT_WINDOW: i64 = 8;

/// Largest fan index accepted by closed-form evaluation.
pub const MAX_FAN_INDEX: i64 = 1 << 44;

/// True when `t` lies numerically in the real interval `[-2, 2]`.
pub fn is_real_interval(t: num_complex::Complex64) -> bool {
    t.im.abs() <= REAL_EPS && t.re.abs() <= 2.0 + REAL_EPS
}

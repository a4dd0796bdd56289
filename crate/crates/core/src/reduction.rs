//! Trace reduction: walking from a vertex of small trace to a neighbor of
//! strictly smaller trace, repeatedly.
//!
//! For `|x| < 0.5` with `x` not real, some neighbor in the fan of `x` always
//! has smaller trace modulus; [`LemmaBoundReport`] exposes the intermediate
//! quantities that certify this.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgebraError, CharacterTriple, FanCoefficients};
use crate::farey::{FareyError, Slope};
use crate::tol::{is_real_interval, MAX_FAN_INDEX};

/// `√3.75`, the constant in the coefficient and dichotomy bounds.
pub const SQRT_3_75: f64 = 1.936_491_673_103_708_5;

/// Upper bound on `|λ|` when `|x| < 0.5`: `(0.5 + √4.25)/2 ≈ 1.28078`,
/// rounded up.
pub const R_BOUND: f64 = 1.2808;

/// Bound on `|cos θ|` when `|x| < 0.5`.
pub const COS_THETA_BOUND: f64 = 0.25;

/// Most indices the certified extension of [`min_neighbor_search`] adds on
/// each side of the window.
pub const EXTENSION_LIMIT: i64 = 1 << 12;

/// A neighbor counts as smaller only below `(1 − DECREASE_MARGIN)·|x|`, so
/// rounding noise on equal traces is not a step.
pub const DECREASE_MARGIN: f64 = 1e-12;

/// Least effective floor of the descent. Below it fan indices reach `~1e7`
/// and double precision no longer resolves the next step, so lower requested
/// floors are raised to this.
pub const NUMERIC_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ReductionError {
    #[error("invalid triple: {0}")]
    InvalidTriple(AlgebraError),
    #[error("vertex trace {x} is elliptic: no strictly monotone fan")]
    EllipticVertex { x: Complex64 },
    #[error("search window must be at least 1, got {0}")]
    InvalidWindow(i64),
    #[error("threshold must be positive, got {0}")]
    InvalidThreshold(f64),
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Farey(#[from] FareyError),
}

impl From<AlgebraError> for ReductionError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::EllipticVertex { x } => ReductionError::EllipticVertex { x },
            other => ReductionError::Algebra(other),
        }
    }
}

pub(crate) fn is_elliptic_fan(fan: &FanCoefficients) -> bool {
    is_real_interval(fan.x) || fan.r() <= 1.0 + 1e-12
}

/// `|y_n|` or infinity when the closed form saturates.
fn modulus_at(fan: &FanCoefficients, n: i64) -> (f64, Complex64) {
    match fan.trace(n) {
        Ok(v) => (v.norm(), v),
        Err(AlgebraError::MagnitudeOverflow { saturated }) => (f64::INFINITY, saturated),
        Err(_) => (f64::INFINITY, Complex64::new(f64::INFINITY, 0.0)),
    }
}

/// Index of the fan's valley, where `|A λ^n|` and `|D λ^-n|` balance.
pub(crate) fn valley_index(fan: &FanCoefficients) -> i64 {
    let log_r = fan.r().ln();
    let n0 = ((fan.d.norm().ln() - fan.a.norm().ln()) / (2.0 * log_r)).round();
    if n0.is_finite() {
        n0.clamp(-(MAX_FAN_INDEX as f64), MAX_FAN_INDEX as f64) as i64
    } else {
        0
    }
}

/// The neighbor of least trace modulus in the fan `fc`.
///
/// Scans `window` indices either side of the valley, then keeps extending
/// each side until the lower envelope `|A| r^n − |D| r^-n` (or its mirror)
/// exceeds the best modulus found, which certifies that no index further
/// out can do better. The extension stops after [`EXTENSION_LIMIT`] indices
/// per side; only fans with `r` within about `1e-3` of 1 get that far.
/// The returned trace is re-evaluated in closed form. Fans
/// with a vanishing coefficient are scanned on `[-window, window]` only.
/// Ties go to the smallest index.
pub fn min_neighbor_search(
    fc: &FanCoefficients,
    window: i64,
) -> Result<(i64, Complex64), ReductionError> {
    if window < 1 {
        return Err(ReductionError::InvalidWindow(window));
    }
    if is_elliptic_fan(fc) {
        return Err(ReductionError::EllipticVertex { x: fc.x });
    }
    let (a_zero, d_zero) = fc.zero_flags();
    let center = if a_zero || d_zero { 0 } else { valley_index(fc) };
    let lo = (center - window).max(-MAX_FAN_INDEX);
    let hi = (center + window).min(MAX_FAN_INDEX);

    let mut best_n = lo;
    let (mut best_mod, mut best_val) = modulus_at(fc, lo);
    for n in lo + 1..=hi {
        let (m, v) = modulus_at(fc, n);
        if m < best_mod {
            (best_n, best_mod, best_val) = (n, m, v);
        }
    }
    if a_zero || d_zero {
        return Ok((best_n, best_val));
    }

    // Outward from the window both directions grow, so the three-term
    // recurrence is stable there.
    let (r, a, d) = (fc.r(), fc.a.norm(), fc.d.norm());
    let cap_hi = (hi + EXTENSION_LIMIT).min(MAX_FAN_INDEX);
    let (mut prev, mut cur) = (modulus_at(fc, hi - 1).1, modulus_at(fc, hi).1);
    let mut rn = (hi as f64 * r.ln()).exp();
    let mut n = hi;
    while n < cap_hi && a * rn * r - d / (rn * r) <= best_mod {
        (prev, cur) = (cur, fc.x * cur - prev);
        n += 1;
        rn *= r;
        if cur.norm() < best_mod {
            (best_n, best_mod) = (n, cur.norm());
        }
    }
    let cap_lo = (lo - EXTENSION_LIMIT).max(-MAX_FAN_INDEX);
    let (mut prev, mut cur) = (modulus_at(fc, lo + 1).1, modulus_at(fc, lo).1);
    let mut rn = (lo as f64 * r.ln()).exp();
    let mut n = lo;
    while n > cap_lo && d / (rn / r) - a * rn / r <= best_mod {
        (prev, cur) = (cur, fc.x * cur - prev);
        n -= 1;
        rn /= r;
        // `<=` keeps the smallest index on ties while walking down.
        if cur.norm() <= best_mod {
            (best_n, best_mod) = (n, cur.norm());
        }
    }
    best_val = modulus_at(fc, best_n).1;
    Ok((best_n, best_val))
}

/// One decreasing move of the descent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionStep {
    /// The new vertex of least trace; `None` once slope entries outgrow
    /// `2^60`.
    pub vertex: Option<Slope>,
    #[serde(with = "crate::complex::reim")]
    pub trace: Complex64,
    /// Traces at the triangle reached by this step.
    pub triple: CharacterTriple,
    /// Fan index of `vertex` around the previous vertex, counted from the
    /// first of its two triangle neighbors.
    pub chosen_n: i64,
}

/// A vertex together with its trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexTrace {
    pub vertex: Slope,
    #[serde(with = "crate::complex::reim")]
    pub trace: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReductionStatus {
    /// The least trace is numerically real and in `[-2, 2]`.
    ReachedRealInterval,
    ReachedFloor,
    NoDecrease,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionOutcome {
    pub start: CharacterTriple,
    pub steps: Vec<ReductionStep>,
    pub status: ReductionStatus,
    /// `None` once slope entries outgrow `2^60`.
    pub final_vertex: Option<Slope>,
    #[serde(with = "crate::complex::reim")]
    pub final_trace: Complex64,
    /// Realness is decided up to `REAL_EPS`; set whenever the status is
    /// `ReachedRealInterval`.
    pub numerically_real: bool,
    /// First vertex on the path whose trace is non-real with modulus below
    /// the threshold.
    pub below_threshold: Option<VertexTrace>,
    pub threshold: f64,
}

impl ReductionOutcome {
    /// Least trace modulus seen along the path.
    pub fn min_modulus(&self) -> f64 {
        self.final_trace.norm()
    }
}

/// Parameters of [`reduce_trace`] other than the starting triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionParams {
    pub threshold: f64,
    pub floor: f64,
    pub max_steps: usize,
    pub window: i64,
}

impl Default for ReductionParams {
    fn default() -> Self {
        ReductionParams {
            threshold: crate::tol::DEFAULT_THRESHOLD,
            floor: crate::tol::DEFAULT_FLOOR,
            max_steps: 10_000,
            window: crate::tol::DEFAULT_WINDOW,
        }
    }
}

/// Greedy descent through the Farey graph toward smaller traces.
///
/// At each step the vertex of least trace modulus in the current triangle
/// is taken as `X_j`, and the triangle is re-anchored around `X_j` at its
/// neighbor of least trace, provided that is strictly smaller than `|x_j|`.
pub fn reduce_trace(
    t: &CharacterTriple,
    threshold: f64,
    floor: f64,
    max_steps: usize,
) -> Result<ReductionOutcome, ReductionError> {
    reduce_trace_with(
        t,
        ReductionParams {
            threshold,
            floor,
            max_steps,
            ..ReductionParams::default()
        },
    )
}

pub fn reduce_trace_with(
    t: &CharacterTriple,
    params: ReductionParams,
) -> Result<ReductionOutcome, ReductionError> {
    if !t.is_on_variety() {
        let [x, y, z] = t.coords();
        return Err(ReductionError::InvalidTriple(
            CharacterTriple::new(x, y, z).unwrap_err(),
        ));
    }
    if !(params.threshold > 0.0) {
        return Err(ReductionError::InvalidThreshold(params.threshold));
    }
    let mut coords = t.coords();
    let mut slopes = Some([Slope::INFINITY, Slope::ZERO, Slope::ONE]);
    let mut steps = Vec::new();
    let mut below_threshold = None;

    let status = loop {
        let i = CharacterTriple::from_coords_unchecked(coords).min_index();
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let x = coords[i];
        if below_threshold.is_none() && x.norm() < params.threshold && !is_real_interval(x) {
            below_threshold = slopes.map(|s| VertexTrace {
                vertex: s[i],
                trace: x,
            });
        }
        if is_real_interval(x) {
            break ReductionStatus::ReachedRealInterval;
        }
        if x.norm() < params.floor.max(NUMERIC_FLOOR) {
            break ReductionStatus::ReachedFloor;
        }
        if steps.len() >= params.max_steps {
            break ReductionStatus::StepLimit;
        }
        let fan = FanCoefficients::solve(x, coords[j], coords[k])?;
        let (n_star, y_star) = min_neighbor_search(&fan, params.window)?;
        if !(y_star.norm() < x.norm() * (1.0 - DECREASE_MARGIN)) {
            break ReductionStatus::NoDecrease;
        }
        let (m_next, next) = modulus_at(&fan, n_star + 1);
        let (m_prev, prev) = modulus_at(&fan, n_star - 1);
        let (other_n, other) = if m_next <= m_prev {
            (n_star + 1, next)
        } else {
            (n_star - 1, prev)
        };
        slopes = slopes.and_then(|mut s| {
            let fan_slope = fan_slopes(s[i], s[j], s[k]);
            s[j] = fan_slope(n_star).ok()?;
            s[k] = fan_slope(other_n).ok()?;
            Some(s)
        });
        coords[j] = y_star;
        coords[k] = other;
        steps.push(ReductionStep {
            vertex: slopes.map(|s| s[j]),
            trace: y_star,
            triple: CharacterTriple::from_coords_unchecked(coords),
            chosen_n: n_star,
        });
    };

    let i = CharacterTriple::from_coords_unchecked(coords).min_index();
    Ok(ReductionOutcome {
        start: *t,
        steps,
        status,
        final_vertex: slopes.map(|s| s[i]),
        final_trace: coords[i],
        numerically_real: status == ReductionStatus::ReachedRealInterval,
        below_threshold,
        threshold: params.threshold,
    })
}

/// Slope of the `n`-th neighbor of `x` in the fan whose indices 0 and 1 are
/// `y0`, `y1`.
pub(crate) fn fan_slopes(
    x: Slope,
    y0: Slope,
    y1: Slope,
) -> impl Fn(i64) -> Result<Slope, FareyError> {
    let (vx, v0) = (x.vector(), y0.vector());
    let step = if Slope::from_vector(v0.0 + vx.0, v0.1 + vx.1) == Ok(y1) {
        1
    } else {
        -1
    };
    move |n: i64| {
        let m = n as i128 * step;
        Slope::from_vector(v0.0 + m * vx.0, v0.1 + m * vx.1)
    }
}

/// Quantities behind the small-trace descent, computed at the vertex of
/// least trace after normalizing its fan to `1 <= |D/A| <= |λ|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaBoundReport {
    #[serde(with = "crate::complex::reim")]
    pub x: Complex64,
    pub r: f64,
    pub cos_theta: f64,
    pub abs_a: f64,
    /// `|x|/√3.75`
    pub bound_a: f64,
    /// `|1 + D/A|`
    pub dichotomy_first: f64,
    /// `|λ + D/(Aλ)|`
    pub dichotomy_second: f64,
    /// `min(|y_0|, |y_1|)/|x|` in the normalized fan.
    pub min_y01_over_x: f64,
}

impl LemmaBoundReport {
    /// Whether the bounds are asserted for this `x`: `|x| < 0.5` and not real.
    pub fn applies(&self) -> bool {
        self.x.norm() < 0.5 && self.x.im != 0.0
    }

    /// Names of the bounds that fail; empty when all hold or none apply.
    pub fn violations(&self) -> Vec<&'static str> {
        if !self.applies() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if !(self.r > 1.0 && self.r < R_BOUND) {
            out.push("1 < r < 1.2808");
        }
        if !(self.cos_theta.abs() < COS_THETA_BOUND) {
            out.push("-0.25 < cos theta < 0.25");
        }
        if !(self.abs_a < self.bound_a) {
            out.push("|A| < |x|/sqrt(3.75)");
        }
        if !(self.dichotomy_first < SQRT_3_75 || self.dichotomy_second < SQRT_3_75) {
            out.push("|1 + D/A| < sqrt(3.75) or |lambda + D/(A lambda)| < sqrt(3.75)");
        }
        if !(self.min_y01_over_x < 1.0) {
            out.push("min(|y0|, |y1|) < |x|");
        }
        out
    }
}

pub fn lemma_bound_report(t: &CharacterTriple) -> Result<LemmaBoundReport, ReductionError> {
    let coords = t.coords();
    let i = t.min_index();
    let x = coords[i];
    let fan = FanCoefficients::solve(x, coords[(i + 1) % 3], coords[(i + 2) % 3])?.normalize()?;
    let ratio = fan.d / fan.a;
    let lambda = fan.lambda;
    Ok(LemmaBoundReport {
        x,
        r: fan.r(),
        cos_theta: lambda.arg().cos(),
        abs_a: fan.a.norm(),
        bound_a: x.norm() / SQRT_3_75,
        dichotomy_first: (1.0 + ratio).norm(),
        dichotomy_second: (lambda + ratio / lambda).norm(),
        min_y01_over_x: fan.y0().norm().min(fan.y1().norm()) / x.norm(),
    })
}

/// `0 < |trace| < 1`: a simple closed curve with such a trace forces the
/// representation to be non-discrete.
pub fn jorgensen_flag(trace: Complex64) -> bool {
    let m = trace.norm();
    m > 0.0 && m < 1.0
}

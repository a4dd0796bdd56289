//! Algebra on the cubic `x² + y² + z² = xyz`.
//!
//! Triples are the trace coordinates `(tr X, tr Y, tr XY)` of a character.
//! Around a fixed vertex `X` the traces of its successive Farey neighbors
//! `Y_n` form a two-sided linear recurrence `y_{n+1} = x y_n - y_{n-1}`, whose
//! closed form `y_n = A λ^n + D λ^-n` is carried by [`FanCoefficients`].

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::Reim;
use crate::tol::{MAX_FAN_INDEX, SATURATION, VARIETY_EPS};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("triple is off the variety: residual {residual:e} exceeds {tolerance:e}")]
    OffVariety { residual: f64, tolerance: f64 },
    #[error("trace {} is parabolic (x = ±2); eigenvalues coincide", Reim(*.x))]
    DegenerateEigenvalue { x: Complex64 },
    #[error("trace {} lies in [-2, 2]; its eigenvalues have unit modulus", Reim(*.x))]
    EllipticVertex { x: Complex64 },
    #[error("fan coefficient vanishes (A = 0: {a_zero}, D = 0: {d_zero})")]
    ZeroCoefficient { a_zero: bool, d_zero: bool },
    #[error("neighbor trace exceeds {SATURATION:e}; saturated to {}", Reim(*.saturated))]
    MagnitudeOverflow { saturated: Complex64 },
    #[error("fan index {n} is outside the supported range")]
    IndexOutOfRange { n: i64 },
}

/// One of the three trace coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coordinate {
    X,
    Y,
    Z,
}

impl Coordinate {
    pub const ALL: [Coordinate; 3] = [Coordinate::X, Coordinate::Y, Coordinate::Z];

    pub fn index(self) -> usize {
        match self {
            Coordinate::X => 0,
            Coordinate::Y => 1,
            Coordinate::Z => 2,
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Coordinate::X => "X",
            Coordinate::Y => "Y",
            Coordinate::Z => "Z",
        };
        f.write_str(s)
    }
}

/// `|x² + y² + z² − xyz|`.
pub fn variety_residual(x: Complex64, y: Complex64, z: Complex64) -> f64 {
    (x * x + y * y + z * z - x * y * z).norm()
}

fn variety_tolerance(x: Complex64, y: Complex64, z: Complex64) -> f64 {
    VARIETY_EPS * (1.0 + x.norm_sqr() + y.norm_sqr() + z.norm_sqr())
}

/// A point `(x, y, z)` of the cubic, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct CharacterTriple {
    coords: [Complex64; 3],
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    #[serde(with = "crate::complex::reim")]
    x: Complex64,
    #[serde(with = "crate::complex::reim")]
    y: Complex64,
    #[serde(with = "crate::complex::reim")]
    z: Complex64,
}

impl TryFrom<RawTriple> for CharacterTriple {
    type Error = AlgebraError;

    fn try_from(raw: RawTriple) -> Result<Self, Self::Error> {
        CharacterTriple::new(raw.x, raw.y, raw.z)
    }
}

impl From<CharacterTriple> for RawTriple {
    fn from(t: CharacterTriple) -> Self {
        RawTriple {
            x: t.x(),
            y: t.y(),
            z: t.z(),
        }
    }
}

impl CharacterTriple {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Result<Self, AlgebraError> {
        let residual = variety_residual(x, y, z);
        let tolerance = variety_tolerance(x, y, z);
        // `!(a <= b)` also rejects NaN.
        if !(residual <= tolerance) {
            return Err(AlgebraError::OffVariety {
                residual,
                tolerance,
            });
        }
        Ok(CharacterTriple { coords: [x, y, z] })
    }

    /// Builds a triple without checking the variety equation.
    ///
    /// Intended for values produced by exact-in-principle operations (flips,
    /// fan evaluation) whose rounding drift has already been accounted for.
    pub fn from_coords_unchecked(coords: [Complex64; 3]) -> Self {
        CharacterTriple { coords }
    }

    /// Real-valued convenience constructor.
    pub fn real(x: f64, y: f64, z: f64) -> Result<Self, AlgebraError> {
        Self::new(x.into(), y.into(), z.into())
    }

    /// The triple with `x` and `y` given and `z` the chosen root of the cubic.
    pub fn from_xy(x: Complex64, y: Complex64, plus_root: bool) -> Self {
        let (zp, zm) = solve_third_trace(x, y);
        CharacterTriple {
            coords: [x, y, if plus_root { zp } else { zm }],
        }
    }

    pub fn x(&self) -> Complex64 {
        self.coords[0]
    }

    pub fn y(&self) -> Complex64 {
        self.coords[1]
    }

    pub fn z(&self) -> Complex64 {
        self.coords[2]
    }

    pub fn coords(&self) -> [Complex64; 3] {
        self.coords
    }

    pub fn get(&self, c: Coordinate) -> Complex64 {
        self.coords[c.index()]
    }

    pub fn residual(&self) -> f64 {
        variety_residual(self.x(), self.y(), self.z())
    }

    pub fn is_on_variety(&self) -> bool {
        self.residual() <= variety_tolerance(self.x(), self.y(), self.z())
    }

    /// Index of the coordinate of least modulus (first one on ties).
    pub fn min_index(&self) -> usize {
        let mut best = 0;
        for i in 1..3 {
            if self.coords[i].norm() < self.coords[best].norm() {
                best = i;
            }
        }
        best
    }
}

impl fmt::Display for CharacterTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}; {}; {})",
            Reim(self.x()),
            Reim(self.y()),
            Reim(self.z())
        )
    }
}

/// Roots of `s² − b s + c = 0` as `(plus, minus)` with
/// `plus = (b + √(b² − 4c))/2` for the principal square root.
///
/// The larger-modulus root is computed directly and the other from the
/// product `c`, which avoids cancellation.
fn quadratic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let sqrt_disc = (b * b - 4.0 * c).sqrt();
    let plus_is_large = (b.conj() * sqrt_disc).re >= 0.0;
    let large = if plus_is_large {
        (b + sqrt_disc) * 0.5
    } else {
        (b - sqrt_disc) * 0.5
    };
    let small = if large.norm() > 0.0 {
        c / large
    } else {
        Complex64::new(0.0, 0.0)
    };
    if plus_is_large {
        (large, small)
    } else {
        (small, large)
    }
}

/// Both values of `z` completing `(x, y, z)` to a point of the cubic, returned
/// as `(plus, minus)` roots of `z² − xy z + (x² + y²) = 0`.
pub fn solve_third_trace(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    quadratic_roots(x * y, x * x + y * y)
}

/// Replaces coordinate `w` by (product of the other two) − `w`.
///
/// This is the same character seen from the Farey triangle across the edge
/// opposite `w`. It is an involution and maps the cubic to itself.
pub fn vieta_move(t: CharacterTriple, coordinate: Coordinate) -> CharacterTriple {
    let [x, y, z] = t.coords;
    let coords = match coordinate {
        Coordinate::X => [y * z - x, y, z],
        Coordinate::Y => [x, x * z - y, z],
        Coordinate::Z => [x, y, x * y - z],
    };
    let moved = CharacterTriple { coords };
    debug_assert!(
        !t.is_on_variety() || moved.residual() <= 4.0 * variety_tolerance(coords[0], coords[1], coords[2]),
        "vieta move left the variety: {moved}"
    );
    moved
}

/// Eigenvalue `λ` of a matrix with trace `x`, chosen with `|λ| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueData {
    #[serde(with = "crate::complex::reim")]
    pub lambda: Complex64,
    pub r: f64,
    pub theta: f64,
    /// Set when both roots lie on the unit circle (`x` real in `[-2, 2]`);
    /// `lambda` is then the root with non-negative imaginary part.
    pub unit_modulus: bool,
}

/// The root `λ` of `s² − x s + 1 = 0` with `|λ| >= 1`, so `x = λ + 1/λ`.
pub fn principal_eigenvalue(x: Complex64) -> EigenvalueData {
    if x.im == 0.0 && x.re.abs() <= 2.0 {
        // Roots e^{±iθ} with cos θ = x/2.
        let re = x.re * 0.5;
        let lambda = Complex64::new(re, (1.0 - re * re).max(0.0).sqrt());
        return EigenvalueData {
            lambda,
            r: 1.0,
            theta: lambda.arg(),
            unit_modulus: true,
        };
    }
    let (a, b) = quadratic_roots(x, Complex64::new(1.0, 0.0));
    let lambda = if a.norm() >= b.norm() { a } else { b };
    EigenvalueData {
        lambda,
        r: lambda.norm(),
        theta: lambda.arg(),
        unit_modulus: false,
    }
}

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2([[one, zero], [zero, one]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.0;
        let det = self.det();
        Mat2([[d / det, -b / det], [-c / det, a / det]])
    }
}

impl Serialize for Mat2 {
    /// Rows of `"RE,IM"` strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = self.0.map(|row| row.map(|z| crate::complex::format_complex(z)));
        rows.serialize(s)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Mat2([[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]])
    }
}

/// Matrices `ρ(X)`, `ρ(Y)` realizing a triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatrixPair {
    pub mx: Mat2,
    pub my: Mat2,
}

/// Absolute deviations of a [`MatrixPair`] from the triple it lifts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LiftResiduals {
    pub det_x: f64,
    pub det_y: f64,
    pub trace_x: f64,
    pub trace_y: f64,
    pub trace_xy: f64,
    /// `|tr(X Y X⁻¹ Y⁻¹) + 2|`
    pub commutator: f64,
}

impl MatrixPair {
    pub fn commutator_trace(&self) -> Complex64 {
        (self.mx * self.my * self.mx.inverse() * self.my.inverse()).trace()
    }

    pub fn residuals(&self, t: &CharacterTriple) -> LiftResiduals {
        let one = Complex64::new(1.0, 0.0);
        LiftResiduals {
            det_x: (self.mx.det() - one).norm(),
            det_y: (self.my.det() - one).norm(),
            trace_x: (self.mx.trace() - t.x()).norm(),
            trace_y: (self.my.trace() - t.y()).norm(),
            trace_xy: ((self.mx * self.my).trace() - t.z()).norm(),
            commutator: (self.commutator_trace() + 2.0).norm(),
        }
    }
}

fn check_not_parabolic(x: Complex64) -> Result<(), AlgebraError> {
    if (x - 2.0).norm() < VARIETY_EPS || (x + 2.0).norm() < VARIETY_EPS {
        return Err(AlgebraError::DegenerateEigenvalue { x });
    }
    Ok(())
}

/// `(A, D)` with `A + D = y0` and `A λ + D λ⁻¹ = y1`.
fn solve_fan(lambda: Complex64, y0: Complex64, y1: Complex64) -> (Complex64, Complex64) {
    let inv = lambda.inv();
    let gap = lambda - inv;
    ((y1 - inv * y0) / gap, (lambda * y0 - y1) / gap)
}

/// Conjugates the representation so that `ρ(X) = diag(λ, λ⁻¹)` and
/// `ρ(Y) = [[A, 1], [AD − 1, D]]`.
pub fn matrix_lift(t: &CharacterTriple) -> Result<MatrixPair, AlgebraError> {
    check_not_parabolic(t.x())?;
    let lambda = principal_eigenvalue(t.x()).lambda;
    let (a, d) = solve_fan(lambda, t.y(), t.z());
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(MatrixPair {
        mx: Mat2([[lambda, zero], [zero, lambda.inv()]]),
        my: Mat2([[a, one], [a * d - one, d]]),
    })
}

/// Closed form `y_n = A λ^n + D λ^-n` of the traces around one vertex.
///
/// Index `n` of this fan corresponds to index [`FanCoefficients::source_index`]
/// of the fan it was built from; normalization re-indexes and may reverse it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanCoefficients {
    pub x: Complex64,
    pub lambda: Complex64,
    pub a: Complex64,
    pub d: Complex64,
    /// Set once `1 <= |D/A| <= |λ|` has been arranged.
    pub normalized: bool,
    shift: i64,
    reversed: bool,
}

impl FanCoefficients {
    /// Solves for `(A, D)` from two consecutive neighbor traces of `x`.
    /// Does not require the inputs to lie on the cubic.
    pub fn solve(x: Complex64, y0: Complex64, y1: Complex64) -> Result<Self, AlgebraError> {
        check_not_parabolic(x)?;
        let lambda = principal_eigenvalue(x).lambda;
        let (a, d) = solve_fan(lambda, y0, y1);
        Ok(FanCoefficients {
            x,
            lambda,
            a,
            d,
            normalized: false,
            shift: 0,
            reversed: false,
        })
    }

    pub fn r(&self) -> f64 {
        self.lambda.norm()
    }

    pub fn y0(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn y1(&self) -> Complex64 {
        self.a * self.lambda + self.d / self.lambda
    }

    /// Index in the originally solved fan of this fan's index `n`.
    pub fn source_index(&self, n: i64) -> i64 {
        if self.reversed {
            self.shift - n
        } else {
            self.shift + n
        }
    }

    /// `(A = 0, D = 0)` relative to the size of the seed traces.
    pub fn zero_flags(&self) -> (bool, bool) {
        let scale = self.a.norm() + self.d.norm();
        let tiny = 1e-13 * scale;
        (self.a.norm() <= tiny, self.d.norm() <= tiny)
    }

    fn shift_by(&mut self, k: i64) {
        let pk = lambda_pow(self.lambda, k);
        self.a *= pk;
        self.d /= pk;
        if self.reversed {
            self.shift -= k;
        } else {
            self.shift += k;
        }
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.a, &mut self.d);
        self.reversed = !self.reversed;
    }

    /// Re-indexes (and if needed reverses) the fan so that `1 <= |D/A| <= |λ|`.
    pub fn normalize(mut self) -> Result<Self, AlgebraError> {
        let (a_zero, d_zero) = self.zero_flags();
        if a_zero || d_zero {
            return Err(AlgebraError::ZeroCoefficient { a_zero, d_zero });
        }
        let log_r = self.r().ln();
        if log_r <= 0.0 {
            return Err(AlgebraError::EllipticVertex { x: self.x });
        }
        let log_ratio = self.d.norm().ln() - self.a.norm().ln();
        let k = (log_ratio / (2.0 * log_r)).round();
        if k.abs() > MAX_FAN_INDEX as f64 {
            return Err(AlgebraError::IndexOutOfRange { n: k as i64 });
        }
        self.shift_by(k as i64);
        let r = self.r();
        for _ in 0..6 {
            let q = self.d.norm() / self.a.norm();
            if q < 1.0 {
                self.swap();
            } else if q > r {
                self.shift_by(1);
            } else {
                break;
            }
        }
        self.normalized = true;
        Ok(self)
    }

    /// `|A| r^n − |D| r^-n`, a lower bound for `|y_n|` that increases with `n`.
    pub fn lower_envelope(&self, n: i64) -> f64 {
        let rn = (n as f64 * self.r().ln()).exp();
        self.a.norm() * rn - self.d.norm() / rn
    }

    /// `A λ^n + D λ^-n`.
    pub fn trace(&self, n: i64) -> Result<Complex64, AlgebraError> {
        if n.abs() > MAX_FAN_INDEX {
            return Err(AlgebraError::IndexOutOfRange { n });
        }
        let log_r = self.r().ln();
        let nf = n as f64;
        let log_a = self.a.norm().ln() + nf * log_r;
        let log_d = self.d.norm().ln() - nf * log_r;
        let log_cap = SATURATION.ln();
        if log_a.max(log_d) > log_cap + 1.0 {
            let theta = self.lambda.arg() * nf;
            let phase = if log_a >= log_d {
                self.a.arg() + theta
            } else {
                self.d.arg() - theta
            };
            return Err(AlgebraError::MagnitudeOverflow {
                saturated: Complex64::from_polar(SATURATION, phase),
            });
        }
        let pn = lambda_pow(self.lambda, n);
        let value = self.a * pn + self.d / pn;
        if value.norm() > SATURATION {
            return Err(AlgebraError::MagnitudeOverflow {
                saturated: value / value.norm() * SATURATION,
            });
        }
        Ok(value)
    }
}

/// `λ^n` in polar form, so the error grows with `n` only through the phase.
pub(crate) fn lambda_pow(lambda: Complex64, n: i64) -> Complex64 {
    let nf = n as f64;
    Complex64::from_polar((nf * lambda.norm().ln()).exp(), nf * lambda.arg())
}

/// Fan coefficients for the neighbors of a vertex with trace `x`, seeded by
/// two consecutive neighbor traces `y0`, `y1`.
///
/// Vanishing `A` or `D` is reported as [`AlgebraError::ZeroCoefficient`]; use
/// [`FanCoefficients::solve`] to obtain such a fan anyway.
pub fn fan_coefficients(
    x: Complex64,
    y0: Complex64,
    y1: Complex64,
    normalize: bool,
) -> Result<FanCoefficients, AlgebraError> {
    let fan = FanCoefficients::solve(x, y0, y1)?;
    let (a_zero, d_zero) = fan.zero_flags();
    if a_zero || d_zero {
        return Err(AlgebraError::ZeroCoefficient { a_zero, d_zero });
    }
    if normalize {
        fan.normalize()
    } else {
        Ok(fan)
    }
}

/// `A λ^n + D λ^-n` for the fan `fc`.
pub fn neighbor_trace(fc: &FanCoefficients, n: i64) -> Result<Complex64, AlgebraError> {
    fc.trace(n)
}

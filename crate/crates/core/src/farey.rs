//! Slopes and triangles of the Farey graph, and traces of simple closed
//! curves.
//!
//! Slope convention: `X ↔ 1/0`, `Y ↔ 0/1`, `XY ↔ 1/1`, so a base triple
//! `(x, y, z)` gives the traces at the triangle `(1/0, 0/1, 1/1)`. Crossing
//! the edge `{u, v}` of a triangle `(u, v, o)` reaches `(u, v, w)` with
//! `tr w = tr u · tr v − tr o`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{matrix_lift, AlgebraError, CharacterTriple, Mat2};
use crate::tol::SATURATION;

/// Largest `|p|` or `q` a slope may carry.
pub const MAX_SLOPE_ENTRY: i64 = 1 << 60;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum FareyError {
    #[error("{p}/{q} is not a reduced slope")]
    InvalidSlope { p: i64, q: i64 },
    #[error("slope entries exceed 2^60")]
    SlopeOverflow,
    #[error("slopes {0} and {1} are not Farey neighbors")]
    NotNeighbors(Slope, Slope),
    #[error("trace magnitude exceeds {SATURATION:e}")]
    MagnitudeOverflow { saturated: Complex64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A vertex `p/q` of the Farey graph with `gcd(|p|, q) = 1`, `q >= 0`, and
/// `1/0` the unique slope with `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const ONE: Slope = Slope { p: 1, q: 1 };

    /// Validates a reduced fraction. `-1/0` is accepted as `1/0`, and a
    /// negative denominator is folded into the numerator.
    pub fn new(p: i64, q: i64) -> Result<Self, FareyError> {
        if gcd(p as i128, q as i128) != 1 {
            return Err(FareyError::InvalidSlope { p, q });
        }
        Self::from_vector(p as i128, q as i128)
    }

    /// The slope of a primitive integer vector, up to sign.
    pub(crate) fn from_vector(p: i128, q: i128) -> Result<Self, FareyError> {
        let (p, q) = match q.cmp(&0) {
            Ordering::Less => (-p, -q),
            Ordering::Equal => (1, 0),
            Ordering::Greater => (p, q),
        };
        if p.abs() > MAX_SLOPE_ENTRY as i128 || q > MAX_SLOPE_ENTRY as i128 {
            return Err(FareyError::SlopeOverflow);
        }
        Ok(Slope {
            p: p as i64,
            q: q as i64,
        })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub(crate) fn vector(&self) -> (i128, i128) {
        (self.p as i128, self.q as i128)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| format!("expected p/q, got {s:?}"))?;
        let p = p.trim().parse().map_err(|e| format!("{e}"))?;
        let q = q.trim().parse().map_err(|e| format!("{e}"))?;
        Slope::new(p, q).map_err(|e| e.to_string())
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn det(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// True iff `|p_a q_b − p_b q_a| = 1`.
pub fn are_neighbors(a: Slope, b: Slope) -> bool {
    det(a.vector(), b.vector()).abs() == 1
}

/// The common neighbor of `a` and `b` other than `not`.
pub(crate) fn other_common_neighbor(a: Slope, b: Slope, not: Slope) -> Result<Slope, FareyError> {
    let (va, vb) = (a.vector(), b.vector());
    let sum = (va.0 + vb.0, va.1 + vb.1);
    let diff = (va.0 - vb.0, va.1 - vb.1);
    // `not` is collinear with exactly one of the two candidates.
    if det(sum, not.vector()) == 0 {
        Slope::from_vector(diff.0, diff.1)
    } else {
        Slope::from_vector(sum.0, sum.1)
    }
}

/// Three mutually adjacent slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FareyTriangle(pub [Slope; 3]);

impl FareyTriangle {
    pub const BASE: FareyTriangle = FareyTriangle([Slope::INFINITY, Slope::ZERO, Slope::ONE]);

    pub fn new(s1: Slope, s2: Slope, s3: Slope) -> Result<Self, FareyError> {
        for (a, b) in [(s1, s2), (s2, s3), (s1, s3)] {
            if !are_neighbors(a, b) {
                return Err(FareyError::NotNeighbors(a, b));
            }
        }
        Ok(FareyTriangle([s1, s2, s3]))
    }

    /// Replaces slope `i` by the other common neighbor of the remaining two.
    pub fn flip(&self, i: usize) -> Result<FareyTriangle, FareyError> {
        let [j, k] = [(i + 1) % 3, (i + 2) % 3];
        let mut out = self.0;
        out[i] = other_common_neighbor(self.0[j], self.0[k], self.0[i])?;
        Ok(FareyTriangle(out))
    }

    /// The three triangles sharing an edge with this one; entry `i` is
    /// [`FareyTriangle::flip`]`(i)`.
    pub fn adjacent(&self) -> Result<[FareyTriangle; 3], FareyError> {
        Ok([self.flip(0)?, self.flip(1)?, self.flip(2)?])
    }

    /// Order-independent identity of the triangle.
    pub fn key(&self) -> [Slope; 3] {
        let mut k = self.0;
        k.sort();
        k
    }
}

pub fn adjacent_triangles(t: &FareyTriangle) -> Result<[FareyTriangle; 3], FareyError> {
    t.adjacent()
}

fn saturated(value: Complex64) -> FareyError {
    let saturated = if value.is_finite() && value.norm() > 0.0 {
        value / value.norm() * SATURATION
    } else {
        Complex64::new(SATURATION, 0.0)
    };
    FareyError::MagnitudeOverflow { saturated }
}

/// Advances the fan recurrence `u_{k+1} = t·u_k − u_{k−1}` by `k` steps from
/// `(u_0, u_{-1})`, returning `(u_k, u_{k−1})`.
fn advance_fan(
    t: Complex64,
    u0: Complex64,
    um1: Complex64,
    k: i128,
) -> Result<(Complex64, Complex64), FareyError> {
    let (cur, prev) = if k <= 64 {
        let (mut cur, mut prev) = (u0, um1);
        for _ in 0..k {
            (cur, prev) = (t * cur - prev, cur);
        }
        (cur, prev)
    } else {
        // [[t, −1], [1, 0]]^k applied to (u_0, u_{-1}).
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut base = Mat2([[t, -one], [one, zero]]);
        let mut acc = Mat2::identity();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        let [[a, b], [c, d]] = acc.0;
        (a * u0 + b * um1, c * u0 + d * um1)
    };
    if !(cur.norm() <= SATURATION) {
        return Err(saturated(cur));
    }
    Ok((cur, prev))
}

/// Trace of the simple closed curve of slope `s` for the character `base`,
/// computed by edge flips along the path of triangles from the base triangle.
///
/// Runs of flips around a single vertex are collapsed into one fan advance,
/// so the cost grows with the number of partial quotients of `p/q`.
pub fn trace_at_slope(base: &CharacterTriple, s: Slope) -> Result<Complex64, FareyError> {
    let [x, y, z] = base.coords();
    if s == Slope::INFINITY {
        return Ok(x);
    }
    if s == Slope::ZERO {
        return Ok(y);
    }
    if s == Slope::ONE {
        return Ok(z);
    }
    let target = s.vector();
    let (p, q) = target;
    // Edge (l, r) with l < s < r, and the trace opposite the edge on the
    // side facing away from s.
    let (mut l, mut r, mut tl, mut tr, mut topp) = if p > 0 && p < q {
        ((0, 1), (1, 1), y, z, x)
    } else if p > q {
        ((1, 1), (1, 0), z, x, y)
    } else {
        ((-1, 0), (0, 1), x, y, z)
    };
    loop {
        let (a, b) = l;
        let (c, d) = r;
        let toward_l = c * q - p * d;
        let toward_r = p * b - a * q;
        debug_assert!(toward_l > 0 && toward_r > 0);
        let k = toward_l / toward_r;
        if k >= 1 {
            // Mediants r + j·l for j = 1..=k all lie at or right of s.
            let (uk, ukm1) = advance_fan(tl, tr, topp, k)?;
            r = (c + k * a, d + k * b);
            if r == target {
                return Ok(uk);
            }
            tr = uk;
            topp = ukm1;
        } else {
            let k = toward_r / toward_l;
            let (uk, ukm1) = advance_fan(tr, tl, topp, k)?;
            l = (a + k * c, b + k * d);
            if l == target {
                return Ok(uk);
            }
            tl = uk;
            topp = ukm1;
        }
    }
}

/// Independent trace computation by matrix words, for cross-checking
/// [`trace_at_slope`].
///
/// `M(1/0) = ρ(X)`, `M(-1/0) = ρ(X)⁻¹`, `M(0/1) = ρ(Y)`, and the Stern–Brocot
/// mediant of `u < v` gets `M(u ⊕ v) = M(u)·M(v)`. Cost is linear in
/// `|p| + q`.
pub fn matrix_word_trace_oracle(base: &CharacterTriple, s: Slope) -> Result<Complex64, FareyError> {
    let pair = matrix_lift(base)?;
    if s == Slope::INFINITY {
        return Ok(pair.mx.trace());
    }
    if s == Slope::ZERO {
        return Ok(pair.my.trace());
    }
    let (p, q) = s.vector();
    let (mut l, mut ml, mut r, mut mr) = if p > 0 {
        ((0i128, 1i128), pair.my, (1i128, 0i128), pair.mx)
    } else {
        ((-1, 0), pair.mx.inverse(), (0, 1), pair.my)
    };
    loop {
        let m = (l.0 + r.0, l.1 + r.1);
        let mm = ml * mr;
        if m == (p, q) {
            return Ok(mm.trace());
        }
        // s < m  ⇔  p·m.1 < m.0·q  (denominators non-negative)
        if p * m.1 < m.0 * q {
            r = m;
            mr = mm;
        } else {
            l = m;
            ml = mm;
        }
    }
}

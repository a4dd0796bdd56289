//! Semi-decision procedure for the BQ-conditions.
//!
//! A character satisfies the BQ-conditions when no simple closed curve has
//! trace in `[-2, 2]` and only finitely many have trace modulus at most 2.
//! [`bq_classify`] explores the tree of Farey triangles outward from the
//! base triangle and cuts it down with two certified pruning rules:
//!
//! * an *escaping edge* `(a, b) → w` with `min(|a|, |b|, |w|) > 2` and
//!   `|w| >= max(|a|, |b|)`: every trace beyond it has modulus `> |w|`,
//!   growing along every path (by induction, `|a w − b| >= 2|w| − |w|`);
//! * the tail of the neighbor fan around a vertex `X` past
//!   [`fan_escape_index`], where `|y_n|` is bounded below by an increasing
//!   envelope large enough that every edge `(Y_n, Y_{n+1})` is escaping.
//!
//! Exploration stops early with a witness when a trace lies numerically in
//! `[-2, 2]`, or is non-real with modulus below the threshold (such
//! characters lie in the interior of the complement).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{AlgebraError, CharacterTriple, FanCoefficients};
use crate::complex::Reim;
use crate::farey::{det, other_common_neighbor, FareyError, Slope};
use crate::reduction::{reduce_trace, ReductionError, ReductionStatus, VertexTrace};
use crate::tol::{is_real_interval, DEFAULT_FLOOR, DEFAULT_THRESHOLD, MAX_FAN_INDEX};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid triple: {0}")]
    InvalidTriple(AlgebraError),
    #[error("threshold {0} is outside (0, 0.5]")]
    InvalidThreshold(f64),
    #[error("budget must be at least 1")]
    InvalidBudget,
    #[error("vertex trace {} is elliptic", Reim(*.x))]
    EllipticVertex { x: Complex64 },
    #[error("fan does not escape in this direction")]
    NoEscape,
    #[error(transparent)]
    Algebra(AlgebraError),
    #[error(transparent)]
    Reduction(ReductionError),
}

impl From<AlgebraError> for ClassifyError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::EllipticVertex { x } => ClassifyError::EllipticVertex { x },
            other => ClassifyError::Algebra(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// A trace in `[-2, 2]`.
    RealTrace,
    /// A non-real trace of modulus below the threshold.
    SmallTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub slope: Slope,
    #[serde(with = "crate::complex::reim")]
    pub trace: Complex64,
    /// Set for `RealTrace`: realness holds only up to `REAL_EPS`.
    pub numerically_real: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    BQ,
    NotBQ,
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub triangles_visited: u64,
    /// Vertices met with trace modulus at most 2.
    pub low_trace_vertices: Vec<VertexTrace>,
    pub budget_spent: u64,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            verdict: Verdict,
            witness: &'a Option<Witness>,
            triangles_visited: u64,
            budget_spent: u64,
            low_trace_count: usize,
        }
        Wire {
            verdict: self.verdict,
            witness: &self.witness,
            triangles_visited: self.triangles_visited,
            budget_spent: self.budget_spent,
            low_trace_count: self.low_trace_vertices.len(),
        }
        .serialize(s)
    }
}

/// True iff crossing into `w` from the edge with traces `a`, `b` certifies
/// that all traces beyond have modulus `> |w| > 2`, growing along every path.
pub fn escaping_edge(a: Complex64, b: Complex64, w: Complex64) -> bool {
    let (ma, mb, mw) = (a.norm(), b.norm(), w.norm());
    ma.min(mb).min(mw) > 2.0 && mw >= ma.max(mb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "+")]
    Up,
    #[serde(rename = "-")]
    Down,
}

/// Envelope level past which a fan around a vertex of trace `v` is prunable:
/// `e > 2` and `e (e − 1) > |v|`.
fn escape_level(v: Complex64) -> f64 {
    let root = (1.0 + (1.0 + 4.0 * v.norm()).sqrt()) / 2.0;
    root.max(2.0)
}

/// Escape test at distance `m` along `dir`, with `grow` and `shrink` the
/// moduli of the coefficients growing and decaying in that direction: the
/// envelope is above `level`, and the lower bound for the next modulus
/// exceeds the upper bound `grow·r^m + shrink·r^-m` for this one.
fn escaped(grow: f64, shrink: f64, r: f64, m: i64, level: f64) -> bool {
    let rm = (m as f64 * r.ln()).exp();
    let low = grow * rm - shrink / rm;
    let next_low = grow * rm * r - shrink / (rm * r);
    low > level && next_low > grow * rm + shrink / rm
}

/// Least `n` (in direction `dir`) past which the fan escapes, or `None`
/// when it does not within the supported index range.
///
/// Both tests are monotone in the distance, so they hold for every index
/// beyond the returned one.
pub(crate) fn fan_escape(fan: &FanCoefficients, dir: Direction) -> Option<i64> {
    let level = escape_level(fan.x);
    let (grow, shrink, sign) = match dir {
        Direction::Up => (fan.a.norm(), fan.d.norm(), 1),
        Direction::Down => (fan.d.norm(), fan.a.norm(), -1),
    };
    if !(grow > 0.0) {
        return None;
    }
    let r = fan.r();
    let log_r = r.ln();
    // Initial guesses from solving each test for u = r^m.
    let u = (level + (level * level + 4.0 * grow * shrink).sqrt()) / (2.0 * grow);
    let m_level = u.ln() / log_r;
    let m_mono = (shrink * (r + 1.0) / (grow * r * (r - 1.0))).ln() / (2.0 * log_r);
    let guess = m_level.max(m_mono).ceil();
    if guess.is_nan() || guess > MAX_FAN_INDEX as f64 {
        return None;
    }
    let limit = MAX_FAN_INDEX;
    let mut m = guess.max(-(limit as f64)) as i64;
    while !escaped(grow, shrink, r, m, level) {
        m += 1;
        if m > limit {
            return None;
        }
    }
    while m > -limit && escaped(grow, shrink, r, m - 1, level) {
        m -= 1;
    }
    Some(sign * m)
}

/// Fan index beyond which the neighbors of a vertex with trace `v` (seeded
/// by consecutive neighbor traces `y0`, `y1`) need not be explored.
///
/// For every `n` at or past the returned index in `direction`, `|y_n|`
/// exceeds 2 and strictly grows, and every edge `(Y_n, Y_{n±1})` is
/// escaping.
pub fn fan_escape_index(
    v: Complex64,
    y0: Complex64,
    y1: Complex64,
    direction: Direction,
) -> Result<i64, ClassifyError> {
    let fan = FanCoefficients::solve(v, y0, y1)?;
    if crate::reduction::is_elliptic_fan(&fan) {
        return Err(ClassifyError::EllipticVertex { x: v });
    }
    fan_escape(&fan, direction).ok_or(ClassifyError::NoEscape)
}

/// Neighbor fan of a low-trace vertex, indexed from the triangle where the
/// vertex was first met.
struct FanFrame {
    vertex: (i128, i128),
    origin: (i128, i128),
    /// `±1`: the slope of `Y_n` is `origin + n·step·vertex`.
    step: i128,
    up: Option<i64>,
    down: Option<i64>,
}

impl FanFrame {
    fn new(x: Complex64, u: (Slope, Complex64), v: (Slope, Complex64), xs: Slope) -> Self {
        let vertex = xs.vector();
        let origin = u.0.vector();
        let sum = (origin.0 + vertex.0, origin.1 + vertex.1);
        let step = if det(sum, v.0.vector()) == 0 { 1 } else { -1 };
        let (up, down) = match FanCoefficients::solve(x, u.1, v.1) {
            Ok(fan) if !crate::reduction::is_elliptic_fan(&fan) => {
                (fan_escape(&fan, Direction::Up), fan_escape(&fan, Direction::Down))
            }
            _ => (None, None),
        };
        FanFrame {
            vertex,
            origin,
            step,
            up,
            down,
        }
    }

    /// Fan index of a neighbor `b` of the frame's vertex.
    fn index_of(&self, b: Slope) -> i64 {
        let vb = b.vector();
        let s = det(self.vertex, vb).signum() * det(self.vertex, self.origin).signum();
        let diff = (s * vb.0 - self.origin.0, s * vb.1 - self.origin.1);
        let norm = self.vertex.0 * self.vertex.0 + self.vertex.1 * self.vertex.1;
        let along = diff.0 * self.vertex.0 + diff.1 * self.vertex.1;
        (along / (norm * self.step)) as i64
    }

    /// Whether stepping around the vertex from neighbor `from` to neighbor
    /// `to` walks further into an escaping tail.
    fn prunes(&self, from: Slope, to: Slope) -> bool {
        let (i, j) = (self.index_of(from), self.index_of(to));
        let up = j > i && self.up.is_some_and(|n| i >= n);
        let down = j < i && self.down.is_some_and(|n| i <= n);
        up || down
    }
}

#[derive(Clone, Copy)]
struct Node {
    slopes: [Slope; 3],
    traces: [Complex64; 3],
    /// Vertex introduced when this triangle was entered; its two edges are
    /// the exits.
    fresh: usize,
}

struct Queued {
    priority: f64,
    seq: u64,
    node: Node,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    // Reversed: BinaryHeap pops the smallest trace, then the oldest entry.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .total_cmp(&self.priority)
            .then(other.seq.cmp(&self.seq))
    }
}

struct Explorer {
    threshold: f64,
    frames: HashMap<Slope, FanFrame>,
    low: Vec<VertexTrace>,
    seen: HashSet<[Slope; 3]>,
    heap: BinaryHeap<Queued>,
    seq: u64,
}

impl Explorer {
    /// Checks a newly met vertex; returns a witness if it decides NotBQ.
    fn inspect(
        &mut self,
        vertex: Slope,
        trace: Complex64,
        u: (Slope, Complex64),
        v: (Slope, Complex64),
    ) -> Option<Witness> {
        if is_real_interval(trace) {
            return Some(Witness {
                kind: WitnessKind::RealTrace,
                slope: vertex,
                trace,
                numerically_real: true,
            });
        }
        if trace.norm() < self.threshold {
            return Some(Witness {
                kind: WitnessKind::SmallTrace,
                slope: vertex,
                trace,
                numerically_real: false,
            });
        }
        if trace.norm() <= 2.0 && !self.frames.contains_key(&vertex) {
            self.low.push(VertexTrace { vertex, trace });
            self.frames
                .insert(vertex, FanFrame::new(trace, u, v, vertex));
        }
        None
    }

    fn push(&mut self, node: Node) {
        let key = {
            let mut k = node.slopes;
            k.sort();
            k
        };
        if !self.seen.insert(key) {
            return;
        }
        self.seq += 1;
        self.heap.push(Queued {
            priority: node.traces[node.fresh].norm(),
            seq: self.seq,
            node,
        });
    }

    /// Crosses the edge of `node` opposite vertex `opp`.
    fn cross(&mut self, node: &Node, opp: usize) -> Result<Option<Witness>, FareyError> {
        let (i, j) = ((opp + 1) % 3, (opp + 2) % 3);
        let (su, sv, so) = (node.slopes[i], node.slopes[j], node.slopes[opp]);
        let (tu, tv, to) = (node.traces[i], node.traces[j], node.traces[opp]);
        let tw = tu * tv - to;
        if escaping_edge(tu, tv, tw) {
            return Ok(None);
        }
        let sw = other_common_neighbor(su, sv, so)?;
        // Around `su` the step goes from neighbor `sv` to `sw`; around `sv`,
        // from `su` to `sw`.
        let tail = |hub: Slope, from: Slope| {
            self.frames.get(&hub).is_some_and(|f| f.prunes(from, sw))
        };
        if tail(su, sv) || tail(sv, su) {
            return Ok(None);
        }
        if let Some(w) = self.inspect(sw, tw, (su, tu), (sv, tv)) {
            return Ok(Some(w));
        }
        let mut slopes = node.slopes;
        let mut traces = node.traces;
        slopes[opp] = sw;
        traces[opp] = tw;
        self.push(Node {
            slopes,
            traces,
            fresh: opp,
        });
        Ok(None)
    }
}

fn check_threshold(threshold: f64) -> Result<(), ClassifyError> {
    if threshold > 0.0 && threshold <= 0.5 {
        Ok(())
    } else {
        Err(ClassifyError::InvalidThreshold(threshold))
    }
}

fn validate(t: &CharacterTriple) -> Result<(), ClassifyError> {
    let [x, y, z] = t.coords();
    CharacterTriple::new(x, y, z)
        .map(|_| ())
        .map_err(ClassifyError::InvalidTriple)
}

/// Decides the BQ-conditions for `t`, or gives up after `budget` triangles.
///
/// Triangles are expanded smallest new trace first, so small traces (and
/// witnesses) surface early and the order does not depend on how the slopes
/// are labeled.
pub fn bq_classify(
    t: &CharacterTriple,
    threshold: f64,
    budget: u64,
) -> Result<Classification, ClassifyError> {
    validate(t)?;
    check_threshold(threshold)?;
    if budget == 0 {
        return Err(ClassifyError::InvalidBudget);
    }
    let mut ex = Explorer {
        threshold,
        frames: HashMap::new(),
        low: Vec::new(),
        seen: HashSet::new(),
        heap: BinaryHeap::new(),
        seq: 0,
    };
    let base = Node {
        slopes: [Slope::INFINITY, Slope::ZERO, Slope::ONE],
        traces: t.coords(),
        fresh: 0,
    };
    let finish = |ex: Explorer, verdict, witness, visited| Classification {
        verdict,
        witness,
        triangles_visited: visited,
        low_trace_vertices: ex.low,
        budget_spent: visited,
    };

    for k in 0..3 {
        let u = (base.slopes[(k + 1) % 3], base.traces[(k + 1) % 3]);
        let v = (base.slopes[(k + 2) % 3], base.traces[(k + 2) % 3]);
        if let Some(w) = ex.inspect(base.slopes[k], base.traces[k], u, v) {
            return Ok(finish(ex, Verdict::NotBQ, Some(w), 0));
        }
    }
    ex.seen.insert({
        let mut k = base.slopes;
        k.sort();
        k
    });

    let mut visited = 1u64;
    for opp in 0..3 {
        match ex.cross(&base, opp) {
            Ok(Some(w)) => return Ok(finish(ex, Verdict::NotBQ, Some(w), visited)),
            Ok(None) => {}
            Err(_) => return Ok(finish(ex, Verdict::Unknown, None, visited)),
        }
    }
    while let Some(Queued { node, .. }) = ex.heap.pop() {
        if visited >= budget {
            return Ok(finish(ex, Verdict::Unknown, None, visited));
        }
        visited += 1;
        for opp in [(node.fresh + 1) % 3, (node.fresh + 2) % 3] {
            match ex.cross(&node, opp) {
                Ok(Some(w)) => return Ok(finish(ex, Verdict::NotBQ, Some(w), visited)),
                Ok(None) => {}
                // Slope entries past 2^60: far beyond anything a budget can
                // certify.
                Err(_) => return Ok(finish(ex, Verdict::Unknown, None, visited)),
            }
        }
    }
    Ok(finish(ex, Verdict::BQ, None, visited))
}

/// Runs the trace-reduction descent first and falls back to [`bq_classify`]
/// when it does not settle the question.
///
/// A descent that ends in the real interval, or that passes a non-real trace
/// below the threshold, yields NotBQ with `triangles_visited = 0` and
/// `budget_spent` equal to the number of steps.
pub fn classify_with_reduction(
    t: &CharacterTriple,
    threshold: f64,
    budget: u64,
    max_steps: usize,
) -> Result<Classification, ClassifyError> {
    validate(t)?;
    check_threshold(threshold)?;
    if budget == 0 {
        return Err(ClassifyError::InvalidBudget);
    }
    let out = match reduce_trace(t, threshold, DEFAULT_FLOOR.min(threshold), max_steps) {
        Ok(out) => out,
        Err(ReductionError::InvalidTriple(e)) => return Err(ClassifyError::InvalidTriple(e)),
        Err(_) => return bq_classify(t, threshold, budget),
    };
    let real = match (out.status, out.final_vertex) {
        (ReductionStatus::ReachedRealInterval, Some(slope)) => Some(Witness {
            kind: WitnessKind::RealTrace,
            slope,
            trace: out.final_trace,
            numerically_real: true,
        }),
        _ => None,
    };
    // A small vertex recorded on the way precedes any final real hit.
    let witness = out
        .below_threshold
        .map(|vt| Witness {
            kind: WitnessKind::SmallTrace,
            slope: vt.vertex,
            trace: vt.trace,
            numerically_real: false,
        })
        .or(real);
    match witness {
        Some(w) => Ok(Classification {
            verdict: Verdict::NotBQ,
            witness: Some(w),
            triangles_visited: 0,
            low_trace_vertices: Vec::new(),
            budget_spent: out.steps.len() as u64,
        }),
        None => bq_classify(t, threshold, budget),
    }
}

/// [`bq_classify`] with the default threshold.
pub fn classify(t: &CharacterTriple, budget: u64) -> Result<Classification, ClassifyError> {
    bq_classify(t, DEFAULT_THRESHOLD, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{vieta_move, Coordinate};
    use crate::farey::trace_at_slope;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn escaping_edge_examples() {
        assert!(escaping_edge(c(3., 0.), c(3., 0.), c(6., 0.)));
        assert!(!escaping_edge(c(1.5, 0.), c(3., 0.), c(7., 0.)));
        assert!(!escaping_edge(c(3., 0.), c(6., 0.), c(5., 0.)));
    }

    #[test]
    fn fan_escape_examples() {
        // Envelope oracle: e(n) = |A| r^n − |D| r^-n, level max(2, (1+√13)/2).
        let n = fan_escape_index(c(3., 0.), c(3., 0.), c(6., 0.), Direction::Up).unwrap();
        assert_eq!(n, 1);
        let m = fan_escape_index(c(3., 0.), c(3., 0.), c(6., 0.), Direction::Down).unwrap();
        assert_eq!(m, -2);
        assert!(matches!(
            fan_escape_index(c(0., 0.), c(3., 0.), c(1., 0.), Direction::Up),
            Err(ClassifyError::EllipticVertex { .. })
        ));
    }

    #[test]
    fn fan_escape_near_parabolic_with_large_seed() {
        let v = c(2.0001, 0.0);
        let y0 = c(1e6, 0.0);
        let lambda = crate::algebra::principal_eigenvalue(v).lambda;
        let y1 = y0 * lambda * 1.01;
        let n = fan_escape_index(v, y0, y1, Direction::Up).unwrap();
        let fan = FanCoefficients::solve(v, y0, y1).unwrap();
        let level = escape_level(v);
        let (a, d, r) = (fan.a.norm(), fan.d.norm(), fan.r());
        assert!(escaped(a, d, r, n, level));
        assert!(!escaped(a, d, r, n - 1, level));
        for k in n..n + 64 {
            assert!(fan.trace(k + 1).unwrap().norm() > fan.trace(k).unwrap().norm());
        }
    }

    #[test]
    fn markov_point_is_bq_in_one_triangle() {
        let t = CharacterTriple::real(3., 3., 3.).unwrap();
        let cl = bq_classify(&t, 0.5, 1).unwrap();
        assert_eq!(cl.verdict, Verdict::BQ);
        assert_eq!(cl.triangles_visited, 1);
        assert!(cl.low_trace_vertices.is_empty());
    }

    #[test]
    fn quaternionic_point_has_real_witness() {
        let t = CharacterTriple::real(0., 0., 0.).unwrap();
        let cl = bq_classify(&t, 0.5, 100).unwrap();
        assert_eq!(cl.verdict, Verdict::NotBQ);
        let w = cl.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::RealTrace);
        assert_eq!(w.slope, Slope::INFINITY);
        let cl = classify_with_reduction(&t, 0.5, 100, 100).unwrap();
        assert_eq!(cl.verdict, Verdict::NotBQ);
        assert_eq!(cl.witness.unwrap().kind, WitnessKind::RealTrace);
    }

    #[test]
    fn small_trace_at_base() {
        let t = CharacterTriple::from_xy(c(0.25, 0.25), c(1.3, -2.1), false);
        let cl = bq_classify(&t, 0.5, 100).unwrap();
        assert_eq!(cl.verdict, Verdict::NotBQ);
        let w = cl.witness.unwrap();
        assert_eq!((w.kind, w.slope), (WitnessKind::SmallTrace, Slope::INFINITY));
    }

    #[test]
    fn bad_parameters() {
        let t = CharacterTriple::real(3., 3., 3.).unwrap();
        assert!(matches!(
            bq_classify(&t, 0.6, 10),
            Err(ClassifyError::InvalidThreshold(_))
        ));
        assert!(matches!(
            bq_classify(&t, 0.0, 10),
            Err(ClassifyError::InvalidThreshold(_))
        ));
        assert!(matches!(bq_classify(&t, 0.5, 0), Err(ClassifyError::InvalidBudget)));
        let off = CharacterTriple::from_coords_unchecked([c(3., 0.), c(3., 0.), c(5., 0.)]);
        assert!(matches!(
            bq_classify(&off, 0.5, 10),
            Err(ClassifyError::InvalidTriple(_))
        ));
    }

    #[test]
    fn quasi_fuchsian_point_is_bq_and_base_invariant() {
        // A small deformation of the Markov point.
        let t = CharacterTriple::from_xy(c(3.0, 0.2), c(3.1, -0.1), true);
        let cl = bq_classify(&t, 0.5, 10_000).unwrap();
        assert_eq!(cl.verdict, Verdict::BQ);
        for coord in Coordinate::ALL {
            let moved = vieta_move(t, coord);
            assert_eq!(bq_classify(&moved, 0.5, 10_000).unwrap().verdict, Verdict::BQ);
        }
    }

    #[test]
    fn low_vertices_are_recorded_with_true_traces() {
        // x inside the disc of radius 2 but far from the real axis.
        let t = CharacterTriple::from_xy(c(0.05, 1.9), c(2.5, 2.5), true);
        let cl = bq_classify(&t, 0.5, 10_000).unwrap();
        assert!(!cl.low_trace_vertices.is_empty());
        for vt in &cl.low_trace_vertices {
            let direct = trace_at_slope(&t, vt.vertex).unwrap();
            assert!((direct - vt.trace).norm() < 1e-8 * (1.0 + direct.norm()));
            assert!(vt.trace.norm() <= 2.0);
        }
    }

    #[test]
    fn frame_indices_follow_the_fan() {
        let xs = Slope::new(2, 3).unwrap();
        let u = Slope::new(1, 1).unwrap();
        let v = Slope::new(3, 4).unwrap();
        let frame = FanFrame::new(c(1.0, 1.0), (u, c(3., 0.)), (v, c(3., 1.)), xs);
        assert_eq!(frame.index_of(u), 0);
        assert_eq!(frame.index_of(v), 1);
        assert_eq!(frame.index_of(Slope::new(5, 7).unwrap()), 2);
        assert_eq!(frame.index_of(Slope::new(1, 2).unwrap()), -1);
        assert_eq!(frame.index_of(Slope::new(-1, -1).unwrap()), 0);
    }

    #[test]
    fn witness_json_shape() {
        let t = CharacterTriple::real(0., 0., 0.).unwrap();
        let cl = bq_classify(&t, 0.5, 10).unwrap();
        let json = serde_json::to_value(&cl).unwrap();
        assert_eq!(json["verdict"], "NotBQ");
        assert_eq!(json["witness"]["kind"], "RealTrace");
        assert_eq!(json["witness"]["slope"], "1/0");
        assert_eq!(json["witness"]["trace"], "0,0");
        assert_eq!(json["low_trace_count"], 0);
    }
}

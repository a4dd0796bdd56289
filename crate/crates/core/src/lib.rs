//! Trace-coordinate toolkit for type-preserving `SL(2,C)` characters of the
//! punctured torus.
//!
//! A character is a point `(x, y, z)` of the cubic `x² + y² + z² = xyz`, where
//! `x`, `y`, `z` are the traces of a generator pair `X`, `Y` and of `XY`. The
//! crate provides:
//!
//! * [`algebra`]: triples, Vieta moves, eigenvalues, matrix lifts and the
//!   neighbor-trace fan `y_n = A λ^n + D λ^-n` around a vertex.
//! * [`farey`]: slopes, Farey triangles and the trace of any simple closed
//!   curve computed by edge flips.
//! * [`reduction`]: the trace-reduction descent and its quantitative bound
//!   report.
//! * [`bq`]: a classifier for the BQ-conditions with certified pruning.
//! * [`scan`]: rasterization of 2D slices into PPM and CSV output.

pub mod algebra;
pub mod bq;
pub mod complex;
pub mod experiment;
pub mod farey;
pub mod reduction;
pub mod sampling;
pub mod scan;
pub mod tol;

pub use algebra::{
    fan_coefficients, matrix_lift, neighbor_trace, principal_eigenvalue, solve_third_trace, variety_residual,
    vieta_move, AlgebraError, CharacterTriple, Coordinate, EigenvalueData, FanCoefficients,
    Mat2, MatrixPair,
};
pub use bq::{
    bq_classify, classify_with_reduction, escaping_edge, fan_escape_index, Classification,
    ClassifyError, Direction, Verdict, Witness, WitnessKind,
};
pub use experiment::{remark_b_experiment, ExperimentReport};
pub use farey::{
    adjacent_triangles, are_neighbors, matrix_word_trace_oracle, trace_at_slope, FareyError, FareyTriangle, Slope,
};
pub use num_complex::Complex64;
pub use reduction::{
    jorgensen_flag, lemma_bound_report, min_neighbor_search, reduce_trace, LemmaBoundReport,
    ReductionError, ReductionOutcome, ReductionStatus, ReductionStep,
};
pub use scan::{
    render_ppm, scan_slice, write_csv, Branch, CellResult, CellVerdict, GridSpec, Palette,
    ScanError, ScanLayer, ScanResult, SliceSpec,
};

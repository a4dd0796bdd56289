//! Rasterized 2D slices of the character variety.
//!
//! One coordinate is held fixed, a second ranges over a rectangle of the
//! complex plane sampled at cell centers, and the third is a root of the
//! cubic. Each cell is classified independently; results are assembled in
//! cell order, so output does not depend on the number of workers.

use std::io::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{solve_third_trace, CharacterTriple, Coordinate};
use crate::bq::{bq_classify, Classification, ClassifyError, Verdict, WitnessKind};

/// Upper limit on `nx · ny`.
pub const MAX_CELLS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid slice spec: {0}")]
    SpecInvalid(String),
    #[error("layer {layer} out of range ({layers} layers)")]
    LayerOutOfRange { layer: usize, layers: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Which root of the cubic supplies the third coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
    Both,
}

impl Branch {
    fn layers(self) -> &'static [Branch] {
        match self {
            Branch::Plus => &[Branch::Plus],
            Branch::Minus => &[Branch::Minus],
            Branch::Both => &[Branch::Plus, Branch::Minus],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Plus => "Plus",
            Branch::Minus => "Minus",
            Branch::Both => "Both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(with = "crate::complex::reim")]
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
    pub nx: u32,
    pub ny: u32,
}

impl GridSpec {
    /// Center of cell `(i, j)`; row 0 is the top (largest imaginary part).
    pub fn cell_center(&self, i: u32, j: u32) -> Complex64 {
        let re = self.center.re - self.width / 2.0 + (i as f64 + 0.5) * self.width / self.nx as f64;
        let im =
            self.center.im + self.height / 2.0 - (j as f64 + 0.5) * self.height / self.ny as f64;
        Complex64::new(re, im)
    }

    pub fn cells(&self) -> usize {
        self.nx as usize * self.ny as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub fixed_coordinate: Coordinate,
    #[serde(with = "crate::complex::reim")]
    pub fixed_value: Complex64,
    pub varied_coordinate: Coordinate,
    pub grid: GridSpec,
    pub branch: Branch,
    pub threshold: f64,
    pub budget: u64,
}

impl SliceSpec {
    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |m: &str| Err(ScanError::SpecInvalid(m.to_string()));
        if self.fixed_coordinate == self.varied_coordinate {
            return bad("fixed and varied coordinates coincide");
        }
        let g = &self.grid;
        if g.nx == 0 || g.ny == 0 {
            return bad("nx and ny must be positive");
        }
        if g.nx as u64 * g.ny as u64 > MAX_CELLS {
            return bad("nx * ny exceeds 10^8");
        }
        if !(g.width > 0.0 && g.height > 0.0) || !g.width.is_finite() || !g.height.is_finite() {
            return bad("width and height must be positive and finite");
        }
        if !g.center.re.is_finite() || !g.center.im.is_finite() {
            return bad("grid center must be finite");
        }
        if !(self.threshold > 0.0 && self.threshold <= 0.5) {
            return bad("threshold must lie in (0, 0.5]");
        }
        if self.budget == 0 {
            return bad("budget must be at least 1");
        }
        Ok(())
    }

    fn third_coordinate(&self) -> Coordinate {
        Coordinate::ALL
            .into_iter()
            .find(|&c| c != self.fixed_coordinate && c != self.varied_coordinate)
            .unwrap()
    }

    /// The triple at sampled value `s` on the given (single) branch.
    pub fn triple_at(
        &self,
        s: Complex64,
        branch: Branch,
    ) -> Result<CharacterTriple, ClassifyError> {
        let (plus, minus) = solve_third_trace(self.fixed_value, s);
        let third = if branch == Branch::Minus { minus } else { plus };
        let mut coords = [Complex64::new(0.0, 0.0); 3];
        coords[self.fixed_coordinate.index()] = self.fixed_value;
        coords[self.varied_coordinate.index()] = s;
        coords[self.third_coordinate().index()] = third;
        CharacterTriple::new(coords[0], coords[1], coords[2]).map_err(ClassifyError::InvalidTriple)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellVerdict {
    BQ,
    NotBQ,
    Unknown,
    /// Classification of this cell failed.
    Error,
}

impl CellVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CellVerdict::BQ => "BQ",
            CellVerdict::NotBQ => "NotBQ",
            CellVerdict::Unknown => "Unknown",
            CellVerdict::Error => "Error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub verdict: CellVerdict,
    pub witness_kind: Option<WitnessKind>,
    pub low_trace_count: u64,
    pub budget_spent: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CellResult {
    fn from_outcome(out: Result<Classification, ClassifyError>) -> Self {
        match out {
            Ok(c) => CellResult {
                verdict: match c.verdict {
                    Verdict::BQ => CellVerdict::BQ,
                    Verdict::NotBQ => CellVerdict::NotBQ,
                    Verdict::Unknown => CellVerdict::Unknown,
                },
                witness_kind: c.witness.map(|w| w.kind),
                low_trace_count: c.low_trace_vertices.len() as u64,
                budget_spent: c.budget_spent,
                error: None,
            },
            Err(e) => CellResult {
                verdict: CellVerdict::Error,
                witness_kind: None,
                low_trace_count: 0,
                budget_spent: 0,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanLayer {
    pub branch: Branch,
    /// Row-major, row 0 at the top.
    pub cells: Vec<CellResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: SliceSpec,
    pub layers: Vec<ScanLayer>,
    /// Not part of the rendered outputs.
    pub wall_seconds: f64,
}

impl ScanResult {
    /// Spec and cells, without timing.
    pub fn same_cells(&self, other: &ScanResult) -> bool {
        self.spec == other.spec && self.layers == other.layers
    }
}

/// Run metadata written next to the images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanMetadata {
    pub spec: SliceSpec,
    pub tool_version: String,
    pub wall_seconds: f64,
    pub workers: usize,
    pub layers: usize,
    pub cells_per_layer: usize,
}

impl ScanMetadata {
    pub fn new(result: &ScanResult, workers: usize) -> Self {
        ScanMetadata {
            spec: result.spec,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_seconds: result.wall_seconds,
            workers,
            layers: result.layers.len(),
            cells_per_layer: result.spec.grid.cells(),
        }
    }
}

/// Classifies every cell of the slice with [`bq_classify`] on rayon's global
/// pool.
pub fn scan_slice(spec: &SliceSpec) -> Result<ScanResult, ScanError> {
    scan_slice_with(spec, None, bq_classify)
}

/// [`scan_slice`] with an explicit worker count (`None`: the global pool)
/// and a replaceable per-cell classifier.
pub fn scan_slice_with<F>(
    spec: &SliceSpec,
    workers: Option<usize>,
    classify: F,
) -> Result<ScanResult, ScanError>
where
    F: Fn(&CharacterTriple, f64, u64) -> Result<Classification, ClassifyError> + Sync,
{
    spec.validate()?;
    let start = Instant::now();
    let g = spec.grid;
    let jobs: Vec<(Branch, u32, u32)> = spec
        .branch
        .layers()
        .iter()
        .flat_map(|&b| (0..g.ny).flat_map(move |j| (0..g.nx).map(move |i| (b, i, j))))
        .collect();
    let run = || -> Vec<CellResult> {
        jobs.par_iter()
            .map(|&(b, i, j)| {
                let out = spec
                    .triple_at(g.cell_center(i, j), b)
                    .and_then(|t| classify(&t, spec.threshold, spec.budget));
                CellResult::from_outcome(out)
            })
            .collect()
    };
    let mut cells = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| ScanError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    };
    let per_layer = g.cells();
    let mut layers = Vec::new();
    for &b in spec.branch.layers().iter().rev() {
        let rest = cells.split_off(cells.len() - per_layer);
        layers.push(ScanLayer { branch: b, cells: rest });
    }
    layers.reverse();
    Ok(ScanResult {
        spec: *spec,
        layers,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// RGB color per cell outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub bq: [u8; 3],
    pub small_trace: [u8; 3],
    pub real_trace: [u8; 3],
    pub unknown: [u8; 3],
    pub error: [u8; 3],
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            bq: [255, 255, 255],
            small_trace: [0, 0, 0],
            real_trace: [96, 96, 96],
            unknown: [200, 32, 32],
            error: [200, 32, 32],
        }
    }
}

impl Palette {
    pub fn color(&self, cell: &CellResult) -> [u8; 3] {
        match (cell.verdict, cell.witness_kind) {
            (CellVerdict::BQ, _) => self.bq,
            (CellVerdict::NotBQ, Some(WitnessKind::RealTrace)) => self.real_trace,
            (CellVerdict::NotBQ, _) => self.small_trace,
            (CellVerdict::Unknown, _) => self.unknown,
            (CellVerdict::Error, _) => self.error,
        }
    }
}

/// Binary PPM (P6) of one layer with the default palette.
pub fn render_ppm(result: &ScanResult, layer: usize) -> Result<Vec<u8>, ScanError> {
    render_ppm_with(result, layer, &Palette::default())
}

pub fn render_ppm_with(
    result: &ScanResult,
    layer: usize,
    palette: &Palette,
) -> Result<Vec<u8>, ScanError> {
    let l = result.layers.get(layer).ok_or(ScanError::LayerOutOfRange {
        layer,
        layers: result.layers.len(),
    })?;
    let g = &result.spec.grid;
    let mut out = format!("P6\n{} {}\n255\n", g.nx, g.ny).into_bytes();
    out.reserve(3 * l.cells.len());
    for cell in &l.cells {
        out.extend_from_slice(&palette.color(cell));
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "re,im,branch,verdict,witness_kind,low_trace_count,budget_spent";

/// One row per cell per layer, layer-major then row-major. Coordinates are
/// the sampled value at the cell center.
pub fn write_csv(result: &ScanResult) -> Vec<u8> {
    let mut out = Vec::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    let g = &result.spec.grid;
    for layer in &result.layers {
        for (k, cell) in layer.cells.iter().enumerate() {
            let s = g.cell_center(k as u32 % g.nx, k as u32 / g.nx);
            let kind = match cell.witness_kind {
                Some(WitnessKind::RealTrace) => "RealTrace",
                Some(WitnessKind::SmallTrace) => "SmallTrace",
                None => "",
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                s.re,
                s.im,
                layer.branch.as_str(),
                cell.verdict.as_str(),
                kind,
                cell.low_trace_count,
                cell.budget_spent
            )
            .unwrap();
        }
    }
    out
}

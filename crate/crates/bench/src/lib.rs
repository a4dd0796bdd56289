//! Fixed inputs shared by the benchmarks.

use bowditch_core::sampling::{box_triple, stream};
use bowditch_core::{CharacterTriple, Complex64, Coordinate, GridSpec, SliceSpec, Branch};

/// Characters drawn from the box `[-3, 3]²`, reproducible across runs.
pub fn box_characters(n: usize) -> Vec<CharacterTriple> {
    let mut rng = stream(2024, 0);
    (0..n).map(|_| box_triple(&mut rng, 3.0)).collect()
}

/// A quasi-Fuchsian point, where classification has to explore.
pub fn quasi_fuchsian() -> CharacterTriple {
    CharacterTriple::from_xy(Complex64::new(3.0, 0.2), Complex64::new(3.1, -0.4), true)
}

/// A `side × side` slice through `x = 2.2 + 0.3i`.
pub fn slice(side: u32) -> SliceSpec {
    SliceSpec {
        fixed_coordinate: Coordinate::X,
        fixed_value: Complex64::new(2.2, 0.3),
        varied_coordinate: Coordinate::Y,
        grid: GridSpec {
            center: Complex64::new(0.0, 0.0),
            width: 6.0,
            height: 6.0,
            nx: side,
            ny: side,
        },
        branch: Branch::Plus,
        threshold: 0.5,
        budget: 10_000,
    }
}

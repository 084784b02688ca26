use pants_core::surface::{build_pants_graph, GraphShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::format::SurfaceFile;

/// A surface on a linear or ring pants graph with lengths uniform in
/// `[min, max]` and twists uniform in `[0, ℓ)`. Equal seeds give equal files.
pub fn random_surface(genus: u32, min: f64, max: f64, ring: bool, seed: u64) -> Result<SurfaceFile> {
    if !(min.is_finite() && max.is_finite() && 0.0 < min && min <= max) {
        return Err(CliError::Input(format!("length range [{min}, {max}] must satisfy 0 < min <= max")));
    }
    let shape = if ring { GraphShape::Ring } else { GraphShape::Linear };
    let graph = build_pants_graph(genus, shape)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.edges().len();
    let lengths: Vec<f64> = (0..n)
        .map(|_| if min == max { min } else { rng.random_range(min..=max) })
        .collect();
    let twists = lengths.iter().map(|&l| rng.random_range(0.0..l)).collect();
    Ok(SurfaceFile {
        genus,
        graph: graph.edges().to_vec(),
        lengths,
        twists,
    }
    .rounded())
}

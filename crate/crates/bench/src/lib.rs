//! Inputs shared by the benchmarks.

use mak_core::{IntegerMatrix, SimplicialComplex, SpaceExpr, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense matrix with entries in `-bound..=bound`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> IntegerMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    IntegerMatrix::from_rows(&data)
}

/// Random complex on `m` vertices with `facets` facets of size at most `max_size`.
pub fn random_complex(m: usize, facets: usize, max_size: usize, seed: u64) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let list: Vec<VertexSet> = (0..facets)
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(m));
            rand::seq::index::sample(&mut rng, m, size)
                .into_iter()
                .map(|v| v + 1)
                .collect()
        })
        .collect();
    SimplicialComplex::from_facets(m, &list).expect("vertices in range")
}

/// `Σ(S^1 × .. × S^1)` with `n` factors.
pub fn suspended_torus(n: usize) -> SpaceExpr {
    SpaceExpr::susp(SpaceExpr::Product(vec![SpaceExpr::Sphere(1); n]))
}

//! Shared inputs for the benchmarks.

use cy3_core::MatFp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform random matrix over `F_p`, reproducible from `seed`.
pub fn random_matrix(rows: usize, cols: usize, p: u32, seed: u64) -> MatFp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..p as i64)).collect())
        .collect();
    MatFp::from_rows(p, &data).expect("rectangular")
}

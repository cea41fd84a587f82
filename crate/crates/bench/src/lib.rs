//! Shared input builders for the kernel benchmarks (see `benches/kernels.rs`).

use qdyn::linalg::ComplexMatrix;
use qdyn::rng::SplitMix64;
use qdyn::Complex64;

/// Dense Gaussian matrix, deterministic per seed.
pub fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    ComplexMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.next_gaussian(), rng.next_gaussian())
    })
}

/// Dense Gaussian Hermitian matrix, deterministic per seed.
pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let g = random_matrix(n, seed);
    ComplexMatrix::from_fn(n, n, |i, j| {
        (g.get(i, j) + g.get(j, i).conj()) * Complex64::new(0.5, 0.0)
    })
}

//! Property tests over seeded random inputs. The crate's generators are
//! deterministic per seed, so proptest shrinks over seeds and dimensions.

use num_complex::Complex64;
use proptest::prelude::*;

use qdyn::chain::{apply_measurement, transfer_matrix, Measurement};
use qdyn::channel::reshuffle;
use qdyn::linalg::ComplexMatrix;
use qdyn::rng::SplitMix64;
use qdyn::states::{bloch_vector, random_density, state_from_bloch, OperatorBasis};
use qdyn::weak::weak_transfer_matrix;
use qdyn::Observable;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        c(rng.next_gaussian(), rng.next_gaussian())
    })
}

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let g = random_matrix(n, n, seed);
    ComplexMatrix::from_fn(n, n, |i, j| {
        (g.get(i, j) + g.get(j, i).conj()) * c(0.5, 0.0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product_identity(seed in any::<u64>(), d1 in 2usize..4, d2 in 2usize..4) {
        let a = random_matrix(d1, d1, seed);
        let b = random_matrix(d2, d2, seed ^ 0xabcd);
        let cmat = random_matrix(d1, d1, seed ^ 0x1111);
        let d = random_matrix(d2, d2, seed ^ 0x2222);
        let lhs = &a.kron(&b) * &cmat.kron(&d);
        let rhs = (&a * &cmat).kron(&(&b * &d));
        // scale-aware bound: entries are O(d) products of O(1) gaussians
        prop_assert!(lhs.frob_dist(&rhs).unwrap() < 1e-12 * (1.0 + rhs.frob_norm()));
    }

    #[test]
    fn partial_trace_over_everything_is_the_trace(seed in any::<u64>(), d1 in 2usize..4, d2 in 2usize..4) {
        let m = random_matrix(d1 * d2, d1 * d2, seed);
        let t = m.partial_trace(&[d1, d2], &[]).unwrap();
        prop_assert!((t.get(0, 0) - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn eigendecomposition_round_trips(seed in any::<u64>(), n in 2usize..6) {
        let h = random_hermitian(n, seed);
        let eig = h.hermitian_eig().unwrap();
        prop_assert!(eig.reconstruct().frob_dist(&h).unwrap() < 1e-11);
        prop_assert!(eig.eigenvectors.unitarity_residual() < 1e-11);
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10 * n as f64);
    }

    #[test]
    fn expm_is_a_one_parameter_group(seed in any::<u64>(), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        let h = random_hermitian(3, seed);
        let us = h.expm_antihermitian(s).unwrap();
        let ut = h.expm_antihermitian(t).unwrap();
        let ust = h.expm_antihermitian(s + t).unwrap();
        prop_assert!((&us * &ut).frob_dist(&ust).unwrap() < 1e-10);
        prop_assert!(us.unitarity_residual() < 1e-11);
    }

    #[test]
    fn bloch_round_trip_on_random_states(seed in any::<u64>(), d in 2usize..5) {
        let basis = OperatorBasis::gell_mann(d);
        let rank = 1 + (seed % d as u64) as usize;
        let rho = random_density(d, rank, seed).unwrap();
        let f = bloch_vector(&rho, &basis).unwrap();
        let back = state_from_bloch(&f, &basis).unwrap();
        prop_assert!(back.mat().frob_dist(rho.mat()).unwrap() < 1e-12);
    }

    #[test]
    fn reshuffle_involution_on_random_matrices(seed in any::<u64>(), d in 2usize..4) {
        let m = random_matrix(d * d, d * d, seed);
        let twice = reshuffle(&reshuffle(&m, d).unwrap(), d).unwrap();
        prop_assert!(twice.frob_dist(&m).unwrap() == 0.0);
    }

    #[test]
    fn schrodinger_heisenberg_duality(seed in any::<u64>()) {
        let ch = Measurement::random(2, 1 + (seed % 4) as usize, seed).as_channel();
        let rho = random_density(2, 2, seed ^ 0x77).unwrap();
        let a = Observable::new(random_hermitian(2, seed ^ 0x99)).unwrap();
        let lhs = ch.apply(&rho).unwrap().expectation(&a).unwrap();
        let rhs = rho.expectation(&ch.heisenberg_apply(&a).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn transfer_matrices_are_left_stochastic_and_propagate(
        seed in any::<u64>(),
        r1 in 1usize..4,
        r2 in 1usize..4,
    ) {
        let rho = random_density(2, 2, seed).unwrap();
        let first = Measurement::random(2, r1, seed ^ 0x1234);
        let second = Measurement::random(2, r2, seed ^ 0x5678);
        let y = transfer_matrix(&rho, &first, &second).unwrap();
        for s in y.column_sums() {
            prop_assert!((s - 1.0).abs() < 1e-9);
        }
        let step1 = apply_measurement(&rho, &first).unwrap();
        let q = y.apply(&step1.probabilities).unwrap();
        let direct = apply_measurement(&step1.post_density().unwrap(), &second).unwrap();
        for j in 0..second.rank() {
            prop_assert!((q.get(j) - direct.probabilities.get(j)).abs() < 1e-10);
        }
    }

    #[test]
    fn weak_transfer_columns_sum_to_one(seed in any::<u64>(), r1 in 1usize..4, r2 in 1usize..4) {
        let rho = random_density(2, 2, seed).unwrap();
        let first = Measurement::random(2, r1, seed ^ 0x4321);
        let second = Measurement::random(2, r2, seed ^ 0x8765);
        let y = weak_transfer_matrix(&rho, &first, &second).unwrap();
        for s in y.column_sums() {
            prop_assert!((s - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn channel_outputs_remain_valid_states(seed in any::<u64>(), d in 2usize..4) {
        let ch = Measurement::random(d, 2, seed).as_channel();
        let rho = random_density(d, d, seed ^ 0xaa).unwrap();
        // apply() re-validates the density-matrix invariants internally
        prop_assert!(ch.apply(&rho).is_ok());
    }
}

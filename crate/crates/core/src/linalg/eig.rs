//! Hermitian eigendecomposition via cyclic complex Jacobi rotations, plus the
//! spectral functions built on it.
//!
//! Jacobi is quadratically convergent and keeps the accumulated eigenvector
//! matrix unitary by construction, which is what the downstream round-trip
//! and orthonormality tolerances rely on. Dimensions of interest here stay in
//! the low hundreds, where the O(n^3)-per-sweep cost is irrelevant.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::ComplexMatrix;

/// Result of a Hermitian eigendecomposition.
///
/// Eigenvalues are real and ascending; `eigenvectors` holds the matching
/// orthonormal eigenvectors as columns, so `h = V diag(w) V†`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// Eigenvector for the k-th (ascending) eigenvalue.
    pub fn eigenvector(&self, k: usize) -> crate::linalg::ComplexVector {
        crate::linalg::ComplexVector::from_fn(self.eigenvectors.rows(), |i| {
            self.eigenvectors.get(i, k)
        })
    }

    /// Reconstruct `V diag(w) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvectors.rows();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| {
                    self.eigenvectors.get(i, k)
                        * Complex64::new(self.eigenvalues[k], 0.0)
                        * self.eigenvectors.get(j, k).conj()
                })
                .sum()
        })
    }
}

const MAX_SWEEPS: usize = 100;

impl ComplexMatrix {
    /// Eigendecomposition of a Hermitian matrix.
    ///
    /// Errors when the matrix is not Hermitian within the relative tolerance
    /// of [`hermiticity_tolerance`](crate::linalg::hermiticity_tolerance).
    /// Degenerate eigenvalues get an orthonormal but otherwise arbitrary
    /// basis of their eigenspace.
    pub fn hermitian_eig(&self) -> Result<HermitianEig> {
        self.require_hermitian()?;
        let n = self.rows();

        // Work on the Hermitian average so representation noise below the
        // tolerance cannot leak into the rotations.
        let mut a = ComplexMatrix::from_fn(n, n, |i, j| {
            (self.get(i, j) + self.get(j, i).conj()) * Complex64::new(0.5, 0.0)
        });
        let mut v = ComplexMatrix::identity(n);

        let scale = a.frob_norm();
        if scale == 0.0 {
            return Ok(HermitianEig {
                eigenvalues: vec![0.0; n],
                eigenvectors: v,
            });
        }
        let tol_off = f64::EPSILON * scale * n as f64;

        for _sweep in 0..MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            if (2.0 * off).sqrt() <= tol_off {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q, scale);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v.get(i, order[k]));
        Ok(HermitianEig {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Unitary `exp(-i t h)` of a Hermitian generator `h`, via the
    /// eigendecomposition `V exp(-i t w) V†`.
    pub fn expm_antihermitian(&self, t: f64) -> Result<ComplexMatrix> {
        let eig = self.hermitian_eig()?;
        let n = self.rows();
        let phases: Vec<Complex64> = eig
            .eigenvalues
            .iter()
            .map(|&w| Complex64::from_polar(1.0, -t * w))
            .collect();
        Ok(ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| eig.eigenvectors.get(i, k) * phases[k] * eig.eigenvectors.get(j, k).conj())
                .sum()
        }))
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.hermitian_eig()?.eigenvalues[0])
    }

    /// True iff the matrix is Hermitian with min eigenvalue `>= -tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol)
    }
}

/// One Jacobi rotation annihilating the (p, q) off-diagonal element.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, scale: f64) {
    let apq = a.get(p, q);
    let abs = apq.norm();
    if abs <= 1e-18 * scale {
        return;
    }
    let phase = apq / abs; // e^{i phi}
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * abs);
    // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let cs = Complex64::new(c, 0.0);
    let sp = phase * s; // s e^{i phi}
    let spc = phase.conj() * s; // s e^{-i phi}

    // rows: U† from the left
    for k in 0..n {
        let akp = a.get(p, k);
        let akq = a.get(q, k);
        a.set(p, k, cs * akp + sp * akq);
        a.set(q, k, cs * akq - spc * akp);
    }
    // columns: U from the right
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, cs * akp + spc * akq);
        a.set(k, q, cs * akq - sp * akp);
    }
    // accumulate eigenvectors
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, cs * vkp + spc * vkq);
        v.set(k, q, cs * vkq - sp * vkp);
    }

    // the rotation zeroes (p, q) analytically; pin it and keep the diagonal real
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dpp = a.get(p, p).re;
    let dqq = a.get(q, q).re;
    a.set(p, p, Complex64::new(dpp, 0.0));
    a.set(q, q, Complex64::new(dqq, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
    }

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = crate::rng::SplitMix64::new(seed);
        let g = ComplexMatrix::from_fn(n, n, |_, _| c(rng.next_gaussian(), rng.next_gaussian()));
        ComplexMatrix::from_fn(n, n, |i, j| {
            (g.get(i, j) + g.get(j, i).conj()) * c(0.5, 0.0)
        })
    }

    #[test]
    fn diagonal_input() {
        let eig = ComplexMatrix::diag_real(&[0.7, 0.3])
            .hermitian_eig()
            .unwrap();
        assert!((eig.eigenvalues[0] - 0.3).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 0.7).abs() < 1e-14);
        // ascending order puts |1> first
        assert!((eig.eigenvectors.get(1, 0).norm() - 1.0).abs() < 1e-12);
        assert!((eig.eigenvectors.get(0, 1).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_x_spectrum() {
        let eig = pauli_x().hermitian_eig().unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        // eigenvectors are (|0> -+ |1>)/sqrt(2) up to phase
        for k in 0..2 {
            let v = eig.eigenvector(k);
            assert!((v.get(0).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
            assert!((v.get(1).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_random_4x4() {
        let h = random_hermitian(4, 11);
        let eig = h.hermitian_eig().unwrap();
        assert!(eig.reconstruct().frob_dist(&h).unwrap() < 1e-12);
        // eigenvectors orthonormal
        assert!(eig.eigenvectors.unitarity_residual() < 1e-12);
        // eigenvalue sum equals trace
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - h.trace().re).abs() < 1e-10 * 4.0);
    }

    #[test]
    fn eigen_equation_holds() {
        let h = random_hermitian(6, 23);
        let eig = h.hermitian_eig().unwrap();
        for k in 0..6 {
            let v = eig.eigenvector(k);
            let hv = v.apply(&h);
            let lv = v.scale(c(eig.eigenvalues[k], 0.0));
            let resid: f64 = (0..6)
                .map(|i| (hv.get(i) - lv.get(i)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid < 1e-10, "eigpair {k} residual {resid}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(matches!(m.hermitian_eig(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn degenerate_spectrum_keeps_orthonormal_vectors() {
        // eigenvalue 1 with multiplicity 2, eigenvalue -1 with multiplicity 2
        let x = pauli_x();
        let xx = x.kron(&x);
        let eig = xx.hermitian_eig().unwrap();
        assert!(eig.eigenvectors.unitarity_residual() < 1e-12);
        assert!(eig.reconstruct().frob_dist(&xx).unwrap() < 1e-12);
    }

    #[test]
    fn expm_at_zero_is_identity() {
        let h = random_hermitian(3, 5);
        let u = h.expm_antihermitian(0.0).unwrap();
        assert!(u.approx_eq(&ComplexMatrix::identity(3), 1e-13));
    }

    #[test]
    fn expm_xx_series_identity() {
        // (X(x)X)^2 = 1 forces exp(-i theta X(x)X) = cos(theta) 1 - i sin(theta) X(x)X
        let theta = 0.7;
        let xx = pauli_x().kron(&pauli_x());
        let u = xx.expm_antihermitian(theta).unwrap();
        let expected = &ComplexMatrix::identity(4).scale(c(theta.cos(), 0.0))
            + &xx.scale(c(0.0, -theta.sin()));
        assert!(u.frob_dist(&expected).unwrap() < 1e-13);
    }

    #[test]
    fn expm_is_unitary_and_additive() {
        let h = random_hermitian(5, 42);
        let u = h.expm_antihermitian(1.3).unwrap();
        assert!(u.unitarity_residual() < 1e-12);
        let us = h.expm_antihermitian(0.4).unwrap();
        let ut = h.expm_antihermitian(0.9).unwrap();
        assert!((&us * &ut).frob_dist(&u).unwrap() < 1e-10);
    }

    #[test]
    fn psd_checks() {
        assert!(ComplexMatrix::identity(2).is_psd(1e-9).unwrap());
        assert!(!ComplexMatrix::diag_real(&[1.0, -0.1]).is_psd(1e-9).unwrap());
    }
}

//! Quantum states, observables, operator bases, and Bloch coherence vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_tolerance, ComplexMatrix, ComplexVector, PSD_TOL};
use crate::rng::SplitMix64;

/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// A density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate a matrix as a quantum state.
    ///
    /// Checks Hermiticity (relative `1e-10` tolerance), unit trace
    /// (`1e-10`), and positivity (min eigenvalue `>= -1e-9`).
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotAState(format!(
                "state matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let dev = mat.hermiticity_deviation();
        let tol = hermiticity_tolerance(&mat);
        if dev > tol {
            return Err(Error::NotAState(format!(
                "not Hermitian (deviation {dev:.3e}, tolerance {tol:.3e})"
            )));
        }
        let tr = mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::NotAState(format!("trace is {tr}, expected 1")));
        }
        let min = mat.min_eigenvalue()?;
        if min < -PSD_TOL {
            return Err(Error::NotAState(format!(
                "min eigenvalue {min:.3e} is negative"
            )));
        }
        Ok(Self {
            dim: mat.rows(),
            mat,
        })
    }

    /// Projector onto a pure state; the vector is normalized first.
    pub fn from_pure(psi: &ComplexVector) -> Result<Self> {
        let unit = psi.normalized()?;
        Self::new(unit.projector())
    }

    /// Maximally mixed state `1/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            dim,
            mat: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// Purity `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.mat * &self.mat).trace().re
    }

    /// Expectation value `tr(a rho)`.
    ///
    /// Errors if dimensions differ or the value has imaginary part
    /// at or above `1e-8`; smaller imaginary noise is discarded.
    pub fn expectation(&self, a: &Observable) -> Result<f64> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "observable dim {} vs state dim {}",
                a.dim(),
                self.dim
            )));
        }
        let value = (&a.mat * &self.mat).trace();
        if value.im.abs() >= 1e-8 {
            return Err(Error::NotReal(value.im));
        }
        Ok(value.re)
    }
}

/// A Hermitian observable.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    dim: usize,
    mat: ComplexMatrix,
}

impl Observable {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        mat.require_hermitian()?;
        Ok(Self {
            dim: mat.rows(),
            mat,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }
}

/// Complete orthonormal operator basis `{F_i}` with `tr(F_i F_j) = delta_ij`,
/// `F_0 = 1/sqrt(d)`, all other elements traceless.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<Observable>,
}

impl OperatorBasis {
    /// Generalized Gell-Mann basis for a qudit of dimension `d`.
    ///
    /// Ordering: the scaled identity first, then for each index pair
    /// `j < k` the symmetric and antisymmetric elements, then the diagonal
    /// elements. For `d = 2` this yields `{1, X, Y, Z} / sqrt(2)`.
    pub fn gell_mann(d: usize) -> Self {
        assert!(d >= 1, "basis dimension must be positive");
        let mut elements = Vec::with_capacity(d * d);

        let ident = ComplexMatrix::identity(d).scale_re(1.0 / (d as f64).sqrt());
        elements.push(Observable { dim: d, mat: ident });

        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for j in 0..d {
            for k in (j + 1)..d {
                let mut sym = ComplexMatrix::zeros(d, d);
                sym.set(j, k, Complex64::new(inv_sqrt2, 0.0));
                sym.set(k, j, Complex64::new(inv_sqrt2, 0.0));
                elements.push(Observable { dim: d, mat: sym });

                let mut asym = ComplexMatrix::zeros(d, d);
                asym.set(j, k, Complex64::new(0.0, -inv_sqrt2));
                asym.set(k, j, Complex64::new(0.0, inv_sqrt2));
                elements.push(Observable { dim: d, mat: asym });
            }
        }
        for l in 1..d {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut diag = ComplexMatrix::zeros(d, d);
            for j in 0..l {
                diag.set(j, j, Complex64::new(norm, 0.0));
            }
            diag.set(l, l, Complex64::new(-(l as f64) * norm, 0.0));
            elements.push(Observable { dim: d, mat: diag });
        }

        Self { dim: d, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Observable] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Observable {
        &self.elements[i]
    }

    /// Number of elements, `d^2`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Bloch coherence vector of a qudit state.
///
/// The stored components follow the convention `f_i = d * tr(F_i rho)` for
/// the traceless basis elements `i >= 1`, which makes the reconstruction
/// `rho = (1 + sum_i f_i F_i)/d` hold verbatim. Note `tr(F_i rho) = f_i/d`.
/// An arbitrary vector need not reconstruct to a positive matrix; only
/// round trips from valid states are guaranteed to be states.
#[derive(Clone, Debug, PartialEq)]
pub struct BlochVector {
    dim: usize,
    f: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, f: Vec<f64>) -> Result<Self> {
        if f.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch(format!(
                "Bloch vector for dim {dim} needs {} components, got {}",
                dim * dim - 1,
                f.len()
            )));
        }
        Ok(Self { dim, f })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.f
    }

    pub fn norm(&self) -> f64 {
        self.f.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Bloch coherence vector of `rho` in the given operator basis.
pub fn bloch_vector(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<BlochVector> {
    if basis.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis dim {} vs state dim {}",
            basis.dim(),
            rho.dim()
        )));
    }
    let d = rho.dim() as f64;
    let f = basis.elements()[1..]
        .iter()
        .map(|fi| d * (&fi.mat * rho.mat()).trace().re)
        .collect();
    BlochVector::new(rho.dim(), f)
}

/// Reconstruct the state `(1 + sum_i f_i F_i)/d`, rejecting vectors whose
/// reconstruction is not positive semidefinite.
pub fn state_from_bloch(f: &BlochVector, basis: &OperatorBasis) -> Result<DensityMatrix> {
    if basis.dim() != f.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis dim {} vs Bloch vector dim {}",
            basis.dim(),
            f.dim()
        )));
    }
    let d = f.dim();
    let mut mat = ComplexMatrix::identity(d);
    for (i, &fi) in f.components().iter().enumerate() {
        mat = &mat + &basis.element(i + 1).mat().scale_re(fi);
    }
    DensityMatrix::new(mat.scale_re(1.0 / d as f64))
}

/// Maximally entangled ket `sum_i |ii> / sqrt(d)` on a `d x d` bipartite
/// space.
pub fn maximally_entangled(d: usize) -> ComplexVector {
    assert!(d >= 1, "dimension must be positive");
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = ComplexVector::zeros(d * d);
    for i in 0..d {
        v.set(i * d + i, amp);
    }
    v
}

/// Random density matrix of the given rank, deterministic per seed.
///
/// Gaussian `d x rank` factor `G`, then `G G† / tr(G G†)`.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::OutOfRange(format!("rank {rank} must be in 1..={d}")));
    }
    let mut rng = SplitMix64::new(seed);
    let g = ComplexMatrix::from_fn(d, rank, |_, _| {
        Complex64::new(rng.next_gaussian(), rng.next_gaussian())
    });
    let gg = &g * &g.dagger();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_re(1.0 / tr))
}

/// Haar-like random unitary via Gram-Schmidt on a Gaussian matrix,
/// deterministic per seed.
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.next_gaussian(), rng.next_gaussian())
    });
    let mut cols: Vec<ComplexVector> = (0..d)
        .map(|j| ComplexVector::from_fn(d, |i| g.get(i, j)))
        .collect();
    for j in 0..d {
        // two Gram-Schmidt passes keep orthogonality near machine precision
        for _pass in 0..2 {
            for k in 0..j {
                let overlap = cols[k].inner(&cols[j]);
                let proj = cols[k].scale(overlap);
                cols[j] = cols[j].sub(&proj);
            }
        }
        cols[j] = cols[j]
            .normalized()
            .expect("Gaussian column collapsed to zero");
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j].get(i))
}

/// Random unit vector, deterministic per seed.
pub fn random_pure(d: usize, seed: u64) -> ComplexVector {
    let mut rng = SplitMix64::new(seed);
    let v = ComplexVector::from_fn(d, |_| {
        Complex64::new(rng.next_gaussian(), rng.next_gaussian())
    });
    v.normalized().expect("Gaussian vector collapsed to zero")
}

//! Dense complex vectors (pure states, basis kets, eigenvectors).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Dense complex column vector.
#[derive(Clone, PartialEq, Debug)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    /// Build a vector, checking entries are finite.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput(
                "vector dimension must be positive".into(),
            ));
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("non-finite vector entry".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            entries: (0..dim).map(&mut f).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// Computational basis ket `|index>`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: Complex64) {
        self.entries[i] = value;
    }

    /// Inner product `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dims");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Unit-norm copy; errors on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::InvalidInput(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector sum dims");
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector difference dims");
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Outer product `|self><other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |i, j| {
            self.entries[i] * other.entries[j].conj()
        })
    }

    /// Projector `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        self.outer(self)
    }

    /// Tensor product `|self> (x) |other>` under big-endian index order.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        Self { entries }
    }

    /// Matrix-vector product `m |self>`.
    pub fn apply(&self, m: &ComplexMatrix) -> Self {
        assert_eq!(m.cols(), self.dim(), "matvec dims");
        Self::from_fn(m.rows(), |i| {
            (0..self.dim()).map(|j| m.get(i, j) * self.entries[j]).sum()
        })
    }
}

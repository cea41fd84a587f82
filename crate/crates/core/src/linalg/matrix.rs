//! Dense row-major complex matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance for a given matrix: `1e-10 * max(1, ||m||_F)`.
pub fn hermiticity_tolerance(m: &ComplexMatrix) -> f64 {
    1e-10 * m.frob_norm().max(1.0)
}

/// Tolerance on eigen-residuals: round trips, orthonormality, unitarity.
pub const EIG_TOL: f64 = 1e-10;

/// Default tolerance for positive-semidefiniteness checks.
pub const PSD_TOL: f64 = 1e-9;

/// Dense complex matrix with row-major storage.
///
/// This is the substrate for every operator in the crate: unitaries, Kraus
/// operators, density matrices, measurement operators, Choi matrices.
/// Composite systems use left-to-right [`kron`](Self::kron) ordering, so a
/// composite basis index is big-endian:
/// `i = i1*d2*...*dk + i2*d3*...*dk + ... + ik`.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries, checking shape and finiteness.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        if rows * cols != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at row {}, col {}",
                bad / cols,
                bad % cols
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Build a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Build from nested rows of `(re, im)` pairs; panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows
                .iter()
                .flatten()
                .map(|&x| Complex64::new(x, 0.0))
                .collect(),
        }
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Diagonal matrix from complex entries.
    pub fn diag(values: &[Complex64]) -> Self {
        let d = values.len();
        Self::from_fn(d, d, |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(values: &[f64]) -> Self {
        Self::diag(
            &values
                .iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.cols + j] = value;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Matrix trace; requires a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius distance `sqrt(sum |a_ij - b_ij|^2)`; zero iff equal.
    pub fn frob_dist(&self, other: &Self) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "frob_dist between {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest entrywise deviation from the adjoint.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    /// Hermitian within the relative tolerance `1e-10 * max(1, ||m||_F)`.
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermiticity_deviation() <= hermiticity_tolerance(self)
    }

    /// Error unless the matrix is square and Hermitian within tolerance.
    pub fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let dev = self.hermiticity_deviation();
        let tol = hermiticity_tolerance(self);
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol,
            });
        }
        Ok(())
    }

    /// Residual `||U†U - 1||_F` of the unitarity condition.
    pub fn unitarity_residual(&self) -> f64 {
        assert!(self.is_square(), "unitarity of non-square matrix");
        let prod = &self.dagger() * self;
        prod.frob_dist(&Self::identity(self.rows))
            .expect("same dims")
    }

    /// Error unless `U†U = 1` within `tol` (Frobenius residual).
    pub fn require_unitary(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let res = self.unitarity_residual();
        if res > tol {
            return Err(Error::NotUnitary(res));
        }
        Ok(())
    }

    /// Scale by a complex factor.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Scale by a real factor.
    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Kronecker product; the left factor is the most significant index.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..other.rows {
                    let row = (i1 * other.rows + i2) * cols + j1 * other.cols;
                    for j2 in 0..other.cols {
                        entries[row + j2] = a * other.get(i2, j2);
                    }
                }
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Partial trace over the factors *not* listed in `keep`.
    ///
    /// `dims` lists the dimension of each tensor factor (left to right,
    /// matching `kron` order); `keep` is the sorted set of 0-based factor
    /// indices that survive. An empty `keep` produces the 1x1 matrix holding
    /// the full trace.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if !self.is_square() || total != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "partial trace dims {:?} (product {total}) do not match {}x{} matrix",
                dims, self.rows, self.cols
            )));
        }
        for window in keep.windows(2) {
            if window[0] >= window[1] {
                return Err(Error::InvalidInput(
                    "keep indices must be strictly ascending".into(),
                ));
            }
        }
        if keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::InvalidInput(format!(
                "keep index out of range for {} factors",
                dims.len()
            )));
        }

        let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        let keep_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&t| dims[t]).collect();
        let d_keep: usize = keep_dims.iter().product::<usize>().max(1);
        let d_traced: usize = traced_dims.iter().product::<usize>().max(1);

        let mut idx = vec![0usize; dims.len()];
        let mut out = Self::zeros(d_keep, d_keep);
        let mut kr = vec![0usize; keep.len()];
        let mut kc = vec![0usize; keep.len()];
        let mut tv = vec![0usize; traced.len()];
        for r in 0..d_keep {
            decompose_index(&keep_dims, r, &mut kr);
            for c in 0..d_keep {
                decompose_index(&keep_dims, c, &mut kc);
                let mut acc = Complex64::new(0.0, 0.0);
                for t in 0..d_traced {
                    decompose_index(&traced_dims, t, &mut tv);
                    for (pos, &k) in keep.iter().enumerate() {
                        idx[k] = kr[pos];
                    }
                    for (pos, &tr) in traced.iter().enumerate() {
                        idx[tr] = tv[pos];
                    }
                    let row = composite_index(dims, &idx);
                    for (pos, &k) in keep.iter().enumerate() {
                        idx[k] = kc[pos];
                    }
                    let col = composite_index(dims, &idx);
                    acc += self.get(row, col);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// True when every entry matches `other` within `tol` in modulus.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// Big-endian composite index for the multi-index `idx` over `dims`.
pub(crate) fn composite_index(dims: &[usize], idx: &[usize]) -> usize {
    let mut out = 0;
    for (d, i) in dims.iter().zip(idx) {
        out = out * d + i;
    }
    out
}

/// Inverse of [`composite_index`]; writes the multi-index into `out`.
pub(crate) fn decompose_index(dims: &[usize], mut index: usize, out: &mut [usize]) {
    for pos in (0..dims.len()).rev() {
        out[pos] = index % dims[pos];
        index /= dims[pos];
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dims {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let out_row = i * rhs.cols;
                let rhs_row = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.entries[out_row + j] += a * rhs.entries[rhs_row + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum dims"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference dims"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.4e}{:+.4e}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let z = self.get(i, j);
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
    }

    #[test]
    fn kron_identities() {
        let id2 = ComplexMatrix::identity(2);
        assert!(id2.kron(&id2).approx_eq(&ComplexMatrix::identity(4), 0.0));

        let a = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let b = ComplexMatrix::diag_real(&[3.0, 4.0]);
        // index expansion by hand: diag(1*3, 1*4, 2*3, 2*4)
        assert!(a
            .kron(&b)
            .approx_eq(&ComplexMatrix::diag_real(&[3.0, 4.0, 6.0, 8.0]), 0.0));
    }

    #[test]
    fn kron_bell_state_symmetry() {
        let x = pauli_x();
        let xx = x.kron(&x);
        let bell = ComplexMatrix::new(
            4,
            1,
            vec![
                c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                c(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
        )
        .unwrap();
        let out = &xx * &bell;
        assert!(out.approx_eq(&bell, 1e-15));
    }

    #[test]
    fn kron_mixed_product() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(0.0, 2.0)],
            vec![c(3.0, 0.0), c(1.0, -1.0)],
        ]);
        let b = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, -1.0)],
            vec![c(2.0, 1.0), c(1.0, 0.0)],
        ]);
        let lhs = &a.kron(&b) * &a.kron(&b);
        let rhs = (&a * &a).kron(&(&b * &b));
        assert!(lhs.frob_dist(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_bell_projector() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            ComplexMatrix::new(4, 1, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let proj = &bell * &bell.dagger();
        let half_id = ComplexMatrix::identity(2).scale_re(0.5);
        for keep in [[0usize], [1usize]] {
            let red = proj.partial_trace(&[2, 2], &keep).unwrap();
            assert!(red.approx_eq(&half_id, 1e-15));
        }
    }

    #[test]
    fn partial_trace_product_state() {
        let rho_a = ComplexMatrix::from_rows(&[
            vec![c(0.7, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.3, 0.0)],
        ]);
        let rho_b = ComplexMatrix::diag_real(&[0.4, 0.6]);
        let joint = rho_a.kron(&rho_b);
        let red = joint.partial_trace(&[2, 2], &[0]).unwrap();
        // tr_B(A (x) B) = A * tr(B), and tr(B) = 1 here
        assert!(red.approx_eq(&rho_a, 1e-14));
    }

    #[test]
    fn partial_trace_matches_brute_force_sum() {
        // random-ish 2 (x) 3 operator, trace over the second factor
        let m = ComplexMatrix::from_fn(6, 6, |i, j| {
            c((i * 7 + j) as f64 * 0.013, (i as f64 - j as f64) * 0.021)
        });
        let red = m.partial_trace(&[2, 3], &[0]).unwrap();
        // independent oracle: explicit double loop over basis indices
        let mut oracle = ComplexMatrix::zeros(2, 2);
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = c(0.0, 0.0);
                for e in 0..3 {
                    acc += m.get(a * 3 + e, b * 3 + e);
                }
                oracle.set(a, b, acc);
            }
        }
        assert!(red.approx_eq(&oracle, 1e-14));
        // trace preserved
        assert!((red.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_over_all_factors_is_trace() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c(i as f64 + 0.5, j as f64 - 1.0));
        let t = m.partial_trace(&[2, 2], &[]).unwrap();
        assert_eq!(t.rows(), 1);
        assert!((t.get(0, 0) - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            m.partial_trace(&[2, 3], &[0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn frob_dist_cases() {
        let a = ComplexMatrix::identity(2);
        assert_eq!(a.frob_dist(&a).unwrap(), 0.0);
        let zero = ComplexMatrix::zeros(2, 2);
        assert!((a.frob_dist(&zero).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        // elementwise sum oracle on an arbitrary pair
        let p = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64 * 0.3, j as f64 - 0.7));
        let q = ComplexMatrix::from_fn(3, 2, |i, j| c(j as f64 * 1.1, i as f64 + 0.2));
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..2 {
                acc += (p.get(i, j) - q.get(i, j)).norm_sqr();
            }
        }
        assert!((p.frob_dist(&q).unwrap() - acc.sqrt()).abs() < 1e-14);

        assert!(p.frob_dist(&a).is_err());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(ComplexMatrix::new(2, 2, vec![c(0.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn composite_index_round_trip() {
        let dims = [2usize, 3, 4];
        for i in 0..24 {
            let mut idx = [0usize; 3];
            decompose_index(&dims, i, &mut idx);
            assert_eq!(composite_index(&dims, &idx), i);
        }
    }
}

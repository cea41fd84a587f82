//! Weak-measurement transfer matrices and weak values.
//!
//! In the weak regime the first measurement records information without
//! significantly disturbing the state, so all formulas are functions of the
//! pre-measurement state alone; no pointer-coupling model is involved. The
//! operator ordering differs from the strong case: the state is not
//! sandwiched between the first measurement's operators, which is what lets
//! the transition probabilities go complex.

use num_complex::Complex64;

use crate::chain::{Measurement, BRANCH_NORM_FLOOR, DEGENERATE_PROBABILITY};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{DensityMatrix, Observable};

/// Transfer matrix of weak transition probabilities
/// `m~_ji = tr(M_i† M_i N_j† N_j rho) / tr(M_i† M_i rho)`.
///
/// Entries may be complex; columns still sum to 1 whenever the second
/// measurement is complete.
#[derive(Clone, Debug)]
pub struct WeakTransferMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
    degenerate: Vec<bool>,
}

impl WeakTransferMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, j: usize, i: usize) -> Complex64 {
        self.entries[j * self.cols + i]
    }

    pub fn degenerate_columns(&self) -> &[bool] {
        &self.degenerate
    }

    pub fn column_sums(&self) -> Vec<Complex64> {
        (0..self.cols)
            .map(|i| (0..self.rows).map(|j| self.entry(j, i)).sum())
            .collect()
    }

    /// Largest imaginary part in modulus; zero for classical (commuting)
    /// contexts.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Reconstruct the second-step probabilities `q~_j = sum_i m~_ji p~_i`.
    pub fn apply(&self, p: &[f64]) -> Result<Vec<Complex64>> {
        if p.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "weak transfer matrix has {} columns, probability vector has {}",
                self.cols,
                p.len()
            )));
        }
        Ok((0..self.rows)
            .map(|j| {
                (0..self.cols)
                    .map(|i| self.entry(j, i) * Complex64::new(p[i], 0.0))
                    .sum()
            })
            .collect())
    }
}

/// A weak value together with the post-selection weight it occurs with.
#[derive(Clone, Copy, Debug)]
pub struct WeakValue {
    /// `tr(N† N A rho) / tr(N† N rho)`; complex in general.
    pub value: Complex64,
    /// Post-selection weight `q~ = tr(N† N rho)`.
    pub weight: f64,
}

/// Weak-measurement transfer matrix of the context `(rho, first, second)`.
///
/// Degenerate columns (first-branch weight below `1e-12`) are filled with
/// the formula value while the weight stays above `1e-14`, otherwise with
/// the convention column `e_1`, and flagged either way — mirroring the
/// strong-measurement handling.
pub fn weak_transfer_matrix(
    rho: &DensityMatrix,
    first: &Measurement,
    second: &Measurement,
) -> Result<WeakTransferMatrix> {
    if first.dim() != rho.dim() || second.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measurement dims {} and {} vs state dim {}",
            first.dim(),
            second.dim(),
            rho.dim()
        )));
    }
    let rows = second.rank();
    let cols = first.rank();
    let second_effects: Vec<ComplexMatrix> = (0..rows).map(|j| second.effect(j)).collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut degenerate = vec![false; cols];
    for i in 0..cols {
        let effect_i = first.effect(i);
        let weight = (&effect_i * rho.mat()).trace().re;
        let usable = weight > BRANCH_NORM_FLOOR;
        if weight < DEGENERATE_PROBABILITY {
            degenerate[i] = true;
        }
        if usable {
            for (j, effect_j) in second_effects.iter().enumerate() {
                let num = (&(&effect_i * effect_j) * rho.mat()).trace();
                entries[j * cols + i] = num / Complex64::new(weight, 0.0);
            }
        } else {
            entries[i] = Complex64::new(1.0, 0.0); // row 0, column i
        }
    }
    Ok(WeakTransferMatrix {
        rows,
        cols,
        entries,
        degenerate,
    })
}

/// Weak value of `a` post-selected on the operation `post_op`:
/// `w = tr(N† N a rho) / tr(N† N rho)` with weight `q~ = tr(N† N rho)`.
pub fn weak_value(
    a: &Observable,
    post_op: &ComplexMatrix,
    rho: &DensityMatrix,
) -> Result<WeakValue> {
    if a.dim() != rho.dim() || post_op.rows() != rho.dim() || post_op.cols() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable {}x{}, post-selection {}x{}, state dim {}",
            a.dim(),
            a.dim(),
            post_op.rows(),
            post_op.cols(),
            rho.dim()
        )));
    }
    let effect = &post_op.dagger() * post_op;
    let weight = (&effect * rho.mat()).trace().re;
    if weight <= DEGENERATE_PROBABILITY {
        return Err(Error::ZeroPostSelection(weight));
    }
    let value = (&(&effect * a.mat()) * rho.mat()).trace() / Complex64::new(weight, 0.0);
    Ok(WeakValue { value, weight })
}

/// Both sides of the weak-value average identity
/// `tr(A rho) = sum_j w_j q~_j` for a complete post-selecting measurement.
/// Branches with weight below `1e-12` are skipped (they contribute zero
/// weight). Returns `(lhs, rhs)`.
pub fn weak_expectation_check(
    a: &Observable,
    second: &Measurement,
    rho: &DensityMatrix,
) -> Result<(f64, f64)> {
    if a.dim() != rho.dim() || second.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable dim {}, measurement dim {}, state dim {}",
            a.dim(),
            second.dim(),
            rho.dim()
        )));
    }
    let lhs = rho.expectation(a)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for op in second.ops() {
        match weak_value(a, op, rho) {
            Ok(w) => rhs += w.value * Complex64::new(w.weight, 0.0),
            Err(Error::ZeroPostSelection(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    if rhs.im.abs() > 1e-9 {
        return Err(Error::NotReal(rhs.im));
    }
    Ok((lhs, rhs.re))
}

/// The weak transition probability as a weak value: entry `(j, i)` of the
/// weak transfer matrix is the weak value of the observable `N_j† N_j`
/// pre-conditioned on the operation `M_i† M_i`.
pub fn weak_transition_as_weak_value(
    i: usize,
    j: usize,
    first: &Measurement,
    second: &Measurement,
    rho: &DensityMatrix,
) -> Result<Complex64> {
    let observable = Observable::new(second.effect(j))?;
    Ok(weak_value(&observable, &first.ops()[i], rho)?.value)
}

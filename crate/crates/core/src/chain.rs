//! Measurement chains: sequences of generalized measurements acting on a
//! state, branch probability vectors, and the measurement transfer matrix
//! linking the branch statistics of successive steps.
//!
//! A context is a triple (state, earlier measurement, later measurement);
//! the transfer matrix entry `m_ji = tr(M_i† N_j† N_j M_i rho) / tr(M_i† M_i rho)`
//! is the transition probability from branch `i` of the earlier measurement
//! to branch `j` of the later one, computed on that context state. Chains of
//! projective measurements produce state-independent ("de-contexted")
//! transfer matrices; generic POVM chains do not.

use num_complex::Complex64;

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::rng::SplitMix64;
use crate::states::DensityMatrix;

/// Branch probabilities below this threshold make a transfer-matrix column
/// analytically 0/0; see [`transfer_matrix`] for how such columns are filled.
pub const DEGENERATE_PROBABILITY: f64 = 1e-12;

/// Frobenius norm below which an unnormalized branch carries no limit
/// information and the convention column is used instead.
pub const BRANCH_NORM_FLOOR: f64 = 1e-14;

/// A generalized measurement `{M_i}` with `sum_i M_i† M_i <= 1`.
#[derive(Clone, Debug)]
pub struct Measurement {
    dim: usize,
    ops: Vec<ComplexMatrix>,
    complete: bool,
}

impl Measurement {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidInput(
                "a measurement needs at least one operator".into(),
            ));
        }
        let dim = ops[0].rows();
        for (i, m) in ops.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "measurement operator {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for m in &ops {
            sum = &sum + &(&m.dagger() * m);
        }
        let max = sum.hermitian_eig()?.eigenvalues[dim - 1];
        if max > 1.0 + 1e-9 {
            return Err(Error::CompletenessBound(max));
        }
        let complete = sum.frob_dist(&ComplexMatrix::identity(dim))? <= 1e-10;
        Ok(Self { dim, ops, complete })
    }

    /// Projective measurement from a complete orthonormal basis.
    pub fn from_pvm_basis(basis: &[ComplexVector]) -> Result<Self> {
        check_orthonormal_basis(basis)?;
        Self::new(basis.iter().map(|v| v.projector()).collect())
    }

    /// Random complete measurement with `n_ops` operators, deterministic per
    /// seed: Gaussian operators `G_i` normalized by `(sum G† G)^{-1/2}`.
    pub fn random(d: usize, n_ops: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        let raw: Vec<ComplexMatrix> = (0..n_ops)
            .map(|_| {
                ComplexMatrix::from_fn(d, d, |_, _| {
                    Complex64::new(rng.next_gaussian(), rng.next_gaussian())
                })
            })
            .collect();
        let mut s = ComplexMatrix::zeros(d, d);
        for g in &raw {
            s = &s + &(&g.dagger() * g);
        }
        let eig = s.hermitian_eig().expect("Gram operator is Hermitian");
        let inv_sqrt = ComplexMatrix::from_fn(d, d, |i, j| {
            (0..d)
                .map(|k| {
                    eig.eigenvectors.get(i, k)
                        * Complex64::new(1.0 / eig.eigenvalues[k].sqrt(), 0.0)
                        * eig.eigenvectors.get(j, k).conj()
                })
                .sum()
        });
        Self::new(raw.iter().map(|g| g * &inv_sqrt).collect())
            .expect("normalized family is complete")
    }

    /// Number of operators ("rank" of the measurement).
    pub fn rank(&self) -> usize {
        self.ops.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// Effect operator `M_i† M_i` of branch `i`.
    pub fn effect(&self, i: usize) -> ComplexMatrix {
        &self.ops[i].dagger() * &self.ops[i]
    }

    /// True when `sum_i M_i† M_i = 1` within `1e-10`.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The measurement viewed as its (non-selective) channel.
    pub fn as_channel(&self) -> KrausChannel {
        KrausChannel::new(self.ops.clone()).expect("measurement operators are trace non-increasing")
    }
}

/// Branch probabilities of one measurement step.
///
/// Entries must be `>= -1e-12`; tiny negatives from floating-point noise are
/// clamped into `[0, 1]`. The sum is 1 (within `1e-9`) for complete
/// measurements.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    p: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(raw: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = raw.iter().find(|&&x| x < -1e-12) {
            return Err(Error::OutOfRange(format!(
                "probability {bad:.3e} below -1e-12"
            )));
        }
        Ok(Self {
            p: raw.into_iter().map(|x| x.clamp(0.0, 1.0)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    pub fn sum(&self) -> f64 {
        self.p.iter().sum()
    }
}

/// Left-stochastic matrix of quantum transition probabilities `m_ji`
/// (row `j`: branch of the later measurement, column `i`: branch of the
/// earlier one). Columns sum to 1 when the later measurement is complete.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    degenerate: Vec<bool>,
}

impl TransferMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().copied().collect(),
            degenerate: vec![false; c],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Transition probability from branch `i` to branch `j`.
    pub fn entry(&self, j: usize, i: usize) -> f64 {
        self.entries[j * self.cols + i]
    }

    /// Per-column flags marking 0/0 columns filled by convention.
    pub fn degenerate_columns(&self) -> &[bool] {
        &self.degenerate
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|i| (0..self.rows).map(|j| self.entry(j, i)).sum())
            .collect()
    }

    /// True when entries lie in `[-tol, 1 + tol]` and columns sum to 1
    /// within `1e-9`.
    pub fn is_left_stochastic(&self, tol: f64) -> bool {
        self.entries.iter().all(|&x| x >= -tol && x <= 1.0 + tol)
            && self.column_sums().iter().all(|&s| (s - 1.0).abs() <= 1e-9)
    }

    /// Propagate a probability vector: `Q = Y P`.
    pub fn apply(&self, p: &ProbabilityVector) -> Result<ProbabilityVector> {
        if p.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "transfer matrix has {} columns, probability vector has {}",
                self.cols,
                p.len()
            )));
        }
        let q: Vec<f64> = (0..self.rows)
            .map(|j| (0..self.cols).map(|i| self.entry(j, i) * p.get(i)).sum())
            .collect();
        ProbabilityVector::new(q)
    }

    pub fn frob_dist(&self, other: &TransferMatrix) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "transfer matrix shapes differ".into(),
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }
}

/// Result of one measurement step.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    /// Unnormalized post-measurement state `sum_i M_i rho M_i†`
    /// (trace below 1 for incomplete measurements; never renormalized here).
    pub post_state: ComplexMatrix,
    /// Trace of `post_state`.
    pub trace: f64,
    /// Branch probabilities `p_i = tr(M_i† M_i rho)`.
    pub probabilities: ProbabilityVector,
    /// Unnormalized branches `M_i rho M_i†`.
    pub branches: Vec<ComplexMatrix>,
}

impl MeasurementOutcome {
    /// Validate the post-measurement state as a density matrix
    /// (possible whenever the measurement is complete).
    pub fn post_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.post_state.clone())
    }
}

/// Apply one measurement: branches `M_i rho M_i†`, probabilities
/// `p_i = tr(M_i† M_i rho)`, post state `sum_i M_i rho M_i†`.
pub fn apply_measurement(rho: &DensityMatrix, m: &Measurement) -> Result<MeasurementOutcome> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measurement dim {} vs state dim {}",
            m.dim(),
            rho.dim()
        )));
    }
    let branches: Vec<ComplexMatrix> = m
        .ops()
        .iter()
        .map(|op| &(op * rho.mat()) * &op.dagger())
        .collect();
    let probabilities = ProbabilityVector::new(
        m.ops()
            .iter()
            .map(|op| (&(&op.dagger() * op) * rho.mat()).trace().re)
            .collect(),
    )?;
    let mut post_state = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for b in &branches {
        post_state = &post_state + b;
    }
    let trace = post_state.trace().re;
    Ok(MeasurementOutcome {
        post_state,
        trace,
        probabilities,
        branches,
    })
}

/// Measurement transfer matrix of the context `(rho_prev, first, second)`:
/// `m_ji = tr(M_i† N_j† N_j M_i rho) / tr(M_i† M_i rho)`.
///
/// Degenerate columns (branch probability below `1e-12`): when the
/// unnormalized branch still carries norm above `1e-14`, the column is
/// filled with the limiting conditional distribution computed from that
/// branch; otherwise with the convention column `e_1` (all weight on the
/// first row). Either way the column is flagged in
/// [`TransferMatrix::degenerate_columns`].
pub fn transfer_matrix(
    rho_prev: &DensityMatrix,
    first: &Measurement,
    second: &Measurement,
) -> Result<TransferMatrix> {
    if first.dim() != rho_prev.dim() || second.dim() != rho_prev.dim() {
        return Err(Error::DimensionMismatch(format!(
            "measurement dims {} and {} vs state dim {}",
            first.dim(),
            second.dim(),
            rho_prev.dim()
        )));
    }
    let rows = second.rank();
    let cols = first.rank();
    let second_effects: Vec<ComplexMatrix> = (0..rows).map(|j| second.effect(j)).collect();
    let mut entries = vec![0.0; rows * cols];
    let mut degenerate = vec![false; cols];
    for i in 0..cols {
        let op = &first.ops()[i];
        let branch = &(op * rho_prev.mat()) * &op.dagger();
        let weight = branch.trace().re;
        if weight >= DEGENERATE_PROBABILITY {
            for (j, effect) in second_effects.iter().enumerate() {
                entries[j * cols + i] = (effect * &branch).trace().re / weight;
            }
        } else {
            degenerate[i] = true;
            if branch.frob_norm() > BRANCH_NORM_FLOOR {
                for (j, effect) in second_effects.iter().enumerate() {
                    entries[j * cols + i] = (effect * &branch).trace().re / weight;
                }
            } else {
                entries[i] = 1.0; // row 0, column i
            }
        }
    }
    Ok(TransferMatrix {
        rows,
        cols,
        entries,
        degenerate,
    })
}

/// State-independent transfer matrix of two projective measurements, entry
/// `(j, i) = |<m_i|n_j>|^2`. Doubly stochastic; for a pair of qubit bases it
/// is also symmetric.
pub fn pvm_transfer_matrix(
    first: &[ComplexVector],
    second: &[ComplexVector],
) -> Result<TransferMatrix> {
    check_orthonormal_basis(first)?;
    check_orthonormal_basis(second)?;
    if first[0].dim() != second[0].dim() {
        return Err(Error::DimensionMismatch(
            "bases live in different dimensions".into(),
        ));
    }
    let rows = second.len();
    let cols = first.len();
    let mut entries = vec![0.0; rows * cols];
    for (j, n) in second.iter().enumerate() {
        for (i, m) in first.iter().enumerate() {
            entries[j * cols + i] = m.inner(n).norm_sqr();
        }
    }
    Ok(TransferMatrix {
        rows,
        cols,
        entries,
        degenerate: vec![false; cols],
    })
}

fn check_orthonormal_basis(basis: &[ComplexVector]) -> Result<()> {
    if basis.is_empty() {
        return Err(Error::InvalidBasis("empty vector family".into()));
    }
    let d = basis[0].dim();
    if basis.len() != d {
        return Err(Error::InvalidBasis(format!(
            "{} vectors cannot span dimension {d}",
            basis.len()
        )));
    }
    for (i, v) in basis.iter().enumerate() {
        if v.dim() != d {
            return Err(Error::InvalidBasis("vectors of mixed dimension".into()));
        }
        if (v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidBasis(format!(
                "vector {i} has norm {}",
                v.norm()
            )));
        }
        for (j, w) in basis.iter().enumerate().skip(i + 1) {
            let overlap = v.inner(w).norm();
            if overlap > 1e-10 {
                return Err(Error::InvalidBasis(format!(
                    "vectors {i} and {j} overlap by {overlap:.3e}"
                )));
            }
        }
    }
    Ok(())
}

/// Step generator of a chain: maps the 1-based step index and the current
/// state to the measurement applied at that step.
pub type StepGenerator = Box<dyn Fn(usize, &DensityMatrix) -> Measurement + Send + Sync>;

/// A chain of measurement steps. Each step is produced by a generator that
/// may inspect the step index and the current state; the generator list is
/// cycled when a run is longer than the list.
pub struct MeasurementChain {
    generators: Vec<StepGenerator>,
}

impl MeasurementChain {
    pub fn from_generators(generators: Vec<StepGenerator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput(
                "a chain needs at least one step generator".into(),
            ));
        }
        Ok(Self { generators })
    }

    /// The same measurement at every step.
    pub fn uniform(m: Measurement) -> Self {
        Self {
            generators: vec![Box::new(move |_, _| m.clone())],
        }
    }

    /// Cycle through a fixed list of measurements.
    pub fn cycle(list: Vec<Measurement>) -> Result<Self> {
        if list.is_empty() {
            return Err(Error::InvalidInput(
                "a chain needs at least one measurement".into(),
            ));
        }
        Ok(Self {
            generators: list
                .into_iter()
                .map(|m| Box::new(move |_: usize, _: &DensityMatrix| m.clone()) as StepGenerator)
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Measurement for 1-based step `n` acting on `state`.
    pub fn step(&self, n: usize, state: &DensityMatrix) -> Measurement {
        let idx = (n - 1) % self.generators.len();
        (self.generators[idx])(n, state)
    }
}

impl std::fmt::Debug for MeasurementChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MeasurementChain({} generators)", self.generators.len())
    }
}

/// One record of a chain run: the state after step `n`, the branch
/// probabilities of step `n`, and (for `n >= 2`) the transfer matrix
/// computed on the context state `rho_{n-2}`.
#[derive(Clone, Debug)]
pub struct TrajectoryStep {
    pub step: usize,
    pub state: DensityMatrix,
    pub probabilities: ProbabilityVector,
    pub transfer: Option<TransferMatrix>,
}

/// Run a chain for `n_steps` measurements from `rho0`.
///
/// Step `k` applies the chain's `k`-th measurement to `rho_{k-1}`; the
/// transfer matrix `Y_{k,k-1}` pairs measurements `k-1` and `k` on the
/// stored context state `rho_{k-2}`, so `P_k = Y_{k,k-1} P_{k-1}` holds
/// along the run. Measurements must be complete for the trajectory states
/// to remain valid density matrices.
///
/// ```
/// use qdyn::chain::{amplitude_damping_measurement, run_chain, MeasurementChain};
/// use qdyn::linalg::ComplexVector;
/// use qdyn::DensityMatrix;
///
/// let excited = DensityMatrix::from_pure(&ComplexVector::basis(2, 1)).unwrap();
/// let chain = MeasurementChain::uniform(amplitude_damping_measurement(0.5).unwrap());
/// let trajectory = run_chain(&excited, &chain, 10).unwrap();
/// // the excited population halves at every step
/// let p_e = trajectory.last().unwrap().state.mat().get(1, 1).re;
/// assert!((p_e - 0.5f64.powi(10)).abs() < 1e-12);
/// ```
pub fn run_chain(
    rho0: &DensityMatrix,
    chain: &MeasurementChain,
    n_steps: usize,
) -> Result<Vec<TrajectoryStep>> {
    let mut out = Vec::with_capacity(n_steps);
    let mut context = rho0.clone(); // rho_{k-2} when computing step k
    let mut current = rho0.clone();
    let mut prev_measurement: Option<Measurement> = None;
    for k in 1..=n_steps {
        let m = chain.step(k, &current);
        let outcome = apply_measurement(&current, &m)?;
        let next = outcome.post_density()?;
        let transfer = match &prev_measurement {
            Some(prev) => Some(transfer_matrix(&context, prev, &m)?),
            None => None,
        };
        out.push(TrajectoryStep {
            step: k,
            state: next.clone(),
            probabilities: outcome.probabilities,
            transfer,
        });
        context = current;
        current = next;
        prev_measurement = Some(m);
    }
    Ok(out)
}

/// Verdict of the state-dependence probe.
#[derive(Clone, Copy, Debug)]
pub struct ContextDeviation {
    pub decontexted: bool,
    /// Largest pairwise Frobenius distance between sampled transfer matrices.
    pub max_deviation: f64,
}

/// Sample the transfer matrix of `(first, second)` over random full-rank
/// context states and report whether it is state-independent within `tol`.
pub fn is_decontexted(
    first: &Measurement,
    second: &Measurement,
    state_samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ContextDeviation> {
    let d = first.dim();
    let mut rng = SplitMix64::new(seed);
    let mut matrices = Vec::with_capacity(state_samples);
    for _ in 0..state_samples {
        let rho = crate::states::random_density(d, d, rng.next_u64())?;
        matrices.push(transfer_matrix(&rho, first, second)?);
    }
    let mut max_deviation: f64 = 0.0;
    for a in 0..matrices.len() {
        for b in (a + 1)..matrices.len() {
            max_deviation = max_deviation.max(matrices[a].frob_dist(&matrices[b])?);
        }
    }
    Ok(ContextDeviation {
        decontexted: max_deviation < tol,
        max_deviation,
    })
}

/// The two-operator amplitude-damping measurement
/// `K1 = [[1, 0], [0, sqrt(gamma)]]`, `K2 = [[0, sqrt(1-gamma)], [0, 0]]`
/// with `gamma = exp(-tau/T)`. At `gamma = 1` the damping operator vanishes
/// and is dropped, leaving the identity measurement.
pub fn amplitude_damping_measurement(gamma: f64) -> Result<Measurement> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "gamma = {gamma} must lie in (0, 1]"
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let k1 = ComplexMatrix::from_rows(&[
        vec![Complex64::new(1.0, 0.0), zero],
        vec![zero, Complex64::new(gamma.sqrt(), 0.0)],
    ]);
    if gamma == 1.0 {
        return Measurement::new(vec![k1]);
    }
    let k2 = ComplexMatrix::from_rows(&[
        vec![zero, Complex64::new((1.0 - gamma).sqrt(), 0.0)],
        vec![zero, zero],
    ]);
    Measurement::new(vec![k1, k2])
}

/// Closed-form state after `n` amplitude-damping steps starting from
/// `alpha |g> + beta |e>`:
/// `[[1 - beta^2 gamma^n, alpha beta gamma^{n/2}], [alpha beta gamma^{n/2}, beta^2 gamma^n]]`.
pub fn amplitude_damping_analytic(
    n: usize,
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Result<DensityMatrix> {
    if (alpha * alpha + beta * beta - 1.0).abs() > 1e-10 {
        return Err(Error::OutOfRange(format!(
            "alpha^2 + beta^2 = {} must be 1",
            alpha * alpha + beta * beta
        )));
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "gamma = {gamma} must lie in (0, 1]"
        )));
    }
    let gn = gamma.powi(n as i32);
    let off = alpha * beta * gamma.powf(n as f64 / 2.0);
    DensityMatrix::new(ComplexMatrix::from_real_rows(&[
        vec![1.0 - beta * beta * gn, off],
        vec![off, beta * beta * gn],
    ]))
}

/// The printed closed form of the amplitude-damping transfer matrix
/// `Y_{n,n-1}` for an initially excited state (`beta = 1`), `n >= 2`:
///
/// ```text
/// [ (1 - g^{n-2} + g^n) / (1 - g^{n-2} + g^{n-1})    1 ]
/// [ (g^{n-1} - g^n)     / (1 - g^{n-2} + g^{n-1})    0 ]
/// ```
///
/// Its `n -> oo` limit is `[[1, 1], [0, 0]]`. For general initial
/// superpositions use [`transfer_matrix`] on the evolved context state; the
/// printed formula only covers the `beta = 1` trajectory.
pub fn amplitude_damping_transfer_paper(n: usize, gamma: f64) -> Result<TransferMatrix> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "transfer matrix needs n >= 2, got {n}"
        )));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::OutOfRange(format!(
            "gamma = {gamma} must lie in (0, 1)"
        )));
    }
    let g = gamma;
    let denom = 1.0 - g.powi(n as i32 - 2) + g.powi(n as i32 - 1);
    let top = (1.0 - g.powi(n as i32 - 2) + g.powi(n as i32)) / denom;
    let bottom = (g.powi(n as i32 - 1) - g.powi(n as i32)) / denom;
    Ok(TransferMatrix::from_rows(&[
        vec![top, 1.0],
        vec![bottom, 0.0],
    ]))
}

/// Measurement axes for spin-1/2 projective measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Basis kets of the spin-1/2 measurement along `axis`.
pub fn spin_basis(axis: Axis) -> [ComplexVector; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new(s, 0.0);
    match axis {
        Axis::Z => [ComplexVector::basis(2, 0), ComplexVector::basis(2, 1)],
        Axis::X => [
            ComplexVector::new(vec![c, c]).expect("finite"),
            ComplexVector::new(vec![c, -c]).expect("finite"),
        ],
        Axis::Y => [
            ComplexVector::new(vec![c, Complex64::new(0.0, s)]).expect("finite"),
            ComplexVector::new(vec![c, Complex64::new(0.0, -s)]).expect("finite"),
        ],
    }
}

/// Spin-1/2 projective measurement along `axis`.
pub fn spin_pvm(axis: Axis) -> Measurement {
    let basis = spin_basis(axis);
    Measurement::from_pvm_basis(&basis).expect("spin bases are orthonormal")
}

/// Stern-Gerlach chain: projective spin measurements cycling through the
/// given axis list.
pub fn stern_gerlach_chain(axes: &[Axis]) -> Result<MeasurementChain> {
    if axes.is_empty() {
        return Err(Error::InvalidInput("axis list must be nonempty".into()));
    }
    MeasurementChain::cycle(axes.iter().map(|&a| spin_pvm(a)).collect())
}

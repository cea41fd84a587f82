//! Channel representations and conversions: Kraus/operator-sum form, Choi
//! matrix, natural (superoperator) matrix, affine Bloch form, the Heisenberg
//! picture, and the positivity-hierarchy classifier.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * `vec` is row-major stacking, matching the matrix storage, so the
//!   natural representation is `N = sum_k K_k (x) conj(K_k)` and
//!   `vec(Phi(X)) = N vec(X)`.
//! * The canonical Choi matrix is the unnormalized
//!   `C = sum_ij Phi(|i><j|) (x) |i><j|`, which coincides with
//!   `d (Phi (x) 1)(|xi><xi|)` for the maximally entangled `|xi>`.
//! * [`reshuffle`] swaps the two middle indices of the 4-tensor view,
//!   `R(M)[(a,b),(i,j)] = M[(a,i),(b,j)]`; it is an involution and maps the
//!   natural representation to the Choi matrix exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{maximally_entangled, random_pure, DensityMatrix, Observable, OperatorBasis};

/// Kraus operators below this weight are dropped when extracting a channel
/// from a Choi matrix or a dilation.
pub const KRAUS_TRUNCATION: f64 = 1e-12;

/// Residual below which a channel counts as trace preserving.
pub const TP_TOL: f64 = 1e-10;

/// A quantum operation in operator-sum form `Phi(rho) = sum_i K_i rho K_i†`.
///
/// The operator family must be trace non-increasing,
/// `sum_i K_i† K_i <= 1`; trace preservation is a checked flag, not a
/// constructor requirement, so measurement branches are representable.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidInput(
                "a channel needs at least one Kraus operator".into(),
            ));
        }
        let dim_out = kraus[0].rows();
        let dim_in = kraus[0].cols();
        for (i, k) in kraus.iter().enumerate() {
            if k.rows() != dim_out || k.cols() != dim_in {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {i} is {}x{}, expected {dim_out}x{dim_in}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        let ch = Self {
            dim_in,
            dim_out,
            kraus,
        };
        let max = ch.completeness_operator().hermitian_eig()?.eigenvalues[dim_in - 1];
        if max > 1.0 + 1e-9 {
            return Err(Error::CompletenessBound(max));
        }
        Ok(ch)
    }

    /// Identity channel on dimension `d`.
    pub fn identity(d: usize) -> Self {
        Self {
            dim_in: d,
            dim_out: d,
            kraus: vec![ComplexMatrix::identity(d)],
        }
    }

    /// Channel `rho -> U rho U†` of a unitary.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        u.require_unitary(TP_TOL)?;
        Self::new(vec![u])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn rank(&self) -> usize {
        self.kraus.len()
    }

    /// `sum_i K_i† K_i`.
    pub fn completeness_operator(&self) -> ComplexMatrix {
        let mut sum = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            sum = &sum + &(&k.dagger() * k);
        }
        sum
    }

    /// Frobenius residual `||sum_i K_i† K_i - 1||_F`.
    pub fn tp_residual(&self) -> f64 {
        self.completeness_operator()
            .frob_dist(&ComplexMatrix::identity(self.dim_in))
            .expect("same dims")
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.tp_residual() <= TP_TOL
    }

    /// Apply to an arbitrary matrix: `sum_i K_i m K_i†`.
    pub fn apply_matrix(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.rows() != self.dim_in || m.cols() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "channel input dim {} vs matrix {}x{}",
                self.dim_in,
                m.rows(),
                m.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &(&(k * m) * &k.dagger());
        }
        Ok(out)
    }

    /// Apply to a state. The output is validated, so this is the right call
    /// for trace-preserving channels; use [`apply_matrix`](Self::apply_matrix)
    /// or [`apply_renormalized`](Self::apply_renormalized) for branches.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(self.apply_matrix(rho.mat())?)
    }

    /// Apply to a state and renormalize; also reports the pre-normalization
    /// trace (the branch weight for non-trace-preserving channels).
    pub fn apply_renormalized(&self, rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
        let raw = self.apply_matrix(rho.mat())?;
        let tr = raw.trace().re;
        if tr < KRAUS_TRUNCATION {
            return Err(Error::ZeroPostSelection(tr));
        }
        Ok((DensityMatrix::new(raw.scale_re(1.0 / tr))?, tr))
    }

    /// Heisenberg-picture action on an observable: `sum_i K_i† a K_i`.
    ///
    /// Dual to [`apply`](Self::apply):
    /// `tr(a Phi(rho)) = tr(Phi†(a) rho)` for every state.
    pub fn heisenberg_apply(&self, a: &Observable) -> Result<Observable> {
        if a.dim() != self.dim_out {
            return Err(Error::DimensionMismatch(format!(
                "observable dim {} vs channel output dim {}",
                a.dim(),
                self.dim_out
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            out = &out + &(&(&k.dagger() * a.mat()) * k);
        }
        Observable::new(out)
    }

    /// Canonical (unnormalized) Choi matrix `sum_ij Phi(|i><j|) (x) |i><j|`.
    ///
    /// Requires a square channel. With row-major `vec` this is
    /// `sum_k vec(K_k) vec(K_k)†`, and it equals the normalization
    /// `d (Phi (x) 1)(|xi><xi|)`.
    pub fn choi(&self) -> Result<ChoiMatrix> {
        if self.dim_in != self.dim_out {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix needs a square channel, got {} -> {}",
                self.dim_in, self.dim_out
            )));
        }
        let d = self.dim_in;
        let mut mat = ComplexMatrix::zeros(d * d, d * d);
        for k in &self.kraus {
            let v = k.entries(); // row-major vec(K)
            for r in 0..d * d {
                for c in 0..d * d {
                    let val = mat.get(r, c) + v[r] * v[c].conj();
                    mat.set(r, c, val);
                }
            }
        }
        ChoiMatrix::new(mat)
    }

    /// Natural representation: the `d^2 x d^2` matrix with
    /// `vec(Phi(X)) = N vec(X)` under row-major `vec`;
    /// `N = sum_k K_k (x) conj(K_k)`.
    pub fn natural_rep(&self) -> Result<ComplexMatrix> {
        if self.dim_in != self.dim_out {
            return Err(Error::DimensionMismatch(format!(
                "natural representation needs a square channel, got {} -> {}",
                self.dim_in, self.dim_out
            )));
        }
        let d = self.dim_in;
        let mut n = ComplexMatrix::zeros(d * d, d * d);
        for k in &self.kraus {
            n = &n + &k.kron(&k.conj());
        }
        Ok(n)
    }

    /// Affine Bloch-space representation in the given operator basis.
    pub fn affine_rep(&self, basis: &OperatorBasis) -> Result<AffineRep> {
        if self.dim_in != self.dim_out {
            return Err(Error::DimensionMismatch(
                "affine representation needs a square channel".into(),
            ));
        }
        if basis.dim() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "basis dim {} vs channel dim {}",
                basis.dim(),
                self.dim_in
            )));
        }
        let d = self.dim_in;
        let n = d * d - 1;
        let images: Vec<ComplexMatrix> = basis
            .elements()
            .iter()
            .map(|f| self.apply_matrix(f.mat()))
            .collect::<Result<_>>()?;
        let mut r_block = vec![0.0; n * n];
        let mut r_shift = vec![0.0; n];
        let sqrt_d = (d as f64).sqrt();
        for i in 1..=n {
            let fi = basis.element(i).mat();
            // Phi(1) = sqrt(d) Phi(F_0)
            r_shift[i - 1] = (fi * &images[0]).trace().re * sqrt_d;
            for j in 1..=n {
                r_block[(i - 1) * n + (j - 1)] = (fi * &images[j]).trace().re;
            }
        }
        Ok(AffineRep {
            dim: d,
            r_block,
            r_shift,
        })
    }

    /// Tensor the channel with an identity of dimension `m`
    /// (`Phi (x) 1_m`), via Kraus operators `K_i (x) 1_m`.
    pub fn tensor_with_identity(&self, m: usize) -> Self {
        let id = ComplexMatrix::identity(m);
        Self {
            dim_in: self.dim_in * m,
            dim_out: self.dim_out * m,
            kraus: self.kraus.iter().map(|k| k.kron(&id)).collect(),
        }
    }
}

/// Sequential composition: the channel acting as `second` after `first`,
/// with Kraus family `{N_j M_i}`.
pub fn compose(second: &KrausChannel, first: &KrausChannel) -> Result<KrausChannel> {
    if first.dim_out() != second.dim_in() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose: first outputs dim {}, second expects dim {}",
            first.dim_out(),
            second.dim_in()
        )));
    }
    let mut kraus = Vec::with_capacity(first.rank() * second.rank());
    for n in second.kraus() {
        for m in first.kraus() {
            kraus.push(n * m);
        }
    }
    KrausChannel::new(kraus)
}

/// Choi matrix of a (Hermiticity-preserving) map on a qudit.
///
/// Stored in the unnormalized convention `sum_ij Phi(|i><j|) (x) |i><j|`.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    d: usize,
    mat: ComplexMatrix,
}

impl ChoiMatrix {
    /// Wrap a `d^2 x d^2` Hermitian matrix as a Choi matrix.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(
                "Choi matrix must be square".into(),
            ));
        }
        let side = mat.rows();
        let d = (side as f64).sqrt().round() as usize;
        if d * d != side {
            return Err(Error::DimensionMismatch(format!(
                "Choi side {side} is not a perfect square"
            )));
        }
        mat.require_hermitian()?;
        Ok(Self { d, mat })
    }

    /// System dimension `d` (the matrix is `d^2 x d^2`).
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.mat.hermitian_eig()?.eigenvalues)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.mat.min_eigenvalue()
    }

    /// Completely positive iff the matrix is positive semidefinite.
    pub fn is_cp(&self, tol: f64) -> Result<bool> {
        self.mat.is_psd(tol)
    }

    /// Frobenius distance between Choi matrices; the channel-equality metric
    /// (it quotients out the unitary freedom of Kraus decompositions).
    pub fn dist(&self, other: &ChoiMatrix) -> Result<f64> {
        self.mat.frob_dist(&other.mat)
    }

    /// Apply the underlying map to a matrix:
    /// `Phi(X)_ab = sum_ij C[(a,i),(b,j)] X_ij`.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.d;
        if x.rows() != d || x.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "map input must be {d}x{d}, got {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    for j in 0..d {
                        acc += self.mat.get(a * d + i, b * d + j) * x.get(i, j);
                    }
                }
                out.set(a, b, acc);
            }
        }
        Ok(out)
    }

    /// Residual of the trace-preservation condition `tr_out(C) = 1`.
    pub fn tp_residual(&self) -> Result<f64> {
        let reduced = self.mat.partial_trace(&[self.d, self.d], &[1])?;
        reduced.frob_dist(&ComplexMatrix::identity(self.d))
    }
}

/// Extract a Kraus decomposition from a positive-semidefinite Choi matrix.
///
/// Eigenpairs with weight below [`KRAUS_TRUNCATION`] are dropped; the
/// resulting operator count is at most `d^2`, with equality for a full-rank
/// Choi matrix. Errors with [`Error::NotCompletelyPositive`] when an
/// eigenvalue sits below `-tol`.
pub fn kraus_from_choi(c: &ChoiMatrix, tol: f64) -> Result<KrausChannel> {
    let eig = c.mat().hermitian_eig()?;
    if eig.eigenvalues[0] < -tol {
        return Err(Error::NotCompletelyPositive(eig.eigenvalues[0]));
    }
    let d = c.d();
    let mut kraus = Vec::new();
    for (k, &w) in eig.eigenvalues.iter().enumerate() {
        if w <= KRAUS_TRUNCATION {
            continue;
        }
        let scale = Complex64::new(w.sqrt(), 0.0);
        let v = eig.eigenvector(k);
        kraus.push(ComplexMatrix::from_fn(d, d, |i, j| {
            v.get(i * d + j) * scale
        }));
    }
    if kraus.is_empty() {
        // zero map: keep a single zero operator so the channel is well formed
        kraus.push(ComplexMatrix::zeros(d, d));
    }
    KrausChannel::new(kraus)
}

/// Index involution between the natural representation and the Choi matrix:
/// swaps the middle indices of the 4-tensor view,
/// `R(M)[(a,b),(i,j)] = M[(a,i),(b,j)]`. Applying it twice is the identity,
/// and `reshuffle(natural_rep(ch)) = choi(ch)` exactly.
pub fn reshuffle(m: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    if m.rows() != d * d || m.cols() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "reshuffle expects a {0}x{0} matrix for d = {d}, got {1}x{2}",
            d * d,
            m.rows(),
            m.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for i in 0..d {
                for j in 0..d {
                    out.set(a * d + b, i * d + j, m.get(a * d + i, b * d + j));
                }
            }
        }
    }
    Ok(out)
}

/// Affine form of a channel on Bloch coherence vectors: `f' = R f + r`.
///
/// Embedded as a `d^2 x d^2` real matrix acting on `(1, f)` the block form
/// has top row `(1, 0, ..., 0)` for trace-preserving channels.
#[derive(Clone, Debug)]
pub struct AffineRep {
    dim: usize,
    r_block: Vec<f64>,
    r_shift: Vec<f64>,
}

impl AffineRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Linear block `R`, row-major `(d^2-1) x (d^2-1)`.
    pub fn r_block(&self) -> &[f64] {
        &self.r_block
    }

    pub fn r_block_entry(&self, i: usize, j: usize) -> f64 {
        self.r_block[i * (self.dim * self.dim - 1) + j]
    }

    /// Translation part `r`.
    pub fn r_shift(&self) -> &[f64] {
        &self.r_shift
    }

    /// Apply the affine map to a Bloch vector.
    pub fn apply_to_bloch(
        &self,
        f: &crate::states::BlochVector,
    ) -> Result<crate::states::BlochVector> {
        let n = self.dim * self.dim - 1;
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "Bloch vector dim {} vs affine rep dim {}",
                f.dim(),
                self.dim
            )));
        }
        let out: Vec<f64> = (0..n)
            .map(|i| {
                self.r_shift[i]
                    + (0..n)
                        .map(|j| self.r_block[i * n + j] * f.components()[j])
                        .sum::<f64>()
            })
            .collect();
        crate::states::BlochVector::new(self.dim, out)
    }

    /// Block-embedded `d^2 x d^2` matrix acting on `(1, f)`:
    /// top row `(1, 0, ..., 0)`, first column `(1, r)`.
    pub fn embedded(&self) -> Vec<f64> {
        let n = self.dim * self.dim - 1;
        let side = n + 1;
        let mut m = vec![0.0; side * side];
        m[0] = 1.0;
        for i in 0..n {
            m[(i + 1) * side] = self.r_shift[i];
            for j in 0..n {
                m[(i + 1) * side + (j + 1)] = self.r_block[i * n + j];
            }
        }
        m
    }
}

/// Hermitian-map form `Phi(O) = sum_ab d_ab K_a† O K_b` with a Hermitian
/// coefficient matrix `d_ab`.
#[derive(Clone, Debug)]
pub struct HermitianMapRep {
    coeff: ComplexMatrix,
    family: Vec<ComplexMatrix>,
}

impl HermitianMapRep {
    pub fn new(coeff: ComplexMatrix, family: Vec<ComplexMatrix>) -> Result<Self> {
        coeff.require_hermitian()?;
        if coeff.rows() != family.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient matrix side {} vs family size {}",
                coeff.rows(),
                family.len()
            )));
        }
        if family.is_empty() {
            return Err(Error::InvalidInput(
                "operator family must be nonempty".into(),
            ));
        }
        let d = family[0].rows();
        if family.iter().any(|k| k.rows() != d || k.cols() != d) {
            return Err(Error::DimensionMismatch(
                "family operators must share a square shape".into(),
            ));
        }
        Ok(Self { coeff, family })
    }

    pub fn coeff(&self) -> &ComplexMatrix {
        &self.coeff
    }

    pub fn family(&self) -> &[ComplexMatrix] {
        &self.family
    }

    /// Apply the map to an observable; Hermiticity of the coefficient matrix
    /// guarantees a Hermitian output.
    pub fn apply(&self, a: &Observable) -> Result<Observable> {
        let d = self.family[0].rows();
        if a.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "observable dim {} vs family dim {d}",
                a.dim()
            )));
        }
        let mut out = ComplexMatrix::zeros(d, d);
        for (alpha, ka) in self.family.iter().enumerate() {
            for (beta, kb) in self.family.iter().enumerate() {
                let w = self.coeff.get(alpha, beta);
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out = &out + &(&(&ka.dagger() * a.mat()) * kb).scale(w);
            }
        }
        Observable::new(out)
    }
}

/// Positivity classes, ordered by strength: every completely positive map is
/// positive, every positive map is physically positive, every physically
/// positive map is Hermitian(-preserving).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Hermitian,
    PhysicallyPositive,
    Positive,
    CompletelyPositive,
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            MapClass::Hermitian => "hermitian",
            MapClass::PhysicallyPositive => "physically-positive",
            MapClass::Positive => "positive",
            MapClass::CompletelyPositive => "completely-positive",
        };
        f.write_str(name)
    }
}

/// Partial transpose of a bipartite state on the chosen factor
/// (`which` is 0 or 1). The result stays Hermitian with unit trace but may
/// have negative eigenvalues.
pub fn partial_transpose(
    rho: &DensityMatrix,
    dims: (usize, usize),
    which: usize,
) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    if d1 * d2 != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dims {}x{} do not factor state dim {}",
            d1,
            d2,
            rho.dim()
        )));
    }
    if which > 1 {
        return Err(Error::InvalidInput(
            "partial transpose factor must be 0 or 1".into(),
        ));
    }
    let m = rho.mat();
    let out = ComplexMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        let (i, j) = (r / d2, r % d2);
        let (k, l) = (c / d2, c % d2);
        if which == 0 {
            m.get(k * d2 + j, i * d2 + l)
        } else {
            m.get(i * d2 + l, k * d2 + j)
        }
    });
    Ok(out)
}

/// Semi-decision classifier for the positivity hierarchy.
///
/// * `CompletelyPositive`: the Choi matrix is positive semidefinite
///   (up to `-tol` on the smallest eigenvalue). This verdict is exact.
/// * `Positive`: no violation was found by applying the map to `samples`
///   random pure states, **and** for qubit maps the decomposability
///   certificate holds (the partially transposed Choi matrix is positive
///   semidefinite, i.e. the map is completely positive after composition
///   with the transpose). Positivity testing by sampling alone cannot be
///   conclusive, so read this verdict as "no violation found".
/// * `Hermitian`: a sampled input produced a negative output, or the qubit
///   certificate failed.
pub fn classify(c: &ChoiMatrix, samples: usize, seed: u64, tol: f64) -> Result<MapClass> {
    if c.is_cp(tol)? {
        return Ok(MapClass::CompletelyPositive);
    }
    let d = c.d();
    let mut rng = crate::rng::SplitMix64::new(seed);
    for _ in 0..samples {
        let psi = random_pure(d, rng.next_u64());
        let out = c.apply_matrix(&psi.projector())?;
        if out.min_eigenvalue()? < -tol {
            return Ok(MapClass::Hermitian);
        }
    }
    if d <= 2 {
        // Choi of Phi after the transpose map is the partial transpose of
        // the Choi of Phi on its second factor.
        let pt = partial_transpose_raw(c.mat(), d);
        if !pt.is_psd(tol)? {
            return Ok(MapClass::Hermitian);
        }
    }
    Ok(MapClass::Positive)
}

/// Domain-restricted positivity verdict: `PhysicallyPositive` when the map
/// sends every supplied state to a positive-semidefinite output, even though
/// it is not completely positive.
pub fn classify_on_domain(c: &ChoiMatrix, states: &[DensityMatrix], tol: f64) -> Result<MapClass> {
    if c.is_cp(tol)? {
        return Ok(MapClass::CompletelyPositive);
    }
    for rho in states {
        let out = c.apply_matrix(rho.mat())?;
        if out.min_eigenvalue()? < -tol {
            return Ok(MapClass::Hermitian);
        }
    }
    Ok(MapClass::PhysicallyPositive)
}

/// Partial transpose on the second factor of a `d^2 x d^2` matrix.
fn partial_transpose_raw(m: &ComplexMatrix, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        m.get(i * d + l, k * d + j)
    })
}

/// Choi matrix of the transpose map: `sum_ij |j><i| (x) |i><j|`, which is
/// the swap operator. Its smallest eigenvalue is -1, so the transpose map is
/// positive but not completely positive.
pub fn transpose_map_choi(d: usize) -> ChoiMatrix {
    let mut mat = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            mat.set(j * d + i, i * d + j, Complex64::new(1.0, 0.0));
        }
    }
    ChoiMatrix::new(mat).expect("swap operator is Hermitian")
}

/// The paper-normalized Choi matrix `d (Phi (x) 1)(|xi><xi|)`, computed the
/// literal way. Used in tests to pin the scalar convention; equal to
/// [`KrausChannel::choi`].
pub fn choi_via_entangled_state(ch: &KrausChannel) -> Result<ComplexMatrix> {
    if ch.dim_in() != ch.dim_out() {
        return Err(Error::DimensionMismatch("needs a square channel".into()));
    }
    let d = ch.dim_in();
    let xi = maximally_entangled(d);
    let big = ch.tensor_with_identity(d);
    let out = big.apply_matrix(&xi.projector())?;
    Ok(out.scale_re(d as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ComplexVector, PSD_TOL};
    use crate::rng::SplitMix64;
    use crate::states::{random_density, random_unitary};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli(which: char) -> ComplexMatrix {
        match which {
            'x' => ComplexMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(1.0, 0.0)],
                vec![c(1.0, 0.0), c(0.0, 0.0)],
            ]),
            'y' => ComplexMatrix::from_rows(&[
                vec![c(0.0, 0.0), c(0.0, -1.0)],
                vec![c(0.0, 1.0), c(0.0, 0.0)],
            ]),
            'z' => ComplexMatrix::diag_real(&[1.0, -1.0]),
            _ => unreachable!(),
        }
    }

    /// The fully depolarizing qubit channel `rho -> tr(rho) 1/2` in its
    /// four-Pauli Kraus form.
    fn depolarizing() -> KrausChannel {
        KrausChannel::new(vec![
            ComplexMatrix::identity(2).scale_re(0.5),
            pauli('x').scale_re(0.5),
            pauli('y').scale_re(0.5),
            pauli('z').scale_re(0.5),
        ])
        .unwrap()
    }

    fn random_tp_channel(d: usize, n_ops: usize, seed: u64) -> KrausChannel {
        let mut rng = SplitMix64::new(seed);
        let raw: Vec<ComplexMatrix> = (0..n_ops)
            .map(|_| {
                ComplexMatrix::from_fn(d, d, |_, _| c(rng.next_gaussian(), rng.next_gaussian()))
            })
            .collect();
        let mut s = ComplexMatrix::zeros(d, d);
        for g in &raw {
            s = &s + &(&g.dagger() * g);
        }
        let eig = s.hermitian_eig().unwrap();
        let inv_sqrt = ComplexMatrix::from_fn(d, d, |i, j| {
            (0..d)
                .map(|k| {
                    eig.eigenvectors.get(i, k)
                        * c(1.0 / eig.eigenvalues[k].sqrt(), 0.0)
                        * eig.eigenvectors.get(j, k).conj()
                })
                .sum()
        });
        KrausChannel::new(raw.iter().map(|g| g * &inv_sqrt).collect()).unwrap()
    }

    #[test]
    fn identity_channel_leaves_states_alone() {
        let rho = random_density(3, 2, 4).unwrap();
        let out = KrausChannel::identity(3).apply(&rho).unwrap();
        assert!(out.mat().frob_dist(rho.mat()).unwrap() < 1e-15);
    }

    #[test]
    fn depolarizing_channel_maps_everything_to_maximally_mixed() {
        let ch = depolarizing();
        assert!(ch.is_trace_preserving());
        for seed in 0..5 {
            let rho = random_density(2, 2, seed).unwrap();
            let out = ch.apply(&rho).unwrap();
            assert!(
                out.mat()
                    .frob_dist(&ComplexMatrix::identity(2).scale_re(0.5))
                    .unwrap()
                    < 1e-14
            );
        }
    }

    #[test]
    fn apply_matches_term_by_term_oracle() {
        let ch = random_tp_channel(3, 4, 17);
        let rho = random_density(3, 3, 18).unwrap();
        // oracle: explicit summation of K rho K†
        let mut oracle = ComplexMatrix::zeros(3, 3);
        for k in ch.kraus() {
            oracle = &oracle + &(&(k * rho.mat()) * &k.dagger());
        }
        assert!(ch.apply(&rho).unwrap().mat().frob_dist(&oracle).unwrap() < 1e-13);
    }

    #[test]
    fn constructor_rejects_overcomplete_families() {
        let too_big = vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2)];
        assert!(matches!(
            KrausChannel::new(too_big),
            Err(Error::CompletenessBound(_))
        ));
    }

    #[test]
    fn choi_of_identity_channel() {
        let choi = KrausChannel::identity(2).choi().unwrap();
        // 2 |xi><xi| = |Omega><Omega|: rank one, trace 2
        let eigs = choi.eigenvalues().unwrap();
        assert!((eigs[3] - 2.0).abs() < 1e-12);
        assert!(eigs[..3].iter().all(|w| w.abs() < 1e-12));
        assert!((choi.mat().trace().re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn choi_of_depolarizing_channel_is_proportional_to_identity() {
        let choi = depolarizing().choi().unwrap();
        // the normalized convention gives (1/2) 1_4
        assert!(
            choi.mat()
                .frob_dist(&ComplexMatrix::identity(4).scale_re(0.5))
                .unwrap()
                < 1e-13
        );
    }

    #[test]
    fn choi_matches_entangled_state_definition() {
        for seed in 0..5 {
            let ch = random_tp_channel(2, 3, 100 + seed);
            let a = ch.choi().unwrap();
            let b = choi_via_entangled_state(&ch).unwrap();
            assert!(a.mat().frob_dist(&b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn unitary_channel_has_rank_one_choi() {
        let u = random_unitary(3, 7);
        let choi = KrausChannel::unitary(u).unwrap().choi().unwrap();
        let eigs = choi.eigenvalues().unwrap();
        assert!((eigs[8] - 3.0).abs() < 1e-10);
        assert!(eigs[..8].iter().all(|w| w.abs() < 1e-10));
    }

    #[test]
    fn kraus_from_choi_identity() {
        let ch = kraus_from_choi(&KrausChannel::identity(2).choi().unwrap(), PSD_TOL).unwrap();
        assert_eq!(ch.rank(), 1);
        // single Kraus proportional to the identity (global phase free)
        let k = &ch.kraus()[0];
        let phase = k.get(0, 0);
        assert!((phase.norm() - 1.0).abs() < 1e-12);
        assert!(
            k.frob_dist(&ComplexMatrix::identity(2).scale(phase))
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn choi_kraus_round_trip() {
        for seed in 0..10 {
            let ch = random_tp_channel(2, 1 + (seed as usize % 4), 300 + seed);
            let choi = ch.choi().unwrap();
            let back = kraus_from_choi(&choi, PSD_TOL).unwrap();
            assert!(back.rank() <= 4);
            assert!(back.choi().unwrap().dist(&choi).unwrap() < 1e-9);
            assert!(back.is_trace_preserving());
        }
    }

    #[test]
    fn kraus_from_choi_rejects_transpose_map() {
        let swap_choi = transpose_map_choi(2);
        assert!(!swap_choi.mat().is_psd(PSD_TOL).unwrap());
        match kraus_from_choi(&swap_choi, PSD_TOL) {
            Err(Error::NotCompletelyPositive(min)) => assert!((min + 1.0).abs() < 1e-12),
            other => panic!("expected NotCompletelyPositive, got {other:?}"),
        }
    }

    #[test]
    fn natural_rep_of_identity_is_identity() {
        let n = KrausChannel::identity(3).natural_rep().unwrap();
        assert!(n.approx_eq(&ComplexMatrix::identity(9), 1e-15));
    }

    #[test]
    fn natural_rep_acts_as_vec_superoperator() {
        let ch = random_tp_channel(2, 3, 40);
        let n = ch.natural_rep().unwrap();
        let x = random_density(2, 2, 41).unwrap();
        let vec_x = ComplexMatrix::new(4, 1, x.mat().entries().to_vec()).unwrap();
        let lhs = &n * &vec_x;
        let direct = ch.apply_matrix(x.mat()).unwrap();
        let rhs = ComplexMatrix::new(4, 1, direct.entries().to_vec()).unwrap();
        assert!(lhs.frob_dist(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn reshuffle_is_an_involution() {
        let mut rng = SplitMix64::new(5);
        let m = ComplexMatrix::from_fn(9, 9, |_, _| c(rng.next_gaussian(), rng.next_gaussian()));
        let twice = reshuffle(&reshuffle(&m, 3).unwrap(), 3).unwrap();
        assert!(twice.frob_dist(&m).unwrap() < 1e-15);
    }

    #[test]
    fn reshuffled_natural_rep_is_choi() {
        for seed in 0..50u64 {
            let d = 2 + (seed % 2) as usize;
            let ch = random_tp_channel(d, 1 + (seed as usize % 3), 600 + seed);
            let reshuffled = reshuffle(&ch.natural_rep().unwrap(), d).unwrap();
            assert!(reshuffled.frob_dist(ch.choi().unwrap().mat()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn affine_rep_of_depolarizing_channel_is_zero() {
        let basis = OperatorBasis::gell_mann(2);
        let aff = depolarizing().affine_rep(&basis).unwrap();
        assert!(aff.r_block().iter().all(|x| x.abs() < 1e-14));
        assert!(aff.r_shift().iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn affine_rep_of_identity_channel() {
        let basis = OperatorBasis::gell_mann(2);
        let aff = KrausChannel::identity(2).affine_rep(&basis).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((aff.r_block_entry(i, j) - expected).abs() < 1e-14);
            }
        }
        assert!(aff.r_shift().iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn affine_rep_is_consistent_with_apply() {
        let basis = OperatorBasis::gell_mann(2);
        // single amplitude-damping step: contraction plus a shift toward |0>
        let gamma: f64 = 0.4;
        let k1 = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(gamma.sqrt(), 0.0)],
        ]);
        let k2 = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c((1.0 - gamma).sqrt(), 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let ch = KrausChannel::new(vec![k1, k2]).unwrap();
        let aff = ch.affine_rep(&basis).unwrap();
        // shift points along +Z (toward the ground state |0><0|)
        assert!(aff.r_shift()[2] > 0.0);
        assert!(aff.r_shift()[0].abs() < 1e-14 && aff.r_shift()[1].abs() < 1e-14);

        for seed in 0..20 {
            let rho = random_density(2, 2, 700 + seed).unwrap();
            let f_in = crate::states::bloch_vector(&rho, &basis).unwrap();
            let f_affine = aff.apply_to_bloch(&f_in).unwrap();
            let f_direct = crate::states::bloch_vector(&ch.apply(&rho).unwrap(), &basis).unwrap();
            let dev: f64 = f_affine
                .components()
                .iter()
                .zip(f_direct.components())
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(dev < 1e-10);
        }
    }

    #[test]
    fn embedded_affine_matrix_has_unit_top_row() {
        let basis = OperatorBasis::gell_mann(2);
        let ch = random_tp_channel(2, 2, 90);
        let emb = ch.affine_rep(&basis).unwrap().embedded();
        assert!((emb[0] - 1.0).abs() < 1e-14);
        for j in 1..4 {
            assert!(emb[j].abs() < 1e-14, "top row entry {j} = {}", emb[j]);
        }
    }

    #[test]
    fn heisenberg_identity_is_fixed_by_tp_channels() {
        let ch = random_tp_channel(3, 3, 55);
        let ident = Observable::new(ComplexMatrix::identity(3)).unwrap();
        let out = ch.heisenberg_apply(&ident).unwrap();
        assert!(out.mat().frob_dist(&ComplexMatrix::identity(3)).unwrap() < 1e-12);
    }

    #[test]
    fn heisenberg_schrodinger_duality() {
        for seed in 0..20 {
            let ch = random_tp_channel(2, 2, 800 + seed);
            let rho = random_density(2, 2, 900 + seed).unwrap();
            let h = {
                let mut rng = SplitMix64::new(950 + seed);
                let g = ComplexMatrix::from_fn(2, 2, |_, _| {
                    c(rng.next_gaussian(), rng.next_gaussian())
                });
                Observable::new(ComplexMatrix::from_fn(2, 2, |i, j| {
                    (g.get(i, j) + g.get(j, i).conj()) * c(0.5, 0.0)
                }))
                .unwrap()
            };
            let lhs = ch.apply(&rho).unwrap().expectation(&h).unwrap();
            let rhs = rho.expectation(&ch.heisenberg_apply(&h).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn depolarizing_kills_traceless_observables_in_heisenberg_picture() {
        let z = Observable::new(pauli('z')).unwrap();
        let out = depolarizing().heisenberg_apply(&z).unwrap();
        assert!(out.mat().frob_norm() < 1e-14);
    }

    #[test]
    fn hermitian_map_with_identity_coefficients_reduces_to_heisenberg() {
        let ch = random_tp_channel(2, 3, 61);
        let rep = HermitianMapRep::new(ComplexMatrix::identity(3), ch.kraus().to_vec()).unwrap();
        let a = Observable::new(pauli('x')).unwrap();
        let lhs = rep.apply(&a).unwrap();
        let rhs = ch.heisenberg_apply(&a).unwrap();
        assert!(lhs.mat().frob_dist(rhs.mat()).unwrap() < 1e-13);
    }

    #[test]
    fn hermitian_map_with_separable_coefficients_is_single_operator_conjugation() {
        let mut rng = SplitMix64::new(77);
        let family: Vec<ComplexMatrix> = (0..3)
            .map(|_| {
                ComplexMatrix::from_fn(2, 2, |_, _| c(rng.next_gaussian(), rng.next_gaussian()))
            })
            .collect();
        let cs: Vec<Complex64> = (0..3)
            .map(|_| c(rng.next_gaussian(), rng.next_gaussian()))
            .collect();
        let coeff = ComplexMatrix::from_fn(3, 3, |a, b| cs[a] * cs[b].conj());
        let rep = HermitianMapRep::new(coeff, family.clone()).unwrap();
        let a = Observable::new(pauli('y')).unwrap();
        // with d_ab = c_a conj(c_b) the double sum collapses to L† A L
        // where L = sum_b conj(c_b) K_b
        let mut l = ComplexMatrix::zeros(2, 2);
        for (cb, kb) in cs.iter().zip(&family) {
            l = &l + &kb.scale(cb.conj());
        }
        let expected = &(&l.dagger() * a.mat()) * &l;
        assert!(rep.apply(&a).unwrap().mat().frob_dist(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn hermitian_map_output_is_hermitian_for_random_coefficients() {
        let mut rng = SplitMix64::new(88);
        for _ in 0..10 {
            let g =
                ComplexMatrix::from_fn(2, 2, |_, _| c(rng.next_gaussian(), rng.next_gaussian()));
            let coeff = ComplexMatrix::from_fn(2, 2, |i, j| {
                (g.get(i, j) + g.get(j, i).conj()) * c(0.5, 0.0)
            });
            let family = vec![ComplexMatrix::identity(2), pauli('x')];
            let rep = HermitianMapRep::new(coeff, family).unwrap();
            let a = Observable::new(pauli('z')).unwrap();
            // Observable::new re-checks Hermiticity
            assert!(rep.apply(&a).is_ok());
        }
    }

    #[test]
    fn hermitian_map_rejects_non_hermitian_coefficients() {
        let coeff = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(HermitianMapRep::new(coeff, vec![ComplexMatrix::identity(2); 2]).is_err());
    }

    #[test]
    fn compose_with_identity_preserves_action() {
        let ch = random_tp_channel(2, 3, 13);
        let composed = compose(&KrausChannel::identity(2), &ch).unwrap();
        let rho = random_density(2, 2, 14).unwrap();
        let lhs = composed.apply(&rho).unwrap();
        let rhs = ch.apply(&rho).unwrap();
        assert!(lhs.mat().frob_dist(rhs.mat()).unwrap() < 1e-13);
    }

    #[test]
    fn composing_unitaries_multiplies_them() {
        let u = random_unitary(2, 1);
        let v = random_unitary(2, 2);
        let composed = compose(
            &KrausChannel::unitary(v.clone()).unwrap(),
            &KrausChannel::unitary(u.clone()).unwrap(),
        )
        .unwrap();
        let product = KrausChannel::unitary(&v * &u).unwrap();
        assert!(
            composed
                .choi()
                .unwrap()
                .dist(&product.choi().unwrap())
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn compose_matches_sequential_application() {
        let first = random_tp_channel(2, 2, 21);
        let second = random_tp_channel(2, 3, 22);
        let both = compose(&second, &first).unwrap();
        let rho = random_density(2, 2, 23).unwrap();
        let sequential = second.apply(&first.apply(&rho).unwrap()).unwrap();
        assert!(
            both.apply(&rho)
                .unwrap()
                .mat()
                .frob_dist(sequential.mat())
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn partial_transpose_keeps_product_states_positive() {
        let rho_a = random_density(2, 2, 31).unwrap();
        let rho_b = random_density(2, 2, 32).unwrap();
        let prod = DensityMatrix::new(rho_a.mat().kron(rho_b.mat())).unwrap();
        for which in 0..2 {
            let pt = partial_transpose(&prod, (2, 2), which).unwrap();
            assert!(pt.is_psd(PSD_TOL).unwrap());
            assert!((pt.trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_of_bell_projector_has_negative_eigenvalue() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            ComplexVector::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let rho = DensityMatrix::from_pure(&bell).unwrap();
        let pt = partial_transpose(&rho, (2, 2), 1).unwrap();
        assert!((pt.min_eigenvalue().unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_of_separable_mixtures_stays_positive() {
        let mut rng = SplitMix64::new(44);
        for _ in 0..10 {
            // convex mixture of product states is separable
            let mut mix = ComplexMatrix::zeros(4, 4);
            let mut weights = [0.0; 3];
            let mut total = 0.0;
            for w in &mut weights {
                *w = rng.next_f64() + 0.1;
                total += *w;
            }
            for &w in &weights {
                let a = random_density(2, 1, rng.next_u64()).unwrap();
                let b = random_density(2, 1, rng.next_u64()).unwrap();
                mix = &mix + &a.mat().kron(b.mat()).scale_re(w / total);
            }
            let rho = DensityMatrix::new(mix).unwrap();
            let pt = partial_transpose(&rho, (2, 2), 1).unwrap();
            assert!(pt.is_psd(PSD_TOL).unwrap());
        }
    }

    #[test]
    fn classify_cp_channel() {
        let choi = random_tp_channel(2, 3, 71).choi().unwrap();
        assert_eq!(
            classify(&choi, 50, 7, PSD_TOL).unwrap(),
            MapClass::CompletelyPositive
        );
    }

    #[test]
    fn classify_transpose_map_as_positive() {
        let choi = transpose_map_choi(2);
        assert_eq!(
            classify(&choi, 200, 7, PSD_TOL).unwrap(),
            MapClass::Positive
        );
    }

    #[test]
    fn classify_detects_nonpositive_map() {
        // Phi(X) = X - 2 <0|X|0> |0><0| sends |0><0| to -|0><0|
        let omega_vec =
            ComplexMatrix::new(4, 1, ComplexMatrix::identity(2).entries().to_vec()).unwrap();
        let omega = &omega_vec * &omega_vec.dagger();
        let mut neg = ComplexMatrix::zeros(4, 4);
        neg.set(0, 0, c(2.0, 0.0));
        let choi = ChoiMatrix::new(&omega - &neg).unwrap();
        assert_eq!(
            classify(&choi, 200, 11, PSD_TOL).unwrap(),
            MapClass::Hermitian
        );
    }

    #[test]
    fn classify_on_domain_reports_physically_positive() {
        // partial transpose on the second qubit, as a map on the two-qubit
        // system: positive exactly on the separable domain
        let d = 4;
        let mut mat = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let mut unit = ComplexMatrix::zeros(d, d);
                unit.set(i, j, c(1.0, 0.0));
                let image = partial_transpose_raw(&unit, 2);
                for a in 0..d {
                    for b in 0..d {
                        mat.set(a * d + i, b * d + j, image.get(a, b));
                    }
                }
            }
        }
        let choi = ChoiMatrix::new(mat).unwrap();

        let product_states: Vec<DensityMatrix> = (0..10)
            .map(|s| {
                let a = random_density(2, 1, 500 + s).unwrap();
                let b = random_density(2, 1, 600 + s).unwrap();
                DensityMatrix::new(a.mat().kron(b.mat())).unwrap()
            })
            .collect();
        assert_eq!(
            classify_on_domain(&choi, &product_states, PSD_TOL).unwrap(),
            MapClass::PhysicallyPositive
        );

        // adding an entangled state to the domain breaks positivity
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            ComplexVector::new(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let mut with_bell = product_states;
        with_bell.push(DensityMatrix::from_pure(&bell).unwrap());
        assert_eq!(
            classify_on_domain(&choi, &with_bell, PSD_TOL).unwrap(),
            MapClass::Hermitian
        );
    }

    #[test]
    fn tensor_with_identity_preserves_complete_positivity() {
        for seed in 0..5 {
            let ch = random_tp_channel(2, 2, 1000 + seed);
            for m in 1..=3 {
                let big = ch.tensor_with_identity(m);
                assert!(big.choi().unwrap().is_cp(PSD_TOL).unwrap());
                assert!(big.is_trace_preserving());
            }
        }
    }

    #[test]
    fn cp_channels_send_states_to_states() {
        for seed in 0..10 {
            let ch = random_tp_channel(3, 2, 2000 + seed);
            let rho = random_density(3, 3, 3000 + seed).unwrap();
            // DensityMatrix::new inside apply() validates the invariants
            assert!(ch.apply(&rho).is_ok());
        }
    }
}

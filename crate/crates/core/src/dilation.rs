//! The unitary-universe dilation model: a system `S` plus environment `E`
//! evolving jointly under a unitary, with the system map obtained by partial
//! trace. Includes the swap construction that turns dynamics with an
//! initially correlated `rho_SE` into a completely positive map on
//! `sigma_S = tr_E(rho_SE)`.

use num_complex::Complex64;

use crate::channel::{KrausChannel, KRAUS_TRUNCATION};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};
use crate::states::DensityMatrix;

/// Unitarity tolerance for model construction.
pub const UNITARY_TOL: f64 = 1e-10;

/// Initial condition of the universe.
#[derive(Clone, Debug)]
pub enum InitialCondition {
    /// Uncorrelated `rho_S (x) rho_E`.
    Product {
        system: DensityMatrix,
        environment: DensityMatrix,
    },
    /// Arbitrary joint state on `S (x) E`, correlations allowed.
    Correlated { joint: DensityMatrix },
}

/// A closed universe `S (x) E` with a global unitary evolution.
#[derive(Clone, Debug)]
pub struct UniverseModel {
    dim_s: usize,
    dim_e: usize,
    initial: InitialCondition,
    unitary: ComplexMatrix,
}

impl UniverseModel {
    pub fn new(
        dim_s: usize,
        dim_e: usize,
        initial: InitialCondition,
        unitary: ComplexMatrix,
    ) -> Result<Self> {
        let total = dim_s * dim_e;
        if unitary.rows() != total || unitary.cols() != total {
            return Err(Error::DimensionMismatch(format!(
                "universe unitary must be {total}x{total}, got {}x{}",
                unitary.rows(),
                unitary.cols()
            )));
        }
        unitary.require_unitary(UNITARY_TOL)?;
        let init_dim = match &initial {
            InitialCondition::Product {
                system,
                environment,
            } => system.dim() * environment.dim(),
            InitialCondition::Correlated { joint } => joint.dim(),
        };
        if init_dim != total {
            return Err(Error::DimensionMismatch(format!(
                "initial state dim {init_dim} vs universe dim {total}"
            )));
        }
        if let InitialCondition::Product {
            system,
            environment,
        } = &initial
        {
            if system.dim() != dim_s || environment.dim() != dim_e {
                return Err(Error::DimensionMismatch(
                    "product factors do not match the declared S/E dimensions".into(),
                ));
            }
        }
        Ok(Self {
            dim_s,
            dim_e,
            initial,
            unitary,
        })
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn initial(&self) -> &InitialCondition {
        &self.initial
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// The system state the model's channel acts on: `rho_S` for a product
    /// initial condition, `tr_E(rho_SE)` for a correlated one.
    pub fn system_state(&self) -> Result<DensityMatrix> {
        match &self.initial {
            InitialCondition::Product { system, .. } => Ok(system.clone()),
            InitialCondition::Correlated { joint } => {
                reduced_state(joint, &[self.dim_s, self.dim_e], &[0])
            }
        }
    }

    /// Exact final system state `tr_E(U rho_SE U†)`, the oracle every channel
    /// construction is checked against.
    pub fn evolved_system_state(&self) -> Result<DensityMatrix> {
        let joint = match &self.initial {
            InitialCondition::Product {
                system,
                environment,
            } => system.mat().kron(environment.mat()),
            InitialCondition::Correlated { joint } => joint.mat().clone(),
        };
        let evolved = &(&self.unitary * &joint) * &self.unitary.dagger();
        DensityMatrix::new(evolved.partial_trace(&[self.dim_s, self.dim_e], &[0])?)
    }

    /// The completely positive map induced on the system: the plain dilation
    /// for product initial conditions, the swap construction otherwise.
    pub fn channel(&self) -> Result<KrausChannel> {
        match &self.initial {
            InitialCondition::Product { .. } => kraus_from_dilation(self),
            InitialCondition::Correlated { joint } => {
                let (_, ch) = swap_convert(joint, (self.dim_s, self.dim_e), &self.unitary)?;
                Ok(ch)
            }
        }
    }
}

/// The swapped universe `S (x) E (x) A` derived from a correlated model:
/// `sigma_S = tr_E(rho_SE)`, `sigma_EA = rho_SE` (with the system factor
/// relabeled as the ancillary environment `A`), and the combined evolution
/// `W = (U_SE (x) 1_A)(V_SA (x) 1_E)`.
#[derive(Clone, Debug)]
pub struct SwappedUniverse {
    dim_s: usize,
    dim_e: usize,
    sigma_s: DensityMatrix,
    sigma_ea: DensityMatrix,
    w: ComplexMatrix,
}

impl SwappedUniverse {
    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn sigma_s(&self) -> &DensityMatrix {
        &self.sigma_s
    }

    pub fn sigma_ea(&self) -> &DensityMatrix {
        &self.sigma_ea
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }
}

/// Kraus extraction for a product initial condition:
/// `K_ij = sqrt(lambda_i) <e_j| U |e_i>` over the eigenpairs of `rho_E`,
/// with the bra index running over the full eigenbasis. Eigenvalues below
/// `1e-12` are dropped, as are zero operators.
pub fn kraus_from_dilation(model: &UniverseModel) -> Result<KrausChannel> {
    let (rho_e,) = match model.initial() {
        InitialCondition::Product { environment, .. } => (environment,),
        InitialCondition::Correlated { .. } => {
            return Err(Error::InvalidInput(
                "kraus_from_dilation needs a product initial condition; use swap_convert for correlated states".into(),
            ))
        }
    };
    let eig = rho_e.mat().hermitian_eig()?;
    let d_e = model.dim_e();
    let mut kraus = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < KRAUS_TRUNCATION {
            continue;
        }
        let ket = eig.eigenvector(i);
        let root = Complex64::new(lambda.sqrt(), 0.0);
        for j in 0..d_e {
            let bra = eig.eigenvector(j);
            let k = env_matrix_element(model.unitary(), model.dim_s(), d_e, &bra, &ket).scale(root);
            if k.frob_norm() > KRAUS_TRUNCATION {
                kraus.push(k);
            }
        }
    }
    KrausChannel::new(kraus)
}

/// Swap gate `sum_ij |ij><ji|` on two qudits of dimension `d`.
/// Unitary, Hermitian, and self-inverse.
pub fn swap_gate(d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s.set(i * d + j, j * d + i, Complex64::new(1.0, 0.0));
        }
    }
    s
}

/// Build the swapped universe for a correlated initial state.
///
/// Subsystem order is fixed as `S (x) E (x) A` with `dim A = dim S = n`;
/// the swap `V_SA` exchanges the first and third factors.
pub fn swapped_universe(
    rho_se: &DensityMatrix,
    dims: (usize, usize),
    u_se: &ComplexMatrix,
) -> Result<SwappedUniverse> {
    let (n, d_e) = dims;
    if n * d_e != rho_se.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dims {n}x{d_e} do not factor joint state dim {}",
            rho_se.dim()
        )));
    }
    if u_se.rows() != n * d_e || u_se.cols() != n * d_e {
        return Err(Error::DimensionMismatch(format!(
            "U_SE must be {0}x{0}, got {1}x{2}",
            n * d_e,
            u_se.rows(),
            u_se.cols()
        )));
    }
    u_se.require_unitary(UNITARY_TOL)?;

    let sigma_s = reduced_state(rho_se, &[n, d_e], &[0])?;
    // sigma_EA is rho_SE with the two factors exchanged: the old system
    // factor becomes the ancillary environment A appended after E.
    let m = rho_se.mat();
    let sigma_ea_mat = ComplexMatrix::from_fn(d_e * n, d_e * n, |r, c| {
        let (e1, a1) = (r / n, r % n);
        let (e2, a2) = (c / n, c % n);
        m.get(a1 * d_e + e1, a2 * d_e + e2)
    });
    let sigma_ea = DensityMatrix::new(sigma_ea_mat)?;

    // V_SA on S (x) E (x) A: permutation |s e a> -> |a e s>
    let total = n * d_e * n;
    let mut v = ComplexMatrix::zeros(total, total);
    for s in 0..n {
        for e in 0..d_e {
            for a in 0..n {
                let row = (a * d_e + e) * n + s;
                let col = (s * d_e + e) * n + a;
                v.set(row, col, Complex64::new(1.0, 0.0));
            }
        }
    }
    let w = &u_se.kron(&ComplexMatrix::identity(n)) * &v;
    Ok(SwappedUniverse {
        dim_s: n,
        dim_e: d_e,
        sigma_s,
        sigma_ea,
        w,
    })
}

/// The swap trick: convert correlated dynamics `(rho_SE, U_SE)` into a
/// completely positive, trace-preserving channel acting on
/// `sigma_S = tr_E(rho_SE)`.
///
/// Kraus operators are `K_ij = sqrt(p_i) <psi_j| W |psi_i>` with
/// `sigma_EA = sum_i p_i |psi_i><psi_i|`; the bra index `j` runs over the
/// full eigenbasis (the eigendecomposition already returns a complete
/// orthonormal set, so no separate completion step is needed).
/// On the input `sigma_S` the channel reproduces `tr_E(U rho_SE U†)`.
pub fn swap_convert(
    rho_se: &DensityMatrix,
    dims: (usize, usize),
    u_se: &ComplexMatrix,
) -> Result<(DensityMatrix, KrausChannel)> {
    let model = swapped_universe(rho_se, dims, u_se)?;
    let (n, d_e) = (model.dim_s, model.dim_e);
    let d_ea = d_e * n;

    let eig = model.sigma_ea.mat().hermitian_eig()?;
    let mut kraus = Vec::new();
    for (i, &p) in eig.eigenvalues.iter().enumerate() {
        if p < KRAUS_TRUNCATION {
            continue;
        }
        let ket = eig.eigenvector(i);
        let root = Complex64::new(p.sqrt(), 0.0);
        for j in 0..d_ea {
            let bra = eig.eigenvector(j);
            let k = env_matrix_element(&model.w, n, d_ea, &bra, &ket).scale(root);
            if k.frob_norm() > KRAUS_TRUNCATION {
                kraus.push(k);
            }
        }
    }
    Ok((model.sigma_s, KrausChannel::new(kraus)?))
}

/// Partial trace returning a validated [`DensityMatrix`].
pub fn reduced_state(rho: &DensityMatrix, dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    DensityMatrix::new(rho.mat().partial_trace(dims, keep)?)
}

/// The worked depolarization example: a Bell-correlated qubit pair evolving
/// under `U = exp(-i theta X (x) X)`, together with the expected channel
/// `{ e^{-i theta}/2 } * {1, X, iY, Z}` (the fully depolarizing qubit
/// channel; the global phase cancels in the channel action).
pub fn depolarizing_example(theta: f64) -> (UniverseModel, KrausChannel) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    let bell = ComplexVector::new(vec![
        Complex64::new(s, 0.0),
        zero,
        zero,
        Complex64::new(s, 0.0),
    ])
    .expect("finite");
    let joint = DensityMatrix::from_pure(&bell).expect("Bell projector is a state");

    // exp(-i theta X(x)X) = cos(theta) 1 - i sin(theta) X(x)X
    let (cos, sin) = (theta.cos(), theta.sin());
    let mut u = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        u.set(i, i, Complex64::new(cos, 0.0));
        u.set(i, 3 - i, Complex64::new(0.0, -sin));
    }
    let model = UniverseModel::new(2, 2, InitialCondition::Correlated { joint }, u)
        .expect("example model is well formed");

    let phase = Complex64::from_polar(0.5, -theta);
    let i_phase = Complex64::new(0.0, 1.0) * phase;
    let expected = KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale(phase),
        ComplexMatrix::from_rows(&[vec![zero, phase], vec![phase, zero]]),
        ComplexMatrix::from_rows(&[
            vec![zero, Complex64::new(0.0, -1.0) * i_phase],
            vec![Complex64::new(0.0, 1.0) * i_phase, zero],
        ]),
        ComplexMatrix::from_rows(&[vec![phase, zero], vec![zero, -phase]]),
    ])
    .expect("expected channel is trace non-increasing");
    (model, expected)
}

/// Partial matrix element `<bra| U |ket>` over the trailing environment
/// factor: the system block that remains after contracting the environment
/// indices on both sides.
fn env_matrix_element(
    u: &ComplexMatrix,
    d_s: usize,
    d_e: usize,
    bra: &ComplexVector,
    ket: &ComplexVector,
) -> ComplexMatrix {
    ComplexMatrix::from_fn(d_s, d_s, |sp, s| {
        let mut acc = Complex64::new(0.0, 0.0);
        for ep in 0..d_e {
            let b = bra.get(ep).conj();
            if b == Complex64::new(0.0, 0.0) {
                continue;
            }
            for e in 0..d_e {
                acc += b * u.get(sp * d_e + ep, s * d_e + e) * ket.get(e);
            }
        }
        acc
    })
}

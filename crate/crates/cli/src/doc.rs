//! JSON interchange documents.
//!
//! Every document is a single JSON object with a `kind` tag. Complex entries
//! are two-element arrays `[re, im]`; matrix data is row-major nested arrays.
//! Numbers are written in shortest exact decimal form, so documents re-parse
//! bit-identically.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use qdyn::chain::{Axis, Measurement};
use qdyn::linalg::ComplexMatrix;
use qdyn::states::DensityMatrix;
use qdyn::{Complex64, KrausChannel, Observable};

use crate::CliError;

/// One complex entry, `[re, im]`.
pub type ComplexEntry = [f64; 2];

/// Row-major complex matrix data.
pub type MatrixData = Vec<Vec<ComplexEntry>>;

/// The tagged document type of the interchange format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatrixDocument {
    /// Arbitrary complex matrix, `dims = [rows, cols]`.
    Matrix { dims: Vec<usize>, data: MatrixData },
    /// Density matrix, `dims = [d]`.
    State { dims: Vec<usize>, data: MatrixData },
    /// Kraus channel, `dims = [dim_in, dim_out]`, one matrix per operator.
    Channel {
        dims: Vec<usize>,
        data: Vec<MatrixData>,
    },
    /// Measurement operators, `dims = [d]`, one matrix per operator.
    Measurement {
        dims: Vec<usize>,
        data: Vec<MatrixData>,
    },
    /// Built-in or explicit chain specification.
    ChainSpec(ChainSpec),
}

/// Chain specifications accepted by `chain-run`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ChainSpec {
    /// Repeated amplitude-damping measurement with decay parameter `gamma`,
    /// starting from `alpha |g> + beta |e>`.
    AmplitudeDamping {
        gamma: f64,
        #[serde(default)]
        alpha: f64,
        #[serde(default = "default_beta")]
        beta: f64,
    },
    /// Projective spin measurements cycling through the listed axes,
    /// starting from `initial` (default: the maximally mixed state, an
    /// unpolarized beam).
    SternGerlach {
        axes: Vec<AxisSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<MatrixData>,
    },
    /// Explicit measurement list, cycled; each measurement is a list of
    /// operator matrices.
    Explicit {
        initial: MatrixData,
        measurements: Vec<Vec<MatrixData>>,
    },
}

fn default_beta() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisSpec {
    X,
    Y,
    Z,
}

impl From<AxisSpec> for Axis {
    fn from(a: AxisSpec) -> Axis {
        match a {
            AxisSpec::X => Axis::X,
            AxisSpec::Y => Axis::Y,
            AxisSpec::Z => Axis::Z,
        }
    }
}

/// One line of a trajectory file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub state: MatrixDocument,
    pub probabilities: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer: Option<TransferData>,
}

/// Serialized transfer matrix with its degenerate-column flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferData {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<f64>>,
    pub degenerate_columns: Vec<bool>,
}

impl TransferData {
    pub fn from_transfer(y: &qdyn::TransferMatrix) -> Self {
        Self {
            rows: y.rows(),
            cols: y.cols(),
            data: (0..y.rows())
                .map(|j| (0..y.cols()).map(|i| y.entry(j, i)).collect())
                .collect(),
            degenerate_columns: y.degenerate_columns().to_vec(),
        }
    }
}

/// First line of a trajectory file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryHeader {
    pub kind: String,
    pub model: String,
    pub dim: usize,
    pub steps: usize,
}

/// Optional last line of a trajectory file: comparison against the built-in
/// closed form, when one exists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AsymptoteRecord {
    pub kind: String,
    pub transfer_infinity: Vec<Vec<f64>>,
    /// Frobenius distance of the final transfer matrix from its equilibrium
    /// form (absent for runs shorter than two steps).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfer_distance: Option<f64>,
    /// Frobenius distance of the final state from the analytic closed form.
    pub state_distance_to_analytic: f64,
}

pub fn read_document(path: &Path) -> Result<MatrixDocument, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write_document(path: &Path, doc: &MatrixDocument) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Decode row-major complex data, checking rectangularity and finiteness.
pub fn matrix_from_data(data: &MatrixData) -> Result<ComplexMatrix, CliError> {
    if data.is_empty() || data[0].is_empty() {
        return Err(CliError::Input("matrix data must be nonempty".into()));
    }
    let cols = data[0].len();
    let mut entries = Vec::with_capacity(data.len() * cols);
    for (r, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(CliError::Input(format!(
                "row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (cidx, &[re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Input(format!(
                    "non-finite entry at row {r}, col {cidx}"
                )));
            }
            entries.push(Complex64::new(re, im));
        }
    }
    ComplexMatrix::new(data.len(), cols, entries).map_err(CliError::from)
}

pub fn data_from_matrix(m: &ComplexMatrix) -> MatrixData {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| [m.get(i, j).re, m.get(i, j).im])
                .collect()
        })
        .collect()
}

impl MatrixDocument {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MatrixDocument::Matrix { .. } => "matrix",
            MatrixDocument::State { .. } => "state",
            MatrixDocument::Channel { .. } => "channel",
            MatrixDocument::Measurement { .. } => "measurement",
            MatrixDocument::ChainSpec(_) => "chain-spec",
        }
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        MatrixDocument::State {
            dims: vec![rho.dim()],
            data: data_from_matrix(rho.mat()),
        }
    }

    pub fn from_channel(ch: &KrausChannel) -> Self {
        MatrixDocument::Channel {
            dims: vec![ch.dim_in(), ch.dim_out()],
            data: ch.kraus().iter().map(data_from_matrix).collect(),
        }
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixDocument::Matrix {
            dims: vec![m.rows(), m.cols()],
            data: data_from_matrix(m),
        }
    }

    /// Any document kind that carries a single matrix.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        match self {
            MatrixDocument::Matrix { dims, data } => {
                let m = matrix_from_data(data)?;
                if dims.len() != 2 || dims[0] != m.rows() || dims[1] != m.cols() {
                    return Err(CliError::Input(format!(
                        "dims {dims:?} do not match {}x{} data",
                        m.rows(),
                        m.cols()
                    )));
                }
                Ok(m)
            }
            MatrixDocument::State { data, .. } => matrix_from_data(data),
            other => Err(CliError::Input(format!(
                "expected a matrix document, found kind \"{}\"",
                other.kind_name()
            ))),
        }
    }

    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        match self {
            MatrixDocument::State { dims, data } => {
                let m = matrix_from_data(data)?;
                if dims.len() != 1 || dims[0] != m.rows() {
                    return Err(CliError::Input(format!(
                        "state dims {dims:?} do not match {}x{} data",
                        m.rows(),
                        m.cols()
                    )));
                }
                DensityMatrix::new(m).map_err(CliError::from)
            }
            other => Err(CliError::Input(format!(
                "expected a state document, found kind \"{}\"",
                other.kind_name()
            ))),
        }
    }

    pub fn to_observable(&self) -> Result<Observable, CliError> {
        Observable::new(self.to_matrix()?).map_err(CliError::from)
    }

    pub fn to_channel(&self) -> Result<KrausChannel, CliError> {
        match self {
            MatrixDocument::Channel { dims, data } => {
                if dims.len() != 2 {
                    return Err(CliError::Input(format!(
                        "channel dims {dims:?} must be [in, out]"
                    )));
                }
                let kraus = data
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        let k = matrix_from_data(d)?;
                        if k.rows() != dims[1] || k.cols() != dims[0] {
                            return Err(CliError::Input(format!(
                                "Kraus operator {i} is {}x{}, expected {}x{}",
                                k.rows(),
                                k.cols(),
                                dims[1],
                                dims[0]
                            )));
                        }
                        Ok(k)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                KrausChannel::new(kraus).map_err(CliError::from)
            }
            other => Err(CliError::Input(format!(
                "expected a channel document, found kind \"{}\"",
                other.kind_name()
            ))),
        }
    }

    pub fn to_measurement(&self) -> Result<Measurement, CliError> {
        match self {
            MatrixDocument::Measurement { dims, data } => {
                if dims.len() != 1 {
                    return Err(CliError::Input(format!(
                        "measurement dims {dims:?} must be [d]"
                    )));
                }
                let side = dims[0];
                let ops = data
                    .iter()
                    .enumerate()
                    .map(|(i, d)| {
                        let m = matrix_from_data(d)?;
                        if m.rows() != side || m.cols() != side {
                            return Err(CliError::Input(format!(
                                "measurement operator {i} is {}x{}, expected {side}x{side}",
                                m.rows(),
                                m.cols()
                            )));
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Measurement::new(ops).map_err(CliError::from)
            }
            other => Err(CliError::Input(format!(
                "expected a measurement document, found kind \"{}\"",
                other.kind_name()
            ))),
        }
    }
}

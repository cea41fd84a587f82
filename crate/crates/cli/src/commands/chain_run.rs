//! `chain-run`: execute a measurement chain and write the trajectory as
//! JSON lines (header, one record per step, and a closing closed-form
//! comparison when the model has one).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::json;

use qdyn::chain::{
    amplitude_damping_analytic, amplitude_damping_measurement, run_chain, stern_gerlach_chain,
    Measurement, MeasurementChain, TransferMatrix,
};
use qdyn::linalg::ComplexVector;
use qdyn::states::DensityMatrix;
use qdyn::Complex64;

use crate::commands::fmt;
use crate::doc::{
    matrix_from_data, read_document, AsymptoteRecord, ChainSpec, MatrixDocument, TrajectoryHeader,
    TrajectoryRecord, TransferData,
};
use crate::{CliError, Format};

struct PreparedChain {
    model_name: String,
    initial: DensityMatrix,
    chain: MeasurementChain,
    /// Closed-form comparison for the amplitude-damping model.
    analytic: Option<(f64, f64, f64)>, // (alpha, beta, gamma)
}

fn prepare(spec: ChainSpec) -> Result<PreparedChain, CliError> {
    match spec {
        ChainSpec::AmplitudeDamping { gamma, alpha, beta } => {
            let psi =
                ComplexVector::new(vec![Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0)])
                    .map_err(CliError::from)?;
            let initial = DensityMatrix::from_pure(&psi)?;
            if (alpha * alpha + beta * beta - 1.0).abs() > 1e-10 {
                return Err(CliError::Input(format!(
                    "alpha^2 + beta^2 = {} must be 1",
                    alpha * alpha + beta * beta
                )));
            }
            Ok(PreparedChain {
                model_name: "amplitude-damping".into(),
                initial,
                chain: MeasurementChain::uniform(amplitude_damping_measurement(gamma)?),
                analytic: Some((alpha, beta, gamma)),
            })
        }
        ChainSpec::SternGerlach { axes, initial } => {
            // default source: an unpolarized beam
            let initial = match initial {
                Some(data) => DensityMatrix::new(matrix_from_data(&data)?)?,
                None => DensityMatrix::maximally_mixed(2),
            };
            if initial.dim() != 2 {
                return Err(CliError::Input("Stern-Gerlach chains act on qubits".into()));
            }
            let axes: Vec<qdyn::chain::Axis> = axes.into_iter().map(Into::into).collect();
            Ok(PreparedChain {
                model_name: "stern-gerlach".into(),
                initial,
                chain: stern_gerlach_chain(&axes)?,
                analytic: None,
            })
        }
        ChainSpec::Explicit {
            initial,
            measurements,
        } => {
            let initial = DensityMatrix::new(matrix_from_data(&initial)?)?;
            let list = measurements
                .iter()
                .map(|ops| {
                    let mats = ops
                        .iter()
                        .map(matrix_from_data)
                        .collect::<Result<Vec<_>, CliError>>()?;
                    Measurement::new(mats).map_err(CliError::from)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(PreparedChain {
                model_name: "explicit".into(),
                initial,
                chain: MeasurementChain::cycle(list)?,
                analytic: None,
            })
        }
    }
}

pub fn run(spec_path: &Path, steps: usize, out: &Path, format: Format) -> Result<u8, CliError> {
    let spec = match read_document(spec_path)? {
        MatrixDocument::ChainSpec(spec) => spec,
        other => {
            return Err(CliError::Input(format!(
                "chain-run expects a chain-spec document, found \"{}\"",
                other.kind_name()
            )))
        }
    };
    let prepared = prepare(spec)?;
    let trajectory = run_chain(&prepared.initial, &prepared.chain, steps)?;

    let file = File::create(out)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", out.display())))?;
    let mut w = BufWriter::new(file);
    let header = TrajectoryHeader {
        kind: "trajectory-header".into(),
        model: prepared.model_name.clone(),
        dim: prepared.initial.dim(),
        steps,
    };
    writeln!(
        w,
        "{}",
        serde_json::to_string(&header).expect("header serializes")
    )
    .map_err(|e| CliError::Input(e.to_string()))?;

    for step in &trajectory {
        let record = TrajectoryRecord {
            step: step.step,
            state: MatrixDocument::from_state(&step.state),
            probabilities: step.probabilities.as_slice().to_vec(),
            transfer: step.transfer.as_ref().map(TransferData::from_transfer),
        };
        writeln!(
            w,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
    }

    let mut asymptote_summary = None;
    if let (Some((alpha, beta, gamma)), Some(last)) = (prepared.analytic, trajectory.last()) {
        let analytic = amplitude_damping_analytic(last.step, alpha, beta, gamma)?;
        let state_dist = last.state.mat().frob_dist(analytic.mat())?;
        let y_inf = TransferMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]);
        let transfer_distance = last
            .transfer
            .as_ref()
            .map(|y| y.frob_dist(&y_inf))
            .transpose()?;
        let record = AsymptoteRecord {
            kind: "asymptote".into(),
            transfer_infinity: vec![vec![1.0, 1.0], vec![0.0, 0.0]],
            transfer_distance,
            state_distance_to_analytic: state_dist,
        };
        writeln!(
            w,
            "{}",
            serde_json::to_string(&record).expect("record serializes")
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        asymptote_summary = Some(record);
    }
    w.flush().map_err(|e| CliError::Input(e.to_string()))?;

    match format {
        Format::Text => {
            println!("model: {}", prepared.model_name);
            println!("steps: {steps}");
            println!("trajectory: {}", out.display());
            if let Some(a) = &asymptote_summary {
                if let Some(t) = a.transfer_distance {
                    println!("final transfer distance to equilibrium: {}", fmt(t));
                }
                println!(
                    "final state distance to closed form: {}",
                    fmt(a.state_distance_to_analytic)
                );
            }
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "model": prepared.model_name,
                    "steps": steps,
                    "out": out.display().to_string(),
                    "asymptote": asymptote_summary.map(|a| json!({
                        "transfer_distance": a.transfer_distance,
                        "state_distance_to_analytic": a.state_distance_to_analytic,
                    })),
                })
            );
        }
    }
    Ok(0)
}

//! `weak`: weak values of an observable for every branch of a
//! post-selecting measurement, plus the expectation reconstruction check.

use std::path::Path;

use serde_json::json;

use qdyn::weak::weak_value;
use qdyn::Complex64;

use crate::commands::fmt;
use crate::doc::read_document;
use crate::{CliError, Format};

pub fn run(
    state: &Path,
    observable: &Path,
    measurement: &Path,
    out: Option<&Path>,
    format: Format,
) -> Result<u8, CliError> {
    let rho = read_document(state)?.to_state()?;
    let a = read_document(observable)?.to_observable()?;
    let m = read_document(measurement)?.to_measurement()?;

    let mut rows = Vec::with_capacity(m.rank());
    let mut reconstructed = Complex64::new(0.0, 0.0);
    for (j, op) in m.ops().iter().enumerate() {
        let w = weak_value(&a, op, &rho).map_err(|e| match e {
            qdyn::Error::ZeroPostSelection(weight) => CliError::ZeroPostSelection(format!(
                "post-selection branch {j} has weight {weight:.3e}"
            )),
            other => CliError::from(other),
        })?;
        reconstructed += w.value * Complex64::new(w.weight, 0.0);
        rows.push((j, w));
    }
    let expectation = rho.expectation(&a)?;
    let residual = (reconstructed - Complex64::new(expectation, 0.0)).norm();

    if let Some(path) = out {
        let report = json!({
            "branches": rows
                .iter()
                .map(|(j, w)| json!({
                    "branch": j,
                    "weight": w.weight,
                    "value": [w.value.re, w.value.im],
                }))
                .collect::<Vec<_>>(),
            "expectation": expectation,
            "reconstructed": [reconstructed.re, reconstructed.im],
            "residual": residual,
        });
        std::fs::write(
            path,
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        )
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }

    match format {
        Format::Text => {
            println!("j  q~_j  Re w  Im w");
            for (j, w) in &rows {
                println!(
                    "{j}  {}  {}  {}",
                    fmt(w.weight),
                    fmt(w.value.re),
                    fmt(w.value.im)
                );
            }
            println!("expectation: {}", fmt(expectation));
            println!("reconstruction residual: {}", fmt(residual));
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "branches": rows
                        .iter()
                        .map(|(j, w)| json!({
                            "branch": j,
                            "weight": w.weight,
                            "value": [w.value.re, w.value.im],
                        }))
                        .collect::<Vec<_>>(),
                    "expectation": expectation,
                    "residual": residual,
                })
            );
        }
    }
    Ok(0)
}

//! `bloch`: Bloch coherence vector of a state in the generalized Gell-Mann
//! basis, with the reconstruction round-trip residual.

use std::path::Path;

use serde_json::json;

use qdyn::states::{bloch_vector, state_from_bloch, OperatorBasis};
use qdyn::Complex64;

use crate::commands::fmt;
use crate::doc::{read_document, write_document, MatrixDocument};
use crate::{CliError, Format};

pub fn run(state: &Path, out: Option<&Path>, format: Format) -> Result<u8, CliError> {
    let rho = read_document(state)?.to_state()?;
    let basis = OperatorBasis::gell_mann(rho.dim());
    let f = bloch_vector(&rho, &basis)?;
    let back = state_from_bloch(&f, &basis)?;
    let residual = back.mat().frob_dist(rho.mat())?;

    if let Some(path) = out {
        let column = qdyn::linalg::ComplexMatrix::from_fn(f.components().len(), 1, |i, _| {
            Complex64::new(f.components()[i], 0.0)
        });
        write_document(path, &MatrixDocument::from_matrix(&column))?;
    }

    match format {
        Format::Text => {
            println!("dimension: {}", rho.dim());
            let comps: Vec<String> = f.components().iter().map(|&x| fmt(x)).collect();
            println!("bloch vector: {}", comps.join(" "));
            println!("norm: {}", fmt(f.norm()));
            println!("round-trip residual: {}", fmt(residual));
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "dimension": rho.dim(),
                    "bloch_vector": f.components(),
                    "norm": f.norm(),
                    "round_trip_residual": residual,
                })
            );
        }
    }
    Ok(0)
}

//! `transfer-matrix`: strong or weak measurement transfer matrix of two
//! successive measurements on a context state.

use std::path::Path;

use serde_json::json;

use qdyn::chain::transfer_matrix;
use qdyn::linalg::ComplexMatrix;
use qdyn::weak::weak_transfer_matrix;
use qdyn::Complex64;

use crate::commands::fmt;
use crate::doc::{read_document, write_document, MatrixDocument};
use crate::{CliError, Format};

pub fn run(
    state: &Path,
    first: &Path,
    second: &Path,
    weak: bool,
    out: Option<&Path>,
    format: Format,
) -> Result<u8, CliError> {
    let rho = read_document(state)?.to_state()?;
    let m_first = read_document(first)?.to_measurement()?;
    let m_second = read_document(second)?.to_measurement()?;

    let (matrix, degenerate, kind) = if weak {
        let y = weak_transfer_matrix(&rho, &m_first, &m_second)?;
        let m = ComplexMatrix::from_fn(y.rows(), y.cols(), |j, i| y.entry(j, i));
        (m, y.degenerate_columns().to_vec(), "weak")
    } else {
        let y = transfer_matrix(&rho, &m_first, &m_second)?;
        let m = ComplexMatrix::from_fn(y.rows(), y.cols(), |j, i| {
            Complex64::new(y.entry(j, i), 0.0)
        });
        (m, y.degenerate_columns().to_vec(), "strong")
    };

    if let Some(path) = out {
        write_document(path, &MatrixDocument::from_matrix(&matrix))?;
    }

    match format {
        Format::Text => {
            println!(
                "{kind} transfer matrix ({} x {}):",
                matrix.rows(),
                matrix.cols()
            );
            for j in 0..matrix.rows() {
                let row: Vec<String> = (0..matrix.cols())
                    .map(|i| {
                        let z = matrix.get(j, i);
                        if weak {
                            format!("{}{:+}i", fmt(z.re), z.im)
                        } else {
                            fmt(z.re)
                        }
                    })
                    .collect();
                println!("  {}", row.join("  "));
            }
            if degenerate.iter().any(|&d| d) {
                let cols: Vec<String> = degenerate
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d)
                    .map(|(i, _)| i.to_string())
                    .collect();
                println!("degenerate columns: {}", cols.join(" "));
            }
        }
        Format::Json => {
            let data: Vec<Vec<[f64; 2]>> = (0..matrix.rows())
                .map(|j| {
                    (0..matrix.cols())
                        .map(|i| [matrix.get(j, i).re, matrix.get(j, i).im])
                        .collect()
                })
                .collect();
            println!(
                "{}",
                json!({
                    "kind": kind,
                    "rows": matrix.rows(),
                    "cols": matrix.cols(),
                    "data": data,
                    "degenerate_columns": degenerate,
                })
            );
        }
    }
    Ok(0)
}

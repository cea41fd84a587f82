//! `check-cp`: Choi eigenvalues, trace-preservation residual, and the
//! positivity-class verdict of a channel or Choi-matrix document.

use std::path::Path;

use serde_json::json;

use qdyn::channel::{classify, ChoiMatrix};

use crate::commands::fmt;
use crate::doc::{read_document, MatrixDocument};
use crate::{CliError, Format};

pub fn run(
    input: &Path,
    tol: f64,
    samples: usize,
    seed: u64,
    format: Format,
) -> Result<u8, CliError> {
    let doc = read_document(input)?;
    let (choi, tp_residual) = match &doc {
        MatrixDocument::Channel { .. } => {
            let ch = doc.to_channel()?;
            let choi = ch.choi()?;
            (choi, ch.tp_residual())
        }
        MatrixDocument::Matrix { .. } => {
            let choi = ChoiMatrix::new(doc.to_matrix()?)?;
            let tp = choi.tp_residual()?;
            (choi, tp)
        }
        other => {
            return Err(CliError::Input(format!(
                "check-cp expects a channel or matrix document, found \"{}\"",
                other.kind_name()
            )))
        }
    };

    let eigenvalues = choi.eigenvalues()?;
    let cp = choi.is_cp(tol)?;
    let tp = tp_residual <= 1e-10;
    let class = classify(&choi, samples, seed, tol)?;
    let verdict = match (cp, tp) {
        (true, true) => "CP, TP".to_string(),
        (true, false) => "CP".to_string(),
        (false, _) => format!("not CP (min eigenvalue {})", fmt(eigenvalues[0])),
    };

    match format {
        Format::Text => {
            let eigs: Vec<String> = eigenvalues.iter().map(|&w| fmt(w)).collect();
            println!("choi eigenvalues: {}", eigs.join(" "));
            println!("tp residual: {}", fmt(tp_residual));
            println!("map class: {class}");
            println!("verdict: {verdict}");
        }
        Format::Json => {
            let report = json!({
                "choi_eigenvalues": eigenvalues,
                "tp_residual": tp_residual,
                "map_class": class.to_string(),
                "cp": cp,
                "tp": tp,
                "verdict": verdict,
            });
            println!("{report}");
        }
    }
    Ok(if cp { 0 } else { 3 })
}

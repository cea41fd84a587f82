//! `swap-convert`: turn correlated system-environment dynamics into a CPTP
//! channel on the reduced system state.

use std::path::Path;

use serde_json::json;

use qdyn::dilation::swap_convert;

use crate::commands::fmt;
use crate::doc::{read_document, write_document, MatrixDocument};
use crate::{CliError, Format};

pub fn run(
    rho_se_path: &Path,
    unitary: &Path,
    dims: (usize, usize),
    out: Option<&Path>,
    format: Format,
) -> Result<u8, CliError> {
    let rho_se = read_document(rho_se_path)?.to_state()?;
    let u = read_document(unitary)?.to_matrix()?;

    let (sigma_s, ch) = swap_convert(&rho_se, dims, &u)?;

    // equivalence residual || ch(sigma_S) - tr_E(U rho_SE U†) ||_F
    let via_channel = ch.apply(&sigma_s)?;
    let evolved = &(&u * rho_se.mat()) * &u.dagger();
    let oracle = evolved.partial_trace(&[dims.0, dims.1], &[0])?;
    let residual = via_channel.mat().frob_dist(&oracle)?;

    let tp_residual = ch.tp_residual();
    let min_choi = ch.choi()?.min_eigenvalue()?;

    if let Some(path) = out {
        write_document(path, &MatrixDocument::from_channel(&ch))?;
    }

    match format {
        Format::Text => {
            println!("kraus operators: {}", ch.rank());
            println!("tp residual: {}", fmt(tp_residual));
            println!("min choi eigenvalue: {}", fmt(min_choi));
            println!("equivalence residual: {}", fmt(residual));
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "kraus_operators": ch.rank(),
                    "tp_residual": tp_residual,
                    "min_choi_eigenvalue": min_choi,
                    "equivalence_residual": residual,
                })
            );
        }
    }
    Ok(0)
}

//! `dilate`: Kraus channel of a product-state unitary-universe model, with
//! the partial-trace equivalence residual.

use std::path::Path;

use serde_json::json;

use qdyn::dilation::{kraus_from_dilation, InitialCondition, UniverseModel};

use crate::commands::fmt;
use crate::doc::{read_document, write_document, MatrixDocument};
use crate::{CliError, Format};

pub fn run(
    system: &Path,
    environment: &Path,
    unitary: &Path,
    out: Option<&Path>,
    format: Format,
) -> Result<u8, CliError> {
    let rho_s = read_document(system)?.to_state()?;
    let rho_e = read_document(environment)?.to_state()?;
    let u = read_document(unitary)?.to_matrix()?;

    let model = UniverseModel::new(
        rho_s.dim(),
        rho_e.dim(),
        InitialCondition::Product {
            system: rho_s,
            environment: rho_e,
        },
        u,
    )?;
    let ch = kraus_from_dilation(&model)?;

    let via_channel = ch.apply(&model.system_state()?)?;
    let oracle = model.evolved_system_state()?;
    let residual = via_channel.mat().frob_dist(oracle.mat())?;
    let tp_residual = ch.tp_residual();

    if let Some(path) = out {
        write_document(path, &MatrixDocument::from_channel(&ch))?;
    }

    match format {
        Format::Text => {
            println!("kraus operators: {}", ch.rank());
            println!("tp residual: {}", fmt(tp_residual));
            println!("equivalence residual: {}", fmt(residual));
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "kraus_operators": ch.rank(),
                    "tp_residual": tp_residual,
                    "equivalence_residual": residual,
                })
            );
        }
    }
    Ok(0)
}

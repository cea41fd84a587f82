pub mod bloch;
pub mod chain_run;
pub mod check_cp;
pub mod dilate;
pub mod swap_convert;
pub mod transfer_matrix;
pub mod weak;

/// 17-significant-digit scientific notation for human-readable tables.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

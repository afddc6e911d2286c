use std::io::Write;

use super::gamma::CdfGrid;
use super::pmf::TruncatedPMF;
use crate::error::Result;

pub const CSV_HEADER: &str = "k_or_t,value,error_bound";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_rows(mut w: impl Write, rows: impl Iterator<Item = (f64, f64, f64)>) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (t, v, e) in rows {
        writeln!(w, "{},{},{}", fmt17(t), fmt17(v), fmt17(e))?;
    }
    Ok(())
}

/// Survival `P(X ≥ offset + k)` per lattice point; the error column is the
/// tail bound.
pub fn write_pmf_survival_csv(w: impl Write, pmf: &TruncatedPMF) -> Result<()> {
    let surv = pmf.survival();
    write_rows(
        w,
        surv.into_iter()
            .enumerate()
            .map(|(k, s)| (pmf.point(k), s, pmf.tail_bound)),
    )
}

/// Survival `1 − F(t)` per grid point with its error bound.
pub fn write_grid_survival_csv(w: impl Write, grid: &CdfGrid) -> Result<()> {
    write_rows(
        w,
        (0..grid.len()).map(|i| (grid.points[i], 1.0 - grid.cdf[i], grid.error[i])),
    )
}

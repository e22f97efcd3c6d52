//! CSV emission for radial profile sweeps.

use std::io::Write;

use qflag_core::hp1geom::ProfileRow;

use crate::error::Result;

pub const PROFILE_HEADER: [&str; 7] =
    ["rho", "direction_seed", "coeff_bruhat", "coeff_invariant", "ratio", "expected_ratio", "abs_err"];

/// Writes the rows in the given order. Floats use the shortest
/// round-tripping representation, so output is byte-stable.
pub fn write_profile<W: Write>(out: W, rows: &[ProfileRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PROFILE_HEADER)?;
    for r in rows {
        w.write_record([
            r.rho.to_string(),
            r.direction_seed.to_string(),
            r.coeff_bruhat.to_string(),
            r.coeff_invariant.to_string(),
            r.ratio.to_string(),
            r.expected_ratio.to_string(),
            r.abs_err.to_string(),
        ])?;
    }
    w.flush().map_err(|e| crate::error::Error::io("csv output", e))?;
    Ok(())
}

//! Output conventions shared by every emitted file.
//!
//! CSV files start with a `# schema: <name>/<version>` line followed by the
//! column header. JSON documents carry a top-level `"schema"` field. Reals are
//! written with 17 significant digits; big integers as decimal strings.

use std::io::Write;

pub const POINTS_SCHEMA: &str = "weakmodel.points/1";
pub const DENSITY_SCHEMA: &str = "weakmodel.density/1";
pub const HOLE_SCHEMA: &str = "weakmodel.hole_certificate/1";
pub const HOLE_SCAN_SCHEMA: &str = "weakmodel.hole_scan/1";
pub const CENSUS_SCHEMA: &str = "weakmodel.census/1";
pub const ORACLE_SCHEMA: &str = "weakmodel.oracle/1";
pub const ENTROPY_SCHEMA: &str = "weakmodel.entropy/1";
pub const EUCLID_POINTS_SCHEMA: &str = "weakmodel.euclid_points/1";
pub const EUCLID_DENSITY_SCHEMA: &str = "weakmodel.euclid_density/1";
pub const VERIFY_SCHEMA: &str = "weakmodel.verify/1";

/// A real with 17 significant digits, e.g. `6.0792710185402663e-1`.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

pub fn write_schema_line<W: Write + ?Sized>(out: &mut W, schema: &str) -> std::io::Result<()> {
    writeln!(out, "# schema: {schema}")
}

/// Comma-separated integer tuple.
pub fn tuple(x: &[i64]) -> String {
    x.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip_with_17_digits() {
        for x in [0.607_927_101_854_026_6, 1.0 / 3.0, 2.0 / 3.0, 1e-300, 123456.789] {
            let s = real(x);
            let mantissa = s.split('e').next().unwrap().replace(['.', '-'], "");
            assert_eq!(mantissa.len(), 17, "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(0.0).parse::<f64>().unwrap(), 0.0);
    }

    #[test]
    fn tuples() {
        assert_eq!(tuple(&[1, -2, 3]), "1,-2,3");
        assert_eq!(tuple(&[7]), "7");
    }
}

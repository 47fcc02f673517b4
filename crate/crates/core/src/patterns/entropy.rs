use std::io::Write;

use super::census::PatternCensus;
use super::oracle::OracleCount;
use crate::adic::{self, AdicWindow, SchemeParams};
use crate::error::{invalid, Result};
use crate::format;

/// One shape's pattern count, from a census or from the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntropyInput {
    /// `theta(A)`, the number of offsets.
    pub size: u64,
    pub count: u64,
    /// Most ones seen in a single pattern, i.e. `max_x |(x + A) ∩ D|`.
    pub max_ones: u32,
}

impl EntropyInput {
    pub fn from_census(c: &PatternCensus) -> Self {
        Self { size: c.shape().len() as u64, count: c.count(), max_ones: c.max_ones() }
    }

    pub fn from_oracle(size: usize, c: OracleCount) -> Self {
        Self { size: size as u64, count: c.count, max_ones: c.max_ones }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyRow {
    pub size: u64,
    pub count: u64,
    pub per_site_log2: f64,
    /// `max_ones / size`: every subset of a pattern is a pattern.
    pub lower_bits: f64,
    /// `theta_H(d^U W)` in bits for this row's cylinder bound.
    pub upper_bits: f64,
    pub p_u: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub params: SchemeParams,
    pub rows: Vec<EntropyRow>,
    /// `theta_H(W) = 1/zeta(nk)` bits, the entropy of the `k`-free points.
    pub limit_bits: f64,
}

impl EntropyReport {
    /// CSV with columns `L,count,per_site_log2,lower_bits,upper_bits`.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::ENTROPY_SCHEMA)?;
        writeln!(out, "L,count,per_site_log2,lower_bits,upper_bits")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.size,
                r.count,
                format::real(r.per_site_log2),
                format::real(r.lower_bits),
                format::real(r.upper_bits)
            )?;
        }
        Ok(())
    }
}

/// `log2(count) / size` with `log 0 = 0`.
pub fn per_site_log2(count: u64, size: u64) -> f64 {
    if count == 0 || size == 0 {
        0.0
    } else {
        (count as f64).log2() / size as f64
    }
}

/// Per-site values with the analytic sandwich for each row.
///
/// `p_u_schedule` gives the cylinder bound per row; a single entry applies to
/// all rows.
pub fn entropy_table(
    inputs: &[EntropyInput],
    params: SchemeParams,
    p_u_schedule: &[u64],
    zeta_tol: f64,
) -> Result<EntropyReport> {
    if p_u_schedule.is_empty() || (p_u_schedule.len() != 1 && p_u_schedule.len() != inputs.len()) {
        return Err(invalid("P_U schedule must have one entry or one per row"));
    }
    let window = AdicWindow::kfree(params, 2)?;
    let limit_bits = adic::haar_measure(&window, zeta_tol)?.value;
    let rows = inputs
        .iter()
        .enumerate()
        .map(|(i, input)| {
            let p_u = p_u_schedule[if p_u_schedule.len() == 1 { 0 } else { i }];
            let upper = adic::van_hove_boundary_measure(&window, p_u, zeta_tol)?;
            Ok(EntropyRow {
                size: input.size,
                count: input.count,
                per_site_log2: per_site_log2(input.count, input.size),
                lower_bits: if input.size == 0 { 0.0 } else { input.max_ones as f64 / input.size as f64 },
                upper_bits: upper.value,
                p_u,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropyReport { params, rows, limit_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::patterns::{admissible_count, census, CensusMode, Shape};
    use crate::sieve::{LatticeBox, TruncatedSet};

    #[test]
    fn conventions() {
        assert_eq!(per_site_log2(0, 5), 0.0);
        assert_eq!(per_site_log2(1, 5), 0.0);
        assert_eq!(per_site_log2(1 << 7, 7), 1.0);
    }

    #[test]
    fn squarefree_sandwich() {
        let params = SchemeParams::squarefree();
        let inverse_zeta = 1.0 / arith::zeta(2, 1e-12).unwrap().value;
        let inputs: Vec<_> = (1..=16)
            .map(|l| EntropyInput::from_oracle(l, admissible_count(&Shape::interval(l).unwrap(), params).unwrap()))
            .collect();
        let report = entropy_table(&inputs, params, &[1000], 1e-10).unwrap();
        assert!((report.limit_bits - inverse_zeta).abs() < 1e-9);
        for r in &report.rows {
            assert!(r.per_site_log2 >= inverse_zeta && r.per_site_log2 <= 1.0, "{r:?}");
            assert!(r.lower_bits <= r.per_site_log2 + 1e-12);
            assert!(r.upper_bits >= report.limit_bits);
        }
        assert_eq!(report.rows[2].per_site_log2, 1.0);
    }

    #[test]
    fn upper_bits_decrease_along_schedule() {
        let inputs = vec![EntropyInput { size: 4, count: 15, max_ones: 3 }; 3];
        let r = entropy_table(&inputs, SchemeParams::squarefree(), &[2, 10, 100], 1e-10).unwrap();
        assert_eq!(r.rows[0].upper_bits, 0.75);
        assert!(r.rows[1].upper_bits < 0.75 && r.rows[2].upper_bits < r.rows[1].upper_bits);
        assert!(entropy_table(&inputs, SchemeParams::squarefree(), &[2, 3], 1e-10).is_err());
    }

    #[test]
    fn truncated_window_has_vanishing_entropy() {
        let set = TruncatedSet::new(SchemeParams::squarefree(), 3).unwrap();
        let region = LatticeBox::interval(0, 5_000).unwrap();
        let values: Vec<f64> = [4usize, 16, 64]
            .iter()
            .map(|&l| {
                let c = census(&set, &region, &Shape::interval(l).unwrap(), CensusMode::Coloured).unwrap();
                assert!(c.count() <= 36);
                per_site_log2(c.count(), l as u64)
            })
            .collect();
        assert!(values[0] > values[1] && values[1] > values[2] && values[2] < 0.1);
    }

    #[test]
    fn csv_layout() {
        let inputs = [EntropyInput { size: 4, count: 15, max_ones: 3 }];
        let r = entropy_table(&inputs, SchemeParams::squarefree(), &[2], 1e-10).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# schema: weakmodel.entropy/1");
        assert_eq!(lines[1], "L,count,per_site_log2,lower_bits,upper_bits");
        assert!(lines[2].starts_with("4,15,"));
        assert!(lines[2].ends_with(",7.5000000000000000e-1,7.5000000000000000e-1"));
    }
}

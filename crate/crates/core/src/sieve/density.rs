use std::io::Write;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use super::{count_in, Complement, EmptySet, FullLattice, KFreeSet, LatticeBox, LatticeSet, TruncatedSet};
use crate::adic::{self, AdicWindow, SchemeParams};
use crate::error::{invalid, Result};
use crate::format;

/// The lattice subsets whose densities can be scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `V(k, n)`.
    KFree,
    /// The clopen approximant keeping primes `<= bound`.
    Truncated(u64),
    /// `Z^n \ V(k, n)`, e.g. the invisible points.
    Complement,
    Full,
    Empty,
}

impl Family {
    pub fn set(&self, params: SchemeParams) -> Result<Box<dyn LatticeSet>> {
        Ok(match *self {
            Family::KFree => Box::new(KFreeSet::new(params)),
            Family::Truncated(bound) => Box::new(TruncatedSet::new(params, bound)?),
            Family::Complement => Box::new(Complement(KFreeSet::new(params))),
            Family::Full => Box::new(FullLattice(params.n())),
            Family::Empty => Box::new(EmptySet(params.n())),
        })
    }

    pub fn name(&self) -> String {
        match self {
            Family::KFree => "kfree".into(),
            Family::Truncated(p) => format!("truncated({p})"),
            Family::Complement => "complement".into(),
            Family::Full => "full".into(),
            Family::Empty => "empty".into(),
        }
    }

    /// `(theta_H(int W), theta_H(cl W), limit)` for the family's window.
    ///
    /// The `k`-free window is closed with empty interior; its complement is
    /// open and dense. Both still have a frequency limit, `1/zeta(nk)` and
    /// `1 - 1/zeta(nk)`.
    pub fn targets(&self, params: SchemeParams, zeta_tol: f64) -> Result<(f64, f64, f64)> {
        Ok(match *self {
            Family::KFree => {
                let w = adic::haar_measure(&AdicWindow::kfree(params, 2)?, zeta_tol)?;
                (0.0, w.value, w.value)
            }
            Family::Complement => {
                let w = adic::haar_measure(&AdicWindow::kfree(params, 2)?, zeta_tol)?;
                (1.0 - w.value, 1.0, 1.0 - w.value)
            }
            Family::Truncated(bound) => {
                let w = adic::haar_measure(&AdicWindow::truncated_kfree(params, bound)?, zeta_tol)?;
                (w.value, w.value, w.value)
            }
            Family::Full => (1.0, 1.0, 1.0),
            Family::Empty => (0.0, 0.0, 0.0),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyRow {
    /// Largest coordinate magnitude of the box.
    pub n: u64,
    pub region: LatticeBox,
    pub count: u64,
    pub volume: u64,
    pub frequency: f64,
}

impl FrequencyRow {
    pub fn exact_frequency(&self) -> Ratio<u64> {
        Ratio::new(self.count, self.volume)
    }
}

/// Relative point frequencies along a box sequence, with the window-measure
/// sandwich `theta_H(int W) <= liminf f <= limsup f <= theta_H(cl W)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    pub family: String,
    pub params: SchemeParams,
    pub rows: Vec<FrequencyRow>,
    pub target_lower: f64,
    pub target_upper: f64,
    /// The frequency limit where it is known.
    pub limit: f64,
}

impl FrequencyTable {
    pub fn last(&self) -> &FrequencyRow {
        self.rows.last().expect("frequency tables are non-empty")
    }

    /// CSV with columns `N,count,volume,frequency,target_lower,target_upper`.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::DENSITY_SCHEMA)?;
        writeln!(out, "N,count,volume,frequency,target_lower,target_upper")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.n,
                r.count,
                r.volume,
                format::real(r.frequency),
                format::real(self.target_lower),
                format::real(self.target_upper)
            )?;
        }
        Ok(())
    }
}

/// Scan `family` over a nested box sequence.
pub fn density_scan(
    family: Family,
    params: SchemeParams,
    boxes: &[LatticeBox],
    zeta_tol: f64,
) -> Result<FrequencyTable> {
    if boxes.is_empty() {
        return Err(invalid("density scan needs at least one box"));
    }
    for pair in boxes.windows(2) {
        if !pair[1].contains_box(&pair[0]) {
            return Err(invalid(format!(
                "boxes must be nested: {:?} is not inside {:?}",
                pair[0], pair[1]
            )));
        }
    }
    let set = family.set(params)?;
    let (target_lower, target_upper, limit) = family.targets(params, zeta_tol)?;
    let rows = boxes
        .iter()
        .map(|b| {
            let count = count_in(set.as_ref(), b)?;
            let volume = b.volume()?;
            let frequency = Ratio::new(count, volume).to_f64().unwrap_or(count as f64 / volume as f64);
            Ok(FrequencyRow { n: b.max_abs(), region: b.clone(), count, volume, frequency })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FrequencyTable {
        family: family.name(),
        params,
        rows,
        target_lower,
        target_upper,
        limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_density_converges() {
        let boxes: Vec<_> = [1_000u64, 10_000, 100_000, 1_000_000]
            .iter()
            .map(|&n| LatticeBox::interval(1, n as i64).unwrap())
            .collect();
        let t = density_scan(Family::KFree, SchemeParams::squarefree(), &boxes, 1e-9).unwrap();
        assert_eq!(t.rows[0].count, 608);
        let last = t.last();
        assert!((last.frequency - 0.607_927_1).abs() < 2e-3);
        assert!((last.frequency - t.limit).abs() < 2e-3);
        assert_eq!(t.target_lower, 0.0);
    }

    #[test]
    fn truncated_density_is_exact_on_periods() {
        let params = SchemeParams::squarefree();
        let boxes: Vec<_> = (1..=5)
            .map(|j| LatticeBox::interval(1, 36 * j).unwrap())
            .collect();
        let t = density_scan(Family::Truncated(3), params, &boxes, 1e-9).unwrap();
        for r in &t.rows {
            assert_eq!(r.exact_frequency(), Ratio::new(2, 3));
        }
        let boxes = [LatticeBox::interval(1, 400_000).unwrap()];
        let t = density_scan(Family::Truncated(2), params, &boxes, 1e-9).unwrap();
        assert_eq!(t.rows[0].exact_frequency(), Ratio::new(3, 4));
        assert_eq!(t.target_lower, 0.75);
    }

    #[test]
    fn full_and_complement() {
        let boxes = [LatticeBox::cube(2, 50).unwrap(), LatticeBox::cube(2, 100).unwrap()];
        let params = SchemeParams::visible_plane();
        let full = density_scan(Family::Full, params, &boxes, 1e-9).unwrap();
        assert!(full.rows.iter().all(|r| r.frequency == 1.0));
        let vis = density_scan(Family::KFree, params, &boxes, 1e-9).unwrap();
        let inv = density_scan(Family::Complement, params, &boxes, 1e-9).unwrap();
        for (a, b) in vis.rows.iter().zip(&inv.rows) {
            assert_eq!(a.count + b.count, a.volume);
        }
        assert!((inv.limit + vis.limit - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_sequences() {
        let params = SchemeParams::squarefree();
        assert!(density_scan(Family::KFree, params, &[], 1e-9).is_err());
        let boxes = [LatticeBox::interval(1, 100).unwrap(), LatticeBox::interval(50, 200).unwrap()];
        assert!(density_scan(Family::KFree, params, &boxes, 1e-9).is_err());
    }

    #[test]
    fn csv_layout() {
        let boxes = [LatticeBox::interval(1, 10).unwrap()];
        let t = density_scan(Family::KFree, SchemeParams::squarefree(), &boxes, 1e-9).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# schema: weakmodel.density/1");
        assert_eq!(lines[1], "N,count,volume,frequency,target_lower,target_upper");
        assert!(lines[2].starts_with("10,7,10,6.9999999999999996e-1,0.0000000000000000e0,"));
    }
}

//! Squarefree frequencies in [1, N] approaching 1/zeta(2).

use weakmodel::adic::SchemeParams;
use weakmodel::sieve::{density_scan, Family, LatticeBox};

fn main() -> weakmodel::Result<()> {
    let boxes = [100i64, 10_000, 1_000_000, 10_000_000]
        .iter()
        .map(|&n| LatticeBox::interval(1, n))
        .collect::<weakmodel::Result<Vec<_>>>()?;
    let table = density_scan(Family::KFree, SchemeParams::squarefree(), &boxes, 1e-12)?;
    println!("{:>10} {:>10} {:>12} {:>12}", "N", "count", "frequency", "error");
    for row in &table.rows {
        println!(
            "{:>10} {:>10} {:>12.9} {:>12.3e}",
            row.n,
            row.count,
            row.frequency,
            row.frequency - table.limit
        );
    }
    println!("1/zeta(2) = {:.12}", table.limit);
    Ok(())
}

//! Exact pattern counts from residue coverage, checked against a census.

use weakmodel::adic::SchemeParams;
use weakmodel::patterns::{admissible_count, census, AdmissibilityOracle, CensusMode, Shape};
use weakmodel::sieve::{KFreeSet, LatticeBox};

fn main() -> weakmodel::Result<()> {
    let params = SchemeParams::squarefree();
    let set = KFreeSet::new(params);
    let region = LatticeBox::interval(1, 10_000_000)?;
    println!("{:>3} {:>8} {:>8} {:>8}  primes", "L", "oracle", "census", "max_ones");
    for l in 1..=12 {
        let shape = Shape::interval(l)?;
        let exact = admissible_count(&shape, params)?;
        let seen = census(&set, &region, &shape, CensusMode::Coloured)?;
        let primes = AdmissibilityOracle::new(&shape, params)?.relevant_primes();
        println!(
            "{l:>3} {:>8} {:>8} {:>8}  {primes:?}",
            exact.count,
            seen.count(),
            exact.max_ones
        );
    }
    println!("(a census is a lower bound; it needs a larger region to catch up at larger L)");
    Ok(())
}

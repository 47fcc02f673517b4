//! Centred and coloured pattern censuses of squarefree integers and visible points.

use weakmodel::adic::SchemeParams;
use weakmodel::patterns::{census, CensusMode, Shape};
use weakmodel::sieve::{KFreeSet, LatticeBox};

fn main() -> weakmodel::Result<()> {
    let sf = KFreeSet::new(SchemeParams::squarefree());
    let region = LatticeBox::interval(1, 1_000_000)?;
    println!("squarefree integers in [1, 10^6]:");
    for l in [2usize, 4, 6, 8, 10] {
        let shape = Shape::interval(l)?;
        let centred = census(&sf, &region, &shape, CensusMode::Centered)?;
        let coloured = census(&sf, &region, &shape, CensusMode::Coloured)?;
        println!("  L={l:>2}: centred {:>4}, coloured {:>4}", centred.count(), coloured.count());
    }

    let shape = Shape::interval(4)?;
    let c = census(&sf, &region, &shape, CensusMode::Coloured)?;
    println!("the {} coloured 4-patterns, first seen at:", c.count());
    for p in c.pattern_set() {
        let occ = c.occurrence(p).unwrap();
        println!("  {:04b}  x={:<6} seen {} times", p.0, occ.first[0], occ.multiplicity);
    }

    let vis = KFreeSet::new(SchemeParams::visible_plane());
    let plane = LatticeBox::cube(2, 400)?;
    let shape = Shape::centered_cube(2, 1)?;
    let c = census(&vis, &plane, &shape, CensusMode::Coloured)?;
    println!("visible points, 3x3 coloured patterns in [-400,400]^2: {}", c.count());
    Ok(())
}

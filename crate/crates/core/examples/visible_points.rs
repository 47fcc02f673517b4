//! Visible lattice points of Z^2, their density, and a small picture.

use weakmodel::adic::SchemeParams;
use weakmodel::sieve::{count_in, KFreeSet, LatticeBox, LatticeSet};

fn main() -> weakmodel::Result<()> {
    let params = SchemeParams::visible_plane();
    let visible = KFreeSet::new(params);

    for y in (0..=12).rev() {
        let row: String = (0..=24)
            .map(|x| if visible.contains(&[x, y]) { '●' } else { '·' })
            .collect();
        println!("{row}");
    }

    for r in [10u64, 100, 1000, 3000] {
        let region = LatticeBox::cube(2, r)?;
        let count = count_in(&visible, &region)?;
        let freq = count as f64 / (region.volume()? - 1) as f64;
        println!("[-{r},{r}]^2: {count} visible, frequency {freq:.6}");
    }
    println!("6/pi^2 = {:.6}", 6.0 / std::f64::consts::PI.powi(2));
    Ok(())
}

//! Visible and invisible points have the same coloured patterns up to colour inversion.

use weakmodel::adic::SchemeParams;
use weakmodel::patterns::{complement_census, Shape};
use weakmodel::sieve::{KFreeSet, LatticeBox};

fn main() -> weakmodel::Result<()> {
    let visible = KFreeSet::new(SchemeParams::visible_plane());
    for (r, radius) in [(100u64, 1u64), (500, 1), (200, 2)] {
        let region = LatticeBox::cube(2, r)?;
        let shape = Shape::centered_cube(2, radius)?;
        let report = complement_census(&visible, &region, &shape)?;
        println!(
            "[-{r},{r}]^2, shape {}x{}: visible {}, invisible {}, flip is a bijection: {}",
            2 * radius + 1,
            2 * radius + 1,
            report.primary.count(),
            report.complement.count(),
            report.flip_is_bijection
        );
    }
    Ok(())
}

//! A regular model set from Z[sqrt 2]: exact density and vanishing entropy.

use weakmodel::adic::SchemeParams;
use weakmodel::euclid::{generate, regular_density_check, regular_entropy_check, Endpoint, QuadraticScheme};
use weakmodel::patterns::{admissible_count, per_site_log2, Shape};

fn main() -> weakmodel::Result<()> {
    let scheme = QuadraticScheme::sqrt2(Endpoint::int(0), Endpoint::int(1))?;
    let segment = generate(&scheme, 30.0)?;
    let values: Vec<String> = segment.points.iter().map(|p| format!("{:.3}", p.value)).collect();
    println!("points in [0, 30]: {}", values.join(" "));
    println!("minimal gap {:.6}", segment.min_gap().unwrap_or(0.0));

    let density = regular_density_check(&scheme, &[1e3, 1e4, 1e5, 1e6])?;
    for r in &density.rows {
        println!("T={:>9}: {:>7} points, count/T {:.6} (target {:.6})", r.t, r.count, r.frequency, density.target);
    }

    let entropy = regular_entropy_check(&scheme, &[1, 10, 50, 100, 200, 400], 40_000.0)?;
    for r in &entropy.rows {
        println!("L={:>3}: {:>4} patches, {:.4} bits per unit length", r.l, r.count, r.per_site_log2);
    }
    let sf = admissible_count(&Shape::interval(20)?, SchemeParams::squarefree())?;
    println!("squarefree integers, L=20: {:.4} bits per site", per_site_log2(sf.count, 20));
    Ok(())
}

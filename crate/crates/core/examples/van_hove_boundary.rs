//! Haar measures of the k-free window and of its van Hove boundaries.

use weakmodel::adic::{finite, haar_measure, van_hove_boundary_exact, van_hove_boundary_measure, AdicWindow, SchemeParams};
use weakmodel::arith::prime_tail_sum;

fn main() -> weakmodel::Result<()> {
    let params = SchemeParams::squarefree();
    let w = AdicWindow::kfree(params, 2)?;
    let m = haar_measure(&w, 1e-12)?;
    println!("theta_H(W) = {:.15} in [{:.15}, {:.15}]", m.value, m.lower, m.upper);

    println!("{:>6} {:>18} {:>12} {:>12}", "P_U", "theta_H(dU W)", "gap", "2*tail");
    for p_u in [2u64, 3, 5, 10, 100, 1000, 10_000] {
        let b = van_hove_boundary_measure(&w, p_u, 1e-12)?;
        let (_, tail) = prime_tail_sum(2, p_u)?;
        println!("{p_u:>6} {:>18.15} {:>12.3e} {:>12.3e}", b.value, b.value - m.value, 2.0 * tail);
    }

    println!("boundary by definition in finite truncations:");
    for (n, k, p_u) in [(1usize, 2u32, 2u64), (1, 2, 3), (1, 2, 5), (2, 1, 3)] {
        let params = SchemeParams::new(n, k)?;
        let brute = finite::boundary_by_definition(params, p_u)?;
        let closed = van_hove_boundary_exact(params, p_u)?;
        println!("  n={n} k={k} P_U={p_u}: {brute} (closed form {closed})");
    }
    Ok(())
}

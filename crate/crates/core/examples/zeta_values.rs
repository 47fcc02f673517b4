//! Certified zeta values and the Euler products they bound.

use weakmodel::arith::{inverse_zeta_partial, primes_up_to, zeta};

fn main() -> weakmodel::Result<()> {
    for s in [2u32, 3, 4, 6, 8] {
        let z = zeta(s, 1e-12)?;
        println!("zeta({s}) = {:.15} +- {:.1e}, 1/zeta = {:.15}", z.value, z.error_bound, 1.0 / z.value);
    }
    let z2 = zeta(2, 1e-12)?;
    for bound in [10u64, 100, 1000, 100_000] {
        let primes = primes_up_to(bound)?;
        let product = inverse_zeta_partial(2, primes.primes());
        println!("prod_(p<={bound}) (1-p^-2) = {product:.12}, excess {:.3e}", product - 1.0 / z2.value);
    }
    Ok(())
}

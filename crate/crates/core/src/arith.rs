//! Number-theoretic primitives.

use num_integer::Integer;

use crate::error::{invalid, Error, Result};

/// All primes up to an inclusive bound, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    bound: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + ExactSizeIterator + '_ {
        self.primes.iter().copied()
    }

    pub fn largest(&self) -> u64 {
        // non-empty: bound >= 2
        *self.primes.last().unwrap()
    }
}

/// Largest sieve bound accepted by [`primes_up_to`].
pub const MAX_PRIME_BOUND: u64 = 1 << 32;

/// Sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Result<PrimeTable> {
    if bound < 2 {
        return Err(invalid(format!("prime bound must be >= 2, got {bound}")));
    }
    if bound > MAX_PRIME_BOUND {
        return Err(Error::ResourceLimit(format!(
            "prime bound {bound} exceeds {MAX_PRIME_BOUND}"
        )));
    }
    let len = bound as usize + 1;
    let mut composite = vec![false; len];
    let mut primes = Vec::new();
    for i in 2..len {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < len {
            composite[j] = true;
            j += i;
        }
    }
    Ok(PrimeTable { bound, primes })
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let n = count.max(6) as f64;
    let bound = (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1;
    let table = primes_up_to(bound.max(13)).expect("bound within sieve range");
    table.primes[..count].to_vec()
}

/// `p^k` if it fits in a `u64`.
pub fn prime_power(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// A value of `zeta(s)` together with a proven bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub s: u32,
    pub value: f64,
    pub error_bound: f64,
}

impl ZetaValue {
    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// Bracket for `1/zeta(s)`.
    pub fn reciprocal_bracket(&self) -> (f64, f64) {
        (1.0 / self.upper(), 1.0 / self.lower())
    }
}

const MAX_ZETA_TERMS: u64 = 200_000_000;

/// `zeta(s)` for integer `s >= 2` from a partial sum and an integral tail bracket.
///
/// With `S_M = sum_{m <= M} m^-s` the tail satisfies
/// `(M+1)^(1-s)/(s-1) <= zeta(s) - S_M <= M^(1-s)/(s-1)`. The value is `S_M`
/// plus the midpoint of that bracket; the error bound is its half width
/// (at most `M^-s / 2`) plus a floating-point rounding allowance. `M` is the
/// smallest integer with `M^-s <= tol`.
pub fn zeta(s: u32, tol: f64) -> Result<ZetaValue> {
    if s < 2 {
        return Err(invalid(format!("zeta requires s >= 2, got {s}")));
    }
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        return Err(invalid(format!("zeta tolerance must be positive, got {tol}")));
    }
    let sf = s as f64;
    let mut terms = tol.powf(-1.0 / sf).ceil().max(1.0);
    if terms > MAX_ZETA_TERMS as f64 {
        return Err(Error::ResourceLimit(format!(
            "zeta({s}) to tolerance {tol:e} needs more than {MAX_ZETA_TERMS} terms"
        )));
    }
    // make sure the rounded-up M really satisfies the bound
    while (terms - 1.0) >= 1.0 && (terms - 1.0).powf(-sf) <= tol {
        terms -= 1.0;
    }
    let m_terms = terms as u64;

    // Neumaier summation from the small end.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for m in (1..=m_terms).rev() {
        let t = (m as f64).powi(-(s as i32));
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    let partial = sum + comp;

    let tail_hi = terms.powf(1.0 - sf) / (sf - 1.0);
    let tail_lo = (terms + 1.0).powf(1.0 - sf) / (sf - 1.0);
    let value = partial + 0.5 * (tail_lo + tail_hi);
    let half_width = 0.5 * (tail_hi - tail_lo);

    // powi/powf error is a few ulps per term; the compensated sum adds ~2 ulps.
    let ulps = 2.0 * (sf.log2().ceil() + 8.0);
    let rounding = ulps * f64::EPSILON * value;
    let error_bound = half_width + rounding;
    if error_bound > tol {
        return Err(Error::ResourceLimit(format!(
            "zeta({s}) cannot be certified to {tol:e} in double precision"
        )));
    }
    Ok(ZetaValue { s, value, error_bound })
}

/// `prod_{p in primes} (1 - p^-s)`, the truncated Euler product for `1/zeta(s)`.
pub fn inverse_zeta_partial(s: u32, primes: &[u64]) -> f64 {
    primes
        .iter()
        .map(|&p| 1.0 - (p as f64).powi(-(s as i32)))
        .product()
}

/// Bracket `(lower, upper)` for `sum_{p > bound} p^-s` over primes.
///
/// The lower end sums primes in `(bound, Q]`; the upper end adds the integral
/// bound `Q^(1-s)/(s-1)` for all integers beyond `Q`.
pub fn prime_tail_sum(s: u32, bound: u64) -> Result<(f64, f64)> {
    if s < 2 {
        return Err(invalid(format!("prime tail sum requires s >= 2, got {s}")));
    }
    let cutoff = bound.saturating_mul(4).max(1 << 17);
    let table = primes_up_to(cutoff)?;
    let lower: f64 = table
        .iter()
        .filter(|&p| p > bound)
        .map(|p| (p as f64).powi(-(s as i32)))
        .rev()
        .sum();
    let sf = s as f64;
    let upper = lower + (cutoff as f64).powf(1.0 - sf) / (sf - 1.0);
    Ok((lower, upper))
}

/// True iff no prime `p` has `p^k | m`.
///
/// `0` is never `k`-free and `±1` always is. For `k = 0` nothing is `k`-free.
pub fn is_kfree_integer(m: i64, k: u32) -> bool {
    is_kfree_u64(m.unsigned_abs(), k)
}

pub(crate) fn is_kfree_u64(m: u64, k: u32) -> bool {
    if k == 0 || m == 0 {
        return false;
    }
    let mut rest = m;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if k >= 2 {
            match d.checked_pow(k) {
                Some(dk) if dk <= rest => {}
                // no prime >= d can divide rest k times
                _ => return true,
            }
        }
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            if e >= k {
                return false;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // rest is 1 or a prime appearing once
    !(rest > 1 && k == 1)
}

/// gcd of the absolute values of the coordinates; `0` only for the zero vector.
pub fn gcd_vector(x: &[i64]) -> u64 {
    x.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
}

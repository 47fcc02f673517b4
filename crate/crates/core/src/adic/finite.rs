//! Finite truncations `prod_{p <= Q} (Z/p^k Z)^n` with literal set algebra.
//!
//! Every subset of a finite discrete group is clopen, so closures are the
//! identity here. The generalised van Hove boundary is evaluated straight from
//! `d^U W = (U cl(W) ∩ cl(W^c)) ∪ (U cl(W^c) ∩ cl(W))` by explicit Minkowski
//! sums, independently of the closed-form product in the parent module.

use num_rational::Ratio;

use super::{AdicWindow, SchemeParams};
use crate::arith;
use crate::error::{Error, Result};

/// Largest group order handled by the brute-force routines.
pub const MAX_ORDER: u64 = 1 << 22;

/// A subset of the finite group, one flag per element.
pub type ElementSet = Vec<bool>;

#[derive(Debug, Clone)]
pub struct FiniteTruncation {
    params: SchemeParams,
    primes: Vec<u64>,
    /// One modulus per digit: `n` digits per prime, in prime order.
    radices: Vec<u64>,
    order: usize,
}

impl FiniteTruncation {
    /// The product over all primes `<= bound`.
    pub fn new(params: SchemeParams, bound: u64) -> Result<Self> {
        let primes = arith::primes_up_to(bound)?.primes().to_vec();
        let mut radices = Vec::new();
        let mut order: u64 = 1;
        for &p in &primes {
            let m = params.modulus(p)?;
            for _ in 0..params.n() {
                radices.push(m);
                order = order
                    .checked_mul(m)
                    .filter(|&o| o <= MAX_ORDER)
                    .ok_or_else(|| {
                        Error::ResourceLimit(format!(
                            "finite truncation up to {bound} exceeds {MAX_ORDER} elements"
                        ))
                    })?;
            }
        }
        Ok(Self { params, primes, radices, order: order as usize })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn decode(&self, mut index: usize) -> Vec<u64> {
        let mut digits = vec![0; self.radices.len()];
        for (d, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = (index as u64) % r;
            index /= r as usize;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> usize {
        digits
            .iter()
            .zip(&self.radices)
            .fold(0usize, |acc, (&d, &r)| acc * r as usize + d as usize)
    }

    fn block<'a>(&self, digits: &'a [u64], prime_index: usize) -> &'a [u64] {
        let n = self.params.n();
        &digits[prime_index * n..(prime_index + 1) * n]
    }

    fn collect(&self, pred: impl Fn(&[u64]) -> bool) -> ElementSet {
        (0..self.order).map(|i| pred(&self.decode(i))).collect()
    }

    /// The image of a product window, reading the tail convention for primes
    /// above the window's truncation.
    pub fn window(&self, w: &AdicWindow) -> ElementSet {
        self.collect(|digits| {
            self.primes
                .iter()
                .enumerate()
                .all(|(i, &p)| w.component_contains(p, self.block(digits, i)))
        })
    }

    /// `U = {h : h_p = 0 for every p <= p_u}`.
    pub fn cylinder(&self, p_u: u64) -> ElementSet {
        self.collect(|digits| {
            self.primes
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p <= p_u)
                .all(|(i, _)| self.block(digits, i).iter().all(|&d| d == 0))
        })
    }

    pub fn complement(&self, a: &ElementSet) -> ElementSet {
        a.iter().map(|&x| !x).collect()
    }

    /// Subsets of a discrete space are closed.
    pub fn closure(&self, a: &ElementSet) -> ElementSet {
        a.clone()
    }

    /// `{a + b : a in A, b in B}`.
    pub fn minkowski_sum(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let members = |s: &ElementSet| -> Vec<Vec<u64>> {
            s.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| self.decode(i))
                .collect()
        };
        let (aa, bb) = (members(a), members(b));
        let mut out = vec![false; self.order];
        let mut sum = vec![0u64; self.radices.len()];
        for x in &aa {
            for y in &bb {
                for (((s, &u), &v), &r) in sum.iter_mut().zip(x).zip(y).zip(&self.radices) {
                    *s = (u + v) % r;
                }
                out[self.encode(&sum)] = true;
            }
        }
        out
    }

    /// `(U cl(W) ∩ cl(W^c)) ∪ (U cl(W^c) ∩ cl(W))`.
    pub fn generalised_boundary(&self, w: &ElementSet, u: &ElementSet) -> ElementSet {
        let cl_w = self.closure(w);
        let cl_wc = self.closure(&self.complement(w));
        let left = self.minkowski_sum(u, &cl_w);
        let right = self.minkowski_sum(u, &cl_wc);
        (0..self.order)
            .map(|i| (left[i] && cl_wc[i]) || (right[i] && cl_w[i]))
            .collect()
    }

    /// Normalized counting measure.
    pub fn measure(&self, a: &ElementSet) -> Ratio<u64> {
        Ratio::new(a.iter().filter(|&&x| x).count() as u64, self.order as u64)
    }
}

/// `theta(d^U W)` for the `k`-free window, computed set-theoretically.
///
/// The truncation runs over primes up to `max(5, next prime after p_u)` so at
/// least one factor lies outside the cylinder's constrained coordinates;
/// without such a factor `U` is trivial and the clopen truncated window has
/// empty boundary.
pub fn boundary_by_definition(params: SchemeParams, p_u: u64) -> Result<Ratio<u64>> {
    let bound = next_prime_after(p_u).max(5);
    let group = FiniteTruncation::new(params, bound)?;
    let w = group.window(&AdicWindow::kfree(params, 2)?);
    let u = group.cylinder(p_u);
    Ok(group.measure(&group.generalised_boundary(&w, &u)))
}

fn next_prime_after(p: u64) -> u64 {
    (p + 1..).find(|&q| is_prime(q)).unwrap()
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

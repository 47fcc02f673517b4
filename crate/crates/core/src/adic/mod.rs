//! The internal space `H = prod_p (Z^n / p^k Z^n)` of the lattice scheme.
//!
//! Haar measure on `H` is the product of the normalized counting measures on
//! the finite factors, so `theta_H(H) = 1` and the lattice `Z^n` has density 1
//! under counting measure on direct space. Windows are restricted to product
//! form: a component per prime up to a truncation bound and a uniform tail
//! convention for all larger primes.

pub mod finite;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith::{self, prime_power};
use crate::error::{invalid, Error, Result};

/// Dimension `n` and power `k` of the scheme; requires `n*k > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    n: usize,
    k: u32,
}

impl SchemeParams {
    pub fn new(n: usize, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("dimension n must be >= 1"));
        }
        if k == 0 {
            return Err(invalid("power k must be >= 1"));
        }
        if n as u64 * k as u64 <= 1 {
            return Err(invalid("n*k must exceed 1 (V(1,1) = {-1, 1} is excluded)"));
        }
        if n as u64 * k as u64 > 64 {
            return Err(invalid("n*k above 64 is not supported"));
        }
        Ok(Self { n, k })
    }

    /// Squarefree integers.
    pub fn squarefree() -> Self {
        Self { n: 1, k: 2 }
    }

    /// Visible points of `Z^2`.
    pub fn visible_plane() -> Self {
        Self { n: 2, k: 1 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The exponent `n*k` in `theta_H(W) = 1/zeta(n k)`.
    pub fn nk(&self) -> u32 {
        self.n as u32 * self.k
    }

    /// `p^k`, the modulus of each coordinate in the factor at `p`.
    pub fn modulus(&self, p: u64) -> Result<u64> {
        prime_power(p, self.k)
            .ok_or_else(|| Error::ResourceLimit(format!("{p}^{} overflows u64", self.k)))
    }
}

/// Residues of a lattice point modulo `p^k` for each prime up to a truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarImage {
    truncation: u64,
    residues: Vec<PrimeResidue>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeResidue {
    pub prime: u64,
    pub modulus: u64,
    pub coords: Vec<u64>,
}

impl StarImage {
    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn residues(&self) -> &[PrimeResidue] {
        &self.residues
    }

    pub fn at(&self, p: u64) -> Option<&PrimeResidue> {
        self.residues
            .binary_search_by_key(&p, |r| r.prime)
            .ok()
            .map(|i| &self.residues[i])
    }
}

/// `x -> (x mod p^k Z^n)_{p <= truncation}`.
pub fn star_map(x: &[i64], truncation: u64, params: SchemeParams) -> Result<StarImage> {
    if x.len() != params.n() {
        return Err(invalid(format!(
            "point has {} coordinates, scheme dimension is {}",
            x.len(),
            params.n()
        )));
    }
    let primes = arith::primes_up_to(truncation)?;
    let residues = primes
        .iter()
        .map(|p| {
            let modulus = params.modulus(p)?;
            let coords = x
                .iter()
                .map(|&c| (c as i128).rem_euclid(modulus as i128) as u64)
                .collect();
            Ok(PrimeResidue { prime: p, modulus, coords })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StarImage { truncation, residues })
}

/// One factor of a product window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Full,
    /// Everything except the zero residue.
    ComplementOfZero,
    /// An explicit subset of `(Z/p^k Z)^n`.
    Explicit(BTreeSet<Vec<u64>>),
}

impl Component {
    fn contains(&self, coords: &[u64]) -> bool {
        match self {
            Component::Full => true,
            Component::ComplementOfZero => coords.iter().any(|&c| c != 0),
            Component::Explicit(set) => set.contains(coords),
        }
    }
}

/// Convention for every prime above the truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Full,
    ComplementOfZero,
}

/// A product window `prod_p W_p` in `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdicWindow {
    params: SchemeParams,
    truncation: u64,
    primes: Vec<u64>,
    components: Vec<Component>,
    tail: Tail,
}

impl AdicWindow {
    /// `components[i]` belongs to the `i`-th prime up to `truncation`.
    pub fn new(
        params: SchemeParams,
        truncation: u64,
        components: Vec<Component>,
        tail: Tail,
    ) -> Result<Self> {
        let primes = arith::primes_up_to(truncation)?.primes().to_vec();
        if components.len() != primes.len() {
            return Err(invalid(format!(
                "{} components given for {} primes up to {truncation}",
                components.len(),
                primes.len()
            )));
        }
        for (&p, c) in primes.iter().zip(&components) {
            if let Component::Explicit(set) = c {
                let modulus = params.modulus(p)?;
                for r in set {
                    if r.len() != params.n() || r.iter().any(|&v| v >= modulus) {
                        return Err(invalid(format!(
                            "residue {r:?} is not an element of (Z/{modulus}Z)^{}",
                            params.n()
                        )));
                    }
                }
            }
        }
        Ok(Self { params, truncation, primes, components, tail })
    }

    /// The `k`-free window: every component is the complement of zero.
    pub fn kfree(params: SchemeParams, truncation: u64) -> Result<Self> {
        let count = arith::primes_up_to(truncation)?.len();
        Self::new(params, truncation, vec![Component::ComplementOfZero; count], Tail::ComplementOfZero)
    }

    /// The clopen cylinder that forgets every prime above `truncation`.
    pub fn truncated_kfree(params: SchemeParams, truncation: u64) -> Result<Self> {
        let count = arith::primes_up_to(truncation)?.len();
        Self::new(params, truncation, vec![Component::ComplementOfZero; count], Tail::Full)
    }

    /// `W = H`.
    pub fn full(params: SchemeParams) -> Self {
        Self::new(params, 2, vec![Component::Full], Tail::Full).expect("valid full window")
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn components(&self) -> impl Iterator<Item = (u64, &Component)> {
        self.primes.iter().copied().zip(self.components.iter())
    }

    pub fn component(&self, p: u64) -> Option<&Component> {
        self.primes.binary_search(&p).ok().map(|i| &self.components[i])
    }

    /// True for the window whose projection set is `V(k, n)`.
    pub fn is_kfree_family(&self) -> bool {
        self.tail == Tail::ComplementOfZero
            && self.components.iter().all(|c| *c == Component::ComplementOfZero)
    }

    /// Membership of `coords` in the factor at prime `p`.
    pub fn component_contains(&self, p: u64, coords: &[u64]) -> bool {
        match self.component(p) {
            Some(c) => c.contains(coords),
            None if p > self.truncation => match self.tail {
                Tail::Full => true,
                Tail::ComplementOfZero => coords.iter().any(|&c| c != 0),
            },
            None => true,
        }
    }

    /// Exact Haar measure when it is a finite product (`tail = Full`).
    pub fn haar_exact(&self) -> Option<BigRational> {
        if self.tail != Tail::Full {
            return None;
        }
        let nk = self.params.nk();
        let mut acc = BigRational::one();
        for (&p, c) in self.primes.iter().zip(&self.components) {
            let order = BigInt::from(p).pow(nk);
            let factor = match c {
                Component::Full => continue,
                Component::ComplementOfZero => {
                    BigRational::new(order.clone() - 1, order)
                }
                Component::Explicit(set) => BigRational::new(BigInt::from(set.len()), order),
            };
            acc *= factor;
        }
        Some(acc)
    }

    fn finite_part(&self) -> f64 {
        let nk = self.params.nk() as i32;
        self.primes
            .iter()
            .zip(&self.components)
            .map(|(&p, c)| match c {
                Component::Full => 1.0,
                Component::ComplementOfZero => 1.0 - (p as f64).powi(-nk),
                Component::Explicit(set) => set.len() as f64 * (p as f64).powi(-nk),
            })
            .product()
    }
}

/// Whether the star image lies in the window.
///
/// Primes in `(W.truncation, s.truncation]` are checked against the tail.
pub fn in_window(s: &StarImage, w: &AdicWindow) -> Result<bool> {
    if s.truncation < w.truncation {
        return Err(invalid(format!(
            "star image truncated at {} is coarser than window truncation {}",
            s.truncation, w.truncation
        )));
    }
    Ok(s.residues.iter().all(|r| w.component_contains(r.prime, &r.coords)))
}

/// A measure with a certified bracket `lower <= value <= upper`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl MeasureResult {
    fn exact(value: f64) -> Self {
        Self { value, lower: value, upper: value }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `theta_H(W)`.
///
/// For `tail = Full` the window is a clopen cylinder and the measure is the
/// finite product of component densities. For `tail = ComplementOfZero` the
/// infinite tail `T = prod_{p > P} (1 - p^-nk)` is bracketed twice, by
/// `1/(zeta(nk) prod_{p <= P}(1 - p^-nk))` with the certified zeta error and by
/// `1 - sum_{p>P} p^-nk <= T <= exp(-sum_{p>P} p^-nk)`, and the tighter ends
/// are kept.
pub fn haar_measure(w: &AdicWindow, zeta_tol: f64) -> Result<MeasureResult> {
    let finite = w.finite_part();
    match w.tail {
        Tail::Full => {
            let exact = w.haar_exact().and_then(|q| q.to_f64()).unwrap_or(finite);
            Ok(MeasureResult::exact(exact))
        }
        Tail::ComplementOfZero => {
            let s = w.params.nk();
            let z = arith::zeta(s, zeta_tol)?;
            let head = arith::inverse_zeta_partial(s, &w.primes);
            let (sum_lo, sum_hi) = arith::prime_tail_sum(s, w.truncation)?;
            let tail_lo = (1.0 / (z.upper() * head)).max(1.0 - sum_hi);
            let tail_hi = (1.0 / (z.lower() * head)).min((-sum_lo).exp()).min(1.0);
            let tail = (1.0 / (z.value * head)).clamp(tail_lo, tail_hi);
            Ok(MeasureResult {
                value: finite * tail,
                lower: finite * tail_lo,
                upper: finite * tail_hi,
            })
        }
    }
}

/// Exact `prod_{p <= p_u} (1 - p^-nk)`.
pub fn van_hove_boundary_exact(params: SchemeParams, p_u: u64) -> Result<BigRational> {
    let primes = arith::primes_up_to(p_u)?;
    let mut acc = BigRational::one();
    for p in primes.iter() {
        let order = BigInt::from(p).pow(params.nk());
        acc *= BigRational::new(order.clone() - 1, order);
    }
    Ok(acc)
}

/// `theta_H(d^U W)` for the `k`-free window and the cylinder unit neighbourhood
/// `U = {h : h_p = 0 for p <= p_u}`.
///
/// `W` is closed with empty interior, so `d^U W = U W` and the measure is
/// `prod_{p <= p_u} (1 - p^-nk)`. [`finite::boundary_by_definition`] checks
/// this identity set-theoretically on finite truncations.
pub fn van_hove_boundary_measure(
    w: &AdicWindow,
    p_u: u64,
    zeta_tol: f64,
) -> Result<MeasureResult> {
    if !w.is_kfree_family() {
        return Err(Error::Unsupported(
            "van Hove boundary measure is only implemented for the k-free window".into(),
        ));
    }
    if p_u < 2 {
        return Err(invalid(format!("cylinder prime bound must be >= 2, got {p_u}")));
    }
    let primes = arith::primes_up_to(p_u)?;
    let value = arith::inverse_zeta_partial(w.params.nk(), primes.primes());
    // each factor and product step rounds once
    let slack = 2.0 * primes.len() as f64 * f64::EPSILON * value;
    let window = haar_measure(w, zeta_tol)?;
    debug_assert!(value + slack >= window.lower);
    Ok(MeasureResult { value, lower: value - slack, upper: value + slack })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf() -> SchemeParams {
        SchemeParams::squarefree()
    }

    #[test]
    fn params_validation() {
        assert!(SchemeParams::new(1, 1).is_err());
        assert!(SchemeParams::new(0, 2).is_err());
        assert!(SchemeParams::new(3, 0).is_err());
        assert_eq!(SchemeParams::new(2, 1).unwrap().nk(), 2);
        assert_eq!(SchemeParams::new(3, 2).unwrap().nk(), 6);
    }

    #[test]
    fn star_map_examples() {
        let s = star_map(&[4], 3, sf()).unwrap();
        let got: Vec<_> = s.residues().iter().map(|r| r.coords[0]).collect();
        assert_eq!(got, vec![0, 4]);

        let s = star_map(&[0, 0, 0], 11, SchemeParams::new(3, 1).unwrap()).unwrap();
        assert!(s.residues().iter().all(|r| r.coords.iter().all(|&c| c == 0)));

        let s = star_map(&[49], 7, sf()).unwrap();
        let got: Vec<_> = s.residues().iter().map(|r| (r.modulus, r.coords[0])).collect();
        assert_eq!(got, vec![(4, 1), (9, 4), (25, 24), (49, 0)]);

        let s = star_map(&[-3, 7], 3, SchemeParams::visible_plane()).unwrap();
        assert_eq!(s.at(2).unwrap().coords, vec![1, 1]);
        assert_eq!(s.at(3).unwrap().coords, vec![0, 1]);
        assert!(star_map(&[1, 2], 3, sf()).is_err());
    }

    #[test]
    fn window_membership() {
        let w = AdicWindow::kfree(sf(), 3).unwrap();
        assert!(in_window(&star_map(&[10], 3, sf()).unwrap(), &w).unwrap());
        assert!(!in_window(&star_map(&[12], 3, sf()).unwrap(), &w).unwrap());
        // 50 = 2 * 25 passes at P = 3 and fails once the tail prime 5 is checked
        assert!(in_window(&star_map(&[50], 3, sf()).unwrap(), &w).unwrap());
        assert!(!in_window(&star_map(&[50], 5, sf()).unwrap(), &w).unwrap());

        let full = AdicWindow::full(sf());
        for x in [-10i64, 0, 4, 36, 1000] {
            assert!(in_window(&star_map(&[x], 7, sf()).unwrap(), &full).unwrap());
        }

        let fine = AdicWindow::kfree(sf(), 7).unwrap();
        let coarse = star_map(&[10], 5, sf()).unwrap();
        assert!(matches!(in_window(&coarse, &fine), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn explicit_components() {
        let set: BTreeSet<Vec<u64>> = [vec![1], vec![3]].into_iter().collect();
        let w = AdicWindow::new(sf(), 3, vec![Component::Explicit(set), Component::Full], Tail::Full)
            .unwrap();
        assert!(in_window(&star_map(&[5], 3, sf()).unwrap(), &w).unwrap());
        assert!(!in_window(&star_map(&[6], 3, sf()).unwrap(), &w).unwrap());
        assert_eq!(w.haar_exact().unwrap(), BigRational::new(1.into(), 2.into()));

        let bad: BTreeSet<Vec<u64>> = [vec![4]].into_iter().collect();
        assert!(AdicWindow::new(sf(), 2, vec![Component::Explicit(bad)], Tail::Full).is_err());
        assert!(AdicWindow::new(sf(), 3, vec![Component::Full], Tail::Full).is_err());
    }

    #[test]
    fn haar_measure_examples() {
        let z = arith::zeta(2, 1e-12).unwrap();
        for p in [2u64, 3, 10, 100] {
            let m = haar_measure(&AdicWindow::kfree(sf(), p).unwrap(), 1e-10).unwrap();
            assert!(m.lower <= m.value && m.value <= m.upper);
            assert!((m.value - 1.0 / z.value).abs() < 1e-9, "P={p}: {m:?}");
            assert!(m.lower <= 1.0 / z.value + 1e-12 && 1.0 / z.value - 1e-12 <= m.upper);
            let (_, tail) = arith::prime_tail_sum(2, p).unwrap();
            assert!(m.width() <= tail);
        }
        assert!((0.607927 - 1.0 / z.value).abs() < 1e-6);

        let t = haar_measure(&AdicWindow::truncated_kfree(sf(), 3).unwrap(), 1e-9).unwrap();
        assert_eq!(t.value, 2.0 / 3.0);
        assert_eq!(t.lower, t.upper);
        assert_eq!(
            AdicWindow::truncated_kfree(sf(), 3).unwrap().haar_exact().unwrap(),
            BigRational::new(2.into(), 3.into())
        );
        assert_eq!(haar_measure(&AdicWindow::full(sf()), 1e-9).unwrap().value, 1.0);
    }

    #[test]
    fn van_hove_boundary_examples() {
        let w = AdicWindow::kfree(sf(), 2).unwrap();
        assert_eq!(van_hove_boundary_measure(&w, 2, 1e-9).unwrap().value, 0.75);
        let m5 = van_hove_boundary_measure(&w, 5, 1e-9).unwrap().value;
        assert!((m5 - 0.64).abs() < 1e-15);
        assert_eq!(
            van_hove_boundary_exact(sf(), 5).unwrap(),
            BigRational::new(16.into(), 25.into())
        );
        let trunc = AdicWindow::truncated_kfree(sf(), 2).unwrap();
        assert!(matches!(
            van_hove_boundary_measure(&trunc, 2, 1e-9),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            van_hove_boundary_measure(&w, 1, 1e-9),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn van_hove_boundary_decreases_to_window_measure() {
        for params in [sf(), SchemeParams::visible_plane(), SchemeParams::new(1, 3).unwrap()] {
            let w = AdicWindow::kfree(params, 2).unwrap();
            let haar = haar_measure(&w, 1e-10).unwrap();
            let mut last = 1.0;
            for p_u in [2u64, 3, 5, 10, 30, 100, 1000, 10_000] {
                let b = van_hove_boundary_measure(&w, p_u, 1e-10).unwrap().value;
                assert!(b <= last);
                assert!(b >= haar.lower);
                let (_, tail) = arith::prime_tail_sum(params.nk(), p_u).unwrap();
                assert!(b - haar.value <= 2.0 * tail + haar.width());
                last = b;
            }
        }
    }
}

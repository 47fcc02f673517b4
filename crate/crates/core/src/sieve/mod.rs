//! Point sets of `Z^n` materialized over boxes.
//!
//! Membership in `V(k, n)` reduces to the coordinate gcd: `x` is `k`-free iff
//! `x != 0` and no `p^k` divides `gcd(x)`. For `n = 1` the region is sieved
//! directly by multiples of `p^k`; for `n >= 2` a sieve over `[0, max|x|]`
//! classifies every possible gcd.
//!
//! Box scans split along the first axis into slabs that are processed on the
//! current rayon pool and combined by addition, so results do not depend on the
//! number of workers.

mod density;
mod holes;

pub use density::{density_scan, Family, FrequencyRow, FrequencyTable};
pub use holes::{crt_hole, scan_hole, Assignment, HoleCertificate, HoleViolation};

use std::io::Write;

use rayon::prelude::*;

use crate::adic::{self, AdicWindow, SchemeParams, Tail};
use crate::arith::{self, gcd_vector};
use crate::error::{invalid, Error, Result};
use crate::format;

/// Cells per slab in parallel scans.
pub(crate) const SLAB_VOLUME: u64 = 1 << 20;

/// Largest box volume materialized in a single mask.
pub const MAX_MASK_VOLUME: u64 = 1 << 34;

/// An axis-parallel box `[lo_1, hi_1] x ... x [lo_n, hi_n]` of lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl LatticeBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(invalid("box corners must have the same positive dimension"));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(invalid(format!("empty box: lo {lo:?} exceeds hi {hi:?}")));
        }
        Ok(Self { lo, hi })
    }

    /// `[lo, hi]` in one dimension.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo], vec![hi])
    }

    /// The centred cube `[-r, r]^n`.
    pub fn cube(n: usize, r: u64) -> Result<Self> {
        let r = i64::try_from(r).map_err(|_| invalid("cube radius too large"))?;
        Self::new(vec![-r; n], vec![r; n])
    }

    /// `[1, side]^n`.
    pub fn positive_cube(n: usize, side: u64) -> Result<Self> {
        if side == 0 {
            return Err(invalid("cube side must be >= 1"));
        }
        let side = i64::try_from(side).map_err(|_| invalid("cube side too large"))?;
        Self::new(vec![1; n], vec![side; n])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn side(&self, axis: usize) -> u64 {
        (self.hi[axis] as i128 - self.lo[axis] as i128 + 1) as u64
    }

    /// Number of lattice points.
    pub fn volume(&self) -> Result<u64> {
        (0..self.dim()).try_fold(1u64, |acc, i| {
            acc.checked_mul(self.side(i))
                .ok_or_else(|| Error::ResourceLimit(format!("volume of {self:?} overflows")))
        })
    }

    /// Largest coordinate magnitude.
    pub fn max_abs(&self) -> u64 {
        self.lo
            .iter()
            .chain(&self.hi)
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(c, (a, b))| a <= c && c <= b)
    }

    pub fn contains_box(&self, other: &LatticeBox) -> bool {
        other.dim() == self.dim() && self.contains(&other.lo) && self.contains(&other.hi)
    }

    /// Lattice points in row-major order (last coordinate fastest).
    pub fn points(&self) -> BoxPoints<'_> {
        BoxPoints { b: self, next: Some(self.lo.clone()) }
    }

    /// Splits along the first axis into slabs of roughly `target` points.
    pub fn slabs(&self, target: u64) -> Vec<LatticeBox> {
        let row: u64 = (1..self.dim()).map(|i| self.side(i)).product::<u64>().max(1);
        let rows = (target / row).max(1) as i128;
        let mut out = Vec::new();
        let mut start = self.lo[0] as i128;
        let end = self.hi[0] as i128;
        while start <= end {
            let stop = (start + rows - 1).min(end);
            let mut lo = self.lo.clone();
            let mut hi = self.hi.clone();
            lo[0] = start as i64;
            hi[0] = stop as i64;
            out.push(LatticeBox { lo, hi });
            start = stop + 1;
        }
        out
    }
}

pub struct BoxPoints<'a> {
    b: &'a LatticeBox,
    next: Option<Vec<i64>>,
}

impl Iterator for BoxPoints<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.len();
        loop {
            if axis == 0 {
                break;
            }
            axis -= 1;
            if succ[axis] < self.b.hi[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ[axis] = self.b.lo[axis];
        }
        Some(current)
    }
}

/// Membership flags for every point of a box, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    region: LatticeBox,
    strides: Vec<usize>,
    bits: Vec<bool>,
}

impl RegionMask {
    fn empty(region: &LatticeBox) -> Result<Self> {
        let volume = region.volume()?;
        if volume > MAX_MASK_VOLUME {
            return Err(Error::ResourceLimit(format!(
                "region of {volume} points exceeds the mask limit {MAX_MASK_VOLUME}"
            )));
        }
        let n = region.dim();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * region.side(i + 1) as usize;
        }
        Ok(Self { region: region.clone(), strides, bits: vec![false; volume as usize] })
    }

    pub fn region(&self) -> &LatticeBox {
        &self.region
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn index(&self, x: &[i64]) -> Option<usize> {
        if !self.region.contains(x) {
            return None;
        }
        Some(
            x.iter()
                .zip(&self.region.lo)
                .zip(&self.strides)
                .map(|((c, l), s)| (c - l) as usize * s)
                .sum(),
        )
    }

    pub fn get(&self, x: &[i64]) -> bool {
        self.index(x).is_some_and(|i| self.bits[i])
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn invert(&mut self) {
        self.bits.iter_mut().for_each(|b| *b = !*b);
    }

    /// Member points in row-major order.
    pub fn members(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.region.points().zip(&self.bits).filter(|(_, &b)| b).map(|(x, _)| x)
    }
}

/// A subset of `Z^n` that can be queried pointwise and materialized over boxes.
pub trait LatticeSet: Sync {
    fn dim(&self) -> usize;

    fn contains(&self, x: &[i64]) -> bool;

    fn describe(&self) -> String;

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        check_dim(self.dim(), region)?;
        let mut mask = RegionMask::empty(region)?;
        for (b, x) in mask.bits.iter_mut().zip(region.points()) {
            *b = self.contains(&x);
        }
        Ok(mask)
    }
}

impl<S: LatticeSet + ?Sized> LatticeSet for &S {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn contains(&self, x: &[i64]) -> bool {
        (**self).contains(x)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        (**self).mask(region)
    }
}

impl<S: LatticeSet + ?Sized> LatticeSet for Box<S> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn contains(&self, x: &[i64]) -> bool {
        (**self).contains(x)
    }

    fn describe(&self) -> String {
        (**self).describe()
    }

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        (**self).mask(region)
    }
}

fn check_dim(n: usize, region: &LatticeBox) -> Result<()> {
    if region.dim() != n {
        return Err(invalid(format!(
            "region has dimension {}, set lives in Z^{n}",
            region.dim()
        )));
    }
    Ok(())
}

/// Largest `r` with `r^k <= m`.
pub(crate) fn integer_root(m: u64, k: u32) -> u64 {
    if k == 1 {
        return m;
    }
    let mut r = (m as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > m) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= m) {
        r += 1;
    }
    r
}

/// Flags for `[lo, hi]`: true where no modulus divides the integer.
fn non_multiples(lo: i64, hi: i64, moduli: &[u64]) -> Vec<bool> {
    let len = (hi as i128 - lo as i128 + 1) as usize;
    let mut flags = vec![true; len];
    for &q in moduli {
        let q = q as i128;
        let mut m = (lo as i128).div_euclid(q) * q;
        if m < lo as i128 {
            m += q;
        }
        while m <= hi as i128 {
            flags[(m - lo as i128) as usize] = false;
            m += q;
        }
    }
    flags
}

/// `p^k` for the given primes, dropping those above `limit`.
fn moduli_up_to(primes: impl IntoIterator<Item = u64>, k: u32, limit: u64) -> Vec<u64> {
    primes
        .into_iter()
        .filter_map(|p| p.checked_pow(k))
        .filter(|&q| q <= limit)
        .collect()
}

/// Mask of points that are nonzero with gcd avoiding every modulus.
fn gcd_mask(region: &LatticeBox, moduli: &[u64]) -> Result<RegionMask> {
    let mut mask = RegionMask::empty(region)?;
    if region.dim() == 1 {
        mask.bits = non_multiples(region.lo[0], region.hi[0], moduli);
        if let Some(i) = mask.index(&[0]) {
            mask.bits[i] = false;
        }
        return Ok(mask);
    }
    let max = region.max_abs();
    if max > MAX_MASK_VOLUME {
        return Err(Error::ResourceLimit(format!("gcd table up to {max} is too large")));
    }
    let mut table = non_multiples(0, max as i64, moduli);
    table[0] = false;
    for (b, x) in mask.bits.iter_mut().zip(region.points()) {
        *b = table[gcd_vector(&x) as usize];
    }
    Ok(mask)
}

/// The `k`-free lattice points `V(k, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KFreeSet {
    params: SchemeParams,
}

impl KFreeSet {
    pub fn new(params: SchemeParams) -> Self {
        Self { params }
    }
}

impl LatticeSet for KFreeSet {
    fn dim(&self) -> usize {
        self.params.n()
    }

    fn contains(&self, x: &[i64]) -> bool {
        arith::is_kfree_u64(gcd_vector(x), self.params.k())
    }

    fn describe(&self) -> String {
        format!("V(k={}, n={})", self.params.k(), self.params.n())
    }

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        check_dim(self.dim(), region)?;
        let max = region.max_abs();
        let root = integer_root(max, self.params.k()).max(2);
        let primes = arith::primes_up_to(root)?;
        gcd_mask(region, &moduli_up_to(primes.iter(), self.params.k(), max))
    }
}

/// Points whose gcd avoids `p^k` for every prime `p <= bound`: the projection
/// set of the clopen window that forgets primes above `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSet {
    params: SchemeParams,
    bound: u64,
    primes: Vec<u64>,
}

impl TruncatedSet {
    pub fn new(params: SchemeParams, bound: u64) -> Result<Self> {
        let primes = arith::primes_up_to(bound)?.primes().to_vec();
        Ok(Self { params, bound, primes })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `prod_{p <= bound} p^k`, if it fits.
    pub fn period(&self) -> Option<u64> {
        self.primes
            .iter()
            .try_fold(1u64, |acc, &p| acc.checked_mul(p.checked_pow(self.params.k())?))
    }
}

impl LatticeSet for TruncatedSet {
    fn dim(&self) -> usize {
        self.params.n()
    }

    fn contains(&self, x: &[i64]) -> bool {
        let g = gcd_vector(x);
        g != 0
            && self
                .primes
                .iter()
                .filter_map(|p| p.checked_pow(self.params.k()))
                .all(|q| !g.is_multiple_of(q))
    }

    fn describe(&self) -> String {
        format!(
            "truncated V(k={}, n={}) with primes <= {}",
            self.params.k(),
            self.params.n(),
            self.bound
        )
    }

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        check_dim(self.dim(), region)?;
        let max = region.max_abs();
        gcd_mask(region, &moduli_up_to(self.primes.iter().copied(), self.params.k(), max))
    }
}

/// `Z^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FullLattice(pub usize);

impl LatticeSet for FullLattice {
    fn dim(&self) -> usize {
        self.0
    }

    fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.0
    }

    fn describe(&self) -> String {
        format!("Z^{}", self.0)
    }
}

/// The empty subset of `Z^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptySet(pub usize);

impl LatticeSet for EmptySet {
    fn dim(&self) -> usize {
        self.0
    }

    fn contains(&self, _: &[i64]) -> bool {
        false
    }

    fn describe(&self) -> String {
        format!("empty subset of Z^{}", self.0)
    }
}

/// The lattice complement `Z^n \ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Complement<S>(pub S);

impl<S: LatticeSet> LatticeSet for Complement<S> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn contains(&self, x: &[i64]) -> bool {
        !self.0.contains(x)
    }

    fn describe(&self) -> String {
        format!("complement of {}", self.0.describe())
    }

    fn mask(&self, region: &LatticeBox) -> Result<RegionMask> {
        let mut m = self.0.mask(region)?;
        m.invert();
        Ok(m)
    }
}

/// `{x : x* in W}` evaluated through the star map.
///
/// Only primes with `p^k <= max|x_i|` can see a nonzero point as zero, so the
/// star image is truncated there (or at the window's own truncation).
#[derive(Debug, Clone)]
pub struct ProjectionSet {
    window: AdicWindow,
}

impl ProjectionSet {
    pub fn new(window: AdicWindow) -> Self {
        Self { window }
    }
}

impl LatticeSet for ProjectionSet {
    fn dim(&self) -> usize {
        self.window.params().n()
    }

    fn contains(&self, x: &[i64]) -> bool {
        let params = self.window.params();
        if x.iter().all(|&c| c == 0) && self.window.tail() == Tail::ComplementOfZero {
            return false;
        }
        let max = x.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        let truncation = integer_root(max, params.k()).max(self.window.truncation()).max(2);
        adic::star_map(x, truncation, params)
            .and_then(|s| adic::in_window(&s, &self.window))
            .unwrap_or(false)
    }

    fn describe(&self) -> String {
        format!("projection set of a window truncated at {}", self.window.truncation())
    }
}

/// Number of points of `set` in `region`, counted slab by slab.
pub fn count_in<S: LatticeSet + ?Sized>(set: &S, region: &LatticeBox) -> Result<u64> {
    region
        .slabs(SLAB_VOLUME)
        .par_iter()
        .map(|slab| set.mask(slab).map(|m| m.count()))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Points of `set` in `region`, row-major.
pub fn points_in<S: LatticeSet + ?Sized>(set: &S, region: &LatticeBox) -> Result<Vec<Vec<i64>>> {
    let chunks: Vec<Vec<Vec<i64>>> = region
        .slabs(SLAB_VOLUME)
        .par_iter()
        .map(|slab| set.mask(slab).map(|m| m.members().collect()))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// `{x in box : x != 0, gcd(x) k-free}`.
pub fn kfree_points(region: &LatticeBox, params: SchemeParams) -> Result<Vec<Vec<i64>>> {
    points_in(&KFreeSet::new(params), region)
}

/// `{x in box : p^k does not divide gcd(x) for any p <= bound}`.
pub fn truncated_points(
    region: &LatticeBox,
    params: SchemeParams,
    bound: u64,
) -> Result<Vec<Vec<i64>>> {
    points_in(&TruncatedSet::new(params, bound)?, region)
}

/// Newline-delimited comma-separated tuples after a schema line.
pub fn write_points<W: Write + ?Sized>(out: &mut W, points: &[Vec<i64>]) -> std::io::Result<()> {
    format::write_schema_line(out, format::POINTS_SCHEMA)?;
    for p in points {
        writeln!(out, "{}", format::tuple(p))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sf() -> SchemeParams {
        SchemeParams::squarefree()
    }

    fn flat(points: Vec<Vec<i64>>) -> Vec<i64> {
        points.into_iter().map(|p| p[0]).collect()
    }

    #[test]
    fn box_basics() {
        let b = LatticeBox::cube(2, 3).unwrap();
        assert_eq!(b.volume().unwrap(), 49);
        assert_eq!(b.max_abs(), 3);
        assert_eq!(b.points().count(), 49);
        assert_eq!(b.points().next().unwrap(), vec![-3, -3]);
        assert_eq!(b.points().nth(1).unwrap(), vec![-3, -2]);
        assert!(LatticeBox::new(vec![2], vec![1]).is_err());
        assert!(LatticeBox::new(vec![], vec![]).is_err());
        let slabs = b.slabs(14);
        assert_eq!(slabs.len(), 4);
        assert_eq!(slabs.iter().map(|s| s.volume().unwrap()).sum::<u64>(), 49);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(0, 2), 0);
        assert_eq!(integer_root(15, 2), 3);
        assert_eq!(integer_root(16, 2), 4);
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert_eq!(integer_root(10, 1), 10);
    }

    #[test]
    fn kfree_point_examples() {
        let b = LatticeBox::interval(1, 10).unwrap();
        assert_eq!(flat(kfree_points(&b, sf()).unwrap()), vec![1, 2, 3, 5, 6, 7, 10]);

        let b = LatticeBox::positive_cube(2, 3).unwrap();
        let pts = kfree_points(&b, SchemeParams::visible_plane()).unwrap();
        assert_eq!(pts.len(), 7);
        assert!(!pts.contains(&vec![2, 2]) && !pts.contains(&vec![3, 3]));

        let origin = LatticeBox::cube(2, 0).unwrap();
        assert!(kfree_points(&origin, SchemeParams::visible_plane()).unwrap().is_empty());
        let origin = LatticeBox::interval(0, 0).unwrap();
        assert!(kfree_points(&origin, sf()).unwrap().is_empty());
    }

    #[test]
    fn truncated_point_examples() {
        let b = LatticeBox::interval(1, 8).unwrap();
        assert_eq!(flat(truncated_points(&b, sf(), 2).unwrap()), vec![1, 2, 3, 5, 6, 7]);

        // primes with p^k <= max|x| suffice
        let b = LatticeBox::interval(-200, 200).unwrap();
        let root = integer_root(200, 2);
        assert_eq!(truncated_points(&b, sf(), root).unwrap(), kfree_points(&b, sf()).unwrap());

        // k-free residues shifted by multiples of the period are all retained
        let set = TruncatedSet::new(sf(), 3).unwrap();
        assert_eq!(set.period(), Some(36));
        for r in [1i64, 2, 5, 7, 10, 11, 13] {
            for j in -5..5 {
                assert!(set.contains(&[r + 36 * j]));
            }
        }
    }

    #[test]
    fn masks_agree_with_pointwise_membership() {
        let regions = [
            LatticeBox::interval(-300, 300).unwrap(),
            LatticeBox::interval(999_000, 1_000_100).unwrap(),
        ];
        for r in &regions {
            let set = KFreeSet::new(sf());
            let m = set.mask(r).unwrap();
            for x in r.points() {
                assert_eq!(m.get(&x), set.contains(&x), "{x:?}");
            }
        }
        let params = SchemeParams::new(3, 2).unwrap();
        let r = LatticeBox::cube(3, 6).unwrap();
        let set = KFreeSet::new(params);
        let m = set.mask(&r).unwrap();
        for x in r.points() {
            assert_eq!(m.get(&x), set.contains(&x));
        }
        let t = TruncatedSet::new(params, 3).unwrap();
        let m = t.mask(&r).unwrap();
        for x in r.points() {
            assert_eq!(m.get(&x), t.contains(&x));
        }
    }

    #[test]
    fn projection_set_matches_gcd_route() {
        for params in [sf(), SchemeParams::visible_plane(), SchemeParams::new(2, 2).unwrap()] {
            let r = if params.n() == 1 {
                LatticeBox::interval(-400, 400).unwrap()
            } else {
                LatticeBox::cube(2, 25).unwrap()
            };
            let via_star = ProjectionSet::new(AdicWindow::kfree(params, 2).unwrap());
            assert_eq!(
                points_in(&via_star, &r).unwrap(),
                kfree_points(&r, params).unwrap()
            );
            let trunc_star = ProjectionSet::new(AdicWindow::truncated_kfree(params, 5).unwrap());
            assert_eq!(
                points_in(&trunc_star, &r).unwrap(),
                truncated_points(&r, params, 5).unwrap()
            );
        }
    }

    #[test]
    fn complement_and_trivial_sets() {
        let r = LatticeBox::cube(2, 10).unwrap();
        let v = KFreeSet::new(SchemeParams::visible_plane());
        let inv = Complement(v);
        assert_eq!(count_in(&v, &r).unwrap() + count_in(&inv, &r).unwrap(), 441);
        assert!(inv.contains(&[0, 0]) && inv.contains(&[4, 6]) && !inv.contains(&[3, 4]));
        assert_eq!(count_in(&FullLattice(2), &r).unwrap(), 441);
        assert_eq!(count_in(&EmptySet(2), &r).unwrap(), 0);
        assert!(count_in(&v, &LatticeBox::interval(1, 5).unwrap()).is_err());
    }

    #[test]
    fn points_are_written_with_schema() {
        let mut buf = Vec::new();
        write_points(&mut buf, &[vec![1, 2], vec![-3, 4]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# schema: weakmodel.points/1\n1,2\n-3,4\n");
    }

    proptest! {
        #[test]
        fn kfree_matches_sieve_oracle(lo in -5_000i64..5_000, len in 1i64..2_000, k in 2u32..4) {
            let params = SchemeParams::new(1, k).unwrap();
            let r = LatticeBox::interval(lo, lo + len).unwrap();
            let got = flat(kfree_points(&r, params).unwrap());
            let oracle: Vec<i64> = (lo..=lo + len).filter(|&m| arith::is_kfree_integer(m, k)).collect();
            prop_assert_eq!(got, oracle);
        }

        #[test]
        fn truncation_is_monotone(lo in -3_000i64..3_000, len in 1i64..1_000) {
            let r = LatticeBox::interval(lo, lo + len).unwrap();
            let exact = count_in(&KFreeSet::new(sf()), &r).unwrap();
            let mut last = exact;
            for bound in [31u64, 13, 7, 5, 3, 2] {
                let c = count_in(&TruncatedSet::new(sf(), bound).unwrap(), &r).unwrap();
                prop_assert!(c >= last);
                last = c;
            }
        }
    }
}

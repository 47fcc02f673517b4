//! A regular model set with Euclidean internal space, used as a contrast.
//!
//! The lattice is `{(a + b√d, a - b√d) : a, b in Z}` in `R x R`, with covolume
//! `2√d`. Points are `a + b√d` in a direct-space range whose conjugate
//! `a - b√d` lies in a half-open window `[lo, hi)`. An interval window has a
//! boundary of measure zero, so the density is `length / (2√d)` and the
//! pattern entropy vanishes.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::format;
use crate::patterns::per_site_log2;

/// Absolute tolerance for comparisons against non-exact window endpoints.
pub const REAL_TOLERANCE: f64 = 1e-12;

/// Sign of `x - y√d` for non-square `d`, computed exactly.
fn sign_surd(x: i128, y: i128, d: u64) -> Ordering {
    let d = d as i128;
    match (x.cmp(&0), y.cmp(&0)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Greater | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Greater,
        (Ordering::Less | Ordering::Equal, Ordering::Greater | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater, Ordering::Greater) => (x * x).cmp(&(d * y * y)),
        (Ordering::Less, Ordering::Less) => (d * y * y).cmp(&(x * x)),
    }
}

/// A window endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Endpoint {
    /// `(u + v√d) / w` with `w > 0`, compared exactly.
    Surd { u: i64, v: i64, w: i64 },
    /// Compared with [`REAL_TOLERANCE`].
    Real(f64),
}

impl Endpoint {
    pub fn int(u: i64) -> Self {
        Endpoint::Surd { u, v: 0, w: 1 }
    }

    pub fn surd(u: i64, v: i64, w: i64) -> Result<Self> {
        if w <= 0 {
            return Err(invalid("endpoint denominator must be positive"));
        }
        Ok(Endpoint::Surd { u, v, w })
    }

    pub fn value(&self, d: u64) -> f64 {
        match *self {
            Endpoint::Surd { u, v, w } => (u as f64 + v as f64 * (d as f64).sqrt()) / w as f64,
            Endpoint::Real(x) => x,
        }
    }

    /// Ordering of `a - b√d` relative to this endpoint.
    fn compare_conjugate(&self, a: i64, b: i64, d: u64) -> Ordering {
        match *self {
            Endpoint::Surd { u, v, w } => {
                // w(a - b√d) - (u + v√d) = (wa - u) - (wb + v)√d
                let (w, a, b) = (w as i128, a as i128, b as i128);
                sign_surd(w * a - u as i128, w * b + v as i128, d)
            }
            Endpoint::Real(x) => {
                let y = a as f64 - b as f64 * (d as f64).sqrt();
                if (y - x).abs() <= REAL_TOLERANCE {
                    Ordering::Equal
                } else {
                    y.partial_cmp(&x).unwrap_or(Ordering::Equal)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticScheme {
    d: u64,
    lo: Endpoint,
    hi: Endpoint,
}

impl QuadraticScheme {
    pub fn new(d: u64, lo: Endpoint, hi: Endpoint) -> Result<Self> {
        let r = (d as f64).sqrt() as u64;
        if d == 0 || (r.saturating_sub(1)..=r + 1).any(|s| s * s == d) {
            return Err(invalid(format!("d must be a positive non-square, got {d}")));
        }
        let s = Self { d, lo, hi };
        if s.window_length() < 0.0 {
            return Err(invalid("window lower end exceeds upper end"));
        }
        Ok(s)
    }

    /// `d = 2` with window `[lo, hi)`.
    pub fn sqrt2(lo: Endpoint, hi: Endpoint) -> Result<Self> {
        Self::new(2, lo, hi)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn window(&self) -> (Endpoint, Endpoint) {
        (self.lo, self.hi)
    }

    pub fn window_length(&self) -> f64 {
        self.hi.value(self.d) - self.lo.value(self.d)
    }

    pub fn covolume(&self) -> f64 {
        2.0 * (self.d as f64).sqrt()
    }

    pub fn lattice_density(&self) -> f64 {
        1.0 / self.covolume()
    }

    /// `dens(L) * length(W)`.
    pub fn density(&self) -> f64 {
        self.window_length() * self.lattice_density()
    }

    /// Half-open: the lower end is in the window, the upper end is not.
    pub fn conjugate_in_window(&self, a: i64, b: i64) -> bool {
        self.lo.compare_conjugate(a, b, self.d) != Ordering::Less
            && self.hi.compare_conjugate(a, b, self.d) == Ordering::Less
    }

    /// Exact ordering of `a1 + b1√d` and `a2 + b2√d`.
    pub fn compare_values(&self, p: (i64, i64), q: (i64, i64)) -> Ordering {
        sign_surd((p.0 - q.0) as i128, (q.1 - p.1) as i128, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclidPoint {
    pub a: i64,
    pub b: i64,
    pub value: f64,
}

/// Points of the model set in `[0, T]`, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSetSegment {
    pub scheme: QuadraticScheme,
    pub t: f64,
    pub points: Vec<EuclidPoint>,
}

impl ModelSetSegment {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest distance between consecutive points.
    pub fn min_gap(&self) -> Option<f64> {
        self.points.windows(2).map(|w| w[1].value - w[0].value).reduce(f64::min)
    }

    /// CSV with columns `a,b,value`.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::EUCLID_POINTS_SCHEMA)?;
        writeln!(out, "a,b,value")?;
        for p in &self.points {
            writeln!(out, "{},{},{}", p.a, p.b, format::real(p.value))?;
        }
        Ok(())
    }
}

/// `x <= t`, exact when `t` is an integer.
fn at_most(a: i64, b: i64, t: f64, d: u64) -> bool {
    if t.fract() == 0.0 && t.abs() < 1e15 {
        // t - a - b√d >= 0
        sign_surd(t as i128 - a as i128, b as i128, d) != Ordering::Less
    } else {
        a as f64 + b as f64 * (d as f64).sqrt() <= t
    }
}

/// All points `a + b√d` in `[0, t]` whose conjugate lies in the window.
pub fn generate(scheme: &QuadraticScheme, t: f64) -> Result<ModelSetSegment> {
    if t.is_nan() || t <= 0.0 || t > 1e12 {
        return Err(invalid(format!("segment length must be in (0, 1e12], got {t}")));
    }
    let d = scheme.d;
    let root = (d as f64).sqrt();
    let (lo, hi) = (scheme.lo.value(d), scheme.hi.value(d));
    // b = (x - y) / (2√d) with x in [0, t], y in [lo, hi)
    let b_min = ((0.0 - hi) / (2.0 * root)).floor() as i64 - 1;
    let b_max = ((t - lo) / (2.0 * root)).ceil() as i64 + 1;
    let mut points: Vec<EuclidPoint> = (b_min..=b_max)
        .into_par_iter()
        .flat_map_iter(|b| {
            let shift = b as f64 * root;
            let a_min = (-shift).max(lo + shift).floor() as i64 - 1;
            let a_max = (t - shift).min(hi + shift).ceil() as i64 + 1;
            (a_min..=a_max).filter_map(move |a| {
                let nonneg = sign_surd(a as i128, -(b as i128), d) != Ordering::Less;
                (nonneg && at_most(a, b, t, d) && scheme.conjugate_in_window(a, b))
                    .then_some(EuclidPoint { a, b, value: a as f64 + shift })
            })
        })
        .collect();
    points.sort_by(|p, q| scheme.compare_values((p.a, p.b), (q.a, q.b)));
    Ok(ModelSetSegment { scheme: *scheme, t, points })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularFrequencyRow {
    pub t: f64,
    pub count: u64,
    pub frequency: f64,
    pub residual: f64,
}

/// `count / T` along a schedule, against `dens(L) * length(W)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularFrequencyTable {
    pub target: f64,
    pub rows: Vec<RegularFrequencyRow>,
}

impl RegularFrequencyTable {
    /// CSV with columns `T,count,frequency,target,residual`.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::EUCLID_DENSITY_SCHEMA)?;
        writeln!(out, "T,count,frequency,target,residual")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                format::real(r.t),
                r.count,
                format::real(r.frequency),
                format::real(self.target),
                format::real(r.residual)
            )?;
        }
        Ok(())
    }
}

pub fn regular_density_check(scheme: &QuadraticScheme, schedule: &[f64]) -> Result<RegularFrequencyTable> {
    let target = scheme.density();
    let rows = schedule
        .iter()
        .map(|&t| {
            let count = generate(scheme, t)?.len() as u64;
            let frequency = count as f64 / t;
            Ok(RegularFrequencyRow { t, count, frequency, residual: (frequency - target).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegularFrequencyTable { target, rows })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularEntropyRow {
    pub l: u64,
    pub count: u64,
    pub per_site_log2: f64,
}

/// Gap-pattern counts per window length. Both analytic bounds are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularEntropyReport {
    pub t: f64,
    pub rows: Vec<RegularEntropyRow>,
}

impl RegularEntropyReport {
    /// Largest `count / L` over the rows.
    pub fn linear_constant(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.l > 0)
            .map(|r| r.count as f64 / r.l as f64)
            .fold(0.0, f64::max)
    }

    /// Same columns as the lattice entropy report.
    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::ENTROPY_SCHEMA)?;
        writeln!(out, "L,count,per_site_log2,lower_bits,upper_bits")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.l,
                r.count,
                format::real(r.per_site_log2),
                format::real(0.0),
                format::real(0.0)
            )?;
        }
        Ok(())
    }
}

/// Distinct patches `{y - x : y in [x, x + L)}` over points `x` with
/// `x + L <= T`, in exact `(Δa, Δb)` coordinates.
pub fn gap_pattern_count(segment: &ModelSetSegment, l: u64) -> u64 {
    let d = segment.scheme.d;
    let pts = &segment.points;
    let patches: HashSet<Vec<(i64, i64)>> = (0..pts.len())
        .into_par_iter()
        .filter(|&i| at_most(pts[i].a + l as i64, pts[i].b, segment.t, d))
        .map(|i| {
            let x = pts[i];
            pts[i..]
                .iter()
                .map(|y| (y.a - x.a, y.b - x.b))
                // (Δa - L) + Δb√d < 0
                .take_while(|&(da, db)| sign_surd(da as i128 - l as i128, -(db as i128), d) == Ordering::Less)
                .collect()
        })
        .collect();
    patches.len() as u64
}

pub fn regular_entropy_check(scheme: &QuadraticScheme, lengths: &[u64], t: f64) -> Result<RegularEntropyReport> {
    let segment = generate(scheme, t)?;
    let rows = lengths
        .iter()
        .map(|&l| {
            let count = gap_pattern_count(&segment, l);
            RegularEntropyRow { l, count, per_site_log2: per_site_log2(count, l) }
        })
        .collect();
    Ok(RegularEntropyReport { t, rows })
}

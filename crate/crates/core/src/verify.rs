//! The invariant suite behind `weakmodel verify`.
//!
//! Every check records the integer counts it computed, so runs under
//! different worker pools can be compared value for value.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::adic::{self, finite, AdicWindow, SchemeParams};
use crate::arith;
use crate::error::{Error, Result};
use crate::euclid::{self, Endpoint, QuadraticScheme};
use crate::format;
use crate::patterns::{self, AdmissibilityOracle, CensusMode, Shape};
use crate::sieve::{self, Family, KFreeSet, LatticeBox};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub counts: Vec<(String, u64)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub threads: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Every count, in check order; independent of the worker pool.
    pub fn counts(&self) -> Vec<(String, u64)> {
        self.checks
            .iter()
            .flat_map(|c| c.counts.iter().map(move |(k, v)| (format!("{}.{k}", c.name), *v)))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = format::VERIFY_SCHEMA.into();
        v["passed"] = self.all_passed().into();
        v
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn write_text<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        format::write_schema_line(out, format::VERIFY_SCHEMA)?;
        for c in &self.checks {
            let counts: Vec<String> = c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                out,
                "{} {} [{}] {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                counts.join(" "),
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Problem sizes for the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub squarefree_max: u64,
    pub visible_radius: u64,
    pub census_max: u64,
    /// Shapes up to this length must reach the exact oracle count.
    pub census_exact_up_to: usize,
    pub complement_radius: u64,
    pub euclid_t: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            squarefree_max: 1_000_000,
            visible_radius: 1000,
            census_max: 10_000_000,
            census_exact_up_to: 8,
            complement_radius: 500,
            euclid_t: 10_000,
        }
    }
}

impl VerifyConfig {
    /// Smaller sizes for smoke runs.
    pub fn quick() -> Self {
        Self {
            squarefree_max: 100_000,
            visible_radius: 200,
            census_max: 100_000,
            census_exact_up_to: 6,
            complement_radius: 100,
            euclid_t: 2_000,
        }
    }
}

struct Check {
    name: &'static str,
    passed: bool,
    counts: Vec<(String, u64)>,
    notes: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, passed: true, counts: Vec::new(), notes: Vec::new() }
    }

    fn count(&mut self, key: &str, v: u64) {
        self.counts.push((key.to_string(), v));
    }

    fn require(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(note.into());
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.passed,
            counts: self.counts,
            detail: if self.notes.is_empty() { "ok".into() } else { self.notes.join("; ") },
        }
    }
}

/// Run the suite on the current rayon pool.
pub fn run_suite(config: &VerifyConfig) -> Result<VerifyReport> {
    let checks = vec![
        kfree_density(config)?,
        truncated_exactness()?,
        van_hove_boundary()?,
        oracle_and_census(config)?,
        hole_certificates()?,
        complement_invariance(config)?,
        regular_contrast(config)?,
    ];
    Ok(VerifyReport { threads: rayon::current_num_threads(), checks })
}

/// Run the suite on a dedicated pool of `threads` workers.
pub fn run_suite_with_threads(config: &VerifyConfig, threads: usize) -> Result<VerifyReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::ResourceLimit(format!("cannot start {threads} workers: {e}")))?;
    pool.install(|| run_suite(config))
}

fn kfree_density(config: &VerifyConfig) -> Result<CheckResult> {
    let mut c = Check::new("kfree_density");
    let inverse = 1.0 / arith::zeta(2, 1e-9)?.value;

    let sf = [LatticeBox::interval(1, config.squarefree_max as i64)?];
    let t = sieve::density_scan(Family::KFree, SchemeParams::squarefree(), &sf, 1e-9)?;
    c.count("squarefree", t.last().count);
    let dev = (t.last().frequency - inverse).abs();
    c.require(dev < 2e-3, format!("squarefree frequency off by {dev:.3e}"));

    let r = config.visible_radius;
    let vis = [LatticeBox::cube(2, r)?];
    let t = sieve::density_scan(Family::KFree, SchemeParams::visible_plane(), &vis, 1e-9)?;
    let count = t.last().count;
    c.count("visible", count);
    // the origin is never visible, so exclude it from the volume
    let freq = count as f64 / (t.last().volume - 1) as f64;
    let dev = (freq - inverse).abs();
    c.require(dev < 5e-3, format!("visible frequency off by {dev:.3e}"));
    Ok(c.finish())
}

fn truncated_exactness() -> Result<CheckResult> {
    let mut c = Check::new("truncated_exact");
    let params = SchemeParams::squarefree();
    let boxes: Vec<_> = (1..=10).map(|j| LatticeBox::interval(1, 36 * j)).collect::<Result<_>>()?;
    let t = sieve::density_scan(Family::Truncated(3), params, &boxes, 1e-9)?;
    for r in &t.rows {
        c.require(r.exact_frequency() == Ratio::new(2, 3), format!("box side {} not 2/3", r.volume));
    }
    c.count("last_count", t.last().count);
    let exact = AdicWindow::truncated_kfree(params, 3)?.haar_exact();
    c.require(
        exact == Some(num_rational::BigRational::new(BigInt::from(2), BigInt::from(3))),
        "window measure is not 2/3",
    );
    Ok(c.finish())
}

fn van_hove_boundary() -> Result<CheckResult> {
    let mut c = Check::new("van_hove_boundary");
    let params = SchemeParams::squarefree();
    let w = AdicWindow::kfree(params, 2)?;
    let inverse = adic::haar_measure(&w, 1e-12)?;
    let mut previous = f64::INFINITY;
    for p_u in [2u64, 3, 5, 10, 100, 1000] {
        let m = adic::van_hove_boundary_measure(&w, p_u, 1e-12)?;
        let (_, tail_hi) = arith::prime_tail_sum(2, p_u)?;
        c.require(m.value <= previous, format!("not monotone at {p_u}"));
        c.require(m.upper >= inverse.lower, format!("below 1/zeta(2) at {p_u}"));
        c.require(
            m.value - inverse.value <= 2.0 * tail_hi,
            format!("gap at {p_u} exceeds twice the prime tail"),
        );
        previous = m.value;
    }
    for (n, k, p_u) in [(1usize, 2u32, 2u64), (1, 2, 3), (1, 2, 5), (2, 1, 2), (2, 1, 3)] {
        let params = SchemeParams::new(n, k)?;
        let brute = finite::boundary_by_definition(params, p_u)?;
        let closed = adic::van_hove_boundary_exact(params, p_u)?;
        let brute_big = num_rational::BigRational::new(
            BigInt::from(*brute.numer()),
            BigInt::from(*brute.denom()),
        );
        c.require(brute_big == closed, format!("n={n} k={k} P_U={p_u}: {brute} vs {closed}"));
        c.count(&format!("boundary_n{n}_k{k}_p{p_u}_denom"), *brute.denom());
    }
    Ok(c.finish())
}

fn oracle_and_census(config: &VerifyConfig) -> Result<CheckResult> {
    let mut c = Check::new("oracle_census");
    let params = SchemeParams::squarefree();
    let region = LatticeBox::interval(1, config.census_max as i64)?;
    let set = KFreeSet::new(params);
    let mut counts = vec![1u64];
    for l in 1..=16usize {
        let shape = Shape::interval(l)?;
        let exact = patterns::admissible_count(&shape, params)?;
        counts.push(exact.count);
        c.count(&format!("oracle_L{l}"), exact.count);
        if l <= 8 {
            let census = patterns::census(&set, &region, &shape, CensusMode::Coloured)?;
            c.count(&format!("census_L{l}"), census.count());
            let oracle = AdmissibilityOracle::new(&shape, params)?;
            let outside = census.pattern_set().into_iter().filter(|&p| !oracle.is_admissible(p)).count();
            c.require(outside == 0, format!("L={l}: {outside} scanned patterns are not admissible"));
            if l <= config.census_exact_up_to {
                c.require(
                    census.count() == exact.count,
                    format!("L={l}: census {} vs oracle {}", census.count(), exact.count),
                );
            }
            let bad = patterns::subset_closure_check(&census, &oracle);
            c.require(bad.is_empty(), format!("L={l}: {} subset-closure violations", bad.len()));
        }
    }
    c.require(counts[4] == 15, "L=4 oracle count is not 15");
    for a in 1..=12 {
        for b in 1..=12 {
            if a + b <= 16 && counts[a + b] > counts[a] * counts[b] {
                c.require(false, format!("N({}) > N({a})N({b})", a + b));
            }
        }
    }
    Ok(c.finish())
}

fn hole_certificates() -> Result<CheckResult> {
    let mut c = Check::new("hole_certificates");
    let sf = SchemeParams::squarefree();
    let cert = sieve::crt_hole(sf, 3)?;
    let t = cert.t_as_i64().map(|t| t[0]);
    c.require(t.map(|t| t.rem_euclid(900)) == Some(548), format!("CRT m=3 gave {t:?}"));
    for m in 1..=20 {
        let cert = sieve::crt_hole(sf, m)?;
        c.require(cert.verify().is_ok(), format!("n=1 m={m} certificate fails"));
    }
    for m in 1..=3 {
        let cert = sieve::crt_hole(SchemeParams::visible_plane(), m)?;
        c.require(cert.verify().is_ok(), format!("n=2 m={m} certificate fails"));
    }
    let scan = sieve::scan_hole(sf, 3, 10_000)?;
    c.require(scan == Some(vec![48]), format!("scan m=3 gave {scan:?}"));
    if let Some(t) = scan {
        c.count("scan_m3", t[0] as u64);
    }
    Ok(c.finish())
}

fn complement_invariance(config: &VerifyConfig) -> Result<CheckResult> {
    let mut c = Check::new("complement_invariance");
    let region = LatticeBox::cube(2, config.complement_radius)?;
    let shape = Shape::centered_cube(2, 1)?;
    let r = patterns::complement_census(&KFreeSet::new(SchemeParams::visible_plane()), &region, &shape)?;
    c.count("visible", r.primary.count());
    c.count("invisible", r.complement.count());
    c.require(r.counts_equal, "counts differ");
    c.require(r.flip_is_bijection, "colour inversion is not a bijection");
    Ok(c.finish())
}

fn regular_contrast(config: &VerifyConfig) -> Result<CheckResult> {
    let mut c = Check::new("regular_contrast");
    let scheme = QuadraticScheme::sqrt2(Endpoint::int(0), Endpoint::int(1))?;
    let table = euclid::regular_density_check(&scheme, &[config.euclid_t as f64])?;
    let row = table.rows[0];
    c.count("points", row.count);
    c.require(row.residual < 1e-2, format!("density residual {:.3e}", row.residual));
    let report = euclid::regular_entropy_check(&scheme, &[200], (config.euclid_t as f64).max(2_000.0))?;
    let e = report.rows[0];
    c.count("patches_L200", e.count);
    c.require(e.per_site_log2 < 0.05, format!("per-site value {:.4} at L=200", e.per_site_log2));
    let sf = patterns::admissible_count(&Shape::interval(20)?, SchemeParams::squarefree())?;
    let per_site = patterns::per_site_log2(sf.count, 20);
    c.count("squarefree_L20", sf.count);
    c.require(per_site >= 0.6, format!("squarefree per-site {per_site:.4} at L=20"));
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_and_is_pool_independent() {
        let one = run_suite_with_threads(&VerifyConfig::quick(), 1).unwrap();
        let many = run_suite_with_threads(&VerifyConfig::quick(), 4).unwrap();
        assert!(one.all_passed(), "{:?}", one.checks);
        assert_eq!(one.counts(), many.counts());
        assert_eq!((one.threads, many.threads), (1, 4));
        let v = one.to_json();
        assert_eq!(v["schema"], format::VERIFY_SCHEMA);
        assert_eq!(v["passed"], true);
    }
}

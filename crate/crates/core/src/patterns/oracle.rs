//! Exact pattern counts for the `k`-free lattice points.
//!
//! A colouring of a shape `A` is taken to be realized in `V(k, n)` iff, for
//! every prime `p`, the 1-positions miss at least one residue class of
//! `(Z/p^k Z)^n` (offsets reduced componentwise). Covering all `p^{nk}` classes
//! needs at least that many ones, so only primes with `p^{nk} <= |A|` matter.
//! This criterion is checked against scans rather than assumed.

use std::collections::HashMap;

use rayon::prelude::*;

use super::census::PatternCensus;
use super::shape::{Pattern, Shape};
use crate::adic::SchemeParams;
use crate::arith;
use crate::error::{Error, Result};

/// Default upper bound on the shape size for exhaustive enumeration.
pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Debug, Clone)]
pub struct AdmissibilityOracle {
    size: usize,
    /// Per relevant prime, one bit mask of offsets per residue class.
    classes: Vec<(u64, Vec<u128>)>,
}

impl AdmissibilityOracle {
    pub fn new(shape: &Shape, params: SchemeParams) -> Result<Self> {
        if shape.dim() != params.n() {
            return Err(crate::error::invalid("shape dimension differs from n"));
        }
        let size = shape.len();
        let mut classes = Vec::new();
        if size >= 2 {
            for p in arith::primes_up_to(size as u64)?.iter() {
                let order = match p.checked_pow(params.nk()) {
                    Some(o) if o <= size as u64 => o,
                    _ => break,
                };
                let q = params.modulus(p)? as i64;
                let mut masks: HashMap<Vec<i64>, u128> = HashMap::new();
                for (i, o) in shape.offsets().iter().enumerate() {
                    let r: Vec<i64> = o.iter().map(|c| c.rem_euclid(q)).collect();
                    *masks.entry(r).or_default() |= 1u128 << i;
                }
                // a class no offset reaches can never be covered
                if masks.len() as u64 == order {
                    let mut m: Vec<u128> = masks.into_values().collect();
                    m.sort_unstable();
                    classes.push((p, m));
                }
            }
        }
        Ok(Self { size, classes })
    }

    /// Primes that actually constrain colourings of this shape.
    pub fn relevant_primes(&self) -> Vec<u64> {
        self.classes.iter().map(|(p, _)| *p).collect()
    }

    pub fn shape_size(&self) -> usize {
        self.size
    }

    pub fn is_admissible(&self, p: Pattern) -> bool {
        self.classes
            .iter()
            .all(|(_, masks)| masks.iter().any(|&m| m & p.0 == 0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCount {
    pub count: u64,
    /// Largest number of ones in an admissible colouring.
    pub max_ones: u32,
}

pub fn admissible_count(shape: &Shape, params: SchemeParams) -> Result<OracleCount> {
    admissible_count_capped(shape, params, DEFAULT_ORACLE_CAP)
}

/// Exhaustive count over all `2^|A|` colourings.
pub fn admissible_count_capped(
    shape: &Shape,
    params: SchemeParams,
    cap: usize,
) -> Result<OracleCount> {
    let oracle = checked_oracle(shape, params, cap)?;
    let (count, max_ones) = chunk_ranges(shape.len())
        .into_par_iter()
        .map(|(start, end)| {
            let mut count = 0u64;
            let mut max_ones = 0u32;
            for c in start..end {
                if oracle.is_admissible(Pattern(c)) {
                    count += 1;
                    max_ones = max_ones.max(c.count_ones());
                }
            }
            (count, max_ones)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)));
    Ok(OracleCount { count, max_ones })
}

/// All admissible colourings in increasing bit order.
pub fn admissible_patterns(shape: &Shape, params: SchemeParams, cap: usize) -> Result<Vec<Pattern>> {
    let oracle = checked_oracle(shape, params, cap)?;
    let parts: Vec<Vec<Pattern>> = chunk_ranges(shape.len())
        .into_par_iter()
        .map(|(start, end)| {
            (start..end)
                .map(Pattern)
                .filter(|&p| oracle.is_admissible(p))
                .collect()
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

fn checked_oracle(shape: &Shape, params: SchemeParams, cap: usize) -> Result<AdmissibilityOracle> {
    if shape.len() > cap || shape.len() > 63 {
        return Err(Error::ResourceLimit(format!(
            "shape of size {} exceeds the oracle cap {}",
            shape.len(),
            cap.min(63)
        )));
    }
    AdmissibilityOracle::new(shape, params)
}

fn chunk_ranges(size: usize) -> Vec<(u128, u128)> {
    let total = 1u128 << size;
    let chunk = (total >> 8).max(1 << 12);
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        out.push((start, end));
        start = end;
    }
    out
}

/// A pattern with an inadmissible sub-pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureViolation {
    pub pattern: Pattern,
    pub sub_pattern: Pattern,
}

/// Every sub-pattern (bitwise `<=`) of every given pattern must be admissible.
pub fn subset_closure_check_patterns(
    patterns: impl IntoIterator<Item = Pattern>,
    oracle: &AdmissibilityOracle,
) -> Vec<ClosureViolation> {
    // memo: pattern -> first inadmissible sub-pattern, if any
    let mut memo: HashMap<u128, Option<u128>> = HashMap::new();
    let mut out = Vec::new();
    for p in patterns {
        if let Some(bad) = first_bad_subpattern(p.0, oracle, &mut memo) {
            out.push(ClosureViolation { pattern: p, sub_pattern: Pattern(bad) });
        }
    }
    out
}

pub fn subset_closure_check(
    census: &PatternCensus,
    oracle: &AdmissibilityOracle,
) -> Vec<ClosureViolation> {
    subset_closure_check_patterns(census.pattern_set(), oracle)
}

fn first_bad_subpattern(
    p: u128,
    oracle: &AdmissibilityOracle,
    memo: &mut HashMap<u128, Option<u128>>,
) -> Option<u128> {
    if let Some(&known) = memo.get(&p) {
        return known;
    }
    let result = if !oracle.is_admissible(Pattern(p)) {
        Some(p)
    } else {
        let mut bits = p;
        let mut found = None;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            bits ^= low;
            if let Some(bad) = first_bad_subpattern(p ^ low, oracle, memo) {
                found = Some(bad);
                break;
            }
        }
        found
    };
    memo.insert(p, result);
    result
}

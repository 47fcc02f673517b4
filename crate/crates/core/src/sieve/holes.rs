//! Holes of `V(k, n)` by the Chinese remainder theorem.
//!
//! Each offset `x` of the cube `{0..m-1}^n` gets its own prime `p_x`, and the
//! translation solves `t_j = -x_j (mod p_x^k)` in every coordinate. Then every
//! coordinate of `t + x` is divisible by `p_x^k`, so the translated cube misses
//! `V(k, n)`, and so does every translate by a multiple of `prod_x p_x^k`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{KFreeSet, LatticeBox, LatticeSet};
use crate::adic::SchemeParams;
use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::format;

/// Cube offsets beyond this count are refused.
pub const MAX_HOLE_OFFSETS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub offset: Vec<i64>,
    pub prime: u64,
    pub prime_power: BigUint,
}

/// A translation `t` with `(t + {0..m-1}^n) ∩ V(k, n) = ∅`, with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleCertificate {
    pub params: SchemeParams,
    pub side: u64,
    pub t: Vec<BigInt>,
    pub assignments: Vec<Assignment>,
    pub modulus: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoleViolation {
    Shape(String),
    RepeatedPrime(u64),
    WrongPrimePower { prime: u64 },
    WrongModulus,
    NotDivisible { offset: Vec<i64>, coordinate: usize, prime: u64 },
}

impl fmt::Display for HoleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoleViolation::Shape(s) => write!(f, "malformed certificate: {s}"),
            HoleViolation::RepeatedPrime(p) => write!(f, "prime {p} assigned twice"),
            HoleViolation::WrongPrimePower { prime } => {
                write!(f, "prime power for {prime} is not {prime}^k")
            }
            HoleViolation::WrongModulus => write!(f, "modulus is not the product of prime powers"),
            HoleViolation::NotDivisible { offset, coordinate, prime } => write!(
                f,
                "coordinate {coordinate} of t + {offset:?} is not divisible by {prime}^k"
            ),
        }
    }
}

impl HoleCertificate {
    /// Exact re-check of every divisibility claim.
    pub fn verify(&self) -> std::result::Result<(), HoleViolation> {
        self.verify_translation(&self.t)
    }

    /// Re-check with another translation, e.g. `t + c * modulus * e_j`.
    pub fn verify_translation(&self, t: &[BigInt]) -> std::result::Result<(), HoleViolation> {
        let n = self.params.n();
        if t.len() != n {
            return Err(HoleViolation::Shape(format!("t has {} coordinates", t.len())));
        }
        let expected = (self.side as u128).checked_pow(n as u32);
        if expected != Some(self.assignments.len() as u128) {
            return Err(HoleViolation::Shape("offset count is not side^n".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut product = BigUint::one();
        for a in &self.assignments {
            if !seen.insert(a.prime) {
                return Err(HoleViolation::RepeatedPrime(a.prime));
            }
            if a.prime_power != BigUint::from(a.prime).pow(self.params.k()) {
                return Err(HoleViolation::WrongPrimePower { prime: a.prime });
            }
            if a.offset.len() != n || a.offset.iter().any(|&c| c < 0 || c as u64 >= self.side) {
                return Err(HoleViolation::Shape(format!("offset {:?} outside the cube", a.offset)));
            }
            product *= &a.prime_power;
            let q = BigInt::from(a.prime_power.clone());
            for (j, (tj, &xj)) in t.iter().zip(&a.offset).enumerate() {
                if !(tj + BigInt::from(xj)).is_multiple_of(&q) {
                    return Err(HoleViolation::NotDivisible {
                        offset: a.offset.clone(),
                        coordinate: j,
                        prime: a.prime,
                    });
                }
            }
        }
        if product != self.modulus {
            return Err(HoleViolation::WrongModulus);
        }
        Ok(())
    }

    /// `t + multiple * modulus * e_axis`.
    pub fn shifted_translation(&self, axis: usize, multiple: i64) -> Vec<BigInt> {
        let mut t = self.t.clone();
        t[axis] += BigInt::from(multiple) * BigInt::from(self.modulus.clone());
        t
    }

    /// The translation when it fits in machine integers.
    pub fn t_as_i64(&self) -> Option<Vec<i64>> {
        self.t.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HoleJson::from(self)).expect("certificate serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: HoleJson = serde_json::from_value(value.clone())?;
        if raw.schema != format::HOLE_SCHEMA {
            return Err(invalid(format!("unexpected schema {}", raw.schema)));
        }
        let big = |s: &str| {
            s.parse::<BigInt>().map_err(|e| invalid(format!("bad integer {s}: {e}")))
        };
        let ubig = |s: &str| {
            s.parse::<BigUint>().map_err(|e| invalid(format!("bad integer {s}: {e}")))
        };
        Ok(Self {
            params: SchemeParams::new(raw.n, raw.k)?,
            side: raw.side,
            t: raw.t.iter().map(|s| big(s)).collect::<Result<_>>()?,
            assignments: raw
                .assignments
                .iter()
                .map(|a| {
                    Ok(Assignment {
                        offset: a.offset.clone(),
                        prime: a.prime,
                        prime_power: ubig(&a.prime_power)?,
                    })
                })
                .collect::<Result<_>>()?,
            modulus: ubig(&raw.modulus)?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct HoleJson {
    schema: String,
    n: usize,
    k: u32,
    side: u64,
    modulus: String,
    t: Vec<String>,
    assignments: Vec<AssignmentJson>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentJson {
    offset: Vec<i64>,
    prime: u64,
    prime_power: String,
}

impl From<&HoleCertificate> for HoleJson {
    fn from(c: &HoleCertificate) -> Self {
        Self {
            schema: format::HOLE_SCHEMA.into(),
            n: c.params.n(),
            k: c.params.k(),
            side: c.side,
            modulus: c.modulus.to_string(),
            t: c.t.iter().map(BigInt::to_string).collect(),
            assignments: c
                .assignments
                .iter()
                .map(|a| AssignmentJson {
                    offset: a.offset.clone(),
                    prime: a.prime,
                    prime_power: a.prime_power.to_string(),
                })
                .collect(),
        }
    }
}

/// Solve `x = r_i (mod m_i)` for pairwise coprime moduli; returns `(x, M)` with
/// `0 <= x < M = prod m_i`.
fn crt(congruences: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, q) in congruences {
        // x + m*s = r (mod q)
        let inv = m.extended_gcd(q).x.mod_floor(q);
        let s = ((r - &x) * inv).mod_floor(q);
        x += &m * s;
        m *= q;
    }
    (x.mod_floor(&m), m)
}

/// Build a certified hole for the cube of side `side`.
///
/// Offsets are taken in row-major order and receive the smallest primes in
/// increasing order.
pub fn crt_hole(params: SchemeParams, side: u64) -> Result<HoleCertificate> {
    if side == 0 {
        return Err(invalid("hole side must be >= 1"));
    }
    let n = params.n();
    let count = side
        .checked_pow(n as u32)
        .filter(|&c| c <= MAX_HOLE_OFFSETS)
        .ok_or_else(|| Error::ResourceLimit(format!("{side}^{n} offsets is too many")))?;
    let cube = LatticeBox::new(vec![0; n], vec![side as i64 - 1; n])?;
    let primes = arith::first_primes(count as usize);
    let assignments: Vec<Assignment> = cube
        .points()
        .zip(&primes)
        .map(|(offset, &p)| Assignment {
            offset,
            prime: p,
            prime_power: BigUint::from(p).pow(params.k()),
        })
        .collect();
    let mut t = Vec::with_capacity(n);
    let mut modulus = BigInt::one();
    for j in 0..n {
        let congruences: Vec<(BigInt, BigInt)> = assignments
            .iter()
            .map(|a| {
                let q = BigInt::from(a.prime_power.clone());
                (BigInt::from(-a.offset[j]).mod_floor(&q), q)
            })
            .collect();
        let (x, m) = crt(&congruences);
        t.push(x);
        modulus = m;
    }
    let cert = HoleCertificate {
        params,
        side,
        t,
        assignments,
        modulus: modulus.to_biguint().expect("positive modulus"),
    };
    cert.verify()
        .map_err(|v| Error::InvalidArgument(format!("internal CRT failure: {v}")))?;
    Ok(cert)
}

/// Smallest `t` in `[1, limit]^n` (lexicographic) whose translated cube of side
/// `side` contains no `k`-free point.
pub fn scan_hole(params: SchemeParams, side: u64, limit: u64) -> Result<Option<Vec<i64>>> {
    if limit == 0 {
        return Err(invalid("scan limit must be >= 1"));
    }
    if side == 0 {
        return Err(invalid("hole side must be >= 1"));
    }
    let n = params.n();
    let top = limit
        .checked_add(side - 1)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| invalid("scan range overflows"))?;
    let region = LatticeBox::new(vec![1; n], vec![top; n])?;
    let mask = KFreeSet::new(params).mask(&region)?;
    let bits = mask.bits();

    if n == 1 {
        let mut run = 0u64;
        for (i, &member) in bits.iter().enumerate() {
            run = if member { 0 } else { run + 1 };
            if run >= side {
                let t = i as u64 + 2 - side;
                return Ok((t <= limit).then_some(vec![t as i64]));
            }
        }
        return Ok(None);
    }

    let cube = LatticeBox::new(vec![0; n], vec![side as i64 - 1; n])?;
    let deltas: Vec<usize> = cube
        .points()
        .map(|x| x.iter().zip(mask.strides()).map(|(&c, &s)| c as usize * s).sum())
        .collect();
    let starts = LatticeBox::new(vec![1; n], vec![limit as i64; n])?;
    for t in starts.points() {
        let base = mask.index(&t).expect("start inside region");
        if deltas.iter().all(|&d| !bits[base + d]) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_offset() {
        let c = crt_hole(SchemeParams::squarefree(), 1).unwrap();
        assert_eq!(c.assignments[0].prime, 2);
        assert!(c.t[0].is_multiple_of(&BigInt::from(4)));
        assert_eq!(c.modulus, BigUint::from(4u32));
    }

    #[test]
    fn three_consecutive_non_squarefree() {
        let c = crt_hole(SchemeParams::squarefree(), 3).unwrap();
        let primes: Vec<_> = c.assignments.iter().map(|a| a.prime).collect();
        assert_eq!(primes, vec![2, 3, 5]);
        assert_eq!(c.modulus, BigUint::from(900u32));
        assert_eq!(c.t, vec![BigInt::from(548)]);
        // 548 = 4*137, 549 = 9*61, 550 = 25*22
        for (v, q) in [(548, 4), (549, 9), (550, 25)] {
            assert_eq!(v % q, 0);
            assert!(!arith::is_kfree_integer(v, 2));
        }
    }

    #[test]
    fn planar_hole() {
        let params = SchemeParams::visible_plane();
        let c = crt_hole(params, 2).unwrap();
        assert_eq!(c.assignments.len(), 4);
        let t = c.t_as_i64().unwrap();
        for a in &c.assignments {
            let x: Vec<i64> = t.iter().zip(&a.offset).map(|(u, v)| u + v).collect();
            assert!(x.iter().all(|c| c % a.prime as i64 == 0));
            assert!(!KFreeSet::new(params).contains(&x));
        }
    }

    #[test]
    fn tampering_is_detected() {
        let mut c = crt_hole(SchemeParams::squarefree(), 3).unwrap();
        assert!(c.verify_translation(&c.shifted_translation(0, -7)).is_ok());
        c.t[0] += 1;
        assert!(matches!(c.verify(), Err(HoleViolation::NotDivisible { .. })));
        let mut c = crt_hole(SchemeParams::squarefree(), 3).unwrap();
        c.assignments[1].prime = 2;
        assert!(c.verify().is_err());
        let mut c = crt_hole(SchemeParams::squarefree(), 3).unwrap();
        c.modulus += 1u32;
        assert_eq!(c.verify(), Err(HoleViolation::WrongModulus));
    }

    #[test]
    fn json_round_trip() {
        let c = crt_hole(SchemeParams::new(2, 2).unwrap(), 2).unwrap();
        let v = c.to_json();
        assert_eq!(v["schema"], format::HOLE_SCHEMA);
        assert!(v["modulus"].is_string());
        assert_eq!(HoleCertificate::from_json(&v).unwrap(), c);
    }

    #[test]
    fn exhaustive_scans() {
        let sf = SchemeParams::squarefree();
        assert_eq!(scan_hole(sf, 3, 10_000).unwrap(), Some(vec![48]));
        assert_eq!(scan_hole(sf, 1, 100).unwrap(), Some(vec![4]));
        assert_eq!(scan_hole(sf, 2, 100).unwrap(), Some(vec![8]));
        assert_eq!(scan_hole(sf, 3, 47).unwrap(), None);
        assert_eq!(scan_hole(sf, 4, 1_000).unwrap(), Some(vec![242]));
        assert!(scan_hole(sf, 3, 0).is_err());
    }

    #[test]
    fn planar_scan_agrees_with_pointwise_check() {
        let params = SchemeParams::visible_plane();
        let t = scan_hole(params, 2, 200).unwrap().unwrap();
        let set = KFreeSet::new(params);
        let hole = |t: &[i64]| {
            (0..2).all(|a| (0..2).all(|b| !set.contains(&[t[0] + a, t[1] + b])))
        };
        assert!(hole(&t));
        // nothing lexicographically smaller
        for u in LatticeBox::new(vec![1, 1], vec![200, 200]).unwrap().points() {
            if u == t {
                break;
            }
            assert!(!hole(&u), "{u:?}");
        }
    }
}

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::sieve::LatticeBox;

/// Patterns are `u128` bit vectors, so shapes are capped here.
pub const MAX_SHAPE_SIZE: usize = 128;

/// A finite set of offsets in `Z^n` containing the origin, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    dim: usize,
    offsets: Vec<Vec<i64>>,
}

impl Shape {
    pub fn new(offsets: Vec<Vec<i64>>) -> Result<Self> {
        let dim = offsets.first().map(Vec::len).ok_or_else(|| invalid("shape is empty"))?;
        if dim == 0 || offsets.iter().any(|o| o.len() != dim) {
            return Err(invalid("shape offsets must share a positive dimension"));
        }
        if offsets.len() > MAX_SHAPE_SIZE {
            return Err(Error::ResourceLimit(format!(
                "shape has {} offsets, at most {MAX_SHAPE_SIZE} are supported",
                offsets.len()
            )));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = offsets.iter().find(|o| !seen.insert(*o)) {
            return Err(invalid(format!("offset {dup:?} repeated")));
        }
        if !offsets.iter().any(|o| o.iter().all(|&c| c == 0)) {
            return Err(invalid("shape must contain the origin"));
        }
        Ok(Self { dim, offsets })
    }

    /// `{0, 1, ..., len-1}`.
    pub fn interval(len: usize) -> Result<Self> {
        Self::new((0..len as i64).map(|i| vec![i]).collect())
    }

    /// `{0, ..., side-1}^n` in row-major order.
    pub fn cube(n: usize, side: u64) -> Result<Self> {
        if side == 0 || n == 0 {
            return Err(invalid("cube shape needs n >= 1 and side >= 1"));
        }
        let size = side.checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > MAX_SHAPE_SIZE as u64 {
            return Err(Error::ResourceLimit(format!("{side}^{n} offsets exceed {MAX_SHAPE_SIZE}")));
        }
        let b = LatticeBox::new(vec![0; n], vec![side as i64 - 1; n])?;
        Self::new(b.points().collect())
    }

    /// `[-r, r]^n` in row-major order.
    pub fn centered_cube(n: usize, r: u64) -> Result<Self> {
        let size = (2 * r + 1).checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > MAX_SHAPE_SIZE as u64 {
            return Err(Error::ResourceLimit(format!("{size} offsets exceed {MAX_SHAPE_SIZE}")));
        }
        Self::new(LatticeBox::cube(n, r)?.points().collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn origin_index(&self) -> usize {
        self.offsets
            .iter()
            .position(|o| o.iter().all(|&c| c == 0))
            .expect("shape contains the origin")
    }

    /// Per-axis minimum and maximum offset.
    pub fn extents(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for o in &self.offsets {
            for i in 0..self.dim {
                lo[i] = lo[i].min(o[i]);
                hi[i] = hi[i].max(o[i]);
            }
        }
        (lo, hi)
    }

    /// All-ones pattern.
    pub fn full_bits(&self) -> u128 {
        if self.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.len()) - 1
        }
    }
}

/// A 01-colouring of a shape: bit `i` is membership of offset `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(pub u128);

impl Pattern {
    pub fn ones(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_subpattern_of(self, other: Pattern) -> bool {
        self.0 & !other.0 == 0
    }

    /// Fixed-width hex, `ceil(len/4)` digits, most significant first.
    pub fn to_hex(self, len: usize) -> String {
        let width = len.div_ceil(4).max(1);
        format!("{:0width$x}", self.0, width = width)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        u128::from_str_radix(s, 16)
            .map(Pattern)
            .map_err(|e| invalid(format!("bad pattern {s}: {e}")))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

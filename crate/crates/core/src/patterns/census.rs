use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde_json::json;

use super::shape::{Pattern, Shape};
use crate::error::{invalid, Result};
use crate::format;
use crate::sieve::{Complement, LatticeBox, LatticeSet, SLAB_VOLUME};

/// Centred patterns read `x^-1 D ∩ A` only for `x in D`; coloured patterns read
/// the indicator of `D` on `x + A` for every lattice point `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CensusMode {
    Centered,
    Coloured,
}

impl CensusMode {
    pub fn name(&self) -> &'static str {
        match self {
            CensusMode::Centered => "centered",
            CensusMode::Coloured => "coloured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    /// Lexicographically smallest translation showing the pattern.
    pub first: Vec<i64>,
    pub multiplicity: u64,
}

/// The distinct patterns seen over a finite range of translations.
///
/// `count()` is a lower bound for the pattern count of the infinite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCensus {
    shape: Shape,
    mode: CensusMode,
    region: LatticeBox,
    translates: LatticeBox,
    patterns: HashMap<u128, Occurrence>,
}

impl PatternCensus {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn mode(&self) -> CensusMode {
        self.mode
    }

    pub fn region(&self) -> &LatticeBox {
        &self.region
    }

    pub fn translates(&self) -> &LatticeBox {
        &self.translates
    }

    pub fn count(&self) -> u64 {
        self.patterns.len() as u64
    }

    pub fn contains(&self, p: Pattern) -> bool {
        self.patterns.contains_key(&p.0)
    }

    pub fn occurrence(&self, p: Pattern) -> Option<&Occurrence> {
        self.patterns.get(&p.0)
    }

    /// Patterns in increasing bit order.
    pub fn pattern_set(&self) -> BTreeSet<Pattern> {
        self.patterns.keys().map(|&b| Pattern(b)).collect()
    }

    pub fn max_ones(&self) -> u32 {
        self.patterns.keys().map(|b| b.count_ones()).max().unwrap_or(0)
    }

    /// Union with a census of the same shape and mode over other translations.
    pub fn merge(&mut self, other: PatternCensus) -> Result<()> {
        if self.shape != other.shape || self.mode != other.mode {
            return Err(invalid("censuses differ in shape or mode"));
        }
        self.region = bounding(&self.region, &other.region);
        self.translates = bounding(&self.translates, &other.translates);
        merge_maps(&mut self.patterns, other.patterns);
        Ok(())
    }

    pub fn to_json(&self, include_patterns: bool) -> serde_json::Value {
        let mut v = json!({
            "schema": format::CENSUS_SCHEMA,
            "shape": { "dim": self.shape.dim(), "offsets": self.shape.offsets() },
            "mode": self.mode.name(),
            "region": { "lo": self.region.lo(), "hi": self.region.hi() },
            "translates": { "lo": self.translates.lo(), "hi": self.translates.hi() },
            "count": self.count(),
        });
        if include_patterns {
            let len = self.shape.len();
            let list: Vec<_> = self
                .pattern_set()
                .into_iter()
                .map(|p| {
                    let occ = &self.patterns[&p.0];
                    json!({
                        "bits": p.to_hex(len),
                        "first": occ.first,
                        "multiplicity": occ.multiplicity,
                    })
                })
                .collect();
            v["patterns"] = json!(list);
        }
        v
    }
}

fn bounding(a: &LatticeBox, b: &LatticeBox) -> LatticeBox {
    let lo = a.lo().iter().zip(b.lo()).map(|(x, y)| *x.min(y)).collect();
    let hi = a.hi().iter().zip(b.hi()).map(|(x, y)| *x.max(y)).collect();
    LatticeBox::new(lo, hi).expect("bounding box of valid boxes")
}

fn merge_maps(into: &mut HashMap<u128, Occurrence>, from: HashMap<u128, Occurrence>) {
    for (bits, occ) in from {
        into.entry(bits)
            .and_modify(|o| {
                o.multiplicity += occ.multiplicity;
                if occ.first < o.first {
                    o.first = occ.first.clone();
                }
            })
            .or_insert(occ);
    }
}

/// Translations `x` with `x + shape` inside `region`.
pub fn translate_range(region: &LatticeBox, shape: &Shape) -> Result<LatticeBox> {
    if region.dim() != shape.dim() {
        return Err(invalid("shape and region dimensions differ"));
    }
    let (min, max) = shape.extents();
    let lo: Vec<i64> = region.lo().iter().zip(&min).map(|(l, m)| l - m).collect();
    let hi: Vec<i64> = region.hi().iter().zip(&max).map(|(h, m)| h - m).collect();
    LatticeBox::new(lo, hi)
        .map_err(|_| invalid(format!("shape of extent {min:?}..{max:?} does not fit in {region:?}")))
}

/// Census over every translation whose shifted shape lies inside `region`.
pub fn census<S: LatticeSet + ?Sized>(
    set: &S,
    region: &LatticeBox,
    shape: &Shape,
    mode: CensusMode,
) -> Result<PatternCensus> {
    let translates = translate_range(region, shape)?;
    census_translates(set, region, shape, mode, &translates)
}

/// Census over an explicit translation range, which must keep every shifted
/// shape inside `region`. Patterns are never clipped.
pub fn census_translates<S: LatticeSet + ?Sized>(
    set: &S,
    region: &LatticeBox,
    shape: &Shape,
    mode: CensusMode,
    translates: &LatticeBox,
) -> Result<PatternCensus> {
    if set.dim() != shape.dim() {
        return Err(invalid("set and shape dimensions differ"));
    }
    if !translate_range(region, shape)?.contains_box(translates) {
        return Err(invalid("translations would read outside the region"));
    }
    let (min, max) = shape.extents();
    let origin = shape.origin_index();
    let chunks = translates.slabs(SLAB_VOLUME);
    let maps: Vec<HashMap<u128, Occurrence>> = chunks
        .par_iter()
        .map(|chunk| {
            let lo: Vec<i64> = chunk.lo().iter().zip(&min).map(|(a, b)| a + b).collect();
            let hi: Vec<i64> = chunk.hi().iter().zip(&max).map(|(a, b)| a + b).collect();
            let mask = set.mask(&LatticeBox::new(lo, hi)?)?;
            let strides = mask.strides();
            let deltas: Vec<usize> = shape
                .offsets()
                .iter()
                .map(|o| {
                    o.iter()
                        .zip(&min)
                        .zip(strides)
                        .map(|((c, m), s)| (c - m) as usize * s)
                        .sum()
                })
                .collect();
            Ok(scan_chunk(mask.bits(), strides, chunk, &deltas, origin, mode))
        })
        .collect::<Result<_>>()?;
    let mut patterns = HashMap::new();
    for m in maps {
        merge_maps(&mut patterns, m);
    }
    Ok(PatternCensus {
        shape: shape.clone(),
        mode,
        region: region.clone(),
        translates: translates.clone(),
        patterns,
    })
}

fn scan_chunk(
    bits: &[bool],
    strides: &[usize],
    chunk: &LatticeBox,
    deltas: &[usize],
    origin: usize,
    mode: CensusMode,
) -> HashMap<u128, Occurrence> {
    let mut out: HashMap<u128, Occurrence> = HashMap::new();
    let n = chunk.dim();
    let mut x = chunk.lo().to_vec();
    loop {
        let base: usize = x
            .iter()
            .zip(chunk.lo())
            .zip(strides)
            .map(|((c, l), s)| (c - l) as usize * s)
            .sum();
        if mode == CensusMode::Coloured || bits[base + deltas[origin]] {
            let mut p = 0u128;
            for (i, &d) in deltas.iter().enumerate() {
                p |= (bits[base + d] as u128) << i;
            }
            match out.get_mut(&p) {
                Some(o) => o.multiplicity += 1,
                None => {
                    out.insert(p, Occurrence { first: x.clone(), multiplicity: 1 });
                }
            }
        }
        // row-major successor
        let mut axis = n;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if x[axis] < chunk.hi()[axis] {
                x[axis] += 1;
                break;
            }
            x[axis] = chunk.lo()[axis];
        }
    }
}

/// Coloured censuses of `D` and of its lattice complement.
#[derive(Debug, Clone)]
pub struct ComplementReport {
    pub primary: PatternCensus,
    pub complement: PatternCensus,
    pub counts_equal: bool,
    /// Colour inversion maps the first pattern set exactly onto the second.
    pub flip_is_bijection: bool,
}

pub fn complement_census<S: LatticeSet>(
    set: &S,
    region: &LatticeBox,
    shape: &Shape,
) -> Result<ComplementReport> {
    let primary = census(set, region, shape, CensusMode::Coloured)?;
    let complement = census(&Complement(set), region, shape, CensusMode::Coloured)?;
    let full = shape.full_bits();
    let flipped: BTreeSet<Pattern> =
        primary.pattern_set().into_iter().map(|p| Pattern(p.0 ^ full)).collect();
    let flip_is_bijection =
        flipped.len() == primary.patterns.len() && flipped == complement.pattern_set();
    Ok(ComplementReport {
        counts_equal: primary.count() == complement.count(),
        flip_is_bijection,
        primary,
        complement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::SchemeParams;
    use crate::sieve::{EmptySet, FullLattice, KFreeSet};
    use proptest::prelude::*;

    #[test]
    fn trivial_sets() {
        let region = LatticeBox::cube(2, 20).unwrap();
        let shape = Shape::centered_cube(2, 1).unwrap();
        let c = census(&FullLattice(2), &region, &shape, CensusMode::Coloured).unwrap();
        assert_eq!(c.count(), 1);
        assert!(c.contains(Pattern(shape.full_bits())));
        let r = complement_census(&EmptySet(2), &region, &shape).unwrap();
        assert_eq!((r.primary.count(), r.complement.count()), (1, 1));
        assert!(r.flip_is_bijection);
    }

    #[test]
    fn squarefree_small_shapes() {
        let sf = KFreeSet::new(SchemeParams::squarefree());
        let region = LatticeBox::interval(1, 100_000).unwrap();
        let c = census(&sf, &region, &Shape::interval(4).unwrap(), CensusMode::Coloured).unwrap();
        assert_eq!(c.count(), 15);
        assert!(!c.contains(Pattern(0b1111)));
        let centred = census(&sf, &region, &Shape::interval(1).unwrap(), CensusMode::Centered).unwrap();
        assert_eq!(centred.count(), 1);
        let coloured = census(&sf, &region, &Shape::interval(1).unwrap(), CensusMode::Coloured).unwrap();
        assert_eq!(coloured.count(), 2);
        // first occurrence of the all-zero 3-window is at 48
        let c3 = census(&sf, &region, &Shape::interval(3).unwrap(), CensusMode::Coloured).unwrap();
        assert_eq!(c3.occurrence(Pattern(0)).unwrap().first, vec![48]);
    }

    #[test]
    fn centred_never_exceeds_coloured() {
        let v = KFreeSet::new(SchemeParams::visible_plane());
        let region = LatticeBox::cube(2, 60).unwrap();
        for r in [1u64, 2] {
            let shape = Shape::centered_cube(2, r).unwrap();
            let a = census(&v, &region, &shape, CensusMode::Centered).unwrap();
            let b = census(&v, &region, &shape, CensusMode::Coloured).unwrap();
            assert!(a.count() <= b.count());
            let origin = shape.origin_index();
            assert!(a.pattern_set().iter().all(|p| p.0 >> origin & 1 == 1));
        }
    }

    #[test]
    fn clipping_is_refused() {
        let sf = KFreeSet::new(SchemeParams::squarefree());
        let region = LatticeBox::interval(1, 3).unwrap();
        assert!(census(&sf, &region, &Shape::interval(4).unwrap(), CensusMode::Coloured).is_err());
        let region = LatticeBox::interval(1, 10).unwrap();
        let shape = Shape::interval(4).unwrap();
        let too_far = LatticeBox::interval(1, 8).unwrap();
        assert!(census_translates(&sf, &region, &shape, CensusMode::Coloured, &too_far).is_err());
    }

    #[test]
    fn json_export() {
        let sf = KFreeSet::new(SchemeParams::squarefree());
        let region = LatticeBox::interval(1, 1000).unwrap();
        let c = census(&sf, &region, &Shape::interval(4).unwrap(), CensusMode::Coloured).unwrap();
        let v = c.to_json(true);
        assert_eq!(v["schema"], format::CENSUS_SCHEMA);
        assert_eq!(v["count"], 15);
        assert_eq!(v["mode"], "coloured");
        assert_eq!(v["patterns"].as_array().unwrap().len(), 15);
        assert_eq!(v["patterns"][0]["bits"], "0");
        assert!(c.to_json(false).get("patterns").is_none());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn merge_of_split_translations_equals_whole(split in 0i64..2_000, len in 3usize..9) {
            let sf = KFreeSet::new(SchemeParams::squarefree());
            let region = LatticeBox::interval(-1_000, 1_000).unwrap();
            let shape = Shape::interval(len).unwrap();
            let all = translate_range(&region, &shape).unwrap();
            let cut = (all.lo()[0] + split).min(all.hi()[0] - 1);
            let left = LatticeBox::interval(all.lo()[0], cut).unwrap();
            let right = LatticeBox::interval(cut + 1, all.hi()[0]).unwrap();
            let whole = census(&sf, &region, &shape, CensusMode::Coloured).unwrap();
            let a = census_translates(&sf, &region, &shape, CensusMode::Coloured, &left).unwrap();
            let b = census_translates(&sf, &region, &shape, CensusMode::Coloured, &right).unwrap();

            let mut ab = a.clone();
            ab.merge(b.clone()).unwrap();
            let mut ba = b.clone();
            ba.merge(a.clone()).unwrap();
            prop_assert_eq!(&ab, &whole);
            prop_assert_eq!(ab.pattern_set(), ba.pattern_set());

            let mut aa = a.clone();
            aa.merge(a.clone()).unwrap();
            prop_assert_eq!(aa.pattern_set(), a.pattern_set());
        }
    }
}

//! Pairs in the free left module `R²`: cyclic submodules, freeness,
//! unimodularity, admissibility and outliers.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::ideal::{IdealRegistry, RightIdealSet};
use crate::orbit::{is_invertible_mat2, Mat2};
use crate::ring::{Elem, FiniteRing};

/// Rings up to this order decide admissibility by searching for a completion.
pub const ADMISSIBLE_SEARCH_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub a: Elem,
    pub b: Elem,
}

impl Pair {
    pub const fn new(a: Elem, b: Elem) -> Pair {
        Pair { a, b }
    }

    /// Position in `R²` under the order `(a, b)` lexicographic.
    #[inline]
    pub fn index(self, order: usize) -> usize {
        self.a.index() * order + self.b.index()
    }

    #[inline]
    pub fn from_index(i: usize, order: usize) -> Pair {
        Pair::new(Elem((i / order) as u16), Elem((i % order) as u16))
    }

    /// `r·(a, b)`.
    #[inline]
    pub fn scale(self, ring: &FiniteRing, r: Elem) -> Pair {
        Pair::new(ring.mul(r, self.a), ring.mul(r, self.b))
    }

    pub fn add(self, ring: &FiniteRing, other: Pair) -> Pair {
        Pair::new(ring.add(self.a, other.a), ring.add(self.b, other.b))
    }

    pub fn display<'r>(self, ring: &'r FiniteRing) -> PairDisplay<'r> {
        PairDisplay { ring, pair: self }
    }
}

pub struct PairDisplay<'r> {
    ring: &'r FiniteRing,
    pair: Pair,
}

impl fmt::Display for PairDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ring.label(self.pair.a), self.ring.label(self.pair.b))
    }
}

/// A set of pairs as a bitmask over `R²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    order: usize,
    bits: FixedBitSet,
}

impl PairSet {
    pub fn empty(order: usize) -> PairSet {
        PairSet { order, bits: FixedBitSet::with_capacity(order * order) }
    }

    pub fn full(order: usize) -> PairSet {
        let mut s = Self::empty(order);
        s.bits.insert_range(..);
        s
    }

    pub fn from_fn(ring: &FiniteRing, mut f: impl FnMut(Pair) -> bool) -> PairSet {
        let n = ring.order();
        let mut s = Self::empty(n);
        for i in 0..n * n {
            if f(Pair::from_index(i, n)) {
                s.bits.insert(i);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.bits.contains(p.index(self.order))
    }

    pub fn insert(&mut self, p: Pair) -> bool {
        self.bits.put(p.index(self.order))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.bits.ones().map(move |i| Pair::from_index(i, self.order))
    }

    pub fn complement(&self) -> PairSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PairSet { order: self.order, bits }
    }

    pub fn intersection(&self, other: &PairSet) -> PairSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        PairSet { order: self.order, bits }
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        PairSet { order: self.order, bits }
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

/// `R(a, b)` with its generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubmodulePoints {
    pub generator: Pair,
    /// Sorted, duplicate free.
    pub points: Vec<Pair>,
}

impl SubmodulePoints {
    pub fn contains(&self, p: Pair) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `R(a, b) = {(ra, rb) : r ∈ R}`.
pub fn cyclic_submodule(ring: &FiniteRing, p: Pair) -> SubmodulePoints {
    let mut points: Vec<Pair> = ring.elements().map(|r| p.scale(ring, r)).collect();
    points.sort_unstable();
    points.dedup();
    SubmodulePoints { generator: p, points }
}

/// Smallest nonzero `r` with `r·(a, b) = (0, 0)`.
pub fn torsion_witness(ring: &FiniteRing, p: Pair) -> Option<Elem> {
    let ann_a = ring.left_annihilator(p.a);
    let ann_b = ring.left_annihilator(p.b);
    let zero = ring.zero().index();
    ann_a
        .intersection(ann_b)
        .find(|&r| r != zero)
        .map(|r| Elem(r as u16))
}

pub fn is_free(ring: &FiniteRing, p: Pair) -> bool {
    torsion_witness(ring, p).is_none()
}

/// Some `(x, y)` with `ax + by = 1`.
pub fn unimodular_witness(ring: &FiniteRing, p: Pair) -> Option<(Elem, Elem)> {
    let a_mult = ring.right_multiples(p.a);
    let y = ring
        .elements()
        .find(|&y| a_mult.contains(ring.sub(ring.one(), ring.mul(p.b, y)).index()))?;
    let target = ring.sub(ring.one(), ring.mul(p.b, y));
    let x = ring.elements().find(|&x| ring.mul(p.a, x) == target)?;
    Some((x, y))
}

/// `1 ∈ aR + bR`.
pub fn is_unimodular(ring: &FiniteRing, p: Pair) -> bool {
    let a_mult = ring.right_multiples(p.a);
    let one = ring.one();
    ring.elements()
        .any(|y| a_mult.contains(ring.sub(one, ring.mul(p.b, y)).index()))
}

/// How [`is_admissible`] decides.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityMode {
    /// Search up to [`ADMISSIBLE_SEARCH_LIMIT`] elements, unimodularity above.
    #[default]
    Auto,
    Search,
    /// Unimodularity, which coincides with admissibility for finite rings.
    FiniteShortcut,
}

impl AdmissibilityMode {
    pub fn searches(self, ring: &FiniteRing) -> bool {
        match self {
            AdmissibilityMode::Auto => ring.order() <= ADMISSIBLE_SEARCH_LIMIT,
            AdmissibilityMode::Search => true,
            AdmissibilityMode::FiniteShortcut => false,
        }
    }
}

/// Some `(c, d)` making `[a b; c d]` invertible.
pub fn admissible_completion(ring: &FiniteRing, p: Pair) -> Option<(Elem, Elem)> {
    ring.elements()
        .flat_map(|c| ring.elements().map(move |d| (c, d)))
        .find(|&(c, d)| is_invertible_mat2(ring, &Mat2::new(p.a, p.b, c, d)))
}

pub fn is_admissible(ring: &FiniteRing, p: Pair, mode: AdmissibilityMode) -> bool {
    if mode.searches(ring) {
        admissible_completion(ring, p).is_some()
    } else {
        is_unimodular(ring, p)
    }
}

/// Some `r` with `r·host = member`.
pub fn submodule_contains(ring: &FiniteRing, host: Pair, member: Pair) -> Option<Elem> {
    ring.elements().find(|&r| host.scale(ring, r) == member)
}

/// `R·p = R·q` as point sets.
pub fn submodule_equal(ring: &FiniteRing, p: Pair, q: Pair) -> bool {
    if is_free(ring, p) && is_free(ring, q) {
        submodule_contains(ring, p, q).is_some() && submodule_contains(ring, q, p).is_some()
    } else {
        cyclic_submodule(ring, p).points == cyclic_submodule(ring, q).points
    }
}

/// Direct search: is `p = r·(x, y)` for some unimodular `(x, y)`? If not, `p`
/// is an outlier.
pub fn is_outlier(ring: &FiniteRing, p: Pair) -> bool {
    for r in ring.elements() {
        let xs: Vec<Elem> = ring.elements().filter(|&x| ring.mul(r, x) == p.a).collect();
        if xs.is_empty() {
            continue;
        }
        let ys: Vec<Elem> = ring.elements().filter(|&y| ring.mul(r, y) == p.b).collect();
        for &x in &xs {
            for &y in &ys {
                if is_unimodular(ring, Pair::new(x, y)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Union of `R(x, y)` over all unimodular `(x, y)`. Its complement is the
/// set of outliers.
pub fn unimodular_hull(ring: &FiniteRing) -> PairSet {
    let unimodular = PairSet::from_fn(ring, |p| is_unimodular(ring, p));
    hull_of(ring, &unimodular)
}

fn hull_of(ring: &FiniteRing, unimodular: &PairSet) -> PairSet {
    let n = ring.order();
    let mut hull = PairSet::empty(n);
    // generators of one unimodular submodule all give the same points; skip
    // generators already covered with a unit scalar
    let mut seen = PairSet::empty(n);
    let units = ring.units();
    for p in unimodular.iter() {
        if seen.contains(p) {
            continue;
        }
        for &u in &units {
            seen.insert(p.scale(ring, u));
        }
        for r in ring.elements() {
            hull.insert(p.scale(ring, r));
        }
    }
    hull
}

/// Ring-wide pair sets, computed once and shared.
#[derive(Clone, Debug)]
pub struct PairAtlas {
    pub free: PairSet,
    pub unimodular: PairSet,
    pub hull: PairSet,
}

impl PairAtlas {
    pub fn new(ring: &FiniteRing) -> PairAtlas {
        let free = PairSet::from_fn(ring, |p| is_free(ring, p));
        let unimodular = PairSet::from_fn(ring, |p| is_unimodular(ring, p));
        let hull = hull_of(ring, &unimodular);
        PairAtlas { free, unimodular, hull }
    }

    pub fn outliers(&self) -> PairSet {
        self.hull.complement()
    }

    pub fn is_outlier(&self, p: Pair) -> bool {
        !self.hull.contains(p)
    }

    /// Free pairs that are not unimodular.
    pub fn free_non_unimodular(&self) -> PairSet {
        self.free.difference(&self.unimodular)
    }
}

/// Groups the free pairs of `pairs` by the submodule they generate.
///
/// For free `p`, a point `q ∈ R·p` satisfies `R·q ⊆ R·p` with both of size
/// `|R|` exactly when `q` is free, so the free points of `R·p` are precisely
/// the free generators of `R·p`.
pub fn free_submodule_classes(ring: &FiniteRing, pairs: &PairSet) -> Vec<(Pair, Vec<Pair>)> {
    let mut seen = PairSet::empty(ring.order());
    let mut out = Vec::new();
    for p in pairs.iter() {
        if seen.contains(p) || !is_free(ring, p) {
            continue;
        }
        let mut gens: Vec<Pair> = cyclic_submodule(ring, p)
            .points
            .into_iter()
            .filter(|&q| pairs.contains(q) && is_free(ring, q))
            .collect();
        gens.sort_unstable();
        for &q in &gens {
            seen.insert(q);
        }
        out.push((p, gens));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PairClassification {
    pub pair: Pair,
    pub unimodular: bool,
    pub admissible: bool,
    pub free: bool,
    pub torsion_witness: Option<Elem>,
    pub outlier: bool,
    /// Id into [`Classification::ideals`] of `aR + bR`.
    pub generated_ideal: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassificationSummary {
    pub pairs: usize,
    pub unimodular: usize,
    pub admissible: usize,
    pub free: usize,
    pub torsion: usize,
    pub outliers: usize,
    pub free_outliers: usize,
    pub torsion_outliers: usize,
    /// Distinct submodules generated by free outliers.
    pub free_outlier_submodules: usize,
    /// Counts keyed by `(unimodular, free, outlier)`.
    pub cells: BTreeMap<String, usize>,
    pub admissibility: AdmissibilityMode,
    /// Pairs where the completion search disagreed with unimodularity.
    pub admissibility_mismatches: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub rows: Vec<PairClassification>,
    pub summary: ClassificationSummary,
    pub ideals: Vec<RightIdealSet>,
}

/// Classifies every pair of `R²` in index order.
pub fn classify_all_pairs(ring: &FiniteRing, mode: AdmissibilityMode) -> Classification {
    let atlas = PairAtlas::new(ring);
    let mut registry = IdealRegistry::new(ring);
    let n = ring.order();
    let search = mode.searches(ring);
    let mut rows = Vec::with_capacity(n * n);
    let mut summary = ClassificationSummary {
        admissibility: mode,
        ..Default::default()
    };
    for i in 0..n * n {
        let pair = Pair::from_index(i, n);
        let unimodular = atlas.unimodular.contains(pair);
        let admissible = if search {
            let adm = admissible_completion(ring, pair).is_some();
            if adm != unimodular {
                summary.admissibility_mismatches += 1;
            }
            adm
        } else {
            unimodular
        };
        let witness = torsion_witness(ring, pair);
        let free = witness.is_none();
        let outlier = atlas.is_outlier(pair);
        let generated_ideal = registry.generated_by_pair(ring, pair.a, pair.b);

        summary.pairs += 1;
        summary.unimodular += unimodular as usize;
        summary.admissible += admissible as usize;
        summary.free += free as usize;
        summary.torsion += (!free) as usize;
        summary.outliers += outlier as usize;
        summary.free_outliers += (free && outlier) as usize;
        summary.torsion_outliers += (!free && outlier) as usize;
        *summary
            .cells
            .entry(format!("unimodular={unimodular},free={free},outlier={outlier}"))
            .or_default() += 1;
        rows.push(PairClassification {
            pair,
            unimodular,
            admissible,
            free,
            torsion_witness: witness,
            outlier,
            generated_ideal,
        });
    }
    let free_outliers = atlas.free.intersection(&atlas.outliers());
    summary.free_outlier_submodules = free_submodule_classes(ring, &free_outliers).len();
    Classification { rows, summary, ideals: registry.ideals().to_vec() }
}

/// `{R(a, b) : (a, b) admissible}`, deduplicated, sorted by points.
pub fn projective_line(ring: &FiniteRing, mode: AdmissibilityMode) -> Vec<SubmodulePoints> {
    let admissible = PairSet::from_fn(ring, |p| is_admissible(ring, p, mode));
    let mut line: Vec<SubmodulePoints> = free_submodule_classes(ring, &admissible)
        .into_iter()
        .map(|(g, _)| cyclic_submodule(ring, g))
        .collect();
    line.sort_by(|x, y| x.points.cmp(&y.points));
    line
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::modint;

    fn p(a: u16, b: u16) -> Pair {
        Pair::new(Elem(a), Elem(b))
    }

    #[test]
    fn submodules_in_z4() {
        let r = modint(4).unwrap();
        assert_eq!(cyclic_submodule(&r, p(1, 0)).points, vec![p(0, 0), p(1, 0), p(2, 0), p(3, 0)]);
        assert_eq!(cyclic_submodule(&r, p(2, 2)).points, vec![p(0, 0), p(2, 2)]);
        assert_eq!(cyclic_submodule(&r, p(0, 0)).points, vec![p(0, 0)]);
    }

    #[test]
    fn freeness_and_unimodularity_in_z4() {
        let r = modint(4).unwrap();
        assert_eq!(torsion_witness(&r, p(2, 2)), Some(Elem(2)));
        assert!(is_free(&r, p(1, 2)));
        assert!(is_unimodular(&r, p(1, 0)));
        assert!(!is_unimodular(&r, p(2, 2)));
        let (x, y) = unimodular_witness(&r, p(2, 3)).unwrap();
        assert_eq!(r.add(r.mul(Elem(2), x), r.mul(Elem(3), y)), r.one());
        assert_eq!(admissible_completion(&r, p(1, 0)), Some((Elem(0), Elem(1))));
        assert!(!is_admissible(&r, p(2, 2), AdmissibilityMode::Search));
    }

    #[test]
    fn containment_and_equality() {
        let r = modint(4).unwrap();
        assert_eq!(submodule_contains(&r, p(1, 0), p(3, 0)), Some(Elem(3)));
        assert_eq!(submodule_contains(&r, p(2, 2), p(1, 1)), None);
        assert!(submodule_equal(&r, p(1, 0), p(3, 0)));
        assert!(!submodule_equal(&r, p(1, 0), p(2, 0)));
        assert!(!submodule_equal(&r, p(1, 0), p(0, 1)));
    }

    #[test]
    fn zero_pair_conventions() {
        let r = modint(4).unwrap();
        let z = p(0, 0);
        assert!(!is_free(&r, z));
        assert!(!is_unimodular(&r, z));
        assert!(!is_outlier(&r, z));
        assert!(!is_outlier(&r, p(2, 0)));
    }

    #[test]
    fn z4_has_no_outliers() {
        let r = modint(4).unwrap();
        let c = classify_all_pairs(&r, AdmissibilityMode::Auto);
        assert_eq!(c.summary.pairs, 16);
        assert_eq!(c.summary.outliers, 0);
        assert_eq!(c.summary.free, 12);
        assert_eq!(c.summary.unimodular, 12);
        assert_eq!(c.summary.admissibility_mismatches, 0);
        assert_eq!(unimodular_hull(&r).len(), 16);
    }

    #[test]
    fn small_projective_lines() {
        assert_eq!(projective_line(&modint(2).unwrap(), AdmissibilityMode::Auto).len(), 3);
        assert_eq!(projective_line(&modint(3).unwrap(), AdmissibilityMode::Auto).len(), 4);
        assert_eq!(projective_line(&modint(4).unwrap(), AdmissibilityMode::Auto).len(), 6);
        let gf2 = classify_all_pairs(&modint(2).unwrap(), AdmissibilityMode::Auto);
        assert_eq!((gf2.summary.pairs, gf2.summary.unimodular, gf2.summary.outliers), (4, 3, 0));
    }
}

//! Reports for the concrete rings: the orbit structure of `T₃` and of the
//! ternions, the lettered elements of `example31`, the characteristic `p²`
//! pair, and the left/right asymmetry of outliers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::budget::{checkpoint, Budget, VerifyError};
use crate::catalog::{char_p2, example31, matrix_elem, named_elements_example31, t3, ternions};
use crate::error::{Error, Result};
use crate::ideal::{is_principal, principal_right_ideal, right_ideal_generated, RightIdealSet};
use crate::orbit::{find_connecting_matrix, orbit_invariant_violations, pair_orbits, submodule_orbits};
use crate::orbit::{OrbitMode, OrbitTable, EXACT_ORBIT_LIMIT};
use crate::pair::{cyclic_submodule, is_free, is_outlier, is_unimodular, projective_line};
use crate::pair::{AdmissibilityMode, Pair, PairAtlas};
use crate::ring::{Elem, FiniteRing};

/// Candidate matrices tried per connecting-matrix search.
pub const CONNECTING_SEARCH_LIMIT: usize = 1 << 20;

fn require_small_prime(p: u32) -> Result<()> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("field order must be 2 or 3, got {p}")))
    }
}

fn m3(ring: &FiniteRing, rows: [[u32; 3]; 3]) -> Result<Elem> {
    let flat: Vec<u32> = rows.iter().flatten().copied().collect();
    matrix_elem(ring, &flat)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeCheck {
    /// `"1"`, `"2"`, `"3(e=…)"`, `"4"`, `"5"`.
    pub item: String,
    pub pair: Pair,
    pub label: String,
    pub free: bool,
    pub pair_orbit: Option<usize>,
    pub submodule_orbit: Option<usize>,
    pub ideal_size: usize,
    pub expected_ideal_size: usize,
    /// `aR + bR` equals the listed ideal as a set.
    pub ideal_matches: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct T3Report {
    pub field_order: u32,
    pub ring_order: usize,
    pub free_pairs: usize,
    pub pair_orbits: Option<usize>,
    pub submodule_orbits: Option<usize>,
    pub representatives: Vec<RepresentativeCheck>,
    /// The five listed items lie in five distinct submodule orbits.
    pub items_distinct: Option<bool>,
    /// The `4 + |F|` listed pairs lie in distinct pair orbits covering all of them.
    pub pair_representatives_cover: Option<bool>,
    /// The left unit `[1,0,0; 0,1,0; 0,-e,1]` carries item 3 at `e` to item 3
    /// at 0 for every `e`, so the family spans one submodule orbit.
    pub family_collapses: Option<bool>,
    /// Free pairs whose generated ideal differs from their orbit's.
    pub invariant_violations: Option<usize>,
    /// Distinct pair orbits have distinct generated ideals.
    pub invariant_separates: Option<bool>,
    /// Orbits merged on a found connecting matrix, as representative labels.
    pub merges: Vec<(String, String)>,
    /// Orbits with equal ideals and no connecting matrix found.
    pub flags: Vec<String>,
    /// Generated-subgroup orbits are full `GL₂` orbits: true when the ideal
    /// invariant separates them, since it is constant on `GL₂` orbits.
    pub generated_orbits_are_gl2_orbits: Option<bool>,
    pub exact_cross_check: Option<bool>,
    pub exact_skip_reason: Option<String>,
}

impl T3Report {
    pub fn expected_pair_orbits(&self) -> usize {
        4 + self.field_order as usize
    }

    pub fn passed(&self) -> bool {
        self.pair_orbits == Some(self.expected_pair_orbits())
            && self.submodule_orbits == Some(5)
            && self.items_distinct == Some(true)
            && self.pair_representatives_cover == Some(true)
            && self.family_collapses == Some(true)
            && self.invariant_violations == Some(0)
            && self.invariant_separates == Some(true)
            && self.flags.is_empty()
            && self.representatives.iter().all(|r| r.free && r.ideal_matches && r.ideal_size == r.expected_ideal_size)
            && self.exact_cross_check != Some(false)
    }
}

/// The listed representatives of `T₃`: items 1, 2, 3 for each `e`, 4, 5,
/// with the predicate on `(a, b, c, d, e, f)` describing each ideal.
#[allow(clippy::type_complexity)]
fn t3_items(ring: &FiniteRing, p: u32) -> Result<Vec<(String, Pair, usize, Box<dyn Fn(&[u32]) -> bool>)>> {
    let id3 = m3(ring, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])?;
    let zero = ring.zero();
    let e21 = m3(ring, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])?;
    let e31 = m3(ring, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])?;
    let e32 = m3(ring, [[0, 0, 0], [0, 0, 0], [0, 1, 0]])?;
    let pk = p as usize;
    let mut items: Vec<(String, Pair, usize, Box<dyn Fn(&[u32]) -> bool>)> = vec![
        ("1".into(), Pair::new(id3, zero), pk.pow(6), Box::new(|_: &[u32]| true)),
        (
            "2".into(),
            Pair::new(m3(ring, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])?, e32),
            pk.pow(5),
            Box::new(|c: &[u32]| c[5] == 0),
        ),
    ];
    for e in 0..p {
        let x = m3(ring, [[1, 0, 0], [0, 1, 0], [0, e, 0]])?;
        items.push((
            format!("3(e={e})"),
            Pair::new(x, e31),
            pk.pow(4),
            Box::new(move |c: &[u32]| c[5] == 0 && c[4] == (e * c[2]) % p),
        ));
    }
    items.push((
        "4".into(),
        Pair::new(m3(ring, [[1, 0, 0], [0, 0, 0], [0, 1, 0]])?, e21),
        pk.pow(4),
        Box::new(|c: &[u32]| c[2] == 0 && c[5] == 0),
    ));
    items.push((
        "5".into(),
        Pair::new(m3(ring, [[1, 0, 0], [0, 0, 0], [0, 0, 1]])?, e21),
        pk.pow(5),
        Box::new(|c: &[u32]| c[2] == 0),
    ));
    Ok(items)
}

/// Orbits sharing a generated ideal: merged when a connecting invertible matrix
/// is found, flagged otherwise. Returns the number of classes left.
fn reconcile(
    ring: &FiniteRing,
    table: &OrbitTable,
    merges: &mut Vec<(String, String)>,
    flags: &mut Vec<String>,
) -> usize {
    let mut by_ideal: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, o) in table.orbits.iter().enumerate() {
        by_ideal.entry(o.ideal).or_default().push(i);
    }
    let mut classes = 0;
    for group in by_ideal.values() {
        let mut roots: Vec<usize> = Vec::new();
        for &o in group {
            let rep = table.orbits[o].representative;
            let joined = roots.iter().find(|&&r| {
                let target = table.orbits[r].representative;
                find_connecting_matrix(ring, rep, target, CONNECTING_SEARCH_LIMIT).is_some()
            });
            match joined {
                Some(&r) => merges.push((
                    rep.display(ring).to_string(),
                    table.orbits[r].representative.display(ring).to_string(),
                )),
                None => {
                    if let Some(&r) = roots.first() {
                        flags.push(format!(
                            "orbits of {} and {} share a generated ideal but no connecting matrix was found",
                            rep.display(ring),
                            table.orbits[r].representative.display(ring)
                        ));
                    }
                    roots.push(o);
                }
            }
        }
        classes += roots.len();
    }
    classes
}

/// Orbits of the free pairs and free cyclic submodules of `T₃` over GF(p),
/// checked against the listed representatives and ideals.
pub fn verify_t3(p: u32, budget: &Budget) -> Result<T3Report, VerifyError<T3Report>> {
    require_small_prime(p)?;
    let ring = t3(p)?;
    let mut report = T3Report { field_order: p, ring_order: ring.order(), ..Default::default() };
    let atlas = PairAtlas::new(&ring);
    report.free_pairs = atlas.free.len();
    checkpoint(budget, "pair orbits", &report)?;

    let pairs = pair_orbits(&ring, &atlas.free, OrbitMode::GeneratorBfs)?;
    let mut reconciled = reconcile(&ring, &pairs, &mut report.merges, &mut report.flags);
    report.pair_orbits = Some(reconciled);
    checkpoint(budget, "submodule orbits", &report)?;

    let subs = submodule_orbits(&ring, &atlas.free, OrbitMode::GeneratorBfs)?;
    reconciled = reconcile(&ring, &subs, &mut report.merges, &mut report.flags);
    report.submodule_orbits = Some(reconciled);
    checkpoint(budget, "representatives", &report)?;

    let items = t3_items(&ring, p)?;
    for (item, pair, expected_size, member) in &items {
        let ideal = right_ideal_generated(&ring, &[pair.a, pair.b])?;
        let listed: Vec<Elem> = ring.elements().filter(|&x| member(&ring.coords(x).unwrap())).collect();
        report.representatives.push(RepresentativeCheck {
            item: item.clone(),
            pair: *pair,
            label: pair.display(&ring).to_string(),
            free: is_free(&ring, *pair),
            pair_orbit: pairs.orbit_of(*pair),
            submodule_orbit: subs.orbit_of(*pair),
            ideal_size: ideal.len(),
            expected_ideal_size: *expected_size,
            ideal_matches: ideal.members() == listed.as_slice(),
        });
    }
    let reps = &report.representatives;
    let item_subs: BTreeSet<Option<usize>> = reps
        .iter()
        .filter(|r| !r.item.starts_with("3(") || r.item == "3(e=0)")
        .map(|r| r.submodule_orbit)
        .collect();
    report.items_distinct = Some(item_subs.len() == 5 && !item_subs.contains(&None));
    let rep_pairs: BTreeSet<Option<usize>> = reps.iter().map(|r| r.pair_orbit).collect();
    report.pair_representatives_cover = Some(
        rep_pairs.len() == reps.len() && !rep_pairs.contains(&None) && rep_pairs.len() == pairs.len(),
    );

    let base = items.iter().find(|i| i.0 == "3(e=0)").map(|i| i.1).expect("item 3 at e = 0");
    let mut collapses = true;
    for e in 0..p {
        let neg_e = (p - e) % p;
        let u = m3(&ring, [[1, 0, 0], [0, 1, 0], [0, neg_e, 1]])?;
        let member = items.iter().find(|i| i.0 == format!("3(e={e})")).map(|i| i.1).unwrap();
        collapses &= ring.is_unit(u)
            && member.scale(&ring, u) == base
            && subs.orbit_of(member).is_some()
            && subs.orbit_of(member) == subs.orbit_of(base);
    }
    report.family_collapses = Some(collapses);
    checkpoint(budget, "ideal invariant", &report)?;

    report.invariant_violations = Some(orbit_invariant_violations(&ring, &pairs).len());
    let ideals: BTreeSet<usize> = pairs.orbits.iter().map(|o| o.ideal).collect();
    report.invariant_separates = Some(ideals.len() == pairs.len());
    report.generated_orbits_are_gl2_orbits = report.invariant_separates;

    if ring.order() <= EXACT_ORBIT_LIMIT {
        let exact = pair_orbits(&ring, &atlas.free, OrbitMode::Exact)?;
        report.exact_cross_check = Some(same_partition(&exact, &pairs));
    } else {
        report.exact_skip_reason =
            Some(format!("ring order {} exceeds the exact-mode limit {EXACT_ORBIT_LIMIT}", ring.order()));
    }
    Ok(report)
}

fn same_partition(x: &OrbitTable, y: &OrbitTable) -> bool {
    let xs: Vec<_> = x.assigned_pairs().collect();
    let ys: Vec<_> = y.assigned_pairs().collect();
    xs == ys
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TernionReport {
    pub field_order: u32,
    pub ring_order: usize,
    pub free_pairs: usize,
    pub submodule_orbits: Option<usize>,
    /// Submodules in the orbit of `R(1, 0)`.
    pub line_orbit_size: Option<usize>,
    pub projective_line_size: Option<usize>,
    pub line_orbit_is_projective_line: Option<bool>,
    /// Every generator of a submodule outside the orbit of `R(1, 0)` is
    /// non-unimodular.
    pub others_non_unimodular: Option<bool>,
    /// ... and an outlier.
    pub others_outliers: Option<bool>,
    /// `(1, 0)` and `([0,0;0,1], [0,1;0,0])` lie in different orbits.
    pub representatives_distinct: Option<bool>,
    pub exact_cross_check: Option<bool>,
    pub exact_skip_reason: Option<String>,
}

impl TernionReport {
    pub fn passed(&self) -> bool {
        self.submodule_orbits == Some(2)
            && self.line_orbit_is_projective_line == Some(true)
            && self.others_non_unimodular == Some(true)
            && self.others_outliers == Some(true)
            && self.representatives_distinct == Some(true)
            && self.exact_cross_check != Some(false)
    }
}

/// Orbits of the free cyclic submodules over the ternions.
pub fn verify_ternions(p: u32, budget: &Budget) -> Result<TernionReport, VerifyError<TernionReport>> {
    require_small_prime(p)?;
    let ring = ternions(p)?;
    let mut report = TernionReport { field_order: p, ring_order: ring.order(), ..Default::default() };
    let atlas = PairAtlas::new(&ring);
    report.free_pairs = atlas.free.len();
    checkpoint(budget, "submodule orbits", &report)?;

    let subs = submodule_orbits(&ring, &atlas.free, OrbitMode::GeneratorBfs)?;
    report.submodule_orbits = Some(subs.len());
    let e = |entries: [u32; 4]| matrix_elem(&ring, &entries);
    let first = Pair::new(ring.one(), ring.zero());
    let second = Pair::new(e([0, 0, 0, 1])?, e([0, 1, 0, 0])?);
    let line_orbit = subs.orbit_of(first).expect("(1, 0) is free");
    report.representatives_distinct =
        Some(subs.orbit_of(second).is_some_and(|o| o != line_orbit));

    let line: BTreeSet<Vec<Pair>> =
        projective_line(&ring, AdmissibilityMode::Auto).into_iter().map(|s| s.points).collect();
    let orbit: BTreeSet<Vec<Pair>> = subs.orbits[line_orbit]
        .members
        .iter()
        .map(|&g| cyclic_submodule(&ring, g).points)
        .collect();
    report.line_orbit_size = Some(orbit.len());
    report.projective_line_size = Some(line.len());
    report.line_orbit_is_projective_line = Some(orbit == line);
    let others: Vec<Pair> =
        subs.assigned_pairs().filter(|&(_, o)| o != line_orbit).map(|(q, _)| q).collect();
    report.others_non_unimodular = Some(others.iter().all(|&q| !atlas.unimodular.contains(q)));
    report.others_outliers = Some(others.iter().all(|&q| atlas.is_outlier(q)));
    checkpoint(budget, "exact cross-check", &report)?;

    if ring.order() <= EXACT_ORBIT_LIMIT {
        let exact = submodule_orbits(&ring, &atlas.free, OrbitMode::Exact)?;
        report.exact_cross_check = Some(same_partition(&exact, &subs));
    } else {
        report.exact_skip_reason =
            Some(format!("ring order {} exceeds the exact-mode limit {EXACT_ORBIT_LIMIT}", ring.order()));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPairCheck {
    pub pair: String,
    pub free: bool,
    pub outlier: bool,
    pub generated_ideal_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example31Report {
    /// `{0, A, B, C, D, I, J, K}`.
    pub i2: Vec<String>,
    /// `(I, A), (K, A), (A, D), (A, B)`: each should generate `I₂`, be free
    /// and be an outlier.
    pub generators_of_i2: Vec<NamedPairCheck>,
    pub generators_of_i2_ok: bool,
    /// `IR + JR`.
    pub ij_sum: Vec<String>,
    pub ij_sum_is_i1: bool,
    /// The principal ideals of size 8 containing `I, J, K`, with their least
    /// generators.
    pub i3_candidates: Vec<(String, Vec<String>)>,
    /// `IR + JR ⊊ I₃` for the discovered `I₃`.
    pub ij_sum_strictly_inside_i3: bool,
    /// `(I, J), (J, I), (I, K), (K, I), (K, J), (J, K)`.
    pub torsion_outliers: Vec<NamedPairCheck>,
    pub torsion_outliers_ok: bool,
    /// `r·(I, A)` matches the displayed product for every `r`, with the two
    /// components in swapped order.
    pub displayed_product_matches_swapped: bool,
    /// `r·(I, A) = 0` only for `r = 0`.
    pub displayed_product_free: bool,
}

impl Example31Report {
    pub fn passed(&self) -> bool {
        self.generators_of_i2_ok
            && self.ij_sum_is_i1
            && self.ij_sum_strictly_inside_i3
            && self.torsion_outliers_ok
            && self.displayed_product_matches_swapped
            && self.displayed_product_free
    }
}

fn named_check(ring: &FiniteRing, names: &BTreeMap<&str, Elem>, a: &str, b: &str) -> Result<NamedPairCheck> {
    let p = Pair::new(names[a], names[b]);
    Ok(NamedPairCheck {
        pair: format!("({a}, {b})"),
        free: is_free(ring, p),
        outlier: is_outlier(ring, p),
        generated_ideal_size: right_ideal_generated(ring, &[p.a, p.b])?.len(),
    })
}

fn letter_set(names: &BTreeMap<&str, Elem>, ring: &FiniteRing, letters: &[&str]) -> RightIdealSet {
    let mut mask = fixedbitset::FixedBitSet::with_capacity(ring.order());
    for l in letters {
        mask.insert(names[l].index());
    }
    RightIdealSet::from_mask(mask)
}

/// The lettered claims about `example31` over GF(2).
pub fn verify_example31_named() -> Result<Example31Report> {
    let ring = example31(2)?;
    let names = named_elements_example31(&ring)?;
    let letter_of: HashMap<Elem, &str> = names.iter().map(|(k, v)| (*v, *k)).collect();
    let show = |s: &RightIdealSet| -> Vec<String> {
        s.members()
            .iter()
            .map(|m| letter_of.get(m).map_or_else(|| ring.label(*m).to_string(), |l| l.to_string()))
            .collect()
    };
    let i1 = letter_set(&names, &ring, &["0", "I", "J", "K"]);
    let i2 = letter_set(&names, &ring, &["0", "A", "B", "C", "D", "I", "J", "K"]);

    let mut generators_of_i2 = Vec::new();
    let mut generators_of_i2_ok = true;
    for (a, b) in [("I", "A"), ("K", "A"), ("A", "D"), ("A", "B")] {
        let c = named_check(&ring, &names, a, b)?;
        let p = Pair::new(names[a], names[b]);
        generators_of_i2_ok &= right_ideal_generated(&ring, &[p.a, p.b])? == i2 && c.free && c.outlier;
        generators_of_i2.push(c);
    }

    let ij = right_ideal_generated(&ring, &[names["I"], names["J"]])?;
    let i3_candidates: Vec<RightIdealSet> = crate::ideal::principal_right_ideals(&ring)
        .into_iter()
        .filter(|s| s.len() == 8 && ["I", "J", "K"].iter().all(|l| s.contains(names[l])))
        .collect();
    let ij_sum_strictly_inside_i3 =
        i3_candidates.len() == 1 && ij.is_subset(&i3_candidates[0]) && ij.len() < i3_candidates[0].len();

    let mut torsion_outliers = Vec::new();
    let mut torsion_outliers_ok = true;
    for (a, b) in [("I", "J"), ("J", "I"), ("I", "K"), ("K", "I"), ("K", "J"), ("J", "K")] {
        let c = named_check(&ring, &names, a, b)?;
        torsion_outliers_ok &= !c.free && c.outlier;
        torsion_outliers.push(c);
    }

    // displayed: r(I, A) = ([a,0,0; b+a,a,0; c+d,0,0], [0,0,0; a,0,0; d,0,0])
    let shape = ring.origin().matrix_shape().expect("matrix ring").clone();
    let mut matches_swapped = true;
    let mut free = true;
    for r in ring.elements() {
        let v = ring.coords(r).unwrap();
        let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
        let shown_first = shape.elem(&ring, &[a, 0, 0, (b + a) % 2, a, 0, (c + d) % 2, 0, 0]).unwrap();
        let shown_second = shape.elem(&ring, &[0, 0, 0, a, 0, 0, d, 0, 0]).unwrap();
        let image = Pair::new(names["I"], names["A"]).scale(&ring, r);
        matches_swapped &= image == Pair::new(shown_second, shown_first);
        if r != ring.zero() && image == Pair::new(ring.zero(), ring.zero()) {
            free = false;
        }
    }

    Ok(Example31Report {
        i2: show(&i2),
        generators_of_i2,
        generators_of_i2_ok,
        ij_sum: show(&ij),
        ij_sum_is_i1: ij == i1,
        i3_candidates: i3_candidates
            .iter()
            .map(|s| {
                let g = is_principal(&ring, s).expect("principal");
                (ring.label(g).to_string(), show(s))
            })
            .collect(),
        ij_sum_strictly_inside_i3,
        torsion_outliers,
        torsion_outliers_ok,
        displayed_product_matches_swapped: matches_swapped,
        displayed_product_free: free,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub unimodular: bool,
    pub free: bool,
    pub outlier: bool,
}

impl PairVerdict {
    pub fn of(ring: &FiniteRing, p: Pair) -> PairVerdict {
        PairVerdict { unimodular: is_unimodular(ring, p), free: is_free(ring, p), outlier: is_outlier(ring, p) }
    }
}

/// `(1 - t - y, t)` in the characteristic `p²` ring.
pub fn verify_char_p2(p: u32) -> Result<(String, PairVerdict)> {
    let ring = char_p2(p)?;
    let e = |c: [u32; 3]| ring.elem_from_coords(&c).expect("basis ring");
    let pair = Pair::new(e([1, p - 1, p - 1]), e([0, 1, 0]));
    Ok((pair.display(&ring).to_string(), PairVerdict::of(&ring, pair)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetryReport {
    pub p: u32,
    /// `v = (I, A)` as a pair over the ring, so `Rv` and left outliers.
    pub left: PairVerdict,
    /// The same pair over the opposite ring, so `vR` and right outliers.
    pub right: PairVerdict,
}

impl AsymmetryReport {
    pub fn passed(&self) -> bool {
        !self.left.unimodular
            && !self.right.unimodular
            && self.left.free
            && self.left.outlier
            && !self.right.free
            && !self.right.outlier
    }
}

/// Outlier status of `v = (I, A)` from both sides in `example31` over GF(p).
pub fn verify_asymmetry(p: u32) -> Result<AsymmetryReport> {
    let ring = example31(p)?;
    let i = matrix_elem(&ring, &[0, 0, 0, 1, 0, 0, 1, 0, 0])?;
    let a = matrix_elem(&ring, &[1, 0, 0, 1, 1, 0, 1, 0, 0])?;
    let v = Pair::new(i, a);
    let opposite = ring.opposite();
    Ok(AsymmetryReport { p, left: PairVerdict::of(&ring, v), right: PairVerdict::of(&opposite, v) })
}

/// `aR` for the least generator among the 8-element principal ideals
/// containing `I, J, K`; exposed for reporting.
pub fn example31_i3(ring: &FiniteRing) -> Result<Option<(Elem, RightIdealSet)>> {
    let names = named_elements_example31(ring)?;
    Ok(ring
        .elements()
        .map(|g| (g, principal_right_ideal(ring, g)))
        .find(|(_, s)| s.len() == 8 && ["I", "J", "K"].iter().all(|l| s.contains(names[l]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ternions_over_gf2() {
        let r = verify_ternions(2, &Budget::unlimited()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.exact_cross_check, Some(true));
    }

    #[test]
    fn t3_over_gf2() {
        let r = verify_t3(2, &Budget::unlimited()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.pair_orbits, r.submodule_orbits), (Some(6), Some(5)));
        assert!(r.exact_skip_reason.is_some());
    }

    #[test]
    fn field_order_guard() {
        assert!(matches!(verify_t3(5, &Budget::unlimited()), Err(VerifyError::Ring(_))));
    }

    #[test]
    fn zero_budget_returns_partial() {
        let e = verify_t3(2, &Budget::seconds(0.0)).unwrap_err();
        let partial = e.partial().unwrap();
        assert_eq!(partial.free_pairs, 2520);
        assert_eq!(partial.pair_orbits, None);
    }

    #[test]
    fn named_claims() {
        let r = verify_example31_named().unwrap();
        assert!(r.passed(), "{r:#?}");
        let letters: BTreeSet<&str> = r.i2.iter().map(String::as_str).collect();
        assert_eq!(letters, BTreeSet::from(["0", "A", "B", "C", "D", "I", "J", "K"]));
        assert_eq!(r.ij_sum.len(), 4);
        assert_eq!(r.i3_candidates.len(), 1);
    }
}

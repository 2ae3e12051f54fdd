//! Property suites over the catalog: ring laws, the ideal lattice, the pair
//! predicates and the `GL₂` action. Every property runs exhaustively on rings
//! of order at most [`EXHAUSTIVE_LAW_LIMIT`] and on seeded samples above.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::catalog::{catalog_build, matn};
use crate::checks::check_local_line;
use crate::error::Result;
use crate::ideal::{all_right_ideals, ideal_sum, is_principal, is_right_ideal, principal_right_ideal};
use crate::ideal::{right_ideal_generated, IdealRegistry};
use crate::orbit::{
    gl2_generators, invertible_by_determinant, invertible_by_kernel, invertible_matrices, is_invertible_mat2,
    mat2_apply, mat2_mul, orbit_invariant_violations, pair_orbits, Mat2, OrbitMode, EXACT_ORBIT_LIMIT,
};
use crate::pair::{
    classify_all_pairs, cyclic_submodule, free_submodule_classes, is_outlier, projective_line,
    AdmissibilityMode, Pair, PairAtlas,
};
use crate::ring::{direct_product, Elem, FiniteRing, EXHAUSTIVE_LAW_LIMIT};

pub const PROPERTY_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Sampled triples per law above the exhaustive limit.
pub const SAMPLED_TRIPLES: usize = 100_000;

/// Sampled pairs per pair property above the exhaustive limit.
pub const SAMPLED_PAIRS: usize = 4096;

/// Rings up to this order get the exhaustive `(r, x, y)` and `GL₂` scans.
pub const SMALL_RING_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    RingCore,
    IdealLattice,
    PairClassify,
    OrbitEngine,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::RingCore => "ring-core",
            Suite::IdealLattice => "ideal-lattice",
            Suite::PairClassify => "pair-classify",
            Suite::OrbitEngine => "orbit-engine",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub ring: String,
    pub suite: Suite,
    pub property: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub exhaustive: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub outcomes: Vec<PropertyOutcome>,
    /// Rings not reached before the budget ran out.
    pub skipped_rings: Vec<String>,
}

impl PropertyReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| o.failures > 0)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none() && self.skipped_rings.is_empty()
    }

    pub fn cases(&self) -> usize {
        self.outcomes.iter().map(|o| o.cases).sum()
    }
}

/// A named ring for the suites.
pub struct SuiteRing {
    pub name: String,
    pub ring: FiniteRing,
}

/// Every catalog ring of order at most 64, plus the order-81 members of the
/// `p = 3` families, which are sampled.
pub fn property_rings() -> Result<Vec<SuiteRing>> {
    let mut out = Vec::new();
    let mut push = |name: String, ring: FiniteRing| out.push(SuiteRing { name, ring });
    for (name, p) in [
        ("example31", 2),
        ("ternions", 2),
        ("ternions", 3),
        ("t3", 2),
        ("char_p2", 2),
        ("p4_second", 2),
    ] {
        push(format!("{name}({p})"), catalog_build(name, p, None)?);
    }
    for n in 2..=16 {
        push(format!("modint({n})"), catalog_build("modint", n, None)?);
    }
    for p in [2, 3, 5, 7, 11, 13] {
        push(format!("gf({p})"), catalog_build("gf", p, None)?);
    }
    push("matn(2,2)".into(), matn(2, 2)?);
    let gf = |p| catalog_build("gf", p, None);
    let modint = |n| catalog_build("modint", n, None);
    for (name, parts) in [
        ("gf(2)xgf(2)", vec![gf(2)?, gf(2)?]),
        ("gf(2)xgf(3)", vec![gf(2)?, gf(3)?]),
        ("gf(2)xgf(2)xgf(2)", vec![gf(2)?, gf(2)?, gf(2)?]),
        ("modint(4)xgf(2)", vec![modint(4)?, gf(2)?]),
        ("modint(4)xgf(3)", vec![modint(4)?, gf(3)?]),
        ("ternions(2)xgf(2)", vec![catalog_build("ternions", 2, None)?, gf(2)?]),
        ("gf(7)xgf(5)", vec![gf(7)?, gf(5)?]),
    ] {
        push(name.into(), direct_product(&parts)?);
    }
    for (name, p) in [("example31", 3), ("char_p2", 3), ("p4_second", 3)] {
        push(format!("{name}({p})"), catalog_build(name, p, None)?);
    }
    push("matn(3,2)".into(), matn(3, 2)?);
    Ok(out)
}

struct Ctx<'a> {
    name: &'a str,
    ring: &'a FiniteRing,
    exhaustive: bool,
    small: bool,
    atlas: PairAtlas,
    rng: ChaCha8Rng,
    out: Vec<PropertyOutcome>,
}

struct Tally<'c> {
    cases: usize,
    failures: usize,
    first: Option<String>,
    exhaustive: bool,
    suite: Suite,
    property: &'static str,
    sink: &'c mut Vec<PropertyOutcome>,
    ring: &'c str,
}

impl Tally<'_> {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }
}

impl Tally<'_> {
    fn bulk(&mut self, cases: usize, failures: usize, first: Option<String>) {
        self.cases += cases;
        self.failures += failures;
        if self.first.is_none() {
            self.first = first;
        }
    }
}

impl Drop for Tally<'_> {
    fn drop(&mut self) {
        self.sink.push(PropertyOutcome {
            ring: self.ring.to_string(),
            suite: self.suite,
            property: self.property,
            cases: self.cases,
            failures: self.failures,
            exhaustive: self.exhaustive,
            first_failure: self.first.take(),
        });
    }
}

impl<'a> Ctx<'a> {
    fn new(name: &'a str, ring: &'a FiniteRing) -> Ctx<'a> {
        Ctx {
            name,
            ring,
            exhaustive: ring.order() <= EXHAUSTIVE_LAW_LIMIT,
            small: ring.order() <= SMALL_RING_LIMIT,
            atlas: PairAtlas::new(ring),
            rng: ChaCha8Rng::seed_from_u64(PROPERTY_SEED ^ ring.order() as u64),
            out: Vec::new(),
        }
    }

    fn tally(&mut self, suite: Suite, property: &'static str, exhaustive: bool) -> Tally<'_> {
        Tally {
            cases: 0,
            failures: 0,
            first: None,
            exhaustive,
            suite,
            property,
            sink: &mut self.out,
            ring: self.name,
        }
    }

    fn elem(&mut self) -> Elem {
        Elem(self.rng.gen_range(0..self.ring.order()) as u16)
    }

    fn triples(&mut self) -> Vec<(Elem, Elem, Elem)> {
        let n = self.ring.order();
        if self.exhaustive {
            let e = |i: usize| Elem(i as u16);
            (0..n * n * n).map(|i| (e(i / (n * n)), e(i / n % n), e(i % n))).collect()
        } else {
            (0..SAMPLED_TRIPLES).map(|_| (self.elem(), self.elem(), self.elem())).collect()
        }
    }

    fn pairs(&mut self) -> Vec<Pair> {
        let n = self.ring.order();
        if self.exhaustive {
            (0..n * n).map(|i| Pair::from_index(i, n)).collect()
        } else {
            (0..SAMPLED_PAIRS).map(|_| Pair::new(self.elem(), self.elem())).collect()
        }
    }

    fn random_invertible(&mut self, gens: &[Mat2]) -> Mat2 {
        let mut m = Mat2::identity(self.ring);
        for _ in 0..self.rng.gen_range(1..12) {
            let g = gens[self.rng.gen_range(0..gens.len())];
            m = mat2_mul(self.ring, &m, &g);
        }
        m
    }
}

fn ring_core(cx: &mut Ctx) {
    let r = cx.ring;
    let triples = cx.triples();
    let ex = cx.exhaustive;
    let mut t = cx.tally(Suite::RingCore, "ring laws", ex);
    for &(x, y, z) in &triples {
        let ok = r.add(r.add(x, y), z) == r.add(x, r.add(y, z))
            && r.mul(r.mul(x, y), z) == r.mul(x, r.mul(y, z))
            && r.mul(x, r.add(y, z)) == r.add(r.mul(x, y), r.mul(x, z))
            && r.mul(r.add(x, y), z) == r.add(r.mul(x, z), r.mul(y, z))
            && r.add(x, y) == r.add(y, x)
            && r.add(x, r.zero()) == x
            && r.add(x, r.neg(x)) == r.zero()
            && r.mul(x, r.one()) == x
            && r.mul(r.one(), x) == x;
        t.check(ok, || format!("triple ({}, {}, {})", r.label(x), r.label(y), r.label(z)));
    }
    drop(t);

    let mut t = cx.tally(Suite::RingCore, "condition (F) and Dedekind-finite", true);
    t.check(r.check_condition_f(), || "condition (F) fails".into());
    t.check(r.is_dedekind_finite(), || "not Dedekind-finite".into());
    drop(t);

    let mut t = cx.tally(Suite::RingCore, "opposite is an involution", true);
    let back = r.opposite().opposite();
    t.check(back.add_table() == r.add_table() && back.mul_table() == r.mul_table(), || {
        "tables differ after two opposites".into()
    });
    drop(t);

    if r.factors().len() > 1 {
        let mut t = cx.tally(Suite::RingCore, "units of a product are componentwise", true);
        let mut expected: Vec<Elem> = vec![];
        let unit_lists: Vec<Vec<Elem>> = r.factors().iter().map(|f| f.units()).collect();
        let mut idx = vec![0usize; unit_lists.len()];
        'outer: loop {
            let parts: Vec<Elem> = idx.iter().zip(&unit_lists).map(|(&i, l)| l[i]).collect();
            expected.push(r.embed(&parts));
            for k in (0..idx.len()).rev() {
                idx[k] += 1;
                if idx[k] < unit_lists[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        expected.sort();
        t.check(expected == r.units(), || "units differ from the componentwise product".into());
    }
}

fn ideal_lattice(cx: &mut Ctx) {
    let r = cx.ring;
    let n = r.order();
    let pairs = cx.pairs();
    let ex = cx.exhaustive;
    let ideals = match all_right_ideals(r) {
        Ok(v) => v,
        Err(e) => {
            let mut t = cx.tally(Suite::IdealLattice, "right ideals enumerate", true);
            t.check(false, || e.to_string());
            return;
        }
    };

    let mut t = cx.tally(Suite::IdealLattice, "generated ideal is the sum of principals", ex);
    for &p in &pairs {
        let generated = right_ideal_generated(r, &[p.a, p.b]).expect("two generators");
        let (ia, ib) = (principal_right_ideal(r, p.a), principal_right_ideal(r, p.b));
        let mut mask = FixedBitSet::with_capacity(n);
        for &x in ia.members() {
            for &y in ib.members() {
                mask.insert(r.add(x, y).index());
            }
        }
        t.check(generated.mask() == &mask, || format!("pair {}", p.display(r)));
    }
    drop(t);

    let proper: Vec<_> = ideals.iter().filter(|i| i.is_proper(r)).collect();
    let mut t = cx.tally(Suite::IdealLattice, "three unimodularity conditions agree", ex);
    for &p in &pairs {
        let whole = right_ideal_generated(r, &[p.a, p.b]).expect("two generators").is_whole(r);
        let solvable = r.elements().any(|x| {
            let ax = r.mul(p.a, x);
            r.elements().any(|y| r.add(ax, r.mul(p.b, y)) == r.one())
        });
        let uncovered = !proper.iter().any(|i| i.contains(p.a) && i.contains(p.b));
        t.check(whole == solvable && solvable == uncovered, || {
            format!("pair {}: whole={whole} solvable={solvable} uncovered={uncovered}", p.display(r))
        });
    }
    drop(t);

    let mut t = cx.tally(Suite::IdealLattice, "ideal list is closed and complete at the ends", true);
    let set: BTreeSet<Vec<Elem>> = ideals.iter().map(|i| i.members().to_vec()).collect();
    t.check(ideals.first().is_some_and(|i| i.len() == 1), || "missing {0}".into());
    t.check(ideals.last().is_some_and(|i| i.is_whole(r)), || "missing R".into());
    for i in &ideals {
        t.check(is_right_ideal(r, i), || format!("not a right ideal: {:?}", i.labels(r)));
    }
    for (k, i) in ideals.iter().enumerate() {
        for j in &ideals[k + 1..] {
            let s = ideal_sum(r, i, j);
            t.check(set.contains(s.members()), || format!("sum outside the list: {:?}", s.labels(r)));
        }
    }
}

fn pair_classify(cx: &mut Ctx) {
    let r = cx.ring;
    let n = r.order();
    let ex = cx.exhaustive;
    let pairs = cx.pairs();
    let classification = classify_all_pairs(r, AdmissibilityMode::Auto);
    let searched = AdmissibilityMode::Auto.searches(r);

    let mut t = cx.tally(Suite::PairClassify, "admissible => unimodular => free", true);
    for row in &classification.rows {
        let ok = (!row.admissible || row.unimodular)
            && (!row.unimodular || row.free)
            && (row.free == row.torsion_witness.is_none())
            && (!row.outlier || !row.unimodular);
        t.check(ok, || format!("pair {}", row.pair.display(r)));
    }
    if searched {
        t.check(classification.summary.admissibility_mismatches == 0, || {
            format!("{} completion/unimodular mismatches", classification.summary.admissibility_mismatches)
        });
    }
    drop(t);

    if cx.small {
        let mut t = cx.tally(Suite::PairClassify, "left zero-divisor factor gives torsion", true);
        for s in r.elements().filter(|&s| r.is_left_zero_divisor(s)) {
            for i in 0..n * n {
                let q = Pair::from_index(i, n).scale(r, s);
                t.check(!crate::pair::is_free(r, q), || format!("{} with factor {}", q.display(r), r.label(s)));
            }
        }
    }

    let atlas = &cx.atlas;
    let mut failures_fz = Vec::new();
    let mut cases_fz = 0;
    for i in 0..n * n {
        let q = Pair::from_index(i, n);
        if atlas.free.contains(q) {
            continue;
        }
        cases_fz += 1;
        if cyclic_submodule(r, q).points.iter().any(|&p| atlas.free.contains(p)) {
            failures_fz.push(q);
        }
    }
    let mut t = cx.tally(Suite::PairClassify, "free submodules only lie in free submodules", true);
    let first = failures_fz.first().map(|q| format!("torsion pair {} contains a free pair", q.display(r)));
    t.bulk(cases_fz, failures_fz.len(), first);
    drop(t);

    let atlas = &cx.atlas;
    let mut results = Vec::new();
    let mut registry = IdealRegistry::new(r);
    let mut principal: HashMap<usize, bool> = HashMap::new();
    for &p in &pairs {
        if atlas.unimodular.contains(p) {
            continue;
        }
        let id = registry.generated_by_pair(r, p.a, p.b);
        let is_p = *principal.entry(id).or_insert_with(|| is_principal(r, registry.get(id)).is_some());
        if !is_p {
            results.push((p, atlas.is_outlier(p)));
        }
    }
    let mut t = cx.tally(Suite::PairClassify, "non-principal sum gives an outlier", ex);
    for (p, outlier) in results {
        t.check(outlier, || format!("pair {}", p.display(r)));
    }
    drop(t);

    let atlas = &cx.atlas;
    let classes = free_submodule_classes(r, &atlas.free);
    let verdicts: Vec<(Pair, bool)> = classes
        .iter()
        .map(|(g, gens)| {
            let unimodular = gens.iter().filter(|&&q| atlas.unimodular.contains(q)).count();
            (*g, unimodular == 0 || unimodular == gens.len())
        })
        .collect();
    let mut t = cx.tally(Suite::PairClassify, "unimodular submodules have only unimodular generators", true);
    for (g, ok) in verdicts {
        t.check(ok, || format!("submodule of {}", g.display(r)));
    }
    drop(t);

    let mut sizes = Vec::new();
    for &p in &pairs {
        sizes.push((p, cyclic_submodule(r, p).len() == n, cx.atlas.free.contains(p)));
    }
    let mut t = cx.tally(Suite::PairClassify, "submodule size is |R| iff free", ex);
    for (p, full, free) in sizes {
        t.check(full == free, || format!("pair {}", p.display(r)));
    }
    drop(t);

    let direct: Vec<Pair> = if cx.small { (0..n * n).map(|i| Pair::from_index(i, n)).collect() } else {
        pairs.iter().copied().take(256).collect()
    };
    let small = cx.small;
    let verdicts: Vec<(Pair, bool, bool)> =
        direct.iter().map(|&p| (p, is_outlier(r, p), cx.atlas.is_outlier(p))).collect();
    let mut t = cx.tally(Suite::PairClassify, "outliers by direct search match the hull", small);
    for (p, d, h) in verdicts {
        t.check(d == h, || format!("pair {}: direct={d} hull={h}", p.display(r)));
    }
    drop(t);

    if let Some(line) = check_local_line(r) {
        let mut t = cx.tally(Suite::PairClassify, "local ring projective line shape", true);
        t.check(line.holds(), || format!("{line:?}"));
    }
}

fn orbit_engine(cx: &mut Ctx) {
    let r = cx.ring;
    let n = r.order();
    let gens = gl2_generators(r);

    let mut samples = Vec::new();
    for _ in 0..500 {
        let p = Pair::new(cx.elem(), cx.elem());
        let m = cx.random_invertible(&gens);
        let k = cx.random_invertible(&gens);
        samples.push((p, m, k));
    }
    let mut t = cx.tally(Suite::OrbitEngine, "action laws", false);
    let id = Mat2::identity(r);
    for &(p, m, k) in &samples {
        let ok = mat2_apply(r, p, &id) == p
            && mat2_apply(r, mat2_apply(r, p, &m), &k) == mat2_apply(r, p, &mat2_mul(r, &m, &k))
            && is_invertible_mat2(r, &m);
        t.check(ok, || format!("pair {} with {}", p.display(r), m.display(r)));
    }
    drop(t);

    let matrices: Vec<Mat2> = if cx.small {
        invertible_matrices(r).expect("small ring")
    } else {
        samples.iter().map(|s| s.1).collect()
    };
    let pairs: Vec<Pair> = if cx.small {
        (0..n * n).map(|i| Pair::from_index(i, n)).collect()
    } else {
        samples.iter().map(|s| s.0).collect()
    };
    let small = cx.small;
    let atlas = &cx.atlas;
    let (mut cases, mut failures, mut first) = (0, 0, None);
    for m in &matrices {
        for &p in &pairs {
            let q = mat2_apply(r, p, m);
            cases += 1;
            let ok = atlas.free.contains(p) == atlas.free.contains(q)
                && atlas.unimodular.contains(p) == atlas.unimodular.contains(q);
            if !ok {
                failures += 1;
                first.get_or_insert_with(|| format!("{} -> {}", p.display(r), q.display(r)));
            }
        }
    }
    let mut t = cx.tally(Suite::OrbitEngine, "freeness and unimodularity are orbit invariants", small);
    t.bulk(cases, failures, first);
    drop(t);

    if r.is_commutative() {
        let mut mats = Vec::new();
        for _ in 0..2000 {
            mats.push(Mat2::new(cx.elem(), cx.elem(), cx.elem(), cx.elem()));
        }
        let mut t = cx.tally(Suite::OrbitEngine, "determinant agrees with kernel scan", false);
        for m in mats {
            t.check(invertible_by_determinant(r, &m) == invertible_by_kernel(r, &m), || {
                format!("{}", m.display(r))
            });
        }
    }

    let free = cx.atlas.free.clone();
    let bfs = pair_orbits(r, &free, OrbitMode::GeneratorBfs).expect("free pairs are closed under the action");
    let violations = orbit_invariant_violations(r, &bfs);
    let mut t = cx.tally(Suite::OrbitEngine, "generated ideal is constant on orbits", true);
    t.check(violations.is_empty(), || format!("{} pairs disagree", violations.len()));
    drop(t);

    let reference = if n <= EXACT_ORBIT_LIMIT {
        let exact = pair_orbits(r, &free, OrbitMode::Exact).expect("small ring");
        let same: bool = exact.assigned_pairs().eq(bfs.assigned_pairs());
        let mut t = cx.tally(Suite::OrbitEngine, "generator orbits equal exact orbits", true);
        t.check(same, || format!("exact {} orbits, generated {}", exact.len(), bfs.len()));
        drop(t);
        exact
    } else {
        bfs
    };
    let start = Pair::new(r.one(), r.zero());
    let o = reference.orbit_of(start).expect("(1, 0) is free");
    let induced: BTreeSet<Vec<Pair>> = reference.orbits[o]
        .members
        .iter()
        .map(|&p| cyclic_submodule(r, p).points)
        .collect();
    let line: BTreeSet<Vec<Pair>> =
        projective_line(r, AdmissibilityMode::Auto).into_iter().map(|s| s.points).collect();
    let mut t = cx.tally(Suite::OrbitEngine, "orbit of (1, 0) induces the projective line", n <= EXACT_ORBIT_LIMIT);
    t.check(induced == line, || format!("orbit gives {}, line has {}", induced.len(), line.len()));
}

/// Runs all four suites on one ring.
pub fn run_on_ring(name: &str, ring: &FiniteRing) -> Vec<PropertyOutcome> {
    let mut cx = Ctx::new(name, ring);
    ring_core(&mut cx);
    ideal_lattice(&mut cx);
    pair_classify(&mut cx);
    orbit_engine(&mut cx);
    cx.out
}

/// Runs the suites over `rings`, stopping between rings once the budget is spent.
pub fn run_property_suites(rings: &[SuiteRing], budget: &Budget) -> PropertyReport {
    let mut report = PropertyReport::default();
    for sr in rings {
        if budget.exhausted() {
            report.skipped_rings.push(sr.name.clone());
            continue;
        }
        report.outcomes.extend(run_on_ring(&sr.name, &sr.ring));
    }
    report
}

/// Outcomes grouped by suite: `(cases, failures)`.
pub fn by_suite(report: &PropertyReport) -> BTreeMap<Suite, (usize, usize)> {
    let mut m: BTreeMap<Suite, (usize, usize)> = BTreeMap::new();
    for o in &report.outcomes {
        let e = m.entry(o.suite).or_default();
        e.0 += o.cases;
        e.1 += o.failures;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::modint;

    #[test]
    fn z4_passes_every_suite() {
        let out = run_on_ring("modint(4)", &modint(4).unwrap());
        let suites: BTreeSet<Suite> = out.iter().map(|o| o.suite).collect();
        assert_eq!(suites.len(), 4);
        assert!(out.iter().all(|o| o.failures == 0), "{out:#?}");
    }
}

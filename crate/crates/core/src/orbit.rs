//! The right action of `GL₂(R)` on `R²` and orbit enumeration for pairs and
//! for free cyclic submodules.
//!
//! Two modes are offered. `Exact` enumerates every invertible matrix and is
//! limited to rings of at most [`EXACT_ORBIT_LIMIT`] elements. `GeneratorBfs`
//! takes connected components under transvections, unit diagonals and the
//! swap; this is the orbit partition of the subgroup those matrices generate,
//! which may in principle be finer than the `GL₂` partition.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{additive_generators, right_ideal_generated, IdealRegistry, RightIdealSet};
use crate::pair::{free_submodule_classes, is_free, Pair, PairSet};
use crate::ring::{Elem, FiniteRing};

/// Largest ring order for which all of `GL₂(R)` is enumerated.
pub const EXACT_ORBIT_LIMIT: usize = 16;

/// `[m11 m12; m21 m22]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub m11: Elem,
    pub m12: Elem,
    pub m21: Elem,
    pub m22: Elem,
}

impl Mat2 {
    pub const fn new(m11: Elem, m12: Elem, m21: Elem, m22: Elem) -> Mat2 {
        Mat2 { m11, m12, m21, m22 }
    }

    pub fn identity(ring: &FiniteRing) -> Mat2 {
        diag(ring, ring.one(), ring.one())
    }

    pub fn zero(ring: &FiniteRing) -> Mat2 {
        let z = ring.zero();
        Mat2::new(z, z, z, z)
    }

    pub fn swap(ring: &FiniteRing) -> Mat2 {
        Mat2::new(ring.zero(), ring.one(), ring.one(), ring.zero())
    }

    /// `[1 t; 0 1]`.
    pub fn upper(ring: &FiniteRing, t: Elem) -> Mat2 {
        Mat2::new(ring.one(), t, ring.zero(), ring.one())
    }

    /// `[1 0; t 1]`.
    pub fn lower(ring: &FiniteRing, t: Elem) -> Mat2 {
        Mat2::new(ring.one(), ring.zero(), t, ring.one())
    }

    pub fn display<'r>(&self, ring: &'r FiniteRing) -> Mat2Display<'r> {
        Mat2Display { ring, m: *self }
    }
}

pub struct Mat2Display<'r> {
    ring: &'r FiniteRing,
    m: Mat2,
}

impl fmt::Display for Mat2Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = |e| self.ring.label(e);
        write!(f, "[{} {}; {} {}]", l(self.m.m11), l(self.m.m12), l(self.m.m21), l(self.m.m22))
    }
}

/// `diag(u, v)` with proper zeros.
pub fn diag(ring: &FiniteRing, u: Elem, v: Elem) -> Mat2 {
    Mat2::new(u, ring.zero(), ring.zero(), v)
}

/// `(a, b)·M = (a m11 + b m21, a m12 + b m22)`.
#[inline]
pub fn mat2_apply(ring: &FiniteRing, p: Pair, m: &Mat2) -> Pair {
    Pair::new(
        ring.add(ring.mul(p.a, m.m11), ring.mul(p.b, m.m21)),
        ring.add(ring.mul(p.a, m.m12), ring.mul(p.b, m.m22)),
    )
}

pub fn mat2_mul(ring: &FiniteRing, m: &Mat2, n: &Mat2) -> Mat2 {
    let dot = |a, b, c, d| ring.add(ring.mul(a, b), ring.mul(c, d));
    Mat2::new(
        dot(m.m11, n.m11, m.m12, n.m21),
        dot(m.m11, n.m12, m.m12, n.m22),
        dot(m.m21, n.m11, m.m22, n.m21),
        dot(m.m21, n.m12, m.m22, n.m22),
    )
}

/// `v ↦ v·M` is injective on `R²` (hence bijective, hence `M` is invertible).
pub fn invertible_by_kernel(ring: &FiniteRing, m: &Mat2) -> bool {
    let z = ring.zero();
    ring.elements().all(|x| {
        ring.elements().all(|y| {
            (x == z && y == z) || mat2_apply(ring, Pair::new(x, y), m) != Pair::new(z, z)
        })
    })
}

/// `m11 m22 - m12 m21` is a unit. Only meaningful for commutative rings.
pub fn invertible_by_determinant(ring: &FiniteRing, m: &Mat2) -> bool {
    let det = ring.sub(ring.mul(m.m11, m.m22), ring.mul(m.m12, m.m21));
    ring.is_unit(det)
}

pub fn is_invertible_mat2(ring: &FiniteRing, m: &Mat2) -> bool {
    if ring.is_commutative() {
        invertible_by_determinant(ring, m)
    } else {
        invertible_by_kernel(ring, m)
    }
}

/// Transvections `[1 t; 0 1]`, `[1 0; t 1]` for every `t`, unit diagonals
/// `diag(u, 1)`, `diag(1, u)` and the swap, without deduplication.
pub fn gl2_generators(ring: &FiniteRing) -> Vec<Mat2> {
    let one = ring.one();
    let mut out = Vec::new();
    out.extend(ring.elements().map(|t| Mat2::upper(ring, t)));
    out.extend(ring.elements().map(|t| Mat2::lower(ring, t)));
    let units = ring.units();
    out.extend(units.iter().map(|&u| diag(ring, u, one)));
    out.extend(units.iter().map(|&u| diag(ring, one, u)));
    out.push(Mat2::swap(ring));
    out
}

/// A small generating set of the unit group, chosen greedily.
pub fn unit_group_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut group = FixedBitSet::with_capacity(ring.order());
    group.insert(ring.one().index());
    let mut gens = Vec::new();
    for u in ring.units() {
        if group.contains(u.index()) {
            continue;
        }
        gens.push(u);
        let mut queue: VecDeque<Elem> = group.ones().map(|i| Elem(i as u16)).collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = ring.mul(x, g);
                if !group.put(y.index()) {
                    queue.push_back(y);
                }
            }
        }
    }
    gens
}

/// Generates the same subgroup as [`gl2_generators`] with far fewer matrices:
/// transvections by additive generators of `R`, diagonals by generators of
/// the unit group, and the swap.
pub fn reduced_gl2_generators(ring: &FiniteRing) -> Vec<Mat2> {
    let mut all = FixedBitSet::with_capacity(ring.order());
    all.insert_range(..);
    let add_gens = additive_generators(ring, &all);
    let unit_gens = unit_group_generators(ring);
    let one = ring.one();
    let mut out = Vec::new();
    out.extend(add_gens.iter().map(|&t| Mat2::upper(ring, t)));
    out.extend(add_gens.iter().map(|&t| Mat2::lower(ring, t)));
    out.extend(unit_gens.iter().map(|&u| diag(ring, u, one)));
    out.extend(unit_gens.iter().map(|&u| diag(ring, one, u)));
    out.push(Mat2::swap(ring));
    out
}

/// Every element of `GL₂(R)`, for rings of at most [`EXACT_ORBIT_LIMIT`] elements.
pub fn invertible_matrices(ring: &FiniteRing) -> Result<Vec<Mat2>> {
    if ring.order() > EXACT_ORBIT_LIMIT {
        return Err(Error::CapacityExceeded { what: "ring order for exact GL2", limit: EXACT_ORBIT_LIMIT });
    }
    let els: Vec<Elem> = ring.elements().collect();
    let mut out = Vec::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let m = Mat2::new(a, b, c, d);
                    if invertible_by_kernel(ring, &m) {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitMode {
    Exact,
    GeneratorBfs,
}

impl fmt::Display for OrbitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitMode::Exact => "exact",
            OrbitMode::GeneratorBfs => "generator-bfs",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemKind {
    Pair,
    Submodule,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    /// Least member (for submodule orbits: least generating pair).
    pub representative: Pair,
    /// Pairs, or distinct submodules for submodule orbits.
    pub size: usize,
    /// Pairs, or the least generator of each submodule.
    pub members: Vec<Pair>,
    /// Id into [`OrbitTable::ideals`] of the representative's generated right ideal.
    pub ideal: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub kind: ItemKind,
    pub mode: OrbitMode,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
    pub ideals: Vec<RightIdealSet>,
    order: usize,
    // orbit index per pair of R², u32::MAX outside the input set
    assignment: Vec<u32>,
}

impl OrbitTable {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbit containing `p` (for submodule tables, the orbit of `R·p`).
    pub fn orbit_of(&self, p: Pair) -> Option<usize> {
        match self.assignment[p.index(self.order)] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn ideal_of(&self, orbit: usize) -> &RightIdealSet {
        &self.ideals[self.orbits[orbit].ideal]
    }

    /// Every pair with its orbit index.
    pub fn assigned_pairs(&self) -> impl Iterator<Item = (Pair, usize)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &o)| o != u32::MAX)
            .map(|(i, &o)| (Pair::from_index(i, self.order), o as usize))
    }
}

fn action_elements(ring: &FiniteRing, mode: OrbitMode) -> Result<Vec<Mat2>> {
    match mode {
        OrbitMode::Exact => invertible_matrices(ring),
        OrbitMode::GeneratorBfs => Ok(reduced_gl2_generators(ring)),
    }
}

/// Connected components of `pairs` under `moves`, discovered in index order so
/// that each component's first pair is its least member.
fn components(ring: &FiniteRing, pairs: &PairSet, moves: &[Mat2]) -> Result<(Vec<u32>, Vec<Vec<Pair>>)> {
    let n = ring.order();
    let mut comp = vec![u32::MAX; n * n];
    let mut groups: Vec<Vec<Pair>> = Vec::new();
    for start in pairs.iter() {
        if comp[start.index(n)] != u32::MAX {
            continue;
        }
        let id = groups.len() as u32;
        let mut members = vec![start];
        comp[start.index(n)] = id;
        let mut head = 0;
        while head < members.len() {
            let p = members[head];
            head += 1;
            for m in moves {
                let q = mat2_apply(ring, p, m);
                if !pairs.contains(q) {
                    return Err(Error::PreconditionViolated(format!(
                        "pair set is not closed under the action: {} * {} = {}",
                        p.display(ring),
                        m.display(ring),
                        q.display(ring)
                    )));
                }
                let slot = &mut comp[q.index(n)];
                if *slot == u32::MAX {
                    *slot = id;
                    members.push(q);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }
    Ok((comp, groups))
}

/// Orbits of `pairs` under `GL₂(R)` (or its generated subgroup in BFS mode).
pub fn pair_orbits(ring: &FiniteRing, pairs: &PairSet, mode: OrbitMode) -> Result<OrbitTable> {
    let moves = action_elements(ring, mode)?;
    let (assignment, groups) = components(ring, pairs, &moves)?;
    let mut registry = IdealRegistry::new(ring);
    let orbits = groups
        .into_iter()
        .map(|members| {
            let rep = members[0];
            Orbit {
                representative: rep,
                size: members.len(),
                ideal: registry.generated_by_pair(ring, rep.a, rep.b),
                members,
            }
        })
        .collect();
    Ok(OrbitTable {
        kind: ItemKind::Pair,
        mode,
        orbits,
        ideals: registry.ideals().to_vec(),
        order: ring.order(),
        assignment,
    })
}

/// Orbits of free cyclic submodules under `R(a, b)·M := R((a, b)·M)`.
///
/// `pairs` is the set of generators considered; every pair must be free and
/// the set closed under the action. Pair orbits are computed first and then
/// merged whenever two of them contain generators of the same submodule.
pub fn submodule_orbits(ring: &FiniteRing, pairs: &PairSet, mode: OrbitMode) -> Result<OrbitTable> {
    if let Some(p) = pairs.iter().find(|&p| !is_free(ring, p)) {
        return Err(Error::PreconditionViolated(format!(
            "{} does not generate a free submodule",
            p.display(ring)
        )));
    }
    let moves = action_elements(ring, mode)?;
    let (comp, groups) = components(ring, pairs, &moves)?;
    let classes = free_submodule_classes(ring, pairs);

    let mut parent: Vec<usize> = (0..groups.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (_, gens) in &classes {
        let first = comp[gens[0].index(ring.order())] as usize;
        for g in &gens[1..] {
            let (a, b) = (find(&mut parent, first), find(&mut parent, comp[g.index(ring.order())] as usize));
            if a != b {
                // keep the smaller id as root so roots follow discovery order
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    // roots in discovery order are sorted by least member
    let mut root_to_orbit = vec![usize::MAX; groups.len()];
    let mut orbit_members: Vec<Vec<Pair>> = Vec::new();
    for g in 0..groups.len() {
        let r = find(&mut parent, g);
        if root_to_orbit[r] == usize::MAX {
            root_to_orbit[r] = orbit_members.len();
            orbit_members.push(Vec::new());
        }
    }
    for (_, gens) in &classes {
        let r = find(&mut parent, comp[gens[0].index(ring.order())] as usize);
        orbit_members[root_to_orbit[r]].push(gens[0]);
    }
    let n = ring.order();
    let mut assignment = vec![u32::MAX; n * n];
    for (i, &c) in comp.iter().enumerate() {
        if c != u32::MAX {
            let r = find(&mut parent, c as usize);
            assignment[i] = root_to_orbit[r] as u32;
        }
    }
    let mut registry = IdealRegistry::new(ring);
    let orbits = orbit_members
        .into_iter()
        .map(|mut members| {
            members.sort_unstable();
            let rep = members[0];
            Orbit {
                representative: rep,
                size: members.len(),
                ideal: registry.generated_by_pair(ring, rep.a, rep.b),
                members,
            }
        })
        .collect();
    Ok(OrbitTable {
        kind: ItemKind::Submodule,
        mode,
        orbits,
        ideals: registry.ideals().to_vec(),
        order: n,
        assignment,
    })
}

/// `aR + bR`, constant on `GL₂`-orbits.
pub fn orbit_ideal_invariant(ring: &FiniteRing, p: Pair) -> RightIdealSet {
    right_ideal_generated(ring, &[p.a, p.b]).expect("two generators")
}

/// Members of `table` whose generated right ideal differs from their orbit's.
pub fn orbit_invariant_violations(ring: &FiniteRing, table: &OrbitTable) -> Vec<Pair> {
    let mut registry = IdealRegistry::new(ring);
    let expected: Vec<usize> = table
        .orbits
        .iter()
        .map(|o| registry.intern(table.ideals[o.ideal].clone()))
        .collect();
    table
        .assigned_pairs()
        .filter(|&(p, o)| registry.generated_by_pair(ring, p.a, p.b) != expected[o])
        .map(|(p, _)| p)
        .collect()
}

/// Searches for an invertible `M` with `p·M = q`, trying at most `limit`
/// candidate matrices.
pub fn find_connecting_matrix(ring: &FiniteRing, p: Pair, q: Pair, limit: usize) -> Option<Mat2> {
    // columns (m11, m21) with a m11 + b m21 = q.a, and likewise for q.b
    let column = |target: Elem| -> Vec<(Elem, Elem)> {
        ring.elements()
            .flat_map(|x| ring.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| ring.add(ring.mul(p.a, x), ring.mul(p.b, y)) == target)
            .collect()
    };
    let first = column(q.a);
    let second = column(q.b);
    let mut tried = 0;
    for &(m11, m21) in &first {
        for &(m12, m22) in &second {
            if tried >= limit {
                return None;
            }
            tried += 1;
            let m = Mat2::new(m11, m12, m21, m22);
            if invertible_by_kernel(ring, &m) {
                return Some(m);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::modint;

    fn p(a: u16, b: u16) -> Pair {
        Pair::new(Elem(a), Elem(b))
    }

    #[test]
    fn action_basics() {
        let r = modint(4).unwrap();
        let id = Mat2::identity(&r);
        assert_eq!(mat2_apply(&r, p(1, 2), &id), p(1, 2));
        assert_eq!(mat2_apply(&r, p(1, 2), &Mat2::swap(&r)), p(2, 1));
        assert_eq!(mat2_apply(&r, p(1, 2), &Mat2::lower(&r, r.one())), p(3, 2));
    }

    #[test]
    fn invertibility() {
        let r = modint(4).unwrap();
        assert!(is_invertible_mat2(&r, &Mat2::identity(&r)));
        assert!(!is_invertible_mat2(&r, &Mat2::zero(&r)));
        let m = diag(&r, Elem(1), Elem(2));
        assert!(!is_invertible_mat2(&r, &m));
        assert_eq!(mat2_apply(&r, p(0, 2), &m), p(0, 0));
        for m in invertible_matrices(&r).unwrap() {
            assert!(invertible_by_determinant(&r, &m));
        }
    }

    #[test]
    fn generator_lists() {
        let gf2 = modint(2).unwrap();
        let gens = gl2_generators(&gf2);
        assert_eq!(gens.len(), 7);
        assert!(gens.iter().all(|m| is_invertible_mat2(&gf2, m)));
        let z4 = modint(4).unwrap();
        assert!(gl2_generators(&z4).contains(&diag(&z4, Elem(3), z4.one())));
    }

    #[test]
    fn reduced_generators_give_the_same_orbits() {
        let rings = [
            modint(4).unwrap(),
            modint(6).unwrap(),
            crate::catalog::ternions(2).unwrap(),
            crate::catalog::example31(2).unwrap(),
        ];
        for r in &rings {
            let all = PairSet::full(r.order());
            let full = components(r, &all, &gl2_generators(r)).unwrap().1;
            let reduced = components(r, &all, &reduced_gl2_generators(r)).unwrap().1;
            assert_eq!(full, reduced);
            if r.order() <= 8 {
                assert_eq!(components(r, &all, &invertible_matrices(r).unwrap()).unwrap().1, full);
            }
        }
    }

    #[test]
    fn field_orbits() {
        let r = modint(3).unwrap();
        let free = PairSet::from_fn(&r, |q| is_free(&r, q));
        let pairs = pair_orbits(&r, &free, OrbitMode::GeneratorBfs).unwrap();
        assert_eq!(pairs.len(), 1);
        let subs = submodule_orbits(&r, &free, OrbitMode::Exact).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs.orbits[0].size, 4);
    }

    #[test]
    fn non_closed_set_is_rejected() {
        let r = modint(3).unwrap();
        let mut s = PairSet::empty(3);
        s.insert(p(1, 0));
        assert!(matches!(pair_orbits(&r, &s, OrbitMode::GeneratorBfs), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn exact_mode_guard() {
        let r = modint(17).unwrap();
        assert!(matches!(invertible_matrices(&r), Err(Error::CapacityExceeded { .. })));
    }
}

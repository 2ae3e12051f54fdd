//! Right ideals: principal ideals, generated ideals, and the full set of right
//! ideals of a finite ring. Left-sided questions go through
//! [`FiniteRing::opposite`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// Default bound on the number of right ideals enumerated.
pub const MAX_IDEALS: usize = 1 << 16;

/// A set of elements, sorted and duplicate free, with a membership mask.
///
/// Equality is set equality.
#[derive(Clone, Debug)]
pub struct RightIdealSet {
    members: Vec<Elem>,
    mask: FixedBitSet,
}

impl PartialEq for RightIdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for RightIdealSet {}

impl Hash for RightIdealSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl PartialOrd for RightIdealSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// By size, then members.
impl Ord for RightIdealSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl RightIdealSet {
    pub fn from_mask(mask: FixedBitSet) -> RightIdealSet {
        let members = mask.ones().map(|i| Elem(i as u16)).collect();
        RightIdealSet { members, mask }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e.index())
    }

    pub fn is_subset(&self, other: &RightIdealSet) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_proper(&self, ring: &FiniteRing) -> bool {
        !self.contains(ring.one())
    }

    pub fn is_whole(&self, ring: &FiniteRing) -> bool {
        self.len() == ring.order()
    }

    pub fn labels<'r>(&self, ring: &'r FiniteRing) -> Vec<&'r str> {
        self.members.iter().map(|&e| ring.label(e)).collect()
    }
}

/// Smallest set containing `start` and closed under adding each of `gens`.
fn translate_closure(ring: &FiniteRing, start: &FixedBitSet, gens: &[Elem]) -> FixedBitSet {
    let mut out = start.clone();
    for &g in gens {
        let mut queue: VecDeque<usize> = out.ones().collect();
        while let Some(x) = queue.pop_front() {
            let y = ring.add(Elem(x as u16), g).index();
            if !out.put(y) {
                queue.push_back(y);
            }
        }
    }
    out
}

/// Additive subgroup generated by `gens`.
pub fn additive_span(ring: &FiniteRing, gens: &[Elem]) -> FixedBitSet {
    let mut zero = FixedBitSet::with_capacity(ring.order());
    zero.insert(ring.zero().index());
    translate_closure(ring, &zero, gens)
}

/// A small additive generating set for an additive subgroup, chosen greedily
/// in index order.
pub fn additive_generators(ring: &FiniteRing, group: &FixedBitSet) -> Vec<Elem> {
    let mut span = FixedBitSet::with_capacity(ring.order());
    span.insert(ring.zero().index());
    let mut gens = Vec::new();
    for x in group.ones() {
        if !span.contains(x) {
            let g = Elem(x as u16);
            gens.push(g);
            span = translate_closure(ring, &span, &[g]);
        }
    }
    gens
}

/// `aR`.
pub fn principal_right_ideal(ring: &FiniteRing, a: Elem) -> RightIdealSet {
    RightIdealSet::from_mask(ring.right_multiples(a).clone())
}

/// `I + J` for additive subgroups.
pub fn ideal_sum(ring: &FiniteRing, i: &RightIdealSet, j: &RightIdealSet) -> RightIdealSet {
    if j.is_subset(i) {
        return i.clone();
    }
    if i.is_subset(j) {
        return j.clone();
    }
    let gens = additive_generators(ring, j.mask());
    RightIdealSet::from_mask(translate_closure(ring, i.mask(), &gens))
}

/// Smallest right ideal containing `gens`: the sum of their principal ideals.
pub fn right_ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> Result<RightIdealSet> {
    let (first, rest) = gens
        .split_first()
        .ok_or_else(|| Error::PreconditionViolated("generator set must be non-empty".into()))?;
    Ok(rest.iter().fold(principal_right_ideal(ring, *first), |acc, &g| {
        ideal_sum(ring, &acc, &principal_right_ideal(ring, g))
    }))
}

/// Contains zero, closed under addition and under right multiplication.
pub fn is_right_ideal(ring: &FiniteRing, set: &RightIdealSet) -> bool {
    set.contains(ring.zero())
        && set.members.iter().all(|&x| {
            set.members.iter().all(|&y| set.contains(ring.add(x, y)))
                && ring.elements().all(|r| set.contains(ring.mul(x, r)))
        })
}

/// Smallest generator `g` with `gR = ideal`, if any.
pub fn is_principal(ring: &FiniteRing, ideal: &RightIdealSet) -> Option<Elem> {
    // g in ideal implies gR ⊆ ideal, so equal sizes mean equal sets
    ideal
        .members()
        .iter()
        .copied()
        .find(|&g| ring.right_multiples(g).count_ones(..) == ideal.len())
}

/// Distinct principal right ideals, sorted.
pub fn principal_right_ideals(ring: &FiniteRing) -> Vec<RightIdealSet> {
    let set: HashSet<RightIdealSet> =
        ring.elements().map(|a| principal_right_ideal(ring, a)).collect();
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// Every right ideal, sorted by (size, members).
pub fn all_right_ideals(ring: &FiniteRing) -> Result<Vec<RightIdealSet>> {
    all_right_ideals_bounded(ring, MAX_IDEALS)
}

/// Join closure of the principal right ideals, failing once more than `limit`
/// ideals have been found.
pub fn all_right_ideals_bounded(ring: &FiniteRing, limit: usize) -> Result<Vec<RightIdealSet>> {
    let principals = principal_right_ideals(ring);
    if principals.len() > limit {
        return Err(Error::CapacityExceeded { what: "right ideal count", limit });
    }
    let mut known: HashSet<RightIdealSet> = principals.iter().cloned().collect();
    let mut queue: VecDeque<RightIdealSet> = principals.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for p in &principals {
            if p.is_subset(&x) {
                continue;
            }
            let y = ideal_sum(ring, &x, p);
            if !known.contains(&y) {
                known.insert(y.clone());
                if known.len() > limit {
                    return Err(Error::CapacityExceeded { what: "right ideal count", limit });
                }
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<_> = known.into_iter().collect();
    v.sort();
    Ok(v)
}

pub fn non_principal_right_ideals(ring: &FiniteRing) -> Result<Vec<RightIdealSet>> {
    Ok(all_right_ideals(ring)?
        .into_iter()
        .filter(|i| is_principal(ring, i).is_none())
        .collect())
}

/// Interns right ideals so reports can refer to them by id, and memoizes
/// `aR + bR` by the ids of the two principal ideals.
#[derive(Debug, Default)]
pub struct IdealRegistry {
    ideals: Vec<RightIdealSet>,
    ids: HashMap<RightIdealSet, usize>,
    principal_id: Vec<usize>,
    sums: HashMap<(usize, usize), usize>,
}

impl IdealRegistry {
    pub fn new(ring: &FiniteRing) -> IdealRegistry {
        let mut reg = IdealRegistry::default();
        reg.principal_id = ring
            .elements()
            .map(|a| reg.intern(principal_right_ideal(ring, a)))
            .collect();
        reg
    }

    pub fn intern(&mut self, ideal: RightIdealSet) -> usize {
        if let Some(&id) = self.ids.get(&ideal) {
            return id;
        }
        let id = self.ideals.len();
        self.ids.insert(ideal.clone(), id);
        self.ideals.push(ideal);
        id
    }

    pub fn get(&self, id: usize) -> &RightIdealSet {
        &self.ideals[id]
    }

    pub fn ideals(&self) -> &[RightIdealSet] {
        &self.ideals
    }

    pub fn id_of(&self, ideal: &RightIdealSet) -> Option<usize> {
        self.ids.get(ideal).copied()
    }

    /// Id of `aR + bR`.
    pub fn generated_by_pair(&mut self, ring: &FiniteRing, a: Elem, b: Elem) -> usize {
        let key = (self.principal_id[a.index()], self.principal_id[b.index()]);
        if let Some(&id) = self.sums.get(&key) {
            return id;
        }
        let sum = ideal_sum(ring, &self.ideals[key.0], &self.ideals[key.1]);
        let id = self.intern(sum);
        self.sums.insert(key, id);
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::modint;

    #[test]
    fn modint_ideals() {
        let r = modint(4).unwrap();
        assert_eq!(principal_right_ideal(&r, Elem(2)).members(), &[Elem(0), Elem(2)]);
        assert!(principal_right_ideal(&r, r.one()).is_whole(&r));
        let all = all_right_ideals(&r).unwrap();
        let sizes: Vec<usize> = all.iter().map(|i| i.len()).collect();
        assert_eq!(sizes, [1, 2, 4]);
        assert_eq!(is_principal(&r, &all[1]), Some(Elem(2)));
        assert_eq!(is_principal(&r, &all[2]), Some(r.one()));
        assert!(non_principal_right_ideals(&r).unwrap().is_empty());
        assert!(right_ideal_generated(&r, &[r.one()]).unwrap().is_whole(&r));
        assert!(right_ideal_generated(&r, &[]).is_err());
    }

    #[test]
    fn field_has_two_ideals() {
        let r = modint(3).unwrap();
        let all = all_right_ideals(&r).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|i| is_right_ideal(&r, i)));
    }

    #[test]
    fn capacity_bound() {
        let r = modint(12).unwrap();
        assert!(matches!(
            all_right_ideals_bounded(&r, 2),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn sums_in_z12() {
        let r = modint(12).unwrap();
        let i = right_ideal_generated(&r, &[Elem(4), Elem(6)]).unwrap();
        assert_eq!(i, principal_right_ideal(&r, Elem(2)));
        let mut reg = IdealRegistry::new(&r);
        let id = reg.generated_by_pair(&r, Elem(4), Elem(6));
        assert_eq!(reg.get(id), &i);
        assert_eq!(reg.generated_by_pair(&r, Elem(8), Elem(6)), id);
    }
}

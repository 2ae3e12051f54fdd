//! Finite associative rings with unity, stored as dense Cayley tables.
//!
//! Elements are indices `0..order`. When a ring is built from coordinates
//! (an additive basis of cyclic groups) the index is the mixed-radix value of
//! the coordinate vector with the first coordinate most significant, so index
//! order is the lexicographic order of the defining coordinates. Reports and
//! tie-breaks ("smallest by label order") use index order throughout.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::construct::MatrixShape;
use crate::error::{Error, Law, Result};
use crate::ideal::RightIdealSet;

/// Largest ring order accepted by any constructor.
pub const MAX_ORDER: usize = 4096;

/// Rings up to this order have their laws checked on every triple.
pub const EXHAUSTIVE_LAW_LIMIT: usize = 64;

/// Number of random triples checked per law above [`EXHAUSTIVE_LAW_LIMIT`].
pub const LAW_SAMPLES: usize = 100_000;

/// Seed for sampled law checks.
pub const LAW_SAMPLE_SEED: u64 = 0x5E_ED0F_4A11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_index(i: usize) -> Elem {
        debug_assert!(i < MAX_ORDER);
        Elem(i as u16)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Additive group as a direct sum of cyclic groups, one per named basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveBasis {
    pub names: Vec<String>,
    pub orders: Vec<u32>,
}

impl AdditiveBasis {
    pub fn group_order(&self) -> Option<usize> {
        self.orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o as usize))
    }

    /// Coordinates of the element with mixed-radix index `x`.
    pub fn coords(&self, mut x: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &o) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (x % o as usize) as u32;
            x /= o as usize;
        }
        out
    }

    pub fn index_of(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &o)| acc * o as usize + (c % o) as usize)
    }

    fn add_table(&self, n: usize) -> Vec<Elem> {
        let coords: Vec<Vec<u32>> = (0..n).map(|x| self.coords(x)).collect();
        let mut table = Vec::with_capacity(n * n);
        let mut buf = vec![0u32; self.orders.len()];
        for x in &coords {
            for y in &coords {
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = (x[k] + y[k]) % self.orders[k];
                }
                table.push(Elem::from_index(self.index_of(&buf)));
            }
        }
        table
    }
}

/// How a ring was obtained.
#[derive(Clone, Debug)]
pub enum Origin {
    Modint { n: u32 },
    MatrixShape(Arc<MatrixShape>),
    StructureConstants,
    Product(Vec<Origin>),
    Catalog { name: String, p: u32, inner: Box<Origin> },
    Opposite(Box<Origin>),
    Tables,
}

impl Origin {
    pub fn matrix_shape(&self) -> Option<&Arc<MatrixShape>> {
        match self {
            Origin::MatrixShape(s) => Some(s),
            Origin::Catalog { inner, .. } | Origin::Opposite(inner) => inner.matrix_shape(),
            _ => None,
        }
    }

    /// Catalog name and prime, looking through nothing but the catalog wrapper.
    pub fn catalog(&self) -> Option<(&str, u32)> {
        match self {
            Origin::Catalog { name, p, .. } => Some((name, *p)),
            _ => None,
        }
    }
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Modint { n } => write!(f, "modint({n})"),
            Origin::MatrixShape(s) => write!(f, "matrix_shape(p={}, size={})", s.p(), s.size()),
            Origin::StructureConstants => f.write_str("structure_constants"),
            Origin::Product(parts) => {
                f.write_str("product(")?;
                for (i, o) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{o}")?;
                }
                f.write_str(")")
            }
            Origin::Catalog { name, p, .. } => write!(f, "catalog:{name}:{p}"),
            Origin::Opposite(inner) => write!(f, "opposite({inner})"),
            Origin::Tables => f.write_str("tables"),
        }
    }
}

/// Raw tables handed to [`FiniteRing::from_tables`].
#[derive(Clone, Debug)]
pub struct RingTables {
    pub add: Vec<Elem>,
    pub mul: Vec<Elem>,
    pub labels: Vec<String>,
    pub origin: Origin,
    pub basis: Option<AdditiveBasis>,
}

/// An immutable finite ring with identity.
#[derive(Clone)]
pub struct FiniteRing {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
    origin: Origin,
    basis: Option<AdditiveBasis>,
    factors: Vec<Arc<FiniteRing>>,
    commutative: bool,
    inverse: Vec<Option<Elem>>,
    // {r : r a = 0} for each a
    left_ann: Vec<FixedBitSet>,
    // aR for each a
    right_multiples: Vec<FixedBitSet>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("origin", &self.origin.to_string())
            .finish_non_exhaustive()
    }
}

impl FiniteRing {
    /// Validates the tables against every ring law and finishes the ring.
    ///
    /// Zero and one are located by scanning. Laws involving triples are checked
    /// exhaustively up to [`EXHAUSTIVE_LAW_LIMIT`] elements and on
    /// [`LAW_SAMPLES`] seeded random triples above that.
    pub fn from_tables(t: RingTables) -> Result<FiniteRing> {
        let n = t.labels.len();
        if !(2..=MAX_ORDER).contains(&n) || t.add.len() != n * n || t.mul.len() != n * n {
            return Err(Error::AxiomViolation { law: Law::TableShape, witness: vec![] });
        }
        if let Some(bad) = t.add.iter().chain(&t.mul).find(|e| e.index() >= n) {
            return Err(Error::AxiomViolation { law: Law::TableShape, witness: vec![*bad] });
        }
        let add = |x: usize, y: usize| t.add[x * n + y].index();
        let mul = |x: usize, y: usize| t.mul[x * n + y].index();
        let e = Elem::from_index;
        let violation = |law, w: &[usize]| Error::AxiomViolation {
            law,
            witness: w.iter().map(|&i| e(i)).collect(),
        };

        let zero = (0..n)
            .find(|&z| (0..n).all(|x| add(z, x) == x && add(x, z) == x))
            .ok_or_else(|| violation(Law::AdditiveIdentity, &[]))?;
        for x in 0..n {
            for y in 0..n {
                if add(x, y) != add(y, x) {
                    return Err(violation(Law::AdditiveCommutativity, &[x, y]));
                }
            }
        }
        let mut neg = vec![Elem(0); n];
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| add(x, y) == zero)
                .ok_or_else(|| violation(Law::AdditiveInverse, &[x]))?;
            neg[x] = e(inv);
        }
        let one = (0..n)
            .find(|&u| (0..n).all(|x| mul(u, x) == x && mul(x, u) == x))
            .ok_or_else(|| violation(Law::MultiplicativeIdentity, &[]))?;
        if one == zero {
            return Err(violation(Law::NonTrivial, &[zero]));
        }

        let check = |x: usize, y: usize, z: usize| -> Result<()> {
            if add(add(x, y), z) != add(x, add(y, z)) {
                return Err(violation(Law::AdditiveAssociativity, &[x, y, z]));
            }
            if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                return Err(violation(Law::MultiplicativeAssociativity, &[x, y, z]));
            }
            if mul(x, add(y, z)) != add(mul(x, y), mul(x, z)) {
                return Err(violation(Law::LeftDistributivity, &[x, y, z]));
            }
            if mul(add(x, y), z) != add(mul(x, z), mul(y, z)) {
                return Err(violation(Law::RightDistributivity, &[x, y, z]));
            }
            Ok(())
        };
        for_each_law_triple(n, check)?;

        Ok(Self::finish(t, e(zero), e(one), neg, Vec::new()))
    }

    fn finish(
        t: RingTables,
        zero: Elem,
        one: Elem,
        neg: Vec<Elem>,
        factors: Vec<Arc<FiniteRing>>,
    ) -> FiniteRing {
        let n = t.labels.len();
        let mul = |x: usize, y: usize| t.mul[x * n + y];
        let mut inverse = vec![None; n];
        for (x, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| mul(x, y) == one && mul(y, x) == one)
                .map(Elem::from_index);
        }
        let mut left_ann = vec![FixedBitSet::with_capacity(n); n];
        let mut right_multiples = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for r in 0..n {
                if mul(r, a) == zero {
                    left_ann[a].insert(r);
                }
                right_multiples[a].insert(mul(a, r).index());
            }
        }
        let commutative = (0..n).all(|x| (x + 1..n).all(|y| mul(x, y) == mul(y, x)));
        FiniteRing {
            order: n,
            commutative,
            add: t.add,
            mul: t.mul,
            neg,
            zero,
            one,
            labels: t.labels,
            origin: t.origin,
            basis: t.basis,
            factors,
            inverse,
            left_ann,
            right_multiples,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order).map(Elem::from_index)
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elem_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label).map(Elem::from_index)
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn basis(&self) -> Option<&AdditiveBasis> {
        self.basis.as_ref()
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// Element with the given coordinates in the additive basis.
    pub fn elem_from_coords(&self, coords: &[u32]) -> Option<Elem> {
        let basis = self.basis.as_ref()?;
        (coords.len() == basis.orders.len()).then(|| Elem::from_index(basis.index_of(coords)))
    }

    pub fn coords(&self, a: Elem) -> Option<Vec<u32>> {
        self.basis.as_ref().map(|b| b.coords(a.index()))
    }

    /// Integer multiple `k·a`.
    pub fn times(&self, k: u64, a: Elem) -> Elem {
        let mut acc = self.zero;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    // ---- units and zero divisors ----

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse[a.index()]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a.index()].is_some()
    }

    /// Two-sided units in index order.
    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// `{r : r·a = 0}`.
    pub fn left_annihilator(&self, a: Elem) -> &FixedBitSet {
        &self.left_ann[a.index()]
    }

    /// `aR` as a membership mask.
    pub fn right_multiples(&self, a: Elem) -> &FixedBitSet {
        &self.right_multiples[a.index()]
    }

    /// `a·β = 0` for some `β != 0`. Zero counts.
    pub fn is_left_zero_divisor(&self, a: Elem) -> bool {
        self.elements().any(|b| b != self.zero && self.mul(a, b) == self.zero)
    }

    /// `α·a = 0` for some `α != 0`. Zero counts.
    pub fn is_right_zero_divisor(&self, a: Elem) -> bool {
        self.left_ann[a.index()].ones().any(|r| r != self.zero.index())
    }

    /// Every element is a unit or a (left or right) zero divisor.
    pub fn check_condition_f(&self) -> bool {
        self.elements().all(|a| {
            self.is_unit(a) || self.is_left_zero_divisor(a) || self.is_right_zero_divisor(a)
        })
    }

    pub fn is_dedekind_finite(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.mul(a, b) != self.one || self.mul(b, a) == self.one)
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// The maximal ideal when the non-units are closed under addition.
    pub fn local_maximal_ideal(&self) -> Option<RightIdealSet> {
        let non_units: Vec<Elem> = self.elements().filter(|&a| !self.is_unit(a)).collect();
        let mut mask = FixedBitSet::with_capacity(self.order);
        non_units.iter().for_each(|a| mask.insert(a.index()));
        let closed = non_units
            .iter()
            .all(|&x| non_units.iter().all(|&y| mask.contains(self.add(x, y).index())));
        closed.then(|| RightIdealSet::from_mask(mask))
    }

    pub fn is_local(&self) -> bool {
        self.local_maximal_ideal().is_some()
    }

    // ---- derived rings ----

    /// Same additive group, multiplication reversed.
    pub fn opposite(&self) -> FiniteRing {
        let n = self.order;
        let mut mul = vec![Elem(0); n * n];
        for x in 0..n {
            for y in 0..n {
                mul[x * n + y] = self.mul[y * n + x];
            }
        }
        let origin = match &self.origin {
            Origin::Opposite(inner) => (**inner).clone(),
            other => Origin::Opposite(Box::new(other.clone())),
        };
        let t = RingTables {
            add: self.add.clone(),
            mul,
            labels: self.labels.clone(),
            origin,
            basis: self.basis.clone(),
        };
        let factors = self.factors.iter().map(|f| Arc::new(f.opposite())).collect();
        Self::finish(t, self.zero, self.one, self.neg.clone(), factors)
    }

    pub(crate) fn with_origin(mut self, origin: Origin) -> FiniteRing {
        self.origin = origin;
        self
    }

    /// Factors of a direct product, empty for rings not built by [`direct_product`].
    pub fn factors(&self) -> &[Arc<FiniteRing>] {
        &self.factors
    }

    /// Component of `x` in factor `i`.
    pub fn project(&self, x: Elem, i: usize) -> Elem {
        let mut idx = x.index();
        for f in self.factors[i + 1..].iter() {
            idx /= f.order();
        }
        Elem::from_index(idx % self.factors[i].order())
    }

    pub fn embed(&self, parts: &[Elem]) -> Elem {
        debug_assert_eq!(parts.len(), self.factors.len());
        let idx = parts
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (p, f)| acc * f.order() + p.index());
        Elem::from_index(idx)
    }
}

/// Runs `f` on every triple (small rings) or on seeded random triples.
pub(crate) fn for_each_law_triple<E>(
    n: usize,
    mut f: impl FnMut(usize, usize, usize) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    if n <= EXHAUSTIVE_LAW_LIMIT {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    f(x, y, z)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(LAW_SAMPLE_SEED);
        for _ in 0..LAW_SAMPLES {
            f(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
        }
    }
    Ok(())
}

/// Direct product with componentwise tables and tuple labels.
///
/// The factors are retained so that componentwise claims can be checked through
/// [`FiniteRing::project`].
pub fn direct_product(factors: &[FiniteRing]) -> Result<FiniteRing> {
    if factors.is_empty() {
        return Err(Error::Spec("direct product of an empty list".into()));
    }
    if factors.len() == 1 {
        let mut r = factors[0].clone();
        r.factors = vec![Arc::new(factors[0].clone())];
        return Ok(r);
    }
    let n = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.order()))
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(Error::CapacityExceeded { what: "product order", limit: MAX_ORDER })?;

    let split = |mut x: usize| -> Vec<Elem> {
        let mut parts = vec![Elem(0); factors.len()];
        for (slot, f) in parts.iter_mut().zip(factors).rev() {
            *slot = Elem::from_index(x % f.order());
            x /= f.order();
        }
        parts
    };
    let join = |parts: &[Elem]| -> Elem {
        Elem::from_index(
            parts
                .iter()
                .zip(factors)
                .fold(0usize, |acc, (p, f)| acc * f.order() + p.index()),
        )
    };
    let split_all: Vec<Vec<Elem>> = (0..n).map(split).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    let mut buf = vec![Elem(0); factors.len()];
    for x in &split_all {
        for y in &split_all {
            for (k, f) in factors.iter().enumerate() {
                buf[k] = f.add(x[k], y[k]);
            }
            add.push(join(&buf));
            for (k, f) in factors.iter().enumerate() {
                buf[k] = f.mul(x[k], y[k]);
            }
            mul.push(join(&buf));
        }
    }
    let labels = split_all
        .iter()
        .map(|parts| {
            let inner: Vec<&str> = parts.iter().zip(factors).map(|(p, f)| f.label(*p)).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let basis = factors
        .iter()
        .map(|f| f.basis.clone())
        .collect::<Option<Vec<_>>>()
        .map(|bases| {
            let mut names = Vec::new();
            let mut orders = Vec::new();
            for (i, b) in bases.into_iter().enumerate() {
                names.extend(b.names.into_iter().map(|s| format!("{s}@{i}")));
                orders.extend(b.orders);
            }
            AdditiveBasis { names, orders }
        });
    let zero = join(&factors.iter().map(|f| f.zero()).collect::<Vec<_>>());
    let one = join(&factors.iter().map(|f| f.one()).collect::<Vec<_>>());
    let neg = split_all
        .iter()
        .map(|parts| {
            let p: Vec<Elem> = parts.iter().zip(factors).map(|(x, f)| f.neg(*x)).collect();
            join(&p)
        })
        .collect();
    let t = RingTables {
        add,
        mul,
        labels,
        origin: Origin::Product(factors.iter().map(|f| f.origin.clone()).collect()),
        basis,
    };
    let kept = factors.iter().map(|f| Arc::new(f.clone())).collect();
    Ok(FiniteRing::finish(t, zero, one, neg, kept))
}

/// Integers modulo `n`, labelled `"0".."n-1"`.
pub fn modint(n: u32) -> Result<FiniteRing> {
    if n < 2 || n as usize > MAX_ORDER {
        return Err(Error::Spec(format!("modint order must be in 2..={MAX_ORDER}, got {n}")));
    }
    let basis = AdditiveBasis { names: vec!["1".into()], orders: vec![n] };
    let size = n as usize;
    let add = basis.add_table(size);
    let mul = (0..size)
        .flat_map(|x| (0..size).map(move |y| Elem::from_index(x * y % size)))
        .collect();
    let t = RingTables {
        add,
        mul,
        labels: (0..n).map(|k| k.to_string()).collect(),
        origin: Origin::Modint { n },
        basis: Some(basis),
    };
    FiniteRing::from_tables(t)
}

pub(crate) fn additive_table(basis: &AdditiveBasis, n: usize) -> Vec<Elem> {
    basis.add_table(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> FiniteRing {
        modint(n).unwrap()
    }

    #[test]
    fn modint_arithmetic() {
        let r = z(4);
        assert_eq!(r.order(), 4);
        assert_eq!(r.labels(), ["0", "1", "2", "3"]);
        assert_eq!(r.add(Elem(2), Elem(3)), Elem(1));
        assert_eq!(r.mul(Elem(2), Elem(2)), Elem(0));
        assert_eq!(r.neg(Elem(1)), Elem(3));
    }

    #[test]
    fn units_and_zero_divisors() {
        assert_eq!(z(4).units(), vec![Elem(1), Elem(3)]);
        assert_eq!(z(3).units(), vec![Elem(1), Elem(2)]);
        let r = z(4);
        assert!(r.is_left_zero_divisor(Elem(2)));
        assert!(r.is_right_zero_divisor(Elem(2)));
        assert!(!r.is_left_zero_divisor(Elem(3)));
        assert!(r.is_left_zero_divisor(r.zero()));
        assert!(r.check_condition_f());
        assert!(r.is_dedekind_finite());
    }

    #[test]
    fn locality() {
        let m = z(4).local_maximal_ideal().unwrap();
        assert_eq!(m.members(), &[Elem(0), Elem(2)]);
        assert!(z(6).local_maximal_ideal().is_none());
        assert_eq!(z(3).local_maximal_ideal().unwrap().members(), &[Elem(0)]);
    }

    #[test]
    fn products() {
        let gf2 = z(2);
        let gf3 = z(3);
        let p = direct_product(&[gf2.clone(), gf3.clone()]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_commutative());
        assert_eq!(p.units().len(), 2);
        assert_eq!(p.label(p.one()), "(1,1)");
        // (1,1) generates the additive group, so p is cyclic of order 6
        assert_eq!(p.additive_order(p.one()), 6);

        let z2z2 = direct_product(&[gf2.clone(), gf2.clone()]).unwrap();
        let units: Vec<&str> = z2z2.units().iter().map(|&u| z2z2.label(u)).collect();
        assert_eq!(units, ["(1,1)"]);

        let single = direct_product(&[z(4)]).unwrap();
        assert_eq!(single.add_table(), z(4).add_table());
        assert_eq!(single.mul_table(), z(4).mul_table());
        assert_eq!(single.factors().len(), 1);

        for x in p.elements() {
            let parts = [p.project(x, 0), p.project(x, 1)];
            assert_eq!(p.embed(&parts), x);
        }
        assert!(direct_product(&[]).is_err());
    }

    #[test]
    fn opposite_of_commutative_ring_is_itself() {
        let r = z(6);
        let o = r.opposite();
        assert_eq!(o.mul_table(), r.mul_table());
        assert_eq!(o.add_table(), r.add_table());
    }

    #[test]
    fn rejects_broken_tables() {
        let r = z(3);
        let mut mul = r.mul_table().to_vec();
        // 1·1 = 2 breaks the identity
        mul[4] = Elem(2);
        let t = RingTables {
            add: r.add_table().to_vec(),
            mul,
            labels: r.labels().to_vec(),
            origin: Origin::Tables,
            basis: None,
        };
        assert!(matches!(FiniteRing::from_tables(t), Err(Error::AxiomViolation { .. })));
        assert!(modint(1).is_err());
    }
}

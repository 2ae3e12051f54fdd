//! Named rings and general constructors.

use std::collections::BTreeMap;

use crate::budget::{checkpoint, Budget, VerifyError};
use crate::construct::{is_prime, MatrixShape, StructureConstants};
use crate::error::{Error, Result};
use crate::pair::{free_submodule_classes, Pair, PairAtlas};
use crate::ring::{modint, AdditiveBasis, Elem, FiniteRing, Origin};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Params {
    Prime,
    Modulus,
    PrimeAndSize,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Params,
    pub description: &'static str,
    /// Order as a function of the parameter, for the `p`-parametrized entries.
    pub order_exponent: Option<u32>,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "example31",
        params: Params::Prime,
        description: "matrices [a,0,0; b,a,0; c,0,d] over GF(p), 30 outliers at p=2",
        order_exponent: Some(4),
    },
    CatalogEntry {
        name: "ternions",
        params: Params::Prime,
        description: "upper triangular 2x2 matrices over GF(p)",
        order_exponent: Some(3),
    },
    CatalogEntry {
        name: "t3",
        params: Params::Prime,
        description: "lower triangular 3x3 matrices over GF(p)",
        order_exponent: Some(6),
    },
    CatalogEntry {
        name: "char_p2",
        params: Params::Prime,
        description: "Z/p^2 + Z/p t + Z/p y with t^2=0, y^2=y, ty=0, yt=t",
        order_exponent: Some(4),
    },
    CatalogEntry {
        name: "p4_second",
        params: Params::Prime,
        description: "matrices [a,c,d; 0,b,0; 0,0,b] over GF(p)",
        order_exponent: Some(4),
    },
    CatalogEntry {
        name: "modint",
        params: Params::Modulus,
        description: "integers modulo n",
        order_exponent: None,
    },
    CatalogEntry {
        name: "gf",
        params: Params::Prime,
        description: "prime field GF(p)",
        order_exponent: Some(1),
    },
    CatalogEntry {
        name: "matn",
        params: Params::PrimeAndSize,
        description: "full n x n matrices over GF(p), n defaults to 2",
        order_exponent: None,
    },
];

pub fn catalog_entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

fn pattern(rows: &[&[&str]]) -> Vec<Vec<Option<String>>> {
    rows.iter()
        .map(|r| r.iter().map(|&c| (c != "0").then(|| c.to_string())).collect())
        .collect()
}

fn from_pattern(p: u32, rows: &[&[&str]]) -> Result<FiniteRing> {
    MatrixShape::new(p, &pattern(rows))?.build()
}

fn wrap(ring: FiniteRing, name: &str, p: u32) -> FiniteRing {
    let inner = Box::new(ring.origin().clone());
    ring.with_origin(Origin::Catalog { name: name.to_string(), p, inner })
}

fn require_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NonPrime(p as u64))
    }
}

pub fn example31(p: u32) -> Result<FiniteRing> {
    let r = from_pattern(p, &[&["a", "0", "0"], &["b", "a", "0"], &["c", "0", "d"]])?;
    Ok(wrap(r, "example31", p))
}

pub fn ternions(p: u32) -> Result<FiniteRing> {
    let r = from_pattern(p, &[&["a", "b"], &["0", "c"]])?;
    Ok(wrap(r, "ternions", p))
}

pub fn t3(p: u32) -> Result<FiniteRing> {
    let r = from_pattern(p, &[&["a", "0", "0"], &["b", "c", "0"], &["d", "e", "f"]])?;
    Ok(wrap(r, "t3", p))
}

pub fn p4_second(p: u32) -> Result<FiniteRing> {
    let r = from_pattern(p, &[&["a", "c", "d"], &["0", "b", "0"], &["0", "0", "b"]])?;
    Ok(wrap(r, "p4_second", p))
}

/// Basis products of the characteristic `p²` ring on `{1, t, y}`, in row-major
/// order over the basis. Products with `1` are forced; the other four are the
/// defining relations.
pub fn char_p2_constants(p: u32) -> StructureConstants {
    let (one, t, y, zero) = (vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]);
    StructureConstants {
        basis: AdditiveBasis {
            names: vec!["1".into(), "t".into(), "y".into()],
            orders: vec![p * p, p, p],
        },
        products: vec![
            one,          // 1*1
            t.clone(),    // 1*t
            y.clone(),    // 1*y
            t.clone(),    // t*1
            zero.clone(), // t*t
            zero,         // t*y
            y.clone(),    // y*1
            t,            // y*t
            y,            // y*y
        ],
    }
}

pub fn char_p2(p: u32) -> Result<FiniteRing> {
    require_prime(p)?;
    Ok(wrap(char_p2_constants(p).build()?, "char_p2", p))
}

pub fn gf(p: u32) -> Result<FiniteRing> {
    require_prime(p)?;
    Ok(wrap(modint(p)?, "gf", p))
}

/// Full `k×k` matrices over GF(p).
pub fn matn(p: u32, k: usize) -> Result<FiniteRing> {
    let names: Vec<Vec<String>> =
        (0..k).map(|i| (0..k).map(|j| format!("x{}{}", i + 1, j + 1)).collect()).collect();
    let rows: Vec<Vec<Option<String>>> =
        names.into_iter().map(|r| r.into_iter().map(Some).collect()).collect();
    let r = MatrixShape::new(p, &rows)?.build()?;
    Ok(wrap(r, "matn", p))
}

/// Builds a catalog ring. `n` is the modulus for `modint` (falling back to
/// `p`) and the matrix size for `matn` (default 2); other entries ignore it.
pub fn catalog_build(name: &str, p: u32, n: Option<u32>) -> Result<FiniteRing> {
    match name {
        "example31" => example31(p),
        "ternions" => ternions(p),
        "t3" => t3(p),
        "char_p2" => char_p2(p),
        "p4_second" => p4_second(p),
        "gf" => gf(p),
        "modint" => {
            let m = n.unwrap_or(p);
            Ok(wrap(modint(m)?, "modint", m))
        }
        "matn" => matn(p, n.unwrap_or(2) as usize),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Entries of the eight matrices named by letter in the p = 2 display of
/// `example31`, row-major.
pub const EXAMPLE31_LETTERS: [(&str, [u32; 9]); 8] = [
    ("A", [1, 0, 0, 1, 1, 0, 1, 0, 0]),
    ("B", [1, 0, 0, 1, 1, 0, 0, 0, 0]),
    ("C", [1, 0, 0, 0, 1, 0, 1, 0, 0]),
    ("D", [1, 0, 0, 0, 1, 0, 0, 0, 0]),
    ("I", [0, 0, 0, 1, 0, 0, 1, 0, 0]),
    ("J", [0, 0, 0, 1, 0, 0, 0, 0, 0]),
    ("K", [0, 0, 0, 0, 0, 0, 1, 0, 0]),
    ("0", [0; 9]),
];

/// The lettered elements of `example31`. Their entries are 0 and 1, so they
/// exist for every p, but the letters come from the p = 2 ring and the
/// lookup is only meaningful as a naming layer there and in its sibling
/// examples.
pub fn named_elements_example31(ring: &FiniteRing) -> Result<BTreeMap<&'static str, Elem>> {
    let wrong = || Error::WrongRing("expected the example31 catalog ring".into());
    match ring.origin().catalog() {
        Some(("example31", _)) => {}
        _ => return Err(wrong()),
    }
    let shape = ring.origin().matrix_shape().ok_or_else(wrong)?;
    EXAMPLE31_LETTERS
        .iter()
        .map(|(name, entries)| Ok((*name, shape.elem(ring, entries).ok_or_else(wrong)?)))
        .collect()
}

/// The matrix with `entries` in a matrix-shape ring.
pub fn matrix_elem(ring: &FiniteRing, entries: &[u32]) -> Result<Elem> {
    let shape = ring
        .origin()
        .matrix_shape()
        .ok_or_else(|| Error::WrongRing("ring is not built from a matrix shape".into()))?;
    shape
        .elem(ring, entries)
        .ok_or_else(|| Error::PreconditionViolated(format!("{} is not in the ring", shape.label(entries))))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourRingEntry {
    pub name: String,
    pub order: usize,
    pub commutative: bool,
    /// Free pairs that are outliers.
    pub free_outliers: usize,
    /// Distinct submodules those pairs generate.
    pub free_outlier_submodules: usize,
    /// Least free outlier, as labels.
    pub witness: Option<String>,
}

impl FourRingEntry {
    pub fn qualifies(&self) -> bool {
        !self.commutative && self.free_outliers > 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourRingsReport {
    pub p: u32,
    pub entries: Vec<FourRingEntry>,
}

impl FourRingsReport {
    pub fn all_qualify(&self) -> bool {
        self.entries.len() == FOUR_RINGS.len() && self.entries.iter().all(FourRingEntry::qualifies)
    }
}

/// The noncommutative rings of order at most `p⁴` with free outliers.
pub const FOUR_RINGS: [&str; 4] = ["ternions", "example31", "p4_second", "char_p2"];

/// For each of [`FOUR_RINGS`], checks noncommutativity and looks for an
/// outlier generating a free cyclic submodule.
pub fn four_rings_report(p: u32, budget: &Budget) -> Result<FourRingsReport, VerifyError<FourRingsReport>> {
    if p != 2 && p != 3 {
        return Err(Error::PreconditionViolated(format!("four-rings report needs p in {{2, 3}}, got {p}")).into());
    }
    let mut report = FourRingsReport { p, entries: Vec::new() };
    for name in FOUR_RINGS {
        checkpoint(budget, "four rings", &report)?;
        let ring = catalog_build(name, p, None)?;
        let atlas = PairAtlas::new(&ring);
        let free_outliers = atlas.free.intersection(&atlas.outliers());
        let witness: Option<Pair> = free_outliers.iter().next();
        report.entries.push(FourRingEntry {
            name: name.to_string(),
            order: ring.order(),
            commutative: ring.is_commutative(),
            free_outliers: free_outliers.len(),
            free_outlier_submodules: free_submodule_classes(&ring, &free_outliers).len(),
            witness: witness.map(|w| w.display(&ring).to_string()),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for p in [2, 3] {
            let p4 = (p as usize).pow(4);
            assert_eq!(example31(p).unwrap().order(), p4);
            assert_eq!(ternions(p).unwrap().order(), p4 / p as usize);
            assert_eq!(char_p2(p).unwrap().order(), p4);
            assert_eq!(p4_second(p).unwrap().order(), p4);
        }
        assert_eq!(t3(2).unwrap().order(), 64);
        assert_eq!(matn(2, 2).unwrap().order(), 16);
    }

    #[test]
    fn errors() {
        assert!(matches!(catalog_build("nope", 2, None), Err(Error::UnknownName(_))));
        assert!(matches!(catalog_build("ternions", 4, None), Err(Error::NonPrime(4))));
        assert!(matches!(gf(9), Err(Error::NonPrime(9))));
        let z4 = modint(4).unwrap();
        assert!(matches!(named_elements_example31(&z4), Err(Error::WrongRing(_))));
    }

    #[test]
    fn char_p2_relations() {
        let r = char_p2(3).unwrap();
        let e = |c: [u32; 3]| r.elem_from_coords(&c).unwrap();
        let (one, t, y) = (e([1, 0, 0]), e([0, 1, 0]), e([0, 0, 1]));
        assert_eq!(one, r.one());
        assert_eq!(r.mul(t, t), r.zero());
        assert_eq!(r.mul(y, y), y);
        assert_eq!(r.mul(t, y), r.zero());
        assert_eq!(r.mul(y, t), t);
        assert_eq!(r.additive_order(one), 9);
        assert!(!r.is_commutative());
    }

    #[test]
    fn letters_at_p2() {
        let r = example31(2).unwrap();
        let m = named_elements_example31(&r).unwrap();
        assert_eq!(m["0"], r.zero());
        assert_eq!(r.label(m["I"]), "[0,0,0;1,0,0;1,0,0]");
        assert_eq!(r.label(m["A"]), "[1,0,0;1,1,0;1,0,0]");
        // units are the matrices with a = d = 1
        let shape = r.origin().matrix_shape().unwrap();
        let expected: Vec<Elem> = r
            .elements()
            .filter(|&x| {
                let m = shape.matrix(&r.coords(x).unwrap());
                m[0] == 1 && m[8] == 1
            })
            .collect();
        assert_eq!(r.units(), expected);
        assert_eq!(expected.len(), 4);
        assert!(!r.is_unit(m["A"]));
    }
}

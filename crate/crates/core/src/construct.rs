//! Ring constructors from matrix patterns and from structure constants.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{additive_table, AdditiveBasis, Elem, FiniteRing, Origin, RingTables, MAX_ORDER};

/// One cell of a matrix pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Zero,
    Var(usize),
}

/// A subring of `k×k` matrices over GF(p) described by a pattern of tied
/// variables and forced zeros. Variables are numbered in row-major order of
/// first appearance; they are the ring's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixShape {
    p: u32,
    size: usize,
    cells: Vec<Cell>,
    vars: Vec<String>,
}

impl MatrixShape {
    /// `pattern[i][j]` is `None` for a forced zero and `Some(name)` for a variable.
    pub fn new(p: u32, pattern: &[Vec<Option<String>>]) -> Result<MatrixShape> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        let size = pattern.len();
        if size == 0 || pattern.iter().any(|row| row.len() != size) {
            return Err(Error::Spec("matrix pattern must be square and non-empty".into()));
        }
        let mut vars: Vec<String> = Vec::new();
        let mut cells = Vec::with_capacity(size * size);
        for entry in pattern.iter().flatten() {
            cells.push(match entry {
                None => Cell::Zero,
                Some(name) => {
                    let idx = vars.iter().position(|v| v == name).unwrap_or_else(|| {
                        vars.push(name.clone());
                        vars.len() - 1
                    });
                    Cell::Var(idx)
                }
            });
        }
        let order = (0..vars.len()).try_fold(1usize, |acc, _| acc.checked_mul(p as usize));
        match order {
            Some(n) if n <= MAX_ORDER => {}
            _ => return Err(Error::CapacityExceeded { what: "matrix ring order", limit: MAX_ORDER }),
        }
        Ok(MatrixShape { p, size, cells, vars })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.vars.len() as u32)
    }

    /// Row-major entries for a coordinate vector.
    pub fn matrix(&self, coords: &[u32]) -> Vec<u32> {
        self.cells
            .iter()
            .map(|c| match c {
                Cell::Zero => 0,
                Cell::Var(v) => coords[*v],
            })
            .collect()
    }

    /// Coordinates of a matrix, or `None` if it does not fit the pattern.
    pub fn coords_of(&self, entries: &[u32]) -> Option<Vec<u32>> {
        if entries.len() != self.cells.len() {
            return None;
        }
        let mut coords: Vec<Option<u32>> = vec![None; self.vars.len()];
        for (cell, &x) in self.cells.iter().zip(entries) {
            let x = x % self.p;
            match cell {
                Cell::Zero if x != 0 => return None,
                Cell::Zero => {}
                Cell::Var(v) => match coords[*v] {
                    Some(prev) if prev != x => return None,
                    _ => coords[*v] = Some(x),
                },
            }
        }
        coords.into_iter().collect()
    }

    fn basis(&self) -> AdditiveBasis {
        AdditiveBasis { names: self.vars.clone(), orders: vec![self.p; self.vars.len()] }
    }

    pub fn label(&self, entries: &[u32]) -> String {
        let rows: Vec<String> = entries
            .chunks(self.size)
            .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }

    /// Element of `ring` (built from this shape) with the given entries.
    pub fn elem(&self, ring: &FiniteRing, entries: &[u32]) -> Option<Elem> {
        ring.elem_from_coords(&self.coords_of(entries)?)
    }

    /// Builds the ring, failing if the pattern is not closed under products.
    pub fn build(self) -> Result<FiniteRing> {
        let n = self.order();
        let basis = self.basis();
        let k = self.size;
        let p = self.p as u64;
        let mats: Vec<Vec<u32>> = (0..n).map(|x| self.matrix(&basis.coords(x))).collect();
        let mut mul = Vec::with_capacity(n * n);
        let mut prod = vec![0u32; k * k];
        for (xi, x) in mats.iter().enumerate() {
            for (yi, y) in mats.iter().enumerate() {
                for i in 0..k {
                    for j in 0..k {
                        let s: u64 = (0..k).map(|l| x[i * k + l] as u64 * y[l * k + j] as u64).sum();
                        prod[i * k + j] = (s % p) as u32;
                    }
                }
                let coords = self.coords_of(&prod).ok_or_else(|| {
                    Error::Spec(format!(
                        "matrix pattern not closed under multiplication: {} * {} = {}",
                        self.label(&mats[xi]),
                        self.label(&mats[yi]),
                        self.label(&prod)
                    ))
                })?;
                mul.push(Elem(basis.index_of(&coords) as u16));
            }
        }
        let labels = mats.iter().map(|m| self.label(m)).collect();
        let add = additive_table(&basis, n);
        let t = RingTables {
            add,
            mul,
            labels,
            origin: Origin::MatrixShape(Arc::new(self)),
            basis: Some(basis),
        };
        FiniteRing::from_tables(t)
    }
}

/// A ring on `⊕ Z/(orders[i])` given by the products of basis elements.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub basis: AdditiveBasis,
    /// `products[i * k + j]` = coordinates of `e_i · e_j`.
    pub products: Vec<Vec<u32>>,
}

impl StructureConstants {
    pub fn build(self) -> Result<FiniteRing> {
        let k = self.basis.orders.len();
        if k == 0 || self.products.len() != k * k {
            return Err(Error::Spec("structure constants need k*k basis products".into()));
        }
        if self.basis.orders.iter().any(|&o| o < 2) {
            return Err(Error::Spec("cyclic orders must be at least 2".into()));
        }
        let n = self
            .basis
            .group_order()
            .filter(|&n| n <= MAX_ORDER)
            .ok_or(Error::CapacityExceeded { what: "ring order", limit: MAX_ORDER })?;
        let orders = &self.basis.orders;
        // c_i is only defined mod orders[i], so orders[i]·(e_i e_j) must vanish
        for i in 0..k {
            for j in 0..k {
                let s = &self.products[i * k + j];
                if s.len() != k {
                    return Err(Error::Spec("basis product has wrong coordinate count".into()));
                }
                for m in [orders[i], orders[j]] {
                    if s.iter().zip(orders).any(|(&c, &o)| !(c as u64 * m as u64).is_multiple_of(o as u64)) {
                        return Err(Error::Spec(format!(
                            "product {}*{} is not well defined for the given additive orders",
                            self.basis.names[i], self.basis.names[j]
                        )));
                    }
                }
            }
        }
        let coords: Vec<Vec<u32>> = (0..n).map(|x| self.basis.coords(x)).collect();
        let mut mul = Vec::with_capacity(n * n);
        let mut acc = vec![0u64; k];
        for x in &coords {
            for y in &coords {
                acc.iter_mut().for_each(|a| *a = 0);
                for i in 0..k {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        let c = x[i] as u64 * y[j] as u64;
                        if c == 0 {
                            continue;
                        }
                        for (slot, &s) in acc.iter_mut().zip(&self.products[i * k + j]) {
                            *slot += c * s as u64;
                        }
                    }
                }
                let out: Vec<u32> =
                    acc.iter().zip(orders).map(|(&a, &o)| (a % o as u64) as u32).collect();
                mul.push(Elem(self.basis.index_of(&out) as u16));
            }
        }
        let labels = coords.iter().map(|c| format_combination(&self.basis, c)).collect();
        let add = additive_table(&self.basis, n);
        let t = RingTables {
            add,
            mul,
            labels,
            origin: Origin::StructureConstants,
            basis: Some(self.basis),
        };
        FiniteRing::from_tables(t)
    }

    /// Reads the basis products back out of a ring that has an additive basis.
    pub fn of_ring(ring: &FiniteRing) -> Result<StructureConstants> {
        let basis = ring
            .basis()
            .cloned()
            .ok_or_else(|| Error::Spec("ring has no additive basis".into()))?;
        let k = basis.orders.len();
        let unit = |i: usize| {
            let mut c = vec![0u32; k];
            c[i] = 1;
            ring.elem_from_coords(&c).unwrap()
        };
        let mut products = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                products.push(basis.coords(ring.mul(unit(i), unit(j)).index()));
            }
        }
        Ok(StructureConstants { basis, products })
    }
}

/// Formats coordinates as `c*name + ...`, with a bare integer for the basis
/// element named `1` and `0` for the zero vector.
pub fn format_combination(basis: &AdditiveBasis, coords: &[u32]) -> String {
    let terms: Vec<String> = basis
        .names
        .iter()
        .zip(coords)
        .filter(|(_, &c)| c != 0)
        .map(|(name, &c)| match (name.as_str(), c) {
            ("1", c) => c.to_string(),
            (name, 1) => name.to_string(),
            (name, c) => format!("{c}*{name}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Parses an integer combination of basis names such as `1-t-y`, `2*t + y`
/// or `0`. A bare integer is a multiple of the basis element named `1`.
pub fn parse_combination(basis: &AdditiveBasis, text: &str) -> std::result::Result<Vec<u32>, String> {
    let index: HashMap<&str, usize> =
        basis.names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut acc = vec![0i64; basis.names.len()];
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1i64;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1;
                pos += 1
            }
            _ if !first => return Err(format!("expected `+` or `-` at offset {pos}")),
            _ => {}
        }
        first = false;
        let end = s[pos..].find(['+', '-']).map_or(s.len(), |e| pos + e);
        let term = &s[pos..end];
        if term.is_empty() {
            return Err(format!("empty term at offset {pos}"));
        }
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => {
                (c.parse::<i64>().map_err(|_| format!("bad coefficient `{c}`"))?, Some(n))
            }
            None => match term.parse::<i64>() {
                Ok(c) => (c, None),
                Err(_) => (1, Some(term)),
            },
        };
        match name {
            Some(name) => {
                let i = *index.get(name).ok_or_else(|| format!("unknown basis element `{name}`"))?;
                acc[i] += sign * coef;
            }
            None if coef == 0 => {}
            None => {
                let i = *index
                    .get("1")
                    .ok_or_else(|| "integer term needs a basis element named `1`".to_string())?;
                acc[i] += sign * coef;
            }
        }
        pos = end;
    }
    Ok(acc
        .iter()
        .zip(&basis.orders)
        .map(|(&a, &o)| a.rem_euclid(o as i64) as u32)
        .collect())
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Law;

    fn pat(rows: &[&[&str]]) -> Vec<Vec<Option<String>>> {
        rows.iter()
            .map(|r| r.iter().map(|s| (*s != "0").then(|| s.to_string())).collect())
            .collect()
    }

    #[test]
    fn tied_pattern_builds() {
        let shape = MatrixShape::new(2, &pat(&[&["a", "0", "0"], &["b", "a", "0"], &["c", "0", "d"]])).unwrap();
        assert_eq!(shape.vars(), ["a", "b", "c", "d"]);
        let r = shape.build().unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.label(r.one()), "[1,0,0;0,1,0;0,0,1]");
        assert_eq!(r.label(r.zero()), "[0,0,0;0,0,0;0,0,0]");
    }

    #[test]
    fn open_pattern_is_rejected() {
        // [[0,a],[a,0]] squares onto the diagonal
        let err = MatrixShape::new(2, &pat(&[&["0", "a"], &["a", "0"]])).unwrap().build();
        assert!(matches!(err, Err(Error::Spec(_))));
        // closed but without an identity
        let err = MatrixShape::new(2, &pat(&[&["a", "b"], &["0", "0"]])).unwrap().build();
        assert!(matches!(
            err,
            Err(Error::AxiomViolation { law: Law::MultiplicativeIdentity, .. })
        ));
        assert!(matches!(MatrixShape::new(4, &pat(&[&["a"]])), Err(Error::NonPrime(4))));
    }

    fn basis(names: &[&str], orders: &[u32]) -> AdditiveBasis {
        AdditiveBasis { names: names.iter().map(|s| s.to_string()).collect(), orders: orders.to_vec() }
    }

    #[test]
    fn combinations() {
        let b = basis(&["1", "t", "y"], &[4, 2, 2]);
        assert_eq!(parse_combination(&b, "1-t-y").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_combination(&b, "0").unwrap(), vec![0, 0, 0]);
        assert_eq!(parse_combination(&b, " -1 + 2*t ").unwrap(), vec![3, 0, 0]);
        assert_eq!(parse_combination(&b, "3*1+y").unwrap(), vec![3, 0, 1]);
        assert!(parse_combination(&b, "z").is_err());
        assert!(parse_combination(&b, "t+").is_err());
        assert_eq!(format_combination(&b, &[3, 1, 0]), "3+t");
        assert_eq!(format_combination(&b, &[0, 0, 0]), "0");
        for x in 0..16 {
            let c = b.coords(x);
            assert_eq!(parse_combination(&b, &format_combination(&b, &c)).unwrap(), c);
        }
    }

    #[test]
    fn non_associative_constants_are_rejected() {
        // x*x = y, y*x = x, x*y = 0: (xx)x = x but x(xx) = 0
        let b = basis(&["1", "x", "y"], &[2, 2, 2]);
        let products = vec![
            vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1],
            vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0],
            vec![0, 0, 1], vec![0, 1, 0], vec![0, 0, 0],
        ];
        let sc = StructureConstants { basis: b, products };
        assert!(matches!(
            sc.build(),
            Err(Error::AxiomViolation { law: Law::MultiplicativeAssociativity, .. })
        ));
    }

    #[test]
    fn ill_defined_constants_are_rejected() {
        // t has order 2 but t*t = 1 has order 4
        let b = basis(&["1", "t"], &[4, 2]);
        let sc = StructureConstants {
            basis: b,
            products: vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![1, 0]],
        };
        assert!(matches!(sc.build(), Err(Error::Spec(_))));
    }
}

//! The JSON ring-spec format: one ring per document, tagged by `kind`.
//!
//! ```json
//! {"kind":"modint","n":4}
//! {"kind":"matrix_shape","p":2,"size":3,"pattern":[["a",0,0],["b","a",0],["c",0,"d"]]}
//! {"kind":"structure_constants","char_orders":[4,2,2],"basis":["1","t","y"],
//!  "mul":{"1*1":"1","t*t":"0","y*t":"t", "...":"..."}}
//! {"kind":"product","factors":[{"kind":"modint","n":4},{"kind":"catalog","name":"gf","p":3}]}
//! {"kind":"catalog","name":"example31","p":2}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_build, catalog_entry, Params};
use crate::construct::{format_combination, parse_combination, MatrixShape, StructureConstants};
use crate::error::{Error, Result};
use crate::ring::{direct_product, modint, AdditiveBasis, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Modint {
        n: u32,
    },
    MatrixShape {
        p: u32,
        size: usize,
        pattern: Vec<Vec<PatternEntry>>,
    },
    StructureConstants {
        char_orders: Vec<u32>,
        basis: Vec<String>,
        /// `"x*y"` to an integer combination of basis names.
        mul: BTreeMap<String, String>,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Catalog {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u32>,
    },
}

/// A matrix-pattern cell: the number 0 or a variable name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternEntry {
    Zero(u32),
    Var(String),
}

fn parse_error(position: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { position: position.into(), message: message.into() }
}

/// Parses and validates a ring spec. Errors carry a line and column for
/// syntax problems and a field path for semantic ones.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let spec: RingSpec = serde_json::from_str(text).map_err(|e| {
        parse_error(format!("line {}, column {}", e.line(), e.column()), strip_position(&e.to_string()))
    })?;
    validate(&spec, "")?;
    Ok(spec)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn field(path: &str, name: &str) -> String {
    if path.is_empty() {
        name.to_string()
    } else {
        format!("{path}.{name}")
    }
}

fn valid_basis_name(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(|c| c.is_whitespace() || "+-*".contains(c))
        && (name == "1" || !name.chars().all(|c| c.is_ascii_digit()))
}

fn validate(spec: &RingSpec, path: &str) -> Result<()> {
    match spec {
        RingSpec::Modint { n } => {
            if *n < 2 {
                return Err(parse_error(field(path, "n"), "modulus must be at least 2"));
            }
        }
        RingSpec::MatrixShape { size, pattern, .. } => {
            if *size == 0 || pattern.len() != *size {
                return Err(parse_error(field(path, "pattern"), format!("expected {size} rows")));
            }
            for (i, row) in pattern.iter().enumerate() {
                if row.len() != *size {
                    return Err(parse_error(
                        field(path, &format!("pattern[{i}]")),
                        format!("expected {size} entries"),
                    ));
                }
                for (j, cell) in row.iter().enumerate() {
                    let bad = match cell {
                        PatternEntry::Zero(0) => None,
                        PatternEntry::Zero(k) => Some(format!("forced entries must be 0, got {k}")),
                        PatternEntry::Var(v) if v.is_empty() => Some("empty variable name".into()),
                        PatternEntry::Var(_) => None,
                    };
                    if let Some(msg) = bad {
                        return Err(parse_error(field(path, &format!("pattern[{i}][{j}]")), msg));
                    }
                }
            }
        }
        RingSpec::StructureConstants { char_orders, basis, mul } => {
            if basis.is_empty() || char_orders.len() != basis.len() {
                return Err(parse_error(
                    field(path, "char_orders"),
                    "need one additive order per basis element",
                ));
            }
            if let Some(i) = char_orders.iter().position(|&o| o < 2) {
                return Err(parse_error(field(path, &format!("char_orders[{i}]")), "order must be at least 2"));
            }
            for (i, name) in basis.iter().enumerate() {
                if !valid_basis_name(name) {
                    return Err(parse_error(
                        field(path, &format!("basis[{i}]")),
                        format!("invalid basis name {name:?}"),
                    ));
                }
                if basis[..i].contains(name) {
                    return Err(parse_error(
                        field(path, &format!("basis[{i}]")),
                        format!("duplicate basis name {name:?}"),
                    ));
                }
            }
            let b = AdditiveBasis { names: basis.clone(), orders: char_orders.clone() };
            for key in mul.keys() {
                let known = key
                    .split_once('*')
                    .is_some_and(|(x, y)| basis.iter().any(|n| n == x) && basis.iter().any(|n| n == y));
                if !known {
                    return Err(parse_error(
                        field(path, &format!("mul[{key:?}]")),
                        "key must be x*y for basis names x and y",
                    ));
                }
            }
            for x in basis {
                for y in basis {
                    let key = format!("{x}*{y}");
                    let value = mul
                        .get(&key)
                        .ok_or_else(|| parse_error(field(path, "mul"), format!("missing product {key:?}")))?;
                    parse_combination(&b, value)
                        .map_err(|m| parse_error(field(path, &format!("mul[{key:?}]")), m))?;
                }
            }
        }
        RingSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(parse_error(field(path, "factors"), "product needs at least one factor"));
            }
            for (i, f) in factors.iter().enumerate() {
                validate(f, &field(path, &format!("factors[{i}]")))?;
            }
        }
        RingSpec::Catalog { name, p, n } => {
            let entry = catalog_entry(name)
                .ok_or_else(|| parse_error(field(path, "name"), format!("unknown catalog ring {name:?}")))?;
            let ok = match entry.params {
                Params::Modulus => p.is_some() || n.is_some(),
                Params::Prime | Params::PrimeAndSize => p.is_some(),
            };
            if !ok {
                return Err(parse_error(field(path, "p"), format!("catalog ring {name:?} needs a parameter")));
            }
        }
    }
    Ok(())
}

/// Builds the ring a spec describes, checking every ring law.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing> {
    match spec {
        RingSpec::Modint { n } => modint(*n),
        RingSpec::MatrixShape { p, size, pattern } => {
            if pattern.len() != *size {
                return Err(Error::Spec(format!("pattern has {} rows, size is {size}", pattern.len())));
            }
            let rows: Vec<Vec<Option<String>>> = pattern
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| match c {
                            PatternEntry::Zero(0) => Ok(None),
                            PatternEntry::Zero(k) => Err(Error::Spec(format!("forced entry {k} is not 0"))),
                            PatternEntry::Var(v) => Ok(Some(v.clone())),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            MatrixShape::new(*p, &rows)?.build()
        }
        RingSpec::StructureConstants { char_orders, basis, mul } => {
            let b = AdditiveBasis { names: basis.clone(), orders: char_orders.clone() };
            let mut products = Vec::with_capacity(basis.len() * basis.len());
            for x in basis {
                for y in basis {
                    let key = format!("{x}*{y}");
                    let text = mul.get(&key).ok_or_else(|| Error::Spec(format!("missing product {key}")))?;
                    products.push(parse_combination(&b, text).map_err(|m| Error::Spec(format!("{key}: {m}")))?);
                }
            }
            StructureConstants { basis: b, products }.build()
        }
        RingSpec::Product { factors } => {
            let rings = factors.iter().map(build_ring).collect::<Result<Vec<_>>>()?;
            direct_product(&rings)
        }
        RingSpec::Catalog { name, p, n } => {
            let p = p.or(*n).ok_or_else(|| Error::Spec(format!("catalog ring {name} needs a parameter")))?;
            catalog_build(name, p, *n)
        }
    }
}

/// A structure-constants spec reproducing `ring`'s tables exactly.
pub fn to_structure_constants(ring: &FiniteRing) -> Result<RingSpec> {
    let sc = StructureConstants::of_ring(ring)?;
    let k = sc.basis.names.len();
    if let Some(bad) = sc.basis.names.iter().find(|n| !valid_basis_name(n)) {
        return Err(Error::Spec(format!("basis name {bad:?} cannot be written in a spec")));
    }
    let mut mul = BTreeMap::new();
    for (i, x) in sc.basis.names.iter().enumerate() {
        for (j, y) in sc.basis.names.iter().enumerate() {
            mul.insert(format!("{x}*{y}"), format_combination(&sc.basis, &sc.products[i * k + j]));
        }
    }
    Ok(RingSpec::StructureConstants { char_orders: sc.basis.orders, basis: sc.basis.names, mul })
}

pub fn to_json(spec: &RingSpec) -> String {
    serde_json::to_string_pretty(spec).expect("ring specs always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_modint() {
        let s = parse_ring_spec(r#"{"kind":"modint","n":4}"#).unwrap();
        assert_eq!(s, RingSpec::Modint { n: 4 });
        assert_eq!(build_ring(&s).unwrap().labels(), ["0", "1", "2", "3"]);
    }

    #[test]
    fn parse_pattern_with_tied_entries() {
        let text = r#"{"kind":"matrix_shape","p":2,"size":3,
            "pattern":[["a",0,0],["b","a",0],["c",0,"d"]]}"#;
        let s = parse_ring_spec(text).unwrap();
        let RingSpec::MatrixShape { pattern, .. } = &s else { panic!("wrong kind") };
        let a_count = pattern.iter().flatten().filter(|c| **c == PatternEntry::Var("a".into())).count();
        assert_eq!(a_count, 2);
        assert_eq!(build_ring(&s).unwrap().order(), 16);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ring_spec(r#"{"kind":"quaternion","n":4}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        let e = parse_ring_spec("{\n\"kind\": \"modint\",\n\"n\": }").unwrap_err();
        let Error::Parse { position, .. } = e else { panic!() };
        assert!(position.starts_with("line 3"), "{position}");
        let text = r#"{"kind":"structure_constants","char_orders":[2,2],"basis":["1","x"],
            "mul":{"1*1":"1","1*x":"x","x*1":"x","x*x":"z"}}"#;
        let Error::Parse { position, .. } = parse_ring_spec(text).unwrap_err() else { panic!() };
        assert_eq!(position, r#"mul["x*x"]"#);
        let text = r#"{"kind":"product","factors":[{"kind":"modint","n":1}]}"#;
        let Error::Parse { position, .. } = parse_ring_spec(text).unwrap_err() else { panic!() };
        assert_eq!(position, "factors[0].n");
    }

    #[test]
    fn round_trip_through_structure_constants() {
        let r = crate::catalog::char_p2(2).unwrap();
        let spec = to_structure_constants(&r).unwrap();
        let back = build_ring(&parse_ring_spec(&to_json(&spec)).unwrap()).unwrap();
        assert_eq!(back.add_table(), r.add_table());
        assert_eq!(back.mul_table(), r.mul_table());
        assert_eq!(back.labels(), r.labels());
    }
}

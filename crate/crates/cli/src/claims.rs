//! The verification claims replayed by `ringlab verify`.

use std::time::Instant;

use ringlab::budget::{Budget, VerifyError};
use ringlab::catalog::{catalog_build, example31, four_rings_report, gf, matn, ternions};
use ringlab::checks::{check_local_line, check_product_theorem, free_outlier_report};
use ringlab::ideal::non_principal_right_ideals;
use ringlab::pair::{classify_all_pairs, AdmissibilityMode};
use ringlab::properties::{property_rings, run_property_suites};
use ringlab::verify::{verify_asymmetry, verify_char_p2, verify_example31_named, verify_t3, verify_ternions};
use ringlab::{direct_product, modint, FiniteRing};

use crate::report::{Status, VerifyResult};

pub struct Outcome {
    pub computed: String,
    pub status: Status,
    pub reason: Option<String>,
}

impl Outcome {
    fn check(ok: bool, computed: String) -> Outcome {
        Outcome { computed, status: if ok { Status::Pass } else { Status::Fail }, reason: None }
    }

    fn skipped(computed: String, reason: String) -> Outcome {
        Outcome { computed, status: Status::Skipped, reason: Some(reason) }
    }

    fn error(e: impl std::fmt::Display) -> Outcome {
        Outcome { computed: String::new(), status: Status::Fail, reason: Some(e.to_string()) }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub topic: &'static str,
    pub expected: &'static str,
    pub run: fn(&Budget) -> Outcome,
}

macro_rules! tryo {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::error(e),
        }
    };
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |v| v.to_string())
}

fn budgeted<T, F: FnOnce(T) -> Outcome>(r: Result<T, VerifyError<T>>, f: F) -> Outcome
where
    T: std::fmt::Debug,
{
    match r {
        Ok(v) => f(v),
        Err(VerifyError::BudgetExceeded { phase, partial }) => {
            Outcome::skipped(format!("{partial:?}"), format!("budget exhausted during {phase}"))
        }
        Err(e) => Outcome::error(e),
    }
}

fn ex31_ideals(_: &Budget) -> Outcome {
    let r = tryo!(example31(2));
    let sizes: Vec<usize> = tryo!(non_principal_right_ideals(&r)).iter().map(|i| i.len()).collect();
    Outcome::check(sizes == [4, 8], format!("non-principal sizes {sizes:?}"))
}

fn ex31_outliers(_: &Budget) -> Outcome {
    let r = tryo!(example31(2));
    let s = classify_all_pairs(&r, AdmissibilityMode::Auto).summary;
    let got = (s.outliers, s.free_outliers, s.free_outlier_submodules, s.torsion_outliers);
    Outcome::check(
        got == (30, 24, 6, 6),
        format!("outliers {}, free {}, free submodules {}, torsion {}", got.0, got.1, got.2, got.3),
    )
}

fn ex31_named(_: &Budget) -> Outcome {
    let r = tryo!(verify_example31_named());
    Outcome::check(
        r.passed(),
        format!(
            "I2 generators ok={}, IR+JR={{{}}}, I3 = {}R, torsion outliers ok={}, displayed product replays={}",
            r.generators_of_i2_ok,
            r.ij_sum.join(", "),
            r.i3_candidates.iter().map(|c| c.0.as_str()).collect::<Vec<_>>().join(" or "),
            r.torsion_outliers_ok,
            r.displayed_product_matches_swapped
        ),
    )
}

fn ternion_orbits(b: &Budget) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2, 3] {
        match verify_ternions(p, b) {
            Ok(r) => {
                ok &= r.passed();
                parts.push(format!(
                    "p={p}: {} orbits, orbit of R(1,0) = P(T) {}, others non-unimodular {}",
                    r.submodule_orbits.unwrap_or(0),
                    r.line_orbit_is_projective_line == Some(true),
                    r.others_non_unimodular == Some(true)
                ));
            }
            Err(VerifyError::BudgetExceeded { phase, .. }) => {
                return Outcome::skipped(parts.join("; "), format!("budget exhausted during {phase}"))
            }
            Err(e) => return Outcome::error(e),
        }
    }
    Outcome::check(ok, parts.join("; "))
}

fn t3_orbits(b: &Budget) -> Outcome {
    budgeted(verify_t3(2, b), |r| {
        let ok = r.pair_orbits == Some(6)
            && r.submodule_orbits == Some(5)
            && r.items_distinct == Some(true)
            && r.pair_representatives_cover == Some(true)
            && r.family_collapses == Some(true);
        Outcome::check(
            ok,
            format!(
                "pair orbits {}, submodule orbits {}, items distinct {}, family collapses {}",
                opt(r.pair_orbits),
                opt(r.submodule_orbits),
                opt(r.items_distinct),
                opt(r.family_collapses)
            ),
        )
    })
}

fn t3_invariant(b: &Budget) -> Outcome {
    budgeted(verify_t3(2, b), |r| {
        Outcome::check(
            r.invariant_violations == Some(0) && r.invariant_separates == Some(true) && r.flags.is_empty(),
            format!(
                "{} free pairs, {} violations, ideals separate orbits {}",
                r.free_pairs,
                opt(r.invariant_violations),
                opt(r.invariant_separates)
            ),
        )
    })
}

fn t3_gf3(b: &Budget) -> Outcome {
    budgeted(verify_t3(3, b), |r| {
        Outcome::check(
            r.pair_orbits == Some(7) && r.submodule_orbits == Some(5) && r.passed(),
            format!(
                "pair orbits {}, submodule orbits {}, merges {}, flags {}",
                opt(r.pair_orbits),
                opt(r.submodule_orbits),
                r.merges.len(),
                r.flags.len()
            ),
        )
    })
}

/// Commutative rings of order at most 16: `Z/n`, the prime fields, and
/// products of at least two `Z/n`.
pub fn small_commutative_rings() -> ringlab::Result<Vec<(String, FiniteRing)>> {
    let mut out = Vec::new();
    for n in 2..=16 {
        out.push((format!("modint({n})"), modint(n)?));
    }
    for p in [2, 3, 5, 7, 11, 13] {
        out.push((format!("gf({p})"), gf(p)?));
    }
    let mut stack: Vec<Vec<u32>> = (2..=8).map(|n| vec![n]).collect();
    while let Some(parts) = stack.pop() {
        let order: u32 = parts.iter().product();
        if parts.len() >= 2 {
            let rings = parts.iter().map(|&n| modint(n)).collect::<ringlab::Result<Vec<_>>>()?;
            let name = parts.iter().map(|n| format!("modint({n})")).collect::<Vec<_>>().join("x");
            out.push((name, direct_product(&rings)?));
        }
        for n in *parts.last().unwrap()..=8 {
            if order * n <= 16 {
                let mut next = parts.clone();
                next.push(n);
                stack.push(next);
            }
        }
    }
    Ok(out)
}

fn comm_finite(_: &Budget) -> Outcome {
    let rings = tryo!(small_commutative_rings());
    let bad: Vec<&str> = rings
        .iter()
        .filter(|(_, r)| {
            let rep = free_outlier_report(r, AdmissibilityMode::Auto);
            !r.is_commutative() || rep.free_outliers != 0 || rep.free_unimodular_mismatches != 0
        })
        .map(|(n, _)| n.as_str())
        .collect();
    Outcome::check(bad.is_empty(), format!("{} rings checked, failing {bad:?}", rings.len()))
}

fn charp2(_: &Budget) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2, 3] {
        let (label, v) = tryo!(verify_char_p2(p));
        ok &= !v.unimodular && v.free && v.outlier;
        parts.push(format!("p={p}: {label} unimodular={} free={} outlier={}", v.unimodular, v.free, v.outlier));
    }
    Outcome::check(ok, parts.join("; "))
}

fn asymmetry(_: &Budget) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2, 3] {
        let r = tryo!(verify_asymmetry(p));
        ok &= r.passed();
        parts.push(format!(
            "p={p}: left free={} outlier={}; right free={} outlier={}",
            r.left.free, r.left.outlier, r.right.free, r.right.outlier
        ));
    }
    Outcome::check(ok, parts.join("; "))
}

fn semisimple(_: &Budget) -> Outcome {
    let rings = [
        ("gf(2)xgf(3)", tryo!(gf(2).and_then(|a| direct_product(&[a, gf(3)?])))),
        ("gf(2)xgf(2)", tryo!(gf(2).and_then(|a| direct_product(&[a.clone(), a])))),
        ("matn(2,2)", tryo!(matn(2, 2))),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in &rings {
        let rep = free_outlier_report(r, AdmissibilityMode::Search);
        ok &= rep.free_admissible_mismatches == 0;
        parts.push(format!("{name}: {} mismatches over {} pairs", rep.free_admissible_mismatches, rep.pairs));
    }
    Outcome::check(ok, parts.join("; "))
}

fn product_laws(_: &Budget) -> Outcome {
    let cases = [
        ("ternions(2)xgf(2)", tryo!(ternions(2)), tryo!(gf(2))),
        ("modint(4)xgf(3)", tryo!(modint(4)), tryo!(gf(3))),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, a, b) in cases {
        let p = tryo!(direct_product(&[a.clone(), b.clone()]));
        let rep = tryo!(check_product_theorem(&p, &[a, b]));
        ok &= rep.exhaustive && rep.violations.is_empty();
        parts.push(format!("{name}: {} pairs, {} violations", rep.pairs_checked, rep.violations.len()));
    }
    Outcome::check(ok, parts.join("; "))
}

fn local_line(_: &Budget) -> Outcome {
    let mut rings = Vec::new();
    for n in [4, 8, 9] {
        rings.push((format!("modint({n})"), tryo!(modint(n))));
    }
    for p in [2, 3, 5, 7, 11, 13] {
        rings.push((format!("gf({p})"), tryo!(gf(p))));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in &rings {
        match check_local_line(r) {
            Some(rep) => {
                ok &= rep.holds();
                parts.push(format!("{name}: {}", rep.line_size));
            }
            None => {
                ok = false;
                parts.push(format!("{name}: not local"));
            }
        }
    }
    Outcome::check(ok, parts.join(", "))
}

fn property_suites(b: &Budget) -> Outcome {
    let rings = tryo!(property_rings());
    let report = run_property_suites(&rings, b);
    let failing: Vec<String> = report.failures().map(|o| format!("{} on {}", o.property, o.ring)).collect();
    let computed = format!(
        "{} rings, {} cases, {} failing properties",
        rings.len() - report.skipped_rings.len(),
        report.cases(),
        failing.len()
    );
    if !failing.is_empty() {
        return Outcome { computed, status: Status::Fail, reason: Some(failing.join("; ")) };
    }
    if !report.skipped_rings.is_empty() {
        return Outcome::skipped(computed, format!("budget exhausted before {:?}", report.skipped_rings));
    }
    Outcome::check(true, computed)
}

fn four_rings(b: &Budget) -> Outcome {
    budgeted(four_rings_report(2, b), |r| {
        let parts: Vec<String> = r
            .entries
            .iter()
            .map(|e| format!("{}: {} free outlier submodules", e.name, e.free_outlier_submodules))
            .collect();
        Outcome::check(r.all_qualify(), parts.join("; "))
    })
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "EX31-IDEALS",
        topic: "non-principal right ideals of example31 over GF(2)",
        expected: "exactly 2, of sizes 4 and 8",
        run: ex31_ideals,
    },
    Claim {
        id: "EX31-OUTLIERS",
        topic: "outlier census of example31 over GF(2)",
        expected: "30 outliers; 24 free generating 6 submodules; 6 torsion",
        run: ex31_outliers,
    },
    Claim {
        id: "EX31-NAMED",
        topic: "lettered elements of example31 over GF(2)",
        expected: "gen(I,A)=gen(K,A)=gen(A,D)=gen(A,B)=I2; IR+JR={0,I,J,K} strictly inside I3; six torsion outliers",
        run: ex31_named,
    },
    Claim {
        id: "TERNION-ORBITS",
        topic: "GL2 orbits of free cyclic submodules over the ternions, p=2,3",
        expected: "2 orbits; orbit of R(1,0) is the projective line; the other is generated by non-unimodular pairs",
        run: ternion_orbits,
    },
    Claim {
        id: "T3-ORBITS",
        topic: "GL2 orbits over lower triangular 3x3 matrices, GF(2)",
        expected: "5 submodule orbits, 6 pair orbits, listed representatives distinct, the one-parameter family collapses to one submodule orbit",
        run: t3_orbits,
    },
    Claim {
        id: "T3-INVARIANT",
        topic: "generated right ideal as a complete orbit invariant, GF(2)",
        expected: "same orbit iff same generated right ideal, for every free pair",
        run: t3_invariant,
    },
    Claim {
        id: "T3-GF3",
        topic: "GL2 orbits over lower triangular 3x3 matrices, GF(3)",
        expected: "7 pair orbits, 5 submodule orbits",
        run: t3_gf3,
    },
    Claim {
        id: "COMM-FINITE",
        topic: "finite commutative rings of order at most 16",
        expected: "no free outliers; free iff unimodular",
        run: comm_finite,
    },
    Claim {
        id: "CHARP2",
        topic: "(1-t-y, t) in the characteristic p^2 ring, p=2,3",
        expected: "non-unimodular, free, outlier",
        run: charp2,
    },
    Claim {
        id: "ASYMMETRY",
        topic: "left versus right outliers in example31, p=2,3",
        expected: "v=(I,A) free and outlier on the left; torsion and not an outlier on the right",
        run: asymmetry,
    },
    Claim {
        id: "SEMISIMPLE",
        topic: "semisimple rings GF(2)xGF(3), GF(2)xGF(2), M2(GF(2))",
        expected: "free iff admissible for every pair",
        run: semisimple,
    },
    Claim {
        id: "PRODUCT-LAWS",
        topic: "componentwise laws for direct products",
        expected: "unimodular, admissible, free componentwise; outlier iff some component is",
        run: product_laws,
    },
    Claim {
        id: "LOCAL-LINE",
        topic: "projective line of finite local rings",
        expected: "P(R) = {R(1,x)} + {R(d,1) : d in m}, of size |R|+|m|",
        run: local_line,
    },
    Claim {
        id: "PROPERTY-SUITES",
        topic: "property suites over the catalog",
        expected: "every property holds on every catalog ring",
        run: property_suites,
    },
    Claim {
        id: "FOUR-RINGS",
        topic: "noncommutative rings of order p^3 and p^4 with free outliers, p=2",
        expected: "ternions, example31, p4_second, char_p2 each have a free outlier",
        run: four_rings,
    },
];

/// Claims whose id starts with any of `filters` (case-insensitive); all
/// claims for an empty filter. Unknown filters are returned as errors.
pub fn select(filters: &[String]) -> Result<Vec<&'static Claim>, String> {
    if filters.is_empty() {
        return Ok(CLAIMS.iter().collect());
    }
    let upper: Vec<String> = filters.iter().map(|f| f.to_uppercase()).collect();
    if let Some(bad) = upper.iter().find(|f| !CLAIMS.iter().any(|c| c.id.starts_with(f.as_str()))) {
        return Err(format!("no claim matches {bad:?}"));
    }
    Ok(CLAIMS.iter().filter(|c| upper.iter().any(|f| c.id.starts_with(f.as_str()))).collect())
}

pub fn run_claim(claim: &Claim, budget: &Budget) -> VerifyResult {
    let start = Instant::now();
    let out = if budget.exhausted() {
        Outcome::skipped(String::new(), "budget exhausted before the claim started".into())
    } else {
        (claim.run)(budget)
    };
    VerifyResult {
        claim_id: claim.id.to_string(),
        topic: claim.topic.to_string(),
        expected: claim.expected.to_string(),
        computed: out.computed,
        status: out.status,
        reason: out.reason,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

/// Loads a catalog ring named like `catalog:name:p[:n]`, without the prefix.
pub fn catalog_ring(text: &str) -> ringlab::Result<FiniteRing> {
    let mut parts = text.split(':');
    let name = parts.next().unwrap_or_default();
    let parse = |s: Option<&str>| -> ringlab::Result<Option<u32>> {
        s.map(|s| s.parse::<u32>().map_err(|_| ringlab::Error::Spec(format!("bad number {s:?}"))))
            .transpose()
    };
    let p = parse(parts.next())?
        .ok_or_else(|| ringlab::Error::Spec(format!("catalog ring {name:?} needs a parameter")))?;
    let n = parse(parts.next())?;
    if parts.next().is_some() {
        return Err(ringlab::Error::Spec("expected catalog:name:p[:n]".into()));
    }
    catalog_build(name, p, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_claim_id_is_unique_and_selectable() {
        let ids: std::collections::BTreeSet<&str> = CLAIMS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), 15);
        assert_eq!(select(&["ex31".into()]).unwrap().len(), 3);
        assert_eq!(select(&["T3".into()]).unwrap().len(), 3);
        assert!(select(&["NOPE".into()]).is_err());
        assert_eq!(select(&[]).unwrap().len(), 15);
    }

    #[test]
    fn commutative_ring_list() {
        let rings = small_commutative_rings().unwrap();
        assert!(rings.iter().all(|(_, r)| r.order() <= 16 && r.is_commutative()));
        assert!(rings.iter().any(|(n, _)| n == "modint(2)xmodint(2)xmodint(2)xmodint(2)"));
    }
}

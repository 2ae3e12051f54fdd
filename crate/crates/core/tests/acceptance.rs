//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! pass/fail lines always reach the output.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use ringlab::budget::{Budget, VerifyError};
use ringlab::catalog::{
    catalog_build, example31, four_rings_report, gf, matn, named_elements_example31, ternions,
};
use ringlab::checks::{check_local_line, check_product_theorem, free_outlier_report};
use ringlab::ideal::non_principal_right_ideals;
use ringlab::pair::{classify_all_pairs, is_outlier, AdmissibilityMode, Pair, PairAtlas};
use ringlab::properties::{property_rings, run_property_suites};
use ringlab::verify::{verify_asymmetry, verify_char_p2, verify_example31_named, verify_t3, verify_ternions};
use ringlab::{direct_product, modint, FiniteRing};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Outcome::*;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

fn budget() -> Budget {
    let secs = std::env::var("RINGLAB_BUDGET_SECONDS")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(120.0);
    Budget::seconds(secs)
}

fn ex31_ideals() -> Outcome {
    let r = example31(2).unwrap();
    let names = named_elements_example31(&r).unwrap();
    let np = non_principal_right_ideals(&r).unwrap();
    let sizes: Vec<usize> = np.iter().map(|i| i.len()).collect();
    let as_letters = |letters: &[&str]| -> Vec<ringlab::Elem> {
        let mut v: Vec<_> = letters.iter().map(|l| names[l]).collect();
        v.sort();
        v
    };
    let i1 = as_letters(&["0", "I", "J", "K"]);
    let i2 = as_letters(&["0", "A", "B", "C", "D", "I", "J", "K"]);
    let ok = sizes == [4, 8] && np[0].members() == i1.as_slice() && np[1].members() == i2.as_slice();
    verdict(ok, format!("non-principal right ideal sizes {sizes:?}"))
}

fn ex31_outliers() -> Outcome {
    let r = example31(2).unwrap();
    let s = classify_all_pairs(&r, AdmissibilityMode::Auto).summary;
    let n = r.order();
    let direct = (0..n * n).filter(|&i| is_outlier(&r, Pair::from_index(i, n))).count();
    let ok = (s.outliers, s.free_outliers, s.free_outlier_submodules, s.torsion_outliers) == (30, 24, 6, 6)
        && direct == 30;
    verdict(
        ok,
        format!(
            "outliers {} (direct search {direct}), free {}, free submodules {}, torsion {}",
            s.outliers, s.free_outliers, s.free_outlier_submodules, s.torsion_outliers
        ),
    )
}

fn ex31_named() -> Outcome {
    let r = verify_example31_named().unwrap();
    let i3 = r.i3_candidates.first().map(|c| c.0.clone()).unwrap_or_default();
    verdict(r.passed(), format!("I2 generators ok, IR+JR={{{}}} inside I3={i3}R, 6 torsion outliers", r.ij_sum.join(", ")))
}

fn ternion_orbits() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in [2, 3] {
        let r = verify_ternions(p, &Budget::unlimited()).unwrap();
        ok &= r.passed();
        lines.push(format!(
            "p={p}: {} orbits, line orbit {}/{}, exact cross-check {}",
            opt(r.submodule_orbits),
            opt(r.line_orbit_size),
            opt(r.projective_line_size),
            opt(r.exact_cross_check)
        ));
    }
    verdict(ok, lines.join("; "))
}

fn t3_orbits() -> Outcome {
    let r = verify_t3(2, &Budget::unlimited()).unwrap();
    let ok = r.pair_orbits == Some(6)
        && r.submodule_orbits == Some(5)
        && r.items_distinct == Some(true)
        && r.pair_representatives_cover == Some(true)
        && r.family_collapses == Some(true)
        && r.representatives.iter().all(|x| x.free && x.ideal_matches && x.ideal_size == x.expected_ideal_size);
    verdict(
        ok,
        format!(
            "pair orbits {}, submodule orbits {}, family collapses {}",
            opt(r.pair_orbits),
            opt(r.submodule_orbits),
            opt(r.family_collapses)
        ),
    )
}

fn t3_invariant() -> Outcome {
    let r = verify_t3(2, &Budget::unlimited()).unwrap();
    let ok = r.invariant_violations == Some(0) && r.invariant_separates == Some(true) && r.flags.is_empty();
    verdict(
        ok,
        format!(
            "{} free pairs, {} invariant violations, orbits separated by ideal {}",
            r.free_pairs,
            opt(r.invariant_violations),
            opt(r.invariant_separates)
        ),
    )
}

fn t3_gf3() -> Outcome {
    match verify_t3(3, &budget()) {
        Ok(r) => verdict(
            r.pair_orbits == Some(7) && r.submodule_orbits == Some(5) && r.passed(),
            format!(
                "pair orbits {}, submodule orbits {}, merges {}, flags {}",
                opt(r.pair_orbits),
                opt(r.submodule_orbits),
                r.merges.len(),
                r.flags.len()
            ),
        ),
        Err(VerifyError::BudgetExceeded { phase, .. }) => Skip(format!("budget exhausted during {phase}")),
        Err(e) => Fail(e.to_string()),
    }
}

fn commutative_rings() -> Vec<(String, FiniteRing)> {
    let mut out: Vec<(String, FiniteRing)> = Vec::new();
    for n in 2..=16 {
        out.push((format!("modint({n})"), modint(n).unwrap()));
    }
    for p in [2, 3, 5, 7, 11, 13] {
        out.push((format!("gf({p})"), gf(p).unwrap()));
    }
    // products of at least two factors of order at least 2 with total order at most 16
    fn extend(prefix: &[u32], out: &mut Vec<(String, FiniteRing)>) {
        let order: u32 = prefix.iter().product();
        if prefix.len() >= 2 {
            let parts: Vec<FiniteRing> = prefix.iter().map(|&n| modint(n).unwrap()).collect();
            let name = prefix.iter().map(|n| format!("modint({n})")).collect::<Vec<_>>().join("x");
            out.push((name, direct_product(&parts).unwrap()));
        }
        let last = prefix.last().copied().unwrap_or(2);
        for n in last..=8 {
            if order * n <= 16 {
                let mut next = prefix.to_vec();
                next.push(n);
                extend(&next, out);
            }
        }
    }
    extend(&[], &mut out);
    out
}

fn comm_finite() -> Outcome {
    let rings = commutative_rings();
    let mut bad = Vec::new();
    for (name, r) in &rings {
        let rep = free_outlier_report(r, AdmissibilityMode::Auto);
        if !r.is_commutative() || rep.free_outliers != 0 || rep.free_unimodular_mismatches != 0 {
            bad.push(name.clone());
        }
    }
    verdict(bad.is_empty(), format!("{} commutative rings, failing: {bad:?}", rings.len()))
}

fn charp2() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for p in [2, 3] {
        let (label, v) = verify_char_p2(p).unwrap();
        let r = catalog_build("char_p2", p, None).unwrap();
        let pair = Pair::new(r.elem_by_label(label_part(&label, 0)).unwrap(), r.elem_by_label(label_part(&label, 1)).unwrap());
        let hull_says = PairAtlas::new(&r).is_outlier(pair);
        ok &= !v.unimodular && v.free && v.outlier && hull_says;
        lines.push(format!("p={p}: {label} unimodular={} free={} outlier={}", v.unimodular, v.free, v.outlier));
    }
    verdict(ok, lines.join("; "))
}

fn label_part(pair_label: &str, i: usize) -> &str {
    let inner = pair_label.trim_start_matches('(').trim_end_matches(')');
    inner.split(", ").nth(i).unwrap()
}

fn asymmetry() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for p in [2, 3] {
        let r = verify_asymmetry(p).unwrap();
        ok &= r.passed();
        lines.push(format!(
            "p={p}: left free={} outlier={}, right free={} outlier={}",
            r.left.free, r.left.outlier, r.right.free, r.right.outlier
        ));
    }
    verdict(ok, lines.join("; "))
}

fn semisimple() -> Outcome {
    let rings = [
        ("gf(2)xgf(3)", direct_product(&[gf(2).unwrap(), gf(3).unwrap()]).unwrap()),
        ("gf(2)xgf(2)", direct_product(&[gf(2).unwrap(), gf(2).unwrap()]).unwrap()),
        ("matn(2,2)", matn(2, 2).unwrap()),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, r) in &rings {
        let rep = free_outlier_report(r, AdmissibilityMode::Search);
        ok &= rep.admissibility_searched && rep.free_admissible_mismatches == 0;
        lines.push(format!("{name}: {} pairs, {} mismatches", rep.pairs, rep.free_admissible_mismatches));
    }
    verdict(ok, lines.join("; "))
}

fn product_laws() -> Outcome {
    let cases = [
        (ternions(2).unwrap(), gf(2).unwrap(), "ternions(2)xgf(2)"),
        (modint(4).unwrap(), gf(3).unwrap(), "modint(4)xgf(3)"),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (a, b, name) in cases {
        let p = direct_product(&[a.clone(), b.clone()]).unwrap();
        let rep = check_product_theorem(&p, &[a, b]).unwrap();
        ok &= rep.exhaustive && rep.violations.is_empty();
        lines.push(format!(
            "{name}: {} pairs, {} outliers, {} violations",
            rep.pairs_checked,
            rep.outliers,
            rep.violations.len()
        ));
    }
    verdict(ok, lines.join("; "))
}

fn local_line() -> Outcome {
    let mut rings: Vec<(String, FiniteRing)> =
        [4, 8, 9].iter().map(|&n| (format!("modint({n})"), modint(n).unwrap())).collect();
    for p in [2, 3, 5, 7, 11, 13] {
        rings.push((format!("gf({p})"), gf(p).unwrap()));
    }
    let mut ok = true;
    let mut lines = Vec::new();
    for (name, r) in &rings {
        match check_local_line(r) {
            Some(rep) => {
                ok &= rep.holds();
                lines.push(format!("{name}: {}={}+{}", rep.line_size, rep.ring_order, rep.maximal_ideal_size));
            }
            None => {
                ok = false;
                lines.push(format!("{name}: not local"));
            }
        }
    }
    verdict(ok, lines.join(", "))
}

fn property_suites() -> Outcome {
    let rings = property_rings().unwrap();
    let report = run_property_suites(&rings, &Budget::unlimited());
    let failing: BTreeSet<String> =
        report.failures().map(|o| format!("{} on {}", o.property, o.ring)).collect();
    verdict(
        report.passed(),
        format!("{} rings, {} outcomes, {} cases, failing: {failing:?}", rings.len(), report.outcomes.len(), report.cases()),
    )
}

fn four_rings() -> Outcome {
    let r = four_rings_report(2, &Budget::unlimited()).unwrap();
    let parts: Vec<String> = r
        .entries
        .iter()
        .map(|e| format!("{}: {} free outliers / {} submodules", e.name, e.free_outliers, e.free_outlier_submodules))
        .collect();
    verdict(r.all_qualify(), parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("EX31-IDEALS", ex31_ideals),
        ("EX31-OUTLIERS", ex31_outliers),
        ("EX31-NAMED", ex31_named),
        ("TERNION-ORBITS", ternion_orbits),
        ("T3-ORBITS", t3_orbits),
        ("T3-INVARIANT", t3_invariant),
        ("T3-GF3", t3_gf3),
        ("COMM-FINITE", comm_finite),
        ("CHARP2", charp2),
        ("ASYMMETRY", asymmetry),
        ("SEMISIMPLE", semisimple),
        ("PRODUCT-LAWS", product_laws),
        ("LOCAL-LINE", local_line),
        ("PROPERTY-SUITES", property_suites),
        ("FOUR-RINGS", four_rings),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    let mut ran = 0;
    for (id, run) in criteria {
        if filter.as_deref().is_some_and(|f| !id.contains(f)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        let (tag, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("{tag} {id:<16} {detail} [{ms} ms]");
    }
    println!("acceptance: {} of {ran} criteria passed or skipped", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

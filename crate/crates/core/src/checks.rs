//! Exhaustive checks of the structural statements about pairs: the factor
//! proposition, the outlier criteria under condition (F), the direct-product
//! laws, the projective line of a local ring, and gcd decomposition over the
//! integers.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::principal_right_ideals;
use crate::pair::{
    admissible_completion, cyclic_submodule, is_admissible, is_unimodular, projective_line,
    submodule_equal, AdmissibilityMode, Pair, PairAtlas, PairSet,
};
use crate::ring::{Elem, FiniteRing};

/// Pair count above which [`check_product_theorem`] samples.
pub const PRODUCT_EXHAUSTIVE_LIMIT: usize = 1 << 16;
pub const PRODUCT_SAMPLE_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCounterexample {
    pub r: Elem,
    pub pair: Pair,
    pub right_invertible: bool,
    pub unimodular: bool,
    pub left_invertible: bool,
    pub same_submodule: bool,
}

/// For unimodular `(x, y)` and each `r`, with `(a, b) = r(x, y)`: `r` is right
/// invertible iff `(a, b)` is unimodular, and left invertible iff
/// `R(a, b) = R(x, y)`. Returns the failures.
pub fn check_factor_proposition(ring: &FiniteRing, x: Elem, y: Elem) -> Result<Vec<FactorCounterexample>> {
    let base = Pair::new(x, y);
    if !is_unimodular(ring, base) {
        return Err(Error::PreconditionViolated(format!("{} is not unimodular", base.display(ring))));
    }
    let one = ring.one();
    let mut out = Vec::new();
    for r in ring.elements() {
        let pair = base.scale(ring, r);
        let right_invertible = ring.elements().any(|s| ring.mul(r, s) == one);
        let left_invertible = ring.elements().any(|s| ring.mul(s, r) == one);
        let unimodular = is_unimodular(ring, pair);
        let same_submodule = submodule_equal(ring, pair, base);
        if right_invertible != unimodular || left_invertible != same_submodule {
            out.push(FactorCounterexample {
                r,
                pair,
                right_invertible,
                unimodular,
                left_invertible,
                same_submodule,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdgReport {
    /// Pairs inside a proper principal right ideal.
    pub in_proper_principal: usize,
    /// ... of which free, each a counterexample to the first implication.
    pub free_in_proper_principal: Vec<Pair>,
    pub free_non_unimodular: usize,
    /// Free non-unimodular pairs that are not outliers.
    pub free_non_unimodular_not_outlier: Vec<Pair>,
}

impl IdgReport {
    pub fn holds(&self) -> bool {
        self.free_in_proper_principal.is_empty() && self.free_non_unimodular_not_outlier.is_empty()
    }
}

/// Under (F): a pair inside a proper principal right ideal is torsion, and a
/// free non-unimodular pair is an outlier.
pub fn check_theorem_idg(ring: &FiniteRing) -> Result<IdgReport> {
    if !ring.check_condition_f() {
        return Err(Error::PreconditionViolated("condition (F) fails".into()));
    }
    let atlas = PairAtlas::new(ring);
    let proper: Vec<_> = principal_right_ideals(ring).into_iter().filter(|i| i.is_proper(ring)).collect();
    let mut report = IdgReport::default();
    let n = ring.order();
    for i in 0..n * n {
        let p = Pair::from_index(i, n);
        let free = atlas.free.contains(p);
        if proper.iter().any(|ideal| ideal.contains(p.a) && ideal.contains(p.b)) {
            report.in_proper_principal += 1;
            if free {
                report.free_in_proper_principal.push(p);
            }
        }
        if free && !atlas.unimodular.contains(p) {
            report.free_non_unimodular += 1;
            if !atlas.is_outlier(p) {
                report.free_non_unimodular_not_outlier.push(p);
            }
        }
    }
    Ok(report)
}

/// Which of the four componentwise laws failed at a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductViolation {
    pub pair: Pair,
    pub law: &'static str,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductReport {
    pub pairs_checked: usize,
    pub exhaustive: bool,
    pub outliers: usize,
    pub violations: Vec<ProductViolation>,
}

struct Verdicts {
    atlas: PairAtlas,
    admissible: PairSet,
}

impl Verdicts {
    fn new(ring: &FiniteRing) -> Verdicts {
        let atlas = PairAtlas::new(ring);
        let search = AdmissibilityMode::Auto.searches(ring);
        let admissible = if search {
            PairSet::from_fn(ring, |p| admissible_completion(ring, p).is_some())
        } else {
            atlas.unimodular.clone()
        };
        Verdicts { atlas, admissible }
    }
}

/// Checks on `product` that a pair is unimodular, admissible or free iff every
/// component is, and an outlier iff some component is.
pub fn check_product_theorem(product: &FiniteRing, components: &[FiniteRing]) -> Result<ProductReport> {
    let factors = product.factors();
    let matches = factors.len() == components.len()
        && factors.iter().zip(components).all(|(f, c)| {
            f.add_table() == c.add_table() && f.mul_table() == c.mul_table()
        });
    if !matches || factors.is_empty() {
        return Err(Error::PreconditionViolated(
            "ring is not the direct product of the given components".into(),
        ));
    }
    let whole = Verdicts::new(product);
    let parts: Vec<Verdicts> = components.iter().map(Verdicts::new).collect();
    let n = product.order();
    let total = n * n;
    let exhaustive = total <= PRODUCT_EXHAUSTIVE_LIMIT;
    let indices: Vec<usize> = if exhaustive {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(PRODUCT_SAMPLE_SEED);
        (0..PRODUCT_EXHAUSTIVE_LIMIT).map(|_| rng.gen_range(0..total)).collect()
    };
    let mut report = ProductReport { pairs_checked: indices.len(), exhaustive, ..Default::default() };
    for i in indices {
        let p = Pair::from_index(i, n);
        let comps: Vec<Pair> = (0..components.len())
            .map(|k| Pair::new(product.project(p.a, k), product.project(p.b, k)))
            .collect();
        let all = |f: &dyn Fn(&Verdicts, Pair) -> bool| comps.iter().zip(&parts).all(|(&q, v)| f(v, q));
        let laws: [(&'static str, bool, bool); 4] = [
            ("unimodular", whole.atlas.unimodular.contains(p), all(&|v, q| v.atlas.unimodular.contains(q))),
            ("admissible", whole.admissible.contains(p), all(&|v, q| v.admissible.contains(q))),
            ("free", whole.atlas.free.contains(p), all(&|v, q| v.atlas.free.contains(q))),
            ("outlier", whole.atlas.is_outlier(p), !all(&|v, q| !v.atlas.is_outlier(q))),
        ];
        report.outliers += whole.atlas.is_outlier(p) as usize;
        for (law, lhs, rhs) in laws {
            if lhs != rhs {
                report.violations.push(ProductViolation { pair: p, law });
            }
        }
    }
    Ok(report)
}

/// `(d, r1, r2)` with `d = gcd(a, b) > 0`, `a = d·r1`, `b = d·r2`.
pub fn pid_decompose(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroPair);
    }
    let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    let d = i64::try_from(x)
        .map_err(|_| Error::PreconditionViolated(format!("gcd of {a} and {b} exceeds the i64 range")))?;
    Ok((d, a / d, b / d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalLineReport {
    pub ring_order: usize,
    pub maximal_ideal_size: usize,
    pub line_size: usize,
    /// `{R(1, x)} ∪ {R(d, 1) : d ∈ m}` equals the projective line.
    pub shape_matches: bool,
    /// Free pairs that are not unimodular.
    pub free_non_unimodular: usize,
}

impl LocalLineReport {
    pub fn holds(&self) -> bool {
        self.shape_matches
            && self.free_non_unimodular == 0
            && self.line_size == self.ring_order + self.maximal_ideal_size
    }
}

/// For a local ring, compares the projective line with its affine-chart
/// description. `None` if the ring is not local.
pub fn check_local_line(ring: &FiniteRing) -> Option<LocalLineReport> {
    let m = ring.local_maximal_ideal()?;
    let line: BTreeSet<Vec<Pair>> =
        projective_line(ring, AdmissibilityMode::Auto).into_iter().map(|s| s.points).collect();
    let one = ring.one();
    let charts: BTreeSet<Vec<Pair>> = ring
        .elements()
        .map(|x| Pair::new(one, x))
        .chain(m.members().iter().map(|&d| Pair::new(d, one)))
        .map(|p| cyclic_submodule(ring, p).points)
        .collect();
    let atlas = PairAtlas::new(ring);
    Some(LocalLineReport {
        ring_order: ring.order(),
        maximal_ideal_size: m.len(),
        line_size: line.len(),
        shape_matches: line == charts,
        free_non_unimodular: atlas.free_non_unimodular().len(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeOutlierReport {
    pub pairs: usize,
    pub free_outliers: usize,
    /// Pairs where freeness and unimodularity disagree.
    pub free_unimodular_mismatches: usize,
    /// Pairs where freeness and admissibility disagree.
    pub free_admissible_mismatches: usize,
    pub admissibility_searched: bool,
}

/// Counts free outliers and compares freeness with unimodularity and with
/// admissibility, pair by pair.
pub fn free_outlier_report(ring: &FiniteRing, mode: AdmissibilityMode) -> FreeOutlierReport {
    let atlas = PairAtlas::new(ring);
    let n = ring.order();
    let mut r = FreeOutlierReport { pairs: n * n, admissibility_searched: mode.searches(ring), ..Default::default() };
    for i in 0..n * n {
        let p = Pair::from_index(i, n);
        let free = atlas.free.contains(p);
        r.free_outliers += (free && atlas.is_outlier(p)) as usize;
        r.free_unimodular_mismatches += (free != atlas.unimodular.contains(p)) as usize;
        r.free_admissible_mismatches += (free != is_admissible(ring, p, mode)) as usize;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{example31, gf, ternions};
    use crate::ring::{direct_product, modint};

    #[test]
    fn factor_proposition_on_z4() {
        let r = modint(4).unwrap();
        assert!(check_factor_proposition(&r, Elem(1), Elem(0)).unwrap().is_empty());
        assert!(!is_unimodular(&r, Pair::new(Elem(2), Elem(0))));
        assert!(is_unimodular(&r, Pair::new(Elem(3), Elem(0))));
        assert!(matches!(
            check_factor_proposition(&r, Elem(2), Elem(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn factor_proposition_on_ternions() {
        let r = ternions(2).unwrap();
        let atlas = PairAtlas::new(&r);
        for p in atlas.unimodular.iter() {
            assert!(check_factor_proposition(&r, p.a, p.b).unwrap().is_empty());
        }
    }

    #[test]
    fn idg() {
        let r = example31(2).unwrap();
        let rep = check_theorem_idg(&r).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.free_non_unimodular, 24);
        let z4 = check_theorem_idg(&modint(4).unwrap()).unwrap();
        assert!(z4.holds());
        assert_eq!(z4.free_non_unimodular, 0);
        assert!(z4.in_proper_principal > 0);
    }

    #[test]
    fn products() {
        let (a, b) = (gf(2).unwrap(), gf(3).unwrap());
        let p = direct_product(&[a.clone(), b.clone()]).unwrap();
        let rep = check_product_theorem(&p, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(rep.pairs_checked, 36);
        assert!(rep.violations.is_empty() && rep.exhaustive);
        let z4 = modint(4).unwrap();
        let p = direct_product(&[z4.clone(), a.clone()]).unwrap();
        let rep = check_product_theorem(&p, &[z4, a.clone()]).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.outliers, 0);
        assert!(check_product_theorem(&p, &[b]).is_err());
    }

    #[test]
    fn gcd_decomposition() {
        assert_eq!(pid_decompose(4, 6).unwrap(), (2, 2, 3));
        assert_eq!(pid_decompose(3, 5).unwrap(), (1, 3, 5));
        assert_eq!(pid_decompose(0, 7).unwrap(), (7, 0, 1));
        assert_eq!(pid_decompose(-4, 6).unwrap(), (2, -2, 3));
        assert!(matches!(pid_decompose(0, 0), Err(Error::ZeroPair)));
        assert!(pid_decompose(i64::MIN, 0).is_err());
    }

    #[test]
    fn local_lines() {
        let z4 = check_local_line(&modint(4).unwrap()).unwrap();
        assert!(z4.holds());
        assert_eq!(z4.line_size, 6);
        assert!(check_local_line(&modint(6).unwrap()).is_none());
    }
}

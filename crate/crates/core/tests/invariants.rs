use proptest::prelude::*;

use ringlab::catalog::{catalog_build, ternions};
use ringlab::checks::pid_decompose;
use ringlab::construct::{format_combination, parse_combination};
use ringlab::orbit::{gl2_generators, is_invertible_mat2, mat2_apply, mat2_mul, Mat2};
use ringlab::pair::{is_free, is_unimodular, Pair};
use ringlab::ring::AdditiveBasis;
use ringlab::spec::{build_ring, parse_ring_spec, to_json, to_structure_constants};
use ringlab::{direct_product, modint, Elem, FiniteRing};

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn word(ring: &FiniteRing, gens: &[Mat2], picks: &[usize]) -> Mat2 {
    picks
        .iter()
        .fold(Mat2::identity(ring), |m, &i| mat2_mul(ring, &m, &gens[i % gens.len()]))
}

proptest! {
    #[test]
    fn gcd_decomposition(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assume!(a != 0 || b != 0);
        let (d, r1, r2) = pid_decompose(a, b).unwrap();
        prop_assert!(d > 0);
        prop_assert_eq!(d * r1, a);
        prop_assert_eq!(d * r2, b);
        prop_assert_eq!(gcd(r1, r2), 1);
    }

    #[test]
    fn combinations_round_trip(c0 in 0u32..9, c1 in 0u32..3, c2 in 0u32..3) {
        let basis = AdditiveBasis { names: vec!["1".into(), "t".into(), "y".into()], orders: vec![9, 3, 3] };
        let text = format_combination(&basis, &[c0, c1, c2]);
        prop_assert_eq!(parse_combination(&basis, &text).unwrap(), vec![c0, c1, c2]);
    }

    #[test]
    fn opposite_is_an_involution(n in 2u32..30) {
        let r = modint(n).unwrap();
        let t = ternions(2).unwrap();
        let p = direct_product(&[r, t]).unwrap();
        let back = p.opposite().opposite();
        prop_assert_eq!(back.mul_table(), p.mul_table());
        prop_assert_eq!(back.add_table(), p.add_table());
    }

    #[test]
    fn action_composes(
        a in 0u16..27, b in 0u16..27,
        left in proptest::collection::vec(0usize..64, 1..8),
        right in proptest::collection::vec(0usize..64, 1..8),
    ) {
        let r = ternions(3).unwrap();
        let gens = gl2_generators(&r);
        let (m, k) = (word(&r, &gens, &left), word(&r, &gens, &right));
        let p = Pair::new(Elem(a), Elem(b));
        prop_assert!(is_invertible_mat2(&r, &m));
        prop_assert_eq!(mat2_apply(&r, mat2_apply(&r, p, &m), &k), mat2_apply(&r, p, &mat2_mul(&r, &m, &k)));
        let q = mat2_apply(&r, p, &m);
        prop_assert_eq!(is_free(&r, p), is_free(&r, q));
        prop_assert_eq!(is_unimodular(&r, p), is_unimodular(&r, q));
    }

    #[test]
    fn catalog_rings_round_trip_through_specs(
        name in prop::sample::select(vec!["example31", "ternions", "char_p2", "p4_second", "gf", "modint"]),
        p in prop::sample::select(vec![2u32, 3]),
    ) {
        let ring = catalog_build(name, p, None).unwrap();
        let spec = to_structure_constants(&ring).unwrap();
        let back = build_ring(&parse_ring_spec(&to_json(&spec)).unwrap()).unwrap();
        prop_assert_eq!(back.add_table(), ring.add_table());
        prop_assert_eq!(back.mul_table(), ring.mul_table());
    }
}

use num_bigint::BigUint;
use proptest::prelude::*;

use szabo_core::curvature::{random_symmetric_tensor, szabo_at};
use szabo_core::exactpoly::rational::{int, rat};
use szabo_core::exactpoly::sample::{random_poly, rng_from_seed};
use szabo_core::exactpoly::{MultiPoly, QuadForm};
use szabo_core::json;
use szabo_core::obstruction::z2_pow_one_plus_x;
use szabo_core::obstruction::{
    ko_order, lema5_solve, replay, techn_case1, techn_case2, techn_case3, Z2TruncPoly,
};
use szabo_core::polydep::{dependence_degree, PolyMapFamily};
use szabo_core::{Rational, Signature};

fn admissible() -> impl Strategy<Value = Signature> {
    prop_oneof![
        Just((1, 2)),
        Just((2, 1)),
        Just((2, 2)),
        Just((1, 3)),
        Just((2, 3))
    ]
    .prop_map(|(p, q)| Signature::new(p, q).unwrap())
}

fn poly(m: usize, seed: u64) -> MultiPoly {
    random_poly(&mut rng_from_seed(seed), m, 3, 4, 6)
}

fn z2(n: usize) -> impl Strategy<Value = Z2TruncPoly> {
    proptest::collection::vec(any::<bool>(), n + 1).prop_map(move |c| Z2TruncPoly::new(n, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(m in 1usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (poly(m, a), poly(m, b), poly(m, c));
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        let lhs = a.checked_mul(&(&b + &c)).unwrap();
        let rhs = &a.checked_mul(&b).unwrap() + &a.checked_mul(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn quotient_and_valuation(s in admissible(), y in any::<u64>(), k in 0u32..3) {
        let qf = QuadForm::new(s);
        let y = poly(s.m(), y);
        let qky = qf.power(k).checked_mul(&y).unwrap();
        let vy = qf.valuation(&y).unwrap();
        prop_assert_eq!(qf.valuation(&qky).unwrap(), vy.map(|v| v + k));
        if k >= 1 && !y.is_zero() {
            prop_assert!(qf.vanishes_on_nullcone(&qky).unwrap());
            let once = qf.divide(&qky).unwrap().unwrap();
            prop_assert_eq!(qf.poly().checked_mul(&once).unwrap(), qky);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(m in 1usize..4, a in any::<u64>(), b in any::<u64>(), v in proptest::collection::vec(-5i64..5, 3)) {
        let (a, b) = (poly(m, a), poly(m, b));
        let v: Vec<Rational> = v[..m].iter().map(|&x| rat(x, 2)).collect();
        let prod = a.checked_mul(&b).unwrap().eval(&v).unwrap();
        prop_assert_eq!(prod, a.eval(&v).unwrap() * b.eval(&v).unwrap());
    }

    #[test]
    fn poly_json_round_trip(m in 1usize..5, seed in any::<u64>()) {
        let p = poly(m, seed);
        prop_assert_eq!(json::poly_from_str(&json::poly_to_string(&p)).unwrap(), p);
    }

    #[test]
    fn z2_units_invert(n in 0usize..12, p in z2(11)) {
        let p = Z2TruncPoly::new(n, p.coeffs()[..=n].to_vec());
        match p.inverse() {
            Some(inv) => prop_assert!(p.mul(&inv).unwrap().is_one()),
            None => prop_assert!(!p.is_unit()),
        }
    }

    #[test]
    fn z2_mul_associates(a in z2(9), b in z2(9), c in z2(9)) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn one_plus_x_powers_add(r in 0u64..200, s in 0u64..200, n in 0usize..40) {
        let l = z2_pow_one_plus_x(r, n).mul(&z2_pow_one_plus_x(s, n)).unwrap();
        prop_assert_eq!(l, z2_pow_one_plus_x(r + s, n));
    }

    #[test]
    fn halving_solutions(r in 0u64..500, n in 1u64..40) {
        let order = ko_order(n).unwrap();
        let sols = lema5_solve(r, n).unwrap();
        prop_assert_eq!(sols.is_empty(), r % 2 == 1);
        for a in &sols {
            prop_assert!(*a < order);
            prop_assert!(((a * 2u32) % &order) == BigUint::from(r) % &order);
        }
    }

    #[test]
    fn obstruction_traces_replay(n in 1u64..48, r in 0u64..50, k in 10u64..48) {
        if let Ok(t) = techn_case1(n, r) {
            prop_assert!(replay(&t).unwrap().is_none());
        }
        if let Ok(t) = techn_case2(n, r, n + 1) {
            prop_assert!(replay(&t).unwrap().is_none());
        }
        if let Ok(t) = techn_case3(n, k, r) {
            prop_assert!(replay(&t).unwrap().is_none());
        }
    }

    #[test]
    fn dependence_degree_ignores_column_order(s in admissible(), seed in any::<u64>()) {
        let m = s.m();
        let qf = QuadForm::new(s);
        let a: Vec<MultiPoly> = (0..3).map(|i| poly(m, seed.wrapping_add(i))).collect();
        let b: Vec<MultiPoly> = a.iter().zip(0..).map(|(x, i)| &x.scale(&int(2)) + &qf.poly().checked_mul(&poly(m, seed ^ i)).unwrap()).collect();
        let f = PolyMapFamily::new(s, 3, vec![a.clone(), b.clone()]).unwrap();
        let g = PolyMapFamily::new(s, 3, vec![b, a]).unwrap();
        let k = dependence_degree(&f).unwrap();
        prop_assert_eq!(k, dependence_degree(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn szabo_is_cubic(s in admissible(), seed in 0u64..1000, v in proptest::collection::vec(-4i64..4, 5), t in -3i64..4) {
        let tensor = random_symmetric_tensor(s, seed).unwrap();
        let v: Vec<Rational> = v[..s.m()].iter().map(|&x| int(x)).collect();
        let tv: Vec<Rational> = v.iter().map(|x| x * int(t)).collect();
        let a = szabo_at(&tensor, &v).unwrap();
        prop_assert_eq!(szabo_at(&tensor, &tv).unwrap(), a.scale(&int(t * t * t)));
        let text = json::tensor_to_string(&tensor);
        prop_assert_eq!(json::tensor_from_str(&text).unwrap(), tensor);
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use gencluster::gca::GenSeed;
use gencluster::sl2::{self, SimpleLabelA1};
use gencluster::sl3::{self, SimpleLabelA2L2};
use gencluster::typec::initial_seed;
use gencluster::{LaurentPoly, Mono, VarTable};
use num_bigint::BigInt;
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::new(["a", "b", "c"]).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-2i32..=2, -2i32..=2, -2i32..=2), -4i64..=4), 0..6).prop_map(|terms| {
        let t = table();
        LaurentPoly::from_terms(
            &t,
            terms
                .into_iter()
                .map(|((x, y, z), c)| (Mono::from_dense(&[x, y, z]), BigInt::from(c))),
        )
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(&table()), p.clone());
    }

    #[test]
    fn division_inverts_multiplication(p in poly_strategy(), q in nonzero_poly()) {
        let prod = &p * &q;
        prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly_strategy(), q in poly_strategy()) {
        let target = VarTable::new(["u", "v"]).unwrap();
        let mut b = HashMap::new();
        b.insert("a".to_string(), LaurentPoly::parse(&target, "u + v").unwrap());
        b.insert("b".to_string(), LaurentPoly::parse(&target, "u*v^-1").unwrap());
        b.insert("c".to_string(), LaurentPoly::parse(&target, "2*v").unwrap());
        let s = |x: &LaurentPoly| x.substitute_into(&b, &target);
        // Negative powers of `u + v` leave the Laurent ring, so only compare
        // when every substitution succeeds.
        if let (Ok(sp), Ok(sq), Ok(spq)) = (s(&p), s(&q), s(&(&p * &q))) {
            prop_assert_eq!(spq, &sp * &sq);
        }
        if let (Ok(sp), Ok(sq), Ok(spq)) = (s(&p), s(&q), s(&(&p + &q))) {
            prop_assert_eq!(spq, &sp + &sq);
        }
    }

    #[test]
    fn json_round_trip(p in poly_strategy()) {
        let text = serde_json::to_string(&p.to_json()).unwrap();
        let back = LaurentPoly::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, p.clone());
        prop_assert_eq!(LaurentPoly::parse(&table(), &p.to_string()).unwrap(), p);
    }

    #[test]
    fn mutation_is_an_involution(which in 0usize..3, seq in prop::collection::vec(0usize..3, 0..7), k in 0usize..3) {
        let seed: GenSeed = match which {
            0 => initial_seed(2).unwrap(),
            1 => initial_seed(3).unwrap(),
            _ => sl3::g2_initial_seed().unwrap(),
        };
        let r = seed.rank();
        let seq: Vec<usize> = seq.into_iter().map(|s| s % r).collect();
        let s = seed.mutate_sequence(&seq).unwrap();
        let k = k % r;
        let back = s.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert!(back.same_seed(&s));
    }

    #[test]
    fn sl2_decomposition_is_conservative(
        l in 2usize..=4,
        exps in prop::collection::vec(prop::collection::vec(0i32..=2, 4), 1..4),
    ) {
        let labels: Vec<SimpleLabelA1> = exps
            .iter()
            .map(|e| sl2::factor_dominant(l, &Mono::from_dense(&e[..l])).unwrap())
            .collect();
        let t = sl2::y_table(l).unwrap();
        let mut chi = LaurentPoly::one(&t);
        for lab in &labels {
            chi = &chi * &sl2::simple_character(&t, l, lab).unwrap();
        }
        let parts = sl2::decompose(l, &labels).unwrap();
        let mut sum = LaurentPoly::zero(&t);
        for (lab, c) in &parts {
            prop_assert!(*c > BigInt::from(0));
            sum = &sum + &sl2::simple_character(&t, l, lab).unwrap().scale(c);
        }
        prop_assert_eq!(sum, chi);
    }

    #[test]
    fn sl2_rotation_commutes_with_characters(
        l in 2usize..=5,
        e in prop::collection::vec(0i32..=3, 5),
        shift in 0usize..5,
    ) {
        let t = sl2::y_table(l).unwrap();
        let lab = sl2::factor_dominant(l, &Mono::from_dense(&e[..l])).unwrap();
        let moved = sl2::shift_label(l, &lab, shift);
        prop_assert_eq!(
            sl2::simple_character(&t, l, &moved).unwrap(),
            sl2::shift_character(&sl2::simple_character(&t, l, &lab).unwrap(), l, shift)
        );
    }

    #[test]
    fn sl3_labels_are_canonical(e in prop::collection::vec(0i32..=3, 4)) {
        let m = Mono::from_dense(&e);
        let lab = SimpleLabelA2L2::from_monomial(&m).unwrap();
        prop_assert_eq!(lab.dominant_monomial(), m);
        let chi = sl3::simple_character_l2(&lab);
        let (top, c) = chi.leading_dominant_term().unwrap();
        prop_assert_eq!(top, lab.dominant_monomial());
        prop_assert_eq!(c, BigInt::from(1));
    }
}

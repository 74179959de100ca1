use objcomb::incidence::{Monomial, Poly, TensorPoly};
use objcomb::lambda::Lambda;
use objcomb::partition::Partition;
use objcomb::rational::{q, Q};
use objcomb::series::{compose1, plethystic_substitute, MultiSeries, Series1};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn partition_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (0usize..=6).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n.max(1), n),
            proptest::collection::vec(0..n.max(1), n),
        )
            .prop_map(|(a, b)| (Partition::from_labels(&a), Partition::from_labels(&b)))
    })
}

fn lambda() -> impl Strategy<Value = Lambda> {
    proptest::collection::vec(1usize..=4, 1..=4).prop_map(Lambda::from_block_sizes)
}

fn rational() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn lattice_laws((a, b) in partition_pair()) {
        let m = a.meet(&b).unwrap();
        let j = a.join(&b).unwrap();
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert!(m.refines(&a).unwrap() && m.refines(&b).unwrap());
        prop_assert!(a.refines(&j).unwrap() && b.refines(&j).unwrap());
        prop_assert_eq!(a.meet(&j).unwrap(), a.clone());
        prop_assert_eq!(a.join(&m).unwrap(), a.clone());
        prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
    }

    #[test]
    fn partition_serde_round_trip((a, _) in partition_pair()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: Partition = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a.clone());
        prop_assert_eq!(Partition::parse_blocks(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn lambda_type_is_a_class_invariant((a, _) in partition_pair(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut p: Vec<usize> = (0..a.ground_size()).collect();
        p.shuffle(&mut rng(seed));
        prop_assert_eq!(a.permute(&p).lambda_type(), a.lambda_type());
        prop_assert_eq!(a.lambda_type().weight(), a.ground_size());
        prop_assert_eq!(a.lambda_type().parts(), a.block_count());
    }

    #[test]
    fn lambda_map_syntax_round_trips(l in lambda()) {
        prop_assert_eq!(Lambda::parse_map(&l.to_string()).unwrap(), l.clone());
        prop_assert_eq!(Lambda::from_dense(&l.dense()), l);
    }

    #[test]
    fn poly_and_tensor_json_round_trip(
        terms in proptest::collection::vec((lambda(), lambda(), rational()), 0..6),
    ) {
        let mut p = Poly::zero();
        let mut t = TensorPoly::zero();
        for (a, b, c) in terms {
            p.add_term(Monomial::new(vec![a.clone(), b.clone()]), c.clone());
            t.add_term(Monomial::generator(a), Monomial::generator(b), c);
        }
        prop_assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        prop_assert_eq!(TensorPoly::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn multiseries_text_and_json_round_trip(seed in any::<u64>(), w in 0usize..=4) {
        let s = MultiSeries::random(w, false, &mut rng(seed));
        prop_assert_eq!(MultiSeries::parse(&s.to_string(), w).unwrap(), s.clone());
        prop_assert_eq!(MultiSeries::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let f = Series1::random(n, true, &mut r);
        let g = Series1::random(n, true, &mut r);
        let h = Series1::random(n, false, &mut r);
        prop_assert_eq!(
            compose1(&h, &compose1(&g, &f).unwrap()).unwrap(),
            compose1(&compose1(&h, &g).unwrap(), &f).unwrap()
        );
        prop_assert_eq!(compose1(&h, &Series1::x(n)).unwrap(), h);
    }

    #[test]
    fn plethysm_is_associative(seed in any::<u64>(), w in 1usize..=4) {
        let mut r = rng(seed);
        let f = MultiSeries::random(w, true, &mut r);
        let g = MultiSeries::random(w, true, &mut r);
        let h = MultiSeries::random(w, false, &mut r);
        prop_assert_eq!(
            plethystic_substitute(&h, &plethystic_substitute(&g, &f).unwrap()).unwrap(),
            plethystic_substitute(&plethystic_substitute(&h, &g).unwrap(), &f).unwrap()
        );
        prop_assert_eq!(plethystic_substitute(&h, &MultiSeries::variable(w, 1)).unwrap(), h);
    }
}

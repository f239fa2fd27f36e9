//! Algebraic invariants on generated instances.

use convexmod::random::InstanceRng;
use convexmod::terms::{axiom_schemas, random_term};
use convexmod::*;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn vars(n: usize) -> Vec<Symbol> {
    VARS[..n].iter().map(|v| Symbol::new(v)).collect()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=4, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn point(n: usize) -> impl Strategy<Value = FinSupp<Symbol>> {
    prop::collection::vec((0..n, scalar()), 0..=n).prop_map(move |entries| {
        FinSupp::from_entries(
            Semiring::QPlus,
            entries.into_iter().map(|(i, v)| (Symbol::new(VARS[i]), v)),
        )
        .unwrap()
    })
}

fn gens(n: usize) -> impl Strategy<Value = Vec<FinSupp<Symbol>>> {
    prop::collection::vec(point(n), 1..=4)
}

fn set(n: usize) -> impl Strategy<Value = ConvexSet<Symbol>> {
    prop_oneof![
        1 => Just(ConvexSet::empty(Semiring::QPlus)),
        8 => gens(n).prop_map(|g| ConvexSet::from_generators(Semiring::QPlus, g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent(g in gens(3)) {
        let a = ConvexSet::from_generators(Semiring::QPlus, g).unwrap();
        let again = ConvexSet::from_generators(Semiring::QPlus, a.generators().to_vec()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn canonical_form_ignores_order(g in gens(3).prop_shuffle(), seed in any::<u64>()) {
        let a = ConvexSet::from_generators(Semiring::QPlus, g.clone()).unwrap();
        let mut h = g;
        InstanceRng::new(seed).shuffle(&mut h);
        prop_assert_eq!(ConvexSet::from_generators(Semiring::QPlus, h).unwrap(), a);
    }

    #[test]
    fn generators_and_their_combinations_are_members(g in gens(3), w in prop::collection::vec(1i64..5, 4)) {
        let sr = Semiring::QPlus;
        let a = ConvexSet::from_generators(sr, g.clone()).unwrap();
        for p in &g {
            prop_assert!(a.member(p).unwrap());
        }
        let total: i64 = w[..g.len()].iter().sum();
        let weights: Vec<Scalar> = w[..g.len()].iter().map(|&x| rat(x, total)).collect();
        let combo = FinSupp::combination(sr, weights.iter().zip(&g));
        prop_assert!(a.member(&combo).unwrap());
    }

    #[test]
    fn minkowski_sum_is_a_commutative_monoid(a in set(2), b in set(2), c in set(2)) {
        let zero = ConvexSet::zero(Semiring::QPlus);
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&zero), a);
    }

    #[test]
    fn scaling_distributes(a in set(2), b in set(2), l in scalar(), m in scalar()) {
        let sr = Semiring::QPlus;
        prop_assert_eq!(a.add(&b).scale(&l), a.scale(&l).add(&b.scale(&l)));
        prop_assert_eq!(a.scale(&sr.add(&l, &m)), a.scale(&l).add(&a.scale(&m)));
        prop_assert_eq!(a.scale(&m).scale(&l), a.scale(&sr.mul(&l, &m)));
        prop_assert_eq!(a.scale(&sr.zero()), ConvexSet::zero(sr));
    }

    #[test]
    fn sums_distribute_over_joins(a in set(2), b in set(2), c in set(2), l in scalar()) {
        let sr = Semiring::QPlus;
        prop_assert_eq!(ConvexSet::<Symbol>::empty(sr).scale(&l), ConvexSet::empty(sr));
        prop_assert_eq!(a.add(&ConvexSet::empty(sr)), ConvexSet::empty(sr));
        prop_assert_eq!(b.join(&c).scale(&l), b.scale(&l).join(&c.scale(&l)));
        prop_assert_eq!(a.add(&b.join(&c)), a.add(&b).join(&a.add(&c)));
    }

    #[test]
    fn axioms_are_sound(seed in any::<u64>(), boolean in any::<bool>()) {
        let sr = if boolean { Semiring::Bool } else { Semiring::QPlus };
        let xs = vars(2);
        let mut rng = InstanceRng::new(seed);
        for ax in axiom_schemas() {
            let t: Vec<Term> = (0..3).map(|_| random_term(&mut rng, sr, &xs, 2)).collect();
            let l = rng.nonzero_scalar(sr, 3);
            let m = if rng.coin(0.3) { sr.zero() } else { rng.nonzero_scalar(sr, 3) };
            let (lhs, rhs) = (ax.build)(&t[0], &t[1], &t[2], &l, &m, sr);
            prop_assert!(term_equal(&lhs, &rhs, sr, &xs).unwrap(), "{}: {} = {}", ax.name, lhs, rhs);
        }
    }

    #[test]
    fn printed_terms_parse_back(seed in any::<u64>()) {
        let sr = Semiring::QPlus;
        let mut rng = InstanceRng::new(seed);
        let t = random_term(&mut rng, sr, &vars(3), 4);
        prop_assert_eq!(parse(&t.to_string(), sr).unwrap(), t);
    }

    #[test]
    fn every_set_is_denoted_by_a_term(a in set(2)) {
        let xs = vars(2);
        prop_assert_eq!(eval(&term_from_set(&a), Semiring::QPlus, &xs).unwrap(), a);
    }

    #[test]
    fn free_semimodule_monad_laws(p in point(3), q in point(3), r in point(3), l in scalar(), m in scalar()) {
        let sr = Semiring::QPlus;
        prop_assert_eq!(fs_mult(&fs_unit(sr, p.clone())).unwrap(), p.clone());
        prop_assert_eq!(fs_mult(&p.map_keys(|x| Ok(fs_unit(sr, x.clone()))).unwrap()).unwrap(), p.clone());
        let inner1 = FinSupp::from_entries(sr, [(p.clone(), l.clone()), (q.clone(), m.clone())]).unwrap();
        let inner2 = FinSupp::from_entries(sr, [(r.clone(), m.clone())]).unwrap();
        let outer = FinSupp::from_entries(sr, [(inner1, l.clone()), (inner2, sr.one())]).unwrap();
        let lhs = fs_mult(&fs_mult(&outer).unwrap()).unwrap();
        let rhs = fs_mult(&outer.map_keys(fs_mult).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rendered_intervals_bound_the_set(a in set(1)) {
        let xs = vars(1);
        match render_interval(&a, &xs).unwrap() {
            Interval::Empty => prop_assert!(a.is_empty()),
            Interval::Closed(lo, hi) => {
                prop_assert!(lo <= hi);
                for g in a.generators() {
                    let v = g.get(&xs[0]).to_rational();
                    prop_assert!(lo <= v && v <= hi);
                }
            }
        }
    }
}

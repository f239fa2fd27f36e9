//! The pentagon of a δ-algebra `(X, a, b)`: `a ∘ S(b) = b ∘ P(a) ∘ δ`.
//!
//! Both algebras checked here are complete semilattices and semimodules:
//! the free one `P_cf S X` (with `a = α` and `b` the hull of the union),
//! and the intervals `P_cf S(1)` computed by interval arithmetic.
//!
//! On the right leg `b` of the image of `δ(Φ) = hull c(Φ)` equals `b` of
//! the image of `c(Φ)`, because `a` is affine and `b` absorbs hulls.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::choice_set;
use super::laws::{run_law, weightings, LawConfig};
use crate::composite::alpha;
use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::interval::Interval;
use crate::json::ToJson;
use crate::random::InstanceRng;
use crate::report::{Expectation, LawReport};
use crate::semiring::{Scalar, Semiring};
use crate::symbol::{numbered, powerset, Symbol};

/// Both legs on the free algebra.
pub fn pentagon_free<K: Ord + Clone>(phi: &FinSupp<BTreeSet<ConvexSet<K>>>) -> Result<(ConvexSet<K>, ConvexSet<K>)> {
    let sr = phi.semiring();
    let joined = phi.map_keys(|fam| Ok(ConvexSet::join_all(sr, fam)))?;
    let lhs = alpha(&joined)?;
    let images = choice_set(phi).iter().map(alpha).collect::<Result<Vec<_>>>()?;
    let rhs = ConvexSet::join_all(sr, &images);
    Ok((lhs, rhs))
}

/// Both legs on the interval algebra.
pub fn pentagon_interval(phi: &FinSupp<BTreeSet<Interval>>) -> (Interval, Interval) {
    let joined = phi.map_keys(|fam| Ok(Interval::sup(fam))).expect("total");
    let lhs = Interval::combine(joined.entries().iter().map(|(i, w)| (w, i)));
    let images: Vec<Interval> = choice_set(phi)
        .iter()
        .map(|xi| Interval::combine(xi.entries().iter().map(|(i, w)| (w, i))))
        .collect();
    (lhs, Interval::sup(&images))
}

/// All convex sets over the booleans on `vars`, the empty one included.
pub fn all_bool_convex_sets(vars: &[Symbol]) -> Vec<ConvexSet<Symbol>> {
    let sr = Semiring::Bool;
    let points: Vec<FinSupp<Symbol>> = powerset(vars)
        .into_iter()
        .map(|s| FinSupp::from_entries(sr, s.into_iter().map(|x| (x, sr.one()))).expect("boolean"))
        .collect();
    powerset(&points)
        .into_iter()
        .map(|gens| ConvexSet::from_generators(sr, gens).expect("one semiring"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn small_rat(rng: &mut InstanceRng, max: usize) -> BigRational {
    BigRational::new(BigInt::from(rng.range(0, max)), BigInt::from(rng.range(1, 3)))
}

pub fn random_interval(rng: &mut InstanceRng) -> Interval {
    if rng.coin(0.1) {
        return Interval::Empty;
    }
    let lo = small_rat(rng, 6);
    let hi = &lo + small_rat(rng, 4);
    Interval::closed(lo, hi)
}

fn random_keyed<T: Ord + Clone>(
    rng: &mut InstanceRng,
    sr: Semiring,
    mut item: impl FnMut(&mut InstanceRng) -> T,
) -> FinSupp<BTreeSet<T>> {
    let n = rng.range(1, 3);
    let entries: Vec<_> = (0..n)
        .map(|_| {
            let size = if rng.coin(0.05) { 0 } else { rng.range(1, 3) };
            let key: BTreeSet<T> = (0..size).map(|_| item(rng)).collect();
            (key, rng.nonzero_scalar(sr, 3))
        })
        .collect();
    FinSupp::from_entries(sr, entries).expect("valid scalars")
}

fn cmp_legs<T: PartialEq + ToJson>((lhs, rhs): (T, T)) -> Option<(serde_json::Value, serde_json::Value)> {
    (lhs != rhs).then(|| (lhs.to_json(), rhs.to_json()))
}

pub fn check_pentagon(cfg: &LawConfig) -> Result<Vec<LawReport>> {
    let sr = cfg.semiring;
    if !sr.is_semifield() {
        return Err(Error::Unsupported {
            op: "pentagon",
            semiring: sr,
            hint: "the free algebra needs a positive semifield",
        });
    }
    let vars = numbered("x", cfg.xsize);
    let mut rng = InstanceRng::new(cfg.seed);
    let trials = cfg.trials.max(1);
    let mut out = Vec::new();

    let free = LawReport::new("pentagon", "free-algebra", sr, Expectation::Holds);
    if sr == Semiring::Bool && cfg.xsize <= 2 {
        let carrier = all_bool_convex_sets(&vars);
        let keys: Vec<BTreeSet<ConvexSet<Symbol>>> = powerset(&carrier)
            .into_iter()
            .filter(|k| k.len() <= 2)
            .collect();
        let instances = weightings(sr, &keys, 2, 1);
        let note = format!(
            "exhaustive: {} convex sets, keys of at most 2 sets, supports of at most 2 keys",
            carrier.len()
        );
        out.push(run_law(free.with_note(note), instances, |phi| {
            Ok(cmp_legs(pentagon_free(phi)?))
        })?);
    } else {
        let instances: Vec<_> = (0..trials)
            .map(|_| {
                random_keyed(&mut rng, sr, |r| {
                    if r.coin(0.1) {
                        ConvexSet::empty(sr)
                    } else {
                        r.convex_set(sr, &vars, 2, 2)
                    }
                })
            })
            .collect();
        let note = format!("{trials} seeded instances, seed {}", cfg.seed);
        out.push(run_law(free.with_note(note), instances, |phi| {
            Ok(cmp_legs(pentagon_free(phi)?))
        })?);
    }

    if sr == Semiring::QPlus {
        let instances: Vec<_> = (0..trials)
            .map(|_| random_keyed(&mut rng, sr, random_interval))
            .collect();
        let interval = LawReport::new("pentagon", "interval-algebra", sr, Expectation::Holds)
            .with_note(format!("{trials} seeded instances, seed {}", cfg.seed));
        out.push(run_law(interval, instances, |phi| Ok(cmp_legs(pentagon_interval(phi))))?);

        // Minkowski sums of convex sets on one variable against the interval rule
        let x = Symbol::new("x");
        let pairs: Vec<(Interval, Interval)> = (0..trials)
            .map(|_| (random_interval(&mut rng), random_interval(&mut rng)))
            .collect();
        let sum = LawReport::new("pentagon", "interval-sum", sr, Expectation::Holds)
            .with_note(format!("{trials} seeded pairs, seed {}", cfg.seed));
        out.push(run_law(sum, pairs, |(a, b)| {
            let as_set = |i: &Interval| interval_to_set(&x, i);
            let lhs = as_set(a).add(&as_set(b));
            let rhs = as_set(&a.add(b));
            Ok(cmp_legs((lhs, rhs)))
        })?);
    }
    Ok(out)
}

/// The convex set on the single variable `x` denoted by an interval.
pub fn interval_to_set(x: &Symbol, i: &Interval) -> ConvexSet<Symbol> {
    let sr = Semiring::QPlus;
    match i {
        Interval::Empty => ConvexSet::empty(sr),
        Interval::Closed(a, b) => {
            let pt = |v: &BigRational| FinSupp::from_entries(sr, [(x.clone(), Scalar::Rat(v.clone()))]).expect("qplus");
            ConvexSet::from_generators(sr, vec![pt(a), pt(b)]).expect("one semiring")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::rat;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::closed(rat(a, 1).to_rational(), rat(b, 1).to_rational())
    }

    #[test]
    fn interval_sum_example() {
        let sr = Semiring::QPlus;
        let phi = FinSupp::from_entries(
            sr,
            [(BTreeSet::from([iv(1, 2)]), sr.one()), (BTreeSet::from([iv(5, 6)]), sr.one())],
        )
        .unwrap();
        assert_eq!(pentagon_interval(&phi), (iv(6, 8), iv(6, 8)));
        let phi = FinSupp::from_entries(sr, [(BTreeSet::from([iv(1, 2), iv(5, 6)]), rat(2, 1))]).unwrap();
        assert_eq!(pentagon_interval(&phi), (iv(2, 12), iv(2, 12)));
        let eps = FinSupp::<BTreeSet<Interval>>::zero(sr);
        assert_eq!(pentagon_interval(&eps), (Interval::zero(), Interval::zero()));
    }

    #[test]
    fn free_single_key_is_scaled_sup() {
        let sr = Semiring::QPlus;
        let x = Symbol::new("x");
        let a = interval_to_set(&x, &iv(1, 2));
        let b = interval_to_set(&x, &iv(4, 4));
        let lambda = rat(3, 2);
        let phi = FinSupp::from_entries(sr, [(BTreeSet::from([a.clone(), b.clone()]), lambda.clone())]).unwrap();
        let (lhs, rhs) = pentagon_free(&phi).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, a.join(&b).scale(&lambda));
    }

    #[test]
    fn bool_carrier_size() {
        // families of subsets of a 2-set closed under nonempty unions, plus ∅
        assert_eq!(all_bool_convex_sets(&numbered("x", 2)).len(), 14);
    }

    #[test]
    fn suites_hold() {
        for sr in [Semiring::Bool, Semiring::QPlus] {
            let cfg = LawConfig {
                trials: 30,
                ..LawConfig::new(sr)
            };
            for r in check_pentagon(&cfg).unwrap() {
                assert!(r.holds(), "{r:?}");
            }
        }
        assert!(check_pentagon(&LawConfig::new(Semiring::Nat)).is_err());
    }
}

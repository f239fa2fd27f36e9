//! The weak distributive law `δ: S P -> P S`.
//!
//! `δ(Φ)` is the set of `φ` for which some `ψ ∈ S(∋)` has `Φ` and `φ` as
//! its two marginals. Over a positive semifield it is the convex hull of
//! the choice set `c(Φ)`, which is what [`delta_hull`] computes; over the
//! booleans and the naturals [`delta_bruteforce`] enumerates the witnesses
//! `ψ` directly.

pub mod laws;
pub mod pentagon;
pub mod relation;

use std::collections::BTreeSet;

use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::semiring::{Scalar, Semiring};
use crate::symbol::{Symbol, SymbolSet};

/// An element `Φ` of `S P X`.
pub type SetWeighting = FinSupp<SymbolSet>;

/// An element `ψ` of `S(∋)`: weights on pairs `(A, x)` with `x ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWeighting(FinSupp<(SymbolSet, Symbol)>);

impl MembershipWeighting {
    pub fn new(
        semiring: Semiring,
        entries: impl IntoIterator<Item = ((SymbolSet, Symbol), Scalar)>,
    ) -> Result<Self> {
        let f = FinSupp::from_entries(semiring, entries)?;
        if let Some(((a, x), _)) = f.entries().iter().find(|((a, x), _)| !a.contains(x)) {
            return Err(Error::Invalid(format!("{x} is not a member of {a:?}")));
        }
        Ok(MembershipWeighting(f))
    }

    pub fn weights(&self) -> &FinSupp<(SymbolSet, Symbol)> {
        &self.0
    }
}

/// The choice set `c(Φ) = { S(u)(Φ) | u(A) ∈ A for A ∈ supp Φ }`.
///
/// Built one key at a time, merging equal partial sums; empty when some key
/// is the empty set, and `{ε}` when `Φ = ε`.
pub fn choice_set<K: Ord + Clone>(phi: &FinSupp<BTreeSet<K>>) -> Vec<FinSupp<K>> {
    let sr = phi.semiring();
    let mut partial: BTreeSet<FinSupp<K>> = BTreeSet::from([FinSupp::zero(sr)]);
    for (set, w) in phi.entries() {
        partial = partial
            .iter()
            .flat_map(|p| set.iter().map(move |x| p.add(&FinSupp::unit(sr, x.clone()).scale(w))))
            .collect();
    }
    partial.into_iter().collect()
}

/// `δ(Φ)` over a positive semifield, as the hull of `c(Φ)`.
pub fn delta_hull<K: Ord + Clone>(phi: &FinSupp<BTreeSet<K>>) -> Result<ConvexSet<K>> {
    let sr = phi.semiring();
    if !sr.is_semifield() {
        return Err(Error::Unsupported {
            op: "delta_hull",
            semiring: sr,
            hint: "not a semifield; use brute force",
        });
    }
    ConvexSet::from_generators(sr, choice_set(phi))
}

/// Weak compositions of `total` into `parts` ordered parts.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `δ(Φ)` from its definition, by enumerating the witnesses `ψ`.
///
/// Over the booleans `ψ(A, -)` ranges over the nonempty subsets of `A`,
/// over the naturals over the compositions of `Φ(A)` into `|A|` parts. The
/// marginal `φ` is accumulated key by key with equal partial sums merged.
/// `bound` caps the number of partial results and of local choices.
pub fn delta_bruteforce<K: Ord + Clone>(phi: &FinSupp<BTreeSet<K>>, bound: usize) -> Result<Vec<FinSupp<K>>> {
    let sr = phi.semiring();
    if sr == Semiring::QPlus {
        return Err(Error::Unsupported {
            op: "delta_bruteforce",
            semiring: sr,
            hint: "use delta_hull + delta_witness_check",
        });
    }
    let mut partial: BTreeSet<FinSupp<K>> = BTreeSet::from([FinSupp::zero(sr)]);
    for (set, w) in phi.entries() {
        let items: Vec<&K> = set.iter().collect();
        let local: Vec<FinSupp<K>> = match sr {
            Semiring::QPlus => unreachable!(),
            Semiring::Bool => {
                if items.len() >= 20 {
                    return Err(Error::EnumerationTooLarge {
                        what: "witness rows",
                        bound,
                    });
                }
                (1u64..1 << items.len())
                    .map(|mask| {
                        let picked = items
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, &x)| (x.clone(), sr.one()));
                        FinSupp::from_entries(sr, picked).expect("boolean values")
                    })
                    .collect()
            }
            Semiring::Nat => {
                let total = w.to_u64().ok_or(Error::EnumerationTooLarge {
                    what: "witness rows",
                    bound,
                })?;
                compositions(total, items.len())
                    .into_iter()
                    .map(|parts| {
                        let entries = items.iter().zip(parts).map(|(&x, n)| (x.clone(), sr.from_u64(n)));
                        FinSupp::from_entries(sr, entries).expect("natural values")
                    })
                    .collect()
            }
        };
        if local.len() > bound {
            return Err(Error::EnumerationTooLarge {
                what: "witness rows",
                bound,
            });
        }
        partial = partial
            .iter()
            .flat_map(|p| local.iter().map(move |l| p.add(l)))
            .collect();
        if partial.len() > bound {
            return Err(Error::EnumerationTooLarge {
                what: "delta elements",
                bound,
            });
        }
    }
    Ok(partial.into_iter().collect())
}

/// Default cap for [`delta_bruteforce`].
pub const BRUTEFORCE_BOUND: usize = 1 << 20;

/// Whether `ψ` has marginals `Φ` (condition a) and `φ` (condition b).
pub fn delta_witness_check(phi: &SetWeighting, target: &FinSupp<Symbol>, psi: &MembershipWeighting) -> bool {
    let sr = phi.semiring();
    let psi = psi.weights();
    if target.semiring() != sr || psi.semiring() != sr {
        return false;
    }
    let on_sets = psi.map_keys(|(a, _)| Ok(a.clone())).expect("total");
    let on_points = psi.map_keys(|(_, x)| Ok(x.clone())).expect("total");
    on_sets == *phi && on_points == *target
}

/// All elements of a convex set over the booleans on the variables `vars`.
pub fn bool_elements<K: Ord + Clone>(a: &ConvexSet<K>, vars: &[K]) -> Result<Vec<FinSupp<K>>> {
    let sr = a.semiring();
    if sr != Semiring::Bool {
        return Err(Error::Unsupported {
            op: "bool_elements",
            semiring: sr,
            hint: "only boolean sets are finite",
        });
    }
    let mut out = Vec::new();
    for s in crate::symbol::powerset(vars) {
        let phi = FinSupp::from_entries(sr, s.into_iter().map(|x| (x, sr.one())))?;
        if a.member(&phi)? {
            out.push(phi);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::rat;
    use crate::symbol::symset;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    fn fs(sr: Semiring, pairs: &[(&str, u64)]) -> FinSupp<Symbol> {
        FinSupp::from_entries(sr, pairs.iter().map(|&(k, v)| (s(k), sr.from_u64(v)))).unwrap()
    }

    fn weighting(sr: Semiring, pairs: &[(&[&str], u64)]) -> SetWeighting {
        FinSupp::from_entries(sr, pairs.iter().map(|&(a, v)| (symset(a.iter().copied()), sr.from_u64(v)))).unwrap()
    }

    fn example_33(sr: Semiring) -> SetWeighting {
        weighting(sr, &[(&["x", "y"], 5), (&["y", "z"], 9), (&["a", "b"], 13)])
    }

    fn example_33_psi(sr: Semiring) -> MembershipWeighting {
        let rows = [
            (&["x", "y"][..], "x", 2),
            (&["x", "y"], "y", 3),
            (&["y", "z"], "y", 4),
            (&["y", "z"], "z", 5),
            (&["a", "b"], "a", 6),
            (&["a", "b"], "b", 7),
        ];
        MembershipWeighting::new(
            sr,
            rows.iter().map(|&(a, x, v)| ((symset(a.iter().copied()), s(x)), sr.from_u64(v))),
        )
        .unwrap()
    }

    fn example_33_phi(sr: Semiring) -> FinSupp<Symbol> {
        fs(sr, &[("x", 2), ("y", 7), ("z", 5), ("a", 6), ("b", 7)])
    }

    #[test]
    fn choice_set_of_two_sets() {
        let sr = Semiring::QPlus;
        let phi = weighting(sr, &[(&["x", "y"], 1), (&["y", "z"], 2)]);
        let c = choice_set(&phi);
        let mut expected = vec![
            fs(sr, &[("x", 1), ("y", 2)]),
            fs(sr, &[("x", 1), ("z", 2)]),
            fs(sr, &[("y", 3)]),
            fs(sr, &[("y", 1), ("z", 2)]),
        ];
        expected.sort();
        assert_eq!(c, expected);
        let d = delta_hull(&phi).unwrap();
        let mid = fs(sr, &[("x", 1), ("y", 1), ("z", 1)]);
        assert!(d.member(&mid).unwrap());
        assert!(!c.contains(&mid));
    }

    #[test]
    fn degenerate_choice_sets() {
        let sr = Semiring::QPlus;
        assert!(choice_set(&weighting(sr, &[(&[], 1), (&["x"], 1)])).is_empty());
        assert_eq!(choice_set(&SetWeighting::zero(sr)), vec![FinSupp::zero(sr)]);
        assert_eq!(delta_hull(&SetWeighting::zero(sr)).unwrap(), ConvexSet::zero(sr));
    }

    #[test]
    fn example_33_in_delta() {
        let sr = Semiring::QPlus;
        let d = delta_hull(&example_33(sr)).unwrap();
        assert!(d.member(&example_33_phi(sr)).unwrap());
        assert!(delta_witness_check(&example_33(sr), &example_33_phi(sr), &example_33_psi(sr)));
    }

    #[test]
    fn perturbed_witness_fails() {
        let sr = Semiring::QPlus;
        let psi = example_33_psi(sr).weights().clone();
        let bump = FinSupp::unit(sr, (symset(["x", "y"]), s("x"))).scale(&rat(1, 1));
        let psi = MembershipWeighting(psi.add(&bump));
        assert!(!delta_witness_check(&example_33(sr), &example_33_phi(sr), &psi));
        let e = MembershipWeighting::new(sr, []).unwrap();
        assert!(delta_witness_check(&SetWeighting::zero(sr), &FinSupp::zero(sr), &e));
    }

    #[test]
    fn membership_weighting_rejects_non_members() {
        assert!(MembershipWeighting::new(Semiring::Nat, [((symset(["x"]), s("y")), Semiring::Nat.one())]).is_err());
    }

    #[test]
    fn bool_bruteforce_of_a_pair() {
        let sr = Semiring::Bool;
        let d = delta_bruteforce(&weighting(sr, &[(&["p", "q"], 1)]), BRUTEFORCE_BOUND).unwrap();
        let mut expected = vec![fs(sr, &[("p", 1)]), fs(sr, &[("q", 1)]), fs(sr, &[("p", 1), ("q", 1)])];
        expected.sort();
        assert_eq!(d, expected);
    }

    #[test]
    fn nat_bruteforce_exceeds_choices() {
        let sr = Semiring::Nat;
        let d = delta_bruteforce(&example_33(sr), BRUTEFORCE_BOUND).unwrap();
        let c = choice_set(&example_33(sr));
        assert!(d.contains(&example_33_phi(sr)));
        assert!(!c.contains(&example_33_phi(sr)));
        assert!(c.iter().all(|p| d.contains(p)));
        assert!(delta_witness_check(&example_33(sr), &example_33_phi(sr), &example_33_psi(sr)));
    }

    #[test]
    fn bruteforce_edge_cases() {
        for sr in [Semiring::Bool, Semiring::Nat] {
            assert!(delta_bruteforce(&weighting(sr, &[(&[], 1)]), 100).unwrap().is_empty());
            assert_eq!(delta_bruteforce(&SetWeighting::zero(sr), 100).unwrap(), vec![FinSupp::zero(sr)]);
        }
        assert!(matches!(
            delta_bruteforce(&SetWeighting::zero(Semiring::QPlus), 100),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(
            delta_bruteforce(&example_33(Semiring::Nat), 10),
            Err(Error::EnumerationTooLarge { .. })
        ));
        assert!(matches!(delta_hull(&example_33(Semiring::Nat)), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn delta_of_a_dirac_is_the_simplex() {
        let sr = Semiring::QPlus;
        let d = delta_hull(&weighting(sr, &[(&["p", "q", "r"], 1)])).unwrap();
        let diracs: Vec<_> = ["p", "q", "r"].iter().map(|x| FinSupp::unit(sr, s(x))).collect();
        assert_eq!(d.generators(), &diracs[..]);
    }
}

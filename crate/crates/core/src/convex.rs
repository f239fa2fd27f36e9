//! Finitely generated convex subsets of `S X`.
//!
//! A [`ConvexSet`] stores the minimal generating set of its hull. For `Q+`
//! these are the vertices of the polytope, for the booleans the
//! join-irreducible members of the generated join-subsemilattice, and over
//! the naturals every set is convex so the generators are the elements.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactlp::FeasibilitySystem;
use crate::freemod::FinSupp;
use crate::semiring::{Scalar, Semiring};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvexSet<K> {
    semiring: Semiring,
    generators: Vec<FinSupp<K>>,
}

fn check_all<K>(sr: Semiring, gens: &[FinSupp<K>]) -> Result<()> {
    match gens.iter().find(|g| g.semiring() != sr) {
        Some(g) => Err(Error::SemiringMismatch {
            left: sr,
            right: g.semiring(),
        }),
        None => Ok(()),
    }
}

/// Whether `phi` lies in the hull of `gens`.
pub(crate) fn in_hull<K: Ord + Clone>(sr: Semiring, gens: &[&FinSupp<K>], phi: &FinSupp<K>) -> bool {
    match sr {
        Semiring::Nat => gens.contains(&phi),
        Semiring::Bool => {
            // hulls are the closures under nonempty binary joins
            let below: Vec<_> = gens
                .iter()
                .filter(|g| g.support().all(|k| !phi.get(k).is_zero()))
                .collect();
            if below.is_empty() {
                return false;
            }
            let covered: BTreeSet<&K> = below.iter().flat_map(|g| g.support()).collect();
            phi.support().all(|k| covered.contains(k))
        }
        Semiring::QPlus => {
            if gens.is_empty() {
                return false;
            }
            if gens.contains(&phi) {
                return true;
            }
            let axes: BTreeSet<&K> = gens.iter().flat_map(|g| g.support()).collect();
            if phi.support().any(|k| !axes.contains(k)) {
                return false;
            }
            let coords = |f: &FinSupp<K>| -> Vec<BigRational> {
                axes.iter().map(|k| f.get(k).to_rational()).collect()
            };
            let points: Vec<_> = gens.iter().map(|g| coords(g)).collect();
            FeasibilitySystem::convex_combination(&points, &coords(phi))
                .expect("coordinates share the axis set")
                .feasible()
                .is_some()
        }
    }
}

impl<K> ConvexSet<K> {
    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn generators(&self) -> &[FinSupp<K>] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

impl<K: Ord + Clone> ConvexSet<K> {
    /// The empty set, bottom of the join semilattice.
    pub fn empty(semiring: Semiring) -> Self {
        ConvexSet {
            semiring,
            generators: Vec::new(),
        }
    }

    /// `{ε}`, zero of the lifted semimodule structure.
    pub fn zero(semiring: Semiring) -> Self {
        Self::singleton(FinSupp::zero(semiring))
    }

    pub fn singleton(phi: FinSupp<K>) -> Self {
        ConvexSet {
            semiring: phi.semiring(),
            generators: vec![phi],
        }
    }

    /// The hull of `gens`, reduced to its minimal generating set.
    pub fn from_generators(semiring: Semiring, gens: impl IntoIterator<Item = FinSupp<K>>) -> Result<Self> {
        let gens: Vec<_> = gens.into_iter().collect();
        check_all(semiring, &gens)?;
        Ok(Self::canonical(semiring, gens))
    }

    fn canonical(semiring: Semiring, gens: Vec<FinSupp<K>>) -> Self {
        let mut gens: Vec<FinSupp<K>> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if semiring != Semiring::Nat {
            // A generator is redundant iff it is not extreme, and dropping a
            // redundant one keeps the hull, so one ordered pass reaches the
            // minimal set.
            let mut i = 0;
            while i < gens.len() {
                let others: Vec<&FinSupp<K>> = gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g)
                    .collect();
                if in_hull(semiring, &others, &gens[i]) {
                    gens.remove(i);
                } else {
                    i += 1;
                }
            }
        }
        ConvexSet {
            semiring,
            generators: gens,
        }
    }

    /// Hull membership.
    pub fn member(&self, phi: &FinSupp<K>) -> Result<bool> {
        self.same_semiring(phi.semiring())?;
        let gens: Vec<_> = self.generators.iter().collect();
        Ok(in_hull(self.semiring, &gens, phi))
    }

    fn same_semiring(&self, other: Semiring) -> Result<()> {
        if self.semiring == other {
            Ok(())
        } else {
            Err(Error::SemiringMismatch {
                left: self.semiring,
                right: other,
            })
        }
    }

    /// Inclusion of hulls.
    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_semiring(other.semiring)?;
        for g in &self.generators {
            if !other.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of hulls by mutual inclusion, independent of canonical forms.
    pub fn same_hull(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// `λ·A`, which is `{ε}` when `λ = 0` whatever `A` is.
    pub fn scale(&self, lambda: &Scalar) -> Self {
        if lambda.is_zero() {
            return Self::zero(self.semiring);
        }
        Self::canonical(self.semiring, self.generators.iter().map(|g| g.scale(lambda)).collect())
    }

    /// Minkowski sum. Panics on mixed semirings.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.semiring, other.semiring, "mixed semirings");
        let sums = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.add(b)))
            .collect();
        Self::canonical(self.semiring, sums)
    }

    /// Hull of the union. Panics on mixed semirings.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.semiring, other.semiring, "mixed semirings");
        let all = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::canonical(self.semiring, all)
    }

    /// Hull of a union of many sets.
    pub fn join_all<'a>(semiring: Semiring, sets: impl IntoIterator<Item = &'a Self>) -> Self
    where
        K: 'a,
    {
        let all = sets.into_iter().flat_map(|s| s.generators.iter().cloned()).collect::<Vec<_>>();
        assert!(all.iter().all(|g| g.semiring() == semiring), "mixed semirings");
        Self::canonical(semiring, all)
    }

    /// The points not properly inside any segment, which for a canonical
    /// set are its generators.
    pub fn extreme_points(&self) -> &[FinSupp<K>] {
        &self.generators
    }

    /// Image under the functor action on keys.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Result<L>) -> Result<ConvexSet<L>> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_keys(&mut f))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConvexSet::canonical(self.semiring, gens))
    }
}

impl<K: fmt::Debug> fmt::Debug for ConvexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("hull{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g:?}")?;
        }
        f.write_str("}")
    }
}

pub fn hull_canonicalize<K: Ord + Clone>(semiring: Semiring, gens: Vec<FinSupp<K>>) -> Result<ConvexSet<K>> {
    ConvexSet::from_generators(semiring, gens)
}

/// Set equality of hulls. Canonical forms are unique, so this compares the
/// generator lists.
pub fn cs_equal<K: Ord + Clone>(a: &ConvexSet<K>, b: &ConvexSet<K>) -> Result<bool> {
    a.same_semiring(b.semiring)?;
    Ok(a == b)
}

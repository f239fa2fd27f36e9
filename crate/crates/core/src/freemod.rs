//! The free semimodule `S X` of finitely supported functions, and its monad
//! structure.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{Scalar, Semiring};
use crate::symbol::Symbol;

/// A finitely supported function `K -> S`.
///
/// Entries are kept sorted by key with no zero values, so derived equality
/// and ordering are extensional.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FinSupp<K> {
    semiring: Semiring,
    entries: Vec<(K, Scalar)>,
}

/// An element of `S S X`.
pub type FinSupp2<K> = FinSupp<FinSupp<K>>;

impl<K> FinSupp<K> {
    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn entries(&self) -> &[(K, Scalar)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl<K: Ord + Clone> FinSupp<K> {
    /// The empty function `ε`, zero of the semimodule.
    pub fn zero(semiring: Semiring) -> Self {
        FinSupp {
            semiring,
            entries: Vec::new(),
        }
    }

    /// The Dirac function `Δ_k`.
    pub fn unit(semiring: Semiring, key: K) -> Self {
        FinSupp {
            semiring,
            entries: vec![(key, semiring.one())],
        }
    }

    /// Builds a function from possibly repeated, unsorted entries; values at
    /// a repeated key are summed.
    pub fn from_entries(semiring: Semiring, entries: impl IntoIterator<Item = (K, Scalar)>) -> Result<Self> {
        let mut acc: BTreeMap<K, Scalar> = BTreeMap::new();
        for (k, v) in entries {
            semiring.check(&v)?;
            accumulate(semiring, &mut acc, k, v);
        }
        Ok(Self::from_map(semiring, acc))
    }

    fn from_map(semiring: Semiring, map: BTreeMap<K, Scalar>) -> Self {
        FinSupp {
            semiring,
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }


    pub fn get(&self, key: &K) -> Scalar {
        match self.entries.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => self.semiring.zero(),
        }
    }

    /// Sum of all values.
    pub fn total(&self) -> Scalar {
        self.semiring.sum(self.entries.iter().map(|(_, v)| v))
    }

    /// Pointwise sum. Panics on mixed semirings.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.semiring, other.semiring, "mixed semirings");
        let sr = self.semiring;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    // positive semirings never cancel, but nothing here relies on it
                    let v = sr.add(&a[i].1, &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FinSupp { semiring: sr, entries: out }
    }

    /// Scalar multiple; scaling by zero gives `ε`.
    pub fn scale(&self, lambda: &Scalar) -> Self {
        let sr = self.semiring;
        FinSupp {
            semiring: sr,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), sr.mul(lambda, v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    /// Functor action with a fallible key map; values over a fibre are summed.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Result<L>) -> Result<FinSupp<L>> {
        let mut acc = BTreeMap::new();
        for (k, v) in &self.entries {
            accumulate(self.semiring, &mut acc, f(k)?, v.clone());
        }
        Ok(FinSupp::from_map(self.semiring, acc))
    }

    /// Linear combination `Σ λ_i · φ_i`.
    pub fn combination<'a>(semiring: Semiring, terms: impl IntoIterator<Item = (&'a Scalar, &'a Self)>) -> Self
    where
        K: 'a,
    {
        let mut acc = BTreeMap::new();
        for (lambda, phi) in terms {
            for (k, v) in &phi.entries {
                accumulate(semiring, &mut acc, k.clone(), semiring.mul(lambda, v));
            }
        }
        FinSupp::from_map(semiring, acc)
    }
}

fn accumulate<K: Ord>(sr: Semiring, acc: &mut BTreeMap<K, Scalar>, k: K, v: Scalar) {
    match acc.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = sr.add(e.get(), &v);
            e.insert(s);
        }
    }
}

impl<K: fmt::Debug> fmt::Debug for FinSupp<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("ε");
        }
        f.write_str("(")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k:?}↦{v}")?;
        }
        f.write_str(")")
    }
}

pub fn fs_unit<K: Ord + Clone>(semiring: Semiring, x: K) -> FinSupp<K> {
    FinSupp::unit(semiring, x)
}

pub fn fs_zero<K: Ord + Clone>(semiring: Semiring) -> FinSupp<K> {
    FinSupp::zero(semiring)
}

pub fn fs_add<K: Ord + Clone>(a: &FinSupp<K>, b: &FinSupp<K>) -> FinSupp<K> {
    a.add(b)
}

pub fn fs_scale<K: Ord + Clone>(lambda: &Scalar, phi: &FinSupp<K>) -> FinSupp<K> {
    phi.scale(lambda)
}

/// `S(f)` for a function given as a table on symbols.
pub fn fs_map(f: &BTreeMap<Symbol, Symbol>, phi: &FinSupp<Symbol>) -> Result<FinSupp<Symbol>> {
    phi.map_keys(|x| f.get(x).cloned().ok_or_else(|| Error::UnmappedSymbol(x.to_string())))
}

/// The monad multiplication `μ(Ψ)(x) = Σ_φ Ψ(φ)·φ(x)`.
pub fn fs_mult<K: Ord + Clone>(psi: &FinSupp2<K>) -> Result<FinSupp<K>> {
    let sr = psi.semiring();
    for (phi, _) in psi.entries() {
        if phi.semiring() != sr {
            return Err(Error::SemiringMismatch {
                left: sr,
                right: phi.semiring(),
            });
        }
    }
    Ok(FinSupp::combination(sr, psi.entries().iter().map(|(phi, w)| (w, phi))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::rat;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    fn q(pairs: &[(&str, i64, i64)]) -> FinSupp<Symbol> {
        FinSupp::from_entries(
            Semiring::QPlus,
            pairs.iter().map(|&(k, p, d)| (s(k), rat(p, d))),
        )
        .unwrap()
    }

    fn b(keys: &[&str]) -> FinSupp<Symbol> {
        FinSupp::from_entries(Semiring::Bool, keys.iter().map(|k| (s(k), Scalar::Bool(true)))).unwrap()
    }

    fn table(pairs: &[(&str, &str)]) -> BTreeMap<Symbol, Symbol> {
        pairs.iter().map(|&(a, b)| (s(a), s(b))).collect()
    }

    #[test]
    fn unit_is_dirac() {
        assert_eq!(fs_unit(Semiring::QPlus, s("x")), q(&[("x", 1, 1)]));
        assert_eq!(fs_unit(Semiring::Bool, s("x")), b(&["x"]));
        assert_ne!(fs_unit(Semiring::QPlus, s("x")), fs_unit(Semiring::QPlus, s("y")));
    }

    #[test]
    fn map_sums_fibres() {
        let f = table(&[("x", "u"), ("y", "u"), ("z", "v")]);
        let phi = q(&[("x", 1, 2), ("y", 1, 2), ("z", 2, 1)]);
        assert_eq!(fs_map(&f, &phi).unwrap(), q(&[("u", 1, 1), ("v", 2, 1)]));
        let id = table(&[("x", "x"), ("y", "y"), ("z", "z")]);
        assert_eq!(fs_map(&id, &phi).unwrap(), phi);
        let g = table(&[("p", "r"), ("q", "r")]);
        assert_eq!(fs_map(&g, &b(&["p", "q"])).unwrap(), b(&["r"]));
        assert!(matches!(fs_map(&g, &b(&["z"])), Err(Error::UnmappedSymbol(_))));
    }

    #[test]
    fn mult_of_midpoint() {
        let phi1 = q(&[("x", 1, 1), ("y", 2, 1)]);
        let phi2 = q(&[("x", 1, 1), ("z", 2, 1)]);
        let psi = FinSupp::from_entries(Semiring::QPlus, [(phi1, rat(1, 2)), (phi2.clone(), rat(1, 2))]).unwrap();
        assert_eq!(fs_mult(&psi).unwrap(), q(&[("x", 1, 1), ("y", 1, 1), ("z", 1, 1)]));
        assert_eq!(fs_mult(&FinSupp::unit(Semiring::QPlus, phi2.clone())).unwrap(), phi2);
        assert!(fs_mult(&FinSupp2::<Symbol>::zero(Semiring::QPlus)).unwrap().is_zero());
    }

    #[test]
    fn pointwise_structure() {
        let a = q(&[("x", 1, 1)]);
        let c = q(&[("x", 1, 1), ("z", 2, 1)]);
        assert_eq!(fs_add(&a, &c), q(&[("x", 2, 1), ("z", 2, 1)]));
        assert!(fs_scale(&rat(0, 1), &c).is_zero());
        assert_eq!(fs_add(&b(&["x"]), &b(&["x", "z"])), b(&["x", "z"]));
        assert!(fs_zero::<Symbol>(Semiring::Nat).is_zero());
    }

    #[test]
    fn zero_entries_are_dropped() {
        let phi = FinSupp::from_entries(Semiring::QPlus, [(s("x"), rat(0, 1)), (s("y"), rat(1, 3))]).unwrap();
        assert_eq!(phi.len(), 1);
        assert_eq!(phi.get(&s("x")), rat(0, 1));
    }
}

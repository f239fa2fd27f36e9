//! The composite monad `P_cf S`: finitely generated convex subsets of `S X`,
//! with its Kleisli category.

use std::collections::{BTreeMap, BTreeSet};

use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::semiring::Semiring;
use crate::symbol::Symbol;

/// An element of `S(P_cf S X)`: finitely many convex sets with weights.
pub type ConvexFamilyWeighting<K> = FinSupp<ConvexSet<K>>;

fn require_semifield(op: &'static str, sr: Semiring) -> Result<()> {
    if sr.is_semifield() {
        Ok(())
    } else {
        Err(Error::Unsupported {
            op,
            semiring: sr,
            hint: "the lifting needs a positive semifield",
        })
    }
}

/// The lifted semimodule structure `α(Φ) = {μ(φ) | φ ∈ c(Φ)}`.
///
/// Choosing among each set's generators and taking the hull gives the
/// same set; the hull is taken after every key, which is harmless because
/// the hull of a Minkowski sum is the sum of the hulls.
pub fn alpha<K: Ord + Clone>(phi: &ConvexFamilyWeighting<K>) -> Result<ConvexSet<K>> {
    let sr = phi.semiring();
    require_semifield("alpha", sr)?;
    let mut acc = ConvexSet::zero(sr);
    for (set, w) in phi.entries() {
        if set.semiring() != sr {
            return Err(Error::SemiringMismatch {
                left: sr,
                right: set.semiring(),
            });
        }
        acc = acc.add(&set.scale(w));
    }
    Ok(acc)
}

/// `P_cf S (f)`: the image under `S(f)`.
pub fn pc_map(f: &BTreeMap<Symbol, Symbol>, a: &ConvexSet<Symbol>) -> Result<ConvexSet<Symbol>> {
    a.map_keys(|x| f.get(x).cloned().ok_or_else(|| Error::UnmappedSymbol(x.to_string())))
}

/// `{Δ_x}`.
pub fn pc_unit<K: Ord + Clone>(semiring: Semiring, x: K) -> ConvexSet<K> {
    ConvexSet::singleton(FinSupp::unit(semiring, x))
}

/// Multiplication: the hull of the union of `α(Θ)` over the generators
/// `Θ` of the outer set.
pub fn pc_mult<K: Ord + Clone>(outer: &ConvexSet<ConvexSet<K>>) -> Result<ConvexSet<K>> {
    let sr = outer.semiring();
    require_semifield("pc_mult", sr)?;
    let parts = outer.generators().iter().map(alpha).collect::<Result<Vec<_>>>()?;
    Ok(ConvexSet::join_all(sr, &parts))
}

/// A function `X -> P_cf S Y` on explicit finite variable sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleisliArrow {
    semiring: Semiring,
    source: Vec<Symbol>,
    target: Vec<Symbol>,
    table: BTreeMap<Symbol, ConvexSet<Symbol>>,
}

impl KleisliArrow {
    /// Checks that the table is total on `source`, has no other keys, and
    /// that every image lives over `target`.
    pub fn new(
        semiring: Semiring,
        source: impl IntoIterator<Item = Symbol>,
        target: impl IntoIterator<Item = Symbol>,
        table: BTreeMap<Symbol, ConvexSet<Symbol>>,
    ) -> Result<Self> {
        let source: Vec<Symbol> = source.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let target: Vec<Symbol> = target.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(x) = source.iter().find(|x| !table.contains_key(*x)) {
            return Err(Error::ShapeMismatch(format!("no image for `{x}`")));
        }
        if let Some(x) = table.keys().find(|x| source.binary_search(x).is_err()) {
            return Err(Error::ShapeMismatch(format!("`{x}` is not a source variable")));
        }
        for img in table.values() {
            if img.semiring() != semiring {
                return Err(Error::SemiringMismatch {
                    left: semiring,
                    right: img.semiring(),
                });
            }
            let stray = img
                .generators()
                .iter()
                .flat_map(|g| g.support())
                .find(|y| target.binary_search(y).is_err());
            if let Some(y) = stray {
                return Err(Error::ShapeMismatch(format!("`{y}` is not a target variable")));
            }
        }
        Ok(KleisliArrow {
            semiring,
            source,
            target,
            table,
        })
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn source(&self) -> &[Symbol] {
        &self.source
    }

    pub fn target(&self) -> &[Symbol] {
        &self.target
    }

    pub fn table(&self) -> &BTreeMap<Symbol, ConvexSet<Symbol>> {
        &self.table
    }

    pub fn apply(&self, x: &Symbol) -> Option<&ConvexSet<Symbol>> {
        self.table.get(x)
    }

    /// The Kleisli extension `g♯(A) = Sup_{φ ∈ A} Σ_y φ(y)·g(y)`.
    pub fn extend(&self, a: &ConvexSet<Symbol>) -> Result<ConvexSet<Symbol>> {
        let images = a
            .generators()
            .iter()
            .map(|phi| {
                phi.entries().iter().try_fold(ConvexSet::zero(self.semiring), |acc, (y, w)| {
                    let gy = self
                        .table
                        .get(y)
                        .ok_or_else(|| Error::UnmappedSymbol(y.to_string()))?;
                    Ok(acc.add(&gy.scale(w)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConvexSet::join_all(self.semiring, &images))
    }
}

/// `g ∘ f`.
pub fn kleisli_compose(f: &KleisliArrow, g: &KleisliArrow) -> Result<KleisliArrow> {
    if f.target != g.source || f.semiring != g.semiring {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose {:?} -> {:?} with {:?} -> {:?}",
            f.source, f.target, g.source, g.target
        )));
    }
    let table = f
        .table
        .iter()
        .map(|(x, a)| Ok((x.clone(), g.extend(a)?)))
        .collect::<Result<_>>()?;
    Ok(KleisliArrow {
        semiring: f.semiring,
        source: f.source.clone(),
        target: g.target.clone(),
        table,
    })
}

pub fn kleisli_identity(semiring: Semiring, vars: &[Symbol]) -> KleisliArrow {
    let table = vars.iter().map(|x| (x.clone(), pc_unit(semiring, x.clone()))).collect();
    KleisliArrow::new(semiring, vars.iter().cloned(), vars.iter().cloned(), table).expect("identity is total")
}

/// The constant-`∅` arrow.
pub fn kleisli_bottom(semiring: Semiring, source: &[Symbol], target: &[Symbol]) -> KleisliArrow {
    let table = source.iter().map(|x| (x.clone(), ConvexSet::empty(semiring))).collect();
    KleisliArrow::new(semiring, source.iter().cloned(), target.iter().cloned(), table).expect("bottom is total")
}

/// Pointwise join.
pub fn kleisli_join(f: &KleisliArrow, g: &KleisliArrow) -> Result<KleisliArrow> {
    if f.source != g.source || f.target != g.target || f.semiring != g.semiring {
        return Err(Error::ShapeMismatch("join of arrows with different shapes".into()));
    }
    let table = f
        .table
        .iter()
        .map(|(x, a)| (x.clone(), a.join(&g.table[x])))
        .collect();
    Ok(KleisliArrow { table, ..f.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::rat;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    fn point(v: i64) -> FinSupp<Symbol> {
        FinSupp::unit(Semiring::QPlus, s("x")).scale(&rat(v, 1))
    }

    fn interval(lo: i64, hi: i64) -> ConvexSet<Symbol> {
        ConvexSet::from_generators(Semiring::QPlus, vec![point(lo), point(hi)]).unwrap()
    }

    #[test]
    fn alpha_is_scale_and_sum() {
        let a = interval(1, 2);
        let b = interval(5, 6);
        let sr = Semiring::QPlus;
        let phi = FinSupp::from_entries(sr, [(a.clone(), rat(3, 1))]).unwrap();
        assert_eq!(alpha(&phi).unwrap(), a.scale(&rat(3, 1)));
        let phi = FinSupp::from_entries(sr, [(a.clone(), sr.one()), (b.clone(), sr.one())]).unwrap();
        assert_eq!(alpha(&phi).unwrap(), interval(6, 8));
        assert_eq!(alpha(&FinSupp::<ConvexSet<Symbol>>::zero(sr)).unwrap(), ConvexSet::zero(sr));
    }

    #[test]
    fn mult_of_two_intervals() {
        let sr = Semiring::QPlus;
        let t1 = FinSupp::unit(sr, interval(1, 2));
        let t2 = FinSupp::unit(sr, interval(5, 6));
        let outer = ConvexSet::from_generators(sr, vec![t1.clone(), t2]).unwrap();
        assert_eq!(pc_mult(&outer).unwrap(), interval(1, 6));
        assert_eq!(pc_mult(&ConvexSet::singleton(t1)).unwrap(), interval(1, 2));
    }

    #[test]
    fn nat_has_no_multiplication() {
        let outer = ConvexSet::singleton(FinSupp::<ConvexSet<Symbol>>::zero(Semiring::Nat));
        assert!(matches!(pc_mult(&outer), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn kleisli_interval_composition() {
        let sr = Semiring::QPlus;
        let x = [s("x")];
        let f = KleisliArrow::new(sr, x.clone(), x.clone(), [(s("x"), interval(1, 2))].into()).unwrap();
        let g = KleisliArrow::new(sr, x.clone(), x.clone(), [(s("x"), interval(3, 4))].into()).unwrap();
        let gf = kleisli_compose(&f, &g).unwrap();
        assert_eq!(gf.apply(&s("x")).unwrap(), &interval(3, 8));
        let id = kleisli_identity(sr, &x);
        assert_eq!(kleisli_compose(&id, &g).unwrap(), g);
        assert_eq!(kleisli_compose(&g, &id).unwrap(), g);
        let bot = kleisli_bottom(sr, &x, &x);
        assert_eq!(kleisli_compose(&bot, &g).unwrap(), bot);
        assert_eq!(kleisli_compose(&g, &bot).unwrap(), bot);
        assert_eq!(kleisli_join(&f, &bot).unwrap(), f);
    }

    #[test]
    fn arrows_must_be_total() {
        let sr = Semiring::QPlus;
        assert!(KleisliArrow::new(sr, [s("x"), s("y")], [s("x")], [(s("x"), interval(1, 2))].into()).is_err());
        assert!(KleisliArrow::new(sr, [s("x")], [s("z")], [(s("x"), interval(1, 2))].into()).is_err());
    }

    #[test]
    fn map_collapses() {
        let sr = Semiring::Bool;
        let pq = FinSupp::from_entries(sr, [(s("p"), sr.one()), (s("q"), sr.one())]).unwrap();
        let a = ConvexSet::from_generators(sr, vec![FinSupp::unit(sr, s("p")), pq]).unwrap();
        let f: BTreeMap<_, _> = [(s("p"), s("r")), (s("q"), s("r"))].into();
        assert_eq!(pc_map(&f, &a).unwrap(), pc_unit(sr, s("r")));
    }
}

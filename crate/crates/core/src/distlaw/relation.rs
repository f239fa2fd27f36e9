//! Relations, the Barr extension of the semimodule functor, and the
//! non-monotone extension `E` of the powerset functor with the weak law it
//! induces.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::laws::run_law;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::json::ToJson;
use crate::report::{Expectation, LawReport, Outcome};
use crate::semiring::Semiring;
use crate::symbol::{powerset, symset, Symbol, SymbolSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    domain: SymbolSet,
    codomain: SymbolSet,
    pairs: BTreeSet<(Symbol, Symbol)>,
}

impl Relation {
    pub fn new(
        domain: SymbolSet,
        codomain: SymbolSet,
        pairs: impl IntoIterator<Item = (Symbol, Symbol)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if let Some((x, y)) = pairs
            .iter()
            .find(|(x, y)| !domain.contains(x) || !codomain.contains(y))
        {
            return Err(Error::ShapeMismatch(format!("pair ({x}, {y}) outside domain x codomain")));
        }
        Ok(Relation {
            domain,
            codomain,
            pairs,
        })
    }

    /// The graph of a function.
    pub fn graph(f: &BTreeMap<Symbol, Symbol>, codomain: SymbolSet) -> Result<Self> {
        Relation::new(f.keys().cloned().collect(), codomain, f.iter().map(|(x, y)| (x.clone(), y.clone())))
    }

    pub fn pairs(&self) -> &BTreeSet<(Symbol, Symbol)> {
        &self.pairs
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn is_function(&self) -> bool {
        self.domain
            .iter()
            .all(|x| self.pairs.iter().filter(|(a, _)| a == x).count() == 1)
    }

    /// `{y | ∃a ∈ A. a R y}`.
    pub fn image(&self, a: &SymbolSet) -> SymbolSet {
        self.pairs
            .iter()
            .filter(|(x, _)| a.contains(x))
            .map(|(_, y)| y.clone())
            .collect()
    }
}

impl ToJson for Relation {
    fn to_json(&self) -> Value {
        json!({
            "domain": self.domain.to_json(),
            "codomain": self.codomain.to_json(),
            "pairs": self.pairs.iter().map(|(x, y)| json!([x.as_str(), y.as_str()])).collect::<Vec<_>>(),
        })
    }
}

/// The Barr extension: pairs of marginals `(S π_X ψ, S π_Y ψ)` over
/// `ψ ∈ S(R)`. Weights are enumerated over all booleans, or over
/// `0..=value_bound` for the naturals.
pub fn barr_extend(
    r: &Relation,
    semiring: Semiring,
    value_bound: u64,
) -> Result<BTreeSet<(FinSupp<Symbol>, FinSupp<Symbol>)>> {
    let top = match semiring {
        Semiring::Bool => 1,
        Semiring::Nat => value_bound,
        Semiring::QPlus => {
            return Err(Error::Unsupported {
                op: "barr_extend",
                semiring,
                hint: "S(R) is infinite over Q+",
            })
        }
    };
    let pairs: Vec<&(Symbol, Symbol)> = r.pairs.iter().collect();
    let mut out = BTreeSet::new();
    let mut vals = vec![0u64; pairs.len()];
    loop {
        let psi = FinSupp::from_entries(
            semiring,
            pairs.iter().zip(&vals).map(|(&p, &v)| (p.clone(), semiring.from_u64(v))),
        )?;
        out.insert((psi.map_keys(|(x, _)| Ok(x.clone()))?, psi.map_keys(|(_, y)| Ok(y.clone()))?));
        let Some(pos) = vals.iter().position(|&v| v < top) else {
            break;
        };
        vals[pos] += 1;
        vals[..pos].iter_mut().for_each(|v| *v = 0);
    }
    Ok(out)
}

/// The function `E(R): P X -> P Y`, `A ↦ {y | ∃a ∈ A. a R y}`.
pub fn trivial_e_extend(r: &Relation) -> BTreeMap<SymbolSet, SymbolSet> {
    let dom: Vec<Symbol> = r.domain.iter().cloned().collect();
    powerset(&dom).into_iter().map(|a| {
        let img = r.image(&a);
        (a, img)
    }).collect()
}

/// The weak law `P P -> P P` induced by `E`: `δ(𝒜) = {∪𝒜}`.
pub fn appendix_a_delta(family: &BTreeSet<SymbolSet>) -> BTreeSet<SymbolSet> {
    BTreeSet::from([family.iter().flatten().cloned().collect()])
}

/// Fixed points of the idempotent `A ↦ {a(A)}` on `P X` for the complete
/// semilattice `X` given as a union-closed family of sets containing `∅`.
pub fn lifting_fixed_points(carrier: &[SymbolSet]) -> Vec<BTreeSet<SymbolSet>> {
    powerset(carrier)
        .into_iter()
        .filter(|a| {
            // a(A) = ∪A, and η; δ; P a sends A to {a(A)}
            let image = appendix_a_delta(a);
            image == *a
        })
        .collect()
}

fn union_closed_with_bottom(family: &BTreeSet<SymbolSet>) -> bool {
    family.contains(&SymbolSet::new())
        && family
            .iter()
            .all(|a| family.iter().all(|b| family.contains(&a.union(b).cloned().collect())))
}

/// All complete semilattices with at most `max` elements, presented as
/// union-closed families over a base of `max - 1` points.
pub fn small_semilattices(max: usize) -> Vec<Vec<SymbolSet>> {
    let base: Vec<Symbol> = crate::symbol::numbered("b", max.saturating_sub(1));
    let subsets = powerset(&base);
    let mut seen = BTreeSet::new();
    for fam in powerset(&subsets) {
        if fam.len() <= max && union_closed_with_bottom(&fam) {
            seen.insert(fam);
        }
    }
    seen.into_iter().map(|f| f.into_iter().collect()).collect()
}

fn remark_counterexample() -> (Relation, Relation) {
    let x = symset(["0"]);
    let y = symset(["1", "2"]);
    let s = |n: &str| Symbol::new(n);
    let r = Relation::new(x.clone(), y.clone(), [(s("0"), s("1"))]).expect("in range");
    let big = Relation::new(x, y, [(s("0"), s("1")), (s("0"), s("2"))]).expect("in range");
    (r, big)
}

fn e_graph(r: &Relation) -> BTreeSet<(SymbolSet, SymbolSet)> {
    trivial_e_extend(r).into_iter().collect()
}

/// The checks on the extension `E`: it is not locally monotone, its weak
/// law is `{∪𝒜}`, the splitting idempotent fixes exactly the singletons,
/// `μ` is natural for `E` and `η` is natural only along functions.
pub fn check_appendix_a() -> Result<Vec<LawReport>> {
    let sr = Semiring::Bool;
    let report = |law: &str, expected| LawReport::new("appendixA", law, sr, expected);
    let mut out = Vec::new();

    let (r, big) = remark_counterexample();
    let mut mono = report("E-monotone", Expectation::Counterexample);
    mono.instances = 1;
    if r.is_subset(&big) && !e_graph(&r).is_subset(&e_graph(&big)) {
        let at = symset(["0"]);
        mono.outcome = Outcome::counterexample(
            json!({ "R": r.to_json(), "S": big.to_json(), "A": at.to_json() }),
            r.image(&at).to_json(),
            big.image(&at).to_json(),
        );
    }
    out.push(mono);

    let xs = crate::symbol::numbered("x", 3);
    let px = powerset(&xs);
    let families: Vec<BTreeSet<SymbolSet>> = powerset(&px);
    out.push(run_law(report("delta-is-union", Expectation::Holds), families.clone(), |fam| {
        let lhs = appendix_a_delta(fam);
        let rhs: BTreeSet<SymbolSet> = BTreeSet::from([fam.iter().fold(SymbolSet::new(), |acc, a| {
            acc.union(a).cloned().collect()
        })]);
        Ok((lhs != rhs).then(|| (lhs.to_json(), rhs.to_json())))
    })?);

    let lattices = small_semilattices(3);
    out.push(run_law(
        report("fixed-points-are-singletons", Expectation::Holds).with_note(format!(
            "{} complete semilattices with at most 3 elements",
            lattices.len()
        )),
        lattices,
        |carrier| {
            let lhs: BTreeSet<BTreeSet<SymbolSet>> = lifting_fixed_points(carrier).into_iter().collect();
            let rhs: BTreeSet<BTreeSet<SymbolSet>> = carrier.iter().map(|x| BTreeSet::from([x.clone()])).collect();
            Ok((lhs != rhs).then(|| (lhs.to_json(), rhs.to_json())))
        },
    )?);

    // μ: E E(R) then ∪, against ∪ then E(R), over all relations on 2 x 2
    let dom = crate::symbol::numbered("a", 2);
    let cod = crate::symbol::numbered("c", 2);
    let all_pairs: Vec<(Symbol, Symbol)> = dom
        .iter()
        .flat_map(|x| cod.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let relations: Vec<Relation> = powerset(&all_pairs)
        .into_iter()
        .map(|ps| Relation::new(dom.iter().cloned().collect(), cod.iter().cloned().collect(), ps))
        .collect::<Result<_>>()?;
    let pdom = powerset(&dom);
    out.push(run_law(report("mu-natural", Expectation::Holds), relations.clone(), |r| {
        let er = trivial_e_extend(r);
        for fam in powerset(&pdom) {
            let lhs = r.image(&fam.iter().flatten().cloned().collect());
            let rhs: SymbolSet = fam.iter().flat_map(|a| er[a].iter().cloned()).collect();
            if lhs != rhs {
                return Ok(Some((lhs.to_json(), rhs.to_json())));
            }
        }
        Ok(None)
    })?);

    // η: E(R)({x}) is one set, while η_Y ∘ R relates x to each {y}
    let eta = |r: &Relation| -> Option<(Value, Value)> {
        let er = trivial_e_extend(r);
        for x in &r.domain {
            let lhs: BTreeSet<SymbolSet> = BTreeSet::from([er[&BTreeSet::from([x.clone()])].clone()]);
            let rhs: BTreeSet<SymbolSet> = r
                .pairs
                .iter()
                .filter(|(a, _)| a == x)
                .map(|(_, y)| BTreeSet::from([y.clone()]))
                .collect();
            if lhs != rhs {
                return Some((json!({ "x": x.as_str(), "E(R)(eta x)": lhs.to_json() }), rhs.to_json()));
            }
        }
        None
    };
    let functions: Vec<Relation> = relations.iter().filter(|r| r.is_function()).cloned().collect();
    out.push(run_law(report("eta-natural-on-functions", Expectation::Holds), functions, |r| Ok(eta(r)))?);
    out.push(run_law(
        report("eta-natural-on-relations", Expectation::Counterexample),
        relations,
        |r| Ok(eta(r)),
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Symbol {
        Symbol::new(n)
    }

    #[test]
    fn e_is_not_monotone() {
        let (r, big) = remark_counterexample();
        assert!(r.is_subset(&big));
        let er = trivial_e_extend(&r);
        let es = trivial_e_extend(&big);
        assert_eq!(er[&symset(["0"])], symset(["1"]));
        assert_eq!(es[&symset(["0"])], symset(["1", "2"]));
        assert_eq!(er[&SymbolSet::new()], SymbolSet::new());
    }

    #[test]
    fn barr_extension_of_a_graph_is_the_graph() {
        let f: BTreeMap<_, _> = [(s("x"), s("u")), (s("y"), s("u")), (s("z"), s("v"))].into();
        let cod = symset(["u", "v"]);
        let r = Relation::graph(&f, cod).unwrap();
        for (sr, bound) in [(Semiring::Bool, 1), (Semiring::Nat, 2)] {
            let ext = barr_extend(&r, sr, bound).unwrap();
            for (a, b) in &ext {
                assert_eq!(&crate::freemod::fs_map(&f, a).unwrap(), b);
            }
            // every bounded φ on the domain appears exactly once as a left marginal
            let lefts: BTreeSet<_> = ext.iter().map(|(a, _)| a.clone()).collect();
            assert_eq!(lefts.len(), ext.len());
            assert_eq!(lefts.len(), (bound as usize + 1).pow(3));
        }
    }

    #[test]
    fn fixed_points() {
        let lattices = small_semilattices(3);
        let sizes: BTreeSet<usize> = lattices.iter().map(Vec::len).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2, 3]));
        for l in &lattices {
            let fixed = lifting_fixed_points(l);
            assert_eq!(fixed.len(), l.len());
            assert!(fixed.iter().all(|a| a.len() == 1));
        }
        let diamond: Vec<SymbolSet> = powerset(&[s("p"), s("q")]);
        assert_eq!(lifting_fixed_points(&diamond).len(), 4);
    }

    #[test]
    fn suite_meets_expectations() {
        for r in check_appendix_a().unwrap() {
            assert!(r.met(), "{r:?}");
        }
    }
}

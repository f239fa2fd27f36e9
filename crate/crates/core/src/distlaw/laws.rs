//! Instance checks of the weak distributive law diagrams and of naturality.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::{choice_set, delta_bruteforce, delta_hull, SetWeighting, BRUTEFORCE_BOUND};
use crate::composite::{alpha, pc_map};
use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::{fs_mult, FinSupp};
use crate::json::{table_to_json, ToJson};
use crate::random::InstanceRng;
use crate::report::{Expectation, LawReport, Outcome};
use crate::semiring::{rat, Semiring};
use crate::symbol::{numbered, powerset, Symbol, SymbolSet};

/// Shared knobs of the law suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawConfig {
    pub semiring: Semiring,
    /// Size of the base variable set.
    pub xsize: usize,
    /// Random instances per law when not enumerating exhaustively.
    pub trials: usize,
    pub seed: u64,
    /// Largest weight used over the naturals.
    pub value_bound: u64,
}

impl LawConfig {
    pub fn new(semiring: Semiring) -> Self {
        LawConfig {
            semiring,
            xsize: 2,
            trials: 100,
            seed: 0,
            value_bound: 2,
        }
    }

    fn vars(&self) -> Vec<Symbol> {
        numbered("x", self.xsize)
    }

    fn weight_bound(&self) -> u64 {
        match self.semiring {
            Semiring::Bool => 1,
            _ => self.value_bound.max(1),
        }
    }

    /// Exhaustive enumeration is used over the finite semirings for up to
    /// two variables; beyond that the bounded shapes are too many.
    fn exhaustive(&self) -> bool {
        self.semiring != Semiring::QPlus && self.xsize <= 2
    }
}

/// The result of comparing both sides of a law on one instance.
type Verdict = Result<Option<(Value, Value)>>;

fn compare<T: PartialEq + ToJson>(lhs: T, rhs: T) -> Option<(Value, Value)> {
    (lhs != rhs).then(|| (lhs.to_json(), rhs.to_json()))
}

/// Runs `law` over `instances`, stopping at the first violation.
pub(crate) fn run_law<I: ToJson>(
    mut report: LawReport,
    instances: impl IntoIterator<Item = I>,
    mut law: impl FnMut(&I) -> Verdict,
) -> Result<LawReport> {
    let mut count = 0;
    for input in instances {
        count += 1;
        if let Some((lhs, rhs)) = law(&input)? {
            return Ok(report.finish(count, Outcome::counterexample(input.to_json(), lhs, rhs)));
        }
    }
    report.instances = count;
    Ok(report)
}

/// All weightings over `keys` with at most `max_support` keys and values
/// in `1..=bound`.
pub fn weightings<K: Ord + Clone>(sr: Semiring, keys: &[K], max_support: usize, bound: u64) -> Vec<FinSupp<K>> {
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec<K: Ord + Clone>(
        sr: Semiring,
        keys: &[K],
        max: usize,
        bound: u64,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<FinSupp<K>>,
    ) {
        // every value assignment for the current key choice
        let n = chosen.len();
        let mut vals = vec![1u64; n];
        loop {
            let entries = chosen.iter().zip(&vals).map(|(&i, &v)| (keys[i].clone(), sr.from_u64(v)));
            out.push(FinSupp::from_entries(sr, entries).expect("in range"));
            let Some(pos) = vals.iter().position(|&v| v < bound) else {
                break;
            };
            vals[pos] += 1;
            vals[..pos].iter_mut().for_each(|v| *v = 1);
        }
        if n == max {
            return;
        }
        for i in start..keys.len() {
            chosen.push(i);
            rec(sr, keys, max, bound, i + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(sr, keys, max_support, bound, 0, &mut chosen, &mut out);
    out
}

fn dset<K: Ord + Clone>(phi: &FinSupp<BTreeSet<K>>) -> Result<BTreeSet<FinSupp<K>>> {
    Ok(delta_bruteforce(phi, BRUTEFORCE_BOUND)?.into_iter().collect())
}

fn union_of(family: &BTreeSet<SymbolSet>) -> SymbolSet {
    family.iter().flatten().cloned().collect()
}

fn singletons(phi: &FinSupp<Symbol>) -> SetWeighting {
    phi.map_keys(|x| Ok(BTreeSet::from([x.clone()]))).expect("total")
}

fn dirac_set(sr: Semiring, a: &SymbolSet) -> SetWeighting {
    FinSupp::unit(sr, a.clone())
}

// Laws over the booleans and the naturals, where δ is a finite set.

fn mult_powerset_finite(xi: &FinSupp<BTreeSet<SymbolSet>>) -> Verdict {
    let lhs = dset(&xi.map_keys(|fam| Ok(union_of(fam)))?)?;
    let mut rhs = BTreeSet::new();
    for inner in dset(xi)? {
        rhs.extend(dset(&inner)?);
    }
    Ok(compare(lhs, rhs))
}

fn mult_semimodule_finite(xi: &FinSupp<SetWeighting>) -> Verdict {
    let lhs = dset(&fs_mult(xi)?)?;
    let lifted = xi.map_keys(dset)?;
    let rhs = dset(&lifted)?
        .iter()
        .map(fs_mult)
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(compare(lhs, rhs))
}

fn unit_powerset_finite(phi: &FinSupp<Symbol>) -> Verdict {
    Ok(compare(dset(&singletons(phi))?, BTreeSet::from([phi.clone()])))
}

fn unit_semimodule_finite(sr: Semiring, a: &SymbolSet) -> Verdict {
    let rhs: BTreeSet<_> = a.iter().map(|x| FinSupp::unit(sr, x.clone())).collect();
    Ok(compare(dset(&dirac_set(sr, a))?, rhs))
}

// The same laws over Q+, where δ is a convex set given by generators.

fn mult_powerset_hull(xi: &FinSupp<BTreeSet<SymbolSet>>) -> Verdict {
    let sr = xi.semiring();
    let lhs = delta_hull(&xi.map_keys(|fam| Ok(union_of(fam)))?)?;
    let outer = delta_hull(xi)?;
    let parts = outer.generators().iter().map(delta_hull).collect::<Result<Vec<_>>>()?;
    let rhs = ConvexSet::join_all(sr, &parts);
    if lhs != rhs {
        return Ok(Some((lhs.to_json(), rhs.to_json())));
    }
    // the union also ranges over the interior of δ(Ξ), which must stay inside
    let half = rat(1, 2);
    for (i, a) in outer.generators().iter().enumerate() {
        for b in &outer.generators()[i + 1..] {
            let mid = a.scale(&half).add(&b.scale(&half));
            let d = delta_hull(&mid)?;
            if !d.is_subset(&lhs)? {
                return Ok(Some((lhs.to_json(), json!({ "delta_of_midpoint": d.to_json() }))));
            }
        }
    }
    Ok(None)
}

fn mult_semimodule_hull(xi: &FinSupp<SetWeighting>) -> Verdict {
    let lhs = delta_hull(&fs_mult(xi)?)?;
    let rhs = alpha(&xi.map_keys(delta_hull)?)?;
    Ok(compare(lhs, rhs))
}

fn unit_powerset_hull(phi: &FinSupp<Symbol>) -> Verdict {
    Ok(compare(delta_hull(&singletons(phi))?, ConvexSet::singleton(phi.clone())))
}

fn unit_semimodule_hull(sr: Semiring, a: &SymbolSet) -> Verdict {
    let lhs = delta_hull(&dirac_set(sr, a))?;
    let diracs: Vec<FinSupp<Symbol>> = a.iter().map(|x| FinSupp::unit(sr, x.clone())).collect();
    if diracs.len() < 2 {
        let rhs = ConvexSet::from_generators(sr, diracs)?;
        return Ok(compare(lhs, rhs));
    }
    // a hull of two distinct points is not the finite set of Diracs
    let half = rat(1, 2);
    let mid = diracs[0].scale(&half).add(&diracs[1].scale(&half));
    debug_assert!(lhs.member(&mid)?);
    Ok(Some((
        json!({ "delta": lhs.to_json(), "contains": mid.to_json() }),
        diracs.to_json(),
    )))
}

fn random_family(rng: &mut InstanceRng, vars: &[Symbol]) -> BTreeSet<SymbolSet> {
    let n = rng.range(0, 2);
    (0..n).map(|_| rng.subset(vars, true)).collect()
}

fn random_xi_powerset(rng: &mut InstanceRng, cfg: &LawConfig) -> FinSupp<BTreeSet<SymbolSet>> {
    let vars = cfg.vars();
    let n = rng.range(1, 2);
    let entries: Vec<_> = (0..n)
        .map(|_| (random_family(rng, &vars), rng.nonzero_scalar(cfg.semiring, cfg.weight_bound())))
        .collect();
    FinSupp::from_entries(cfg.semiring, entries).expect("valid scalars")
}

fn random_xi_semimodule(rng: &mut InstanceRng, cfg: &LawConfig) -> FinSupp<SetWeighting> {
    let vars = cfg.vars();
    let n = rng.range(1, 2);
    let entries: Vec<_> = (0..n)
        .map(|_| {
            let inner = rng.set_weighting(cfg.semiring, &vars, 2, true);
            (inner, rng.nonzero_scalar(cfg.semiring, cfg.weight_bound()))
        })
        .collect();
    FinSupp::from_entries(cfg.semiring, entries).expect("valid scalars")
}

/// The two rectangles and two triangles of a distributive law. The unit
/// triangle of the semimodule monad is the one a weak law may drop; it is
/// expected to hold only over the naturals.
pub fn check_weak_law(cfg: &LawConfig) -> Result<Vec<LawReport>> {
    let sr = cfg.semiring;
    let vars = cfg.vars();
    let vb = cfg.weight_bound();
    let report = |law: &str, expected| LawReport::new("weakdist", law, sr, expected);
    let mut rng = InstanceRng::new(cfg.seed);
    let finite = sr != Semiring::QPlus;

    let (xi_p, xi_s, phis): (Vec<_>, Vec<_>, Vec<_>) = if cfg.exhaustive() {
        let px = powerset(&vars);
        let ppx = powerset(&px);
        let inner = weightings(sr, &px, 2, vb);
        (
            weightings(sr, &ppx, 2, vb),
            weightings(sr, &inner, 2, vb),
            weightings(sr, &vars, vars.len(), vb),
        )
    } else {
        let t = cfg.trials.max(1);
        (
            (0..t).map(|_| random_xi_powerset(&mut rng, cfg)).collect(),
            (0..t).map(|_| random_xi_semimodule(&mut rng, cfg)).collect(),
            (0..t).map(|_| rng.finsupp(sr, &vars, vars.len())).collect(),
        )
    };
    let mode = if cfg.exhaustive() {
        format!("exhaustive over supports of size <= 2, weights <= {vb}")
    } else {
        format!("{} seeded instances, seed {}", cfg.trials.max(1), cfg.seed)
    };

    let mut out = Vec::new();
    let mp = report("mult-powerset", Expectation::Holds).with_note(mode.clone());
    out.push(if finite {
        run_law(mp, xi_p, mult_powerset_finite)?
    } else {
        run_law(mp, xi_p, mult_powerset_hull)?
    });
    let ms = report("mult-semimodule", Expectation::Holds).with_note(mode.clone());
    out.push(if finite {
        run_law(ms, xi_s, mult_semimodule_finite)?
    } else {
        run_law(ms, xi_s, mult_semimodule_hull)?
    });
    let up = report("unit-powerset", Expectation::Holds).with_note(mode);
    out.push(if finite {
        run_law(up, phis, unit_powerset_finite)?
    } else {
        run_law(up, phis, unit_powerset_hull)?
    });
    let expected = if sr == Semiring::Nat {
        Expectation::Holds
    } else {
        Expectation::Counterexample
    };
    let us = report("unit-semimodule", expected).with_note("exhaustive over all subsets of X");
    out.push(if finite {
        run_law(us, powerset(&vars), |a| unit_semimodule_finite(sr, a))?
    } else {
        run_law(us, powerset(&vars), |a| unit_semimodule_hull(sr, a))?
    });
    Ok(out)
}

/// A function table together with the weighting it acts on.
#[derive(Debug, Clone)]
pub struct MappedWeighting {
    pub f: BTreeMap<Symbol, Symbol>,
    pub phi: SetWeighting,
}

impl ToJson for MappedWeighting {
    fn to_json(&self) -> Value {
        json!({ "f": table_to_json(&self.f), "phi": self.phi.to_json() })
    }
}

fn image_weighting(m: &MappedWeighting) -> Result<SetWeighting> {
    m.phi.map_keys(|a| {
        a.iter()
            .map(|x| m.f.get(x).cloned().ok_or_else(|| Error::UnmappedSymbol(x.to_string())))
            .collect()
    })
}

fn delta_natural(m: &MappedWeighting) -> Verdict {
    let img = image_weighting(m)?;
    if m.phi.semiring().is_semifield() {
        let lhs = delta_hull(&img)?;
        let rhs = pc_map(&m.f, &delta_hull(&m.phi)?)?;
        Ok(compare(lhs, rhs))
    } else {
        let lhs = dset(&img)?;
        let rhs = dset(&m.phi)?
            .iter()
            .map(|p| crate::freemod::fs_map(&m.f, p))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(compare(lhs, rhs))
    }
}

fn choice_natural(m: &MappedWeighting) -> Verdict {
    let lhs: BTreeSet<_> = choice_set(&image_weighting(m)?).into_iter().collect();
    let rhs = choice_set(&m.phi)
        .iter()
        .map(|p| crate::freemod::fs_map(&m.f, p))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(compare(lhs, rhs))
}

/// Searches small boolean instances for a failure of naturality of the
/// choice set alone, widening the base set from three to `max_x` symbols.
pub fn find_choice_nonnaturality(max_x: usize) -> Result<Option<(usize, MappedWeighting, Value, Value)>> {
    let sr = Semiring::Bool;
    let mut count = 0;
    for n in 3..=max_x {
        let xs = numbered("x", n);
        let nonempty: Vec<SymbolSet> = powerset(&xs).into_iter().filter(|s| !s.is_empty()).collect();
        for ny in 2..=n {
            let ys = numbered("y", ny);
            let functions = all_functions(&xs, &ys);
            for phi in weightings(sr, &nonempty, 3, 1) {
                for f in &functions {
                    count += 1;
                    let m = MappedWeighting { f: f.clone(), phi: phi.clone() };
                    if let Some((lhs, rhs)) = choice_natural(&m)? {
                        return Ok(Some((count, m, lhs, rhs)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn all_functions(xs: &[Symbol], ys: &[Symbol]) -> Vec<BTreeMap<Symbol, Symbol>> {
    let mut out = vec![BTreeMap::new()];
    for x in xs {
        out = out
            .into_iter()
            .flat_map(|f| {
                ys.iter().map(move |y| {
                    let mut g = f.clone();
                    g.insert(x.clone(), y.clone());
                    g
                })
            })
            .collect();
    }
    out
}

/// Naturality of δ on random functions, and the search for a failure of
/// naturality of the choice set on its own (always over the booleans,
/// where idempotent addition merges weights).
pub fn check_naturality(cfg: &LawConfig) -> Result<Vec<LawReport>> {
    let sr = cfg.semiring;
    let vars = cfg.vars();
    let mut rng = InstanceRng::new(cfg.seed);
    let instances: Vec<MappedWeighting> = (0..cfg.trials.max(1))
        .map(|_| {
            let ys = numbered("y", rng.range(1, cfg.xsize.max(1)));
            MappedWeighting {
                f: rng.function(&vars, &ys),
                phi: rng.set_weighting(sr, &vars, 3, true),
            }
        })
        .collect();
    let natural = LawReport::new("naturality", "delta-natural", sr, Expectation::Holds)
        .with_note(format!("{} seeded instances, seed {}", instances.len(), cfg.seed));
    let mut out = vec![run_law(natural, instances, delta_natural)?];

    let mut choice = LawReport::new("naturality", "choice-natural", Semiring::Bool, Expectation::Counterexample);
    let max_x = 4;
    match find_choice_nonnaturality(max_x)? {
        Some((count, m, lhs, rhs)) => {
            choice = choice
                .finish(count, Outcome::counterexample(m.to_json(), lhs, rhs))
                .with_note(format!("found with |X| = {}", m.f.len()));
        }
        None => {
            choice.note = Some(format!("no violation up to |X| = {max_x}"));
        }
    }
    out.push(choice);
    Ok(out)
}

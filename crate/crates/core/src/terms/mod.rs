//! Terms over `⊥, ⊔, 0, +, λ·` and their meaning as convex sets.
//!
//! The map from terms to finitely generated convex sets is injective on
//! equivalence classes of the equational theory, so two terms are
//! provably equal exactly when they denote the same set.

mod parse;
mod render;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::parse;
pub use render::{render_interval, render_polygon};

use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::random::InstanceRng;
use crate::semiring::{Scalar, Semiring};
use crate::symbol::Symbol;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Bot,
    Zero,
    Var(Symbol),
    Scale(Scalar, Box<Term>),
    Add(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Symbol::new(name))
    }

    pub fn scale(lambda: Scalar, t: Term) -> Self {
        Term::Scale(lambda, Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Self {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Self {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Bot | Term::Zero => {}
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Scale(_, t) => t.collect_vars(out),
            Term::Add(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Binding strength: join 0, sum 1, scaled and atoms 2.
    fn level(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::Add(..) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Term::Bot => f.write_str("bot"),
            Term::Zero => f.write_str("0"),
            Term::Var(x) => write!(f, "{x}"),
            Term::Scale(l, t) => {
                write!(f, "{l}.")?;
                t.fmt_at(f, 2)
            }
            Term::Add(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 2)
            }
            Term::Join(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" | ")?;
                b.fmt_at(f, 1)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The convex set denoted by `t` over the variables `vars`.
pub fn eval(t: &Term, semiring: Semiring, vars: &[Symbol]) -> Result<ConvexSet<Symbol>> {
    Ok(match t {
        Term::Bot => ConvexSet::empty(semiring),
        Term::Zero => ConvexSet::zero(semiring),
        Term::Var(x) => {
            if !vars.contains(x) {
                return Err(Error::UnboundVariable(x.to_string()));
            }
            crate::composite::pc_unit(semiring, x.clone())
        }
        Term::Scale(l, t) => {
            semiring.check(l)?;
            eval(t, semiring, vars)?.scale(l)
        }
        Term::Add(a, b) => eval(a, semiring, vars)?.add(&eval(b, semiring, vars)?),
        Term::Join(a, b) => eval(a, semiring, vars)?.join(&eval(b, semiring, vars)?),
    })
}

pub fn term_equal(a: &Term, b: &Term, semiring: Semiring, vars: &[Symbol]) -> Result<bool> {
    Ok(eval(a, semiring, vars)? == eval(b, semiring, vars)?)
}

/// A term denoting `a`: the join over generators `φ` of `Σ φ(x)·x`.
pub fn term_from_set(a: &ConvexSet<Symbol>) -> Term {
    let one = a.semiring().one();
    let point = |g: &crate::freemod::FinSupp<Symbol>| {
        g.entries()
            .iter()
            .map(|(x, v)| {
                if *v == one {
                    Term::Var(x.clone())
                } else {
                    Term::scale(v.clone(), Term::Var(x.clone()))
                }
            })
            .reduce(Term::add)
            .unwrap_or(Term::Zero)
    };
    a.generators().iter().map(point).reduce(Term::join).unwrap_or(Term::Bot)
}

/// A random term of at most the given depth.
pub fn random_term(rng: &mut InstanceRng, semiring: Semiring, vars: &[Symbol], depth: usize) -> Term {
    let leaf = |rng: &mut InstanceRng| match rng.range(0, 9) {
        0 => Term::Bot,
        1 => Term::Zero,
        _ => Term::Var(rng.pick(vars).clone()),
    };
    if depth == 0 || rng.coin(0.25) {
        return leaf(rng);
    }
    match rng.range(0, 2) {
        0 => {
            let lambda = if rng.coin(0.1) {
                semiring.zero()
            } else {
                rng.nonzero_scalar(semiring, 3)
            };
            Term::scale(lambda, random_term(rng, semiring, vars, depth - 1))
        }
        1 => Term::add(
            random_term(rng, semiring, vars, depth - 1),
            random_term(rng, semiring, vars, depth - 1),
        ),
        _ => Term::join(
            random_term(rng, semiring, vars, depth - 1),
            random_term(rng, semiring, vars, depth - 1),
        ),
    }
}

type SchemaBuilder = fn(&Term, &Term, &Term, &Scalar, &Scalar, Semiring) -> (Term, Term);

/// An axiom schema instantiated with three terms and two scalars.
pub struct AxiomSchema {
    pub name: &'static str,
    /// Whether the first scalar must be nonzero.
    pub needs_nonzero: bool,
    pub build: SchemaBuilder,
}

/// The axioms of semilattices, semimodules and their distributivity.
pub fn axiom_schemas() -> Vec<AxiomSchema> {
    fn c(t: &Term) -> Term {
        t.clone()
    }
    macro_rules! ax {
        ($name:expr, $nz:expr, |$x:ident, $y:ident, $z:ident, $l:ident, $m:ident, $sr:ident| $body:expr) => {
            AxiomSchema {
                name: $name,
                needs_nonzero: $nz,
                build: |$x, $y, $z, $l, $m, $sr| {
                    let _ = (&$x, &$y, &$z, &$l, &$m, &$sr);
                    $body
                },
            }
        };
    }
    vec![
        ax!("SL-A", false, |x, y, z, l, m, sr| (
            Term::join(Term::join(c(x), c(y)), c(z)),
            Term::join(c(x), Term::join(c(y), c(z)))
        )),
        ax!("SL-C", false, |x, y, z, l, m, sr| (Term::join(c(x), c(y)), Term::join(c(y), c(x)))),
        ax!("SL-U", false, |x, y, z, l, m, sr| (Term::join(c(x), Term::Bot), c(x))),
        ax!("SL-I", false, |x, y, z, l, m, sr| (Term::join(c(x), c(x)), c(x))),
        ax!("LSM-A", false, |x, y, z, l, m, sr| (
            Term::add(Term::add(c(x), c(y)), c(z)),
            Term::add(c(x), Term::add(c(y), c(z)))
        )),
        ax!("LSM-C", false, |x, y, z, l, m, sr| (Term::add(c(x), c(y)), Term::add(c(y), c(x)))),
        ax!("LSM-U", false, |x, y, z, l, m, sr| (Term::add(c(x), Term::Zero), c(x))),
        ax!("Zs", false, |x, y, z, l, m, sr| (Term::scale(l.clone(), Term::Zero), Term::Zero)),
        ax!("Ans", false, |x, y, z, l, m, sr| (Term::scale(sr.zero(), c(x)), Term::Zero)),
        ax!("Us", false, |x, y, z, l, m, sr| (Term::scale(sr.one(), c(x)), c(x))),
        ax!("Cos", false, |x, y, z, l, m, sr| (
            Term::scale(sr.mul(l, m), c(x)),
            Term::scale(l.clone(), Term::scale(m.clone(), c(x)))
        )),
        ax!("Ds1", false, |x, y, z, l, m, sr| (
            Term::scale(l.clone(), Term::add(c(x), c(y))),
            Term::add(Term::scale(l.clone(), c(x)), Term::scale(l.clone(), c(y)))
        )),
        ax!("Ds2", false, |x, y, z, l, m, sr| (
            Term::scale(sr.add(l, m), c(x)),
            Term::add(Term::scale(l.clone(), c(x)), Term::scale(m.clone(), c(x)))
        )),
        ax!("D1", true, |x, y, z, l, m, sr| (Term::scale(l.clone(), Term::Bot), Term::Bot)),
        ax!("D2", false, |x, y, z, l, m, sr| (Term::add(c(x), Term::Bot), Term::Bot)),
        ax!("D3", false, |x, y, z, l, m, sr| (
            Term::scale(l.clone(), Term::join(c(x), c(y))),
            Term::join(Term::scale(l.clone(), c(x)), Term::scale(l.clone(), c(y)))
        )),
        ax!("D4", false, |x, y, z, l, m, sr| (
            Term::add(c(x), Term::join(c(y), c(z))),
            Term::join(Term::add(c(x), c(y)), Term::add(c(x), c(z)))
        )),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freemod::FinSupp;
    use crate::semiring::rat;

    fn vars(names: &[&str]) -> Vec<Symbol> {
        names.iter().map(|n| Symbol::new(n)).collect()
    }

    fn q(text: &str) -> Term {
        parse(text, Semiring::QPlus).unwrap()
    }

    #[test]
    fn eval_basics() {
        let sr = Semiring::QPlus;
        let xs = vars(&["x"]);
        assert!(eval(&q("bot"), sr, &xs).unwrap().is_empty());
        assert_eq!(eval(&q("0"), sr, &xs).unwrap(), ConvexSet::zero(sr));
        assert_eq!(eval(&q("0.bot"), sr, &xs).unwrap(), ConvexSet::zero(sr));
        let a = eval(&q("2.x | 5.x"), sr, &xs).unwrap();
        assert_eq!(a.generators().len(), 2);
        assert!(matches!(eval(&q("y"), sr, &xs), Err(Error::UnboundVariable(_))));
    }

    #[test]
    fn triangle() {
        let sr = Semiring::QPlus;
        let a = eval(&q("x | y | (x + 3.y)"), sr, &vars(&["x", "y"])).unwrap();
        let pt = |x: i64, y: i64| {
            FinSupp::from_entries(sr, [(Symbol::new("x"), rat(x, 1)), (Symbol::new("y"), rat(y, 1))]).unwrap()
        };
        let mut expected = [pt(1, 0), pt(0, 1), pt(1, 3)];
        expected.sort();
        assert_eq!(a.generators(), &expected[..]);
    }

    #[test]
    fn equalities() {
        let sr = Semiring::QPlus;
        let xy = vars(&["x", "y"]);
        assert!(term_equal(&q("x | y"), &q("x | y | (1/2.x + 1/2.y)"), sr, &xy).unwrap());
        assert!(term_equal(&q("x + bot"), &q("bot"), sr, &xy).unwrap());
        assert!(!term_equal(&q("x"), &q("y"), sr, &xy).unwrap());
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "x | y",
            "(x | y) + z",
            "x | (y | z)",
            "x + (y + z)",
            "1/2.(x + y)",
            "2.3.x",
            "0.bot | 0",
            "x + (y | 3/4.z)",
        ] {
            let t = q(text);
            assert_eq!(t.to_string(), text);
            assert_eq!(q(&t.to_string()), t);
        }
    }

    #[test]
    fn synthesized_terms_denote_their_set() {
        let sr = Semiring::QPlus;
        let xy = vars(&["x", "y"]);
        for text in ["x | y | (x + 3.y)", "bot", "0", "1/2.x | 0"] {
            let a = eval(&q(text), sr, &xy).unwrap();
            assert_eq!(eval(&term_from_set(&a), sr, &xy).unwrap(), a);
        }
    }

    #[test]
    fn axioms_hold_on_random_instances() {
        let xs = vars(&["x", "y"]);
        let mut rng = InstanceRng::new(3);
        for sr in [Semiring::QPlus, Semiring::Bool] {
            for ax in axiom_schemas() {
                for _ in 0..10 {
                    let t: Vec<Term> = (0..3).map(|_| random_term(&mut rng, sr, &xs, 2)).collect();
                    let l = rng.nonzero_scalar(sr, 3);
                    let m = if rng.coin(0.3) { sr.zero() } else { rng.nonzero_scalar(sr, 3) };
                    let (lhs, rhs) = (ax.build)(&t[0], &t[1], &t[2], &l, &m, sr);
                    assert!(term_equal(&lhs, &rhs, sr, &xs).unwrap(), "{} {lhs} = {rhs}", ax.name);
                }
            }
        }
    }
}

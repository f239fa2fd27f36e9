//! Closed intervals of non-negative rationals with the structure of
//! `P_cf S(1)` over `Q+`, computed directly by interval arithmetic. Used as
//! an independent model of convex sets on one variable.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::json::ToJson;
use crate::semiring::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval {
    Empty,
    Closed(BigRational, BigRational),
}

impl Interval {
    /// `[lo, hi]`. Panics unless `0 <= lo <= hi`.
    pub fn closed(lo: BigRational, hi: BigRational) -> Self {
        assert!(!lo.is_negative() && lo <= hi, "bad interval [{lo}, {hi}]");
        Interval::Closed(lo, hi)
    }

    pub fn point(v: BigRational) -> Self {
        Interval::closed(v.clone(), v)
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    /// `0·I = [0,0]` for every `I`, including the empty interval.
    pub fn scale(&self, lambda: &BigRational) -> Self {
        if lambda.is_zero() {
            return Interval::zero();
        }
        match self {
            Interval::Empty => Interval::Empty,
            Interval::Closed(a, b) => Interval::Closed(lambda * a, lambda * b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Closed(a1, b1), Interval::Closed(a2, b2)) => Interval::Closed(a1 + a2, b1 + b2),
            _ => Interval::Empty,
        }
    }

    /// `[min a_i, max b_i]` over the nonempty members.
    pub fn sup<'a>(items: impl IntoIterator<Item = &'a Interval>) -> Self {
        items.into_iter().fold(Interval::Empty, |acc, i| match (acc, i) {
            (Interval::Empty, i) => i.clone(),
            (acc, Interval::Empty) => acc,
            (Interval::Closed(a1, b1), Interval::Closed(a2, b2)) => {
                Interval::Closed(a1.min(a2.clone()), b1.max(b2.clone()))
            }
        })
    }

    /// The semimodule structure map: `Σ λ_i · I_i`.
    pub fn combine<'a>(terms: impl IntoIterator<Item = (&'a Scalar, &'a Interval)>) -> Self {
        terms
            .into_iter()
            .fold(Interval::zero(), |acc, (l, i)| acc.add(&i.scale(&l.to_rational())))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("empty"),
            Interval::Closed(a, b) => write!(f, "[{}, {}]", Scalar::Rat(a.clone()), Scalar::Rat(b.clone())),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl ToJson for Interval {
    fn to_json(&self) -> Value {
        match self {
            Interval::Empty => json!({"empty": true}),
            Interval::Closed(a, b) => json!({
                "empty": false,
                "lo": Scalar::Rat(a.clone()).to_string(),
                "hi": Scalar::Rat(b.clone()).to_string(),
            }),
        }
    }
}

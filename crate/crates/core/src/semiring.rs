//! The semirings the crate works over and their algebraic properties.
//!
//! Three instances are provided: the booleans (`or`/`and`), the non-negative
//! rationals `Q+` in exact arbitrary precision, and the naturals. A semiring
//! is selected at runtime through [`Semiring`], and its elements are
//! [`Scalar`] values tagged with their carrier.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::{Expectation, LawReport, Outcome};

/// Handle naming one of the supported semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semiring {
    Bool,
    #[serde(rename = "qplus")]
    QPlus,
    Nat,
}

/// An element of one of the semirings.
///
/// Rationals are always kept in lowest terms with a positive denominator and
/// are never negative, so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Bool(bool),
    Rat(BigRational),
    Nat(BigUint),
}

/// Properties of a semiring that govern which distributive laws exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "positive")]
    Positive,
    #[serde(rename = "semifield")]
    Semifield,
    #[serde(rename = "refinable")]
    Refinable,
    A,
    B,
    C,
    D,
    E,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Positive,
        Property::Semifield,
        Property::Refinable,
        Property::A,
        Property::B,
        Property::C,
        Property::D,
        Property::E,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::Positive => "positive",
            Property::Semifield => "semifield",
            Property::Refinable => "refinable",
            Property::A => "A",
            Property::B => "B",
            Property::C => "C",
            Property::D => "D",
            Property::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown property `{s}`")))
    }
}

/// Binary operations exposed through [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
    Div,
}

/// Shorthand for the rational `p/q`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

impl Semiring {
    pub const ALL: [Semiring; 3] = [Semiring::Bool, Semiring::QPlus, Semiring::Nat];

    pub fn zero(self) -> Scalar {
        match self {
            Semiring::Bool => Scalar::Bool(false),
            Semiring::QPlus => Scalar::Rat(BigRational::zero()),
            Semiring::Nat => Scalar::Nat(BigUint::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Semiring::Bool => Scalar::Bool(true),
            Semiring::QPlus => Scalar::Rat(BigRational::one()),
            Semiring::Nat => Scalar::Nat(BigUint::one()),
        }
    }

    /// Image of a natural number under the unique semiring map from `N`.
    pub fn from_u64(self, n: u64) -> Scalar {
        match self {
            Semiring::Bool => Scalar::Bool(n != 0),
            Semiring::QPlus => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Semiring::Nat => Scalar::Nat(BigUint::from(n)),
        }
    }

    /// Whether `s` is a well-formed element of this semiring.
    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (Semiring::Bool, Scalar::Bool(_)) | (Semiring::Nat, Scalar::Nat(_)) => true,
            (Semiring::QPlus, Scalar::Rat(r)) => !r.is_negative(),
            _ => false,
        }
    }

    pub fn check(self, s: &Scalar) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SemiringMismatch {
                left: self,
                right: s.semiring(),
            })
        }
    }

    pub fn is_zero(self, s: &Scalar) -> bool {
        s.is_zero()
    }

    /// Addition. Panics if either operand belongs to another semiring.
    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x || *y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Nat(x), Scalar::Nat(y)) => Scalar::Nat(x + y),
            _ => panic!("mixed scalars {a:?} and {b:?} in {self}"),
        }
    }

    /// Multiplication. Panics if either operand belongs to another semiring.
    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x && *y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Nat(x), Scalar::Nat(y)) => Scalar::Nat(x * y),
            _ => panic!("mixed scalars {a:?} and {b:?} in {self}"),
        }
    }

    /// Division `a / b`, defined on the semifields for `b != 0`.
    pub fn div(self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if self == Semiring::Nat {
            return Err(Error::NotSemifield(self));
        }
        if b.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(match (a, b) {
            // the only nonzero boolean is 1
            (Scalar::Bool(x), Scalar::Bool(_)) => Scalar::Bool(*x),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x / y),
            _ => panic!("mixed scalars {a:?} and {b:?} in {self}"),
        })
    }

    pub fn sum<'a>(self, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        items
            .into_iter()
            .fold(self.zero(), |acc, s| self.add(&acc, s))
    }

    /// Parses `p`, `p/q` (qplus, nat when integral) or `0`/`1` (bool).
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar {
            semiring: self,
            text: text.to_string(),
        };
        let t = text.trim();
        match self {
            Semiring::Bool => match t {
                "0" | "false" => Ok(Scalar::Bool(false)),
                "1" | "true" => Ok(Scalar::Bool(true)),
                _ => Err(bad()),
            },
            Semiring::QPlus | Semiring::Nat => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (t, None),
                };
                let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
                if !digits(num) || !den.is_none_or(digits) {
                    return Err(bad());
                }
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let d: BigInt = match den {
                    Some(d) => d.parse().map_err(|_| bad())?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(bad());
                }
                let r = BigRational::new(n, d);
                match self {
                    Semiring::QPlus => Ok(Scalar::Rat(r)),
                    _ if r.is_integer() => Ok(Scalar::Nat(r.to_integer().to_biguint().ok_or_else(bad)?)),
                    _ => Err(bad()),
                }
            }
        }
    }

    /// The properties this instance is known to enjoy.
    pub fn declared_properties(self) -> &'static [Property] {
        use Property::*;
        match self {
            Semiring::Bool => &[Positive, Semifield, Refinable, B, D, E],
            Semiring::QPlus => &[Positive, Semifield, Refinable, B, E],
            Semiring::Nat => &[Positive, Refinable, A, B, C, D, E],
        }
    }

    pub fn is_semifield(self) -> bool {
        matches!(self, Semiring::Bool | Semiring::QPlus)
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semiring::Bool => "bool",
            Semiring::QPlus => "qplus",
            Semiring::Nat => "nat",
        })
    }
}

impl FromStr for Semiring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bool" => Ok(Semiring::Bool),
            "qplus" => Ok(Semiring::QPlus),
            "nat" => Ok(Semiring::Nat),
            _ => Err(Error::Invalid(format!("unknown semiring `{s}`"))),
        }
    }
}

impl Scalar {
    pub fn semiring(&self) -> Semiring {
        match self {
            Scalar::Bool(_) => Semiring::Bool,
            Scalar::Rat(_) => Semiring::QPlus,
            Scalar::Nat(_) => Semiring::Nat,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Bool(b) => !b,
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Nat(n) => n.is_zero(),
        }
    }

    /// The value as an exact rational (`true` is 1).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Bool(b) => BigRational::from_integer(BigInt::from(u8::from(*b))),
            Scalar::Rat(r) => r.clone(),
            Scalar::Nat(n) => BigRational::from_integer(BigInt::from(n.clone())),
        }
    }

    /// Small natural values, for enumeration bounds.
    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Scalar::Bool(b) => Some(u64::from(*b)),
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_u64(),
            Scalar::Rat(_) => None,
            Scalar::Nat(n) => n.to_u64(),
        }
    }

    /// JSON form: booleans as JSON booleans, naturals as numbers when they
    /// fit, rationals as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Bool(b) => json!(b),
            Scalar::Nat(n) => match n.to_u64() {
                Some(v) => json!(v),
                None => json!(n.to_string()),
            },
            Scalar::Rat(_) => json!(self.to_string()),
        }
    }

    pub fn from_json(semiring: Semiring, v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::Bool(b) if semiring == Semiring::Bool => Ok(Scalar::Bool(*b)),
            serde_json::Value::Number(n) => semiring.parse_scalar(&n.to_string()),
            serde_json::Value::String(s) => semiring.parse_scalar(s),
            other => Err(Error::InvalidScalar {
                semiring,
                text: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => write!(f, "{}", u8::from(*b)),
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Nat(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Checked semiring arithmetic on validated scalars.
pub fn arith(sr: Semiring, op: Op, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    sr.check(a)?;
    sr.check(b)?;
    match op {
        Op::Add => Ok(sr.add(a, b)),
        Op::Mul => Ok(sr.mul(a, b)),
        Op::Div => sr.div(a, b),
    }
}

/// Witness that a positive semifield is refinable: given `a + b = c + d`,
/// returns `(x, y, z, t)` with `x+y=a`, `z+t=b`, `x+z=c`, `y+t=d`.
pub fn refinement_witness(
    sr: Semiring,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
) -> Result<(Scalar, Scalar, Scalar, Scalar)> {
    for s in [a, b, c, d] {
        sr.check(s)?;
    }
    if !sr.is_semifield() {
        return Err(Error::NotSemifield(sr));
    }
    let total = sr.add(a, b);
    if total != sr.add(c, d) {
        return Err(Error::NotRefinementInstance);
    }
    if total.is_zero() {
        let z = sr.zero();
        return Ok((z.clone(), z.clone(), z.clone(), z));
    }
    let part = |p: &Scalar, q: &Scalar| sr.div(&sr.mul(p, q), &total);
    Ok((part(a, c)?, part(a, d)?, part(b, c)?, part(b, d)?))
}

fn finite_carrier(sr: Semiring, bound: u64) -> Vec<Scalar> {
    match sr {
        Semiring::Bool => vec![sr.zero(), sr.one()],
        _ => (0..=bound).map(|n| sr.from_u64(n)).collect(),
    }
}

fn quad_json(names: &str, vals: &[&Scalar]) -> serde_json::Value {
    let map: serde_json::Map<_, _> = names
        .chars()
        .zip(vals)
        .map(|(n, v)| (n.to_string(), v.to_json()))
        .collect();
    serde_json::Value::Object(map)
}

/// Decides one of the structural properties of a semiring.
///
/// Booleans are enumerated fully and naturals up to `bound`. Over `Q+` the
/// properties that hold are certified by the positive-semifield argument
/// (the refinement witness is available through [`refinement_witness`]),
/// and `A` is refuted by `1/2 + 1/2 = 1`.
pub fn check_property(sr: Semiring, prop: Property, bound: u64) -> Result<LawReport> {
    let expected = if sr.declared_properties().contains(&prop) {
        Expectation::Holds
    } else {
        Expectation::Counterexample
    };
    let mut report = LawReport::new("semiring", prop.to_string(), sr, expected);

    if sr == Semiring::QPlus {
        use Property::*;
        match prop {
            Positive | Semifield | Refinable | B | E => {
                report.note = Some("certified for every positive semifield".into());
                return Ok(report.finish(1, Outcome::Holds));
            }
            A => {
                let h = rat(1, 2);
                let cx = Outcome::counterexample(
                    quad_json("ab", &[&h, &h]),
                    json!(sr.add(&h, &h).to_string()),
                    json!("a != 0 and b != 0"),
                );
                return Ok(report.finish(1, cx));
            }
            C | D => return Err(Error::NoDecisionProcedure { semiring: sr, prop }),
        }
    }
    if sr == Semiring::Nat && bound == 0 {
        return Err(Error::NoDecisionProcedure { semiring: sr, prop });
    }

    let carrier = finite_carrier(sr, bound);
    let (instances, outcome) = search_property(sr, prop, &carrier);
    if sr == Semiring::Nat {
        report.note = Some(format!("carrier enumerated up to {bound}"));
    }
    Ok(report.finish(instances, outcome))
}

fn search_property(sr: Semiring, prop: Property, carrier: &[Scalar]) -> (usize, Outcome) {
    let zero = sr.zero();
    let one = sr.one();
    let mut count = 0usize;
    let fail = |names: &str, vals: &[&Scalar], lhs: String, rhs: &str| {
        Outcome::counterexample(quad_json(names, vals), json!(lhs), json!(rhs))
    };
    match prop {
        Property::Positive | Property::A | Property::B | Property::C => {
            for a in carrier {
                for b in carrier {
                    let cs: &[Scalar] = if prop == Property::C { carrier } else { &carrier[..1] };
                    for c in cs {
                        count += 1;
                        let violated = match prop {
                            Property::Positive => {
                                sr.add(a, b).is_zero() && !(a.is_zero() && b.is_zero())
                            }
                            Property::A => sr.add(a, b) == one && !a.is_zero() && !b.is_zero(),
                            Property::B => sr.mul(a, b).is_zero() && !a.is_zero() && !b.is_zero(),
                            _ => sr.add(a, c) == sr.add(b, c) && a != b,
                        };
                        if violated {
                            return match prop {
                                Property::Positive => {
                                    (count, fail("ab", &[a, b], sr.add(a, b).to_string(), "a = b = 0"))
                                }
                                Property::A => (
                                    count,
                                    fail("ab", &[a, b], sr.add(a, b).to_string(), "a = 0 or b = 0"),
                                ),
                                Property::B => (
                                    count,
                                    fail("ab", &[a, b], sr.mul(a, b).to_string(), "a = 0 or b = 0"),
                                ),
                                _ => (count, fail("abc", &[a, b, c], sr.add(a, c).to_string(), "a = b")),
                            };
                        }
                    }
                }
            }
            (count, Outcome::Holds)
        }
        Property::Semifield => {
            for a in carrier.iter().filter(|a| !a.is_zero()) {
                count += 1;
                if !carrier.iter().any(|x| sr.mul(a, x) == one) {
                    return (count, fail("a", &[a], "no inverse".into(), "a * x = 1"));
                }
            }
            (count, Outcome::Holds)
        }
        Property::D => {
            for a in carrier {
                for b in carrier {
                    count += 1;
                    let ok = carrier
                        .iter()
                        .any(|x| sr.add(a, x) == *b || sr.add(b, x) == *a);
                    if !ok {
                        return (count, fail("ab", &[a, b], "no x".into(), "a + x = b or b + x = a"));
                    }
                }
            }
            (count, Outcome::Holds)
        }
        Property::Refinable => {
            for a in carrier {
                for b in carrier {
                    for c in carrier {
                        for d in carrier {
                            if sr.add(a, b) != sr.add(c, d) {
                                continue;
                            }
                            count += 1;
                            let found = carrier.iter().any(|x| {
                                carrier.iter().any(|y| {
                                    sr.add(x, y) == *a
                                        && carrier.iter().any(|z| {
                                            sr.add(x, z) == *c
                                                && carrier.iter().any(|t| {
                                                    sr.add(z, t) == *b && sr.add(y, t) == *d
                                                })
                                        })
                                })
                            });
                            if !found {
                                return (
                                    count,
                                    fail("abcd", &[a, b, c, d], "no refinement".into(), "x,y,z,t exist"),
                                );
                            }
                        }
                    }
                }
            }
            (count, Outcome::Holds)
        }
        Property::E => {
            for a in carrier {
                for b in carrier {
                    for c in carrier {
                        for d in carrier {
                            if sr.add(a, b) != sr.mul(c, d) {
                                continue;
                            }
                            count += 1;
                            let pairs: Vec<(&Scalar, &Scalar)> = carrier
                                .iter()
                                .flat_map(|x| carrier.iter().map(move |y| (x, y)))
                                .filter(|(x, y)| sr.add(x, y) == *d)
                                .collect();
                            let target = [a.clone(), b.clone(), c.clone()];
                            let start = [zero.clone(), zero.clone(), zero.clone()];
                            if !search_e(sr, carrier, &pairs, &target, start) {
                                return (
                                    count,
                                    fail("abcd", &[a, b, c, d], "no function t".into(), "t exists"),
                                );
                            }
                        }
                    }
                }
            }
            (count, Outcome::Holds)
        }
    }
}

/// Depth-first search for the function `t` of property (E). Partial sums
/// only grow over positive semirings, which prunes the naturals.
fn search_e(
    sr: Semiring,
    carrier: &[Scalar],
    pairs: &[(&Scalar, &Scalar)],
    target: &[Scalar; 3],
    sums: [Scalar; 3],
) -> bool {
    let Some(((x, y), rest)) = pairs.split_first() else {
        return sums == *target;
    };
    for t in carrier {
        let next = [
            sr.add(&sums[0], &sr.mul(t, x)),
            sr.add(&sums[1], &sr.mul(t, y)),
            sr.add(&sums[2], t),
        ];
        if sr == Semiring::Nat && next.iter().zip(target).any(|(s, g)| s > g) {
            // larger t only overshoots further
            break;
        }
        if search_e(sr, carrier, rest, target, next) {
            return true;
        }
    }
    false
}

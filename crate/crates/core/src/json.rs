//! JSON encodings.
//!
//! A `FinSupp` over symbols is an object `{symbol: value}` where values are
//! `"p/q"` strings over `qplus`, integers over `nat` and booleans over
//! `bool`. Functions with non-symbol keys (as in weightings of sets) are
//! arrays of `[key, value]` pairs. A convex set is
//! `{"semiring": .., "generators": [..]}`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use crate::composite::KleisliArrow;
use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::semiring::{Scalar, Semiring};
use crate::symbol::{Symbol, SymbolSet};

/// Conversion to the JSON forms used in reports and CLI output.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Symbol {
    fn to_json(&self) -> Value {
        json!(self.as_str())
    }
}

impl ToJson for Scalar {
    fn to_json(&self) -> Value {
        Scalar::to_json(self)
    }
}

impl ToJson for usize {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl<T: ToJson> ToJson for BTreeSet<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<A: ToJson, B: ToJson> ToJson for (A, B) {
    fn to_json(&self) -> Value {
        json!([self.0.to_json(), self.1.to_json()])
    }
}

impl<K: ToJson> ToJson for FinSupp<K> {
    fn to_json(&self) -> Value {
        let keys: Vec<Value> = self.support().map(ToJson::to_json).collect();
        if keys.iter().all(Value::is_string) {
            let map: Map<String, Value> = keys
                .into_iter()
                .zip(self.entries())
                .map(|(k, (_, v))| (k.as_str().unwrap_or_default().to_string(), v.to_json()))
                .collect();
            Value::Object(map)
        } else {
            Value::Array(
                keys.into_iter()
                    .zip(self.entries())
                    .map(|(k, (_, v))| json!([k, v.to_json()]))
                    .collect(),
            )
        }
    }
}

impl<K: ToJson> ToJson for ConvexSet<K> {
    fn to_json(&self) -> Value {
        json!({
            "semiring": self.semiring().to_string(),
            "generators": self.generators().iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn finsupp_from_json(semiring: Semiring, v: &Value) -> Result<FinSupp<Symbol>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Invalid(format!("expected an object of values, got {v}")))?;
    let entries = obj
        .iter()
        .map(|(k, val)| Ok((Symbol::from(k.as_str()), Scalar::from_json(semiring, val)?)))
        .collect::<Result<Vec<_>>>()?;
    FinSupp::from_entries(semiring, entries)
}

pub fn convex_from_json(v: &Value) -> Result<ConvexSet<Symbol>> {
    let semiring: Semiring = v
        .get("semiring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Invalid("convex set needs a \"semiring\" string".into()))?
        .parse()?;
    let gens = v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("convex set needs a \"generators\" array".into()))?
        .iter()
        .map(|g| finsupp_from_json(semiring, g))
        .collect::<Result<Vec<_>>>()?;
    ConvexSet::from_generators(semiring, gens)
}

/// Parses `{"weights": [{"set": ["x","y"], "value": "5"}, ...]}`.
pub fn set_weighting_from_json(semiring: Semiring, v: &Value) -> Result<FinSupp<SymbolSet>> {
    let weights = v
        .get("weights")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("expected a \"weights\" array".into()))?;
    let entries = weights
        .iter()
        .map(|w| {
            let set = w
                .get("set")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Invalid(format!("weight without a \"set\" array: {w}")))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(Symbol::from)
                        .ok_or_else(|| Error::Invalid(format!("set members must be strings: {s}")))
                })
                .collect::<Result<SymbolSet>>()?;
            let value = w
                .get("value")
                .ok_or_else(|| Error::Invalid(format!("weight without a \"value\": {w}")))?;
            Ok((set, Scalar::from_json(semiring, value)?))
        })
        .collect::<Result<Vec<_>>>()?;
    FinSupp::from_entries(semiring, entries)
}

pub fn set_weighting_to_json(phi: &FinSupp<SymbolSet>) -> Value {
    json!({
        "weights": phi.entries().iter().map(|(set, v)| json!({
            "set": set.to_json(),
            "value": v.to_json(),
        })).collect::<Vec<_>>()
    })
}

/// Rows of generator coordinates under a header of the sorted variables.
pub fn vertices_csv(vars: &[Symbol], points: &[FinSupp<Symbol>]) -> String {
    let mut out = String::new();
    let header: Vec<&str> = vars.iter().map(Symbol::as_str).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for p in points {
        let row: Vec<String> = vars.iter().map(|v| p.get(v).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

impl ToJson for KleisliArrow {
    fn to_json(&self) -> Value {
        json!({
            "vars_in": self.source().to_json(),
            "vars_out": self.target().to_json(),
            "table": Value::Object(self.table().iter().map(|(x, a)| (x.to_string(), a.to_json())).collect()),
        })
    }
}

/// Parses `{"vars_in": [..], "vars_out": [..], "table": {sym: ConvexSet}}`.
pub fn kleisli_from_json(semiring: Semiring, v: &Value) -> Result<KleisliArrow> {
    let names = |field: &str| -> Result<Vec<Symbol>> {
        v.get(field)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Invalid(format!("arrow needs a \"{field}\" array")))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(Symbol::from)
                    .ok_or_else(|| Error::Invalid(format!("variables must be strings: {s}")))
            })
            .collect()
    };
    let table = v
        .get("table")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Invalid("arrow needs a \"table\" object".into()))?
        .iter()
        .map(|(x, a)| Ok((Symbol::from(x.as_str()), convex_from_json(a)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    KleisliArrow::new(semiring, names("vars_in")?, names("vars_out")?, table)
}

/// Table of a symbol function, for reports.
pub fn table_to_json(f: &BTreeMap<Symbol, Symbol>) -> Value {
    Value::Object(f.iter().map(|(k, v)| (k.to_string(), json!(v.as_str()))).collect())
}

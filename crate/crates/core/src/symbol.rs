use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A variable name. Cheap to clone; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl From<String> for Symbol {
    fn from(s: String) -> Self {
        Symbol(Arc::from(s))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite set of symbols, the element type of `P X`.
pub type SymbolSet = BTreeSet<Symbol>;

/// Builds a symbol set from names.
pub fn symset<'a>(names: impl IntoIterator<Item = &'a str>) -> SymbolSet {
    names.into_iter().map(Symbol::new).collect()
}

/// The symbols `x0, x1, ...`.
pub fn numbered(prefix: &str, n: usize) -> Vec<Symbol> {
    (0..n).map(|i| Symbol::from(format!("{prefix}{i}"))).collect()
}

/// All subsets of `items`, in binary-counter order (so the empty set first).
pub fn powerset<T: Clone + Ord>(items: &[T]) -> Vec<BTreeSet<T>> {
    assert!(items.len() < usize::BITS as usize);
    (0..1usize << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, t)| t.clone())
                .collect()
        })
        .collect()
}

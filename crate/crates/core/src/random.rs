//! Seeded instance generation for randomized law checks.
//!
//! Everything is drawn from ChaCha8 seeded with a `u64`, so a printed seed
//! replays a run exactly on any platform.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::ConvexSet;
use crate::freemod::FinSupp;
use crate::semiring::{rat, Scalar, Semiring};
use crate::symbol::{Symbol, SymbolSet};

pub struct InstanceRng(ChaCha8Rng);

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.0.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.0.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.0).expect("nonempty choice")
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.0);
    }

    /// A nonzero scalar; rationals have numerator and denominator at most 4.
    pub fn nonzero_scalar(&mut self, sr: Semiring, max_nat: u64) -> Scalar {
        match sr {
            Semiring::Bool => sr.one(),
            Semiring::Nat => sr.from_u64(self.0.gen_range(1..=max_nat.max(1))),
            Semiring::QPlus => rat(self.0.gen_range(1..=4), self.0.gen_range(1..=4)),
        }
    }

    /// A pair `(α, β)` with `α + β = 1`, including the endpoints.
    pub fn convex_pair(&mut self) -> (Scalar, Scalar) {
        let d = self.0.gen_range(1..=6i64);
        let n = self.0.gen_range(0..=d);
        (rat(n, d), rat(d - n, d))
    }

    pub fn subset<T: Clone + Ord>(&mut self, items: &[T], allow_empty: bool) -> BTreeSet<T> {
        loop {
            let s: BTreeSet<T> = items.iter().filter(|_| self.0.gen_bool(0.5)).cloned().collect();
            if allow_empty || !s.is_empty() || items.is_empty() {
                return s;
            }
        }
    }

    pub fn finsupp(&mut self, sr: Semiring, vars: &[Symbol], max_support: usize) -> FinSupp<Symbol> {
        let k = self.range(0, max_support.min(vars.len()));
        let mut vs = vars.to_vec();
        vs.shuffle(&mut self.0);
        let entries: Vec<_> = vs.into_iter().take(k).map(|v| (v, self.nonzero_scalar(sr, 3))).collect();
        FinSupp::from_entries(sr, entries).expect("scalars match the semiring")
    }

    pub fn convex_set(
        &mut self,
        sr: Semiring,
        vars: &[Symbol],
        max_gens: usize,
        max_support: usize,
    ) -> ConvexSet<Symbol> {
        let n = self.range(1, max_gens);
        let gens: Vec<_> = (0..n).map(|_| self.finsupp(sr, vars, max_support)).collect();
        ConvexSet::from_generators(sr, gens).expect("one semiring")
    }

    pub fn set_weighting(
        &mut self,
        sr: Semiring,
        vars: &[Symbol],
        max_support: usize,
        allow_empty_set: bool,
    ) -> FinSupp<SymbolSet> {
        let n = self.range(0, max_support);
        let entries: Vec<_> = (0..n)
            .map(|_| (self.subset(vars, allow_empty_set), self.nonzero_scalar(sr, 3)))
            .collect();
        FinSupp::from_entries(sr, entries).expect("scalars match the semiring")
    }

    pub fn function(&mut self, dom: &[Symbol], cod: &[Symbol]) -> BTreeMap<Symbol, Symbol> {
        dom.iter().map(|x| (x.clone(), self.pick(cod).clone())).collect()
    }
}

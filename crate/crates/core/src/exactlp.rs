//! Exact rational linear feasibility: does `A λ = b` have a solution
//! `λ >= 0`? Solved by phase-1 simplex with Bland's rule, which cannot cycle.

use std::sync::atomic::{AtomicBool, Ordering};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static TRACE_ALL: AtomicBool = AtomicBool::new(false);

/// Turns tableau dumps on for every system solved afterwards, including
/// those built inside hull membership tests.
pub fn set_trace(on: bool) {
    TRACE_ALL.store(on, Ordering::Relaxed);
}

/// A system `Σ_j λ_j · columns[j] = target` with `λ >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    columns: Vec<Vec<BigRational>>,
    target: Vec<BigRational>,
    trace: bool,
}

impl FeasibilitySystem {
    pub fn new(columns: Vec<Vec<BigRational>>, target: Vec<BigRational>) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != target.len()) {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} against target of length {}",
                bad.len(),
                target.len()
            )));
        }
        Ok(FeasibilitySystem {
            columns,
            target,
            trace: TRACE_ALL.load(Ordering::Relaxed),
        })
    }

    /// The system asking whether `target` is a convex combination of
    /// `points`: each column gets an extra coordinate 1, as does the target.
    pub fn convex_combination(points: &[Vec<BigRational>], target: &[BigRational]) -> Result<Self> {
        let lift = |v: &[BigRational]| {
            let mut v = v.to_vec();
            v.push(BigRational::one());
            v
        };
        Self::new(points.iter().map(|p| lift(p)).collect(), lift(target))
    }

    /// Print every tableau to stderr while solving.
    pub fn traced(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.target.len(), self.columns.len())
    }

    /// Whether `λ` solves the system exactly.
    pub fn satisfied_by(&self, lambda: &[BigRational]) -> bool {
        if lambda.len() != self.columns.len() || lambda.iter().any(|l| l.is_negative()) {
            return false;
        }
        (0..self.target.len()).all(|i| {
            let lhs: BigRational = self
                .columns
                .iter()
                .zip(lambda)
                .map(|(c, l)| &c[i] * l)
                .sum();
            lhs == self.target[i]
        })
    }

    /// A non-negative solution, or `None` if there is none.
    pub fn feasible(&self) -> Option<Vec<BigRational>> {
        let (m, n) = self.dims();
        let width = n + m;
        // rows: [A | I | b], signs flipped so that b >= 0
        let mut rows: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let flip = self.target[i].is_negative();
                let mut row = Vec::with_capacity(width + 1);
                for col in &self.columns {
                    row.push(if flip { -&col[i] } else { col[i].clone() });
                }
                for k in 0..m {
                    row.push(if k == i { BigRational::one() } else { BigRational::zero() });
                }
                row.push(self.target[i].abs());
                row
            })
            .collect();
        let mut basis: Vec<usize> = (n..n + m).collect();
        // reduced costs of the phase-1 objective (sum of artificials), with
        // the negated objective value in the last slot
        let mut cost: Vec<BigRational> = vec![BigRational::zero(); width + 1];
        for row in &rows {
            for j in 0..n {
                cost[j] -= &row[j];
            }
            cost[width] -= &row[width];
        }

        let mut step = 0usize;
        loop {
            if self.trace {
                dump(step, &rows, &cost, &basis);
            }
            let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
                break;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            // phase 1 is bounded below by zero, so a ratio always exists
            let (r, _) = leave.expect("phase-1 objective is bounded");
            pivot(&mut rows, &mut cost, r, enter);
            basis[r] = enter;
            step += 1;
        }

        if !cost[width].is_zero() {
            return None;
        }
        let mut lambda = vec![BigRational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                lambda[b] = rows[i][width].clone();
            }
        }
        assert!(self.satisfied_by(&lambda), "simplex produced an invalid witness");
        Some(lambda)
    }
}

fn pivot(rows: &mut [Vec<BigRational>], cost: &mut [BigRational], r: usize, c: usize) {
    let p = rows[r][c].clone();
    for v in rows[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = rows[r].clone();
    let eliminate = |row: &mut Vec<BigRational>| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    };
    for (i, row) in rows.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    let mut cost_row = cost.to_vec();
    eliminate(&mut cost_row);
    cost.clone_from_slice(&cost_row);
}

fn dump(step: usize, rows: &[Vec<BigRational>], cost: &[BigRational], basis: &[usize]) {
    eprintln!("-- tableau {step}");
    for (row, b) in rows.iter().zip(basis) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        eprintln!("  v{b:<3} | {}", cells.join(" "));
    }
    let cells: Vec<String> = cost.iter().map(|v| v.to_string()).collect();
    eprintln!("  cost | {}", cells.join(" "));
}

//! Weight inference: find a strictly positive integer weight per generator
//! that balances every non-zero relation.
//!
//! Feasibility is decided exactly with a phase-one simplex over the rationals.
//! The reported solution is the one with the smallest maximum entry, ties
//! broken lexicographically in generator order; it is found by a bounded
//! search over the kernel lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Presentation;
use crate::words::WordOrZero;

/// Outcome of [`infer_weights`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightInference {
    Homogeneous(Vec<u64>),
    NonHomogeneous,
}

impl WeightInference {
    pub fn weights(&self) -> Option<&[u64]> {
        match self {
            WeightInference::Homogeneous(w) => Some(w),
            WeightInference::NonHomogeneous => None,
        }
    }
}

/// A relation whose two sides have different weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: usize,
    pub lhs_weight: u64,
    pub rhs_weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomogeneityReport {
    pub violations: Vec<Violation>,
}

impl HomogeneityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every non-zero relation is balanced under `weights`.
pub fn validate_homogeneous(p: &Presentation, weights: &[u64]) -> HomogeneityReport {
    assert_eq!(weights.len(), p.generators().len());
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let weight = |w: &crate::words::Word| -> u64 {
        w.letters().iter().map(|l| weights[l.index()]).sum()
    };
    let violations = p
        .relations()
        .iter()
        .enumerate()
        .filter_map(|(i, rel)| match &rel.rhs {
            WordOrZero::Zero => None,
            WordOrZero::Word(r) => {
                let (lw, rw) = (weight(&rel.lhs), weight(r));
                (lw != rw).then_some(Violation {
                    relation: i,
                    lhs_weight: lw,
                    rhs_weight: rw,
                })
            }
        })
        .collect();
    HomogeneityReport { violations }
}

/// Upper bound on search nodes before falling back to the simplex vertex.
const SEARCH_BUDGET: u64 = 5_000_000;

/// Infers a positive weight function making `p` homogeneous.
pub fn infer_weights(p: &Presentation) -> WeightInference {
    let n = p.generators().len();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for rel in p.relations() {
        if let WordOrZero::Word(r) = &rel.rhs {
            let mut row = vec![0i64; n];
            for l in rel.lhs.letters() {
                row[l.index()] += 1;
            }
            for l in r.letters() {
                row[l.index()] -= 1;
            }
            if row.iter().any(|&c| c != 0) {
                rows.push(row);
            }
        }
    }
    if n == 0 {
        return WeightInference::Homogeneous(Vec::new());
    }
    let Some(vertex) = positive_solution(&rows, n) else {
        return WeightInference::NonHomogeneous;
    };
    let bound = vertex.iter().copied().max().unwrap_or(1);
    let system = ReducedSystem::new(&rows, n);
    let mut budget = SEARCH_BUDGET;
    for max in 1..=bound {
        let mut assignment = vec![0u64; n];
        match system.search(0, max, &mut assignment, &mut budget) {
            Search::Found => return WeightInference::Homogeneous(assignment),
            Search::Exhausted => {}
            Search::OutOfBudget => break,
        }
    }
    WeightInference::Homogeneous(vertex)
}

/// A strictly positive integer solution of `rows · x = 0`, divided by its
/// gcd, or `None` if there is none.
fn positive_solution(rows: &[Vec<i64>], n: usize) -> Option<Vec<u64>> {
    // Substitute x = 1 + y with y >= 0: rows · y = -rows · 1.
    let m = rows.len();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut b: Vec<BigRational> = Vec::with_capacity(m);
    for row in rows {
        let rhs: i64 = -row.iter().sum::<i64>();
        let sign = if rhs < 0 { -1 } else { 1 };
        a.push(row.iter().map(|&c| rat(c * sign)).collect());
        b.push(rat(rhs * sign));
    }
    let y = phase_one(a, b, n)?;
    let x: Vec<BigRational> = y.into_iter().map(|v| v + BigRational::one()).collect();
    let lcm = x
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.iter()
        .map(|v| (v / &g).to_u64())
        .collect::<Option<Vec<u64>>>()
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Phase-one simplex with Bland's rule for `a · y = b, y >= 0` where `b >= 0`.
/// Returns a feasible `y` or `None`.
fn phase_one(a: Vec<Vec<BigRational>>, b: Vec<BigRational>, n: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    if m == 0 {
        return Some(vec![BigRational::zero(); n]);
    }
    let cols = n + m;
    // Tableau rows: original columns, artificial columns, rhs.
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, rhs))| {
            row.extend((0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row.push(rhs);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..cols).collect();
    // Reduced costs of minimising the sum of artificials.
    let mut cost: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[cols] -= &row[cols];
    }
    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (r, _) = leave.expect("phase one cannot be unbounded");
        let pivot = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        let f = cost[enter].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * p;
        }
        basis[r] = enter;
    }
    if !cost[cols].is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            y[j] = t[i][cols].clone();
        }
    }
    Some(y)
}

enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

/// The balance system in reduced row echelon form, pivoting on the last
/// generators first so that each pivot variable depends only on free
/// variables that precede it in generator order.
struct ReducedSystem {
    /// For each generator: `None` if free, else the integer row
    /// `coef · x_pivot + Σ c_j x_j = 0` as `(coef, [(j, c_j)])`.
    pivots: Vec<Option<(i128, Vec<(usize, i128)>)>>,
}

impl ReducedSystem {
    fn new(rows: &[Vec<i64>], n: usize) -> Self {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| rat(c)).collect())
            .collect();
        let mut pivots = vec![None; n];
        let mut rank = 0;
        for col in (0..n).rev() {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let lead = m[rank][col].clone();
            for v in m[rank].iter_mut() {
                *v /= &lead;
            }
            let pr = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pr) {
                        *v -= &f * p;
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        for row in m.iter().take(rank) {
            let col = (0..n).rev().find(|&j| !row[j].is_zero()).expect("nonzero row");
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<i128> = row
                .iter()
                .map(|v| (v * &lcm).to_integer().to_i128().expect("small coefficients"))
                .collect();
            let deps = (0..col)
                .filter(|&j| ints[j] != 0)
                .map(|j| (j, ints[j]))
                .collect();
            pivots[col] = Some((ints[col], deps));
        }
        ReducedSystem { pivots }
    }

    fn search(&self, i: usize, max: u64, x: &mut [u64], budget: &mut u64) -> Search {
        if i == x.len() {
            return Search::Found;
        }
        if *budget == 0 {
            return Search::OutOfBudget;
        }
        *budget -= 1;
        match &self.pivots[i] {
            Some((coef, deps)) => {
                let s: i128 = deps.iter().map(|&(j, c)| c * x[j] as i128).sum();
                if s % coef != 0 {
                    return Search::Exhausted;
                }
                let v = -s / coef;
                if v < 1 || v > max as i128 {
                    return Search::Exhausted;
                }
                x[i] = v as u64;
                self.search(i + 1, max, x, budget)
            }
            None => {
                for v in 1..=max {
                    x[i] = v;
                    match self.search(i + 1, max, x, budget) {
                        Search::Exhausted => {}
                        other => return other,
                    }
                }
                Search::Exhausted
            }
        }
    }
}

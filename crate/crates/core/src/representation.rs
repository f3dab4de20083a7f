//! Ground-truth counts `A(n, theta)`: the number of ways to write `n` as a
//! sum of exactly `theta` weights, repetitions allowed, order ignored.
//!
//! Equivalently, the coefficient of `x^n y^theta` in
//! `prod_nu 1 / (1 - x^{a_nu} y)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{Count, Instance, Weights};

/// Every `A(v, t)` for `v <= max_value`, `t <= max_parts`, from one fold over
/// the weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationTable {
    weights: Weights,
    max_value: usize,
    max_parts: usize,
    // row-major by parts: cells[t * (max_value + 1) + v]
    cells: Vec<Count>,
}

impl RepresentationTable {
    /// Folds the weights one at a time with the unbounded-knapsack recurrence
    /// `T'[v, t] = T[v, t] + T'[v - a, t - 1]`, in place.
    ///
    /// A zero weight needs no special case: it moves mass along `t` only.
    pub fn build(weights: &Weights, max_value: u64, max_parts: u64) -> Self {
        let max_value = usize::try_from(max_value).expect("n exceeds address space");
        let max_parts = usize::try_from(max_parts).expect("theta exceeds address space");
        let width = max_value + 1;
        let mut cells = vec![BigUint::zero(); width * (max_parts + 1)];
        cells[0] = BigUint::one();
        for &a in weights.values() {
            let Ok(a) = usize::try_from(a) else { continue };
            if a > max_value {
                continue;
            }
            for t in 1..=max_parts {
                let (prev, cur) = cells.split_at_mut(t * width);
                let prev_row = &prev[(t - 1) * width..];
                for v in a..width {
                    cur[v] += &prev_row[v - a];
                }
            }
        }
        RepresentationTable {
            weights: weights.clone(),
            max_value,
            max_parts,
            cells,
        }
    }

    pub fn for_instance(instance: &Instance) -> Self {
        Self::build(&instance.weights, instance.n, instance.theta)
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn max_value(&self) -> u64 {
        self.max_value as u64
    }

    pub fn max_parts(&self) -> u64 {
        self.max_parts as u64
    }

    /// `A(value, parts)`, or `None` outside the table.
    pub fn get(&self, value: u64, parts: u64) -> Option<&Count> {
        let (v, t) = (usize::try_from(value).ok()?, usize::try_from(parts).ok()?);
        if v > self.max_value || t > self.max_parts {
            return None;
        }
        Some(&self.cells[t * (self.max_value + 1) + v])
    }

    /// Number of ways to write `value` with at most `max_parts` weights.
    pub fn at_most(&self, value: u64, max_parts: u64) -> Option<Count> {
        (0..=max_parts).map(|t| self.get(value, t).cloned()).sum()
    }

    /// Total number of big-integer cells held.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

/// Exact `A(n, theta)` by the two-index dynamic program, `O(N n theta)`.
///
/// ```
/// use addbasis::{count_representations_dp, Instance, Weights};
///
/// // 4 = 4 + 0 + 0 + 0 = 1 + 1 + 1 + 1
/// let inst = Instance::new(Weights::new(&[0, 1, 4, 9]).unwrap(), 4, 4);
/// assert_eq!(count_representations_dp(&inst), 2u32.into());
/// ```
pub fn count_representations_dp(instance: &Instance) -> Count {
    RepresentationTable::for_instance(instance)
        .get(instance.n, instance.theta)
        .cloned()
        .expect("table covers its own instance")
}

/// Size of the multiset enumeration, `C(theta + N - 1, N - 1)`, saturating.
pub fn multiset_count(n_weights: usize, theta: u64) -> u128 {
    // C(theta + k, k) with k = N - 1, built incrementally to stay exact.
    let k = n_weights.saturating_sub(1) as u128;
    let theta = theta as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        match acc.checked_mul(theta + i) {
            Some(v) => acc = v / i,
            None => return u128::MAX,
        }
    }
    acc
}

/// Oracle: enumerates every multiset of `theta` weights (as nondecreasing
/// index sequences) and counts those summing to `n`.
pub fn count_representations_bruteforce(instance: &Instance, budget: u128) -> Result<Count> {
    let weights = instance.weights.values();
    let estimate = multiset_count(weights.len(), instance.theta);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    fn go(weights: &[u64], start: usize, parts_left: u64, remaining: u128) -> u64 {
        if parts_left == 0 {
            return u64::from(remaining == 0);
        }
        (start..weights.len())
            .map(|i| {
                let w = weights[i] as u128;
                if w > remaining {
                    0
                } else {
                    go(weights, i, parts_left - 1, remaining - w)
                }
            })
            .sum()
    }
    Ok(BigUint::from(go(
        weights,
        0,
        instance.theta,
        instance.n as u128,
    )))
}

/// Dense bivariate polynomial truncated at degree `max_x` in x and `max_y` in y.
#[derive(Debug, Clone, PartialEq, Eq)]
struct TruncatedSeries {
    max_x: usize,
    max_y: usize,
    coeffs: Vec<Vec<Count>>, // coeffs[y][x]
}

impl TruncatedSeries {
    fn one(max_x: usize, max_y: usize) -> Self {
        let mut coeffs = vec![vec![BigUint::zero(); max_x + 1]; max_y + 1];
        coeffs[0][0] = BigUint::one();
        TruncatedSeries { max_x, max_y, coeffs }
    }

    /// `1 / (1 - x^a y) = sum_k x^{a k} y^k`, truncated.
    fn geometric(a: u64, max_x: usize, max_y: usize) -> Self {
        let mut s = TruncatedSeries::one(max_x, max_y);
        for k in 1..=max_y {
            match (a as u128).checked_mul(k as u128) {
                Some(deg) if deg <= max_x as u128 => s.coeffs[k][deg as usize] = BigUint::one(),
                _ => break,
            }
        }
        s
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![vec![BigUint::zero(); self.max_x + 1]; self.max_y + 1];
        for (y1, row1) in self.coeffs.iter().enumerate() {
            for (x1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (y2, row2) in other.coeffs.iter().enumerate().take(self.max_y + 1 - y1) {
                    for (x2, c2) in row2.iter().enumerate().take(self.max_x + 1 - x1) {
                        if !c2.is_zero() {
                            out[y1 + y2][x1 + x2] += c1 * c2;
                        }
                    }
                }
            }
        }
        TruncatedSeries {
            max_x: self.max_x,
            max_y: self.max_y,
            coeffs: out,
        }
    }
}

/// Multiplies the truncated expansions of `1 / (1 - x^{a_nu} y)` and reads off
/// the coefficient of `x^n y^theta`. An independent coding of the same count
/// as [`count_representations_dp`].
pub fn generating_series_check(instance: &Instance) -> Count {
    let max_x = usize::try_from(instance.n).expect("n exceeds address space");
    let max_y = usize::try_from(instance.theta).expect("theta exceeds address space");
    let product = instance
        .weights
        .values()
        .iter()
        .fold(TruncatedSeries::one(max_x, max_y), |acc, &a| {
            acc.mul(&TruncatedSeries::geometric(a, max_x, max_y))
        });
    product.coeffs[max_y][max_x].clone()
}

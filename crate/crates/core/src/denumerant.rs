//! Denumerants: the number of nonnegative integer solutions of
//! `c_1 x_1 + ... + c_m x_m = s` with every `c_i >= 1`.
//!
//! [`denumerant_dp`] is the production counter (coin-change fold over a
//! big-integer table), [`denumerant_bruteforce`] an independent exhaustive
//! oracle, and [`denumerant_asymptotic`] the leading term
//! `s^(m-1) / ((m-1)! c_1 ... c_m)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{factorial, Count, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenumerantProblem {
    coeffs: Vec<u64>,
    target: u64,
}

impl DenumerantProblem {
    /// An empty coefficient list is allowed: it has the single empty
    /// solution when `target == 0` and none otherwise.
    pub fn new(coeffs: Vec<u64>, target: u64) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|&c| c == 0) {
            return Err(Error::NonPositiveCoefficient { index, value: 0 });
        }
        Ok(DenumerantProblem { coeffs, target })
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn target(&self) -> u64 {
        self.target
    }
}

/// Coefficients of `prod_i 1/(1 - x^{c_i})` up to `x^max_target`.
///
/// Entry `s` of the result is the denumerant for target `s`, so a single
/// table answers every target up to `max_target`. Coefficients larger than
/// `max_target` are skipped (they can only take the value 0).
pub fn denumerant_table(coeffs: &[u64], max_target: usize) -> Vec<Count> {
    let mut table = vec![BigUint::zero(); max_target + 1];
    table[0] = BigUint::one();
    for &c in coeffs {
        debug_assert!(c >= 1);
        let Ok(c) = usize::try_from(c) else { continue };
        if c > max_target {
            continue;
        }
        for j in c..=max_target {
            let (done, rest) = table.split_at_mut(j);
            rest[0] += &done[j - c];
        }
    }
    table
}

/// Exact count by dynamic programming, `O(m s)` big-integer additions.
///
/// ```
/// use addbasis::{denumerant_dp, DenumerantProblem};
///
/// let p = DenumerantProblem::new(vec![1, 2, 3], 6).unwrap();
/// assert_eq!(denumerant_dp(&p), 7u32.into());
/// ```
pub fn denumerant_dp(problem: &DenumerantProblem) -> Count {
    let target = usize::try_from(problem.target).expect("target exceeds address space");
    denumerant_table(&problem.coeffs, target).swap_remove(target)
}

/// Upper bound on the number of leaf visits of [`denumerant_bruteforce`]:
/// the product of `s / c_i + 1` over all but the last coefficient.
pub fn bruteforce_size(problem: &DenumerantProblem) -> u128 {
    let s = problem.target as u128;
    match problem.coeffs.split_last() {
        None => 1,
        Some((_, leading)) => leading
            .iter()
            .map(|&c| s / c as u128 + 1)
            .fold(1u128, |acc, k| acc.saturating_mul(k)),
    }
}

/// Exhaustive enumeration: loops over `x_1, ..., x_{m-1}` within the
/// remaining budget and checks whether the last coefficient divides what is
/// left. Shares no code with [`denumerant_dp`].
pub fn denumerant_bruteforce(problem: &DenumerantProblem, budget: u128) -> Result<Count> {
    let estimate = bruteforce_size(problem);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    fn go(coeffs: &[u64], remaining: u64) -> u64 {
        match coeffs {
            [] => u64::from(remaining == 0),
            [last] => u64::from(remaining.is_multiple_of(*last)),
            [first, rest @ ..] => {
                let mut total = 0;
                let mut used = 0;
                while used <= remaining {
                    total += go(rest, remaining - used);
                    used += first;
                }
                total
            }
        }
    }
    Ok(BigUint::from(go(&problem.coeffs, problem.target)))
}

/// Leading-order estimate `s^(m-1) / ((m-1)! c_1 ... c_m)` as an exact
/// rational. Asymptotically exact as `s -> infinity` when the coefficients
/// are coprime.
///
/// ```
/// use addbasis::{denumerant_asymptotic, DenumerantProblem};
/// use num_rational::BigRational;
///
/// let p = DenumerantProblem::new(vec![1, 2, 3], 100_000).unwrap();
/// let expected = BigRational::new(2_500_000_000u64.into(), 3.into());
/// assert_eq!(denumerant_asymptotic(&p).unwrap(), expected);
/// ```
pub fn denumerant_asymptotic(problem: &DenumerantProblem) -> Result<ExactRational> {
    let m = problem.coeffs.len();
    if m == 0 {
        return Err(Error::EmptyCoefficients);
    }
    let numerator = num_traits::pow(BigInt::from(problem.target), m - 1);
    let product: BigInt = problem.coeffs.iter().map(|&c| BigInt::from(c)).product();
    let denominator = BigInt::from(factorial(m as u64 - 1)) * product;
    Ok(ExactRational::new(numerator, denominator))
}

/// `gcd(c_1, ..., c_m)`, reported as a diagnostic; nothing is ever rescaled.
pub fn coefficient_gcd(problem: &DenumerantProblem) -> Result<u64> {
    gcd_of(&problem.coeffs).ok_or(Error::EmptyCoefficients)
}

pub(crate) fn gcd_of(values: &[u64]) -> Option<u64> {
    values.iter().copied().reduce(|a, b| a.gcd(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn problem(coeffs: &[u64], s: u64) -> DenumerantProblem {
        DenumerantProblem::new(coeffs.to_vec(), s).unwrap()
    }

    // Independent oracle: walks every vector in the box
    // prod [0, s / c_i] and counts exact hits.
    fn box_count(coeffs: &[u64], s: u64) -> u64 {
        let bounds: Vec<u64> = coeffs.iter().map(|&c| s / c).collect();
        let mut x = vec![0u64; coeffs.len()];
        let mut hits = 0;
        loop {
            let sum: u64 = x.iter().zip(coeffs).map(|(a, b)| a * b).sum();
            hits += u64::from(sum == s);
            let mut i = 0;
            loop {
                if i == x.len() {
                    return hits;
                }
                if x[i] < bounds[i] {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn frozen_values_from_box_oracle() {
        // Values below were produced by `box_count` and frozen.
        assert_eq!(box_count(&[1, 2], 2), 2);
        assert_eq!(box_count(&[1, 2, 3], 6), 7);
        assert_eq!(denumerant_dp(&problem(&[1, 2], 2)), 2u32.into());
        assert_eq!(denumerant_dp(&problem(&[1, 2, 3], 6)), 7u32.into());
    }

    #[test]
    fn dp_edge_cases() {
        assert_eq!(denumerant_dp(&problem(&[], 0)), 1u32.into());
        assert_eq!(denumerant_dp(&problem(&[], 5)), 0u32.into());
        assert_eq!(denumerant_dp(&problem(&[2, 4], 3)), 0u32.into());
        assert_eq!(denumerant_dp(&problem(&[7], 0)), 1u32.into());
        assert_eq!(denumerant_dp(&problem(&[100], 5)), 0u32.into());
    }

    #[test]
    fn zero_coefficient_rejected() {
        assert_eq!(
            DenumerantProblem::new(vec![1, 0, 2], 3),
            Err(Error::NonPositiveCoefficient { index: 1, value: 0 })
        );
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(
            denumerant_bruteforce(&problem(&[1, 2], 2), 1_000_000).unwrap(),
            2u32.into()
        );
        assert_eq!(denumerant_bruteforce(&problem(&[3], 7), 10).unwrap(), 0u32.into());
        assert_eq!(denumerant_bruteforce(&problem(&[1], 9), 10).unwrap(), 1u32.into());
        assert_eq!(denumerant_bruteforce(&problem(&[], 0), 10).unwrap(), 1u32.into());
        assert_eq!(denumerant_bruteforce(&problem(&[], 3), 10).unwrap(), 0u32.into());
        assert!(matches!(
            denumerant_bruteforce(&problem(&[1, 1, 1], 1000), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn asymptotic_examples() {
        let a = denumerant_asymptotic(&problem(&[1, 2, 3], 100_000)).unwrap();
        assert_eq!(
            a,
            ExactRational::new(BigInt::from(2_500_000_000u64), BigInt::from(3))
        );
        let a = denumerant_asymptotic(&problem(&[1], 7)).unwrap();
        assert_eq!(a, ExactRational::one());
        assert_eq!(
            denumerant_asymptotic(&problem(&[], 7)),
            Err(Error::EmptyCoefficients)
        );
    }

    #[test]
    fn asymptote_relative_error_for_one_two_three() {
        // d(s; 1, 2, 3) = round((s + 3)^2 / 12), so the relative gap of the
        // leading term is about 6 / s.
        for (s, tol) in [(10_000u64, 1e-3), (100_000, 1e-4)] {
            let p = problem(&[1, 2, 3], s);
            let exact = denumerant_dp(&p);
            let closed = ((s + 3) * (s + 3) + 6) / 12;
            assert_eq!(exact, BigUint::from(closed));
            let exact = ExactRational::from_integer(BigInt::from(exact));
            let approx = denumerant_asymptotic(&p).unwrap();
            let rel = ((&approx - &exact) / &exact).abs();
            assert!(rel < ExactRational::new(BigInt::from(1), BigInt::from((1.0 / tol) as u64)));
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(coefficient_gcd(&problem(&[2, 4, 6], 0)), Ok(2));
        assert_eq!(coefficient_gcd(&problem(&[1, 5], 0)), Ok(1));
        assert_eq!(coefficient_gcd(&problem(&[9], 0)), Ok(9));
        assert_eq!(coefficient_gcd(&problem(&[], 0)), Err(Error::EmptyCoefficients));
    }

    proptest! {
        #[test]
        fn dp_matches_box_oracle(
            coeffs in prop::collection::vec(1u64..=12, 0..=4),
            s in 0u64..=30,
        ) {
            let p = problem(&coeffs, s);
            prop_assert_eq!(denumerant_dp(&p), BigUint::from(box_count(&coeffs, s)));
        }

        #[test]
        fn dp_matches_bruteforce(
            coeffs in prop::collection::vec(1u64..=20, 0..=5),
            s in 0u64..=60,
        ) {
            let p = problem(&coeffs, s);
            prop_assert_eq!(denumerant_dp(&p), denumerant_bruteforce(&p, u128::MAX).unwrap());
        }

        #[test]
        fn adding_a_coefficient_never_decreases(
            coeffs in prop::collection::vec(1u64..=20, 0..=5),
            extra in 1u64..=20,
            s in 0u64..=80,
        ) {
            let base = denumerant_dp(&problem(&coeffs, s));
            let mut more = coeffs.clone();
            more.push(extra);
            prop_assert!(denumerant_dp(&problem(&more, s)) >= base);
        }

        #[test]
        fn non_divisible_target_has_no_solutions(
            coeffs in prop::collection::vec(1u64..=10, 1..=4),
            g in 2u64..=5,
            s in 0u64..=80,
        ) {
            let scaled: Vec<u64> = coeffs.iter().map(|c| c * g).collect();
            let p = problem(&scaled, s);
            let gcd = coefficient_gcd(&p).unwrap();
            if s % gcd != 0 {
                prop_assert_eq!(denumerant_dp(&p), BigUint::zero());
            }
        }

        #[test]
        fn table_agrees_with_single_target(
            coeffs in prop::collection::vec(1u64..=15, 0..=4),
            max in 0usize..=50,
        ) {
            let table = denumerant_table(&coeffs, max);
            for (s, v) in table.iter().enumerate() {
                prop_assert_eq!(v, &denumerant_dp(&problem(&coeffs, s as u64)));
            }
        }

        #[test]
        fn order_invariant(
            mut coeffs in prop::collection::vec(1u64..=15, 0..=5),
            s in 0u64..=60,
        ) {
            let a = denumerant_dp(&problem(&coeffs, s));
            coeffs.reverse();
            prop_assert_eq!(a, denumerant_dp(&problem(&coeffs, s)));
        }
    }
}

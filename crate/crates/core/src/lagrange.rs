//! Power sums over Lagrange interpolation nodes.
//!
//! With `L(t) = prod (t - a_nu)` and distinct nodes, the sums
//! `S(t) = sum_nu a_nu^t / L'(a_nu)` take four shapes depending on `t`:
//!
//! | range            | value                                                   |
//! |------------------|---------------------------------------------------------|
//! | `t <= -1`        | `(-1)^(N-1) / (a_1...a_N) * h_{-t-1}(1/a_1, ..., 1/a_N)` |
//! | `0 <= t <= N-2`  | `0`                                                     |
//! | `t = N-1`        | `1`                                                     |
//! | `t >= N`         | `h_{t-N+1}(a_1, ..., a_N)`                              |
//!
//! where `h_k` is the complete homogeneous symmetric polynomial of degree `k`.
//! Everything here is exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{ExactRational, Weights};

/// `L'(a_nu) = prod_{mu != nu} (a_nu - a_mu)` for a 1-based `nu`.
///
/// For `N = 1` this is the empty product, 1.
///
/// ```
/// use addbasis::{lagrange_derivative, Weights};
///
/// let w = Weights::new(&[0, 1, 4, 9]).unwrap();
/// assert_eq!(lagrange_derivative(&w, 4).unwrap(), 360.into());
/// ```
pub fn lagrange_derivative(weights: &Weights, nu: usize) -> Result<BigInt> {
    let values = weights.values();
    if nu == 0 || nu > values.len() {
        return Err(Error::IndexOutOfRange {
            index: nu,
            len: values.len(),
        });
    }
    Ok(derivative_at(values, nu - 1))
}

fn derivative_at(values: &[u64], i: usize) -> BigInt {
    let a = BigInt::from(values[i]);
    values
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &b)| &a - BigInt::from(b))
        .product()
}

/// `L'(a_nu)` for every node, in order.
pub fn lagrange_derivatives(weights: &Weights) -> Vec<BigInt> {
    let values = weights.values();
    (0..values.len()).map(|i| derivative_at(values, i)).collect()
}

/// Which branch of the four-case identity applies to `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Negative,
    ZeroBand,
    Top,
    Homogeneous,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Negative => "negative",
            CaseTag::ZeroBand => "zero_band",
            CaseTag::Top => "top",
            CaseTag::Homogeneous => "homogeneous",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PowerSumCase {
    pub t: i64,
    pub case_tag: CaseTag,
}

impl PowerSumCase {
    pub fn classify(t: i64, n_weights: usize) -> Self {
        let top = n_weights as i64 - 1;
        let case_tag = if t < 0 {
            CaseTag::Negative
        } else if t < top {
            CaseTag::ZeroBand
        } else if t == top {
            CaseTag::Top
        } else {
            CaseTag::Homogeneous
        };
        PowerSumCase { t, case_tag }
    }
}

fn check_zero_node(weights: &Weights, t: i64) -> Result<()> {
    if t < 0 && weights.min() == 0 {
        return Err(Error::ZeroNodeNegativePower { t });
    }
    Ok(())
}

/// `sum_nu a_nu^t / L'(a_nu)`, with `0^0 = 1`.
///
/// ```
/// use addbasis::{power_sum, Weights};
/// use num_rational::BigRational;
///
/// let w = Weights::new(&[1, 2]).unwrap();
/// assert_eq!(power_sum(&w, 1).unwrap(), BigRational::from_integer(1.into()));
/// assert_eq!(power_sum(&w, -1).unwrap(), BigRational::new((-1).into(), 2.into()));
/// ```
pub fn power_sum(weights: &Weights, t: i64) -> Result<ExactRational> {
    check_zero_node(weights, t)?;
    Ok(power_sum_with(weights.values(), &lagrange_derivatives(weights), t))
}

/// Sums over one common denominator so only the total is reduced.
fn power_sum_with(values: &[u64], derivatives: &[BigInt], t: i64) -> ExactRational {
    let k = t.unsigned_abs() as usize;
    let mut denom = derivatives.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    if t < 0 {
        let a_lcm = values.iter().fold(BigInt::one(), |acc, &a| acc.lcm(&a.into()));
        denom *= num_traits::pow(a_lcm, k);
    }
    let numer: BigInt = values
        .iter()
        .zip(derivatives)
        .map(|(&a, d)| {
            let a_k = num_traits::pow(BigInt::from(a), k);
            if t >= 0 {
                a_k * (&denom / d)
            } else {
                &denom / (d * a_k)
            }
        })
        .sum();
    ExactRational::new(numer, denom)
}

/// `h_k(x_1, ..., x_m)` by the prefix recurrence
/// `h_j(S + {x}) = h_j(S) + x h_{j-1}(S + {x})`, `O(m k)` operations.
pub fn complete_homogeneous(vars: &[ExactRational], k: usize) -> ExactRational {
    homogeneous_table(vars, k).swap_remove(k)
}

/// `[h_0, ..., h_k]` of `vars`.
fn homogeneous_table<T>(vars: &[T], k: usize) -> Vec<T>
where
    T: Clone + Zero + One + for<'a> std::ops::AddAssign<&'a T>,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut h = vec![T::zero(); k + 1];
    h[0] = T::one();
    for x in vars {
        for j in 1..=k {
            let step = x * &h[j - 1];
            h[j] += &step;
        }
    }
    h
}

/// `h_k` tables shared by every `t` of one verification.
struct RhsTables {
    n: i64,
    /// `h_k(a_1, ..., a_N)`.
    direct: Vec<BigInt>,
    /// `(-1)^(N-1) / prod(a) * h_k(1/a_1, ..., 1/a_N)`.
    inverse: Vec<ExactRational>,
}

impl RhsTables {
    fn new(values: &[u64], t_min: i64, t_max: i64) -> Self {
        let n = values.len() as i64;
        let direct_len = (t_max - n + 1).max(0) as usize;
        let inverse_len = if t_min < 0 { (-t_min - 1) as usize } else { 0 };
        let ints: Vec<BigInt> = values.iter().map(|&a| BigInt::from(a)).collect();
        let direct = homogeneous_table(&ints, direct_len);
        let inverse = if t_min < 0 {
            let inverses: Vec<ExactRational> = values
                .iter()
                .map(|&a| ExactRational::new(BigInt::one(), a.into()))
                .collect();
            let product: BigInt = ints.iter().product();
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let scale = ExactRational::new(sign.into(), product);
            homogeneous_table(&inverses, inverse_len)
                .into_iter()
                .map(|h| &scale * h)
                .collect()
        } else {
            Vec::new()
        };
        RhsTables { n, direct, inverse }
    }

    fn rhs(&self, t: i64) -> ExactRational {
        match PowerSumCase::classify(t, self.n as usize).case_tag {
            CaseTag::ZeroBand => ExactRational::zero(),
            CaseTag::Top => ExactRational::one(),
            CaseTag::Homogeneous => {
                ExactRational::from_integer(self.direct[(t - self.n + 1) as usize].clone())
            }
            CaseTag::Negative => self.inverse[(-t - 1) as usize].clone(),
        }
    }
}

/// Right-hand side of the four-case identity at `t`.
pub fn identity_rhs(weights: &Weights, t: i64) -> Result<ExactRational> {
    check_zero_node(weights, t)?;
    Ok(RhsTables::new(weights.values(), t, t).rhs(t))
}

/// One row of an identity verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub case: PowerSumCase,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub weights: Weights,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

/// Compares [`power_sum`] against [`identity_rhs`] for every `t` in
/// `t_min..=t_max`. Needs `N >= 2`.
///
/// ```
/// use addbasis::{verify_identity, Weights};
///
/// let report = verify_identity(&Weights::new(&[1, 2, 3]).unwrap(), -3, 6).unwrap();
/// assert!(report.all_hold());
/// ```
pub fn verify_identity(weights: &Weights, t_min: i64, t_max: i64) -> Result<IdentityReport> {
    if weights.len() < 2 {
        return Err(Error::DegenerateN {
            n_weights: weights.len(),
        });
    }
    if t_min <= t_max {
        check_zero_node(weights, t_min)?;
    }
    let values = weights.values();
    let derivatives = lagrange_derivatives(weights);
    let tables = RhsTables::new(values, t_min, t_max);
    let checks = (t_min..=t_max)
        .map(|t| IdentityCheck {
            case: PowerSumCase::classify(t, weights.len()),
            lhs: power_sum_with(values, &derivatives, t),
            rhs: tables.rhs(t),
        })
        .collect();
    Ok(IdentityReport {
        weights: weights.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weights {
        Weights::new(v).unwrap()
    }

fn rational_power(base: u64, t: i64) -> ExactRational {
    let magnitude = num_traits::pow(BigInt::from(base), t.unsigned_abs() as usize);
    if t >= 0 {
        ExactRational::from_integer(magnitude)
    } else {
        ExactRational::new(BigInt::one(), magnitude)
    }
}

    #[test]
    fn power_sum_matches_termwise_sum() {
        for vals in [&[1i64, 2][..], &[0, 1, 4, 9], &[2, 3, 5, 7, 11], &[3, 10, 17, 19]] {
            let weights = w(vals);
            let derivs = lagrange_derivatives(&weights);
            let t_min = if vals[0] == 0 { 0 } else { -4 };
            for t in t_min..=9 {
                let naive: ExactRational = weights
                    .values()
                    .iter()
                    .zip(&derivs)
                    .map(|(&a, d)| rational_power(a, t) / ExactRational::from_integer(d.clone()))
                    .sum();
                assert_eq!(power_sum(&weights, t).unwrap(), naive, "{vals:?} t={t}");
            }
        }
    }

    fn rat(p: i64, q: i64) -> ExactRational {
        ExactRational::new(p.into(), q.into())
    }

    // Direct multi-index enumeration of sum_{|i| = k} prod x_j^{i_j}.
    fn monomial_sum(vars: &[ExactRational], k: usize) -> ExactRational {
        fn go(vars: &[ExactRational], k: usize) -> ExactRational {
            match vars {
                [] => {
                    if k == 0 {
                        ExactRational::one()
                    } else {
                        ExactRational::zero()
                    }
                }
                [first, rest @ ..] => (0..=k)
                    .map(|i| num_traits::pow(first.clone(), i) * go(rest, k - i))
                    .sum(),
            }
        }
        go(vars, k)
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(lagrange_derivative(&w(&[1, 2, 3]), 2).unwrap(), BigInt::from(-1));
        assert_eq!(lagrange_derivative(&w(&[1, 2]), 1).unwrap(), BigInt::from(-1));
        assert_eq!(lagrange_derivative(&w(&[1, 2]), 2).unwrap(), BigInt::from(1));
        assert_eq!(lagrange_derivative(&w(&[0, 1, 4, 9]), 4).unwrap(), BigInt::from(360));
        assert_eq!(lagrange_derivative(&w(&[7]), 1).unwrap(), BigInt::one());
        assert_eq!(
            lagrange_derivative(&w(&[1, 2]), 3),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        );
        assert!(lagrange_derivative(&w(&[1, 2]), 0).is_err());
    }

    #[test]
    fn derivative_sign_pattern() {
        let weights = w(&[0, 2, 3, 7, 11]);
        for (i, d) in lagrange_derivatives(&weights).iter().enumerate() {
            let nu = i + 1;
            let expected_positive = (weights.len() - nu).is_multiple_of(2);
            assert_eq!(d > &BigInt::zero(), expected_positive);
        }
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum(&w(&[1, 2]), 1).unwrap(), rat(1, 1));
        assert_eq!(power_sum(&w(&[1, 2, 4]), 1).unwrap(), rat(0, 1));
        assert_eq!(power_sum(&w(&[1, 2]), 2).unwrap(), rat(3, 1));
        assert_eq!(power_sum(&w(&[1, 2]), -1).unwrap(), rat(-1, 2));
        assert_eq!(power_sum(&w(&[1, 2]), -2).unwrap(), rat(-3, 4));
        assert_eq!(
            power_sum(&w(&[0, 1, 4]), -1),
            Err(Error::ZeroNodeNegativePower { t: -1 })
        );
    }

    #[test]
    fn rhs_examples() {
        assert_eq!(identity_rhs(&w(&[1, 2]), 2).unwrap(), rat(3, 1));
        assert_eq!(identity_rhs(&w(&[1, 2]), 0).unwrap(), rat(0, 1));
        assert_eq!(identity_rhs(&w(&[1, 2]), -2).unwrap(), rat(-3, 4));
        assert_eq!(identity_rhs(&w(&[1, 2]), -1).unwrap(), rat(-1, 2));
    }

    #[test]
    fn verify_examples() {
        let r = verify_identity(&w(&[1, 2, 3]), -3, 6).unwrap();
        assert_eq!(r.checks.len(), 10);
        assert!(r.all_hold());

        // N = 4: zero band t = 0..=2, top at t = 3, then h_1 = 2+3+5+7
        let r = verify_identity(&w(&[2, 3, 5, 7]), 0, 4).unwrap();
        assert!(r.all_hold());
        let values: Vec<ExactRational> = r.checks.iter().map(|c| c.lhs.clone()).collect();
        assert_eq!(values, vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(17, 1)]);
        let tags: Vec<CaseTag> = r.checks.iter().map(|c| c.case.case_tag).collect();
        assert_eq!(
            tags,
            vec![
                CaseTag::ZeroBand,
                CaseTag::ZeroBand,
                CaseTag::ZeroBand,
                CaseTag::Top,
                CaseTag::Homogeneous
            ]
        );

        assert_eq!(
            verify_identity(&w(&[0, 1, 4]), -1, -1),
            Err(Error::ZeroNodeNegativePower { t: -1 })
        );
        assert_eq!(
            verify_identity(&w(&[3]), 0, 2),
            Err(Error::DegenerateN { n_weights: 1 })
        );
        assert!(verify_identity(&w(&[1, 2]), 3, 2).unwrap().checks.is_empty());
    }

    #[test]
    fn zero_node_allowed_for_nonnegative_t() {
        let weights = w(&[0, 1, 4, 9]);
        let r = verify_identity(&weights, 0, 8).unwrap();
        assert!(r.all_hold());
        assert_eq!(power_sum(&weights, 0).unwrap(), rat(0, 1));
        assert_eq!(power_sum(&weights, 2).unwrap(), rat(0, 1));
        assert_eq!(power_sum(&weights, 3).unwrap(), rat(1, 1));
    }

    #[test]
    fn classify_boundaries() {
        let tag = |t, n| PowerSumCase::classify(t, n).case_tag;
        assert_eq!(tag(-1, 3), CaseTag::Negative);
        assert_eq!(tag(0, 3), CaseTag::ZeroBand);
        assert_eq!(tag(1, 3), CaseTag::ZeroBand);
        assert_eq!(tag(2, 3), CaseTag::Top);
        assert_eq!(tag(3, 3), CaseTag::Homogeneous);
        assert_eq!(tag(0, 2), CaseTag::ZeroBand);
        assert_eq!(tag(1, 2), CaseTag::Top);
        assert_eq!(tag(0, 1), CaseTag::Top);
    }

    #[test]
    fn homogeneous_matches_enumeration() {
        let sets: [&[i64]; 4] = [&[1, 2], &[2, 3, 5], &[1, 4, 6], &[3, 7]];
        for set in sets {
            let vars: Vec<ExactRational> = set.iter().map(|&a| rat(a, 1)).collect();
            let inv: Vec<ExactRational> = set.iter().map(|&a| rat(1, a)).collect();
            for k in 0..=4 {
                assert_eq!(complete_homogeneous(&vars, k), monomial_sum(&vars, k));
                assert_eq!(complete_homogeneous(&inv, k), monomial_sum(&inv, k));
            }
        }
        assert_eq!(complete_homogeneous(&[], 0), rat(1, 1));
        assert_eq!(complete_homogeneous(&[], 2), rat(0, 1));
    }

    #[test]
    fn rhs_matches_enumerated_multi_index_sums() {
        // N <= 3, |index| <= 4, computed straight from the multi-index form
        for set in [&[1i64, 3][..], &[2, 3, 5], &[1, 2, 6]] {
            let weights = w(set);
            let n = set.len() as i64;
            let product: i64 = set.iter().product();
            let sign = if n % 2 == 1 { 1 } else { -1 };
            for k in 0..=4i64 {
                let inv: Vec<ExactRational> = set.iter().map(|&a| rat(1, a)).collect();
                let neg = rat(sign, product) * monomial_sum(&inv, k as usize);
                assert_eq!(identity_rhs(&weights, -k - 1).unwrap(), neg);
                let vars: Vec<ExactRational> = set.iter().map(|&a| rat(a, 1)).collect();
                assert_eq!(identity_rhs(&weights, n - 1 + k).unwrap(), monomial_sum(&vars, k as usize));
            }
        }
    }

    proptest! {
        #[test]
        fn identity_holds_exactly(
            set in prop::collection::btree_set(1u64..=30, 2..=8),
            offset in 0i64..=10,
        ) {
            let weights = Weights::from_unsigned(set.into_iter().collect()).unwrap();
            let n = weights.len() as i64;
            let t = offset - 4;
            if t <= 2 * n {
                prop_assert_eq!(power_sum(&weights, t).unwrap(), identity_rhs(&weights, t).unwrap());
            }
        }

        #[test]
        fn zero_band_and_top_with_zero_node(
            set in prop::collection::btree_set(1u64..=30, 1..=7),
        ) {
            let mut values = vec![0u64];
            values.extend(set);
            let weights = Weights::from_unsigned(values).unwrap();
            let n = weights.len() as i64;
            for t in 0..=n - 2 {
                prop_assert!(power_sum(&weights, t).unwrap().is_zero());
            }
            prop_assert!(power_sum(&weights, n - 1).unwrap().is_one());
        }
    }
}

//! Counting representations through the difference set.
//!
//! For strictly increasing weights `a_1 < ... < a_N`, the number of ways to
//! write `n` as a sum of `theta` weights equals the alternating sum
//!
//! ```text
//! A(n, theta) = sum_{nu=1}^{N} (-1)^(nu-1) B_nu(s_nu),
//! s_nu = n + (a_1 + ... + a_nu) - (nu + theta) a_nu,
//! ```
//!
//! where `B_nu(s)` is the denumerant of the equation whose coefficients are
//! the positive differences `a_nu - a_mu` (`mu < nu`) followed by
//! `a_mu - a_nu` (`mu > nu`). Terms with `s_nu < 0` vanish.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::denumerant::{denumerant_table, gcd_of};
use crate::error::{Error, Result};
use crate::lagrange::lagrange_derivatives;
use crate::{factorial, Count, ExactRational, Instance, SignedCount, Weights};

/// The `nu`-th equation `sum_i c_i x_i = s_nu` over the difference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceEquation {
    /// 1-based.
    pub index: usize,
    /// The `N - 1` positive differences, lower neighbours first.
    pub coeffs: Vec<u64>,
    pub s: SignedCount,
}

impl DifferenceEquation {
    /// `+1` for odd `nu`, `-1` for even.
    pub fn sign(&self) -> i8 {
        if self.index % 2 == 1 {
            1
        } else {
            -1
        }
    }

    /// `s_nu` as a table index when it is nonnegative.
    pub fn target(&self) -> Option<usize> {
        self.s.to_usize()
    }
}

/// Difference coefficients for the `nu`-th equation (1-based).
fn difference_coeffs(values: &[u64], nu: usize) -> Vec<u64> {
    let a = values[nu - 1];
    let below = values[..nu - 1].iter().map(move |&b| a - b);
    let above = values[nu..].iter().map(move |&b| b - a);
    below.chain(above).collect()
}

/// `sum_{i<=nu} a_i - (nu + theta) a_nu` for every `nu`, i.e. `s_nu - n`.
fn target_offsets(values: &[u64], theta: u64) -> Vec<BigInt> {
    let mut prefix = BigInt::zero();
    values
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            prefix += a;
            &prefix - BigInt::from(i as u64 + 1 + theta) * a
        })
        .collect()
}

/// Builds the `N` equations of the reduction for an instance.
///
/// ```
/// use addbasis::{build_difference_equations, Instance, Weights};
///
/// let inst = Instance::new(Weights::new(&[1, 2, 3]).unwrap(), 4, 2);
/// let eqs = build_difference_equations(&inst);
/// assert_eq!(eqs[0].coeffs, vec![1, 2]);
/// assert_eq!(eqs[1].s, (-1).into());
/// ```
pub fn build_difference_equations(instance: &Instance) -> Vec<DifferenceEquation> {
    let values = instance.weights.values();
    let n = BigInt::from(instance.n);
    target_offsets(values, instance.theta)
        .into_iter()
        .enumerate()
        .map(|(i, offset)| DifferenceEquation {
            index: i + 1,
            coeffs: difference_coeffs(values, i + 1),
            s: &n + offset,
        })
        .collect()
}

/// One summand of the alternating sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerm {
    pub index: usize,
    pub sign: i8,
    pub s: SignedCount,
    /// `B_nu(s_nu)`, zero when `s_nu < 0`.
    pub count: Count,
    /// `sign * count`.
    pub term: SignedCount,
}

impl FormulaTerm {
    fn new(index: usize, s: SignedCount, count: Count) -> Self {
        let sign = if index % 2 == 1 { 1 } else { -1 };
        let magnitude = BigInt::from(count.clone());
        let term = if sign > 0 { magnitude } else { -magnitude };
        FormulaTerm {
            index,
            sign,
            s,
            count,
            term,
        }
    }
}

fn checked_total(terms: &[FormulaTerm]) -> Result<Count> {
    let total: SignedCount = terms.iter().map(|t| &t.term).sum();
    total
        .to_biguint()
        .ok_or(Error::NegativeResult { value: total })
}

/// Every term of the alternating sum, computing each `B_nu(s_nu)` with its
/// own denumerant table.
pub fn formula_term_breakdown(instance: &Instance) -> Vec<FormulaTerm> {
    build_difference_equations(instance)
        .into_iter()
        .map(|eq| {
            let count = match eq.target() {
                Some(s) => denumerant_table(&eq.coeffs, s).swap_remove(s),
                None => BigUint::zero(),
            };
            FormulaTerm::new(eq.index, eq.s, count)
        })
        .collect()
}

/// `A(n, theta)` as the alternating sum of difference-set denumerants.
///
/// A negative total is reported as [`Error::NegativeResult`] rather than
/// clamped.
///
/// ```
/// use addbasis::{count_via_difference_formula, Instance, Weights};
///
/// let inst = Instance::new(Weights::new(&[1, 2, 3]).unwrap(), 4, 2);
/// assert_eq!(count_via_difference_formula(&inst).unwrap(), 2u32.into());
/// ```
pub fn count_via_difference_formula(instance: &Instance) -> Result<Count> {
    checked_total(&formula_term_breakdown(instance))
}

/// Denumerant tables for every equation of a fixed weight list and part
/// count, large enough to evaluate the alternating sum for all `n <= max_n`
/// without recomputation.
#[derive(Debug, Clone)]
pub struct DifferenceTables {
    weights: Weights,
    theta: u64,
    max_n: u64,
    offsets: Vec<BigInt>,
    coeffs: Vec<Vec<u64>>,
    // tables[nu - 1][s] = B_nu(s); empty when s_nu < 0 for every n <= max_n
    tables: Vec<Vec<Count>>,
}

impl DifferenceTables {
    pub fn new(weights: &Weights, theta: u64, max_n: u64) -> Self {
        let values = weights.values();
        let offsets = target_offsets(values, theta);
        let coeffs: Vec<Vec<u64>> = (1..=values.len())
            .map(|nu| difference_coeffs(values, nu))
            .collect();
        let max_n_big = BigInt::from(max_n);
        let tables = offsets
            .iter()
            .zip(&coeffs)
            .map(|(offset, c)| match (&max_n_big + offset).to_usize() {
                Some(top) => denumerant_table(c, top),
                None => Vec::new(),
            })
            .collect();
        DifferenceTables {
            weights: weights.clone(),
            theta,
            max_n,
            offsets,
            coeffs,
            tables,
        }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    fn check_range(&self, n: u64) {
        assert!(
            n <= self.max_n,
            "n = {n} outside precomputed range 0..={}",
            self.max_n
        );
    }

    /// Terms of the alternating sum at `n` for the full weight list.
    ///
    /// # Panics
    ///
    /// If `n > max_n`.
    pub fn breakdown(&self, n: u64) -> Vec<FormulaTerm> {
        self.prefix_breakdown(n, self.weights.len())
    }

    /// Terms of the alternating sum at `n` for the first `len` weights only.
    ///
    /// The stored tables use difference coefficients against all weights.
    /// Dropping `a_mu` for `mu > len` removes coefficients `a_mu - a_nu`,
    /// which changes nothing when every such coefficient exceeds `s_nu`.
    /// Terms where that fails are recomputed from the truncated list.
    ///
    /// # Panics
    ///
    /// If `n > max_n`.
    pub fn prefix_breakdown(&self, n: u64, len: usize) -> Vec<FormulaTerm> {
        self.check_range(n);
        let len = len.clamp(1, self.weights.len());
        let values = self.weights.values();
        let next = values.get(len).copied();
        let n_big = BigInt::from(n);
        (0..len)
            .map(|i| {
                let s = &n_big + &self.offsets[i];
                let count = match s.to_usize() {
                    None => BigUint::zero(),
                    Some(target) => {
                        let shared = match next {
                            None => true,
                            Some(next) => (next - values[i]) as u128 > target as u128,
                        };
                        if shared {
                            self.tables[i][target].clone()
                        } else {
                            let truncated = difference_coeffs(&values[..len], i + 1);
                            denumerant_table(&truncated, target).swap_remove(target)
                        }
                    }
                };
                FormulaTerm::new(i + 1, s, count)
            })
            .collect()
    }

    /// The alternating sum at `n` for the full weight list.
    pub fn count(&self, n: u64) -> Result<Count> {
        checked_total(&self.breakdown(n))
    }

    /// The alternating sum at `n` for the first `len` weights.
    pub fn prefix_count(&self, n: u64, len: usize) -> Result<Count> {
        checked_total(&self.prefix_breakdown(n, len))
    }

    /// Difference coefficients of equation `nu` (1-based).
    pub fn coeffs(&self, nu: usize) -> &[u64] {
        &self.coeffs[nu - 1]
    }

    /// Total number of big-integer cells held.
    pub fn cell_count(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }
}

/// How the sign of the summed estimate is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignMode {
    /// `1/(N-2)! sum s^(N-2) / L'(a_nu)` exactly as written.
    PaperLiteral,
    /// The same sum times `(-1)^(N-1)`, which is what replacing
    /// `(-1)^(nu-1) / prod |a_nu - a_mu|` by `1 / L'(a_nu)` produces.
    ParityCorrected,
}

/// Which terms enter the estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermFilter {
    AllTerms,
    /// Only `nu` with `s_nu > 0`; the exact `B_nu` vanishes for `s_nu < 0`.
    PositiveSOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EstimateVariant {
    pub sign_mode: SignMode,
    pub term_filter: TermFilter,
}

impl EstimateVariant {
    pub const PAPER_LITERAL: Self = EstimateVariant {
        sign_mode: SignMode::PaperLiteral,
        term_filter: TermFilter::AllTerms,
    };
    pub const PARITY_CORRECTED: Self = EstimateVariant {
        sign_mode: SignMode::ParityCorrected,
        term_filter: TermFilter::AllTerms,
    };
    pub const POSITIVE_S_ONLY: Self = EstimateVariant {
        sign_mode: SignMode::PaperLiteral,
        term_filter: TermFilter::PositiveSOnly,
    };
    pub const PARITY_POSITIVE: Self = EstimateVariant {
        sign_mode: SignMode::ParityCorrected,
        term_filter: TermFilter::PositiveSOnly,
    };

    pub const ALL: [Self; 4] = [
        Self::PAPER_LITERAL,
        Self::PARITY_CORRECTED,
        Self::POSITIVE_S_ONLY,
        Self::PARITY_POSITIVE,
    ];

    pub fn name(&self) -> &'static str {
        match (self.sign_mode, self.term_filter) {
            (SignMode::PaperLiteral, TermFilter::AllTerms) => "paper_literal",
            (SignMode::ParityCorrected, TermFilter::AllTerms) => "parity_corrected",
            (SignMode::PaperLiteral, TermFilter::PositiveSOnly) => "positive_s_only",
            (SignMode::ParityCorrected, TermFilter::PositiveSOnly) => "parity_positive",
        }
    }
}

impl fmt::Display for EstimateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimateVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown estimate variant {s:?}"))
    }
}

/// Per-term pieces of the heuristic, shared by every variant.
#[derive(Debug, Clone)]
pub struct EstimateTerms {
    n_weights: usize,
    /// `(s_nu, s_nu^(N-2) / L'(a_nu))`
    terms: Vec<(SignedCount, ExactRational)>,
    scale: ExactRational,
}

impl EstimateTerms {
    pub fn new(instance: &Instance) -> Result<Self> {
        let n_weights = instance.weights.len();
        if n_weights < 2 {
            return Err(Error::DegenerateN { n_weights });
        }
        let power = n_weights - 2;
        let derivatives = lagrange_derivatives(&instance.weights);
        let terms = build_difference_equations(instance)
            .into_iter()
            .zip(derivatives)
            .map(|(eq, d)| {
                let value = ExactRational::new(num_traits::pow(eq.s.clone(), power), d);
                (eq.s, value)
            })
            .collect();
        let scale = ExactRational::new(1.into(), factorial(power as u64).into());
        Ok(EstimateTerms {
            n_weights,
            terms,
            scale,
        })
    }

    pub fn evaluate(&self, variant: EstimateVariant) -> ExactRational {
        let sum: ExactRational = self
            .terms
            .iter()
            .filter(|(s, _)| match variant.term_filter {
                TermFilter::AllTerms => true,
                TermFilter::PositiveSOnly => s.sign() == Sign::Plus,
            })
            .map(|(_, v)| v)
            .sum();
        let value = sum * &self.scale;
        match variant.sign_mode {
            SignMode::ParityCorrected if self.n_weights.is_multiple_of(2) => -value,
            _ => value,
        }
    }

    /// Number of `nu` with `s_nu > 0`.
    pub fn positive_terms(&self) -> usize {
        self.terms
            .iter()
            .filter(|(s, _)| s.sign() == Sign::Plus)
            .count()
    }
}

/// The heuristic large-`n` estimate, replacing each `B_nu(s_nu)` by its
/// leading asymptotic term, as an exact rational.
///
/// ```
/// use addbasis::{heuristic_estimate, EstimateVariant, Instance, Weights};
/// use num_rational::BigRational;
///
/// let inst = Instance::new(Weights::new(&[1, 2, 3]).unwrap(), 4, 2);
/// let est = heuristic_estimate(&inst, EstimateVariant::PAPER_LITERAL).unwrap();
/// assert_eq!(est, BigRational::new((-1).into(), 2.into()));
/// ```
pub fn heuristic_estimate(instance: &Instance, variant: EstimateVariant) -> Result<ExactRational> {
    Ok(EstimateTerms::new(instance)?.evaluate(variant))
}

/// Intercepts and origin distance of one hyperplane `sum c_i x_i = s_nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGeometry {
    pub index: usize,
    pub s: SignedCount,
    /// `s_nu / c_i` for each coefficient, sign preserved.
    pub intercepts: Vec<ExactRational>,
    /// `sum c_i^2`; the signed distance is `s_nu / sqrt(norm_squared)`.
    pub norm_squared: BigUint,
    /// `gcd(c_1, ..., c_{N-1})`.
    pub coefficient_gcd: u64,
}

impl PlaneGeometry {
    pub fn distance(&self) -> f64 {
        let s = self.s.to_f64().unwrap_or(f64::NAN);
        let norm = self.norm_squared.to_f64().unwrap_or(f64::NAN).sqrt();
        s / norm
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryReport {
    pub planes: Vec<PlaneGeometry>,
}

impl GeometryReport {
    pub fn min_intercept(&self) -> Option<&ExactRational> {
        self.planes.iter().flat_map(|p| &p.intercepts).min()
    }

    pub fn max_intercept(&self) -> Option<&ExactRational> {
        self.planes.iter().flat_map(|p| &p.intercepts).max()
    }

    pub fn min_distance(&self) -> Option<f64> {
        self.planes.iter().map(PlaneGeometry::distance).reduce(f64::min)
    }
}

/// Axis intercepts and origin distances of the difference hyperplanes.
pub fn geometry_report(instance: &Instance) -> Result<GeometryReport> {
    let n_weights = instance.weights.len();
    if n_weights < 2 {
        return Err(Error::DegenerateN { n_weights });
    }
    let planes = build_difference_equations(instance)
        .into_iter()
        .map(|eq| {
            let intercepts = eq
                .coeffs
                .iter()
                .map(|&c| ExactRational::new(eq.s.clone(), c.into()))
                .collect();
            let norm_squared = eq.coeffs.iter().map(|&c| BigUint::from(c) * c).sum();
            PlaneGeometry {
                index: eq.index,
                coefficient_gcd: gcd_of(&eq.coeffs).expect("N >= 2"),
                s: eq.s,
                intercepts,
                norm_squared,
            }
        })
        .collect();
    Ok(GeometryReport { planes })
}

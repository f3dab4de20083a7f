//! Exact counting of additive representations.
//!
//! `A(n, theta)` is the number of ways to write `n` as a sum of exactly
//! `theta` elements of a finite strictly increasing set `{a_1, ..., a_N}`,
//! repetitions allowed. This crate computes it three independent ways
//! ([`representation`]) and through an alternating sum of denumerants over
//! the difference set `{a_nu - a_mu}` ([`difference`]), which is always
//! equal. It also provides the leading-order heuristic built from that sum and
//! the Lagrange power-sum identities it resembles ([`lagrange`]).
//!
//! ```
//! use addbasis::{count_representations_dp, count_via_difference_formula, Instance, SequenceKind};
//!
//! // four squares (zeros allowed) summing to 30
//! let weights = SequenceKind::Squares.weights_up_to(30).unwrap();
//! let inst = Instance::new(weights, 30, 4);
//! let exact = count_representations_dp(&inst);
//! assert_eq!(count_via_difference_formula(&inst).unwrap(), exact);
//! ```

pub mod denumerant;
pub mod difference;
pub mod error;
pub mod lagrange;
pub mod model;
pub mod representation;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Exact nonnegative count.
pub type Count = BigUint;
/// Exact signed integer, for partial alternating sums and shifted targets.
pub type SignedCount = BigInt;
/// Exact rational, for estimates and identity checks.
pub type ExactRational = BigRational;

pub use denumerant::{
    coefficient_gcd, denumerant_asymptotic, denumerant_bruteforce, denumerant_dp,
    denumerant_table, DenumerantProblem,
};
pub use difference::{
    build_difference_equations, count_via_difference_formula, formula_term_breakdown,
    geometry_report, heuristic_estimate, DifferenceEquation, DifferenceTables, EstimateTerms,
    EstimateVariant, FormulaTerm, GeometryReport, PlaneGeometry, SignMode, TermFilter,
};
pub use error::{Error, Result};
pub use lagrange::{
    identity_rhs, lagrange_derivative, power_sum, verify_identity, CaseTag, IdentityCheck,
    IdentityReport, PowerSumCase,
};
pub use model::{
    builtin_sequence, cutoff_index, make_weights, parse_sequence_file, Instance, SequenceKind,
    Weights,
};
pub use representation::{
    count_representations_bruteforce, count_representations_dp, generating_series_check,
    RepresentationTable,
};

pub(crate) fn factorial(k: u64) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

//! Per-`n` evaluation shared by `count`, `sweep` and `estimate`.

use addbasis::{
    count_representations_bruteforce, count_representations_dp, formula_term_breakdown,
    generating_series_check, geometry_report, representation::multiset_count, Count,
    DifferenceTables, EstimateTerms, EstimateVariant, ExactRational, FormulaTerm, GeometryReport,
    Instance, RepresentationTable, Weights,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::source::Sequence;
use crate::CliError;

#[derive(Debug, Clone, Default)]
pub struct RowOptions {
    pub breakdown: bool,
    pub estimates: bool,
    pub geometry: bool,
    /// Added to the formula side before the comparison. Only for exercising
    /// the failure path.
    pub perturb: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Oracles {
    pub bruteforce: Option<Count>,
    pub generating_series: Option<Count>,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub instance: Instance,
    pub exact: Count,
    pub formula: Count,
    /// Number of `nu` with `s_nu > 0`.
    pub positive_terms: usize,
    pub terms: Option<Vec<FormulaTerm>>,
    /// All four variants, in [`EstimateVariant::ALL`] order, when requested
    /// and defined.
    pub estimates: Vec<(EstimateVariant, ExactRational)>,
    pub estimate_note: Option<String>,
    pub geometry: Option<GeometryReport>,
    pub oracles: Option<Oracles>,
}

impl Row {
    pub fn n_weights(&self) -> usize {
        self.instance.weights.len()
    }

    pub fn estimate(&self, variant: EstimateVariant) -> Option<&ExactRational> {
        self.estimates.iter().find(|(v, _)| *v == variant).map(|(_, e)| e)
    }

    /// `(estimate - exact) / exact`, `None` when `exact == 0`.
    pub fn relative_error(&self, variant: EstimateVariant) -> Option<f64> {
        let est = self.estimate(variant)?;
        if self.exact.is_zero() {
            return None;
        }
        let exact = ExactRational::from_integer(BigInt::from(self.exact.clone()));
        ((est - &exact) / exact).to_f64()
    }

    pub fn absolute_error(&self, variant: EstimateVariant) -> Option<f64> {
        let est = self.estimate(variant)?;
        let exact = ExactRational::from_integer(BigInt::from(self.exact.clone()));
        (est - exact).abs().to_f64()
    }
}

fn invariant_check(instance: &Instance, exact: &Count, formula: &Count) -> Result<(), CliError> {
    if exact != formula {
        return Err(CliError::Invariant(format!(
            "difference formula gives {formula} but the direct count is {exact} \
             for weights {} n={} theta={}",
            instance.weights, instance.n, instance.theta
        )));
    }
    Ok(())
}

fn positive_terms(terms: &[FormulaTerm]) -> usize {
    terms.iter().filter(|t| t.s.is_positive()).count()
}

fn finish(
    instance: Instance,
    exact: Count,
    terms: Vec<FormulaTerm>,
    opts: &RowOptions,
) -> Result<Row, CliError> {
    let total: BigInt = terms.iter().map(|t| &t.term).sum();
    let formula = total.to_biguint().ok_or_else(|| {
        CliError::Invariant(format!(
            "alternating sum is negative ({total}) for weights {} n={} theta={}",
            instance.weights, instance.n, instance.theta
        ))
    })? + opts.perturb;
    invariant_check(&instance, &exact, &formula)?;

    let mut estimates = Vec::new();
    let mut estimate_note = None;
    if opts.estimates {
        match EstimateTerms::new(&instance) {
            Ok(parts) => {
                estimates = EstimateVariant::ALL
                    .into_iter()
                    .map(|v| (v, parts.evaluate(v)))
                    .collect();
                if instance.weights.len() == 2 {
                    estimate_note = Some("N = 2: exponent 0, the estimate is constant in n".into());
                }
            }
            Err(e) => estimate_note = Some(e.to_string()),
        }
    }
    let geometry = if opts.geometry && instance.weights.len() >= 2 {
        Some(geometry_report(&instance)?)
    } else {
        None
    };
    Ok(Row {
        positive_terms: positive_terms(&terms),
        terms: opts.breakdown.then_some(terms),
        instance,
        exact,
        formula,
        estimates,
        estimate_note,
        geometry,
        oracles: None,
    })
}

/// A single instance through the per-instance entry points.
pub fn single_row(instance: Instance, opts: &RowOptions, budget: Option<u128>) -> Result<Row, CliError> {
    let exact = count_representations_dp(&instance);
    let terms = formula_term_breakdown(&instance);
    let mut row = finish(instance, exact, terms, opts)?;
    if let Some(budget) = budget {
        row.oracles = Some(run_oracles(&row.instance, &row.exact, budget)?);
    }
    Ok(row)
}

fn run_oracles(instance: &Instance, exact: &Count, budget: u128) -> Result<Oracles, CliError> {
    let bruteforce = if multiset_count(instance.weights.len(), instance.theta) <= budget {
        Some(count_representations_bruteforce(instance, budget)?)
    } else {
        None
    };
    let cells = (instance.n as u128 + 1) * (instance.theta as u128 + 1);
    let series_cost = cells.saturating_mul(cells).saturating_mul(instance.weights.len() as u128);
    let generating_series = (series_cost <= budget).then(|| generating_series_check(instance));
    for (name, value) in [("brute force", &bruteforce), ("generating series", &generating_series)] {
        if let Some(v) = value {
            if v != exact {
                return Err(CliError::Invariant(format!(
                    "{name} oracle gives {v} but the DP gives {exact}"
                )));
            }
        }
    }
    Ok(Oracles {
        bruteforce,
        generating_series,
    })
}

/// Evaluates every `n` from one representation table and one set of
/// difference tables built for the largest `n`.
///
/// With `--auto-N` the weights for a given `n` are a prefix of the weights
/// for the largest `n`, and every dropped weight exceeds `n`. Such weights
/// cannot occur in a representation of `n`, so the shared representation
/// table is exact for each prefix; [`DifferenceTables::prefix_breakdown`]
/// handles the formula side.
pub fn sweep_rows(
    seq: &Sequence,
    theta: u64,
    ns: &[u64],
    opts: &RowOptions,
) -> Result<Vec<Row>, CliError> {
    let Some(&max_n) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    let full: Weights = seq.weights_for(max_n)?;
    let table = RepresentationTable::build(&full, max_n, theta);
    let tables = DifferenceTables::new(&full, theta, max_n);
    ns.iter()
        .map(|&n| {
            let len = seq.len_for(n)?;
            debug_assert!(len <= full.len());
            debug_assert!(full.values().get(len).is_none_or(|&a| a > n) || len == full.len());
            let instance = Instance::new(full.prefix(len), n, theta);
            let exact = table.get(n, theta).expect("n within table").clone();
            let terms = tables.prefix_breakdown(n, len);
            finish(instance, exact, terms, opts)
        })
        .collect()
}

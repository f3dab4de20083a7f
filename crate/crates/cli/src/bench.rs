//! Timing grid for the two big-integer dynamic programs.

use std::io::Write;
use std::time::Instant;

use addbasis::{
    count_representations_dp, denumerant_dp, DenumerantProblem, Instance, SequenceKind,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Denumerant,
    Representation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub suite: Suite,
    pub size: u64,
    pub wall_ms: f64,
    pub peak_cells: u64,
    pub count: String,
}

/// `steps` sizes evenly spaced up to `max`, smallest first.
fn grid(max: u64, steps: u64) -> Vec<u64> {
    let steps = steps.clamp(1, max.max(1));
    (1..=steps).map(|k| max * k / steps).collect()
}

pub fn run_denumerant(coeffs: &[u64], max_s: u64, steps: u64) -> Result<Vec<BenchRow>, CliError> {
    grid(max_s, steps)
        .into_iter()
        .map(|s| {
            let problem = DenumerantProblem::new(coeffs.to_vec(), s)?;
            let start = Instant::now();
            let count = denumerant_dp(&problem);
            Ok(BenchRow {
                suite: Suite::Denumerant,
                size: s,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                peak_cells: s + 1,
                count: count.to_string(),
            })
        })
        .collect()
}

/// Squares with zero, `N = N(n)`, as in the four-squares sweep.
pub fn run_representation(max_n: u64, theta: u64, steps: u64) -> Result<Vec<BenchRow>, CliError> {
    grid(max_n, steps)
        .into_iter()
        .map(|n| {
            let weights = SequenceKind::Squares.weights_up_to(n)?;
            let instance = Instance::new(weights, n, theta);
            let start = Instant::now();
            let count = count_representations_dp(&instance);
            Ok(BenchRow {
                suite: Suite::Representation,
                size: n,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
                peak_cells: (n + 1) * (theta + 1),
                count: count.to_string(),
            })
        })
        .collect()
}

pub fn write_csv(out: &mut dyn Write, rows: &[BenchRow]) -> std::io::Result<()> {
    writeln!(out, "suite,size,wall_ms,peak_cells,count")?;
    for r in rows {
        let suite = match r.suite {
            Suite::Denumerant => "denumerant",
            Suite::Representation => "representation",
        };
        writeln!(out, "{suite},{},{:.3},{},{}", r.size, r.wall_ms, r.peak_cells, r.count)?;
    }
    Ok(())
}

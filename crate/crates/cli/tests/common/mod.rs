//! Fixtures shared by the CLI tests and the acceptance run.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use addbasis::{count_representations_dp, Instance, Weights};
use addbasis_cli::output::RowRecord;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn addbasis<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addbasis"))
        .args(args)
        .output()
        .expect("spawn addbasis")
}

pub fn fixture(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn argv(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

/// Invocations paired with their expected exit code.
pub fn exit_code_cases() -> Vec<(Vec<String>, i32)> {
    let cubes = fixture("cubes.txt", "# first cubes\n0\n1\n8\n\n27\n64\n");
    let unsorted = fixture("unsorted.txt", "3\n1\n");
    let cubes = format!("file:{}", cubes.display());
    let unsorted = format!("file:{}", unsorted.display());
    let mut cases: Vec<(Vec<String>, i32)> = [
        ("count --seq list:1,2,3 --n 4 --theta 2", 0),
        ("count --seq squares --auto-N --n 0 --theta 4", 0),
        ("count --seq list:1,2,3 --n 4 --theta 2 --budget 1000000 --format json", 0),
        ("sweep --preset lagrange --n 0..50", 0),
        ("sweep --preset waring:3 --n 0..40 --format csv", 0),
        ("sweep --seq list:2,4 --n 1..3 --theta 1", 0),
        ("estimate --seq list:1,2 --n 3..5 --theta 2", 0),
        ("identities --seq list:1,2,3 --t -3..6", 0),
        ("identities --seq squares --N 4 --t 0..5", 0),
        ("bench --suite denumerant --max-s 1000", 0),
        // rejected input
        ("count --seq list:1,1,2 --n 4 --theta 2", 2),
        ("count --seq list:-1,2 --n 4 --theta 2", 2),
        ("count --seq primes --n 4 --theta 2", 2),
        ("count --seq primes --N 3 --auto-N --n 4 --theta 2", 2),
        ("count --seq list:1,2 --n 4", 2),
        ("count --seq cubes --N 3 --n 4 --theta 2", 2),
        ("count --seq file:/no/such/file --n 4 --theta 2", 2),
        ("sweep --seq list:1,2 --n 5..1 --theta 2", 2),
        ("sweep --seq list:1,2 --n -2..1 --theta 2", 2),
        ("sweep --preset goldbach --n 1..3", 2),
        ("estimate --seq list:1,2 --n 4 --theta 2 --variant nope", 2),
        ("identities --seq squares --N 4 --t -1..5", 2),
        ("identities --seq list:5 --t 0..3", 2),
        ("bench --suite denumerant --coeffs 1,0", 2),
        ("frobnicate", 2),
        // formula disagreeing with the direct count
        ("count --seq list:1,2,3 --n 4 --theta 2 --perturb-formula 1", 3),
        ("sweep --preset lagrange --n 0..10 --perturb-formula 2", 3),
    ]
    .into_iter()
    .map(|(s, code)| (argv(s), code))
    .collect();
    cases.push((argv(&format!("count --seq {cubes} --n 30 --theta 3 --breakdown")), 0));
    cases.push((argv(&format!("count --seq {unsorted} --n 4 --theta 2")), 2));
    cases
}

/// Runs one case; `Err` describes the mismatch.
pub fn check_exit_code(args: &[String], expected: i32) -> Result<(), String> {
    let out = addbasis(args);
    let code = out.status.code();
    if code != Some(expected) {
        return Err(format!(
            "{args:?}: exit {code:?}, expected {expected}; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    if expected != 0 && out.stderr.is_empty() {
        return Err(format!("{args:?} failed without a message"));
    }
    Ok(())
}

pub fn random_sweep_args(rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut args: Vec<String> = vec!["addbasis".into(), "sweep".into()];
    match rng.gen_range(0..4) {
        0 => {
            let n_weights = rng.gen_range(1..=6);
            let mut vals: Vec<u64> = (0..n_weights).map(|_| rng.gen_range(0..30)).collect();
            vals.sort_unstable();
            vals.dedup();
            let list: Vec<String> = vals.iter().map(u64::to_string).collect();
            args.extend(["--seq".into(), format!("list:{}", list.join(","))]);
        }
        1 => args.extend(["--seq".into(), "squares".into(), "--auto-N".into()]),
        2 => args.extend(["--seq".into(), "primes".into(), "--N".into(), rng.gen_range(1..=6).to_string()]),
        _ => args.extend(["--seq".into(), format!("powers:{}", rng.gen_range(1..=3)), "--auto-N".into()]),
    }
    args.extend(["--theta".into(), rng.gen_range(0..=5).to_string()]);
    let start = rng.gen_range(0..60);
    let end = start + rng.gen_range(0..40);
    args.extend(["--n".into(), format!("{start}..{end}:{}", rng.gen_range(1..=4))]);
    for flag in ["--breakdown", "--estimates", "--geometry"] {
        if rng.gen_bool(0.4) {
            args.push(flag.into());
        }
    }
    args.extend(["--format".into(), "json".into()]);
    args
}

/// Runs a JSON sweep in-process, parses it, re-serializes it and checks
/// the result is unchanged and every row agrees with a direct count.
/// Returns the number of rows.
pub fn check_round_trip(args: &[String]) -> Result<usize, String> {
    let mut out = Vec::new();
    let code = addbasis_cli::main_with_args(args, &mut out, &mut std::io::sink());
    if code != 0 {
        return Err(format!("{args:?}: exit {code}"));
    }
    let rows: Vec<RowRecord> = serde_json::from_slice(&out).map_err(|e| format!("{args:?}: {e}"))?;
    let again = serde_json::to_vec_pretty(&rows).unwrap();
    let reparsed: Vec<RowRecord> = serde_json::from_slice(&again).unwrap();
    let value = |b: &[u8]| serde_json::from_slice::<serde_json::Value>(b).unwrap();
    if rows != reparsed || value(&out) != value(&again) {
        return Err(format!("{args:?}: JSON changed on round trip"));
    }
    for r in &rows {
        let weights = Weights::from_unsigned(r.instance.weights.clone()).unwrap();
        let direct = count_representations_dp(&Instance::new(weights, r.instance.n, r.instance.theta));
        if r.exact != r.formula || r.exact != direct.to_string() || r.n_weights != r.instance.weights.len() {
            return Err(format!("{args:?}: bad row {r:?}"));
        }
        if r.terms.as_ref().is_some_and(|t| t.len() != r.n_weights) {
            return Err(format!("{args:?}: breakdown length"));
        }
    }
    Ok(rows.len())
}

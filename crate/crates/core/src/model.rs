//! Validated weight sequences, problem instances and the builtin sequence
//! generators (squares, k-th powers, primes, explicit lists).

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;

use crate::error::{Error, Result};

/// A finite, strictly increasing sequence of nonnegative integers
/// `a_1 < a_2 < ... < a_N`, `N >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    values: Vec<u64>,
}

impl Weights {
    /// Validates a raw integer list.
    ///
    /// ```
    /// use addbasis::{Error, Weights};
    ///
    /// assert_eq!(Weights::new(&[0, 1, 4, 9]).unwrap().len(), 4);
    /// assert!(matches!(Weights::new(&[1, 1, 2]), Err(Error::NotStrictlyIncreasing { .. })));
    /// assert!(matches!(Weights::new(&[-1, 2]), Err(Error::NegativeWeight { .. })));
    /// ```
    pub fn new(values: &[i64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyWeights);
        }
        for (index, &value) in values.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeWeight { index, value });
            }
            if index > 0 && value <= values[index - 1] {
                return Err(Error::NotStrictlyIncreasing {
                    index,
                    previous: values[index - 1],
                    value,
                });
            }
        }
        Ok(Weights {
            values: values.iter().map(|&v| v as u64).collect(),
        })
    }

    /// Same validation as [`Weights::new`] for values that are already unsigned.
    pub fn from_unsigned(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(index) = (1..values.len()).find(|&i| values[i] <= values[i - 1]) {
            return Err(Error::NotStrictlyIncreasing {
                index,
                previous: clamp_i64(values[index - 1]),
                value: clamp_i64(values[index]),
            });
        }
        Ok(Weights { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `N`, the number of weights. Never zero.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> u64 {
        self.values[0]
    }

    pub fn max(&self) -> u64 {
        self.values[self.values.len() - 1]
    }

    /// The first `len` weights (clamped to `1..=N`).
    pub fn prefix(&self, len: usize) -> Weights {
        let len = len.clamp(1, self.values.len());
        Weights {
            values: self.values[..len].to_vec(),
        }
    }

    /// `a_nu` with the 1-based index used throughout the crate.
    pub fn get(&self, nu: usize) -> Option<u64> {
        nu.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

fn clamp_i64(v: u64) -> i64 {
    i64::try_from(v).unwrap_or(i64::MAX)
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// `make_weights`: the validation gate for raw sequences.
pub fn make_weights(values: &[i64]) -> Result<Weights> {
    Weights::new(values)
}

/// One instance of the two-constraint system
/// `sum a_nu x_nu = n`, `sum x_nu = theta`, `x_nu >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub weights: Weights,
    pub n: u64,
    pub theta: u64,
}

impl Instance {
    pub fn new(weights: Weights, n: u64, theta: u64) -> Self {
        Instance { weights, n, theta }
    }
}

/// Source of a weight sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceKind {
    /// `(nu - 1)^2`: 0, 1, 4, 9, ...
    Squares,
    /// `(nu - 1)^k`, `k >= 1`.
    Powers(u32),
    /// 2, 3, 5, 7, ...
    Primes,
    /// An explicit finite list, validated like any other input.
    FromList(Vec<i64>),
}

impl SequenceKind {
    /// Number of terms available, `None` for infinite sequences.
    pub fn available(&self) -> Option<usize> {
        match self {
            SequenceKind::FromList(values) => Some(values.len()),
            _ => None,
        }
    }

    /// The first `cutoff_index(self, n)` terms.
    pub fn weights_up_to(&self, n: u64) -> Result<Weights> {
        builtin_sequence(self, cutoff_index(self, n)?)
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceKind::Squares => write!(f, "squares"),
            SequenceKind::Powers(k) => write!(f, "powers:{k}"),
            SequenceKind::Primes => write!(f, "primes"),
            SequenceKind::FromList(values) => {
                write!(f, "list:")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    /// Parses `squares`, `powers:k`, `primes` or `list:c1,c2,...`.
    /// File sources are resolved by the caller via [`parse_sequence_file`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "squares" {
            return Ok(SequenceKind::Squares);
        }
        if s == "primes" {
            return Ok(SequenceKind::Primes);
        }
        if let Some(k) = s.strip_prefix("powers:") {
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSequence(format!("bad exponent in {s:?}")))?;
            if k == 0 {
                return Err(Error::InvalidSequence("powers:k needs k >= 1".into()));
            }
            return Ok(SequenceKind::Powers(k));
        }
        if let Some(list) = s.strip_prefix("list:") {
            let values = list
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidSequence(format!("bad list entry {v:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(SequenceKind::FromList(values));
        }
        Err(Error::InvalidSequence(format!("unknown sequence {s:?}")))
    }
}

/// Generates the first `len` terms of a builtin sequence.
///
/// ```
/// use addbasis::{builtin_sequence, SequenceKind};
///
/// assert_eq!(builtin_sequence(&SequenceKind::Squares, 4).unwrap().values(), &[0, 1, 4, 9]);
/// assert_eq!(builtin_sequence(&SequenceKind::Primes, 4).unwrap().values(), &[2, 3, 5, 7]);
/// assert_eq!(builtin_sequence(&SequenceKind::Powers(3), 3).unwrap().values(), &[0, 1, 8]);
/// ```
pub fn builtin_sequence(kind: &SequenceKind, len: usize) -> Result<Weights> {
    if len == 0 {
        return Err(Error::EmptyWeights);
    }
    match kind {
        SequenceKind::Squares => powers(2, len),
        SequenceKind::Powers(k) => {
            if *k == 0 {
                return Err(Error::InvalidSequence("powers:k needs k >= 1".into()));
            }
            powers(*k, len)
        }
        SequenceKind::Primes => Weights::from_unsigned(first_primes(len)),
        SequenceKind::FromList(values) => {
            if values.len() < len {
                return Err(Error::InvalidSequence(format!(
                    "list has {} entries, {len} requested",
                    values.len()
                )));
            }
            Weights::new(&values[..len])
        }
    }
}

fn powers(k: u32, len: usize) -> Result<Weights> {
    let values = (0..len as u64)
        .map(|b| {
            b.checked_pow(k)
                .ok_or_else(|| Error::InvalidSequence(format!("{b}^{k} overflows u64")))
        })
        .collect::<Result<Vec<_>>>()?;
    Weights::from_unsigned(values)
}

/// `N(n)`: the largest `N` with `a_N <= n`, but at least 1.
///
/// For the squares this is `isqrt(n) + 1`, since the sequence starts at 0.
pub fn cutoff_index(kind: &SequenceKind, n: u64) -> Result<usize> {
    let count = match kind {
        SequenceKind::Squares => n.sqrt() as usize + 1,
        SequenceKind::Powers(k) => {
            if *k == 0 {
                return Err(Error::InvalidSequence("powers:k needs k >= 1".into()));
            }
            n.nth_root(*k) as usize + 1
        }
        SequenceKind::Primes => prime_count(n),
        SequenceKind::FromList(values) => {
            let weights = Weights::new(values)?;
            weights.values().partition_point(|&v| v <= n)
        }
    };
    Ok(count.max(1))
}

/// Parses the plain-text sequence format: one integer per line, blank lines
/// and lines starting with `#` ignored. The result is validated.
pub fn parse_sequence_file(text: &str) -> Result<Weights> {
    let values = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(i, line)| {
            line.parse::<i64>().map_err(|_| {
                Error::InvalidSequence(format!("line {}: not an integer: {line:?}", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Weights::new(&values)
}

/// Sieve of Eratosthenes over `0..=limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

fn prime_count(n: u64) -> usize {
    primes_up_to(n).len()
}

/// The first `count` primes, growing the sieve until enough are found.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut limit = 16u64;
    if count >= 6 {
        // p_k < k (ln k + ln ln k) for k >= 6
        let k = count as f64;
        limit = (k * (k.ln() + k.ln().ln())).ceil() as u64 + 1;
    }
    loop {
        let mut primes = primes_up_to(limit);
        if primes.len() >= count {
            primes.truncate(count);
            return primes;
        }
        limit *= 2;
    }
}

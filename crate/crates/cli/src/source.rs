//! Resolving `--seq` / `--preset` / `--N` / `--auto-N` into weights per `n`,
//! and parsing inclusive ranges like `0..100` or `1000..10000:1000`.

use std::str::FromStr;

use addbasis::{cutoff_index, parse_sequence_file, SequenceKind, Weights};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Builtin(SequenceKind),
    /// An explicit finite list, from `list:` or `file:`.
    Finite(Weights),
}

impl Source {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            return Ok(Source::Finite(parse_sequence_file(&text)?));
        }
        match spec.parse::<SequenceKind>()? {
            SequenceKind::FromList(values) => Ok(Source::Finite(Weights::new(&values)?)),
            kind => Ok(Source::Builtin(kind)),
        }
    }

    fn kind(&self) -> SequenceKind {
        match self {
            Source::Builtin(kind) => kind.clone(),
            Source::Finite(w) => {
                SequenceKind::FromList(w.values().iter().map(|&v| v as i64).collect())
            }
        }
    }

    pub fn label(&self) -> String {
        self.kind().to_string()
    }
}

/// How many terms of the source to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Fixed(usize),
    /// `N(n)`: every term not exceeding `n`.
    Auto,
    /// The whole finite list.
    Whole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub source: Source,
    pub length: Length,
}

impl Sequence {
    pub fn new(source: Source, fixed: Option<usize>, auto: bool) -> Result<Self, CliError> {
        let length = match (fixed, auto) {
            (Some(_), true) => {
                return Err(CliError::Usage("--N and --auto-N are mutually exclusive".into()))
            }
            (Some(0), false) => return Err(CliError::Usage("--N must be at least 1".into())),
            (Some(k), false) => Length::Fixed(k),
            (None, true) => Length::Auto,
            (None, false) => match source {
                Source::Finite(_) => Length::Whole,
                Source::Builtin(_) => {
                    return Err(CliError::Usage(
                        "infinite sequences need --N <k> or --auto-N".into(),
                    ))
                }
            },
        };
        if let (Source::Finite(w), Length::Fixed(k)) = (&source, length) {
            if k > w.len() {
                return Err(CliError::Usage(format!(
                    "--N {k} exceeds the {} listed weights",
                    w.len()
                )));
            }
        }
        Ok(Sequence { source, length })
    }

    /// Number of weights used for target `n`.
    pub fn len_for(&self, n: u64) -> Result<usize, CliError> {
        Ok(match (&self.length, &self.source) {
            (Length::Fixed(k), _) => *k,
            (Length::Whole, Source::Finite(w)) => w.len(),
            (Length::Whole, Source::Builtin(_)) => unreachable!("rejected in Sequence::new"),
            (Length::Auto, source) => cutoff_index(&source.kind(), n)?,
        })
    }

    /// The first `len` weights.
    pub fn weights(&self, len: usize) -> Result<Weights, CliError> {
        Ok(match &self.source {
            Source::Builtin(kind) => addbasis::builtin_sequence(kind, len)?,
            Source::Finite(w) => w.prefix(len),
        })
    }

    pub fn weights_for(&self, n: u64) -> Result<Weights, CliError> {
        self.weights(self.len_for(n)?)
    }
}

/// Named sweeps over classical additive problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Squares (with 0), four parts.
    Lagrange,
    /// Primes, two parts, even `n >= 4` only.
    Goldbach,
    /// `k`-th powers (with 0), `g(k)` parts by default.
    Waring(u32),
}

impl Preset {
    pub fn kind(&self) -> SequenceKind {
        match self {
            Preset::Lagrange => SequenceKind::Squares,
            Preset::Goldbach => SequenceKind::Primes,
            Preset::Waring(k) => SequenceKind::Powers(*k),
        }
    }

    pub fn default_theta(&self) -> u64 {
        match self {
            Preset::Lagrange => 4,
            Preset::Goldbach => 2,
            Preset::Waring(k) => waring_g(*k),
        }
    }

    pub fn keeps(&self, n: u64) -> bool {
        match self {
            Preset::Goldbach => n >= 4 && n.is_multiple_of(2),
            _ => true,
        }
    }
}

/// `g(k) = 2^k + floor((3/2)^k) - 2`.
fn waring_g(k: u32) -> u64 {
    let pow3 = 3u128.pow(k);
    let pow2 = 2u128.pow(k);
    (pow2 + pow3 / pow2 - 2) as u64
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "lagrange" => Ok(Preset::Lagrange),
            "goldbach" => Ok(Preset::Goldbach),
            _ => {
                let k = s
                    .strip_prefix("waring:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .filter(|&k| (1..=20).contains(&k))
                    .ok_or_else(|| CliError::Usage(format!("unknown preset {s:?}")))?;
                Ok(Preset::Waring(k))
            }
        }
    }
}

/// Inclusive integer range with an optional step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeSpec {
    pub start: i64,
    pub end: i64,
    pub step: u64,
}

impl RangeSpec {
    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        (self.start..=self.end).step_by(self.step as usize)
    }

    pub fn is_single(&self) -> bool {
        self.start == self.end
    }

    pub fn nonnegative(&self, flag: &str) -> Result<Vec<u64>, CliError> {
        if self.start < 0 {
            return Err(CliError::Usage(format!("{flag} must be nonnegative")));
        }
        Ok(self.values().map(|v| v as u64).collect())
    }
}

impl FromStr for RangeSpec {
    type Err = CliError;

    /// `a`, `a..b` or `a..b:step`, all bounds inclusive.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("bad range {s:?}; expected a, a..b or a..b:step"));
        let (body, step) = match s.split_once(':') {
            Some((body, step)) => (body, step.trim().parse::<u64>().map_err(|_| bad())?),
            None => (s, 1),
        };
        if step == 0 {
            return Err(bad());
        }
        let (start, end) = match body.split_once("..") {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => {
                let v = body.trim().parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if start > end {
            return Err(CliError::Usage(format!("empty range {s:?}")));
        }
        Ok(RangeSpec { start, end, step })
    }
}

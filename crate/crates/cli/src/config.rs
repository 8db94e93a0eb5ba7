//! Run configuration shared by the subcommands.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Numeric,
    Symbolic,
    Both,
}

impl Mode {
    pub fn numeric(self) -> bool {
        self != Mode::Symbolic
    }

    pub fn symbolic(self) -> bool {
        self != Mode::Numeric
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum WeightChoice {
    /// The weights under which each identity is stated.
    Canonical,
    /// Fresh weights per seed, drawn inside the family the identity is stated for.
    RandomConstrained,
    /// `--alpha` .. `--delta`; unspecified components keep their canonical value.
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "path", rename_all = "kebab-case")]
pub enum ConventionSource {
    Canonical,
    AutoSearch,
    File(String),
}

impl FromStr for ConventionSource {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        Ok(match s {
            "canonical" => ConventionSource::Canonical,
            "auto-search" => ConventionSource::AutoSearch,
            "" => return Err(UsageError("empty --convention".into())),
            path => ConventionSource::File(path.to_string()),
        })
    }
}

/// Explicit weights as given on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExplicitWeights {
    pub alpha: Option<Complex64>,
    pub beta: Option<Complex64>,
    pub gamma: Option<Complex64>,
    pub delta: Option<Complex64>,
}

impl ExplicitWeights {
    pub fn any(&self) -> bool {
        self.alpha.is_some() || self.beta.is_some() || self.gamma.is_some() || self.delta.is_some()
    }

    /// Fills missing components from `base`.
    pub fn over(&self, base: [Complex64; 4]) -> [Complex64; 4] {
        [
            self.alpha.unwrap_or(base[0]),
            self.beta.unwrap_or(base[1]),
            self.gamma.unwrap_or(base[2]),
            self.delta.unwrap_or(base[3]),
        ]
    }
}

impl Serialize for ExplicitWeights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        for (k, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma), ("delta", self.delta)] {
            if let Some(z) = v {
                m.serialize_entry(k, &[z.re, z.im])?;
            }
        }
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub dim: usize,
    pub seeds: Vec<u64>,
    pub tolerance_rel: f64,
    pub weights: WeightChoice,
    pub explicit: ExplicitWeights,
    pub mode: Mode,
    pub convention: ConventionSource,
    #[serde(skip)]
    pub json: bool,
    #[serde(skip)]
    pub timings: bool,
}

pub const DEFAULT_SEEDS: &str = "1..20";

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dim: 3,
            seeds: parse_seeds(DEFAULT_SEEDS).expect("valid"),
            tolerance_rel: 1e-10,
            weights: WeightChoice::Canonical,
            explicit: ExplicitWeights::default(),
            mode: Mode::Both,
            convention: ConventionSource::Canonical,
            json: false,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.dim == 0 {
            return Err(UsageError("--dim must be at least 1".into()));
        }
        if !(self.tolerance_rel > 0.0 && self.tolerance_rel.is_finite()) {
            return Err(UsageError("--tol must be a positive number".into()));
        }
        if self.seeds.is_empty() {
            return Err(UsageError("no seeds given".into()));
        }
        if self.weights == WeightChoice::Explicit && !self.explicit.any() {
            return Err(UsageError("--weights explicit needs at least one of --alpha/--beta/--gamma/--delta".into()));
        }
        if self.weights != WeightChoice::Explicit && self.explicit.any() {
            return Err(UsageError("--alpha/--beta/--gamma/--delta need --weights explicit (or no --weights)".into()));
        }
        Ok(())
    }
}

/// `"7"`, `"1,2,5"`, `"1..100"` (inclusive) or mixtures like `"1..3,10"`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>, UsageError> {
    let bad = |part: &str| UsageError(format!("bad seed list item {part:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad(part))?, b.trim().parse().map_err(|_| bad(part))?);
            if a > b {
                return Err(bad(part));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    Ok(out)
}

/// `"-1"`, `"0.5+2i"`, `"i"`, `"-2.5e-3i"`.
pub fn parse_complex(s: &str) -> Result<Complex64, UsageError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    Complex64::from_str(&t).map_err(|_| UsageError(format!("bad complex literal {s:?}")))
}

//! Coupling parameters of the extended Ising chain, the named preset table,
//! and the five single-term limiting Hamiltonians.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::edoracle::{Pauli, PauliString};
use crate::error::{Error, Result};

/// The five real couplings defining one Hamiltonian instance:
/// nearest-neighbor XY strength `a` with anisotropy `gamma`, three-site
/// strength `b` with anisotropy `delta`, and transverse field `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub delta: f64,
    pub g: f64,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, gamma: f64, delta: f64, g: f64) -> Self {
        Self { a, b, gamma, delta, g }
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite()
            && self.b.is_finite()
            && self.gamma.is_finite()
            && self.delta.is_finite()
            && self.g.is_finite()
    }

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::A => self.a,
            ParamName::B => self.b,
            ParamName::Gamma => self.gamma,
            ParamName::Delta => self.delta,
            ParamName::G => self.g,
        }
    }

    pub fn set(&mut self, name: ParamName, value: f64) {
        match name {
            ParamName::A => self.a = value,
            ParamName::B => self.b = value,
            ParamName::Gamma => self.gamma = value,
            ParamName::Delta => self.delta = value,
            ParamName::G => self.g = value,
        }
    }

    /// Same point with `name` replaced by `value`.
    pub fn with(&self, name: ParamName, value: f64) -> Self {
        let mut p = *self;
        p.set(name, value);
        p
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a={}, b={}, gamma={}, delta={}, g={})",
            self.a, self.b, self.gamma, self.delta, self.g
        )
    }
}

/// Names of the sweepable couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    A,
    B,
    Gamma,
    Delta,
    G,
}

impl ParamName {
    pub const ALL: [ParamName; 5] = [
        ParamName::A,
        ParamName::B,
        ParamName::Gamma,
        ParamName::Delta,
        ParamName::G,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::A => "a",
            ParamName::B => "b",
            ParamName::Gamma => "gamma",
            ParamName::Delta => "delta",
            ParamName::G => "g",
        }
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(ParamName::A),
            "b" => Ok(ParamName::B),
            "gamma" => Ok(ParamName::Gamma),
            "delta" => Ok(ParamName::Delta),
            "g" => Ok(ParamName::G),
            other => Err(Error::InvalidSweep(format!(
                "unknown parameter `{other}` (expected one of a, b, gamma, delta, g)"
            ))),
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named parameter point. `expected_winding`, when present, is a pinned
/// value the winding computation must reproduce.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    #[serde(flatten)]
    pub params: ModelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_winding: Option<i64>,
    pub family_label: String,
}

/// The shipped preset table, embedded verbatim.
pub const PRESETS_JSON: &str = include_str!("../presets.json");

static PRESETS: OnceLock<Vec<Preset>> = OnceLock::new();

/// All shipped presets, in table order.
pub fn presets() -> &'static [Preset] {
    PRESETS.get_or_init(|| {
        serde_json::from_str(PRESETS_JSON).expect("embedded preset table must parse")
    })
}

/// Look up a preset by name.
pub fn preset_lookup(name: &str) -> Result<&'static Preset> {
    presets().iter().find(|p| p.name == name).ok_or_else(|| Error::UnknownPreset {
        name: name.to_string(),
        available: presets().iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", "),
    })
}

/// One of the five single-term Hamiltonians h_lambda, normalized by 1/N.
///
/// lambda = 0 is the pure transverse field, +/-1 the two-site XX / YY
/// chains, +/-2 the three-site XZX / YZY cluster chains.
#[derive(Debug, Clone)]
pub struct LimitCase {
    pub lambda: i32,
    pub terms: Vec<PauliString>,
}

/// Build the term list of h_lambda on a periodic chain of `n` sites.
pub fn limit_case(lambda: i32, n: usize) -> Result<LimitCase> {
    if !(-2..=2).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidChainLength { n, min: 4 });
    }
    let coeff = 1.0 / n as f64;
    let mut terms = Vec::with_capacity(n);
    for j in 1..=n {
        let next = j % n + 1;
        let prev = (j + n - 2) % n + 1;
        let mut letters = vec![Pauli::I; n];
        match lambda {
            0 => letters[j - 1] = Pauli::Z,
            1 => {
                letters[j - 1] = Pauli::X;
                letters[next - 1] = Pauli::X;
            }
            -1 => {
                letters[j - 1] = Pauli::Y;
                letters[next - 1] = Pauli::Y;
            }
            2 => {
                letters[prev - 1] = Pauli::X;
                letters[j - 1] = Pauli::Z;
                letters[next - 1] = Pauli::X;
            }
            -2 => {
                letters[prev - 1] = Pauli::Y;
                letters[j - 1] = Pauli::Z;
                letters[next - 1] = Pauli::Y;
            }
            _ => unreachable!(),
        }
        terms.push(PauliString { coefficient: coeff, letters });
    }
    Ok(LimitCase { lambda, terms })
}

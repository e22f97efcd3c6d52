//! Run configuration: a JSON file of the form
//!
//! ```json
//! {"tolerances": {"phase": 1e-8}, "seed": 7, "output_path": "out.json"}
//! ```
//!
//! All keys are optional; unknown keys and unknown tolerance names are
//! rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Thresholds used by the verification suites.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Schouten antisymmetry, Leibniz and Jacobi residuals.
    pub schouten_axioms: f64,
    /// Largest coefficient of a multivector asserted to vanish.
    pub multivector_zero: f64,
    /// Smallest max coefficient of `[Λ, Λ]` asserted to be nonzero.
    pub lambda_nonzero: f64,
    /// Relative error of the radial profile and of the ratio law.
    pub profile: f64,
    /// Spread of normalised field coefficients across directions.
    pub direction_spread: f64,
    /// Field coefficient at the identity coset.
    pub north_pole: f64,
    /// Finite-difference Lie-derivative residual.
    pub lie_derivative: f64,
    /// Phase deviation along dressing orbits.
    pub phase: f64,
    /// Distance of dressed points of `P_(12)` from `k_v`.
    pub reconstruction: f64,
    /// Multiplicativity residual of the trivialised field.
    pub multiplicativity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            schouten_axioms: 1e-10,
            multivector_zero: 1e-12,
            lambda_nonzero: 1e-3,
            profile: 1e-6,
            direction_spread: 1e-9,
            north_pole: 1e-10,
            lie_derivative: 1e-3,
            phase: 1e-8,
            reconstruction: 1e-9,
            multiplicativity: 1e-10,
        }
    }
}

impl Tolerances {
    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "schouten_axioms" => &mut self.schouten_axioms,
            "multivector_zero" => &mut self.multivector_zero,
            "lambda_nonzero" => &mut self.lambda_nonzero,
            "profile" => &mut self.profile,
            "direction_spread" => &mut self.direction_spread,
            "north_pole" => &mut self.north_pole,
            "lie_derivative" => &mut self.lie_derivative,
            "phase" => &mut self.phase,
            "reconstruction" => &mut self.reconstruction,
            "multiplicativity" => &mut self.multiplicativity,
            _ => return None,
        })
    }

    pub fn with_overrides(overrides: &BTreeMap<String, f64>) -> Result<Self> {
        let mut t = Self::default();
        for (name, &value) in overrides {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::format(format!("tolerance {name} must be positive, got {value}")));
            }
            *t.slot(name).ok_or_else(|| Error::format(format!("unknown tolerance {name:?}")))? = value;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub output_path: Option<String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let config: Config = serde_json::from_str(text)?;
        Tolerances::with_overrides(&config.tolerances)?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path.display(), e))?;
        Self::parse(&text)
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances::with_overrides(&self.tolerances).expect("validated on load")
    }
}

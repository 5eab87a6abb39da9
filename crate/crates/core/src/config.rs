//! Run configuration shared by the command line and the verification suite.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::DEFAULT_RHO_BUDGET;
use crate::pcf::DEFAULT_DEGREE_CAP;
use crate::rays::{DEFAULT_FLOOR, DEFAULT_STEPS, DEFAULT_TOL, PARABOLIC_PAIR_TOL};

pub const DEFAULT_PRECISION_BITS: u32 = 48;
pub const MAX_PRECISION_BITS: u32 = 52;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{name} must be positive and finite, got {value}")]
    Tolerance { name: &'static str, value: f64 },
    #[error("precision must be between 1 and {MAX_PRECISION_BITS} bits, got {0}")]
    Precision(u32),
    #[error("{0} must be positive")]
    Cap(&'static str),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Target relative precision `2^-bits` for floating evaluations.
    pub precision_bits: u32,
    /// Maximum distance between landing estimates, and from a landing
    /// estimate to its predicted point.
    pub landing_tol: f64,
    /// Convergence threshold for ray landing extrapolation.
    pub extrapolation_tol: f64,
    /// Bound on root and fixed-point residuals.
    pub residual_tol: f64,
    pub max_iter: usize,
    pub ray_floor: f64,
    pub ray_steps: u32,
    pub degree_cap: u64,
    pub factor_budget: u64,
    pub seed: u64,
    pub outputs: Vec<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: DEFAULT_PRECISION_BITS,
            landing_tol: PARABOLIC_PAIR_TOL,
            extrapolation_tol: DEFAULT_TOL,
            residual_tol: 1e-10,
            max_iter: 1000,
            ray_floor: DEFAULT_FLOOR,
            ray_steps: DEFAULT_STEPS,
            degree_cap: DEFAULT_DEGREE_CAP,
            factor_budget: DEFAULT_RHO_BUDGET,
            seed: 0,
            outputs: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.precision_bits == 0 || self.precision_bits > MAX_PRECISION_BITS {
            return Err(ConfigError::Precision(self.precision_bits));
        }
        for (name, value) in [
            ("landing_tol", self.landing_tol),
            ("extrapolation_tol", self.extrapolation_tol),
            ("residual_tol", self.residual_tol),
            ("ray_floor", self.ray_floor),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(ConfigError::Tolerance { name, value });
            }
        }
        for (name, v) in [
            ("max_iter", self.max_iter as u64),
            ("ray_steps", self.ray_steps as u64),
            ("degree_cap", self.degree_cap),
            ("factor_budget", self.factor_budget),
        ] {
            if v == 0 {
                return Err(ConfigError::Cap(name));
            }
        }
        Ok(())
    }

    pub fn precision(&self) -> f64 {
        (-(self.precision_bits as f64)).exp2()
    }
}

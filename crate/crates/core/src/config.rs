//! Central tolerance record. Every numerical contract in the crate reads its
//! thresholds from here so the CLI can override them by name.

use alloc::format;

// std-linked builds provide these methods inherently
use crate::error::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Absolute threshold for trimming leading polynomial coefficients.
    pub trim: f64,
    /// Relative residual allowed when solving interpolation systems.
    pub solve: f64,
    /// Largest condition estimate accepted for floating-point interpolation.
    pub cond_limit: f64,
    /// Relative distance under which eigenvalues are merged; also the
    /// singular-value threshold (times the matrix norm) for rank decisions.
    pub cluster: f64,
    /// Chain residual allowed after decomposition, relative to the matrix norm.
    pub chain: f64,
    /// Relative size of h(lambda) below which a filter counts as non-invertible.
    pub invert: f64,
    /// Relative singular-value cutoff for numeric ranks and least squares.
    pub rank: f64,
    /// Minimum separation between substitute eigenvalues.
    pub lambda_sep: f64,
    /// Largest eigenvector condition number the numeric backend accepts.
    pub v_cond_limit: f64,
    /// Node count from which adjacency is stored sparsely.
    pub dense_threshold: usize,
    /// Largest graph the numeric decomposition accepts.
    pub numeric_limit: usize,
    /// Largest graph the exact decomposition accepts.
    pub exact_limit: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            trim: 1e-12,
            solve: 1e-9,
            cond_limit: 1e14,
            cluster: 1e-8,
            chain: 1e-8,
            invert: 1e-10,
            rank: 1e-10,
            lambda_sep: 1e-8,
            v_cond_limit: 1e12,
            dense_threshold: 2048,
            numeric_limit: 4096,
            exact_limit: 64,
        }
    }
}

impl Tolerances {
    /// Sets a tolerance by name (`trim`, `solve`, `cond_limit`, ...).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance {name} must be finite and >= 0")));
        }
        let as_count = || -> Result<usize> {
            if value.fract() != 0.0 || value < 1.0 {
                Err(Error::InvalidParameter(format!("{name} must be a positive integer")))
            } else {
                Ok(value as usize)
            }
        };
        match name {
            "trim" => self.trim = value,
            "solve" => self.solve = value,
            "cond_limit" => self.cond_limit = value,
            "cluster" => self.cluster = value,
            "chain" => self.chain = value,
            "invert" => self.invert = value,
            "rank" => self.rank = value,
            "lambda_sep" => self.lambda_sep = value,
            "v_cond_limit" => self.v_cond_limit = value,
            "dense_threshold" => self.dense_threshold = as_count()?,
            "numeric_limit" => self.numeric_limit = as_count()?,
            "exact_limit" => self.exact_limit = as_count()?,
            _ => return Err(Error::InvalidParameter(format!("unknown tolerance `{name}`"))),
        }
        Ok(())
    }
}

//! Cutoffs for the exhaustive procedures.
//!
//! Defaults can be overridden through the `CITSOLVE_CUTOFF` environment
//! variable, either as a bare number (applies to `enumerate`) or as a
//! comma-separated list of `key=value` pairs:
//!
//! ```text
//! CITSOLVE_CUTOFF=enumerate=22,ultimate=4194304,ci2=18,ci4=10
//! ```

use crate::error::{Error, Result};

pub const CUTOFF_ENV: &str = "CITSOLVE_CUTOFF";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum universe size for exhaustive model enumeration, reduct
    /// checks, stratifiability and entailment checks.
    pub enumerate_atoms: usize,
    /// Maximum interval cardinality the ultimate operator may enumerate.
    pub ultimate_interval: u128,
    /// Maximum scope size for two-valued semantic independence checks.
    pub ci_two_valued_atoms: usize,
    /// Maximum scope size for four-valued semantic independence checks.
    pub ci_four_valued_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumerate_atoms: 20,
            ultimate_interval: 1 << 20,
            ci_two_valued_atoms: 16,
            ci_four_valued_atoms: 10,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Self> {
        match std::env::var(CUTOFF_ENV) {
            Ok(overrides) => Limits::default().with_overrides(&overrides),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn with_overrides(mut self, overrides: &str) -> Result<Self> {
        let overrides = overrides.trim();
        if overrides.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = overrides.parse::<usize>() {
            self.enumerate_atoms = n;
            return Ok(self);
        }
        for item in overrides.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::usage(format!("{CUTOFF_ENV}: expected key=value, got `{item}`"))
            })?;
            let value: u128 = value.trim().parse().map_err(|_| {
                Error::usage(format!("{CUTOFF_ENV}: `{value}` is not a number"))
            })?;
            let as_atoms = || usize::try_from(value).unwrap_or(usize::MAX);
            match key.trim() {
                "enumerate" => self.enumerate_atoms = as_atoms(),
                "ultimate" => self.ultimate_interval = value,
                "ci2" => self.ci_two_valued_atoms = as_atoms(),
                "ci4" => self.ci_four_valued_atoms = as_atoms(),
                other => {
                    return Err(Error::usage(format!(
                        "{CUTOFF_ENV}: unknown key `{other}` (expected enumerate, ultimate, ci2, ci4)"
                    )))
                }
            }
        }
        Ok(self)
    }

    pub(crate) fn check_atoms(
        what: &str,
        atoms: usize,
        limit: usize,
        key: &'static str,
    ) -> Result<()> {
        if atoms > limit {
            Err(Error::Resource {
                what: format!("{what} over {atoms} atoms"),
                needed: atoms as u128,
                limit: limit as u128,
                key,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_enumerate(&self, what: &str, atoms: usize) -> Result<()> {
        Self::check_atoms(what, atoms, self.enumerate_atoms, "enumerate")
    }
}

//! Resource caps for the exponential-cost operations.
//!
//! The brute-force satisfaction evaluator, the tableau reduction and the
//! palindrome coefficient generator all have costs that explode quickly; the
//! caps below keep them at desk scale.  Library functions take the relevant
//! cap as an explicit argument; the command-line tool reads overrides from
//! the `SEMIKIT_CAPS` environment variable (`vars=24,grid=8,pal=16`).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of free variables for brute-force assignment
    /// enumeration.
    pub vars: usize,
    /// Maximum grid width `f(n)` accepted by the tableau reduction.
    pub grid: u64,
    /// Maximum word half-length for the palindrome coefficient generator.
    pub pal: u32,
}

pub const DEFAULT_VAR_CAP: usize = 20;
pub const DEFAULT_GRID_CAP: u64 = 6;
pub const DEFAULT_PAL_CAP: u32 = 14;

impl Default for Caps {
    fn default() -> Self {
        Caps { vars: DEFAULT_VAR_CAP, grid: DEFAULT_GRID_CAP, pal: DEFAULT_PAL_CAP }
    }
}

impl Caps {
    /// Parses a comma-separated override list such as `vars=24,grid=8,pal=16`.
    /// Unknown keys are rejected; omitted keys keep their defaults.
    pub fn parse_overrides(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("cap override {part:?} is not key=value")))?;
            let bad = |_| Error::parse(format!("cap override {part:?} has a non-numeric value"));
            match key.trim() {
                "vars" => caps.vars = value.trim().parse().map_err(bad)?,
                "grid" => caps.grid = value.trim().parse().map_err(bad)?,
                "pal" => caps.pal = value.trim().parse().map_err(bad)?,
                other => {
                    return Err(Error::parse(format!("unknown cap {other:?} in overrides")));
                }
            }
        }
        Ok(caps)
    }

    /// Reads `SEMIKIT_CAPS` from the environment, falling back to defaults.
    pub fn from_env() -> Result<Caps> {
        match std::env::var("SEMIKIT_CAPS") {
            Ok(spec) => Caps::parse_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}

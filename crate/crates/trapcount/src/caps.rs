//! Resource caps for the brute-force and enumeration paths.
//!
//! Every exhaustive routine checks one of these before it starts and fails
//! with [`Error::CapExceeded`](crate::Error::CapExceeded) instead of silently
//! grinding. The defaults are sized for desk-scale verification work; the CLI
//! lets the `TRAPCOUNT_CAPS` environment variable raise or lower them.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Caps {
    /// Variable limit for 3^n subspace enumeration.
    pub max_subspace_vars: usize,
    /// Variable limit for 2^n state enumeration.
    pub max_state_vars: usize,
    /// Atom limit for the 2^k answer-set oracle.
    pub max_oracle_atoms: usize,
    /// Term limit for DNF expansion.
    pub max_dnf_terms: usize,
    /// Perturbable-variable limit for 3^|X| perturbation sweeps.
    pub max_perturbable_vars: usize,
    /// Optional conflict budget for SAT solving. `None` means unlimited.
    pub conflict_budget: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_subspace_vars: 14,
            max_state_vars: 20,
            max_oracle_atoms: 22,
            max_dnf_terms: 100_000,
            max_perturbable_vars: 8,
            conflict_budget: None,
        }
    }
}

impl Caps {
    /// Parses an override string of the form `key=value,key=value`.
    ///
    /// Keys: `subspace`, `state`, `oracle`, `dnf`, `perturb`, `conflicts`.
    /// Unknown keys and malformed numbers are rejected so that a typo in the
    /// environment cannot silently leave a default in place.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("cap override `{part}` is not key=value")))?;
            let n: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("cap override `{part}` has a non-numeric value")))?;
            match key.trim() {
                "subspace" => self.max_subspace_vars = n as usize,
                "state" => self.max_state_vars = n as usize,
                "oracle" => self.max_oracle_atoms = n as usize,
                "dnf" => self.max_dnf_terms = n as usize,
                "perturb" => self.max_perturbable_vars = n as usize,
                "conflicts" => self.conflict_budget = Some(n),
                other => {
                    return Err(Error::InvalidInput(format!("unknown cap `{other}`")));
                }
            }
        }
        Ok(self)
    }
}

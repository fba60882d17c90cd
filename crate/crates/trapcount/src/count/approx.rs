//! Probably-approximately-correct counting for the fixed-point problems.
//!
//! The estimate comes from hashing-based model counting: random XOR
//! constraints over the projection support split the solution space into
//! cells, a cell small enough to enumerate is counted exactly, and the cell
//! count scaled by the number of cells estimates the total. The median over
//! many independent trials gives the PAC guarantee: with probability at
//! least 1 - delta the estimate is within a factor 1 + epsilon of the true
//! count.
//!
//! Instances whose whole solution space is already smaller than the cell
//! threshold are counted outright during the initial sizing check; the
//! result is then exact, but it is still reported as approximate because the
//! caller chose that mode.

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bnet::{Phenotype, PerturbationSet};
use crate::caps::Caps;
use crate::encode::cnf::{encode_fix_cnf, CnfFormula};
use crate::encode::{perturb_transform, projection_atoms};
use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::sat::{ProjectedCount, Solver};

use super::{
    family3_robustness, validate_inputs, CountMode, CountOutcome, Problem,
};

#[derive(Debug, Clone, Copy)]
pub struct ApproxParams {
    /// Multiplicative tolerance of the estimate.
    pub epsilon: f64,
    /// Failure probability of the tolerance guarantee.
    pub delta: f64,
    /// Seed for the XOR constraint stream.
    pub seed: u64,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams {
            epsilon: 0.8,
            delta: 0.2,
            seed: 0,
        }
    }
}

impl ApproxParams {
    /// Cell size above which a hashed cell is considered still too big.
    /// 73 at the default epsilon.
    pub fn cell_threshold(&self) -> u64 {
        let e = self.epsilon;
        (1.0 + 9.84 * (1.0 + e / (1.0 + e)) * (1.0 + 1.0 / e).powi(2)).ceil() as u64
    }

    /// Number of independent hashing trials. 67 at the default delta.
    pub fn trials(&self) -> usize {
        (17.0 * (3.0 / self.delta).log2()).ceil() as usize
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidInput(format!(
                "epsilon must be strictly between 0 and 1, got {}",
                self.epsilon
            )));
        }
        if !(self.delta.is_finite() && self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidInput(format!(
                "delta must be strictly between 0 and 1, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// Approximately counts a fixed-point problem. Trap-space problems have no
/// local approximation and are rejected; the command line delegates those to
/// an external answer-set counter instead.
pub fn count_approx(
    problem: Problem,
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: Option<&PerturbationSet>,
    caps: &Caps,
    params: &ApproxParams,
) -> Result<CountOutcome> {
    if !problem.is_fix() {
        return Err(Error::InvalidInput(format!(
            "{problem} has no local approximate counter; emit its encoding for \
             an external answer-set counter instead"
        )));
    }
    validate_inputs(problem, f, beta, x)?;
    params.validate()?;

    let cnf = match problem {
        Problem::Fix1 | Problem::Fix2 => encode_fix_cnf(f, beta)?,
        _ => {
            let x = x.unwrap();
            let g = perturb_transform(f, x)?;
            let delta: Vec<usize> = projection_atoms(x)
                .delta
                .iter()
                .map(|name| g.position(name).expect("helper variable exists") + 1)
                .collect();
            encode_fix_cnf(&g, beta)?.with_support(delta)
        }
    };

    let count = estimate_projected(&cnf, caps, params)?;
    let robustness = match problem {
        Problem::Fix3 => family3_robustness(&count, x.unwrap()),
        _ => None,
    };
    Ok(CountOutcome {
        problem,
        mode: CountMode::Approx,
        count,
        robustness,
    })
}

/// The hashing estimator itself, counting models of `cnf` projected onto its
/// support.
fn estimate_projected(cnf: &CnfFormula, caps: &Caps, params: &ApproxParams) -> Result<BigUint> {
    let support = &cnf.support;
    let threshold = params.cell_threshold();

    // Sizing check: if the unhashed projection already fits below the cell
    // threshold, that enumeration is the answer.
    let mut solver = Solver::from_cnf(cnf, caps.conflict_budget);
    if let ProjectedCount::Exact(k) = solver.count_projected_upto(support, threshold)? {
        return Ok(BigUint::from(k));
    }

    let mut estimates: Vec<BigUint> = Vec::new();
    for trial in 0..params.trials() {
        let mut rng = ChaCha8Rng::seed_from_u64(
            params
                .seed
                .wrapping_add((trial as u64).wrapping_mul(0x9E3779B97F4A7C15)),
        );
        // One constraint per possible hash level, drawn up front so that a
        // trial's constraint stream does not depend on where it stops.
        let constraints: Vec<(Vec<usize>, bool)> = (0..support.len())
            .map(|_| {
                let vars: Vec<usize> = support
                    .iter()
                    .copied()
                    .filter(|_| rng.next_u32() & 1 == 1)
                    .collect();
                let parity = rng.next_u32() & 1 == 1;
                (vars, parity)
            })
            .collect();
        // Add constraints one at a time until a cell is small enough to
        // enumerate. Each level gets a fresh solver: the previous level's
        // blocking clauses must not leak into the next.
        for level in 1..=support.len() {
            let mut solver = Solver::from_cnf(cnf, caps.conflict_budget);
            for (vars, parity) in &constraints[..level] {
                solver.add_xor(vars, *parity);
            }
            match solver.count_projected_upto(support, threshold)? {
                ProjectedCount::AtLeast(_) => continue,
                // An empty cell estimates zero, which carries no
                // multiplicative information; the trial is discarded.
                ProjectedCount::Exact(0) => break,
                ProjectedCount::Exact(k) => {
                    estimates.push(BigUint::from(k) << level);
                    break;
                }
            }
        }
    }

    if estimates.is_empty() {
        return Err(Error::ApproxFailed(
            "every hashing trial landed in a cell that was empty or never small enough".into(),
        ));
    }
    estimates.sort();
    Ok(estimates[(estimates.len() - 1) / 2].clone())
}

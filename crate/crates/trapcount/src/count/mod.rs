//! The six counting problems over minimal trap spaces and fixed points.
//!
//! Family 1 counts everything, family 2 restricts to a phenotype, family 3
//! counts the perturbations (knock-out, override, or leave alone, per
//! perturbable variable) under which a witness exists. Exact counting works
//! by enumeration at desk scale; approximate counting for the fixed-point
//! problems lives in [`approx`].
//!
//! Every family-3 exact count is double-checked against an independent
//! encoding-based count before it is returned: the trap-space sweep against
//! the projected answer-set count of the perturbed encoding (when it fits
//! the oracle cap), the fixed-point sweep against projected model
//! enumeration of the perturbed CNF. A disagreement is a bug in one of the
//! two pipelines and surfaces as [`Error::Internal`].

pub mod approx;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::analysis::{fixed_points, minimal_trap_spaces};
use crate::asp::projected_count;
use crate::bnet::{Phenotype, PerturbationSet};
use crate::caps::Caps;
use crate::encode::cnf::encode_fix_cnf;
use crate::encode::{encode_phenotype, encode_tsconj, perturb_transform, projection_atoms, EncodeMode};
use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::network::BooleanNetwork;
use crate::sat::{ProjectedCount, SolveResult, Solver};
use crate::trival::TriValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Mts1,
    Mts2,
    Mts3,
    Fix1,
    Fix2,
    Fix3,
}

impl Problem {
    pub const ALL: [Problem; 6] = [
        Problem::Mts1,
        Problem::Mts2,
        Problem::Mts3,
        Problem::Fix1,
        Problem::Fix2,
        Problem::Fix3,
    ];

    pub fn canonical_name(self) -> &'static str {
        match self {
            Problem::Mts1 => "C-MTS-1",
            Problem::Mts2 => "C-MTS-2",
            Problem::Mts3 => "C-MTS-3",
            Problem::Fix1 => "C-FIX-1",
            Problem::Fix2 => "C-FIX-2",
            Problem::Fix3 => "C-FIX-3",
        }
    }

    /// Accepts `C-MTS-1`, `mts-1`, `MTS1` and the like, case-insensitively.
    pub fn parse(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect();
        let norm = norm.strip_prefix('c').unwrap_or(&norm);
        for p in Problem::ALL {
            let canon: String = p
                .canonical_name()
                .to_ascii_lowercase()
                .chars()
                .filter(|c| *c != '-')
                .collect();
            if norm == canon.strip_prefix('c').unwrap() {
                return Ok(p);
            }
        }
        Err(Error::InvalidInput(format!(
            "unknown problem `{s}`; expected one of C-MTS-1, C-MTS-2, C-MTS-3, C-FIX-1, C-FIX-2, C-FIX-3"
        )))
    }

    pub fn is_fix(self) -> bool {
        matches!(self, Problem::Fix1 | Problem::Fix2 | Problem::Fix3)
    }

    /// 1 = plain, 2 = phenotype, 3 = perturbation.
    pub fn family(self) -> u8 {
        match self {
            Problem::Mts1 | Problem::Fix1 => 1,
            Problem::Mts2 | Problem::Fix2 => 2,
            Problem::Mts3 | Problem::Fix3 => 3,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Exact,
    Approx,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Exact => "exact",
            CountMode::Approx => "approx",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CountOutcome {
    pub problem: Problem,
    pub mode: CountMode,
    pub count: BigUint,
    /// Fraction of viable perturbations, family-3 problems only. `None` for
    /// other families, and for approximate counts whose estimate overshoots
    /// the number of perturbations.
    pub robustness: Option<BigRational>,
}

/// How `--mode auto` should run a problem given the network size and caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plan {
    Exact,
    Approx,
    /// Too large for local enumeration and not a fixed-point problem:
    /// emit the encoding for an external answer-set counter instead.
    DelegateMts,
}

pub fn auto_plan(
    problem: Problem,
    f: &BooleanNetwork,
    x: Option<&PerturbationSet>,
    caps: &Caps,
) -> Plan {
    let x_ok = x.map_or(true, |x| x.len() <= caps.max_perturbable_vars);
    match problem {
        // Exact family 3 never enumerates the state space: it is one
        // satisfiability call per perturbation, so only the sweep size
        // matters.
        Problem::Fix3 => {
            if x_ok {
                Plan::Exact
            } else {
                Plan::Approx
            }
        }
        Problem::Fix1 | Problem::Fix2 => {
            if f.len() <= caps.max_state_vars {
                Plan::Exact
            } else {
                Plan::Approx
            }
        }
        _ => {
            if f.len() <= caps.max_subspace_vars && x_ok {
                Plan::Exact
            } else {
                Plan::DelegateMts
            }
        }
    }
}

/// Checks that the problem's inputs are present, absent, and well-formed as
/// the problem family demands. Shared by the exact and approximate paths.
pub fn validate_inputs(
    problem: Problem,
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: Option<&PerturbationSet>,
) -> Result<()> {
    match problem.family() {
        1 => {
            if beta.is_some() {
                return Err(Error::InvalidInput(format!(
                    "{problem} does not take a phenotype"
                )));
            }
            if x.is_some() {
                return Err(Error::InvalidInput(format!(
                    "{problem} does not take perturbable variables"
                )));
            }
        }
        2 => {
            if beta.is_none() {
                return Err(Error::InvalidInput(format!(
                    "{problem} requires a phenotype"
                )));
            }
            if x.is_some() {
                return Err(Error::InvalidInput(format!(
                    "{problem} does not take perturbable variables"
                )));
            }
        }
        _ => {
            if x.is_none() {
                return Err(Error::InvalidInput(format!(
                    "{problem} requires a set of perturbable variables"
                )));
            }
        }
    }
    if let Some(beta) = beta {
        for (name, value) in &beta.traits {
            if f.position(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
            if problem.is_fix() && value.is_star() {
                return Err(Error::InvalidInput(format!(
                    "phenotype trait `{name} = *` has no meaning for fixed points"
                )));
            }
        }
    }
    if let Some(x) = x {
        for name in &x.names {
            if f.position(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
    }
    Ok(())
}

/// Trait variables that are also perturbable. Constraining a variable that a
/// perturbation may pin is usually a modelling mistake, so callers warn on a
/// non-empty result.
pub fn phenotype_perturbable_overlap(beta: &Phenotype, x: &PerturbationSet) -> Vec<String> {
    beta.traits
        .iter()
        .map(|(name, _)| name)
        .filter(|name| x.names.contains(name))
        .cloned()
        .collect()
}

/// Replaces the update function of each non-star entry with the constant it
/// is pinned to. Star entries leave the original function in place.
pub fn apply_perturbation(
    f: &BooleanNetwork,
    sigma: &[(String, TriValue)],
) -> Result<BooleanNetwork> {
    for (name, _) in sigma {
        if f.position(name).is_none() {
            return Err(Error::UnknownVariable(name.clone()));
        }
    }
    let pairs = f
        .functions()
        .map(|(name, expr)| {
            let pinned = sigma
                .iter()
                .find(|(v, value)| v == name && !value.is_star())
                .map(|(_, value)| *value);
            let g = match pinned {
                Some(value) => BoolExpr::Const(value == TriValue::One),
                None => expr.clone(),
            };
            (name.to_string(), g)
        })
        .collect();
    BooleanNetwork::from_functions(pairs)
}

/// Runs `body` once per perturbation of `x`, in base-3 odometer order with
/// the first perturbable variable cycling fastest.
fn for_each_perturbation(
    x: &PerturbationSet,
    caps: &Caps,
    mut body: impl FnMut(&[(String, TriValue)]) -> Result<()>,
) -> Result<()> {
    if x.len() > caps.max_perturbable_vars {
        return Err(Error::CapExceeded(format!(
            "{} perturbable variables exceed the cap of {}",
            x.len(),
            caps.max_perturbable_vars
        )));
    }
    const DIGITS: [TriValue; 3] = [TriValue::Star, TriValue::Zero, TriValue::One];
    let total = 3u64.pow(x.len() as u32);
    let mut sigma: Vec<(String, TriValue)> = x
        .names
        .iter()
        .map(|n| (n.clone(), TriValue::Star))
        .collect();
    for index in 0..total {
        let mut rest = index;
        for slot in sigma.iter_mut() {
            slot.1 = DIGITS[(rest % 3) as usize];
            rest /= 3;
        }
        body(&sigma)?;
    }
    Ok(())
}

fn count_perturbations(x: &PerturbationSet) -> u64 {
    3u64.pow(x.len() as u32)
}

/// Robustness of a family-3 count: the fraction of perturbations with a
/// witness. `None` when an estimate exceeds the number of perturbations,
/// which only an approximate count can do.
pub fn family3_robustness(count: &BigUint, x: &PerturbationSet) -> Option<BigRational> {
    let numer = BigInt::from(count.clone());
    let denom = BigInt::from(3u32).pow(x.len() as u32);
    if numer > denom {
        None
    } else {
        Some(BigRational::new(numer, denom))
    }
}

/// Renders a ratio as an explicit fraction, `2/3` or `1/1`.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders a ratio in [0, 1] with three decimals, rounding half away from
/// zero, e.g. 2/3 as `0.667`.
pub fn ratio_to_decimal_3(r: &BigRational) -> String {
    let thousand = BigInt::from(1000);
    let thousandths: BigInt =
        (r.numer() * &thousand * BigInt::from(2) + r.denom()) / (r.denom() * BigInt::from(2));
    let whole = (&thousandths / &thousand).to_i64().expect("ratio in [0, 1]");
    let frac = (&thousandths % &thousand).to_i64().expect("ratio in [0, 1]");
    format!("{whole}.{frac:03}")
}

/// Multiplicative error of an estimate against an exact count, as
/// max(est/exact, exact/est) - 1. Zero on either side has no finite
/// multiplicative error.
pub fn observed_tolerance(estimate: &BigUint, exact: &BigUint) -> Result<BigRational> {
    if estimate.is_zero() || exact.is_zero() {
        return Err(Error::InvalidInput(
            "multiplicative tolerance is undefined for a zero count".into(),
        ));
    }
    let e = BigRational::from(BigInt::from(estimate.clone()));
    let x = BigRational::from(BigInt::from(exact.clone()));
    let ratio = if e >= x { e / x } else { x / e };
    Ok(ratio - BigRational::one())
}

/// Counts by exhaustive enumeration, within the caps.
pub fn count_exact(
    problem: Problem,
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: Option<&PerturbationSet>,
    caps: &Caps,
) -> Result<CountOutcome> {
    validate_inputs(problem, f, beta, x)?;
    let (count, robustness) = match problem {
        Problem::Mts1 => (count_mts_matching(f, None, caps)?, None),
        Problem::Mts2 => (count_mts_matching(f, beta, caps)?, None),
        Problem::Fix1 => (count_fix_matching(f, None, caps)?, None),
        Problem::Fix2 => (count_fix_matching(f, beta, caps)?, None),
        Problem::Mts3 => {
            let x = x.unwrap();
            let hits = count_mts_perturbations(f, beta, x, caps)?;
            let count = BigUint::from(hits);
            let robustness = family3_robustness(&count, x);
            (count, robustness)
        }
        Problem::Fix3 => {
            let x = x.unwrap();
            let hits = count_fix_perturbations(f, beta, x, caps)?;
            let count = BigUint::from(hits);
            let robustness = family3_robustness(&count, x);
            (count, robustness)
        }
    };
    Ok(CountOutcome {
        problem,
        mode: CountMode::Exact,
        count,
        robustness,
    })
}

fn count_mts_matching(
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    caps: &Caps,
) -> Result<BigUint> {
    let spaces = minimal_trap_spaces(f, caps)?;
    let mut n = 0u64;
    for m in &spaces {
        let keep = match beta {
            Some(beta) => beta.satisfied_by(m)?,
            None => true,
        };
        if keep {
            n += 1;
        }
    }
    Ok(BigUint::from(n))
}

fn count_fix_matching(
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    caps: &Caps,
) -> Result<BigUint> {
    let points = fixed_points(f, caps)?;
    let mut n = 0u64;
    for s in &points {
        let keep = match beta {
            Some(beta) => beta.satisfied_by(&s.to_subspace())?,
            None => true,
        };
        if keep {
            n += 1;
        }
    }
    Ok(BigUint::from(n))
}

/// Perturbations under which some minimal trap space satisfies the
/// phenotype. Cross-checked against the projected answer-set count of the
/// perturbed encoding whenever that encoding fits the oracle cap.
fn count_mts_perturbations(
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: &PerturbationSet,
    caps: &Caps,
) -> Result<u64> {
    let mut hits = 0u64;
    for_each_perturbation(x, caps, |sigma| {
        let g = apply_perturbation(f, sigma)?;
        let spaces = minimal_trap_spaces(&g, caps)?;
        let viable = match beta {
            Some(beta) => {
                let mut any = false;
                for m in &spaces {
                    if beta.satisfied_by(m)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            None => !spaces.is_empty(),
        };
        if viable {
            hits += 1;
        }
        Ok(())
    })?;

    let g = perturb_transform(f, x)?;
    let mut program = encode_tsconj(&g, caps)?;
    if let Some(beta) = beta {
        program.extend(encode_phenotype(beta, &g, EncodeMode::TrapSpaces)?);
    }
    if program.atoms().len() <= caps.max_oracle_atoms {
        let projection = projection_atoms(x).atom_set();
        let projected = projected_count(&program, &projection, caps)?;
        if projected != BigUint::from(hits) {
            return Err(Error::Internal(format!(
                "perturbation sweep found {hits} viable perturbations but the \
                 projected answer-set count is {projected}"
            )));
        }
    }
    Ok(hits)
}

/// Perturbations under which a fixed point satisfies the phenotype. Each
/// perturbation is decided by satisfiability of the pinned network's
/// fixed-point formula; the total is then cross-checked by enumerating the
/// helper-variable projections of the perturbed network's formula.
fn count_fix_perturbations(
    f: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: &PerturbationSet,
    caps: &Caps,
) -> Result<u64> {
    let mut hits = 0u64;
    for_each_perturbation(x, caps, |sigma| {
        let g = apply_perturbation(f, sigma)?;
        let cnf = encode_fix_cnf(&g, beta)?;
        let mut solver = Solver::from_cnf(&cnf, caps.conflict_budget);
        if matches!(solver.solve()?, SolveResult::Sat(_)) {
            hits += 1;
        }
        Ok(())
    })?;

    let g = perturb_transform(f, x)?;
    let delta: Vec<usize> = projection_atoms(x)
        .delta
        .iter()
        .map(|name| g.position(name).expect("helper variable exists") + 1)
        .collect();
    let cnf = encode_fix_cnf(&g, beta)?.with_support(delta.clone());
    let mut solver = Solver::from_cnf(&cnf, caps.conflict_budget);
    let bound = count_perturbations(x) + 1;
    match solver.count_projected_upto(&delta, bound)? {
        ProjectedCount::Exact(k) if k == hits => Ok(hits),
        ProjectedCount::Exact(k) => Err(Error::Internal(format!(
            "perturbation sweep found {hits} viable perturbations but projected \
             model enumeration found {k}"
        ))),
        ProjectedCount::AtLeast(b) => Err(Error::Internal(format!(
            "projected model enumeration exceeded the {b} possible perturbations"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bnet::{parse_bnet, parse_perturbables, parse_phenotype};

    fn example() -> BooleanNetwork {
        parse_bnet("targets, factors\na, a & !b\nb, a\n").unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(Problem::parse(p.canonical_name()).unwrap(), p);
            assert_eq!(
                Problem::parse(&p.canonical_name().to_lowercase()).unwrap(),
                p
            );
        }
        assert_eq!(Problem::parse("mts1").unwrap(), Problem::Mts1);
        assert_eq!(Problem::parse("FIX-3").unwrap(), Problem::Fix3);
        assert!(Problem::parse("mts4").is_err());
    }

    #[test]
    fn plain_counts_on_the_example() {
        let f = example();
        let out = count_exact(Problem::Mts1, &f, None, None, &caps()).unwrap();
        assert_eq!(out.count, BigUint::from(1u32));
        assert_eq!(out.mode, CountMode::Exact);
        assert!(out.robustness.is_none());
        let out = count_exact(Problem::Fix1, &f, None, None, &caps()).unwrap();
        assert_eq!(out.count, BigUint::from(1u32));
    }

    #[test]
    fn phenotype_counts_on_the_example() {
        let f = example();
        // The only minimal trap space fixes b to 0, so b = * matches nothing.
        let beta = parse_phenotype("b = *").unwrap();
        let out = count_exact(Problem::Mts2, &f, Some(&beta), None, &caps()).unwrap();
        assert_eq!(out.count, BigUint::from(0u32));
        let beta = parse_phenotype("a = 0\nb = 0").unwrap();
        let out = count_exact(Problem::Mts2, &f, Some(&beta), None, &caps()).unwrap();
        assert_eq!(out.count, BigUint::from(1u32));
        let out = count_exact(Problem::Fix2, &f, Some(&beta), None, &caps()).unwrap();
        assert_eq!(out.count, BigUint::from(1u32));
    }

    #[test]
    fn perturbation_counts_on_the_example() {
        let f = example();
        let beta = parse_phenotype("a = 0\nb = 0").unwrap();
        let x = parse_perturbables("b").unwrap();
        // Of b's three perturbations, leaving b alone keeps the minimal trap
        // space 00 and knocking b out yields fixed points 00 and 10; only
        // overriding b to 1 forces a, b to 01.
        for problem in [Problem::Mts3, Problem::Fix3] {
            let out = count_exact(problem, &f, Some(&beta), Some(&x), &caps()).unwrap();
            assert_eq!(out.count, BigUint::from(2u32), "{problem}");
            let r = out.robustness.unwrap();
            assert_eq!(ratio_string(&r), "2/3");
            assert_eq!(ratio_to_decimal_3(&r), "0.667");
        }
    }

    #[test]
    fn family3_without_phenotype_counts_all_perturbations() {
        // Every network has a minimal trap space and this one always has a
        // fixed point, so all three perturbations of b are viable.
        let f = example();
        let x = parse_perturbables("b").unwrap();
        for problem in [Problem::Mts3, Problem::Fix3] {
            let out = count_exact(problem, &f, None, Some(&x), &caps()).unwrap();
            assert_eq!(out.count, BigUint::from(3u32), "{problem}");
            assert_eq!(ratio_string(&out.robustness.unwrap()), "1/1");
        }
    }

    #[test]
    fn input_shape_is_validated() {
        let f = example();
        let beta = parse_phenotype("a = 1").unwrap();
        let x = parse_perturbables("b").unwrap();
        assert!(matches!(
            count_exact(Problem::Mts1, &f, Some(&beta), None, &caps()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            count_exact(Problem::Mts2, &f, None, None, &caps()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            count_exact(Problem::Fix2, &f, Some(&beta), Some(&x), &caps()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            count_exact(Problem::Fix3, &f, Some(&beta), None, &caps()),
            Err(Error::InvalidInput(_))
        ));
        let starry = parse_phenotype("a = *").unwrap();
        assert!(matches!(
            count_exact(Problem::Fix2, &f, Some(&starry), None, &caps()),
            Err(Error::InvalidInput(_))
        ));
        let unknown = parse_phenotype("z = 1").unwrap();
        assert!(matches!(
            count_exact(Problem::Mts2, &f, Some(&unknown), None, &caps()),
            Err(Error::UnknownVariable(_))
        ));
        let unknown_x = parse_perturbables("z").unwrap();
        assert!(matches!(
            count_exact(Problem::Mts3, &f, None, Some(&unknown_x), &caps()),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn perturbable_cap_is_enforced() {
        let text = "targets, factors\n".to_string()
            + &(0..9)
                .map(|i| format!("v{i}, v{i}\n"))
                .collect::<String>();
        let f = parse_bnet(&text).unwrap();
        let x =
            parse_perturbables(&(0..9).map(|i| format!("v{i}\n")).collect::<String>()).unwrap();
        assert!(matches!(
            count_exact(Problem::Fix3, &f, None, Some(&x), &caps()),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn perturbation_pinning_replaces_functions() {
        let f = example();
        let sigma = vec![
            ("b".to_string(), TriValue::One),
            ("a".to_string(), TriValue::Star),
        ];
        let g = apply_perturbation(&f, &sigma).unwrap();
        assert_eq!(g.function("b"), Some(&BoolExpr::Const(true)));
        assert_eq!(g.function("a"), f.function("a"));
        let bad = vec![("z".to_string(), TriValue::Zero)];
        assert!(matches!(
            apply_perturbation(&f, &bad),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn ratio_rendering_rounds_half_up() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(ratio_to_decimal_3(&r(2, 3)), "0.667");
        assert_eq!(ratio_to_decimal_3(&r(1, 3)), "0.333");
        assert_eq!(ratio_to_decimal_3(&r(1, 2)), "0.500");
        assert_eq!(ratio_to_decimal_3(&r(1, 1)), "1.000");
        assert_eq!(ratio_to_decimal_3(&r(0, 1)), "0.000");
        assert_eq!(ratio_to_decimal_3(&r(1, 8000)), "0.000");
        assert_eq!(ratio_to_decimal_3(&r(1, 2000)), "0.001");
        assert_eq!(ratio_to_decimal_3(&r(1999, 2000)), "1.000");
    }

    #[test]
    fn tolerance_is_symmetric_multiplicative_error() {
        let t = |a: u32, b: u32| observed_tolerance(&BigUint::from(a), &BigUint::from(b)).unwrap();
        assert!(t(73, 73).is_zero());
        assert_eq!(t(9, 10), BigRational::new(BigInt::from(1), BigInt::from(9)));
        assert_eq!(t(10, 9), BigRational::new(BigInt::from(1), BigInt::from(9)));
        assert_eq!(t(12, 10), BigRational::new(BigInt::from(1), BigInt::from(5)));
        assert!(observed_tolerance(&BigUint::from(0u32), &BigUint::from(1u32)).is_err());
    }

    #[test]
    fn overlap_warning_lists_shared_variables() {
        let beta = parse_phenotype("a = 0\nb = 1").unwrap();
        let x = parse_perturbables("b").unwrap();
        assert_eq!(phenotype_perturbable_overlap(&beta, &x), vec!["b"]);
        let x = parse_perturbables("a\nb").unwrap();
        assert_eq!(phenotype_perturbable_overlap(&beta, &x), vec!["a", "b"]);
    }

    #[test]
    fn planning_follows_the_caps() {
        let f = example();
        let mut caps = Caps::default();
        assert_eq!(auto_plan(Problem::Mts1, &f, None, &caps), Plan::Exact);
        assert_eq!(auto_plan(Problem::Fix1, &f, None, &caps), Plan::Exact);
        caps.max_subspace_vars = 1;
        assert_eq!(auto_plan(Problem::Mts1, &f, None, &caps), Plan::DelegateMts);
        assert_eq!(auto_plan(Problem::Fix1, &f, None, &caps), Plan::Exact);
        caps.max_state_vars = 1;
        assert_eq!(auto_plan(Problem::Fix1, &f, None, &caps), Plan::Approx);
        let x = parse_perturbables("b").unwrap();
        // Family 3 for fixed points plans exact on the sweep size alone.
        assert_eq!(auto_plan(Problem::Fix3, &f, Some(&x), &caps), Plan::Exact);
        caps.max_perturbable_vars = 0;
        assert_eq!(
            auto_plan(Problem::Fix3, &f, Some(&x), &caps),
            Plan::Approx
        );
        assert_eq!(
            auto_plan(Problem::Mts3, &f, Some(&x), &caps),
            Plan::DelegateMts
        );
    }
}

//! Shared helpers for the integration suites: seeded network generators, a
//! text-level reader for the emitted ASP listings, and constructed instances
//! with a known number of fixed points.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use trapcount::asp::{AspProgram, Atom, Rule};
use trapcount::bnet::{PerturbationSet, Phenotype};
use trapcount::encode::encode_tsconj;
use trapcount::{BoolExpr, BooleanNetwork, Caps, Subspace, TriValue};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Random expression tree over `vars`, at most `depth` operator levels deep.
/// Leaves are literals with an occasional constant.
pub fn random_expr(rng: &mut ChaCha8Rng, vars: &[String], depth: usize) -> BoolExpr {
    if depth == 0 || pick(rng, 4) == 0 {
        if pick(rng, 12) == 0 {
            return BoolExpr::Const(pick(rng, 2) == 1);
        }
        let v = BoolExpr::var(vars[pick(rng, vars.len())].clone());
        return if pick(rng, 2) == 0 { !v } else { v };
    }
    match pick(rng, 4) {
        0 | 1 => random_expr(rng, vars, depth - 1) & random_expr(rng, vars, depth - 1),
        2 => random_expr(rng, vars, depth - 1) | random_expr(rng, vars, depth - 1),
        _ => !random_expr(rng, vars, depth - 1),
    }
}

pub fn random_network(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> BooleanNetwork {
    let vars = var_names(n);
    let functions = vars
        .iter()
        .map(|v| (v.clone(), random_expr(rng, &vars, depth)))
        .collect();
    BooleanNetwork::from_functions(functions).expect("generated names are distinct")
}

/// Random `n`-variable network whose update functions are safe in both
/// polarities (so the trap-space encoding needs no fallback) and whose
/// encoding stays small enough for the brute-force answer-set oracle to
/// finish quickly. Keeps `n` fixed and redraws only the functions, so the
/// caller controls the size distribution.
pub fn random_safe_oracle_network(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_atoms: usize,
    caps: &Caps,
) -> BooleanNetwork {
    for _ in 0..100_000 {
        let depth = 1 + pick(rng, 2);
        let f = random_network(rng, n, depth);
        let safe = f
            .functions()
            .all(|(_, e)| e.to_nnf().is_safe() && (!e.clone()).to_nnf().is_safe());
        if !safe {
            continue;
        }
        let program = encode_tsconj(&f, caps).expect("safe encoding cannot fail");
        if program.atoms().len() <= max_atoms {
            return f;
        }
    }
    panic!("generator failed to produce a safe oracle-sized network");
}

/// Random phenotype over a subset of the network variables. Roughly one third
/// of the draws are `None`. Star traits appear only when `allow_star` is set.
pub fn random_phenotype(
    rng: &mut ChaCha8Rng,
    f: &BooleanNetwork,
    allow_star: bool,
) -> Option<Phenotype> {
    if pick(rng, 3) == 0 {
        return None;
    }
    let names: Vec<String> = f.variables().to_vec();
    let count = 1 + pick(rng, names.len());
    let mut chosen = BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(names[pick(rng, names.len())].clone());
    }
    let traits = chosen
        .into_iter()
        .map(|name| {
            let value = match pick(rng, if allow_star { 3 } else { 2 }) {
                0 => TriValue::Zero,
                1 => TriValue::One,
                _ => TriValue::Star,
            };
            (name, value)
        })
        .collect();
    Some(Phenotype { traits })
}

/// Random nonempty perturbable set of at most `max` distinct variables.
pub fn random_perturbation_set(
    rng: &mut ChaCha8Rng,
    f: &BooleanNetwork,
    max: usize,
) -> PerturbationSet {
    let names: Vec<String> = f.variables().to_vec();
    let count = 1 + pick(rng, max.min(names.len()));
    let mut chosen = BTreeSet::new();
    while chosen.len() < count {
        chosen.insert(names[pick(rng, names.len())].clone());
    }
    PerturbationSet {
        names: chosen.into_iter().collect(),
    }
}

/// All 3^|X| perturbations of `x`, first variable varying fastest.
pub fn all_perturbations(x: &PerturbationSet) -> Vec<Vec<(String, TriValue)>> {
    let digits = [TriValue::Star, TriValue::Zero, TriValue::One];
    let mut out = Vec::new();
    let total = 3usize.pow(x.names.len() as u32);
    for mut idx in 0..total {
        let mut sigma = Vec::with_capacity(x.names.len());
        for name in &x.names {
            sigma.push((name.clone(), digits[idx % 3]));
            idx /= 3;
        }
        out.push(sigma);
    }
    out
}

pub fn display_set<'a>(subspaces: impl IntoIterator<Item = &'a Subspace>) -> BTreeSet<String> {
    subspaces.into_iter().map(|m| m.to_string()).collect()
}

/// Network with exactly `c` fixed points over ceil(log2 c) variables: every
/// variable copies itself, except that the first one flips whenever the state,
/// read as a binary number, is at least `c`.
pub fn network_with_fixed_point_count(c: u64) -> BooleanNetwork {
    assert!(c >= 1);
    let m = (64 - (c - 1).leading_zeros()).max(1) as usize;
    let vars = var_names(m);
    let ge = at_least(&vars, c, m);
    let x1 = BoolExpr::var(vars[0].clone());
    let flip = (x1.clone() & !ge.clone()) | (!x1 & ge);
    let mut functions = vec![(vars[0].clone(), flip)];
    for v in &vars[1..] {
        functions.push((v.clone(), BoolExpr::var(v.clone())));
    }
    BooleanNetwork::from_functions(functions).expect("distinct names")
}

/// Comparator [value(bits) >= c] over `m` bits, first variable most
/// significant, as a plain expression.
fn at_least(vars: &[String], c: u64, m: usize) -> BoolExpr {
    if c >= 1u64 << m {
        return BoolExpr::Const(false);
    }
    let mut expr = BoolExpr::Const(true);
    for i in (0..m).rev() {
        let bit = BoolExpr::var(vars[i].clone());
        expr = if c >> (m - 1 - i) & 1 == 1 {
            bit & expr
        } else {
            bit | expr
        };
    }
    expr
}

/// Minimal reader for the ASP listings this project emits: one rule or
/// `#show` directive per line. Returns the rules and the shown atom names in
/// listing order. This deliberately reimplements nothing from the encoder so
/// the round trip is a real check.
pub fn parse_asp_text(text: &str) -> (AspProgram, Vec<String>) {
    let mut program = AspProgram::new();
    let mut shown = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#show ") {
            let name = rest
                .strip_suffix("/0.")
                .unwrap_or_else(|| panic!("malformed show line: {line}"));
            shown.push(name.trim().to_string());
            continue;
        }
        let body_text = line
            .strip_suffix('.')
            .unwrap_or_else(|| panic!("rule line missing terminator: {line}"));
        let (head_text, body_text) = match body_text.split_once(":-") {
            Some((h, b)) => (h.trim(), b.trim()),
            None => (body_text.trim(), ""),
        };
        let head = head_text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(Atom::new)
            .collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for part in body_text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match part.strip_prefix("not ") {
                Some(atom) => neg.push(Atom::new(atom.trim())),
                None => pos.push(Atom::new(part)),
            }
        }
        program.rules.push(Rule::new(head, pos, neg));
    }
    (program, shown)
}

pub fn example_network() -> BooleanNetwork {
    let a = BoolExpr::var("a");
    let b = BoolExpr::var("b");
    BooleanNetwork::from_functions(vec![
        ("a".to_string(), a.clone() & !b),
        ("b".to_string(), a),
    ])
    .expect("distinct names")
}

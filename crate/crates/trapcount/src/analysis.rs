//! Brute-force semantic ground truth: three-valued evaluation, trap space
//! and fixed-point enumeration, and tiny state transition graphs.
//!
//! Everything here is exhaustive and cap-checked. These routines are the
//! independent reference that the solver encodings are validated against, so
//! they stay as close to the definitions as possible: a subspace m is a trap
//! space iff for every variable the image of its update function over the
//! states of m is at least as specific as m's own entry. Kleene evaluation
//! decides that image almost always; where it cannot (a formula like x | !x
//! is constant even though Kleene reports ⋆), the image is settled exactly by
//! checking every completion of the free variables the function reads.

use std::collections::BTreeSet;

use petgraph::graph::DiGraph;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::network::{BooleanNetwork, State, Subspace, VarTable};
use crate::trival::TriValue;

/// Evaluates `e` over the partial assignment `m` in Kleene three-valued
/// logic. Errors on variables `m` does not know.
///
/// A 0 or 1 result is exact. A ⋆ result is conservative: it certifies both
/// truth values are consistent with the connectives, not that both are
/// attained by states of `m`.
pub fn eval3(e: &BoolExpr, m: &Subspace) -> Result<TriValue> {
    match e {
        BoolExpr::Const(b) => Ok(TriValue::from_bool(*b)),
        BoolExpr::Var(v) => m
            .get(v)
            .ok_or_else(|| Error::UnknownVariable(v.clone())),
        BoolExpr::Not(inner) => Ok(eval3(inner, m)?.negate()),
        BoolExpr::And(cs) => {
            let mut acc = TriValue::One;
            for c in cs {
                acc = acc.and(eval3(c, m)?);
            }
            Ok(acc)
        }
        BoolExpr::Or(cs) => {
            let mut acc = TriValue::Zero;
            for c in cs {
                acc = acc.or(eval3(c, m)?);
            }
            Ok(acc)
        }
    }
}

/// Two-valued evaluation over a complete state.
pub fn eval_state(e: &BoolExpr, s: &State) -> Result<bool> {
    let m = s.to_subspace();
    // Star-free input keeps the result star-free.
    Ok(eval3(e, &m)?.to_bool().expect("state evaluation is two-valued"))
}

/// Update-function expression compiled to positional variable lookups, so the
/// exhaustive loops skip name hashing.
enum IExpr {
    Const(bool),
    Var(usize),
    Not(Box<IExpr>),
    And(Vec<IExpr>),
    Or(Vec<IExpr>),
}

fn compile(e: &BoolExpr, vars: &VarTable) -> IExpr {
    match e {
        BoolExpr::Const(b) => IExpr::Const(*b),
        BoolExpr::Var(v) => IExpr::Var(
            vars.position(v)
                .expect("network validation admits only declared variables"),
        ),
        BoolExpr::Not(inner) => IExpr::Not(Box::new(compile(inner, vars))),
        BoolExpr::And(cs) => IExpr::And(cs.iter().map(|c| compile(c, vars)).collect()),
        BoolExpr::Or(cs) => IExpr::Or(cs.iter().map(|c| compile(c, vars)).collect()),
    }
}

fn compile_network(f: &BooleanNetwork) -> Vec<IExpr> {
    (0..f.len())
        .map(|i| compile(f.function_at(i), f.var_table()))
        .collect()
}

fn ieval3(e: &IExpr, values: &[TriValue]) -> TriValue {
    match e {
        IExpr::Const(b) => TriValue::from_bool(*b),
        IExpr::Var(i) => values[*i],
        IExpr::Not(inner) => ieval3(inner, values).negate(),
        IExpr::And(cs) => {
            let mut acc = TriValue::One;
            for c in cs {
                acc = acc.and(ieval3(c, values));
                if acc == TriValue::Zero {
                    break;
                }
            }
            acc
        }
        IExpr::Or(cs) => {
            let mut acc = TriValue::Zero;
            for c in cs {
                acc = acc.or(ieval3(c, values));
                if acc == TriValue::One {
                    break;
                }
            }
            acc
        }
    }
}

fn ieval2(e: &IExpr, values: &[bool]) -> bool {
    match e {
        IExpr::Const(b) => *b,
        IExpr::Var(i) => values[*i],
        IExpr::Not(inner) => !ieval2(inner, values),
        IExpr::And(cs) => cs.iter().all(|c| ieval2(c, values)),
        IExpr::Or(cs) => cs.iter().any(|c| ieval2(c, values)),
    }
}

fn ivars(e: &IExpr, out: &mut BTreeSet<usize>) {
    match e {
        IExpr::Const(_) => {}
        IExpr::Var(i) => {
            out.insert(*i);
        }
        IExpr::Not(inner) => ivars(inner, out),
        IExpr::And(cs) | IExpr::Or(cs) => cs.iter().for_each(|c| ivars(c, out)),
    }
}

/// Variable positions each compiled function reads.
fn read_sets(compiled: &[IExpr]) -> Vec<Vec<usize>> {
    compiled
        .iter()
        .map(|e| {
            let mut set = BTreeSet::new();
            ivars(e, &mut set);
            set.into_iter().collect()
        })
        .collect()
}

/// Whether `e` evaluates to `want` on every state of the subspace, checked by
/// enumerating completions of the ⋆ variables among `reads`. Only called once
/// Kleene evaluation has reported ⋆, where a hidden tautology may still make
/// the image constant.
fn image_constant(
    e: &IExpr,
    reads: &[usize],
    values: &[TriValue],
    want: bool,
) -> Result<bool> {
    let free: Vec<usize> = reads
        .iter()
        .copied()
        .filter(|&i| values[i].is_star())
        .collect();
    if free.len() > 24 {
        return Err(Error::CapExceeded(format!(
            "image check over {} free inputs",
            free.len()
        )));
    }
    let want = TriValue::from_bool(want);
    let mut scratch = values.to_vec();
    for mask in 0u64..(1u64 << free.len()) {
        for (j, &i) in free.iter().enumerate() {
            scratch[i] = TriValue::from_bool(mask >> j & 1 == 1);
        }
        if ieval3(e, &scratch) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_trap_values(
    compiled: &[IExpr],
    reads: &[Vec<usize>],
    values: &[TriValue],
) -> Result<bool> {
    for ((e, r), &mv) in compiled.iter().zip(reads).zip(values) {
        let coarse = ieval3(e, values);
        let ok = match (coarse, mv) {
            (TriValue::Star, TriValue::Zero) => image_constant(e, r, values, false)?,
            (TriValue::Star, TriValue::One) => image_constant(e, r, values, true)?,
            _ => coarse.le_spec(mv),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `m` is a trap space of `f`: for every variable, the image of its
/// update function over the states of `m` is at least as specific as `m`'s
/// entry. Update-scheme independent.
pub fn is_trap_space(f: &BooleanNetwork, m: &Subspace) -> Result<bool> {
    if m.var_table() != f.var_table() {
        return Err(Error::InvalidInput(
            "subspace does not belong to this network".into(),
        ));
    }
    let compiled = compile_network(f);
    let reads = read_sets(&compiled);
    is_trap_values(&compiled, &reads, m.values())
}

fn check_subspace_cap(f: &BooleanNetwork, caps: &Caps) -> Result<()> {
    if f.len() > caps.max_subspace_vars {
        return Err(Error::CapExceeded(format!(
            "{} variables exceed the {}-variable subspace enumeration cap",
            f.len(),
            caps.max_subspace_vars
        )));
    }
    Ok(())
}

fn check_state_cap(f: &BooleanNetwork, caps: &Caps) -> Result<()> {
    if f.len() > caps.max_state_vars {
        return Err(Error::CapExceeded(format!(
            "{} variables exceed the {}-variable state enumeration cap",
            f.len(),
            caps.max_state_vars
        )));
    }
    Ok(())
}

/// All trap spaces of `f`, in subspace order. 3^n enumeration.
pub fn trap_spaces(f: &BooleanNetwork, caps: &Caps) -> Result<Vec<Subspace>> {
    check_subspace_cap(f, caps)?;
    let compiled = compile_network(f);
    let reads = read_sets(&compiled);
    let n = f.len();
    let mut out = Vec::new();
    let mut values = vec![TriValue::Zero; n];
    // Base-3 odometer, last variable fastest.
    loop {
        if is_trap_values(&compiled, &reads, &values)? {
            out.push(Subspace::new(f.var_table().clone(), values.clone()));
        }
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            values[pos] = match values[pos] {
                TriValue::Zero => TriValue::One,
                TriValue::One => TriValue::Star,
                TriValue::Star => {
                    values[pos] = TriValue::Zero;
                    continue;
                }
            };
            break;
        }
        if pos == 0 && values[0] == TriValue::Zero {
            break;
        }
        if n == 0 {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Trap spaces that are minimal in the specificity order, i.e. contain no
/// strictly smaller trap space.
pub fn minimal_trap_spaces(f: &BooleanNetwork, caps: &Caps) -> Result<Vec<Subspace>> {
    let all = trap_spaces(f, caps)?;
    Ok(all
        .iter()
        .filter(|m| {
            !all.iter()
                .any(|other| *other != **m && other.le_spec(m))
        })
        .cloned()
        .collect())
}

/// States fixed by every update function, in state order. 2^n enumeration.
pub fn fixed_points(f: &BooleanNetwork, caps: &Caps) -> Result<Vec<State>> {
    check_state_cap(f, caps)?;
    let compiled = compile_network(f);
    let n = f.len();
    let mut out = Vec::new();
    let mut values = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (i, v) in values.iter_mut().enumerate() {
            // Variable 0 is the most significant bit: states come out sorted.
            *v = (mask >> (n - 1 - i)) & 1 == 1;
        }
        if compiled.iter().zip(&values).all(|(e, &b)| ieval2(e, &values) == b) {
            out.push(State::new(f.var_table().clone(), values.clone()));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateScheme {
    Synchronous,
    Asynchronous,
}

/// Successor states of `s` under the given update scheme.
///
/// Synchronous update has exactly one successor. Asynchronous update yields
/// one candidate per variable; self-loops (variable already at its target
/// value) are retained, so a steady state lists itself.
pub fn successors(f: &BooleanNetwork, s: &State, scheme: UpdateScheme) -> Result<Vec<State>> {
    if s.var_table() != f.var_table() {
        return Err(Error::InvalidInput(
            "state does not belong to this network".into(),
        ));
    }
    let image: Vec<bool> = f
        .functions()
        .map(|(_, e)| eval_state(e, s))
        .collect::<Result<_>>()?;
    match scheme {
        UpdateScheme::Synchronous => Ok(vec![State::new(f.var_table().clone(), image)]),
        UpdateScheme::Asynchronous => {
            let mut out = BTreeSet::new();
            for i in 0..f.len() {
                let mut values = s.values().to_vec();
                values[i] = image[i];
                out.insert(State::new(f.var_table().clone(), values));
            }
            Ok(out.into_iter().collect())
        }
    }
}

/// Attractors of the exhaustive state transition graph: its terminal strongly
/// connected components, each returned as a set of states.
pub fn attractors(
    f: &BooleanNetwork,
    scheme: UpdateScheme,
    caps: &Caps,
) -> Result<Vec<BTreeSet<State>>> {
    check_state_cap(f, caps)?;
    let compiled = compile_network(f);
    let n = f.len();
    let size = 1usize << n;
    let to_values = |mask: usize| -> Vec<bool> {
        (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect()
    };
    let mut graph = DiGraph::<(), ()>::with_capacity(size, size);
    let nodes: Vec<_> = (0..size).map(|_| graph.add_node(())).collect();
    for mask in 0..size {
        let values = to_values(mask);
        let image: Vec<bool> = compiled.iter().map(|e| ieval2(e, &values)).collect();
        let mut push_edge = |target: &[bool]| {
            let tmask = target
                .iter()
                .fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
            graph.update_edge(nodes[mask], nodes[tmask], ());
        };
        match scheme {
            UpdateScheme::Synchronous => push_edge(&image),
            UpdateScheme::Asynchronous => {
                for i in 0..n {
                    let mut t = values.clone();
                    t[i] = image[i];
                    push_edge(&t);
                }
            }
        }
    }
    let sccs = petgraph::algo::tarjan_scc(&graph);
    let mut out = Vec::new();
    for scc in sccs {
        let members: BTreeSet<_> = scc.iter().map(|n| n.index()).collect();
        let terminal = members.iter().all(|&m| {
            graph
                .neighbors(nodes[m])
                .all(|t| members.contains(&t.index()))
        });
        if terminal {
            out.push(
                members
                    .into_iter()
                    .map(|m| State::new(f.var_table().clone(), to_values(m)))
                    .collect(),
            );
        }
    }
    out.sort();
    Ok(out)
}

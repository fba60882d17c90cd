//! Answer-set encodings of trap-space and fixed-point problems.
//!
//! The core translation maps a Boolean network to a disjunctive program over
//! atoms `p_v` / `n_v`, read as "v is fixed to 1" / "v is fixed to 0" (both
//! present means v is free). Per variable, a disjunctive fact `p_v ; n_v.`
//! opens the choice, a rule derives `p_v` from the negation normal form of
//! the update function, and a rule derives `n_v` from the NNF of its
//! negation. Conjunctions become joint rule bodies; each disjunction gets a
//! fresh `aux_k` atom defined by one rule per disjunct. Answer sets of the
//! result are exactly the minimal trap spaces.
//!
//! The joint-body reading of conjunctions is only sound for *safe* formulas
//! (no conjunction mixing `x` and `!x` across conjuncts); an unsafe formula
//! is replaced by its DNF, which is safe by construction. The fixed-point
//! variant skips safeness entirely and instead forbids free variables with a
//! constraint `:- p_v, n_v.` per variable, making its answer sets the fixed
//! points.

pub mod cnf;

use std::collections::BTreeSet;

use crate::asp::{AspProgram, Atom, Rule};
use crate::bnet::{Phenotype, PerturbationSet};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::network::{BooleanNetwork, Subspace};
use crate::trival::TriValue;

/// Whether phenotype constraints target trap spaces (three-valued traits) or
/// fixed points (Boolean traits only).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodeMode {
    TrapSpaces,
    FixedPoints,
}

/// Atom asserting that a variable is fixed to 1.
pub fn positive_atom(var: &str) -> Atom {
    Atom::new(format!("p_{var}"))
}

/// Atom asserting that a variable is fixed to 0.
pub fn negative_atom(var: &str) -> Atom {
    Atom::new(format!("n_{var}"))
}

fn aux_atom(k: usize) -> Atom {
    Atom::new(format!("aux_{k}"))
}

/// Body translation of an NNF formula. Returns the body atoms, or `None` for
/// an unsatisfiable body (constant 0), in which case the caller drops the
/// rule. Rules defining fresh `aux` atoms are appended to `out` in creation
/// order; a dropped subformula takes its orphaned aux rules with it, though
/// the counter still advances for every aux atom handed out.
fn gamma(e: &BoolExpr, counter: &mut usize, out: &mut Vec<Rule>) -> Option<Vec<Atom>> {
    match e {
        BoolExpr::Const(true) => Some(vec![]),
        BoolExpr::Const(false) => None,
        BoolExpr::Var(v) => Some(vec![positive_atom(v)]),
        BoolExpr::Not(inner) => match inner.as_ref() {
            BoolExpr::Var(v) => Some(vec![negative_atom(v)]),
            other => unreachable!("negation of {other:?} survived NNF"),
        },
        BoolExpr::And(cs) => {
            let mut body = Vec::new();
            let mut local = Vec::new();
            for c in cs {
                body.extend(gamma(c, counter, &mut local)?);
            }
            out.extend(local);
            Some(body)
        }
        BoolExpr::Or(cs) => {
            *counter += 1;
            let aux = aux_atom(*counter);
            for c in cs {
                let mut nested = Vec::new();
                if let Some(body) = gamma(c, counter, &mut nested) {
                    out.extend(nested);
                    out.push(Rule::new(vec![aux.clone()], body, vec![]));
                }
            }
            Some(vec![aux])
        }
    }
}

/// Emits the rule `head :- γ(phi).` followed by the aux rules γ created.
fn emit_gamma(head: Atom, phi: &BoolExpr, counter: &mut usize, program: &mut AspProgram) {
    let mut aux_rules = Vec::new();
    if let Some(body) = gamma(phi, counter, &mut aux_rules) {
        program.push(Rule::new(vec![head], body, vec![]));
        program.rules.extend(aux_rules);
    }
}

fn safe_form(phi: BoolExpr, caps: &Caps) -> Result<BoolExpr> {
    if phi.is_safe() {
        Ok(phi)
    } else {
        phi.to_dnf(caps.max_dnf_terms)
    }
}

/// Trap-space encoding: answer sets correspond one-to-one to the minimal
/// trap spaces of `f` under the reading p_v ↦ v=1, n_v ↦ v=0, both ↦ v=⋆.
///
/// Per variable, in declaration order: the disjunctive fact, the positive
/// rule with its aux rules, the negative rule with its aux rules. Unsafe
/// formulas fall back to their DNF, which can fail on the term cap.
pub fn encode_tsconj(f: &BooleanNetwork, caps: &Caps) -> Result<AspProgram> {
    let mut program = AspProgram::new();
    let mut counter = 0usize;
    for (name, expr) in f.functions() {
        program.push(Rule::fact(vec![positive_atom(name), negative_atom(name)]));
        let pos = safe_form(expr.to_nnf(), caps)?;
        emit_gamma(positive_atom(name), &pos, &mut counter, &mut program);
        let neg = safe_form(BoolExpr::not(expr.clone()).to_nnf(), caps)?;
        emit_gamma(negative_atom(name), &neg, &mut counter, &mut program);
    }
    Ok(program)
}

/// Fixed-point encoding: the trap-space construction plus a constraint
/// `:- p_v, n_v.` per variable, so only star-free answer sets survive.
/// Safeness is irrelevant here, hence no DNF fallback and no failure mode.
pub fn encode_fasp(f: &BooleanNetwork) -> AspProgram {
    let mut program = AspProgram::new();
    let mut counter = 0usize;
    for (name, expr) in f.functions() {
        program.push(Rule::fact(vec![positive_atom(name), negative_atom(name)]));
        emit_gamma(positive_atom(name), &expr.to_nnf(), &mut counter, &mut program);
        emit_gamma(
            negative_atom(name),
            &BoolExpr::not(expr.clone()).to_nnf(),
            &mut counter,
            &mut program,
        );
        program.push(Rule::constraint(
            vec![positive_atom(name), negative_atom(name)],
            vec![],
        ));
    }
    program
}

/// Constraints pinning phenotype traits: v ↔ 1 keeps only answer sets with
/// `p_v` and without `n_v`, v ↔ 0 dually, v ↔ ⋆ requires both atoms.
/// Star traits are meaningless for fixed points and are rejected there.
pub fn encode_phenotype(
    beta: &Phenotype,
    f: &BooleanNetwork,
    mode: EncodeMode,
) -> Result<AspProgram> {
    let mut program = AspProgram::new();
    for (name, value) in &beta.traits {
        if f.position(name).is_none() {
            return Err(Error::UnknownVariable(name.clone()));
        }
        match value {
            TriValue::One => {
                program.push(Rule::constraint(vec![], vec![positive_atom(name)]));
                program.push(Rule::constraint(vec![negative_atom(name)], vec![]));
            }
            TriValue::Zero => {
                program.push(Rule::constraint(vec![positive_atom(name)], vec![]));
                program.push(Rule::constraint(vec![], vec![negative_atom(name)]));
            }
            TriValue::Star => {
                if mode == EncodeMode::FixedPoints {
                    return Err(Error::InvalidInput(format!(
                        "phenotype trait `{name} = *` has no meaning for fixed points"
                    )));
                }
                program.push(Rule::constraint(vec![], vec![positive_atom(name)]));
                program.push(Rule::constraint(vec![], vec![negative_atom(name)]));
            }
        }
    }
    Ok(program)
}

fn knockout_name(var: &str) -> String {
    format!("{var}__k")
}

fn override_name(var: &str) -> String {
    format!("{var}__o")
}

/// The perturbation-helper transform: each perturbable v gets companions
/// v__k (knock-out) and v__o (override) with
///
/// ```text
/// g_v     = !v__k & (v__o | f_v)
/// g_v__k  = v__k
/// g_v__o  = v__o & !v__k
/// ```
///
/// so a minimal trap space of g fixes each helper pair to one of 00
/// (untouched), 10 (knocked out), or 01 (overridden to 1), never 11. Helper
/// variables are appended after the originals in perturbation order.
pub fn perturb_transform(
    f: &BooleanNetwork,
    x: &PerturbationSet,
) -> Result<BooleanNetwork> {
    for name in &x.names {
        if f.position(name).is_none() {
            return Err(Error::UnknownVariable(name.clone()));
        }
        for helper in [knockout_name(name), override_name(name)] {
            if f.position(&helper).is_some() {
                return Err(Error::InvalidInput(format!(
                    "helper variable `{helper}` collides with an existing variable"
                )));
            }
        }
    }
    let mut pairs: Vec<(String, BoolExpr)> = Vec::new();
    for (name, expr) in f.functions() {
        let g = if x.names.iter().any(|v| v == name) {
            !BoolExpr::var(knockout_name(name))
                & (BoolExpr::var(override_name(name)) | expr.clone())
        } else {
            expr.clone()
        };
        pairs.push((name.to_string(), g));
    }
    for name in &x.names {
        let k = knockout_name(name);
        let o = override_name(name);
        pairs.push((k.clone(), BoolExpr::var(&k)));
        pairs.push((o.clone(), BoolExpr::var(&o) & !BoolExpr::var(&k)));
    }
    BooleanNetwork::from_functions(pairs)
}

/// The helper variables and projection atoms for counting under
/// perturbations of `x`.
#[derive(Debug, Clone)]
pub struct ProjectionSet {
    /// Helper variable names, v__k then v__o per perturbable variable.
    pub delta: Vec<String>,
    /// Projection atoms Ω: p and n atoms of every helper, 4·|x| in total.
    pub atoms: Vec<Atom>,
}

pub fn projection_atoms(x: &PerturbationSet) -> ProjectionSet {
    let mut delta = Vec::with_capacity(2 * x.names.len());
    let mut atoms = Vec::with_capacity(4 * x.names.len());
    for name in &x.names {
        let k = knockout_name(name);
        let o = override_name(name);
        atoms.push(positive_atom(&k));
        atoms.push(negative_atom(&k));
        atoms.push(positive_atom(&o));
        atoms.push(negative_atom(&o));
        delta.push(k);
        delta.push(o);
    }
    ProjectionSet { delta, atoms }
}

impl ProjectionSet {
    pub fn atom_set(&self) -> BTreeSet<Atom> {
        self.atoms.iter().cloned().collect()
    }
}

/// Reads an answer set of a trap-space or fixed-point encoding back as a
/// subspace of `f`: p_v alone means 1, n_v alone means 0, both mean ⋆.
/// A variable with neither atom would break the encoding's own invariant,
/// so it is reported as an internal error.
pub fn answer_set_to_subspace(
    m: &BTreeSet<Atom>,
    f: &BooleanNetwork,
) -> Result<Subspace> {
    let mut values = Vec::with_capacity(f.len());
    for name in f.variables() {
        let pos = m.contains(&positive_atom(name));
        let neg = m.contains(&negative_atom(name));
        values.push(match (pos, neg) {
            (true, false) => TriValue::One,
            (false, true) => TriValue::Zero,
            (true, true) => TriValue::Star,
            (false, false) => {
                return Err(Error::Internal(format!(
                    "answer set fixes neither polarity of `{name}`"
                )))
            }
        });
    }
    Ok(Subspace::new(f.var_table().clone(), values))
}

/// Renders a program as solver-ready text: `;` between head atoms, `:-`
/// before bodies, `not` prefixes, one rule per line. With a projection set,
/// one `#show atom/0.` directive per Ω atom follows the rules.
pub fn render_asp(p: &AspProgram, show: Option<&ProjectionSet>) -> String {
    let mut out = String::new();
    for rule in &p.rules {
        let head = rule
            .head
            .iter()
            .map(Atom::to_string)
            .collect::<Vec<_>>()
            .join(" ; ");
        let body: Vec<String> = rule
            .body_pos
            .iter()
            .map(Atom::to_string)
            .chain(rule.body_neg.iter().map(|a| format!("not {a}")))
            .collect();
        let line = match (head.is_empty(), body.is_empty()) {
            (false, true) => format!("{head}."),
            (false, false) => format!("{head} :- {}.", body.join(", ")),
            (true, false) => format!(":- {}.", body.join(", ")),
            (true, true) => ":- .".to_string(),
        };
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(projection) = show {
        for atom in &projection.atoms {
            out.push_str(&format!("#show {atom}/0.\n"));
        }
    }
    out
}

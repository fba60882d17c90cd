//! Propositional disjunctive logic programs and a brute-force answer-set
//! oracle.
//!
//! The oracle is deliberately naive: it enumerates all 2^k interpretations
//! over the program's atoms, keeps the classical models, and checks
//! subset-minimality against the reduct. That makes it slow and trustworthy,
//! which is exactly its job: it is the reference the encodings are validated
//! against, so it shares no machinery with them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A propositional atom, named.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom(s.to_string())
    }
}

/// A disjunctive rule `h1 ; ... ; hk :- p1, ..., pm, not n1, ..., not nj`.
///
/// An empty head makes it a constraint; an empty body makes it a fact. The
/// atom lists are duplicate-free but keep their construction order, which is
/// what the text renderer emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: Vec<Atom>,
    pub body_pos: Vec<Atom>,
    pub body_neg: Vec<Atom>,
}

fn dedup_keep_order(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut seen = BTreeSet::new();
    atoms.into_iter().filter(|a| seen.insert(a.clone())).collect()
}

impl Rule {
    pub fn new(head: Vec<Atom>, body_pos: Vec<Atom>, body_neg: Vec<Atom>) -> Self {
        Rule {
            head: dedup_keep_order(head),
            body_pos: dedup_keep_order(body_pos),
            body_neg: dedup_keep_order(body_neg),
        }
    }

    /// A rule with an empty body.
    pub fn fact(head: Vec<Atom>) -> Self {
        Rule::new(head, vec![], vec![])
    }

    /// A headless rule, forbidding its body.
    pub fn constraint(body_pos: Vec<Atom>, body_neg: Vec<Atom>) -> Self {
        Rule::new(vec![], body_pos, body_neg)
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AspProgram {
    pub rules: Vec<Rule>,
}

impl AspProgram {
    pub fn new() -> Self {
        AspProgram::default()
    }

    pub fn push(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    pub fn extend(&mut self, other: AspProgram) {
        self.rules.extend(other.rules);
    }

    /// All atoms occurring anywhere in the program, sorted by name.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for r in &self.rules {
            out.extend(r.head.iter().cloned());
            out.extend(r.body_pos.iter().cloned());
            out.extend(r.body_neg.iter().cloned());
        }
        out
    }
}

/// Classical satisfaction: the rule holds under interpretation `m` unless its
/// whole body holds while no head atom does. Negative body atoms in `m` or
/// positive body atoms outside it both defuse the rule.
pub fn satisfies(m: &BTreeSet<Atom>, rule: &Rule) -> bool {
    rule.head.iter().any(|a| m.contains(a))
        || rule.body_neg.iter().any(|a| m.contains(a))
        || rule.body_pos.iter().any(|a| !m.contains(a))
}

/// The Gelfond–Lifschitz reduct: drop every rule whose negative body
/// intersects `m`, strip `not` from the rest.
pub fn gl_reduct(p: &AspProgram, m: &BTreeSet<Atom>) -> AspProgram {
    AspProgram {
        rules: p
            .rules
            .iter()
            .filter(|r| r.body_neg.iter().all(|a| !m.contains(a)))
            .map(|r| Rule::new(r.head.clone(), r.body_pos.clone(), vec![]))
            .collect(),
    }
}

/// Atoms interned to bit positions, rules to bitmask triples. Limited to 64
/// atoms by the mask width; the oracle cap keeps it far below that.
struct Interned {
    atoms: Vec<Atom>,
    rules: Vec<(u64, u64, u64)>,
}

fn intern(p: &AspProgram, caps: &Caps) -> Result<Interned> {
    let atoms: Vec<Atom> = p.atoms().into_iter().collect();
    if atoms.len() > caps.max_oracle_atoms {
        return Err(Error::CapExceeded(format!(
            "{} atoms exceed the {}-atom answer-set oracle cap",
            atoms.len(),
            caps.max_oracle_atoms
        )));
    }
    let pos_of = |a: &Atom| atoms.binary_search(a).expect("atom interning is total");
    let mask = |list: &[Atom]| -> u64 {
        list.iter().fold(0u64, |acc, a| acc | (1u64 << pos_of(a)))
    };
    let rules = p
        .rules
        .iter()
        .map(|r| (mask(&r.head), mask(&r.body_pos), mask(&r.body_neg)))
        .collect();
    Ok(Interned { atoms, rules })
}

/// `m` is a classical model iff every rule is satisfied.
fn is_model(rules: &[(u64, u64, u64)], m: u64) -> bool {
    rules
        .iter()
        .all(|&(h, p, n)| h & m != 0 || n & m != 0 || p & !m != 0)
}

/// Minimality check: no proper subset of `m` may satisfy the reduct.
/// `reduct` holds `(head, body_pos)` of the rules surviving against `m`.
fn is_minimal_model_of_reduct(reduct: &[(u64, u64)], m: u64) -> bool {
    if m == 0 {
        return true;
    }
    // Enumerates all proper submasks of m, including the empty set.
    let mut sub = (m - 1) & m;
    loop {
        if reduct
            .iter()
            .all(|&(h, p)| h & sub != 0 || p & !sub != 0)
        {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & m;
    }
}

/// All answer sets of `p`, by exhaustive enumeration.
///
/// A model of the program is a model of its own reduct and vice versa, so
/// candidates are the classical models; each is then checked for
/// subset-minimality against its reduct.
pub fn answer_sets(p: &AspProgram, caps: &Caps) -> Result<Vec<BTreeSet<Atom>>> {
    let interned = intern(p, caps)?;
    let k = interned.atoms.len();
    let mut out = Vec::new();
    for m in 0u64..(1u64 << k) {
        if !is_model(&interned.rules, m) {
            continue;
        }
        let reduct: Vec<(u64, u64)> = interned
            .rules
            .iter()
            .filter(|&&(_, _, n)| n & m == 0)
            .map(|&(h, p, _)| (h, p))
            .collect();
        if is_minimal_model_of_reduct(&reduct, m) {
            out.push(
                interned
                    .atoms
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, a)| a.clone())
                    .collect(),
            );
        }
    }
    Ok(out)
}

/// Whether `m` is an answer set of `p`.
pub fn is_answer_set(p: &AspProgram, m: &BTreeSet<Atom>, caps: &Caps) -> Result<bool> {
    let interned = intern(p, caps)?;
    let mut mask = 0u64;
    for a in m {
        match interned.atoms.binary_search(a) {
            // Atoms foreign to the program can never be derived.
            Err(_) => return Ok(false),
            Ok(i) => mask |= 1u64 << i,
        }
    }
    if !is_model(&interned.rules, mask) {
        return Ok(false);
    }
    let reduct: Vec<(u64, u64)> = interned
        .rules
        .iter()
        .filter(|&&(_, _, n)| n & mask == 0)
        .map(|&(h, p, _)| (h, p))
        .collect();
    Ok(is_minimal_model_of_reduct(&reduct, mask))
}

/// Number of distinct projections of answer sets onto `projection`.
pub fn projected_count(
    p: &AspProgram,
    projection: &BTreeSet<Atom>,
    caps: &Caps,
) -> Result<BigUint> {
    let sets = answer_sets(p, caps)?;
    let distinct: BTreeSet<BTreeSet<&Atom>> = sets
        .iter()
        .map(|m| m.intersection(projection).collect())
        .collect();
    Ok(BigUint::from(distinct.len()))
}

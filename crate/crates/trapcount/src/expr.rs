//! Update-function expressions.
//!
//! `And`/`Or` are n-ary and get flattened on construction, so
//! `a & (b & c)` and `(a & b) & c` are the same tree. No other rewriting
//! happens implicitly: double negations and constants survive exactly as
//! parsed. Normal forms are explicit calls ([`BoolExpr::to_nnf`],
//! [`BoolExpr::to_dnf`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Var(String),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
}

impl BoolExpr {
    pub fn var(name: impl Into<String>) -> Self {
        BoolExpr::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    /// N-ary conjunction. Nested `And`s are spliced in; a single operand is
    /// returned as-is. Panics on an empty operand list.
    pub fn and(children: Vec<BoolExpr>) -> Self {
        Self::nary(children, true)
    }

    /// N-ary disjunction, same conventions as [`BoolExpr::and`].
    pub fn or(children: Vec<BoolExpr>) -> Self {
        Self::nary(children, false)
    }

    fn nary(children: Vec<BoolExpr>, conj: bool) -> Self {
        assert!(!children.is_empty(), "And/Or need at least one operand");
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match (conj, child) {
                (true, BoolExpr::And(inner)) => flat.extend(inner),
                (false, BoolExpr::Or(inner)) => flat.extend(inner),
                (_, other) => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        if conj {
            BoolExpr::And(flat)
        } else {
            BoolExpr::Or(flat)
        }
    }

    /// Variable names referenced anywhere in the expression.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Var(v) => {
                out.insert(v.as_str());
            }
            BoolExpr::Not(e) => e.collect_variables(out),
            BoolExpr::And(cs) | BoolExpr::Or(cs) => {
                for c in cs {
                    c.collect_variables(out);
                }
            }
        }
    }

    /// Negation normal form: negations pushed onto variables, constants
    /// resolved under negation, `And`/`Or` structure otherwise preserved.
    pub fn to_nnf(&self) -> BoolExpr {
        match self {
            BoolExpr::Const(_) | BoolExpr::Var(_) => self.clone(),
            BoolExpr::And(cs) => BoolExpr::and(cs.iter().map(BoolExpr::to_nnf).collect()),
            BoolExpr::Or(cs) => BoolExpr::or(cs.iter().map(BoolExpr::to_nnf).collect()),
            BoolExpr::Not(inner) => match inner.as_ref() {
                BoolExpr::Const(b) => BoolExpr::Const(!b),
                BoolExpr::Var(_) => self.clone(),
                BoolExpr::Not(e) => e.to_nnf(),
                BoolExpr::And(cs) => {
                    BoolExpr::or(cs.iter().map(|c| BoolExpr::not(c.clone()).to_nnf()).collect())
                }
                BoolExpr::Or(cs) => {
                    BoolExpr::and(cs.iter().map(|c| BoolExpr::not(c.clone()).to_nnf()).collect())
                }
            },
        }
    }

    /// Disjunctive normal form with duplicate-literal, contradictory-term,
    /// and exact-duplicate-term elimination. No prime-implicant machinery.
    ///
    /// Term growth is checked against `max_terms`; exceeding it is an error
    /// rather than an open-ended expansion.
    pub fn to_dnf(&self, max_terms: usize) -> Result<BoolExpr> {
        let terms = dnf_terms(&self.to_nnf(), max_terms)?;
        if terms.is_empty() {
            return Ok(BoolExpr::Const(false));
        }
        // An empty term is ⊤ and absorbs the rest.
        if terms.iter().any(BTreeMap::is_empty) {
            return Ok(BoolExpr::Const(true));
        }
        let disjuncts = terms
            .into_iter()
            .map(|term| {
                BoolExpr::and(
                    term.into_iter()
                        .map(|(v, positive)| {
                            let lit = BoolExpr::var(v);
                            if positive {
                                lit
                            } else {
                                BoolExpr::not(lit)
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(BoolExpr::or(disjuncts))
    }

    /// Whether the expression is safe for joint-body encoding: no conjunction
    /// may have a variable occurring positively in one conjunct and negatively
    /// in another. Scans the negation normal form.
    pub fn is_safe(&self) -> bool {
        polarity_scan(&self.to_nnf()).is_some()
    }
}

/// Term = variable → polarity. `BTreeMap` keeps literals deduplicated and in
/// name order; a variable required both ways marks the term contradictory.
type Term = BTreeMap<String, bool>;

fn dnf_terms(e: &BoolExpr, max_terms: usize) -> Result<BTreeSet<Term>> {
    let cap = |terms: &BTreeSet<Term>| -> Result<()> {
        if terms.len() > max_terms {
            Err(Error::DnfCapExceeded {
                terms: terms.len(),
                cap: max_terms,
            })
        } else {
            Ok(())
        }
    };
    match e {
        BoolExpr::Const(true) => Ok(BTreeSet::from([Term::new()])),
        BoolExpr::Const(false) => Ok(BTreeSet::new()),
        BoolExpr::Var(v) => Ok(BTreeSet::from([Term::from([(v.clone(), true)])])),
        BoolExpr::Not(inner) => match inner.as_ref() {
            BoolExpr::Var(v) => Ok(BTreeSet::from([Term::from([(v.clone(), false)])])),
            other => unreachable!("negation of {other:?} survived NNF"),
        },
        BoolExpr::Or(cs) => {
            let mut terms = BTreeSet::new();
            for c in cs {
                terms.extend(dnf_terms(c, max_terms)?);
                cap(&terms)?;
            }
            Ok(terms)
        }
        BoolExpr::And(cs) => {
            let mut acc = BTreeSet::from([Term::new()]);
            for c in cs {
                let child = dnf_terms(c, max_terms)?;
                let mut next = BTreeSet::new();
                for left in &acc {
                    'merge: for right in &child {
                        let mut term = left.clone();
                        for (v, positive) in right {
                            match term.insert(v.clone(), *positive) {
                                Some(prev) if prev != *positive => continue 'merge,
                                _ => {}
                            }
                        }
                        next.insert(term);
                        cap(&next)?;
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}

/// Positive/negative variable occurrences of an NNF expression, or `None` as
/// soon as some conjunction mixes `x` with `!x` across distinct conjuncts.
fn polarity_scan(e: &BoolExpr) -> Option<(BTreeSet<&str>, BTreeSet<&str>)> {
    match e {
        BoolExpr::Const(_) => Some((BTreeSet::new(), BTreeSet::new())),
        BoolExpr::Var(v) => Some((BTreeSet::from([v.as_str()]), BTreeSet::new())),
        BoolExpr::Not(inner) => match inner.as_ref() {
            BoolExpr::Var(v) => Some((BTreeSet::new(), BTreeSet::from([v.as_str()]))),
            other => unreachable!("negation of {other:?} survived NNF"),
        },
        BoolExpr::Or(cs) => {
            let mut pos = BTreeSet::new();
            let mut neg = BTreeSet::new();
            for c in cs {
                let (p, n) = polarity_scan(c)?;
                pos.extend(p);
                neg.extend(n);
            }
            Some((pos, neg))
        }
        BoolExpr::And(cs) => {
            let mut pos = BTreeSet::new();
            let mut neg = BTreeSet::new();
            for c in cs {
                let (p, n) = polarity_scan(c)?;
                // Opposite polarities of one variable in distinct conjuncts.
                if p.iter().any(|v| neg.contains(v)) || n.iter().any(|v| pos.contains(v)) {
                    return None;
                }
                pos.extend(p);
                neg.extend(n);
            }
            Some((pos, neg))
        }
    }
}

impl fmt::Display for BoolExpr {
    /// Renders in `.bnet` syntax. `And`/`Or` are always parenthesized, so the
    /// output re-parses to the identical tree without precedence juggling.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Const(false) => write!(f, "0"),
            BoolExpr::Const(true) => write!(f, "1"),
            BoolExpr::Var(v) => write!(f, "{v}"),
            BoolExpr::Not(e) => write!(f, "!{e}"),
            BoolExpr::And(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            BoolExpr::Or(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl ops::BitAnd for BoolExpr {
    type Output = BoolExpr;
    fn bitand(self, rhs: BoolExpr) -> BoolExpr {
        BoolExpr::and(vec![self, rhs])
    }
}

impl ops::BitOr for BoolExpr {
    type Output = BoolExpr;
    fn bitor(self, rhs: BoolExpr) -> BoolExpr {
        BoolExpr::or(vec![self, rhs])
    }
}

impl ops::Not for BoolExpr {
    type Output = BoolExpr;
    fn not(self) -> BoolExpr {
        BoolExpr::not(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> BoolExpr {
        BoolExpr::var(name)
    }

    #[test]
    fn construction_flattens() {
        let e = (v("a") & v("b")) & v("c");
        assert_eq!(e, BoolExpr::And(vec![v("a"), v("b"), v("c")]));
        let e = v("a") | (v("b") | v("c"));
        assert_eq!(e, BoolExpr::Or(vec![v("a"), v("b"), v("c")]));
        // Mixed operators keep their nesting.
        let e = v("a") & (v("b") | v("c"));
        assert_eq!(
            e,
            BoolExpr::And(vec![v("a"), BoolExpr::Or(vec![v("b"), v("c")])])
        );
    }

    #[test]
    fn double_negation_is_kept_until_nnf() {
        let e = !!v("a");
        assert_eq!(e, BoolExpr::Not(Box::new(BoolExpr::Not(Box::new(v("a"))))));
        assert_eq!(e.to_nnf(), v("a"));
    }

    #[test]
    fn nnf_pushes_negation_onto_variables() {
        let e = !(v("a") & !v("b"));
        assert_eq!(e.to_nnf(), !v("a") | v("b"));
        let e = !(v("a") | BoolExpr::Const(true));
        assert_eq!(e.to_nnf(), !v("a") & BoolExpr::Const(false));
    }

    #[test]
    fn nnf_only_negates_variables() {
        fn check(e: &BoolExpr) {
            match e {
                BoolExpr::Not(inner) => assert!(matches!(inner.as_ref(), BoolExpr::Var(_))),
                BoolExpr::And(cs) | BoolExpr::Or(cs) => cs.iter().for_each(check),
                _ => {}
            }
        }
        let e = !((v("a") | !v("b")) & !(v("c") | v("a")));
        check(&e.to_nnf());
    }

    #[test]
    fn dnf_drops_contradictions_and_duplicates() {
        // a & !a has no satisfying term.
        let e = v("a") & !v("a");
        assert_eq!(e.to_dnf(100).unwrap(), BoolExpr::Const(false));
        // a & a collapses to a single literal.
        let e = v("a") & v("a");
        assert_eq!(e.to_dnf(100).unwrap(), v("a"));
        // a | !a is not simplified to ⊤: both terms stand, in term order,
        // which puts the negative literal first.
        let e = v("a") | !v("a");
        assert_eq!(e.to_dnf(100).unwrap(), !v("a") | v("a"));
    }

    #[test]
    fn dnf_distributes() {
        let e = (v("a") | v("b")) & v("c");
        let dnf = e.to_dnf(100).unwrap();
        assert_eq!(dnf, (v("a") & v("c")) | (v("b") & v("c")));
    }

    #[test]
    fn dnf_cap_is_enforced() {
        // (a1|b1) & ... & (a17|b17) needs 2^17 terms.
        let e = BoolExpr::and(
            (0..17)
                .map(|i| v(&format!("a{i}")) | v(&format!("b{i}")))
                .collect(),
        );
        match e.to_dnf(100_000) {
            Err(Error::DnfCapExceeded { cap, .. }) => assert_eq!(cap, 100_000),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn safety_detects_opposite_polarities_across_conjuncts() {
        assert!(!(v("a") & !v("a")).is_safe());
        assert!(((v("a") & !v("b")) | (!v("a") & v("b"))).is_safe());
        // Negated XOR turns unsafe after NNF: (!a | b) & (a | !b).
        assert!(!(!((v("a") & !v("b")) | (!v("a") & v("b")))).is_safe());
        // Same variable both ways inside a single disjunctive conjunct is fine.
        assert!(((v("a") | !v("a")) & v("b")).is_safe());
        assert!(v("a").is_safe());
        assert!(BoolExpr::Const(true).is_safe());
    }

    #[test]
    fn display_round_trip_shape() {
        let e = v("a") & !v("b");
        assert_eq!(e.to_string(), "(a & !b)");
        let e = !(v("a") | v("b"));
        assert_eq!(e.to_string(), "!(a | b)");
        let e = v("x_1") & (BoolExpr::Const(true) | !v("y"));
        assert_eq!(e.to_string(), "(x_1 & (1 | !y))");
    }

    #[test]
    fn variables_are_collected_once() {
        let e = (v("b") | !v("a")) & v("b");
        let vars: Vec<&str> = e.variables().into_iter().collect();
        assert_eq!(vars, vec!["a", "b"]);
    }
}

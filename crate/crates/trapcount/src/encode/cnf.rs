//! CNF encoding of fixed points.
//!
//! A state is a fixed point iff v ↔ f_v(state) holds for every variable, so
//! the formula is the conjunction of those equivalences, Tseitin-translated.
//! Variables 1..n are the network variables in declaration order; auxiliary
//! definition variables follow. Every Tseitin definition is a full
//! bi-implication, so each assignment of the network variables extends to at
//! most one model and the total model count equals the count projected onto
//! the support. The independent support is emitted as `c ind` comment lines
//! for external projected counters.

use crate::bnet::Phenotype;
use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::network::BooleanNetwork;
use crate::trival::TriValue;

#[derive(Debug, Clone)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// 1-based indices of the independent support.
    pub support: Vec<usize>,
}

impl CnfFormula {
    pub fn with_support(mut self, support: Vec<usize>) -> Self {
        self.support = support;
        self
    }
}

/// Result of translating a subformula: a literal, or a constant that got
/// simplified away.
#[derive(Clone, Copy)]
enum TLit {
    True,
    False,
    Lit(i32),
}

impl TLit {
    fn negate(self) -> TLit {
        match self {
            TLit::True => TLit::False,
            TLit::False => TLit::True,
            TLit::Lit(l) => TLit::Lit(-l),
        }
    }
}

struct Tseitin<'a> {
    f: &'a BooleanNetwork,
    next_var: usize,
    clauses: Vec<Vec<i32>>,
}

impl<'a> Tseitin<'a> {
    fn fresh(&mut self) -> i32 {
        self.next_var += 1;
        self.next_var as i32
    }

    fn translate(&mut self, e: &BoolExpr) -> TLit {
        match e {
            BoolExpr::Const(true) => TLit::True,
            BoolExpr::Const(false) => TLit::False,
            BoolExpr::Var(v) => {
                let idx = self
                    .f
                    .position(v)
                    .expect("network validation admits only declared variables");
                TLit::Lit((idx + 1) as i32)
            }
            BoolExpr::Not(inner) => self.translate(inner).negate(),
            BoolExpr::And(cs) => self.gate(cs, true),
            BoolExpr::Or(cs) => self.gate(cs, false),
        }
    }

    /// Tseitin gate for an n-ary connective. `conj` picks And vs Or; the dual
    /// is obtained by flipping constants and literal signs.
    fn gate(&mut self, children: &[BoolExpr], conj: bool) -> TLit {
        let mut lits = Vec::with_capacity(children.len());
        let mut annihilated = false;
        for c in children {
            match self.translate(c) {
                TLit::True => {
                    if !conj {
                        annihilated = true;
                    }
                }
                TLit::False => {
                    if conj {
                        annihilated = true;
                    }
                }
                TLit::Lit(l) => lits.push(l),
            }
        }
        // Even when a constant decides the gate, aux definitions already
        // emitted for siblings stay: they remain functionally determined.
        if annihilated {
            return if conj { TLit::False } else { TLit::True };
        }
        match lits.len() {
            0 => {
                if conj {
                    TLit::True
                } else {
                    TLit::False
                }
            }
            1 => TLit::Lit(lits[0]),
            _ => {
                let t = self.fresh();
                if conj {
                    // t ↔ l1 & ... & lk
                    for &l in &lits {
                        self.clauses.push(vec![-t, l]);
                    }
                    let mut long = vec![t];
                    long.extend(lits.iter().map(|&l| -l));
                    self.clauses.push(long);
                } else {
                    // t ↔ l1 | ... | lk
                    for &l in &lits {
                        self.clauses.push(vec![t, -l]);
                    }
                    let mut long = vec![-t];
                    long.extend(lits.iter().copied());
                    self.clauses.push(long);
                }
                TLit::Lit(t)
            }
        }
    }
}

/// CNF whose models, projected onto variables 1..n, are exactly the fixed
/// points of `f` (optionally restricted by a star-free phenotype).
pub fn encode_fix_cnf(f: &BooleanNetwork, beta: Option<&Phenotype>) -> Result<CnfFormula> {
    let n = f.len();
    let mut ts = Tseitin {
        f,
        next_var: n,
        clauses: Vec::new(),
    };
    for (i, (_, expr)) in f.functions().enumerate() {
        let v = (i + 1) as i32;
        match ts.translate(expr) {
            TLit::True => ts.clauses.push(vec![v]),
            TLit::False => ts.clauses.push(vec![-v]),
            TLit::Lit(l) => {
                ts.clauses.push(vec![-v, l]);
                ts.clauses.push(vec![v, -l]);
            }
        }
    }
    if let Some(beta) = beta {
        for (name, value) in &beta.traits {
            let idx = f
                .position(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            let v = (idx + 1) as i32;
            match value {
                TriValue::One => ts.clauses.push(vec![v]),
                TriValue::Zero => ts.clauses.push(vec![-v]),
                TriValue::Star => {
                    return Err(Error::InvalidInput(format!(
                        "phenotype trait `{name} = *` has no meaning for fixed points"
                    )))
                }
            }
        }
    }
    Ok(CnfFormula {
        num_vars: ts.next_var,
        clauses: ts.clauses,
        support: (1..=n).collect(),
    })
}

/// DIMACS text: `c ind` support lines (at most ten indices each), the
/// `p cnf` header, then zero-terminated clauses.
pub fn render_dimacs(cnf: &CnfFormula) -> String {
    let mut out = String::new();
    for chunk in cnf.support.chunks(10) {
        out.push_str("c ind");
        for v in chunk {
            out.push_str(&format!(" {v}"));
        }
        out.push_str(" 0\n");
    }
    out.push_str(&format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len()));
    for clause in &cnf.clauses {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}

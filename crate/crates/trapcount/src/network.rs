//! Boolean networks, states, and subspaces.
//!
//! A network fixes a variable order (declaration order) that every state and
//! subspace string follows. States and subspaces carry a shared handle to the
//! variable table so they can resolve names without dragging the whole
//! network around.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::trival::TriValue;

/// Ordered variable names plus a name → position index.
#[derive(Debug)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new(names: Vec<String>) -> Result<Arc<Self>> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}
impl Eq for VarTable {}

#[derive(Debug, Clone)]
pub struct BooleanNetwork {
    vars: Arc<VarTable>,
    functions: Vec<BoolExpr>,
}

impl BooleanNetwork {
    /// Builds a network from `(name, update function)` pairs in declaration
    /// order. Rejects duplicate names and references to undeclared variables.
    pub fn from_functions(pairs: Vec<(String, BoolExpr)>) -> Result<Self> {
        let (names, functions): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let vars = VarTable::new(names)?;
        for (i, f) in functions.iter().enumerate() {
            for referenced in f.variables() {
                if vars.position(referenced).is_none() {
                    return Err(Error::InvalidInput(format!(
                        "update function for `{}` references undeclared variable `{referenced}`",
                        vars.names()[i]
                    )));
                }
            }
        }
        Ok(BooleanNetwork { vars, functions })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn variables(&self) -> &[String] {
        self.vars.names()
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.vars.position(name)
    }

    pub fn function(&self, name: &str) -> Option<&BoolExpr> {
        self.vars.position(name).map(|i| &self.functions[i])
    }

    pub fn function_at(&self, i: usize) -> &BoolExpr {
        &self.functions[i]
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, &BoolExpr)> {
        self.vars
            .names()
            .iter()
            .map(String::as_str)
            .zip(self.functions.iter())
    }

    /// Parses a subspace string like `"0*1"` in this network's variable order.
    pub fn subspace(&self, s: &str) -> Result<Subspace> {
        let values: Option<Vec<TriValue>> = s.chars().map(TriValue::from_char).collect();
        let values = values.ok_or_else(|| {
            Error::InvalidInput(format!("subspace `{s}` may only contain 0, 1, *"))
        })?;
        if values.len() != self.len() {
            return Err(Error::InvalidInput(format!(
                "subspace `{s}` has {} positions but the network has {} variables",
                values.len(),
                self.len()
            )));
        }
        Ok(Subspace {
            vars: Arc::clone(&self.vars),
            values,
        })
    }

    /// Parses a state string like `"010"` in this network's variable order.
    pub fn state(&self, s: &str) -> Result<State> {
        let sub = self.subspace(s)?;
        sub.to_state().ok_or_else(|| {
            Error::InvalidInput(format!("state `{s}` may only contain 0 and 1"))
        })
    }

    /// The all-⋆ subspace covering the full state space.
    pub fn full_subspace(&self) -> Subspace {
        Subspace {
            vars: Arc::clone(&self.vars),
            values: vec![TriValue::Star; self.len()],
        }
    }
}

/// A complete Boolean assignment in network variable order.
#[derive(Debug, Clone)]
pub struct State {
    vars: Arc<VarTable>,
    values: Vec<bool>,
}

impl State {
    pub fn new(vars: Arc<VarTable>, values: Vec<bool>) -> Self {
        assert_eq!(vars.len(), values.len());
        State { vars, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.vars.position(name).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// The star-free subspace containing exactly this state.
    pub fn to_subspace(&self) -> Subspace {
        Subspace {
            vars: Arc::clone(&self.vars),
            values: self.values.iter().map(|&b| TriValue::from_bool(b)).collect(),
        }
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.vars == other.vars
    }
}
impl Eq for State {}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on values; only meaningful between states of one network.
impl Ord for State {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.cmp(&other.values)
    }
}

impl std::hash::Hash for State {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.values {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A partial assignment: one value in {0, 1, ⋆} per network variable.
///
/// Free (⋆) variables range over both Boolean values, so a subspace with k
/// stars describes 2^k states.
#[derive(Debug, Clone)]
pub struct Subspace {
    vars: Arc<VarTable>,
    values: Vec<TriValue>,
}

impl Subspace {
    pub fn new(vars: Arc<VarTable>, values: Vec<TriValue>) -> Self {
        assert_eq!(vars.len(), values.len());
        Subspace { vars, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<TriValue> {
        self.vars.position(name).map(|i| self.values[i])
    }

    pub fn get_at(&self, i: usize) -> TriValue {
        self.values[i]
    }

    pub fn values(&self) -> &[TriValue] {
        &self.values
    }

    pub fn var_table(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn star_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_star()).count()
    }

    pub fn is_star_free(&self) -> bool {
        self.star_count() == 0
    }

    /// `Some(state)` if the subspace fixes every variable.
    pub fn to_state(&self) -> Option<State> {
        let values: Option<Vec<bool>> = self.values.iter().map(|v| v.to_bool()).collect();
        Some(State {
            vars: Arc::clone(&self.vars),
            values: values?,
        })
    }

    /// Specificity order on subspaces: `self ≤ other` iff every state of
    /// `self` lies in `other` (pointwise `le_spec`).
    pub fn le_spec(&self, other: &Subspace) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.le_spec(*b))
    }

    /// Whether `state` belongs to the set of states this subspace describes.
    pub fn contains(&self, state: &State) -> bool {
        self.values.len() == state.values.len()
            && self
                .values
                .iter()
                .zip(&state.values)
                .all(|(v, &b)| TriValue::from_bool(b).le_spec(*v))
    }

    /// All states in the subspace, in lexicographic order. 2^stars entries.
    pub fn expand(&self) -> Vec<State> {
        let stars: Vec<usize> = (0..self.values.len())
            .filter(|&i| self.values[i].is_star())
            .collect();
        let mut out = Vec::with_capacity(1 << stars.len());
        let base: Vec<bool> = self
            .values
            .iter()
            .map(|v| v.to_bool().unwrap_or(false))
            .collect();
        for combo in 0u64..(1u64 << stars.len()) {
            let mut values = base.clone();
            // High bit of `combo` drives the leftmost star, keeping output order
            // lexicographic.
            for (j, &pos) in stars.iter().enumerate() {
                values[pos] = (combo >> (stars.len() - 1 - j)) & 1 == 1;
            }
            out.push(State {
                vars: Arc::clone(&self.vars),
                values,
            });
        }
        out
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.vars == other.vars
    }
}
impl Eq for Subspace {}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on values with the container order 0 < 1 < ⋆; only
/// meaningful between subspaces of one network.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.cmp(&other.values)
    }
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.values.hash(state);
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

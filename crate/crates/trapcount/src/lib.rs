//! Counting minimal trap spaces and fixed points of Boolean networks.
//!
//! The crate has three layers. The semantic layer ([`expr`], [`network`],
//! [`analysis`]) defines Boolean networks over three-valued logic and
//! enumerates trap spaces, minimal trap spaces, and fixed points by brute
//! force at desk scale. The encoding layer ([`asp`], [`encode`]) translates
//! networks into disjunctive answer-set programs whose answer sets are the
//! minimal trap spaces (or fixed points), and into CNF whose projected models
//! are the fixed points, together with phenotype constraints, perturbation
//! helpers, and projection sets for counting under perturbations. The
//! counting layer ([`sat`], [`count`]) answers the six counting problems
//! exactly where enumeration is feasible and approximately, with a
//! probabilistic (ε, δ) guarantee, via XOR-hashed projected model counting
//! for the fixed-point problems.

pub mod analysis;
pub mod asp;
pub mod bnet;
pub mod caps;
pub mod count;
pub mod encode;
pub mod error;
pub mod expr;
pub mod network;
pub mod sat;
pub mod trival;

pub use caps::Caps;
pub use error::{Error, Result};
pub use expr::BoolExpr;
pub use network::{BooleanNetwork, State, Subspace};
pub use trival::TriValue;

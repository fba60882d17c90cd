//! Three-valued logic over {0, 1, ⋆}.
//!
//! Two orders coexist and must not be confused. The *truth* order is the
//! total order 0 < ⋆ < 1; Kleene conjunction and disjunction are min and max
//! under it, and negation swaps 0 with 1 while fixing ⋆. The *specificity*
//! order is the partial order in which 0 and 1 both sit strictly below ⋆ and
//! are incomparable to each other; it is the one that orders subspaces by
//! inclusion of the states they describe.
//!
//! The derived `Ord` on [`TriValue`] is only a container order (`0 < 1 < *`)
//! for deterministic sorting. Use [`TriValue::le_truth`] and
//! [`TriValue::le_spec`] for the logical orders.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriValue {
    Zero,
    One,
    Star,
}

impl TriValue {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriValue::One
        } else {
            TriValue::Zero
        }
    }

    /// `Some(bool)` for the two Boolean values, `None` for ⋆.
    pub fn to_bool(self) -> Option<bool> {
        match self {
            TriValue::Zero => Some(false),
            TriValue::One => Some(true),
            TriValue::Star => None,
        }
    }

    pub fn is_star(self) -> bool {
        self == TriValue::Star
    }

    /// Kleene negation: swaps 0 and 1, fixes ⋆.
    pub fn negate(self) -> Self {
        match self {
            TriValue::Zero => TriValue::One,
            TriValue::One => TriValue::Zero,
            TriValue::Star => TriValue::Star,
        }
    }

    /// Rank in the truth order 0 < ⋆ < 1.
    fn truth_rank(self) -> u8 {
        match self {
            TriValue::Zero => 0,
            TriValue::Star => 1,
            TriValue::One => 2,
        }
    }

    /// Truth order 0 ≤ ⋆ ≤ 1.
    pub fn le_truth(self, other: Self) -> bool {
        self.truth_rank() <= other.truth_rank()
    }

    /// Kleene conjunction: minimum in the truth order.
    pub fn and(self, other: Self) -> Self {
        if self.le_truth(other) {
            self
        } else {
            other
        }
    }

    /// Kleene disjunction: maximum in the truth order.
    pub fn or(self, other: Self) -> Self {
        if self.le_truth(other) {
            other
        } else {
            self
        }
    }

    /// Specificity order: `x ≤ y` iff `x = y` or `y = ⋆`.
    ///
    /// 0 and 1 are incomparable; ⋆ is the unique top.
    pub fn le_spec(self, other: Self) -> bool {
        self == other || other == TriValue::Star
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(TriValue::Zero),
            '1' => Some(TriValue::One),
            '*' => Some(TriValue::Star),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            TriValue::Zero => '0',
            TriValue::One => '1',
            TriValue::Star => '*',
        }
    }
}

impl fmt::Display for TriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

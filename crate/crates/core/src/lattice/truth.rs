use std::fmt;

use serde::{Deserialize, Serialize};

/// Belnap's four truth values: false, undefined, inconsistent, true.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TruthValue {
    F,
    U,
    C,
    T,
}

use TruthValue::*;

impl TruthValue {
    pub const ALL: [TruthValue; 4] = [F, U, C, T];

    /// Value of an atom under the pair `(x, y)` given its membership in both bounds.
    pub fn from_bounds(in_lower: bool, in_upper: bool) -> Self {
        match (in_lower, in_upper) {
            (true, true) => T,
            (false, false) => F,
            (false, true) => U,
            (true, false) => C,
        }
    }

    /// Inverse of [`TruthValue::from_bounds`].
    pub fn bounds(self) -> (bool, bool) {
        match self {
            T => (true, true),
            F => (false, false),
            U => (false, true),
            C => (true, false),
        }
    }

    pub fn leq_t(self, other: Self) -> bool {
        let (x1, y1) = self.bounds();
        let (x2, y2) = other.bounds();
        (!x1 || x2) && (!y1 || y2)
    }

    pub fn leq_i(self, other: Self) -> bool {
        let (x1, y1) = self.bounds();
        let (x2, y2) = other.bounds();
        (!x1 || x2) && (!y2 || y1)
    }

    /// Greatest lower bound under the truth order.
    pub fn meet_t(self, other: Self) -> Self {
        let (x1, y1) = self.bounds();
        let (x2, y2) = other.bounds();
        Self::from_bounds(x1 && x2, y1 && y2)
    }

    /// Least upper bound under the truth order.
    pub fn join_t(self, other: Self) -> Self {
        let (x1, y1) = self.bounds();
        let (x2, y2) = other.bounds();
        Self::from_bounds(x1 || x2, y1 || y2)
    }

    /// The truth-order involution: swaps F and T, fixes U and C.
    pub fn negate(self) -> Self {
        match self {
            F => T,
            T => F,
            v => v,
        }
    }
}

impl std::ops::Not for TruthValue {
    type Output = TruthValue;

    fn not(self) -> TruthValue {
        self.negate()
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            F => "F",
            U => "U",
            C => "C",
            T => "T",
        };
        f.write_str(s)
    }
}

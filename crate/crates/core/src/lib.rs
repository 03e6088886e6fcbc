//! Exact finite-model workbench for lattice-valued topological structures.
//!
//! Everything here is computed over a *finite* complete DeMorgan algebra with
//! exact rational (or symbolic) element labels, so every verdict is a decided
//! fact about the finite model, never a float approximation. The crate is
//! organised bottom-up:
//!
//! * [`algebra`] — finite DeMorgan algebras: bounded lattices with an
//!   order-reversing involution, their coprime/prime elements, and the chain
//!   constructor used to embed unit-interval examples.
//! * [`fuzzy`] — lattice-valued sets, points and maps over a finite point set,
//!   with pointwise lattice structure, quasi-coincidence, and the induced
//!   image/preimage operators.
//! * [`topology`] — graded topologies given as finite degree tables, their
//!   validation, the level (crisp) topologies, and the graded closure and
//!   interior operators.
//! * [`setclass`] — openness classes of a set at a level (preopen, regular
//!   open, alpha-open, semi-preopen and the closed duals), the semi-pre
//!   interior/closure operators, Q-neighborhoods and the theta operators.
//! * [`mapclass`] — membership of a map between two graded spaces in the
//!   function classes (continuity, weak/semi-pre open and closed variants,
//!   contra classes), with auditable witnesses for every failure.
//! * [`harness`] — theorem evaluators with per-condition vectors, seeded
//!   random model generation, separating-example search, separation and
//!   connectedness predicates, and the full property battery.

pub mod algebra;
pub mod fuzzy;
pub mod harness;
pub mod mapclass;
pub mod setclass;
pub mod topology;

use thiserror::Error;

pub use algebra::{Algebra, AlgebraError, Elt, Label, Rational};
pub use fuzzy::{FuzzyMap, FuzzyPoint, FuzzySet, Space};
pub use topology::FuzzyTopology;

/// Enumeration budgets. Checks that would exceed a cap refuse explicitly;
/// nothing is ever silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest full grid `|L|^|X|` any operation may enumerate.
    pub grid: u64,
    /// Largest topology table for which the exhaustive subfamily check runs.
    pub table: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { grid: 1_000_000, table: 20 }
    }
}

/// Errors shared by the classifier and harness layers.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("grid of {size} sets exceeds the cap of {cap}")]
    GridCapExceeded { size: u128, cap: u64 },
    #[error("height {height} is not a nonzero coprime element")]
    HeightNotCoprime { height: String },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("theorem `{0}` requires a level argument")]
    LevelRequired(String),
    #[error("`{0}` does not strictly imply `{1}` in the implication catalogue")]
    NotAnImplication(String, String),
    #[error("separated predicates require both arguments nonempty")]
    EmptySeparand,
}

//! Propositional formulas, the truth-table entailment oracle, and finite
//! universes of formulas.

mod formula;
mod parser;
pub mod truth;
mod universe;

pub use formula::{Formula, Valuation};
pub use parser::{is_identifier, parse_formula};
pub use truth::{entails, equivalent, TruthTable, MAX_ATOMS};
pub use universe::{close_universe, Overflow, Universe, UniverseFile, UniverseHash, UniverseOptions};

/// Indices of the members of `universe` that entail `u`.
pub fn down_set(u: &Formula, universe: &Universe) -> crate::Result<Vec<usize>> {
    universe.down_set(u)
}

//! Context algebras over finite general languages, propositional formulas as
//! diagonal projection operators, compositional word meanings, and graded
//! entailment between strings.
//!
//! The modules build on one another:
//!
//! - [`logic`]: formulas, the truth-table entailment oracle, finite universes.
//! - [`projections`]: the projections `P_u` and the operator lattice.
//! - [`algebra`]: general languages, context vectors, the generated algebra.
//! - [`semantics`]: interpretations, lexicons, word and sentence vectors.
//! - [`entailment`]: the functional `phi` and exact / Monte-Carlo degrees.

pub mod algebra;
pub mod entailment;
mod error;
pub mod logic;
pub mod projections;
pub mod semantics;

pub use algebra::{
    AlgebraElement, Alphabet, Basis, BasisOptions, Coefficient, Context, ContextFunction,
    GeneralLanguage, Str,
};
pub use entailment::{degree_exact, degree_mc, phi, DegreeResult, Distribution, McOptions};
pub use error::{Error, Result};
pub use logic::{entails, equivalent, parse_formula, Formula, Universe};
pub use projections::{check_identities, projection_of, DiagOperator, IdentityReport};
pub use semantics::{Interpretation, Lexicon};

//! General languages over a free monoid, their context vectors, and the
//! algebra the context vectors generate.

mod basis;
mod coefficient;
mod element;
mod function;
mod language;
mod string;

pub use basis::{expand_in_basis, string_basis, Basis, BasisOptions};
pub use coefficient::Coefficient;
pub use element::{multiply, AlgebraElement};
pub use function::{cf_join, cf_leq, cf_meet, ContextFunction, ZERO_TOL};
pub use language::{GeneralLanguage, LanguageFile};
pub use string::{Alphabet, Context, Str, Symbol};

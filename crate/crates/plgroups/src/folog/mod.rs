//! First-order toolkit: formula syntax and text form, finite structures
//! with Tarskian evaluation, function-symbol elimination, interpretation
//! packages with admissibility, quotient structures, and the sentence
//! reduction whose soundness is fully checkable on finite models.

pub mod group_formula;
pub mod parse;
pub mod random;
pub mod reduction;
pub mod relationalize;
pub mod structure;
pub mod syntax;

pub use parse::parse;
pub use reduction::{identity_interpretation, InterpretationData};
pub use relationalize::{relationalize_sentence, relationalize_signature, relationalize_structure};
pub use structure::{Assignment, FiniteStructure};
pub use syntax::{Formula, Signature, Term};

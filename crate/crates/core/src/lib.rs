//! Conditional answer set programming.
//!
//! An ASP program is grounded and solved; its answer sets become the worlds
//! of a multi-preferential interpretation whose preference relations come
//! from a weighted (or ranked) conditional knowledge base. Implications with
//! the typicality operator `T` are then checked against that model.

pub mod engine;
pub mod fixtures;
pub mod ground;
pub mod klm;
pub mod model;
pub mod parser;
pub mod solver;

pub use engine::{build_model, check_entailment, EngineError, EntailmentVerdict, PreferentialModel};
pub use model::{AnswerSet, Atom, ConditionalKB, Formula, Program};
pub use parser::{parse_kb, parse_program, parse_query, ParseError};

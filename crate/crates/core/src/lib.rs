//! Strict λ-definability workbench: Church numerals, βη-normalization,
//! simple types, a compiler from arithmetic expressions to simply typed
//! terms, and finite-model trajectories.

pub mod compiler;
pub mod encodings;
pub mod gexpr;
pub mod model;
pub mod named;
pub mod reduce;
pub mod syntax;
pub mod term;
pub mod types;

pub use compiler::{compile, verify, CompileError, CompiledFunction, VerificationReport};
pub use encodings::{church, decode_numeral};
pub use gexpr::{EpSet, GExpr, GExprError, GFunction};
pub use model::{FiniteModel, ModelError, Trajectory};
pub use reduce::{betaeta_normal_form, Fuel, ReduceError, Strategy};
pub use syntax::{parse_gexpr, parse_gfunction, parse_term, parse_type, print_term, ParseError};
pub use term::{Term, TermView};
pub use types::{check_type, infer_principal, SimpleType, TypeError};

pub mod arith;
pub mod field;
pub mod group;
pub mod linalg;
pub mod scalar;
pub mod algebra;
pub mod idempotents;
pub mod shoda;
pub mod codes;
pub mod search;
pub mod cli;
mod error;

pub use error::{Error, ParseError};

pub type FqAlgElem = algebra::AlgElem<field::FieldCtx>;
pub type RatAlgElem = algebra::AlgElem<scalar::Rationals>;

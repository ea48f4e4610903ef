//! The monoidal bicategory `V` of double modules in the k-linear reading, with `T_n` realized as
//! centralizers inside tensor products over the inner bases.

mod algebra;
mod beta;
mod module;
mod tn;

use thiserror::Error;

use crate::exactlin::LinError;

pub use algebra::FDAlgebra;
pub use beta::{beta, beta_iso_report, beta_two_routes, Beta, Partition};
pub use module::{Action, Bimodule, DoubleModule};
pub use tn::{hom_dimension_oracle, takeuchi_product, tensor_over, tn, tn_map, Tn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TakeuchiError {
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("{0}")]
    Arity(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("not a module map: {0}")]
    NotModuleMap(String),
    #[error("not well defined on the quotient: {0}")]
    LiftDependence(String),
    #[error("{0}")]
    NotInSubspace(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}

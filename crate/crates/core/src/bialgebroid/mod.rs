//! Bialgebroids as comonoids in `V(R, R)`, comodule algebras over them, and their composition.

mod comodule;
mod compose;
mod products;
mod structure;

use thiserror::Error;

use crate::exactlin::LinError;
use crate::takeuchi::TakeuchiError;

pub use comodule::{check_comodule_algebra, check_unit_splitting, ComoduleAlgebra, OneSided};
pub use compose::{check_associativity, check_unit_laws, compose_modules, Composite};
pub use structure::{check_bialgebroid, check_coalgebroid, Bialgebroid, Coalgebroid, CoalgebroidMaps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BialgebroidError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("{0}")]
    NotInSubspace(String),
    #[error("endpoints do not match: {0}")]
    Endpoints(String),
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Takeuchi(#[from] TakeuchiError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

//! Separable Frobenius bases: cosplit idempotents, `T_n` as a split idempotent, and weak bialgebras.

mod coequalizer;
mod frobenius;
mod idempotents;
mod weak;

use thiserror::Error;

use crate::bialgebroid::BialgebroidError;
use crate::exactlin::LinError;
use crate::takeuchi::TakeuchiError;

pub use coequalizer::{bimodule_catalog, bimodule_homs, check_reflexive_preservation, PreservationTrial};
pub use frobenius::{check_cohom_round_trip, check_separable_frobenius, transpose_from, transpose_to, FrobeniusMonoid};
pub use idempotents::{
    check_idempotent_a, check_sf_comodule, check_tc_unit, check_tn_via_idempotent, cosplit_check, cosplit_pair, idempotent_a,
    idempotent_b, tn_via_idempotent, SFComodule, TnSplit,
};
pub use weak::{check_ordinary_bialgebra, check_weak_bialgebra, WeakBialgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeakError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("not cosplit: {0}")]
    NotCosplit(String),
    #[error("not separable Frobenius: {0}")]
    NotSeparable(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error(transparent)]
    Bialgebroid(#[from] BialgebroidError),
    #[error(transparent)]
    Takeuchi(#[from] TakeuchiError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

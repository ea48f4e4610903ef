//! Quantum categories in `Set`: finite categories, profunctors, `T_n` as iterated pullbacks,
//! composition as a coend quotient, and the bicategory laws.

mod category;
mod laws;
mod linearize;
mod profunctor;

use thiserror::Error;

pub use category::{validate_category, FinCategory, Morphism};
pub use laws::{check_associator, check_bicategory_laws, check_split_coequalizer, check_unit_laws, is_prof_map};
pub use linearize::{function_bialgebroid, function_comodule_algebra, linearize, Linearized};
pub use profunctor::{
    compose_prof, hom_profunctor, t0_span, tn_profunctors, tn_spans, validate_profunctor, Composite, Element,
    Profunctor, Span,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("invalid category: {0}")]
    Invalid(String),
    #[error("endpoint categories do not match")]
    EndpointMismatch,
    #[error("{0}")]
    Arity(String),
    #[error("the parallel arrows differ on {0}")]
    ParallelArrowsDiffer(String),
}

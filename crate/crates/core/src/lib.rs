//! Exact computations with quantum categories in `Set` and in `(k-Mod)^op`.

pub mod bialgebroid;
pub mod campaign;
pub mod exactlin;
pub mod fincat;
pub mod io;
pub mod random;
pub mod report;
pub mod takeuchi;
pub mod weakbialg;

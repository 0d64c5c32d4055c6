//! Finite-model engine for swap-structure semantics of logics of formal
//! inconsistency: multialgebras, swap structures, Nmatrix consequence,
//! bivaluations and Hilbert proof checking.

pub mod boolean_algebra;
pub mod cli;
pub mod exec;
pub mod formula;
pub mod hilbert;
pub mod multialgebra;
pub mod nmatrix;
pub mod render;
pub mod sample;
pub mod swap;
pub mod verify;

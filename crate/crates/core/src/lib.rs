//! Combinatorics of nilpotent pairs in classical Lie algebras.

pub mod catalog;
pub mod centralizer;
pub mod classify;
pub mod datum;
pub mod diagram;
pub mod linalg;
pub mod realization;
pub mod render;
pub mod subdiagram;

//! Deciding and certifying small crossing numbers.

pub mod graph;
pub mod planarity;
pub mod solver;
pub mod drawing;
pub mod grid;
pub mod mso;
pub mod io;

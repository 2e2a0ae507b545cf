//! Dynamical Lie algebras generated by 1- and 2-local Pauli interactions
//! placed on graphs.

pub mod catalog;
pub mod classifier;
pub mod closure;
pub mod frustration;
pub mod graph;
pub mod involution;
pub mod pauli;
pub mod verify;

pub use catalog::{AlgebraLabel, GeneratorSet, Template};
pub use closure::{lie_closure, lie_closure_of, ClosureOptions, ClosureResult, Execution};
pub use graph::InteractionGraph;
pub use pauli::{Letter, PauliString};

//! Theorem evaluators, model generation, separating-example search and the
//! separation/connectedness predicates.

pub mod cache;
pub mod corpus;
pub mod generate;
pub mod laws;
pub mod model;
pub mod search;
pub mod separation;
pub mod suite;
pub mod theorems;

pub use model::Model;

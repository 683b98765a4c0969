//! Exact models of change-of-groups functors between graded modules over
//! polynomial cohomology rings with finite group actions.
//!
//! The building blocks are [`groups`] (finite groups and their rational
//! representations), [`graded`] (presented graded modules, evaluated
//! exactly degree by degree), [`twisted`] (modules over twisted group rings)
//! and [`functors`] (the adjoint string and its units and counits).
//! [`verify`] checks adjunctions and comparisons; [`catalog`] ships the
//! standard examples.

pub mod catalog;
pub mod error;
pub mod functors;
pub mod graded;
pub mod groups;
pub mod linalg;
pub mod poly;
pub mod schema;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};

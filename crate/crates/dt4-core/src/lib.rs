//! Localization engine for K-theoretic Donaldson-Thomas invariants of C^4
//! and its abelian Calabi-Yau quotients.

pub mod error;
pub mod exactalg;
pub mod formulas;
pub mod parallel;
pub mod partitions;
pub mod vertex;

pub use error::{Error, Result};
pub use parallel::Parallelism;

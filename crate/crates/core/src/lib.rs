//! Finite Coxeter groups, weak Bruhat interval modules of their 0-Hecke
//! algebras, and exact verification of their structure.

pub mod config;
pub mod coxeter;
pub mod error;
pub mod export;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod qsym;
pub mod twist;
pub mod verify;
pub mod weak_order;

pub use config::{OutputFormat, RunConfig};
pub use coxeter::{ElementId, GroupModel, GroupTable, Subset};
pub use error::{Error, Result};
pub use linalg::{Field, FieldSpec, Matrix, PrimeField, Rational, Rationals, Subspace};
pub use module::HModule;
pub use weak_order::{UpperIdeal, WeakInterval};

//! Bidirectional transpiler between SysML/KAOS domain models and B System
//! specifications.

pub mod backprop;
pub mod bsystem;
pub mod cli;
pub mod domain_model;
pub mod emit;
pub mod dsl;
pub mod error;
pub mod formula;
pub mod goal;
pub mod translate;

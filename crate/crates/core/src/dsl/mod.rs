//! Parsers for the three text formats: `.dmod`, `.gmod` and `.bsys`.

mod bsys;
mod dmod;
mod gmod;

use thiserror::Error;

use crate::error::SyntaxError;
use crate::goal::GoalModelError;

pub use bsys::{parse_bsystem, parse_events};
pub use dmod::parse_domain_model;
pub use gmod::parse_goal_model;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{line}:{column}: clause {clause} appears twice")]
    DuplicateClause {
        clause: String,
        line: usize,
        column: usize,
    },
    #[error(transparent)]
    Goals(#[from] GoalModelError),
}

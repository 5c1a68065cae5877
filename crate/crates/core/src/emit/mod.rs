//! Printers for components, domain models, goal models, proof obligations
//! and traces.

mod bsys;
mod dmod;
mod gmod;
mod po;
mod trace;

pub use bsys::{print_component, print_events};
pub use dmod::print_domain_model;
pub use gmod::print_goal_model;
pub use po::print_obligations;
pub use trace::{load_trace, print_trace, sha256_hex, TraceHeader, TraceLoadError};

//! Experiment drivers, polytope documents and reports for `mvlab`.

pub mod commands;
pub mod document;
pub mod genspec;
pub mod report;

pub use commands::{execute, run, BodySource, CommandKind, ExperimentConfig, Format};
pub use document::{parse_polytope, serialize_polytope, ParseError, PolytopeDocument};

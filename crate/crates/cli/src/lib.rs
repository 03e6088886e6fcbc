//! Library surface of the workbench CLI: the model document format, the
//! report tree, and the command implementations. The binary in `main.rs`
//! is a thin argument-parsing layer over this.

pub mod commands;
pub mod parse;
pub mod report;

pub use parse::{parse as parse_document, ParseError, Registry};

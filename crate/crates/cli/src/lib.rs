//! Library side of the CLI: report/graph document rendering and DOT export.

pub mod dot;
pub mod output;

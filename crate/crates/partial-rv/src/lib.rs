//! File formats, Graphviz export, a thread-shared ν-calculus engine, the
//! cross-pipeline check and the benchmark harness behind the `partial-rv`
//! command-line tool.

pub mod bench;
pub mod crosscheck;
pub mod dot;
pub mod formats;
pub mod lab;
pub mod shared;

pub use partial_rv_core as core;

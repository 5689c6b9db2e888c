//! Library surface of the workbench binary: config grammar, runners and
//! table writers, importable by the integration tests.

pub mod config;
pub mod output;
pub mod run;

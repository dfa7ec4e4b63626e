//! Library half of the `fibroot` command: the example corpus and the JSON
//! trace export, shared between the binary and its test suites.

pub mod corpus;
pub mod export;

//! Command-line companion to the core support-factorization library.
//!
//! Everything with an IO surface lives here: ingesting PMF tables and sample
//! files, resolving built-in distributions, running the support and
//! screening pipelines, and writing JSON reports plus mask and polyline
//! artifacts. The binary in `main.rs` is a thin argument layer over
//! [`pipeline`].

pub mod config;
pub mod error;
pub mod export;
pub mod ingest;
pub mod pipeline;
pub mod registry;
pub mod report;
pub mod sample;

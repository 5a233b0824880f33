//! Command-line companion to the `terraprop` library: file formats,
//! configuration, synthetic data, rendering, and the `terraprop` binary's
//! subcommand implementations.
//!
//! Everything here holds the same determinism contract as the binary:
//! a fixed `--seed` reproduces every output byte for byte, and files are
//! written atomically via a temp file plus rename, so an interrupted run
//! never leaves a partial artifact behind.

pub mod cli;
pub mod codec;
pub mod commands;
pub mod config;
pub mod heatmap;
pub mod synth;
pub mod threads;

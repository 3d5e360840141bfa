//! Command-line front end for the critical-catenoid spectral library.
//!
//! The binary exposes six subcommands — `constants`, `spectrum`, `index`,
//! `dirichlet`, `verify` and `report` — over a shared configuration of grid
//! resolution, mode count, tolerance, output format and random seed. All
//! output is deterministic for a fixed configuration; see [`emit`] for the
//! canonical number formatting and [`checks`] for the verification suite.

pub mod checks;
pub mod commands;
pub mod emit;

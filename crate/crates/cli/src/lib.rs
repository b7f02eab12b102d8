//! Command-line front end for `berkstat-core`.
//!
//! The crate splits into:
//!
//! * [`parse`] — the text grammar for scalars, polynomials, and points;
//! * [`decimal`] — reproducible fixed-point rendering of exact rationals;
//! * [`config`] — the JSON config file and flag/default resolution;
//! * [`report`] — the bit-exact CSV and JSON artifacts;
//! * [`commands`] — one function per subcommand;
//! * [`error`] — the exit-code contract.
//!
//! The binary (`berkstat`) is a thin clap wrapper over [`commands`].

pub mod commands;
pub mod config;
pub mod decimal;
pub mod error;
pub mod parse;
pub mod report;

//! Command-line front end for the `bnet` attractor analysis library.
//!
//! Split out as a library so integration tests can drive [`app::run`] and
//! deserialize [`report::RunReport`] from captured JSON.

pub mod app;
pub mod report;

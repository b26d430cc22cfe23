//! File formats, parallel search and the command line for the
//! `labindex-core` solver.

pub mod cli;
pub mod formats;
pub mod json;
pub mod parallel;
pub mod scan;
pub mod verify;

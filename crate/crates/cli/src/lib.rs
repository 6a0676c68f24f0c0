//! Batch verification front end: suites over parameter grids, deterministic
//! machine-readable reports, and fixed-width convergence tables.

pub mod config;
pub mod render;
pub mod report;
pub mod suites;

pub use config::{OutputFormat, SuiteConfig};
pub use render::render_table;
pub use report::{Record, Report};
pub use suites::{run_suite, SuiteName};

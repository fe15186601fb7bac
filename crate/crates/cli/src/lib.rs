//! Batch verification of line-bundle Courant structures: scenario files
//! name suites of identities, which are evaluated on seeded random inputs
//! and reported as JSON.

pub mod demo;
pub mod primitive;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod suites;

pub use report::{Entry, Report};
pub use runner::{run, Threads};
pub use scenario::{InputError, Scenario};

/// Exit code when every residual vanishes.
pub const EXIT_PASS: i32 = 0;
/// Exit code when some identity fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_INPUT: i32 = 2;

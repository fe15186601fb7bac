//! Exact symbolic verification of Courant, `L∞` and Jacobi structures on
//! the trivial line bundle. See the guide in `book/` for a tour.

pub mod atiyah;
pub mod dcourant;
pub mod error;
pub mod gauge;
pub mod jacobi;
pub mod linalg;
pub mod linf;
pub mod observables;
pub mod poly;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod serial;

pub use atiyah::{AtiyahForm, INF};
pub use dcourant::{Connection, DSection, OmniLie};
pub use error::{Error, Result};
pub use gauge::Derivation;
pub use jacobi::JacobiBiderivation;
pub use report::CheckOutcome;
pub use sample::{SampleParams, Sampler};
pub use scalar::Scalar;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/courant.md")]
    mod courant {}
    #[doc = include_str!("../../../book/src/curvature.md")]
    mod curvature {}
    #[doc = include_str!("../../../book/src/linf.md")]
    mod linf {}
    #[doc = include_str!("../../../book/src/observables.md")]
    mod observables {}
    #[doc = include_str!("../../../book/src/jacobi.md")]
    mod jacobi {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

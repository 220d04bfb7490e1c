//! Runs every fenced Rust block of the guide as a doc-test, keeping the
//! book and the library in lockstep.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/nabla-calculus.md")]
pub mod nabla_calculus {}

#[doc = include_str!("../../../book/src/greens-functions.md")]
pub mod greens_functions {}

#[doc = include_str!("../../../book/src/lyapunov-bounds.md")]
pub mod lyapunov_bounds {}

#[doc = include_str!("../../../book/src/mittag-leffler.md")]
pub mod mittag_leffler {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! Discrete fractional calculus on integer grids with backward (nabla)
//! differences: Riemann-Liouville fractional sums and differences, the
//! left-/right-focal Green's functions of the associated two-point boundary
//! value problems, Lyapunov-type bounds, spectra of the Green operators, and
//! nabla Mittag-Leffler functions with certified series truncation.
//!
//! The guide in `book/` walks through the concepts; every code block there
//! runs as a doc-test of this crate.
//!
//! ```
//! use nabla_bvp::{solve_greens, verify_solution};
//! use nabla_bvp::{BvpSpec, Domain, FocalKind, GridFunction};
//!
//! // right-focal problem of order 3/2 on (0, 4) with constant forcing
//! let domain = Domain::new(0, 4)?;
//! let h = GridFunction::new(2, vec![1.0; 3])?;
//! let spec = BvpSpec::new(FocalKind::Right, domain, 1.5, h)?;
//!
//! let u = solve_greens(&spec)?;
//! assert_eq!(u.get(1), Some(0.0)); // boundary condition, exact
//!
//! let report = verify_solution(&spec, &u, 1e-9)?;
//! assert!(report.pass);
//! # Ok::<(), nabla_bvp::Error>(())
//! ```

// validations use negated comparisons (`!(x > lo && x < hi)`) so that NaN
// fails them; the un-negated forms would accept it
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bvp;
pub mod calculus;
mod dd;
mod error;
pub mod greens;
pub mod io;
pub mod mittag;
pub mod rng;
pub mod special;
pub mod suite;

pub use bvp::{
    check_nonexistence, eigen_bound, eigen_spectrum, lyapunov_bound, operator_matrix,
    solution_coefficients, solve_greens, verify_solution, BvpSpec, Eigenvalue, NonexistenceReport,
    SolutionCoefficients, Spectrum, VerificationReport,
};
pub use calculus::{
    frac_diff, frac_sum, nabla_diff, power_rule, sup_norm, Domain, FracDiffMethod, FracOrder,
    GridFunction, PowerRuleMode,
};
pub use error::{Error, Result};
pub use greens::{
    closed_form_bounds, greens_left, greens_right, kernel_stats, ClosedFormBounds, FocalKind,
    GreensKernel, KernelStats,
};
pub use mittag::{
    characteristic_left, characteristic_right, exclusion_radius, ml_eval, ml_frac_diff_deviation,
    ml_grid, zero_exclusion_scan, MLParams, ZeroExclusionReport,
};
pub use special::{backward_jump, gamma_ratio, lgamma_signed, rising, SignedMagnitude};

#[cfg(doctest)]
mod book_doctests;

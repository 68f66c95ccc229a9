//! Numerical toolkit for relations between the zeros of L-functions that
//! carry Euler products and functional equations.
//!
//! The crate is organised around a handful of cooperating subsystems:
//!
//! * [`arithmetic`] — primes, the von Mangoldt function, Dirichlet
//!   characters, Gauss sums and concrete coefficient streams (Ramanujan tau
//!   via the eta product, file-backed streams).
//! * [`euler`] — local Euler-factor polynomial algebra: conversions between
//!   polynomial coefficients, Dirichlet coefficients, power sums and
//!   Rankin-Selberg tensor coefficients.
//! * [`testfn`] — smooth compactly supported test functions, their Mellin
//!   transforms and the weighted integrals appearing in zero sums.
//! * [`lfunctions`] — Selberg-class registry: Gamma-factor data, Dirichlet
//!   L evaluation via Hurwitz zeta, functional-equation residuals and the
//!   archimedean functional.
//! * [`zeros`] — acquiring, persisting and validating nontrivial zeros
//!   (Hardy Z sign changes, argument-principle counts, file ingestion).
//! * [`explicit_formula`] — both sides of the Weil explicit formula, local
//!   explicit formulas at a prime, and the explicit zero-sum identities.
//! * [`interpolation`] — interpolation functions of Dirichlet coefficients.
//! * [`relations`] — the theorem-verification harness (asymptotic
//!   comparisons over x-grids, exact finite-sum decompositions).

pub mod arithmetic;
pub mod error;
pub mod euler;
pub mod explicit_formula;
pub mod interpolation;
pub mod kahan;
pub mod lfunctions;
pub mod quad;
pub mod relations;
pub mod special;
pub mod testfn;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

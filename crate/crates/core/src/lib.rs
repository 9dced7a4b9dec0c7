//! Exact computations for the free unitary Brownian motion `u_t` and the
//! free Jacobi process built from it.
//!
//! Everything lives over [`Scalar`], the field of rational functions in `t`
//! and `Q = e^{-t/2}`, so identities between the closed forms and their
//! brute-force oracles are checked as exact equalities.

pub mod error;
pub mod fubm;
pub mod jacobi;
pub mod ncpart;
pub mod scalar;
pub mod schur;
pub mod series;
pub mod specfun;
pub mod table;
pub mod verify;

pub use error::{Error, Result, ScalarError, SeriesError};
pub use scalar::Scalar;
pub use series::Series;
pub use table::{Check, CoeffTable, Finding, Provenance};

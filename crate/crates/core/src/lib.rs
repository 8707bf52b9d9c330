//! Strong linearizations of rational matrices `G(λ) = D(λ) + C(λI - A)^{-1}B`
//! whose polynomial part is written in a three-term-recurrence or
//! degree-graded basis.
//!
//! The pipeline is: describe `G` ([`ratmodel`]), build a pencil `λX + Y`
//! ([`linearize`]), solve it and map eigenvectors back to `G` ([`solve`]), then
//! cross-check against a determinant-based oracle ([`verify`]).
//!
//! Everything is generic over the real scalar `T` (entries are `Complex<T>`);
//! the aliases below fix `T = f64`, which is what the CLI and JSON layer use.

// Index loops mirror the subscripts of the recurrences they implement.
#![allow(clippy::needless_range_loop)]

pub mod basis;
pub mod config;
pub mod error;
pub mod io;
pub mod linalg;
pub mod linearize;
pub mod random;
pub mod ratmodel;
pub mod realize;
pub mod scalar;
pub mod solve;
pub mod verify;

pub use config::Config;
pub use error::{Error, Result};

pub type Complex64 = scalar::C<f64>;
pub type CMatrix = scalar::CMat<f64>;
pub type CVector = scalar::CVec<f64>;
pub type PolyBasisF64 = basis::PolyBasis<f64>;
pub type ThreeTermBasisF64 = basis::ThreeTermBasis<f64>;
pub type PolyMatF64 = ratmodel::PolyMat<f64>;
pub type StateSpaceF64 = ratmodel::StateSpace<f64>;
pub type RationalMatrixF64 = ratmodel::RationalMatrix<f64>;
pub type PencilF64 = linearize::Pencil<f64>;
pub type EigenSolutionF64 = solve::EigenSolution<f64>;

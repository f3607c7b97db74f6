//! Exact operator algebra for the four-body oscillator in the
//! rho-representation: the six squared interparticle distances parameterize
//! the space of relative motion at zero total angular momentum, and every
//! operator of the model is a polynomial-coefficient differential operator
//! over them.
//!
//! The crate provides
//! - the exact polynomial and differential-operator rings ([`poly`],
//!   [`diffop`]),
//! - the tetrahedron geometry: Cayley-Menger volume, co-metric, determinant
//!   factorizations, gauge factors and effective potentials ([`geometry`]),
//! - builders for the radial Laplacian, the gauged oscillator operator and
//!   its infinite-mass limits, and the spring-constant maps ([`model`]),
//! - the hidden-algebra realization and its equivalence checks ([`sl7`]),
//! - exact spectra from graded-basis block matrices ([`spectra`]),
//! - the first- and second-order symmetries of the free operator
//!   ([`symmetries`]),
//! - the one- and two-variable reduced representations with the
//!   quasi-exactly-solvable sextic extension ([`reduced`]),
//! - Jacobi-coordinate reference checks ([`jacobi`]) and the
//!   Born-Oppenheimer comparison ([`bo`]),
//! - a structured verification report ([`report`]) and run configuration
//!   ([`config`]) shared with the command-line front end.

pub mod bo;
pub mod config;
pub mod diffop;
mod error;
pub mod geometry;
pub mod jacobi;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod rational;
pub mod reduced;
pub mod report;
pub mod sampling;
pub mod sl7;
pub mod spectra;
pub mod symmetries;

pub use error::{Error, Result};

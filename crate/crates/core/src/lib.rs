//! Dynamics of a single laser-driven trapped ion, computed by chaining
//! unitary transformations until the Hamiltonian is block-diagonal in the
//! atomic basis, then diagonalizing each branch on a truncated Fock space.
//!
//! The crate is organized around one pipeline:
//!
//! * [`fockspace`] builds ladder, quadrature, parity, and displacement
//!   operators with explicit truncation guard bands;
//! * [`model`] assembles the physical Hamiltonian, the transform chain, and
//!   every intermediate form both by closed formula and by conjugation;
//! * [`spectral`] solves the branch eigenproblems and cross-checks each pair
//!   against the three-term coefficient recursion the transformed
//!   Hamiltonian admits;
//! * [`dynamics`] prepares states, moves them between frames, and evolves
//!   them through the eigenbasis;
//! * [`oracle`] holds the independent references (exact propagation,
//!   analytic rotating-wave solution) everything is validated against;
//! * [`cli`] exposes the whole pipeline behind a reproducible JSON-config
//!   command line.

use thiserror::Error;

pub mod cli;
pub mod dynamics;
pub mod fockspace;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod spectral;

pub use dynamics::{InitialStateSpec, MotionalSpec, TimeSeries};
pub use fockspace::{Operator, Truncation};
pub use model::{SpinFockState, SystemParams};
pub use spectral::{Branch, EigenPair};

/// Any failure the pipeline can produce.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Fock(#[from] fockspace::FockError),
    #[error(transparent)]
    Model(#[from] model::ModelError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Dynamics(#[from] dynamics::DynamicsError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Config(#[from] cli::ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

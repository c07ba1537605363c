//! Desk-scale simulator for superconducting circuit QED.
//!
//! The crate is organised bottom-up:
//!
//! - [`numkernel`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   Kronecker products and spectral time evolution (ħ = 1 throughout).
//! - [`fockspace`]: truncated oscillator space, ladder and quadrature
//!   operators, coherent states, cavity mode ladders.
//! - [`qubitcore`]: Pauli algebra, Bloch coordinates, rotations, Rabi and
//!   Ramsey traces, pure-state density matrices.
//! - [`josephson`]: semiclassical junction relations, tilted washboard,
//!   SQUID tuning, flux-qubit double well, two-island tunnelling ODEs.
//! - [`chargeqb`]: Cooper-pair box / transmon spectra and gate simulations.
//! - [`jcmodel`]: resonant Jaynes-Cummings dynamics.
//! - [`decoherence`]: T1 decay, Ramsey dephasing ensembles, Bell tables.
//!
//! Every operation is a pure function of its inputs. Monte-Carlo routines
//! take an explicit [`rng::RngSpec`] and are bit-reproducible regardless of
//! the number of worker threads.

pub mod chargeqb;
pub mod decoherence;
mod error;
pub mod fockspace;
pub mod jcmodel;
pub mod josephson;
pub mod numkernel;
pub mod optimize;
pub mod qubitcore;
pub mod rng;
pub mod series;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use numkernel::{DenseMatrix, HermitianEigen, Ket};
pub use series::TimeSeries;

//! Dark-state quantum battery dynamics at desk scale.
//!
//! A three-level atom driven into an electromagnetically-induced-transparency
//! configuration yields an effective two-level battery whose excited level is
//! the long-lived dark state. This crate covers the whole chain: the driven
//! three-level spectrum, analytic cavity charging of one or many batteries,
//! collective (bosonized) dynamics, exact truncated-Fock numerics with
//! dipole-dipole coupling and pulsed drives, ergotropy extraction, and
//! envelope-decay fitting of the resulting time series.
//!
//! All quantities are dimensionless, expressed in units of a reference
//! frequency (the cavity frequency unless stated otherwise), with hbar = 1.

pub mod collective;
pub mod eit;
pub mod error;
pub mod excitation;
pub mod fitkit;
pub mod focksim;
pub mod jc;
pub mod linops;
pub mod thermo;

pub use num_complex::Complex64 as C64;

pub use eit::{EffectiveBattery, EitParams, EitSpectrum};
pub use error::{Error, Result};
pub use fitkit::{DecayFit, TimeGrid, TimeSeries};
pub use focksim::{BasisKind, PulseSpec, SystemSpec};
pub use jc::{DressedPair, JcParams};
pub use thermo::ErgotropyReport;

pub use linops::{ComplexMatrix, EigenSystem, Factor, NumericPolicy};


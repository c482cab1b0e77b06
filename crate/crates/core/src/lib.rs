//! Open-system entanglement dynamics of two two-level atoms on relativistic
//! trajectories (circular orbits, uniform acceleration, static atoms in a
//! thermal bath) coupled to electromagnetic vacuum fluctuations.
//!
//! Units are natural (ħ = c = 1) with the atomic transition frequency ω = 1.
//! Rates are measured in Γ₀ = |d|²ω³/(3π) and time in 1/Γ₀.
//!
//! The pipeline is
//! [`frames`] → [`wightman`] → [`spectral`] → [`lindblad`] → [`entanglement`],
//! driven by [`runner`].

pub mod entanglement;
pub mod error;
pub mod frames;
pub mod lindblad;
pub mod poly;
pub mod quadrature;
pub mod residue;
pub mod runner;
pub mod spectral;
pub mod wightman;

pub use error::{Error, Result};
pub use num_complex::Complex64;

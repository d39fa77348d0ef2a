//! Simulation and verification kit for a spin-1/2 in a precessing magnetic
//! field coupled to Lindblad-type environments.
//!
//! The library covers:
//!
//! * [`algebra`] — complex 2x2 matrices, density-matrix validity, the Bloch
//!   picture and linear entropy;
//! * [`model`] — the driven-spin Hamiltonians, the lab/rotating/diagonal/
//!   instantaneous frames and state conversion between them;
//! * [`lindblad`] — thermal and dephasing dissipators in the diagonal frame
//!   and the instantaneous basis;
//! * [`evolve`] — fixed-step RK4 and adaptive RK45 integration plus the
//!   exact diagonal-frame propagator;
//! * [`adiabatic`] — the adiabatic/weak-coupling closed forms, geometric and
//!   damping phase rates, and analytic spectrum parameters;
//! * [`spectrum`] — magnetization series, discrete Fourier transforms and
//!   Lorentzian line fitting.

pub mod algebra;
pub mod error;
pub mod model;

pub mod adiabatic;
pub mod evolve;
pub mod lindblad;
pub mod spectrum;

pub use algebra::{BlochVector, DensityMatrix, Mat2, Tolerances};
pub use error::{Error, Result};
pub use evolve::{evolve, evolve_exact_diagonal, IntegratorOptions, Method, Trajectory};
pub use lindblad::{Channel, Generator, GeneratorSpec};
pub use model::{convert_state, DerivedParams, Frame, ModelParams, Regime};

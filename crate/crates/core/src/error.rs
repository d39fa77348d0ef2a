//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A density matrix failed one of its validity checks.
    #[error("state is not Hermitian: max |rho - rho^dagger| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("state trace differs from one: |tr rho - 1| = {deviation:.3e} exceeds {tolerance:.3e}")]
    TraceNotOne { deviation: f64, tolerance: f64 },

    #[error("state is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below {floor:.3e}")]
    NotPositive { min_eigenvalue: f64, floor: f64 },

    /// A Bloch vector longer than one does not describe a physical state.
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormTooLarge { norm: f64 },

    #[error("invalid model parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// lambda_1 = 0: the effective field vanishes and the diagonal frame
    /// does not exist.
    #[error("degenerate effective field (lambda_1 = 0); the diagonal frame is undefined")]
    DegenerateField,

    /// A closed-form solution was requested outside its regime of validity.
    #[error("{ratio} = {value:.3e} exceeds the {regime} threshold {threshold:.3e}; the closed form is not valid here")]
    RegimeViolated {
        regime: &'static str,
        ratio: &'static str,
        value: f64,
        threshold: f64,
    },

    #[error("integration failed: {0}")]
    Integration(String),

    /// The integrator produced a state violating validity tolerances.
    #[error("state corrupted at t = {t}: {source}")]
    StateCorruption {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("time series grid is not uniform (max deviation {deviation:.3e})")]
    NonUniformGrid { deviation: f64 },

    #[error("peak fit did not converge after {iterations} iterations (residual {residual:.3e}, best center {center})")]
    FitDidNotConverge {
        iterations: usize,
        residual: f64,
        center: f64,
    },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

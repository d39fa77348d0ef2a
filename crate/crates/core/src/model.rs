//! The driven spin-1/2 model: Hamiltonians in each frame, the frame
//! transformations, derived parameters, and state conversion.
//!
//! Four representations are used throughout:
//!
//! * **Lab** — the time-dependent Hamiltonian `H(t) = muB (n(t) . sigma)`
//!   with the field precessing about z at angular frequency `omega` and
//!   polar angle `theta`.
//! * **Rotating** — co-rotating frame where the Hamiltonian is static.
//! * **Diagonal** — the rotating-frame effective Hamiltonian brought to
//!   `diag(lambda_1, -lambda_1)`; the dissipators are defined here.
//! * **Instantaneous** — the time-dependent eigenbasis of the lab
//!   Hamiltonian, where geometric phases are read off.
//!
//! The instantaneous eigenbasis has a per-column phase freedom. It is fixed
//! here by the explicit matrix of [`ModelParams::instantaneous_basis`]: the
//! choice whose columns carry the `e^{+i omega t}` winding entirely on the
//! lower-left / upper-right entries. That gauge is the one in which
//! `sigma_z` maps to [`ModelParams::sigma_n`] and the adiabatic coherence
//! accumulates the geometric phase `-omega (1 - cos theta) t` on top of the
//! dynamical `-2 muB t`; off-diagonal elements at `t != nT` depend on this
//! choice while traces do not.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::algebra::{DensityMatrix, Mat2, ZERO};
use crate::error::{Error, Result};

/// Representation a state or generator lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    Lab,
    Rotating,
    Diagonal,
    Instantaneous,
}

impl Frame {
    pub const ALL: [Frame; 4] = [
        Frame::Lab,
        Frame::Rotating,
        Frame::Diagonal,
        Frame::Instantaneous,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Frame::Lab => "lab",
            Frame::Rotating => "rotating",
            Frame::Diagonal => "diagonal",
            Frame::Instantaneous => "instantaneous",
        }
    }
}

/// Physical constants of the scenario, natural units (`hbar = c = 1`).
/// `mu_b` is the product of the magnetic moment and the field norm and sets
/// the energy scale; times are measured against it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Energy `muB > 0`.
    pub mu_b: f64,
    /// Field precession angular frequency.
    pub omega: f64,
    /// Field polar angle, radians, in `[0, pi]`.
    pub theta: f64,
    /// Dissipation rate `k >= 0`.
    pub k: f64,
    /// Mean thermal occupation `nbar >= 0`.
    pub nbar: f64,
    /// Initial-state angle: `psi(0) = cos(alpha)|+> + sin(alpha)|->` in the
    /// `sigma_z` basis.
    pub alpha: f64,
    /// Geometric-phase tracer, normally 0 or 1. It multiplies every phase of
    /// geometric origin so observables can be differenced against the
    /// tracer-off counterfactual; 1 is the physical value.
    pub tracer_a: f64,
}

impl ModelParams {
    pub fn new(
        mu_b: f64,
        omega: f64,
        theta: f64,
        k: f64,
        nbar: f64,
        alpha: f64,
        tracer_a: f64,
    ) -> Result<Self> {
        if !(mu_b > 0.0) || !mu_b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu_b",
                value: mu_b,
            });
        }
        if k < 0.0 || !k.is_finite() {
            return Err(Error::InvalidParameter { name: "k", value: k });
        }
        if nbar < 0.0 || !nbar.is_finite() {
            return Err(Error::InvalidParameter {
                name: "nbar",
                value: nbar,
            });
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
            });
        }
        if !omega.is_finite() || !alpha.is_finite() || !tracer_a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega/alpha/tracer_a",
                value: f64::NAN,
            });
        }
        Ok(Self {
            mu_b,
            omega,
            theta,
            k,
            nbar,
            alpha,
            tracer_a,
        })
    }

    /// Drive period `2 pi / omega`.
    pub fn drive_period(&self) -> f64 {
        2.0 * PI / self.omega
    }

    /// Lab-frame Hamiltonian
    /// `muB [[cos t, sin t e^{-i w t}], [sin t e^{i w t}, -cos t]]`;
    /// Hermitian with eigenvalues `+-muB` for all `t`.
    pub fn hamiltonian_lab(&self, t: f64) -> Mat2 {
        let (st, ct) = self.theta.sin_cos();
        let phase = C64::from_polar(1.0, self.omega * t);
        Mat2::new(
            C64::new(ct, 0.0),
            phase.conj() * st,
            phase * st,
            C64::new(-ct, 0.0),
        )
        .scale_re(self.mu_b)
    }

    /// Rotating-frame Hamiltonian `muB (sin t sigma_x + cos t sigma_z)`.
    pub fn hamiltonian_rotating(&self) -> Mat2 {
        let (st, ct) = self.theta.sin_cos();
        Mat2::from_bloch_dir(st, 0.0, ct).scale_re(self.mu_b)
    }

    /// Derived quantities `lambda_1`, `Lambda`, and the solid angle.
    pub fn derived(&self) -> Result<DerivedParams> {
        let bx = self.mu_b * self.theta.sin();
        let bz = self.mu_b * self.theta.cos() - 0.5 * self.omega;
        let lambda1 = (bx * bx + bz * bz).sqrt();
        if lambda1 <= 1e-12 * self.mu_b {
            return Err(Error::DegenerateField);
        }
        Ok(DerivedParams {
            lambda1,
            big_lambda: bz / lambda1,
            solid_angle: 2.0 * PI * (1.0 - self.theta.cos()),
        })
    }

    /// The involutive real rotation `D` bringing the rotating-frame
    /// effective Hamiltonian to `diag(lambda_1, -lambda_1)`:
    /// `D = sqrt((1-Lambda)/2) sigma_x + sqrt((1+Lambda)/2) sigma_z`,
    /// `D = D^T`, `D^2 = 1`.
    pub fn diagonalizing_matrix(&self) -> Result<Mat2> {
        let d = self.derived()?;
        let sx = ((1.0 - d.big_lambda) * 0.5).max(0.0).sqrt();
        let sz = ((1.0 + d.big_lambda) * 0.5).max(0.0).sqrt();
        Ok(Mat2::sigma_x().scale_re(sx) + Mat2::sigma_z().scale_re(sz))
    }

    /// Instantaneous eigenbasis of the lab Hamiltonian, gauge-fixed as
    ///
    /// ```text
    /// V(t) = [[ cos(t/2),            -sin(t/2) e^{-i w t} ],
    ///         [ sin(t/2) e^{i w t},   cos(t/2)            ]]
    /// ```
    ///
    /// Unitary; `V(t)^dag H(t) V(t) = diag(muB, -muB)` and
    /// `V(t)^dag sigma_z V(t) = sigma_n(t)` at every `t`.
    pub fn instantaneous_basis(&self, t: f64) -> Mat2 {
        let c = (0.5 * self.theta).cos();
        let s = (0.5 * self.theta).sin();
        let w = C64::from_polar(1.0, self.omega * t);
        Mat2::new(
            C64::new(c, 0.0),
            -w.conj() * s,
            w * s,
            C64::new(c, 0.0),
        )
    }

    /// `sigma_z` of the instantaneous basis:
    /// `[[cos t, -sin t e^{-i w t}], [-sin t e^{i w t}, -cos t]]`.
    /// Hermitian, traceless, squares to the identity.
    pub fn sigma_n(&self, t: f64) -> Mat2 {
        let (st, ct) = self.theta.sin_cos();
        let w = C64::from_polar(1.0, self.omega * t);
        Mat2::new(
            C64::new(ct, 0.0),
            -w.conj() * st,
            -w * st,
            C64::new(-ct, 0.0),
        )
    }

    /// The lab raising operator expressed in the instantaneous basis:
    /// `sigma_+(t) = (sin t / 2) e^{i w t} sigma_z + cos^2(t/2) sigma_+
    ///  - sin^2(t/2) e^{2 i w t} sigma_-`.
    /// Together with `sigma_-(t) = sigma_+(t)^dag` and `sigma_n(t)` it closes
    /// the ladder algebra `[sigma_n, sigma_+-] = +-2 sigma_+-` at every `t`.
    pub fn sigma_plus_inst(&self, t: f64) -> Mat2 {
        let c2 = (0.5 * self.theta).cos().powi(2);
        let s2 = (0.5 * self.theta).sin().powi(2);
        let half_st = 0.5 * self.theta.sin();
        let w = C64::from_polar(1.0, self.omega * t);
        Mat2::sigma_z().scale(w * half_st) + Mat2::sigma_plus().scale_re(c2)
            - Mat2::sigma_minus().scale(w * w * s2)
    }

    /// `sigma_-(t) = sigma_+(t)^dag`.
    pub fn sigma_minus_inst(&self, t: f64) -> Mat2 {
        self.sigma_plus_inst(t).adjoint()
    }

    /// Unitary `T_F(t)` with `rho_F = T_F rho_lab T_F^dag`.
    pub fn frame_transform(&self, frame: Frame, t: f64) -> Result<Mat2> {
        match frame {
            Frame::Lab => Ok(Mat2::identity()),
            Frame::Rotating => Ok(rotation_about_z(0.5 * self.omega * t)),
            Frame::Diagonal => {
                let d = self.diagonalizing_matrix()?;
                Ok(d * rotation_about_z(0.5 * self.omega * t))
            }
            Frame::Instantaneous => Ok(self.instantaneous_basis(t).adjoint()),
        }
    }

    /// The pure initial state `cos(alpha)|+> + sin(alpha)|->` in the lab
    /// frame.
    pub fn initial_state_lab(&self) -> DensityMatrix {
        DensityMatrix::from_state_vector(
            C64::new(self.alpha.cos(), 0.0),
            C64::new(self.alpha.sin(), 0.0),
        )
        .expect("pure state from a real spinor is always valid")
    }
}

/// `diag(e^{i phi}, e^{-i phi})`.
fn rotation_about_z(phi: f64) -> Mat2 {
    let w = C64::from_polar(1.0, phi);
    Mat2::new(w, ZERO, ZERO, w.conj())
}

/// Parameters derived from [`ModelParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Effective-field energy
    /// `sqrt(muB^2 sin^2 t + (muB cos t - w/2)^2) > 0`.
    pub lambda1: f64,
    /// `(muB cos t - w/2) / lambda_1`, in `[-1, 1]`.
    pub big_lambda: f64,
    /// `2 pi (1 - cos t)` swept per drive cycle.
    pub solid_angle: f64,
}

/// Thresholds gating the closed-form solutions: the analytic results hold at
/// first order in `omega/muB` and `k/muB` and are silently wrong outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub adiabatic_threshold: f64,
    pub weak_threshold: f64,
}

impl Default for Regime {
    fn default() -> Self {
        Self {
            adiabatic_threshold: 0.01,
            weak_threshold: 0.01,
        }
    }
}

impl Regime {
    pub fn check(&self, p: &ModelParams) -> Result<()> {
        let adiabatic_ratio = p.omega.abs() / p.mu_b;
        if adiabatic_ratio > self.adiabatic_threshold {
            return Err(Error::RegimeViolated {
                regime: "adiabatic",
                ratio: "omega/muB",
                value: adiabatic_ratio,
                threshold: self.adiabatic_threshold,
            });
        }
        let weak_ratio = p.k / p.mu_b;
        if weak_ratio > self.weak_threshold {
            return Err(Error::RegimeViolated {
                regime: "weak-coupling",
                ratio: "k/muB",
                value: weak_ratio,
                threshold: self.weak_threshold,
            });
        }
        Ok(())
    }
}

/// Convert a state between frames by the unitary chain
/// Lab <-> Rotating <-> Diagonal and Diagonal <-> Instantaneous.
/// Trace, Hermiticity and spectrum are preserved; round trips compose to the
/// identity.
pub fn convert_state(
    rho: &DensityMatrix,
    from: Frame,
    to: Frame,
    p: &ModelParams,
    t: f64,
) -> Result<DensityMatrix> {
    if from == to {
        return Ok(*rho);
    }
    let m = convert_matrix(rho.matrix(), from, to, p, t)?;
    DensityMatrix::with_tolerances(m, &crate::algebra::Tolerances::integrator_grade())
}

/// Frame conversion on a raw matrix (also valid for observables and
/// generators, which transform by the same conjugation).
pub fn convert_matrix(m: &Mat2, from: Frame, to: Frame, p: &ModelParams, t: f64) -> Result<Mat2> {
    if from == to {
        return Ok(*m);
    }
    let t_from = p.frame_transform(from, t)?;
    let t_to = p.frame_transform(to, t)?;
    let u = t_to * t_from.adjoint();
    Ok(u * *m * u.adjoint())
}

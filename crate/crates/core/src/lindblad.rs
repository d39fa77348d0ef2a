//! Right-hand-side generators for the two dissipation channels, in the
//! diagonal frame and in the instantaneous basis.
//!
//! Generators are pure functions `(rho, t) -> d rho/dt`; they carry no state
//! beyond precomputed parameters, and they are implemented term by term in
//! the form the instantaneous-basis master equations are usually quoted,
//! with simplification left to the tests. The one typographically ambiguous
//! grouping in the thermal instantaneous dissipator is resolved as the
//! anticommutator
//!
//! ```text
//! { rho, L sigma_n(t) + sqrt(1-L^2) (e^{-i w t} sigma_+(t) + e^{i w t} sigma_-(t)) }
//! ```
//!
//! which is the reading under which the diagonal-frame and
//! instantaneous-frame equations are related by the exact frame conversion
//! (see the `frame_equivalence` tests).

use num_complex::Complex64 as C64;

use crate::algebra::{DensityMatrix, Mat2, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::model::{Frame, ModelParams};

/// Dissipation mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    /// Coupling to a thermal reservoir with occupation `nbar`: raising plus
    /// lowering jump operators driving the state to the Gibbs fixed point.
    Thermal,
    /// Phase-destroying channel: `sigma_z` coupling damping only coherences.
    Dephasing,
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::Thermal => "thermal",
            Channel::Dephasing => "dephasing",
        }
    }
}

/// A channel/frame/parameter triple; fully determines the generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub channel: Channel,
    pub frame: Frame,
    pub params: ModelParams,
}

/// Precomputed right-hand side of a master equation.
#[derive(Debug, Clone, Copy)]
pub struct Generator {
    spec: GeneratorSpec,
    lambda1: f64,
    big_lambda: f64,
    /// `sqrt(1 - Lambda^2)`.
    ortho: f64,
}

impl Generator {
    pub fn new(spec: GeneratorSpec) -> Result<Self> {
        match spec.frame {
            Frame::Diagonal | Frame::Instantaneous => {}
            other => {
                return Err(Error::InvalidInput(format!(
                    "no generator is defined in the {} frame",
                    other.name()
                )))
            }
        }
        let d = spec.params.derived()?;
        Ok(Self {
            spec,
            lambda1: d.lambda1,
            big_lambda: d.big_lambda,
            ortho: (1.0 - d.big_lambda * d.big_lambda).max(0.0).sqrt(),
        })
    }

    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn channel(&self) -> Channel {
        self.spec.channel
    }

    pub fn frame(&self) -> Frame {
        self.spec.frame
    }

    pub fn params(&self) -> &ModelParams {
        &self.spec.params
    }

    /// Whether the right-hand side depends on `t` (instantaneous frame).
    pub fn is_time_dependent(&self) -> bool {
        self.spec.frame == Frame::Instantaneous
    }

    /// `d rho/dt` at state `rho` and time `t`.
    pub fn rhs(&self, rho: &Mat2, t: f64) -> Mat2 {
        match (self.spec.channel, self.spec.frame) {
            (Channel::Thermal, Frame::Diagonal) => self.thermal_diagonal_rhs(rho),
            (Channel::Dephasing, Frame::Diagonal) => self.dephasing_diagonal_rhs(rho),
            (Channel::Thermal, Frame::Instantaneous) => self.thermal_instantaneous_rhs(rho, t),
            (Channel::Dephasing, Frame::Instantaneous) => {
                self.dephasing_instantaneous_rhs(rho, t)
            }
            _ => unreachable!("frame checked at construction"),
        }
    }

    fn unitary_diagonal(&self, rho: &Mat2) -> Mat2 {
        // -i [lambda_1 sigma_z, rho], written out elementwise.
        let two_lam = 2.0 * self.lambda1;
        Mat2::new(
            ZERO,
            -I * two_lam * rho.e[0][1],
            I * two_lam * rho.e[1][0],
            ZERO,
        )
    }

    fn thermal_diagonal_rhs(&self, rho: &Mat2) -> Mat2 {
        let p = self.params();
        let k = p.k;
        let nbar = p.nbar;
        let sp = Mat2::sigma_plus();
        let sm = Mat2::sigma_minus();
        let down = (sm * *rho * sp).scale_re(2.0) - (sp * sm).anticommutator(rho);
        let up = (sp * *rho * sm).scale_re(2.0) - (sm * sp).anticommutator(rho);
        self.unitary_diagonal(rho) + down.scale_re(k * (nbar + 1.0)) + up.scale_re(k * nbar)
    }

    fn dephasing_diagonal_rhs(&self, rho: &Mat2) -> Mat2 {
        let k = self.params().k;
        let sz = Mat2::sigma_z();
        self.unitary_diagonal(rho) + (sz * *rho * sz - *rho).scale_re(0.5 * k)
    }

    /// `-i [(muB + w/2) sigma_z - (w/2) sigma_n(t), rho]`.
    fn unitary_instantaneous(&self, rho: &Mat2, t: f64) -> Mat2 {
        let p = self.params();
        let gen = Mat2::sigma_z().scale_re(p.mu_b + 0.5 * p.omega)
            - p.sigma_n(t).scale_re(0.5 * p.omega);
        gen.commutator(rho).scale(-I)
    }

    fn thermal_instantaneous_rhs(&self, rho: &Mat2, t: f64) -> Mat2 {
        let p = self.params();
        let lam = self.big_lambda;
        let ortho = self.ortho;
        let nbar = p.nbar;

        let sn = p.sigma_n(t);
        let sp = p.sigma_plus_inst(t);
        let sm = sp.adjoint();
        let w = C64::from_polar(1.0, p.omega * t);
        let w2 = w * w;

        // (2 nbar + 1)/2 { -2 rho + (1 - L^2)[...] + (1 + L^2)[...]
        //                  - L sqrt(1 - L^2)[...] }
        let mut a = rho.scale_re(-2.0);
        a = a
            + (sn * *rho * sn
                - (sp * *rho * sp).scale(w2.conj())
                - (sm * *rho * sm).scale(w2))
            .scale_re(1.0 - lam * lam);
        a = a + (sp * *rho * sm + sm * *rho * sp).scale_re(1.0 + lam * lam);
        a = a
            - ((sn * *rho * sm + sm * *rho * sn).scale(w)
                + (sp * *rho * sn + sn * *rho * sp).scale(w.conj()))
            .scale_re(lam * ortho);
        let balanced = a.scale_re(0.5 * (2.0 * nbar + 1.0));

        // (1/2) { {rho, M} + 2 L [...] + sqrt(1 - L^2)[...] } with
        // M = L sigma_n + sqrt(1 - L^2)(e^{-iwt} sigma_+ + e^{iwt} sigma_-).
        let m_op = sn.scale_re(lam) + (sp.scale(w.conj()) + sm.scale(w)).scale_re(ortho);
        let mut b = rho.anticommutator(&m_op);
        b = b + (sp * *rho * sm - sm * *rho * sp).scale_re(2.0 * lam);
        b = b
            + ((sn * *rho * sp - sp * *rho * sn).scale(w.conj())
                + (sm * *rho * sn - sn * *rho * sm).scale(w))
            .scale_re(ortho);
        let drift = b.scale_re(0.5);

        self.unitary_instantaneous(rho, t) + (balanced - drift).scale_re(p.k)
    }

    fn dephasing_instantaneous_rhs(&self, rho: &Mat2, t: f64) -> Mat2 {
        let p = self.params();
        let lam = self.big_lambda;
        let ortho = self.ortho;

        let sn = p.sigma_n(t);
        let sp = p.sigma_plus_inst(t);
        let sm = sp.adjoint();
        let w = C64::from_polar(1.0, p.omega * t);
        let w2 = w * w;

        let mut a = (sn * *rho * sn).scale_re(lam * lam);
        a = a
            + ((sn * *rho * sp + sp * *rho * sn).scale(w.conj())
                + (sn * *rho * sm + sm * *rho * sn).scale(w))
            .scale_re(lam * ortho);
        a = a
            + ((sp * *rho * sp).scale(w2.conj())
                + (sm * *rho * sm).scale(w2)
                + sp * *rho * sm
                + sm * *rho * sp)
            .scale_re(1.0 - lam * lam);
        a = a - *rho;

        self.unitary_instantaneous(rho, t) + a.scale_re(0.5 * p.k)
    }
}

/// Thermal-channel generator in the diagonal frame (master equation with
/// `2 sigma_- rho sigma_+` emission and `2 sigma_+ rho sigma_-` absorption
/// terms at rates `k(nbar+1)` and `k nbar`).
pub fn thermal_diagonal(p: &ModelParams) -> Result<Generator> {
    Generator::new(GeneratorSpec {
        channel: Channel::Thermal,
        frame: Frame::Diagonal,
        params: *p,
    })
}

/// Dephasing-channel generator in the diagonal frame:
/// `-i[lambda_1 sigma_z, rho] + (k/2)(sigma_z rho sigma_z - rho)`.
pub fn dephasing_diagonal(p: &ModelParams) -> Result<Generator> {
    Generator::new(GeneratorSpec {
        channel: Channel::Dephasing,
        frame: Frame::Diagonal,
        params: *p,
    })
}

/// Thermal-channel generator in the instantaneous basis, valid for
/// arbitrary `omega`.
pub fn thermal_instantaneous(p: &ModelParams) -> Result<Generator> {
    Generator::new(GeneratorSpec {
        channel: Channel::Thermal,
        frame: Frame::Instantaneous,
        params: *p,
    })
}

/// Dephasing-channel generator in the instantaneous basis, valid for
/// arbitrary `omega`.
pub fn dephasing_instantaneous(p: &ModelParams) -> Result<Generator> {
    Generator::new(GeneratorSpec {
        channel: Channel::Dephasing,
        frame: Frame::Instantaneous,
        params: *p,
    })
}

/// Stationary state of the thermal channel in the diagonal frame:
/// `diag(nbar, nbar + 1)/(2 nbar + 1)`.
pub fn thermal_fixed_point(p: &ModelParams) -> DensityMatrix {
    let norm = 2.0 * p.nbar + 1.0;
    let m = Mat2::diag(
        ONE * (p.nbar / norm),
        ONE * ((p.nbar + 1.0) / norm),
    );
    DensityMatrix::new(m).expect("thermal fixed point is a valid state")
}

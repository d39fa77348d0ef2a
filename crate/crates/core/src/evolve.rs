//! Numerical time evolution of any generator, plus the exact diagonal-frame
//! propagator for both channels.

use num_complex::Complex64 as C64;

use crate::algebra::{DensityMatrix, Mat2, Tolerances};
use crate::error::{Error, Result};
use crate::lindblad::{Channel, Generator};
use crate::model::{convert_state, Frame, ModelParams};

/// Integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Classical fourth-order Runge-Kutta with a fixed substep. Stage times
    /// follow the tableau, so fourth order is kept for time-dependent
    /// generators. Deterministic and bit-stable for a given step.
    Rk4Fixed,
    /// Dormand-Prince 5(4) with error-per-step control on the max norm of
    /// the state. Useful for long thermal runs covering many decay times.
    Rk45Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub method: Method,
    /// Fixed substep for [`Method::Rk4Fixed`]; `None` picks
    /// [`default_step`] for the generator's parameters.
    pub step: Option<f64>,
    /// Relative tolerance for the adaptive method.
    pub rtol: f64,
    /// Absolute tolerance for the adaptive method.
    pub atol: f64,
    /// Optional cap on the adaptive step.
    pub max_step: Option<f64>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            method: Method::Rk4Fixed,
            step: None,
            rtol: 1e-9,
            atol: 1e-12,
            max_step: None,
        }
    }
}

impl IntegratorOptions {
    pub fn rk4(step: f64) -> Self {
        Self {
            method: Method::Rk4Fixed,
            step: Some(step),
            ..Self::default()
        }
    }

    pub fn rk45(rtol: f64, atol: f64) -> Self {
        Self {
            method: Method::Rk45Adaptive,
            step: None,
            rtol,
            atol,
            max_step: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(h) = self.step {
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::InvalidInput(format!("step must be positive, got {h}")));
            }
        }
        if !(self.rtol > 0.0) || !(self.atol > 0.0) {
            return Err(Error::InvalidInput(
                "adaptive tolerances must be positive".into(),
            ));
        }
        if let Some(h) = self.max_step {
            if !(h > 0.0) {
                return Err(Error::InvalidInput("max_step must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Default fixed step: resolve the fastest oscillation (`2 muB`), the drive,
/// and the decay — `min(2pi/(2 muB)/50, 2pi/omega/200, 1/(10 k))`.
pub fn default_step(p: &ModelParams) -> f64 {
    let mut h = std::f64::consts::PI / p.mu_b / 50.0;
    if p.omega > 0.0 {
        h = h.min(2.0 * std::f64::consts::PI / p.omega / 200.0);
    }
    if p.k > 0.0 {
        h = h.min(1.0 / (10.0 * p.k));
    }
    h
}

/// Time-ordered samples of a state, all in one frame.
#[derive(Debug, Clone)]
pub struct Trajectory {
    frame: Frame,
    samples: Vec<(f64, DensityMatrix)>,
}

impl Trajectory {
    pub fn new(frame: Frame, samples: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        for pair in samples.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::InvalidInput(format!(
                    "trajectory times must be strictly increasing ({} then {})",
                    pair[0].0, pair[1].0
                )));
            }
        }
        Ok(Self { frame, samples })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn samples(&self) -> &[(f64, DensityMatrix)] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|(t, _)| *t)
    }

    /// Convert every sample to another frame.
    pub fn to_frame(&self, to: Frame, p: &ModelParams) -> Result<Trajectory> {
        let mut samples = Vec::with_capacity(self.samples.len());
        for (t, rho) in &self.samples {
            samples.push((*t, convert_state(rho, self.frame, to, p, *t)?));
        }
        Ok(Trajectory { frame: to, samples })
    }
}

/// Integrate `gen` from `rho0` and return states at exactly the requested
/// times. `t_grid` must start at zero and increase strictly. Every sample is
/// validated at integrator-grade tolerances; the first violation aborts with
/// the offending time.
pub fn evolve(
    gen: &Generator,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    opts.validate()?;
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("empty time grid".into()));
    }
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidInput(format!(
            "time grid must start at 0, got {}",
            t_grid[0]
        )));
    }
    for pair in t_grid.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::InvalidInput(
                "time grid must increase strictly".into(),
            ));
        }
    }

    let tol = Tolerances::integrator_grade();
    let mut samples = Vec::with_capacity(t_grid.len());
    samples.push((0.0, *rho0));

    let mut state = *rho0.matrix();
    let mut t = 0.0;
    // Adaptive state carried across sample intervals.
    let mut h_adaptive = opts
        .max_step
        .unwrap_or_else(|| default_step(gen.params()))
        .min(default_step(gen.params()));

    for &t_target in &t_grid[1..] {
        match opts.method {
            Method::Rk4Fixed => {
                let h = opts.step.unwrap_or_else(|| default_step(gen.params()));
                let span = t_target - t;
                let n = (span / h).ceil().max(1.0) as usize;
                let h_sub = span / n as f64;
                for _ in 0..n {
                    state = rk4_step(gen, &state, t, h_sub);
                    t += h_sub;
                }
                // Land exactly on the grid point regardless of roundoff.
                t = t_target;
            }
            Method::Rk45Adaptive => {
                rk45_advance(gen, &mut state, &mut t, t_target, &mut h_adaptive, opts)?;
            }
        }
        let rho = DensityMatrix::with_tolerances(state, &tol).map_err(|e| {
            Error::StateCorruption {
                t: t_target,
                source: Box::new(e),
            }
        })?;
        samples.push((t_target, rho));
    }

    Trajectory::new(gen.frame(), samples)
}

fn rk4_step(gen: &Generator, y: &Mat2, t: f64, h: f64) -> Mat2 {
    let k1 = gen.rhs(y, t);
    let k2 = gen.rhs(&(*y + k1.scale_re(0.5 * h)), t + 0.5 * h);
    let k3 = gen.rhs(&(*y + k2.scale_re(0.5 * h)), t + 0.5 * h);
    let k4 = gen.rhs(&(*y + k3.scale_re(h)), t + h);
    *y + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(h / 6.0)
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn rk45_advance(
    gen: &Generator,
    state: &mut Mat2,
    t: &mut f64,
    t_target: f64,
    h: &mut f64,
    opts: &IntegratorOptions,
) -> Result<()> {
    let max_step = opts.max_step.unwrap_or(f64::INFINITY);
    while *t < t_target {
        let mut h_try = h.min(max_step).min(t_target - *t);
        loop {
            let min_h = 1e-12 * t.abs().max(1.0);
            if h_try < min_h {
                return Err(Error::Integration(format!(
                    "adaptive step underflow at t = {t} (h = {h_try:.3e}); \
                     tolerances rtol = {:.1e}, atol = {:.1e} are infeasible here",
                    opts.rtol, opts.atol
                )));
            }
            let mut k = [Mat2::zero(); 7];
            k[0] = gen.rhs(state, *t);
            for stage in 0..6 {
                let mut y = *state;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    let a = DP_A[stage][j];
                    if a != 0.0 {
                        y = y + kj.scale_re(a * h_try);
                    }
                }
                k[stage + 1] = gen.rhs(&y, *t + DP_C[stage] * h_try);
            }
            let mut y5 = *state;
            let mut err_mat = Mat2::zero();
            for (j, kj) in k.iter().enumerate() {
                if DP_B5[j] != 0.0 {
                    y5 = y5 + kj.scale_re(DP_B5[j] * h_try);
                }
                let de = DP_B5[j] - DP_B4[j];
                if de != 0.0 {
                    err_mat = err_mat + kj.scale_re(de * h_try);
                }
            }
            let err = err_mat.max_abs();
            let scale = opts.atol + opts.rtol * state.max_abs();
            if err <= scale {
                *state = y5;
                *t += h_try;
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0)
                };
                *h = (h_try * factor).min(max_step);
                break;
            }
            let factor = (0.9 * (scale / err).powf(0.2)).clamp(0.2, 1.0);
            h_try *= factor;
        }
    }
    *t = t_target;
    Ok(())
}

/// Exact diagonal-frame solution at time `t`.
///
/// Thermal channel:
/// `rho_11(t) = nbar/(2nbar+1) (1 - e^{-2k(2nbar+1)t}) + rho_11(0) e^{-2k(2nbar+1)t}`,
/// `rho_12(t) = rho_12(0) e^{-(2i lambda_1 + k(2nbar+1)) t}`.
///
/// Dephasing channel: populations frozen,
/// `rho_12(t) = rho_12(0) e^{-(2i lambda_1 + k) t}`.
pub fn evolve_exact_diagonal(
    channel: Channel,
    p: &ModelParams,
    rho0: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    let lambda1 = p.derived()?.lambda1;
    let m0 = rho0.matrix();
    let (rho11, decay) = match channel {
        Channel::Thermal => {
            let rate = 2.0 * p.nbar + 1.0;
            let pop_decay = (-2.0 * p.k * rate * t).exp();
            let stationary = p.nbar / rate;
            let rho11 = stationary * (1.0 - pop_decay) + m0.e[0][0].re * pop_decay;
            (rho11, (-(p.k * rate) * t).exp())
        }
        Channel::Dephasing => (m0.e[0][0].re, (-p.k * t).exp()),
    };
    let phase = C64::from_polar(decay, -2.0 * lambda1 * t);
    let rho12 = m0.e[0][1] * phase;
    let m = Mat2::new(
        C64::new(rho11, 0.0),
        rho12,
        rho12.conj(),
        C64::new(1.0 - rho11, 0.0),
    );
    DensityMatrix::new(m)
}

//! Magnetization time series, discrete Fourier analysis, and Lorentzian peak
//! extraction.

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::algebra::BlochVector;
use crate::error::{Error, Result};
use crate::evolve::Trajectory;
use crate::model::{convert_state, Frame, ModelParams};

/// Uniformly sampled series. Real-valued signals are stored with zero
/// imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<C64>,
}

impl TimeSeries {
    pub fn new(t0: f64, dt: f64, values: Vec<C64>) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidInput(
                "a time series needs at least two samples".into(),
            ));
        }
        Ok(Self { t0, dt, values })
    }

    pub fn from_real(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        Self::new(t0, dt, values.into_iter().map(|v| C64::new(v, 0.0)).collect())
    }

    /// Build from `(t, value)` pairs, verifying the grid is uniform.
    pub fn from_samples(samples: &[(f64, C64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "a time series needs at least two samples".into(),
            ));
        }
        let t0 = samples[0].0;
        let dt = samples[1].0 - samples[0].0;
        if !(dt > 0.0) {
            return Err(Error::InvalidInput("samples must advance in time".into()));
        }
        let mut worst: f64 = 0.0;
        for (i, (t, _)) in samples.iter().enumerate() {
            worst = worst.max((t - (t0 + dt * i as f64)).abs());
        }
        if worst > 1e-9 * dt.max(1.0) {
            return Err(Error::NonUniformGrid { deviation: worst });
        }
        Self::new(t0, dt, samples.iter().map(|(_, v)| *v).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let (t0, dt) = (self.t0, self.dt);
        (0..self.values.len()).map(move |i| t0 + dt * i as f64)
    }

    /// Time-domain energy `sum |x_n|^2 dt`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.dt
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// No tapering; correct for damped signals, which are self-windowing.
    None,
    /// Hann taper for truncated undamped runs.
    Hann,
}

/// Discrete Fourier data on a uniform angular-frequency grid
/// `w_m = 2 pi m/(N dt)`, `m = 0..N`. Bins above `N/2` alias to negative
/// frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub amplitudes: Vec<C64>,
}

impl Spectrum {
    /// Frequency-domain energy `sum |X_m|^2 dw`.
    pub fn energy(&self) -> f64 {
        if self.frequencies.len() < 2 {
            return 0.0;
        }
        let dw = self.frequencies[1] - self.frequencies[0];
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * dw
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }
}

/// Discrete Fourier transform with the continuum normalization
/// `X(w_m) = dt/sqrt(2 pi) * sum_n x_n e^{-i w_m t_n}`, a Riemann sum of
/// `(2 pi)^{-1/2} \int x(t) e^{-i w t} dt`.
pub fn dft(series: &TimeSeries, window: Window) -> Result<Spectrum> {
    let n = series.len();
    let mut buf: Vec<C64> = match window {
        Window::None => series.values.clone(),
        Window::Hann => series
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let w = 0.5
                    * (1.0
                        - (2.0 * std::f64::consts::PI * i as f64 / (n as f64 - 1.0)).cos());
                v * w
            })
            .collect(),
    };
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let norm = series.dt / (2.0 * std::f64::consts::PI).sqrt();
    let dw = 2.0 * std::f64::consts::PI / (n as f64 * series.dt);
    let mut frequencies = Vec::with_capacity(n);
    let mut amplitudes = Vec::with_capacity(n);
    for (m, value) in buf.into_iter().enumerate() {
        let w = dw * m as f64;
        // Carry the start-time phase so spectra are t0-invariant.
        let phase = C64::from_polar(1.0, -w * series.t0);
        frequencies.push(w);
        amplitudes.push(value * norm * phase);
    }
    Ok(Spectrum {
        frequencies,
        amplitudes,
    })
}

/// Converged Lorentzian fit: `|A|^2/((w - center)^2 + hwhm^2) + baseline`
/// matched to `|amplitude|^2` near the guess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakFit {
    pub center: f64,
    pub hwhm: f64,
    /// Complex spectral amplitude at the bin nearest the fitted center.
    pub amplitude: C64,
    /// RMS of (data - model) over the fit window, in |amplitude|^2 units.
    pub residual: f64,
}

/// Least-squares Lorentzian fit of `|amplitude|^2` in a window around
/// `guess_center`. The fit model is
/// `P/((w - c)^2 + hwhm^2) + baseline` with Levenberg-Marquardt on
/// `(c, hwhm, P, baseline)`.
pub fn fit_lorentzian(spec: &Spectrum, guess_center: f64, guess_hwhm: f64) -> Result<PeakFit> {
    if spec.len() < 8 {
        return Err(Error::InvalidInput("spectrum too short to fit".into()));
    }
    let dw = spec.frequencies[1] - spec.frequencies[0];
    let lo = spec.frequencies[0];
    let hi = *spec.frequencies.last().unwrap();
    if guess_center < lo || guess_center > hi {
        return Err(Error::InvalidInput(format!(
            "guess center {guess_center} outside the spectral window [{lo}, {hi}]"
        )));
    }
    if !(guess_hwhm > 0.0) {
        return Err(Error::InvalidInput("guess hwhm must be positive".into()));
    }

    let half_window = (12.0 * guess_hwhm).max(10.0 * dw);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (w, a) in spec.frequencies.iter().zip(&spec.amplitudes) {
        if (w - guess_center).abs() <= half_window {
            // Shift the abscissa for conditioning.
            xs.push(w - guess_center);
            ys.push(a.norm_sqr());
        }
    }
    if xs.len() < 8 {
        return Err(Error::InvalidInput(
            "fewer than 8 spectral bins in the fit window".into(),
        ));
    }

    // Normalize the ordinate; recover scale at the end.
    let y_scale = ys.iter().cloned().fold(f64::MIN, f64::max).max(1e-300);
    let yn: Vec<f64> = ys.iter().map(|y| y / y_scale).collect();

    let baseline0 = yn.iter().cloned().fold(f64::MAX, f64::min);
    let peak0 = 1.0 - baseline0;
    let mut p = [0.0, guess_hwhm, peak0.max(1e-12) * guess_hwhm * guess_hwhm, baseline0];

    let cost = |p: &[f64; 4]| -> f64 {
        xs.iter()
            .zip(&yn)
            .map(|(&x, &y)| {
                let d = (x - p[0]) * (x - p[0]) + p[1] * p[1];
                let r = y - (p[2] / d + p[3]);
                r * r
            })
            .sum()
    };

    let mut lambda = 1e-3;
    let mut current = cost(&p);
    let max_iter = 300;
    let mut converged = false;
    for _ in 0..max_iter {
        // Build normal equations.
        let mut jtj = [[0.0f64; 4]; 4];
        let mut jtr = [0.0f64; 4];
        for (&x, &y) in xs.iter().zip(&yn) {
            let dx = x - p[0];
            let d = dx * dx + p[1] * p[1];
            let model = p[2] / d + p[3];
            let r = y - model;
            let grad = [
                2.0 * p[2] * dx / (d * d),
                -2.0 * p[2] * p[1] / (d * d),
                1.0 / d,
                1.0,
            ];
            for i in 0..4 {
                jtr[i] += grad[i] * r;
                for j in 0..4 {
                    jtj[i][j] += grad[i] * grad[j];
                }
            }
        }
        let mut damped = jtj;
        for (i, row) in damped.iter_mut().enumerate() {
            row[i] += lambda * jtj[i][i].max(1e-30);
        }
        let Some(step) = solve4(damped, jtr) else {
            lambda *= 10.0;
            continue;
        };
        let trial = [p[0] + step[0], p[1] + step[1], p[2] + step[2], p[3] + step[3]];
        let trial_cost = cost(&trial);
        if trial_cost < current {
            let rel_change = (current - trial_cost) / current.max(1e-300);
            let step_size = step.iter().map(|s| s.abs()).fold(0.0, f64::max);
            p = trial;
            current = trial_cost;
            lambda = (lambda / 3.0).max(1e-14);
            if rel_change < 1e-14 || step_size < 1e-14 {
                converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                // Stuck; accept only if the surface is already flat.
                converged = current / (yn.len() as f64) < 1e-18;
                break;
            }
        }
    }

    let rms = (current / yn.len() as f64).sqrt() * y_scale;
    let center = p[0] + guess_center;
    if !converged && current > 1e-20 {
        return Err(Error::FitDidNotConverge {
            iterations: max_iter,
            residual: rms,
            center,
        });
    }

    let nearest = spec
        .frequencies
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - center)
                .abs()
                .partial_cmp(&(b.1 - center).abs())
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap();

    Ok(PeakFit {
        center,
        hwhm: p[1].abs(),
        amplitude: spec.amplitudes[nearest],
        residual: rms,
    })
}

/// Solve a 4x4 linear system by Gaussian elimination with partial pivoting.
fn solve4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for col in (0..4).rev() {
        let mut acc = b[col];
        for k in (col + 1)..4 {
            acc -= a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Magnetization components `<m_i>(t) = mu tr(rho_lab(t) sigma_i)` with
/// `mu = 1`; the trajectory is converted to the lab frame internally.
#[derive(Debug, Clone, PartialEq)]
pub struct Magnetization {
    pub mx: TimeSeries,
    pub my: TimeSeries,
    pub mz: TimeSeries,
}

pub fn magnetization(traj: &Trajectory, p: &ModelParams) -> Result<Magnetization> {
    if traj.len() < 2 {
        return Err(Error::InvalidInput(
            "magnetization needs at least two samples".into(),
        ));
    }
    let mut mx = Vec::with_capacity(traj.len());
    let mut my = Vec::with_capacity(traj.len());
    let mut mz = Vec::with_capacity(traj.len());
    for (t, rho) in traj.samples() {
        let lab = convert_state(rho, traj.frame(), Frame::Lab, p, *t)?;
        let s = lab.bloch_vector();
        mx.push((*t, C64::new(s.sx, 0.0)));
        my.push((*t, C64::new(s.sy, 0.0)));
        mz.push((*t, C64::new(s.sz, 0.0)));
    }
    Ok(Magnetization {
        mx: TimeSeries::from_samples(&mx)?,
        my: TimeSeries::from_samples(&my)?,
        mz: TimeSeries::from_samples(&mz)?,
    })
}

/// `<m_z>(t)` from an instantaneous-frame trajectory with the tracer applied
/// to the frame-winding phase:
///
/// ```text
/// m_z(t) = cos(theta) (rho_11 - rho_22) - 2 sin(theta) Re(rho_12 e^{i a w t})
/// ```
///
/// For `tracer_a = 1` this equals the physical lab-frame `m_z`; for other
/// tracer values it is the counterfactual in which every geometric phase is
/// scaled by `a`, so the resonance sits at `2 muB - a w cos(theta)`.
pub fn magnetization_z_traced(traj: &Trajectory, p: &ModelParams) -> Result<TimeSeries> {
    let states = traced_components(traj, p)?;
    let samples: Vec<(f64, C64)> = states
        .into_iter()
        .map(|(t, pop_diff, coh)| {
            let v = p.theta.cos() * pop_diff - 2.0 * p.theta.sin() * coh.re;
            (t, C64::new(v, 0.0))
        })
        .collect();
    TimeSeries::from_samples(&samples)
}

/// Single-sided complex companion of [`magnetization_z_traced`]: the
/// resonant part `-2 sin(theta) conj(rho_12 e^{i a w t})`, which carries the
/// `+Gamma` line alone and is the cleanest object to fit.
pub fn resonant_series(traj: &Trajectory, p: &ModelParams) -> Result<TimeSeries> {
    let states = traced_components(traj, p)?;
    let samples: Vec<(f64, C64)> = states
        .into_iter()
        .map(|(t, _, coh)| (t, -2.0 * p.theta.sin() * coh.conj()))
        .collect();
    TimeSeries::from_samples(&samples)
}

fn traced_components(traj: &Trajectory, p: &ModelParams) -> Result<Vec<(f64, f64, C64)>> {
    if traj.frame() != Frame::Instantaneous {
        return Err(Error::InvalidInput(format!(
            "traced magnetization expects an instantaneous-frame trajectory, got {}",
            traj.frame().name()
        )));
    }
    Ok(traj
        .samples()
        .iter()
        .map(|(t, rho)| {
            let m = rho.matrix();
            let winding = C64::from_polar(1.0, p.tracer_a * p.omega * t);
            (
                *t,
                (m.e[0][0] - m.e[1][1]).re,
                m.e[0][1] * winding,
            )
        })
        .collect())
}

/// Per-sample Bloch vectors of a trajectory, in the trajectory's own frame.
pub fn bloch_trajectory(traj: &Trajectory) -> Vec<(f64, BlochVector)> {
    traj.samples()
        .iter()
        .map(|(t, rho)| (*t, rho.bloch_vector()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DensityMatrix;
    use crate::evolve::{evolve, IntegratorOptions};
    use crate::lindblad::{thermal_diagonal, thermal_instantaneous};
    use std::f64::consts::{PI, TAU};

    fn tone(n: usize, dt: f64, freq: f64, damping: f64) -> TimeSeries {
        let values: Vec<C64> = (0..n)
            .map(|i| {
                let t = dt * i as f64;
                C64::from_polar((-damping * t).exp(), freq * t)
            })
            .collect();
        TimeSeries::new(0.0, dt, values).unwrap()
    }

    #[test]
    fn constant_series_is_a_zero_frequency_line() {
        let series = TimeSeries::from_real(0.0, 0.1, vec![2.0; 64]).unwrap();
        let spec = dft(&series, Window::None).unwrap();
        assert!(spec.amplitudes[0].norm() > 1.0);
        for a in &spec.amplitudes[1..] {
            assert!(a.norm() < 1e-12);
        }
    }

    #[test]
    fn pure_tone_peaks_at_nearest_bin() {
        let n = 256;
        let dt = 0.05;
        let freq = 17.0;
        let spec = dft(&tone(n, dt, freq, 0.0), Window::None).unwrap();
        let dw = TAU / (n as f64 * dt);
        let expect_bin = (freq / dw).round() as usize;
        let peak_bin = spec
            .amplitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .unwrap()
            .0;
        assert_eq!(peak_bin, expect_bin);
    }

    #[test]
    fn dft_matches_geometric_sum_oracle() {
        // For x_n = e^{(iG - g) t_n} the transform has the closed form
        // (dt/sqrt(2pi)) (1 - z^N)/(1 - z), z = e^{(iG - g - i w_m) dt}.
        let n = 512;
        let dt = 0.07;
        let (big_g, damp) = (9.0, 0.21);
        let series = tone(n, dt, big_g, damp);
        let spec = dft(&series, Window::None).unwrap();
        let norm = dt / (2.0 * PI).sqrt();
        for (m, (&w, amp)) in spec.frequencies.iter().zip(&spec.amplitudes).enumerate() {
            let z = C64::from_polar((-damp * dt).exp(), (big_g - w) * dt);
            let oracle = norm * (C64::new(1.0, 0.0) - z.powu(n as u32))
                / (C64::new(1.0, 0.0) - z);
            assert!(
                (amp - oracle).norm() < 1e-10 * oracle.norm().max(1.0),
                "bin {m} off"
            );
        }
    }

    #[test]
    fn damped_tone_profile_is_lorentzian() {
        // Long enough that truncation is negligible; fitted hwhm tracks the
        // damping rate within discretization error.
        let n = 16384;
        let dt = 0.05;
        let (big_g, damp) = (10.0, 0.05);
        let spec = dft(&tone(n, dt, big_g, damp), Window::None).unwrap();
        let fit = fit_lorentzian(&spec, big_g + 0.003, 0.08).unwrap();
        assert!((fit.center - big_g).abs() < 1e-4, "center {}", fit.center);
        assert!((fit.hwhm - damp).abs() < 5e-4, "hwhm {}", fit.hwhm);
    }

    #[test]
    fn synthetic_lorentzian_round_trip() {
        let n = 2048;
        let dw = 1e-3;
        let (c, w, peak, base) = (1.0, 7e-3, 4.2, 0.3);
        let frequencies: Vec<f64> = (0..n).map(|i| dw * i as f64).collect();
        let amplitudes: Vec<C64> = frequencies
            .iter()
            .map(|&x| {
                let y = peak * w * w / ((x - c) * (x - c) + w * w) + base;
                C64::new(y.sqrt(), 0.0)
            })
            .collect();
        let spec = Spectrum {
            frequencies,
            amplitudes,
        };
        let fit = fit_lorentzian(&spec, 1.002, 5e-3).unwrap();
        assert!((fit.center - c).abs() / c < 1e-3);
        assert!((fit.hwhm - w).abs() / w < 1e-3);
        assert!(fit.residual < 1e-10);
    }

    #[test]
    fn fit_rejects_out_of_window_guess() {
        let spec = dft(&tone(128, 0.1, 5.0, 0.1), Window::None).unwrap();
        assert!(fit_lorentzian(&spec, 1e4, 0.1).is_err());
        assert!(fit_lorentzian(&spec, 5.0, -1.0).is_err());
    }

    #[test]
    fn parseval_without_window_is_exact() {
        let series = tone(300, 0.11, 3.3, 0.04);
        let spec = dft(&series, Window::None).unwrap();
        let e_t = series.energy();
        let e_w = spec.energy();
        assert!((e_t - e_w).abs() < 1e-12 * e_t);
    }

    #[test]
    fn parseval_with_hann_scales_by_window_power() {
        // Hann has mean square 3/8 (up to end-point effects).
        let series = tone(4096, 0.03, 5.0, 0.0);
        let plain = dft(&series, Window::None).unwrap().energy();
        let tapered = dft(&series, Window::Hann).unwrap().energy();
        let ratio = tapered / plain;
        assert!((ratio - 0.375).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let samples = [
            (0.0, C64::new(1.0, 0.0)),
            (0.1, C64::new(1.0, 0.0)),
            (0.25, C64::new(1.0, 0.0)),
        ];
        assert!(matches!(
            TimeSeries::from_samples(&samples),
            Err(Error::NonUniformGrid { .. })
        ));
    }

    #[test]
    fn maximally_mixed_state_has_no_magnetization() {
        let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 1e-3, 0.0, 0.0, 1.0).unwrap();
        let samples: Vec<(f64, DensityMatrix)> = (0..10)
            .map(|i| (i as f64, DensityMatrix::maximally_mixed()))
            .collect();
        let traj = Trajectory::new(Frame::Instantaneous, samples).unwrap();
        let m = magnetization(&traj, &p).unwrap();
        for v in m.mx.values.iter().chain(&m.my.values).chain(&m.mz.values) {
            assert!(v.norm() < 1e-13);
        }
    }

    #[test]
    fn stationary_eigenstate_magnetization_is_constant() {
        // theta = 0, k = 0, rho0 = |0><0|: m_z = 1 for all time.
        let p = ModelParams::new(1.0, 1e-3, 0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        let gen = thermal_diagonal(&p).unwrap();
        let rho0 = p.initial_state_lab();
        let grid: Vec<f64> = (0..=40).map(|i| i as f64).collect();
        let traj = evolve(&gen, &rho0, &grid, &IntegratorOptions::default()).unwrap();
        let m = magnetization(&traj, &p).unwrap();
        for v in &m.mz.values {
            assert!((v.re - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn trace_is_basis_independent() {
        // m_z via lab conversion == tr(rho_I sigma_n) in the instantaneous
        // frame, and (at tracer 1) == the traced contraction.
        let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 1e-2, 0.3, 0.2, 1.0).unwrap();
        let gen = thermal_instantaneous(&p).unwrap();
        let rho0 = convert_state(&p.initial_state_lab(), Frame::Lab, Frame::Instantaneous, &p, 0.0)
            .unwrap();
        let grid: Vec<f64> = (0..=50).map(|i| 0.37 * i as f64).collect();
        let traj = evolve(&gen, &rho0, &grid, &IntegratorOptions::default()).unwrap();

        let physical = magnetization(&traj, &p).unwrap();
        let traced = magnetization_z_traced(&traj, &p).unwrap();
        for (i, (t, rho)) in traj.samples().iter().enumerate() {
            let direct = (*rho.matrix() * p.sigma_n(*t)).trace().re;
            assert!((physical.mz.values[i].re - direct).abs() < 1e-12);
            assert!((traced.values[i].re - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn bloch_trajectory_norm_is_constant_without_damping() {
        let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 0.0, 0.0, 0.0, 1.0).unwrap();
        let gen = thermal_instantaneous(&p).unwrap();
        let rho0 = convert_state(&p.initial_state_lab(), Frame::Lab, Frame::Instantaneous, &p, 0.0)
            .unwrap();
        let grid: Vec<f64> = (0..=30).map(|i| 0.5 * i as f64).collect();
        let traj = evolve(&gen, &rho0, &grid, &IntegratorOptions::rk4(2e-3)).unwrap();
        for (_, s) in bloch_trajectory(&traj) {
            assert!((s.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn entropy_identity_holds_along_trajectories() {
        let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 1e-2, 0.4, 0.1, 1.0).unwrap();
        let gen = thermal_diagonal(&p).unwrap();
        let rho0 = convert_state(&p.initial_state_lab(), Frame::Lab, Frame::Diagonal, &p, 0.0)
            .unwrap();
        let grid: Vec<f64> = (0..=60).map(|i| 2.0 * i as f64).collect();
        let traj = evolve(&gen, &rho0, &grid, &IntegratorOptions::default()).unwrap();
        for (_, rho) in traj.samples() {
            let s = rho.bloch_vector();
            let via_bloch = 0.5 * (1.0 - s.norm() * s.norm());
            assert!((rho.linear_entropy() - via_bloch).abs() < 1e-12);
        }
    }
}

//! End-to-end check: integrate the master equation, extract the
//! magnetization, and recover the line parameters from the spectrum.

use std::f64::consts::PI;

use precess_core::adiabatic::analytic_spectrum;
use precess_core::spectrum::{dft, fit_lorentzian, magnetization, resonant_series, Window};
use precess_core::{convert_state, evolve, lindblad, Frame, IntegratorOptions, ModelParams};

fn grid(t_end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
}

#[test]
fn spectral_line_carries_dissipative_width_and_shifted_center() {
    let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 1e-3, 0.0, 0.0, 1.0).unwrap();
    let gen = lindblad::thermal_diagonal(&p).unwrap();
    let rho0 = convert_state(&p.initial_state_lab(), Frame::Lab, Frame::Diagonal, &p, 0.0).unwrap();

    let duration = 5.0 / p.k;
    let n = 32768;
    let traj = evolve(&gen, &rho0, &grid(duration, n), &IntegratorOptions::default()).unwrap();

    let m = magnetization(&traj, &p).unwrap();
    let spec = dft(&m.mz, Window::None).unwrap();

    let analytic = analytic_spectrum(&p).unwrap();
    let fit = fit_lorentzian(&spec, analytic.gamma, analytic.linewidth).unwrap();

    // The full dynamics resonates at exactly 2 lambda_1, which the adiabatic
    // Gamma approximates to O((omega/muB)^2).
    let two_lambda1 = 2.0 * p.derived().unwrap().lambda1;
    assert!(
        (fit.center - two_lambda1).abs() < 5e-5,
        "center {} vs 2 lambda_1 {}",
        fit.center,
        two_lambda1
    );
    assert!((fit.center - analytic.gamma).abs() < 5e-5);
    assert!(
        (fit.hwhm - analytic.linewidth).abs() < 0.05 * analytic.linewidth,
        "hwhm {} vs {}",
        fit.hwhm,
        analytic.linewidth
    );
}

#[test]
fn single_sided_series_gives_the_same_line() {
    let p = ModelParams::new(1.0, 1e-3, 0.25 * PI, 1e-3, 0.0, 0.0, 1.0).unwrap();
    let gen = lindblad::thermal_instantaneous(&p).unwrap();
    let rho0 =
        convert_state(&p.initial_state_lab(), Frame::Lab, Frame::Instantaneous, &p, 0.0).unwrap();

    let duration = 5.0 / p.k;
    let traj = evolve(
        &gen,
        &rho0,
        &grid(duration, 32768),
        &IntegratorOptions::default(),
    )
    .unwrap();

    let series = resonant_series(&traj, &p).unwrap();
    let spec = dft(&series, Window::None).unwrap();
    let analytic = analytic_spectrum(&p).unwrap();
    let fit = fit_lorentzian(&spec, analytic.gamma, analytic.linewidth).unwrap();

    assert!((fit.center - analytic.gamma).abs() < 5e-5, "center {}", fit.center);
    assert!((fit.hwhm - analytic.linewidth).abs() < 0.05 * analytic.linewidth);
}

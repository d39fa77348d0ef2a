//! Complex 2x2 matrices, the Pauli basis, density-matrix validity and the
//! Bloch-vector picture.
//!
//! Everything is a plain value type; no allocation, no shared state. All
//! quantities are dimensionless (natural units).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default tolerance on `max |rho - rho^dagger|`.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Default tolerance on `|tr rho - 1|`.
pub const TRACE_TOL: f64 = 1e-12;
/// Default floor on the minimum eigenvalue. Slightly negative so that
/// eigenvalue roundoff on an exactly pure state does not reject it.
pub const POSITIVITY_FLOOR: f64 = -1e-10;

/// Validity thresholds for [`DensityMatrix`] checks. The defaults are the
/// strict, construction-grade values; integrators check against a looser set
/// (see [`Tolerances::integrator_grade`]) so that accumulated roundoff is
/// measurable without being fatal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub trace: f64,
    pub positivity_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: HERMITICITY_TOL,
            trace: TRACE_TOL,
            positivity_floor: POSITIVITY_FLOOR,
        }
    }
}

impl Tolerances {
    /// Loosened thresholds used when validating integrator output
    /// (trace 1e-10, positivity -1e-8).
    pub fn integrator_grade() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-10,
            positivity_floor: -1e-8,
        }
    }

    /// Uniformly scale all thresholds (used by the CLI `--tolerance-scale`).
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            hermiticity: self.hermiticity * factor,
            trace: self.trace * factor,
            positivity_floor: self.positivity_floor * factor,
        }
    }
}

/// Complex 2x2 matrix in row-major layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[C64; 2]; 2],
}

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Self { e: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn sigma_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn sigma_y() -> Self {
        Self::new(ZERO, -I, I, ZERO)
    }

    pub fn sigma_z() -> Self {
        Self::new(ONE, ZERO, ZERO, -ONE)
    }

    /// Raising operator `[[0, 1], [0, 0]]` of the sigma_z eigenbasis.
    pub fn sigma_plus() -> Self {
        Self::new(ZERO, ONE, ZERO, ZERO)
    }

    /// Lowering operator `[[0, 0], [1, 0]]`.
    pub fn sigma_minus() -> Self {
        Self::new(ZERO, ZERO, ONE, ZERO)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    /// `n . sigma` for a real 3-vector `n`.
    pub fn from_bloch_dir(nx: f64, ny: f64, nz: f64) -> Self {
        Self::new(
            C64::new(nz, 0.0),
            C64::new(nx, -ny),
            C64::new(nx, ny),
            C64::new(-nz, 0.0),
        )
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.e[0][0], self.e[1][0], self.e[0][1], self.e[1][1])
    }

    pub fn conjugate(&self) -> Self {
        Self::new(
            self.e[0][0].conj(),
            self.e[0][1].conj(),
            self.e[1][0].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> C64 {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(
            self.e[0][0] * s,
            self.e[0][1] * s,
            self.e[1][0] * s,
            self.e[1][1] * s,
        )
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise max |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// `max |M - M^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of a Hermitian 2x2 matrix by the closed form
    /// `tr/2 +- sqrt((tr/2)^2 - det)`, returned as (min, max).
    /// The imaginary parts of trace and determinant are dropped; callers are
    /// expected to pass (numerically) Hermitian input.
    pub fn eigvals_hermitian(&self) -> (f64, f64) {
        let half_tr = 0.5 * self.trace().re;
        // For Hermitian M: det = ad - |b|^2 with a, d real.
        let det = self.e[0][0].re * self.e[1][1].re - self.e[0][1].norm_sqr();
        let disc = (half_tr * half_tr - det).max(0.0).sqrt();
        (half_tr - disc, half_tr + disc)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] + rhs.e[0][0],
            self.e[0][1] + rhs.e[0][1],
            self.e[1][0] + rhs.e[1][0],
            self.e[1][1] + rhs.e[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.e[0][0] - rhs.e[0][0],
            self.e[0][1] - rhs.e[0][1],
            self.e[1][0] - rhs.e[1][0],
            self.e[1][1] - rhs.e[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.e;
        let b = &rhs.e;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:.6}{:+.6}i, {:.6}{:+.6}i], [{:.6}{:+.6}i, {:.6}{:+.6}i]]",
            self.e[0][0].re,
            self.e[0][0].im,
            self.e[0][1].re,
            self.e[0][1].im,
            self.e[1][0].re,
            self.e[1][0].im,
            self.e[1][1].re,
            self.e[1][1].im
        )
    }
}

/// Real 3-vector `S` with `rho = (1 + S . sigma)/2`. Pure states sit on the
/// unit sphere, mixed states strictly inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl BlochVector {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        Self { sx, sy, sz }
    }

    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    /// Radius of the projection onto the xy plane.
    pub fn xy_radius(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy).sqrt()
    }

    /// Convert to the density matrix `(1 + S . sigma)/2`.
    ///
    /// Errors if the vector is longer than one (no physical state).
    pub fn density(&self) -> Result<DensityMatrix> {
        let norm = self.norm();
        if norm > 1.0 + 1e-10 {
            return Err(Error::BlochNormTooLarge { norm });
        }
        let m = Mat2::new(
            C64::new(0.5 * (1.0 + self.sz), 0.0),
            C64::new(0.5 * self.sx, -0.5 * self.sy),
            C64::new(0.5 * self.sx, 0.5 * self.sy),
            C64::new(0.5 * (1.0 - self.sz), 0.0),
        );
        // Construction is exact up to roundoff; validate with defaults.
        DensityMatrix::new(m)
    }
}

/// 2x2 complex, Hermitian, unit-trace, positive-semidefinite state.
///
/// Invariants are enforced at construction and never silently repaired:
/// positivity drift is a diagnostic of integrator error, not something to
/// project away.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validate `m` against the default tolerances and wrap it.
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::default())
    }

    /// Validate against caller-supplied tolerances.
    pub fn with_tolerances(m: Mat2, tol: &Tolerances) -> Result<Self> {
        validate_density(&m, tol)?;
        Ok(Self { m })
    }

    /// Maximally mixed state `1/2`.
    pub fn maximally_mixed() -> Self {
        Self {
            m: Mat2::identity().scale_re(0.5),
        }
    }

    /// Pure state from a (not necessarily normalized) two-component spinor.
    pub fn from_state_vector(up: C64, down: C64) -> Result<Self> {
        let n2 = up.norm_sqr() + down.norm_sqr();
        if n2 <= 0.0 {
            return Err(Error::InvalidInput("zero state vector".into()));
        }
        let m = Mat2::new(
            up * up.conj() / n2,
            up * down.conj() / n2,
            down * up.conj() / n2,
            down * down.conj() / n2,
        );
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn into_matrix(self) -> Mat2 {
        self.m
    }

    /// `S_i = tr(rho sigma_i)`.
    pub fn bloch_vector(&self) -> BlochVector {
        let m = &self.m;
        BlochVector {
            sx: (m.e[0][1] + m.e[1][0]).re,
            sy: (m.e[1][0] - m.e[0][1]).im,
            sz: (m.e[0][0] - m.e[1][1]).re,
        }
    }

    pub fn purity(&self) -> f64 {
        (self.m * self.m).trace().re
    }

    /// Linear entropy (idempotency defect) `1 - tr rho^2`; zero iff pure.
    pub fn linear_entropy(&self) -> f64 {
        1.0 - self.purity()
    }

    /// Eigenvalues (min, max) of the state.
    pub fn eigvals(&self) -> (f64, f64) {
        self.m.eigvals_hermitian()
    }
}

/// Check Hermiticity, unit trace and positivity of `m`, returning the first
/// violated invariant.
pub fn validate_density(m: &Mat2, tol: &Tolerances) -> Result<()> {
    let herm = m.hermiticity_defect();
    if herm > tol.hermiticity {
        return Err(Error::NotHermitian {
            deviation: herm,
            tolerance: tol.hermiticity,
        });
    }
    let tr_dev = (m.trace() - ONE).norm();
    if tr_dev > tol.trace {
        return Err(Error::TraceNotOne {
            deviation: tr_dev,
            tolerance: tol.trace,
        });
    }
    let (lo, _) = m.eigvals_hermitian();
    if lo < tol.positivity_floor {
        return Err(Error::NotPositive {
            min_eigenvalue: lo,
            floor: tol.positivity_floor,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-14;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pauli_products() {
        let x = Mat2::sigma_x();
        let y = Mat2::sigma_y();
        let z = Mat2::sigma_z();
        assert!((x * y - z.scale(I)).max_abs() < TOL);
        assert!((y * z - x.scale(I)).max_abs() < TOL);
        assert!((z * x - y.scale(I)).max_abs() < TOL);
        assert!((x * x - Mat2::identity()).max_abs() < TOL);
        assert!((y * y - Mat2::identity()).max_abs() < TOL);
        assert!((z * z - Mat2::identity()).max_abs() < TOL);
    }

    #[test]
    fn hand_computed_product_and_adjoint() {
        let a = Mat2::new(c(1.0, 1.0), c(0.0, 2.0), c(3.0, 0.0), c(-1.0, -1.0));
        let b = Mat2::new(c(0.0, 1.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, -1.0));
        let ab = a * b;
        // (1+i)(i) + (2i)(2) = i + i^2 + 4i = -1 + 5i
        assert!((ab.e[0][0] - c(-1.0, 5.0)).norm() < TOL);
        // (1+i)(1) + (2i)(-i) = 1 + i + 2 = 3 + i
        assert!((ab.e[0][1] - c(3.0, 1.0)).norm() < TOL);
        let adj = a.adjoint();
        assert!((adj.e[0][1] - c(3.0, 0.0)).norm() < TOL);
        assert!((adj.e[1][0] - c(0.0, -2.0)).norm() < TOL);
    }

    #[test]
    fn bloch_of_maximally_mixed_is_zero() {
        let s = DensityMatrix::maximally_mixed().bloch_vector();
        assert_eq!((s.sx, s.sy, s.sz), (0.0, 0.0, 0.0));
    }

    #[test]
    fn bloch_of_sigma_z_eigenstate() {
        let rho = DensityMatrix::new(Mat2::diag(ONE, ZERO)).unwrap();
        let s = rho.bloch_vector();
        assert!((s.sx.abs(), s.sy.abs()) == (0.0, 0.0) && (s.sz - 1.0).abs() < TOL);
    }

    #[test]
    fn bloch_reads_off_pauli_coefficient() {
        // rho = (1 + 0.3 sigma_x)/2
        let m = (Mat2::identity() + Mat2::sigma_x().scale_re(0.3)).scale_re(0.5);
        let s = DensityMatrix::new(m).unwrap().bloch_vector();
        assert!((s.sx - 0.3).abs() < TOL && s.sy.abs() < TOL && s.sz.abs() < TOL);
    }

    #[test]
    fn density_from_bloch_examples() {
        let rho = BlochVector::new(0.0, 0.0, 0.0).density().unwrap();
        assert!(rho.matrix().max_abs_diff(&Mat2::identity().scale_re(0.5)) < TOL);

        let rho = BlochVector::new(0.0, 0.0, -1.0).density().unwrap();
        assert!(rho.matrix().max_abs_diff(&Mat2::diag(ZERO, ONE)) < TOL);

        let rho = BlochVector::new(1.0, 0.0, 0.0).density().unwrap();
        let expect = (Mat2::identity() + Mat2::sigma_x()).scale_re(0.5);
        assert!(rho.matrix().max_abs_diff(&expect) < TOL);
        assert!(rho.linear_entropy().abs() < TOL);
    }

    #[test]
    fn overlong_bloch_vector_is_rejected() {
        let err = BlochVector::new(0.8, 0.0, 0.8).density().unwrap_err();
        assert!(matches!(err, Error::BlochNormTooLarge { .. }));
    }

    #[test]
    fn linear_entropy_values() {
        assert!(DensityMatrix::maximally_mixed().linear_entropy() - 0.5 < TOL);
        let pure = DensityMatrix::from_state_vector(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert!(pure.linear_entropy().abs() < TOL);
        // |S| = 0.5 -> delta = (1 - 0.25)/2 = 0.375
        let rho = BlochVector::new(0.3, 0.0, 0.4).density().unwrap();
        assert!((rho.linear_entropy() - 0.375).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_bad_states() {
        let not_herm = Mat2::new(c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::NotHermitian { .. })
        ));

        let bad_trace = Mat2::diag(ONE, ONE);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::TraceNotOne { .. })
        ));

        let not_pos = Mat2::diag(c(1.5, 0.0), c(-0.5, 0.0));
        assert!(matches!(
            DensityMatrix::new(not_pos),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn eigvals_match_hand_cases() {
        let (lo, hi) = Mat2::sigma_x().eigvals_hermitian();
        assert!((lo + 1.0).abs() < TOL && (hi - 1.0).abs() < TOL);
        let m = Mat2::new(c(2.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(2.0, 0.0));
        // 2 +- 1
        let (lo, hi) = m.eigvals_hermitian();
        assert!((lo - 1.0).abs() < TOL && (hi - 3.0).abs() < TOL);
    }

    #[test]
    fn eigvals_satisfy_characteristic_polynomial() {
        let m = Mat2::new(c(0.7, 0.0), c(0.2, 0.3), c(0.2, -0.3), c(0.3, 0.0));
        let (lo, hi) = m.eigvals_hermitian();
        for lam in [lo, hi] {
            let p = (m - Mat2::identity().scale_re(lam)).det().norm();
            assert!(p < 1e-14, "characteristic polynomial residual {p}");
        }
    }

    #[test]
    fn entropy_identity_on_random_states() {
        // 1 - tr rho^2 == (1 - |S|^2)/2 for valid states.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r: f64 = rng.gen_range(0.0..1.0);
            let cos_t: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let sin_t = (1.0 - cos_t * cos_t).sqrt();
            let s = BlochVector::new(r * sin_t * phi.cos(), r * sin_t * phi.sin(), r * cos_t);
            let rho = s.density().unwrap();
            let lhs = rho.linear_entropy();
            let rhs = 0.5 * (1.0 - s.norm() * s.norm());
            assert!((lhs - rhs).abs() < 1e-12);
            // And the roundtrip is the identity to 1e-14.
            let back = rho.bloch_vector();
            assert!((back.sx - s.sx).abs() < 1e-14);
            assert!((back.sy - s.sy).abs() < 1e-14);
            assert!((back.sz - s.sz).abs() < 1e-14);
        }
    }
}

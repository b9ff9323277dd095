//! Reduced two-component amplitude vectors.
//!
//! The non-target basis states of an N-element search space all evolve
//! identically under the Grover iterate, so the full state collapses onto
//! the pair `(v_tau, v_a)`: the amplitude of the target and the amplitude of
//! the normalized uniform superposition of every other element.
//!
//! Up to a global phase, every such pair can be written as
//! `(sin(alpha) e^{i theta}, cos(alpha))` with `alpha` in `[0, pi/2]` and
//! `theta` in `(-pi, pi]`; [`PolarForm`] holds that parameterization.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Inputs whose squared norm is within this distance of 1 are silently
/// renormalized; anything further off is rejected.
pub const NORM_TOL: f64 = 1e-9;

/// Components with modulus at or below this are treated as zero when
/// extracting the relative phase.
pub const ZERO_AMPLITUDE: f64 = 1e-15;

/// Database size `N` together with the derived angle `beta`, where
/// `sin(beta) = 1/sqrt(N)`.
///
/// The trigonometric values are computed once from the exact integer `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaParams {
    n: u64,
    sin_beta: f64,
    cos_beta: f64,
    sin_2beta: f64,
    cos_2beta: f64,
}

impl BetaParams {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        let nf = n as f64;
        let root = ((n - 1) as f64).sqrt();
        Ok(Self {
            n,
            sin_beta: 1.0 / nf.sqrt(),
            cos_beta: (((n - 1) as f64) / nf).sqrt(),
            sin_2beta: 2.0 * root / nf,
            cos_2beta: ((n - 2) as f64) / nf,
        })
    }

    /// `N = 2^n_qubits`.
    pub fn from_qubits(n_qubits: u32) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 62 {
            return Err(Error::InvalidQubits(n_qubits));
        }
        Self::new(1u64 << n_qubits)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn n_f64(&self) -> f64 {
        self.n as f64
    }

    pub fn sin_beta(&self) -> f64 {
        self.sin_beta
    }

    pub fn cos_beta(&self) -> f64 {
        self.cos_beta
    }

    pub fn sin_2beta(&self) -> f64 {
        self.sin_2beta
    }

    pub fn cos_2beta(&self) -> f64 {
        self.cos_2beta
    }

    /// The angle itself, in `(0, pi/4]`.
    pub fn beta(&self) -> f64 {
        self.sin_beta.atan2(self.cos_beta)
    }

    /// `sqrt(N - 1) / N`, the off-diagonal scale of the iteration matrix.
    pub(crate) fn off_diagonal(&self) -> f64 {
        0.5 * self.sin_2beta
    }
}

/// Normalized reduced amplitude vector `(v_tau, v_a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair {
    v_tau: Complex64,
    v_a: Complex64,
}

impl ComplexPair {
    /// Builds a pair, renormalizing when the squared norm is within
    /// [`NORM_TOL`] of 1.
    pub fn new(v_tau: Complex64, v_a: Complex64) -> Result<Self> {
        let norm_sqr = v_tau.norm_sqr() + v_a.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let scale = norm_sqr.sqrt().recip();
        Ok(Self {
            v_tau: v_tau * scale,
            v_a: v_a * scale,
        })
    }

    /// Real pair `(1/sqrt(N), sqrt((N-1)/N))` produced by the Hadamard
    /// transform of `|0...0>`.
    pub fn hadamard(params: &BetaParams) -> Self {
        Self {
            v_tau: Complex64::new(params.sin_beta(), 0.0),
            v_a: Complex64::new(params.cos_beta(), 0.0),
        }
    }

    /// Caller guarantees normalization (e.g. output of a unitary map).
    pub(crate) fn from_unitary_image(v_tau: Complex64, v_a: Complex64) -> Self {
        Self { v_tau, v_a }
    }

    pub fn v_tau(&self) -> Complex64 {
        self.v_tau
    }

    pub fn v_a(&self) -> Complex64 {
        self.v_a
    }

    /// Probability of observing the target, `|v_tau|^2`.
    pub fn target_probability(&self) -> f64 {
        self.v_tau.norm_sqr()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.v_tau.im.abs() <= tol && self.v_a.im.abs() <= tol
    }

    /// Factors out the global phase and returns `(alpha, theta)`.
    ///
    /// The phase of `v_a` is removed; when `v_a` vanishes the phase of
    /// `v_tau` is removed instead. Either way a zero component yields
    /// `theta = 0`.
    pub fn to_polar(&self) -> PolarForm {
        let tau_mod = self.v_tau.norm();
        let a_mod = self.v_a.norm();
        let alpha = tau_mod.atan2(a_mod);
        let theta = if tau_mod <= ZERO_AMPLITUDE || a_mod <= ZERO_AMPLITUDE {
            0.0
        } else {
            wrap_angle(self.v_tau.arg() - self.v_a.arg())
        };
        PolarForm { alpha, theta }
    }
}

/// `(alpha, theta)` parameterization of a reduced amplitude vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarForm {
    alpha: f64,
    theta: f64,
}

impl PolarForm {
    /// `alpha` must lie in `[0, pi/2]`. `theta` may be any finite angle and
    /// is wrapped into `(-pi, pi]`.
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&alpha) || !theta.is_finite() {
            return Err(Error::PolarOutOfRange { alpha, theta });
        }
        Ok(Self {
            alpha,
            theta: wrap_angle(theta),
        })
    }

    /// Real vector `(sin alpha, cos alpha)`.
    pub fn real(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `sin^2(alpha)`.
    pub fn target_probability(&self) -> f64 {
        self.alpha.sin().powi(2)
    }

    /// `(sin(alpha) e^{i theta}, cos(alpha))`, normalized by construction.
    pub fn to_pair(&self) -> ComplexPair {
        ComplexPair {
            v_tau: Complex64::from_polar(self.alpha.sin(), self.theta),
            v_a: Complex64::new(self.alpha.cos(), 0.0),
        }
    }
}

impl From<&ComplexPair> for PolarForm {
    fn from(v: &ComplexPair) -> Self {
        v.to_polar()
    }
}

impl From<&PolarForm> for ComplexPair {
    fn from(p: &PolarForm) -> Self {
        p.to_pair()
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let t = x.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn beta_params_identities() {
        for n in [2u64, 3, 4, 6, 16, 1024, 1 << 20] {
            let p = BetaParams::new(n).unwrap();
            let nf = n as f64;
            assert!((p.sin_beta().powi(2) + p.cos_beta().powi(2) - 1.0).abs() <= 1e-15);
            assert!((p.sin_2beta() - 2.0 * p.sin_beta() * p.cos_beta()).abs() <= 1e-15);
            assert!((p.cos_2beta() - (nf - 2.0) / nf).abs() <= 1e-15);
        }
    }

    #[test]
    fn rejects_small_sizes() {
        assert!(matches!(BetaParams::new(1), Err(Error::InvalidSize(1))));
        assert!(matches!(BetaParams::new(0), Err(Error::InvalidSize(0))));
        assert!(BetaParams::from_qubits(0).is_err());
        assert_eq!(BetaParams::from_qubits(10).unwrap().n(), 1024);
    }

    #[test]
    fn hadamard_values() {
        let v = ComplexPair::hadamard(&BetaParams::new(4).unwrap());
        assert_eq!(v.v_tau(), c(0.5, 0.0));
        assert!((v.v_a().re - 3f64.sqrt() / 2.0).abs() < 1e-15);

        let v = ComplexPair::hadamard(&BetaParams::new(2).unwrap());
        assert!((v.v_tau().re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((v.v_a().re - FRAC_1_SQRT_2).abs() < 1e-15);

        let v = ComplexPair::hadamard(&BetaParams::new(1024).unwrap());
        assert_eq!(v.v_tau().re, 0.03125);
        assert!((v.v_a().re - 0.999_511_599_482_467_3).abs() < 1e-15);
        assert_eq!(v.to_polar().theta(), 0.0);
    }

    #[test]
    fn polar_examples() {
        let v = ComplexPair::new(Complex64::from_polar(FRAC_1_SQRT_2, FRAC_PI_3), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        let p = v.to_polar();
        assert!((p.alpha() - FRAC_PI_4).abs() < 1e-15);
        assert!((p.theta() - FRAC_PI_3).abs() < 1e-15);

        let v = ComplexPair::new(c(0.0, 0.0), Complex64::from_polar(1.0, FRAC_PI_4)).unwrap();
        assert_eq!(v.to_polar(), PolarForm::new(0.0, 0.0).unwrap());

        let p = ComplexPair::new(c(0.0, 0.6), c(0.8, 0.0)).unwrap().to_polar();
        assert!((p.alpha() - 0.6f64.asin()).abs() < 1e-15);
        assert!((p.alpha() - 0.643_501_108_793_284_4).abs() < 1e-15);
        assert!((p.theta() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn zero_non_target_factors_out_target_phase() {
        let p = ComplexPair::new(Complex64::from_polar(1.0, 2.0), c(0.0, 0.0))
            .unwrap()
            .to_polar();
        assert_eq!(p.alpha(), FRAC_PI_2);
        assert_eq!(p.theta(), 0.0);
    }

    #[test]
    fn from_polar_examples() {
        assert_eq!(PolarForm::new(0.0, 0.0).unwrap().to_pair(), ComplexPair::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap());
        let v = PolarForm::new(FRAC_PI_2, 0.0).unwrap().to_pair();
        assert!((v.v_tau() - c(1.0, 0.0)).norm() < 1e-15 && v.v_a().norm() < 1e-15);
        let v = PolarForm::new(FRAC_PI_4, -FRAC_PI_2).unwrap().to_pair();
        assert!((v.v_tau() - c(0.0, -FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((v.v_a() - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn normalization_tolerance() {
        let v = ComplexPair::new(c(0.6, 0.0), c(0.8 + 1e-10, 0.0)).unwrap();
        assert!((v.v_tau().norm_sqr() + v.v_a().norm_sqr() - 1.0).abs() < 1e-15);
        assert!(matches!(
            ComplexPair::new(c(0.6, 0.0), c(0.81, 0.0)),
            Err(Error::NotNormalized(_))
        ));
        assert!(ComplexPair::new(c(f64::NAN, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn polar_range_checks() {
        assert!(PolarForm::new(-0.1, 0.0).is_err());
        assert!(PolarForm::new(1.6, 0.0).is_err());
        assert!(PolarForm::new(0.3, f64::INFINITY).is_err());
        assert_eq!(PolarForm::new(0.3, -PI).unwrap().theta(), PI);
        assert!((PolarForm::new(0.3, 3.0 * PI / 2.0).unwrap().theta() + FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn wrap_angle_is_half_open() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert_eq!(wrap_angle(0.0), 0.0);
        assert!((wrap_angle(TAU + 0.5) - 0.5).abs() < 1e-15);
        assert!((wrap_angle(-TAU - 0.5) + 0.5).abs() < 1e-15);
    }
}

//! One step of the generalized Grover iteration on the reduced pair.
//!
//! With `e = e^{i phi}` the step is the 2x2 matrix
//!
//! ```text
//! [ e((1 - e)/N - 1)            sqrt(N-1)/N (1 - e)  ]
//! [ sqrt(N-1)/N e (1 - e)       -(1/N + (1 - 1/N) e) ]
//! ```
//!
//! acting on `(v_tau, v_a)`. It equals `-W I_tau`, where `I_tau` multiplies
//! the target by `e` and `W = I + (e - 1)|s><s|` is the generalized
//! diffusion about the uniform state `|s>`. At `phi = 0` it is `-I`.
//!
//! Besides the matrix route, this module evaluates the target probability
//! after one step in closed form, both for arbitrary `(alpha, theta)` and as
//! a concave quadratic in `u = cos(phi)` for real inputs.

use num_complex::Complex64;

use crate::amplitude::{BetaParams, ComplexPair, PolarForm};
use crate::error::{Error, Result};

/// Probabilities within this distance outside `[0, 1]` are clamped.
pub const PROBABILITY_SLACK: f64 = 1e-12;

/// Clamps rounding excursions; anything larger is a logic error upstream.
pub fn clamp_probability(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else if (-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        Ok(p.clamp(0.0, 1.0))
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationMatrix {
    entries: [[Complex64; 2]; 2],
    phi: f64,
    n: u64,
}

impl IterationMatrix {
    pub fn new(params: &BetaParams, phi: f64) -> Self {
        let nf = params.n_f64();
        let r = params.off_diagonal();
        let e = Complex64::from_polar(1.0, phi);
        let one = Complex64::new(1.0, 0.0);
        let one_minus_e = one - e;
        let entries = [
            [e * (one_minus_e / nf - one), one_minus_e * r],
            [e * one_minus_e * r, -(one / nf + e * (1.0 - 1.0 / nf))],
        ];
        Self {
            entries,
            phi,
            n: params.n(),
        }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Matrix-vector product. The matrix is unitary, so the image stays
    /// normalized.
    pub fn apply(&self, v: &ComplexPair) -> ComplexPair {
        let [[m00, m01], [m10, m11]] = self.entries;
        ComplexPair::from_unitary_image(m00 * v.v_tau() + m01 * v.v_a(), m10 * v.v_tau() + m11 * v.v_a())
    }

    /// `A A^dagger`.
    pub fn gram(&self) -> [[Complex64; 2]; 2] {
        let m = &self.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
            }
        }
        out
    }
}

/// Reference evaluation: `|(A^phi v)_tau|^2`.
pub fn target_probability_direct(params: &BetaParams, phi: f64, v: &ComplexPair) -> f64 {
    let [m00, m01] = IterationMatrix::new(params, phi).entries[0];
    (m00 * v.v_tau() + m01 * v.v_a()).norm_sqr()
}

/// Target probability after one step, written as a trigonometric function
/// of `phi` for fixed `(N, alpha, theta)`.
///
/// ```text
/// P(phi) = sin(2b) [ (r cos 2a + sin 2a cos(phi + theta) / N)(1 - cos phi)
///                    - sin 2a cos(phi + theta) / 2 ]
///          + r sin 2a cos(theta) + sin^2 a
/// ```
///
/// with `r = sqrt(N-1)/N` and `sin(2b) = 2r`.
#[derive(Clone, Copy, Debug)]
pub struct OneStepObjective {
    sin_2beta: f64,
    r: f64,
    inv_n: f64,
    sin_2alpha: f64,
    cos_2alpha: f64,
    theta: f64,
    offset: f64,
}

impl OneStepObjective {
    pub fn new(params: &BetaParams, p: &PolarForm) -> Self {
        let (alpha, theta) = (p.alpha(), p.theta());
        let r = params.off_diagonal();
        let sin_2alpha = (2.0 * alpha).sin();
        Self {
            sin_2beta: params.sin_2beta(),
            r,
            inv_n: 1.0 / params.n_f64(),
            sin_2alpha,
            cos_2alpha: (2.0 * alpha).cos(),
            theta,
            offset: r * sin_2alpha * theta.cos() + alpha.sin().powi(2),
        }
    }

    /// Unclamped probability at `phi`.
    pub fn value(&self, phi: f64) -> f64 {
        let c = (phi + self.theta).cos();
        let bracket = (self.r * self.cos_2alpha + self.inv_n * self.sin_2alpha * c) * (1.0 - phi.cos())
            - 0.5 * self.sin_2alpha * c;
        self.sin_2beta * bracket + self.offset
    }

    /// `dP/dphi`.
    pub fn slope(&self, phi: f64) -> f64 {
        let (s, c) = (phi + self.theta).sin_cos();
        let (sp, cp) = phi.sin_cos();
        self.sin_2beta
            * (-self.inv_n * self.sin_2alpha * s * (1.0 - cp)
                + (self.r * self.cos_2alpha + self.inv_n * self.sin_2alpha * c) * sp
                + 0.5 * self.sin_2alpha * s)
    }
}

/// Closed-form target probability after one step from `p` with phase `phi`.
pub fn target_probability_closed_form(params: &BetaParams, phi: f64, p: &PolarForm) -> Result<f64> {
    clamp_probability(OneStepObjective::new(params, p).value(phi))
}

/// Coefficients of `P(u) = -a u^2 - b u + constant`, `u = cos(phi)`, for a
/// real input `(sin alpha, cos alpha)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticCoeffs {
    pub a_coef: f64,
    pub b_coef: f64,
    pub const_coef: f64,
}

impl QuadraticCoeffs {
    pub fn new(params: &BetaParams, alpha: f64) -> Self {
        let (sb, cb) = (params.sin_beta(), params.cos_beta());
        let (sa, ca) = alpha.sin_cos();
        let beta = params.beta();
        let b_part = sa * cb * cb + ca * sb * cb;
        let c_part = sb * sb * sa + sb * cb * ca;
        Self {
            a_coef: sb * sb * params.sin_2beta() * (2.0 * alpha).sin(),
            b_coef: 0.5 * params.sin_2beta() * (2.0 * alpha + 2.0 * beta).sin(),
            const_coef: b_part * b_part + c_part * c_part,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        -self.a_coef * u * u - self.b_coef * u + self.const_coef
    }

    /// Unconstrained stationary point `-b / (2a)`; `None` when `a = 0`.
    pub fn vertex(&self) -> Option<f64> {
        (self.a_coef != 0.0).then(|| -self.b_coef / (2.0 * self.a_coef))
    }
}

/// Target probability after the first step from the Hadamard state, as a
/// function of `u = cos(phi)`:
/// `(1 - c)/2 ((c^2 - 1) u^2 - 2c(c + 1) u + (c + 1)^2 + 1)` with
/// `c = cos(2 beta) = 1 - 2/N`.
pub fn first_step_objective(params: &BetaParams, u: f64) -> f64 {
    let c = params.cos_2beta();
    0.5 * (1.0 - c) * ((c * c - 1.0) * u * u - 2.0 * c * (c + 1.0) * u + (c + 1.0).powi(2) + 1.0)
}

/// Maximizer of [`first_step_objective`] over `u` in `[-1, 1]`.
///
/// The stationary point is `u* = 1 - N/2`, which leaves the interval for
/// every `N >= 4`, pinning the optimum to `u = -1`, i.e. `phi = pi`.
pub fn first_step_argmax(params: &BetaParams) -> f64 {
    (1.0 - 0.5 * params.n_f64()).clamp(-1.0, 1.0)
}

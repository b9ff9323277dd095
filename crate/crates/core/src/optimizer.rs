//! Per-step optimal phase.
//!
//! For a real input `(sin alpha, cos alpha)` the one-step target probability
//! is a concave quadratic in `u = cos(phi)` with vertex
//! `u* = (-N + 2 - 2 sqrt(N-1) cot 2alpha) / 4`. Clamping the vertex to
//! `[-1, 1]` splits `alpha` into three regions:
//!
//! * `R1 = (0, low]`: the vertex is at or below `-1`, so `phi = pi`;
//! * `R2 = (low, high)`: the vertex is interior, `phi = arccos(u*)`;
//! * `R3 = [high, pi/2)`: the vertex is at or above `1`, so `phi = 0`;
//!
//! where `low = arccot((6 - N) / (2 sqrt(N-1))) / 2` and
//! `high = arccot((-N - 2) / (2 sqrt(N-1))) / 2`, with `arccot` taking values
//! in `(0, pi)`.
//!
//! For complex inputs there is no such reduction and
//! [`optimal_phase_general`] maximizes the closed-form probability over
//! `phi` numerically.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::amplitude::{wrap_angle, BetaParams, PolarForm};
use crate::error::{Error, Result};
use crate::grover_map::{clamp_probability, target_probability_closed_form, OneStepObjective, QuadraticCoeffs};

/// Inverse cotangent on the branch `(0, pi)`.
pub fn arccot(x: f64) -> f64 {
    FRAC_PI_2 - x.atan()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    R1,
    R2,
    R3,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::R1 => "R1",
            Region::R2 => "R2",
            Region::R3 => "R3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionReport {
    pub region: Region,
    pub alpha: f64,
    pub boundary_low: f64,
    pub boundary_high: f64,
    pub phi_opt: f64,
}

/// The two angles splitting `(0, pi/2)` into `R1`, `R2`, `R3`.
pub fn region_boundaries(params: &BetaParams) -> (f64, f64) {
    let nf = params.n_f64();
    let denom = 2.0 * (nf - 1.0).sqrt();
    (
        0.5 * arccot((6.0 - nf) / denom),
        0.5 * arccot((-nf - 2.0) / denom),
    )
}

/// Closed region endpoints absorb this much rounding, so that e.g. the
/// `N = 4` Hadamard angle `pi/6` lands in `R1` as it should.
pub const BOUNDARY_SLACK: f64 = 1e-14;

/// Region of a real input `(sin alpha, cos alpha)` and its optimal phase.
pub fn classify_region(params: &BetaParams, alpha: f64) -> Result<RegionReport> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::DegenerateAlpha(alpha));
    }
    let (boundary_low, boundary_high) = region_boundaries(params);
    let (region, phi_opt) = if alpha <= boundary_low + BOUNDARY_SLACK {
        (Region::R1, PI)
    } else if alpha < boundary_high - BOUNDARY_SLACK {
        (Region::R2, phi_max_in_region(params, alpha)?)
    } else {
        (Region::R3, 0.0)
    };
    Ok(RegionReport {
        region,
        alpha,
        boundary_low,
        boundary_high,
        phi_opt,
    })
}

/// `(-N + 2 - 2 sqrt(N-1) cot 2alpha) / 4`, the cosine of the interior
/// maximizer for a real input.
fn phi_max_argument(params: &BetaParams, alpha: f64) -> f64 {
    let nf = params.n_f64();
    0.25 * (-nf + 2.0 - 2.0 * (nf - 1.0).sqrt() / (2.0 * alpha).tan())
}

/// `arccos((-N + 2 - 2 sqrt(N-1) cot 2alpha) / 4)`, valid when `alpha` is
/// in `R2` (the argument then lies in `[-1, 1]`).
pub fn phi_max_closed_form(params: &BetaParams, alpha: f64) -> Result<f64> {
    let argument = phi_max_argument(params, alpha);
    if !(-1.0..=1.0).contains(&argument) {
        return Err(Error::OutsideNontrivialRegion { alpha, argument });
    }
    Ok(argument.acos())
}

// Inside R2 the argument can miss [-1, 1] by rounding at the endpoints.
fn phi_max_in_region(params: &BetaParams, alpha: f64) -> Result<f64> {
    let argument = phi_max_argument(params, alpha);
    if argument.abs() <= 1.0 + 1e-12 {
        Ok(argument.clamp(-1.0, 1.0).acos())
    } else {
        Err(Error::OutsideNontrivialRegion { alpha, argument })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Uniform grid size over one period of `phi`.
    pub scan_points: usize,
    /// Cap on refinement iterations per candidate.
    pub refine_iters: usize,
    /// Refinement stops once the bracket around a maximizer is this narrow.
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            scan_points: 1024,
            refine_iters: 64,
            tol: 1e-10,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scan_points < 3 {
            return Err(Error::InvalidArgument(format!(
                "scan_points must be at least 3, got {}",
                self.scan_points
            )));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult {
    pub phi_opt: f64,
    pub p_opt: f64,
    pub p_pi: f64,
    pub improvement: f64,
    pub evaluations: usize,
}

/// Optimal phase for a real input, dispatched on the region of `alpha`.
///
/// At the endpoints `alpha = 0` and `alpha = pi/2` the quadratic in
/// `cos(phi)` degenerates to a line; the maximum then sits at
/// `u = -sign(b)`, with `b = 0` resolved to `phi = pi`.
pub fn optimal_phase_real(params: &BetaParams, alpha: f64) -> Result<OptimizationResult> {
    if !(0.0..=FRAC_PI_2).contains(&alpha) {
        return Err(Error::DegenerateAlpha(alpha));
    }
    let phi_opt = if alpha == 0.0 || alpha == FRAC_PI_2 {
        if QuadraticCoeffs::new(params, alpha).b_coef >= 0.0 {
            PI
        } else {
            0.0
        }
    } else {
        classify_region(params, alpha)?.phi_opt
    };
    let polar = PolarForm::real(alpha)?;
    let p_opt = target_probability_closed_form(params, phi_opt, &polar)?;
    let p_pi = target_probability_closed_form(params, PI, &polar)?;
    Ok(OptimizationResult {
        phi_opt,
        p_opt,
        p_pi,
        improvement: p_opt - p_pi,
        evaluations: 2,
    })
}

/// Probe values closer than this are treated as ties.
const TIE: f64 = 1e-13;

struct Counted<'a> {
    objective: &'a OneStepObjective,
    evaluations: usize,
}

impl Counted<'_> {
    fn value(&mut self, phi: f64) -> f64 {
        self.evaluations += 1;
        self.objective.value(phi)
    }

    fn slope(&mut self, phi: f64) -> f64 {
        self.evaluations += 1;
        self.objective.slope(phi)
    }
}

/// Global maximizer of the one-step target probability over
/// `phi` in `[-pi, pi]`.
///
/// The objective is a trigonometric polynomial of degree two in `phi`, so it
/// has at most two local maxima per period. A uniform periodic scan locates
/// them; each is then refined by bisection on the analytic derivative
/// (golden-section on the value if the derivative does not change sign in
/// the bracket). The phases `pi` and `0` are always probed as well.
///
/// The result is canonicalized to `(-pi, pi]`. For `theta = 0` the
/// objective is even in `phi` and the non-negative maximizer is reported.
pub fn optimal_phase_general(params: &BetaParams, p: &PolarForm, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    cfg.validate()?;
    let objective = OneStepObjective::new(params, p);
    let mut f = Counted {
        objective: &objective,
        evaluations: 0,
    };

    let m = cfg.scan_points;
    let step = 2.0 * PI / m as f64;
    let grid: Vec<f64> = (0..m).map(|k| -PI + step * k as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&phi| f.value(phi)).collect();

    let p_pi = f.value(PI);
    let p_zero = f.value(0.0);
    let mut best = Candidate::new(PI, p_pi);
    best.offer(Candidate::new(0.0, p_zero));

    for k in 0..m {
        let prev = values[(k + m - 1) % m];
        let next = values[(k + 1) % m];
        if values[k] < prev || values[k] < next {
            continue;
        }
        best.offer(Candidate::new(grid[k], values[k]));
        let (lo, hi) = (grid[k] - step, grid[k] + step);
        let refined = refine(&mut f, lo, hi, cfg);
        best.offer(Candidate::new(refined, f.value(refined)));
    }

    let mut phi_opt = best.phi;
    if p.theta() == 0.0 {
        phi_opt = phi_opt.abs();
    }
    let p_opt = clamp_probability(best.value)?;
    let p_pi = clamp_probability(p_pi)?;
    Ok(OptimizationResult {
        phi_opt,
        p_opt,
        p_pi,
        improvement: p_opt - p_pi,
        evaluations: f.evaluations,
    })
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    phi: f64,
    value: f64,
}

impl Candidate {
    fn new(phi: f64, value: f64) -> Self {
        Self {
            phi: wrap_angle(phi),
            value,
        }
    }

    fn offer(&mut self, other: Candidate) {
        let better = if (other.value - self.value).abs() <= TIE {
            other.phi >= 0.0 && self.phi < 0.0
        } else {
            other.value > self.value
        };
        if better {
            *self = other;
        }
    }
}

fn refine(f: &mut Counted<'_>, mut lo: f64, mut hi: f64, cfg: &OptimizerConfig) -> f64 {
    if f.slope(lo) >= 0.0 && f.slope(hi) <= 0.0 {
        for _ in 0..cfg.refine_iters {
            if hi - lo <= cfg.tol {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if f.slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    golden_section_max(f, lo, hi, cfg)
}

fn golden_section_max(f: &mut Counted<'_>, mut lo: f64, mut hi: f64, cfg: &OptimizerConfig) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f.value(x1);
    let mut f2 = f.value(x2);
    for _ in 0..cfg.refine_iters {
        if hi - lo <= cfg.tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f.value(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f.value(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

/// Piecewise estimate `pi - theta` for `theta > 0` and `-pi - theta` for
/// `theta < 0`. `theta = 0` maps to `pi`, the classical phase.
pub fn rough_phase_estimate(p: &PolarForm) -> f64 {
    let theta = p.theta();
    if theta > 0.0 {
        PI - theta
    } else if theta < 0.0 {
        -PI - theta
    } else {
        PI
    }
}

/// Target probability `sin^2(low)` at which the classical phase stops
/// being optimal for real vectors:
/// `(1 + (N - 6) / sqrt(N^2 - 8N + 32)) / 2`.
pub fn threshold_probability(params: &BetaParams) -> f64 {
    let nf = params.n_f64();
    0.5 * (1.0 + (nf - 6.0) / (nf * nf - 8.0 * nf + 32.0).sqrt())
}

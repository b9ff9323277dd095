//! Experiment drivers behind the command-line tool.
//!
//! Each driver returns plain records; [`write_csv`] serializes them with a
//! header row and floats printed to 17 significant digits, so the output is
//! byte-for-byte reproducible.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::amplitude::{wrap_angle, BetaParams, ComplexPair, PolarForm};
use crate::error::{Error, Result};
use crate::grover_map::{clamp_probability, IterationMatrix};
use crate::optimizer::{
    classify_region, optimal_phase_general, region_boundaries, rough_phase_estimate, threshold_probability,
    OptimizerConfig, Region,
};
use crate::statevector::{verify_reduction, MAX_QUBITS};

/// Largest probability discrepancy a verification run may report and still
/// pass.
pub const VERIFY_TOL: f64 = 1e-10;

/// States this close to certainty end a trajectory.
pub const TRAJECTORY_STOP: f64 = 1.0 - 1e-12;

/// `|theta|` above this marks a state as complex.
pub const REAL_THETA_TOL: f64 = 1e-9;

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub trait CsvRecord {
    fn header() -> &'static str;
    fn fields(&self) -> Vec<String>;
}

pub fn write_csv<W: Write, R: CsvRecord>(out: &mut W, rows: &[R]) -> io::Result<()> {
    writeln!(out, "{}", R::header())?;
    for row in rows {
        writeln!(out, "{}", row.fields().join(","))?;
    }
    out.flush()
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub params: BetaParams,
    pub alpha_points: usize,
    pub theta_points: usize,
    pub optimizer: OptimizerConfig,
}

impl SweepSpec {
    pub fn new(params: BetaParams) -> Self {
        Self {
            params,
            alpha_points: 100,
            theta_points: 100,
            optimizer: OptimizerConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha_points < 2 || self.theta_points < 2 {
            return Err(Error::InvalidArgument(format!(
                "grid counts must be at least 2, got {}x{}",
                self.alpha_points, self.theta_points
            )));
        }
        self.optimizer.validate()
    }

    /// Uniform over `[0, pi/2]`, both endpoints included.
    pub fn alpha_grid(&self) -> Vec<f64> {
        let last = (self.alpha_points - 1) as f64;
        (0..self.alpha_points)
            .map(|i| FRAC_PI_2 * (i as f64 / last))
            .collect()
    }

    /// Uniform over one period, ending at `pi`: `theta_j = pi (2(j+1) - T) / T`.
    /// An even count puts `theta = 0` on the grid.
    pub fn theta_grid(&self) -> Vec<f64> {
        let t = self.theta_points as i64;
        (0..t)
            .map(|j| PI * ((2 * (j + 1) - t) as f64 / t as f64))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub theta: f64,
    pub phi_opt: f64,
    pub p_opt: f64,
    pub p_pi: f64,
    pub improvement: f64,
    pub phi_rough: f64,
    /// `phi_opt - phi_rough`, wrapped into `(-pi, pi]`.
    pub rough_deviation: f64,
}

impl CsvRecord for SweepRow {
    fn header() -> &'static str {
        "alpha,theta,phi_opt,p_opt,p_pi,improvement,phi_rough,rough_deviation"
    }

    fn fields(&self) -> Vec<String> {
        [
            self.alpha,
            self.theta,
            self.phi_opt,
            self.p_opt,
            self.p_pi,
            self.improvement,
            self.phi_rough,
            self.rough_deviation,
        ]
        .into_iter()
        .map(format_float)
        .collect()
    }
}

pub fn sweep_cell(params: &BetaParams, alpha: f64, theta: f64, cfg: &OptimizerConfig) -> Result<SweepRow> {
    let polar = PolarForm::new(alpha, theta)?;
    let best = optimal_phase_general(params, &polar, cfg)?;
    let phi_rough = rough_phase_estimate(&polar);
    Ok(SweepRow {
        alpha,
        theta: polar.theta(),
        phi_opt: best.phi_opt,
        p_opt: best.p_opt,
        p_pi: best.p_pi,
        improvement: best.improvement,
        phi_rough,
        rough_deviation: wrap_angle(best.phi_opt - phi_rough),
    })
}

/// Evaluates every grid cell, row-major with `alpha` outer. Cells run in
/// parallel; the output order does not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let alphas = spec.alpha_grid();
    let thetas = spec.theta_grid();
    let cols = thetas.len();
    (0..alphas.len() * cols)
        .into_par_iter()
        .map(|idx| sweep_cell(&spec.params, alphas[idx / cols], thetas[idx % cols], &spec.optimizer))
        .collect()
}

// ---------------------------------------------------------------------------
// trajectory

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Strategy {
    /// Always `pi`.
    Classical,
    /// Greedy one-step optimum.
    Optimal,
    /// Piecewise `pi - theta` estimate.
    Rough,
    Fixed(f64),
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Strategy::Classical),
            "optimal" => Ok(Strategy::Optimal),
            "rough" => Ok(Strategy::Rough),
            _ => match s.strip_prefix("fixed:").map(str::parse::<f64>) {
                Some(Ok(phi)) if phi.is_finite() => Ok(Strategy::Fixed(phi)),
                _ => Err(Error::UnknownStrategy(s.to_owned())),
            },
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Classical => f.write_str("classical"),
            Strategy::Optimal => f.write_str("optimal"),
            Strategy::Rough => f.write_str("rough"),
            Strategy::Fixed(phi) => write!(f, "fixed:{phi}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    Real(Region),
    Complex,
}

impl RegionLabel {
    pub fn of(params: &BetaParams, polar: &PolarForm) -> Result<Self> {
        if polar.theta().abs() > REAL_THETA_TOL {
            return Ok(RegionLabel::Complex);
        }
        let alpha = polar.alpha();
        Ok(RegionLabel::Real(if alpha <= 0.0 {
            Region::R1
        } else if alpha >= FRAC_PI_2 {
            Region::R3
        } else {
            classify_region(params, alpha)?.region
        }))
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Real(r) => r.fmt(f),
            RegionLabel::Complex => f.write_str("complex"),
        }
    }
}

/// State after `step` iterations. `phi_used` is the phase of the step that
/// produced it (`None` for the starting state).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub step: usize,
    pub phi_used: Option<f64>,
    pub p_target: f64,
    pub alpha: f64,
    pub theta: f64,
    pub region: RegionLabel,
}

impl CsvRecord for TrajectoryRecord {
    fn header() -> &'static str {
        "step,phi_used,p_target,alpha,theta,region"
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.step.to_string(),
            self.phi_used.map(format_float).unwrap_or_default(),
            format_float(self.p_target),
            format_float(self.alpha),
            format_float(self.theta),
            self.region.to_string(),
        ]
    }
}

fn record(params: &BetaParams, step: usize, phi_used: Option<f64>, state: &ComplexPair) -> Result<TrajectoryRecord> {
    let polar = state.to_polar();
    Ok(TrajectoryRecord {
        step,
        phi_used,
        p_target: clamp_probability(state.target_probability())?,
        alpha: polar.alpha(),
        theta: polar.theta(),
        region: RegionLabel::of(params, &polar)?,
    })
}

/// Iterates from the Hadamard state, choosing each phase by `strategy`,
/// until `max_steps` steps have run or the target probability reaches
/// [`TRAJECTORY_STOP`].
pub fn run_trajectory(
    params: &BetaParams,
    strategy: Strategy,
    max_steps: usize,
    cfg: &OptimizerConfig,
) -> Result<Vec<TrajectoryRecord>> {
    let mut state = ComplexPair::hadamard(params);
    let mut records = vec![record(params, 0, None, &state)?];
    for step in 1..=max_steps {
        if state.target_probability() >= TRAJECTORY_STOP {
            break;
        }
        let polar = state.to_polar();
        let phi = match strategy {
            Strategy::Classical => PI,
            Strategy::Optimal => optimal_phase_general(params, &polar, cfg)?.phi_opt,
            Strategy::Rough => rough_phase_estimate(&polar),
            Strategy::Fixed(phi) => wrap_angle(phi),
        };
        state = IterationMatrix::new(params, phi).apply(&state);
        records.push(record(params, step, Some(phi), &state)?);
    }
    Ok(records)
}

/// `floor(pi/4 sqrt(N))`, the classical iteration count.
pub fn classical_iterations(params: &BetaParams) -> usize {
    (0.25 * PI * params.n_f64().sqrt()).floor() as usize
}

// ---------------------------------------------------------------------------
// threshold

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdRow {
    pub n: u64,
    pub boundary_low: f64,
    pub boundary_high: f64,
    pub p_threshold: f64,
    /// `N (1 - P_r(N))`.
    pub scaled_gap: f64,
}

impl CsvRecord for ThresholdRow {
    fn header() -> &'static str {
        "n,boundary_low,boundary_high,p_threshold,scaled_gap"
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_float(self.boundary_low),
            format_float(self.boundary_high),
            format_float(self.p_threshold),
            format_float(self.scaled_gap),
        ]
    }
}

pub fn threshold_row(params: &BetaParams) -> ThresholdRow {
    let (boundary_low, boundary_high) = region_boundaries(params);
    let p_threshold = threshold_probability(params);
    ThresholdRow {
        n: params.n(),
        boundary_low,
        boundary_high,
        p_threshold,
        scaled_gap: params.n_f64() * (1.0 - p_threshold),
    }
}

pub fn threshold_table(sizes: &[u64]) -> Result<Vec<ThresholdRow>> {
    sizes
        .iter()
        .map(|&n| BetaParams::new(n).map(|p| threshold_row(&p)))
        .collect()
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub max_qubits: u32,
    pub samples: usize,
    pub seed: u64,
    /// Use this phase for every sample instead of drawing one.
    pub phi: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_qubits: 10,
            samples: 100,
            seed: 1,
            phi: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyRow {
    pub n_qubits: u32,
    pub samples: usize,
    pub max_prob_discrepancy: f64,
    pub max_amplitude_discrepancy: f64,
    pub max_leakage: f64,
}

impl CsvRecord for VerifyRow {
    fn header() -> &'static str {
        "n_qubits,samples,max_prob_discrepancy,max_amplitude_discrepancy,max_leakage"
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n_qubits.to_string(),
            self.samples.to_string(),
            format_float(self.max_prob_discrepancy),
            format_float(self.max_amplitude_discrepancy),
            format_float(self.max_leakage),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.rows.iter().map(|r| r.max_prob_discrepancy).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.max_discrepancy() <= VERIFY_TOL
    }
}

/// Compares the full and reduced simulations on seeded random samples for
/// every qubit count from 2 to `max_qubits`.
///
/// Each sample draws a target index, a phase, and a reduced pair with a
/// random global phase.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if !(2..=MAX_QUBITS).contains(&cfg.max_qubits) {
        return Err(Error::InvalidQubits(cfg.max_qubits));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::new();
    for n_qubits in 2..=cfg.max_qubits {
        let size = 1usize << n_qubits;
        let mut row = VerifyRow {
            n_qubits,
            samples: cfg.samples,
            max_prob_discrepancy: 0.0,
            max_amplitude_discrepancy: 0.0,
            max_leakage: 0.0,
        };
        for _ in 0..cfg.samples {
            let target = rng.gen_range(0..size);
            let drawn_phi = rng.gen_range(-PI..PI);
            let phi = cfg.phi.unwrap_or(drawn_phi);
            let alpha = rng.gen_range(0.0..=FRAC_PI_2);
            let theta = rng.gen_range(-PI..PI);
            let global = num_complex::Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
            let base = PolarForm::new(alpha, theta)?.to_pair();
            let reduced = ComplexPair::new(base.v_tau() * global, base.v_a() * global)?;
            let report = verify_reduction(n_qubits, target, phi, &reduced)?;
            row.max_prob_discrepancy = row.max_prob_discrepancy.max(report.prob_discrepancy);
            row.max_amplitude_discrepancy = row.max_amplitude_discrepancy.max(report.amplitude_discrepancy);
            row.max_leakage = row.max_leakage.max(report.leakage);
        }
        rows.push(row);
    }
    Ok(VerifyReport { rows })
}

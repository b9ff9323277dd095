//! Optimal phase change for the generalized Grover iteration.
//!
//! The crate works on the two-dimensional reduction of amplitude
//! amplification: a search space of `N` elements, one target, and an
//! arbitrary phase `phi` applied by both the oracle and the diffusion step.
//!
//! * [`amplitude`]: reduced amplitude pairs and their `(alpha, theta)` form.
//! * [`grover_map`]: the 2x2 iteration matrix and closed-form one-step
//!   target probability.
//! * [`optimizer`]: the phase maximizing that probability, in closed form
//!   for real vectors and by global 1-D search for complex ones.
//! * [`statevector`]: brute-force simulation on `2^n` amplitudes used to
//!   cross-check the reduction.
//! * [`experiment`]: sweeps, trajectories and tables emitted as CSV.
//!
//! ```
//! use grover_phase::{optimal_phase_general, BetaParams, ComplexPair, OptimizerConfig};
//!
//! let params = BetaParams::new(1024)?;
//! let start = ComplexPair::hadamard(&params).to_polar();
//! let best = optimal_phase_general(&params, &start, &OptimizerConfig::default())?;
//! assert!((best.phi_opt - std::f64::consts::PI).abs() < 1e-6);
//! # Ok::<(), grover_phase::Error>(())
//! ```

pub mod amplitude;
pub mod error;
pub mod experiment;
pub mod grover_map;
pub mod optimizer;
pub mod statevector;

pub use amplitude::{wrap_angle, BetaParams, ComplexPair, PolarForm};
pub use error::{Error, Result};
pub use grover_map::{
    first_step_argmax, first_step_objective, target_probability_closed_form, target_probability_direct,
    IterationMatrix, OneStepObjective, QuadraticCoeffs,
};
pub use optimizer::{
    classify_region, optimal_phase_general, optimal_phase_real, phi_max_closed_form, region_boundaries,
    rough_phase_estimate, threshold_probability, OptimizationResult, OptimizerConfig, Region, RegionReport,
};
pub use statevector::{verify_reduction, FourierSign, GroverIterate, PhaseOracle, StateVector, SymmetricEmbedding};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/reduced-iteration.md")]
    mod reduced_iteration {}
    #[doc = include_str!("../../../book/src/one-step-probability.md")]
    mod one_step_probability {}
    #[doc = include_str!("../../../book/src/real-vectors.md")]
    mod real_vectors {}
    #[doc = include_str!("../../../book/src/complex-vectors.md")]
    mod complex_vectors {}
    #[doc = include_str!("../../../book/src/statevector-check.md")]
    mod statevector_check {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

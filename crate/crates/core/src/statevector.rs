//! Full N-dimensional simulation of the generalized Grover iterate.
//!
//! This is the independent check on the reduced 2x2 map: the iterate is
//! assembled from the phase oracle `I_tau = I + (e^{i phi} - 1)|tau><tau|`
//! and the diffusion `W = F I_0 F`, where `F` is the Fourier sign matrix
//! `F[i][j] = 2^{-n/2} (-1)^{popcount(i & j)}`. Diagonal operators act
//! index-wise; `F` is applied with an in-place Walsh-Hadamard butterfly and
//! can also be materialized densely for cross-checks.
//!
//! The reduced matrix equals `-W I_tau` exactly, so [`GroverIterate`]
//! carries that global factor of `-1`.

use num_complex::Complex64;

use crate::amplitude::ComplexPair;
use crate::error::{Error, Result};
use crate::grover_map::IterationMatrix;
use crate::BetaParams;

pub const MAX_QUBITS: u32 = 14;

/// Allowed leakage out of `span{|tau>, |a>}` before a step is rejected.
pub const LEAKAGE_TOL: f64 = 1e-10;

fn check_qubits(n_qubits: u32) -> Result<usize> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::InvalidQubits(n_qubits));
    }
    Ok(1usize << n_qubits)
}

fn check_target(target: usize, size: usize) -> Result<()> {
    if target >= size {
        return Err(Error::TargetOutOfRange { index: target, size });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    n_qubits: u32,
}

impl StateVector {
    pub fn new(n_qubits: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        let size = check_qubits(n_qubits)?;
        if amplitudes.len() != size {
            return Err(Error::LengthMismatch {
                len: amplitudes.len(),
                n_qubits,
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { amplitudes, n_qubits })
    }

    pub fn basis(n_qubits: u32, index: usize) -> Result<Self> {
        let size = check_qubits(n_qubits)?;
        check_target(index, size)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); size];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, n_qubits })
    }

    /// `F |0>`: every amplitude equal to `2^{-n/2}`.
    pub fn uniform(n_qubits: u32) -> Result<Self> {
        let size = check_qubits(n_qubits)?;
        let a = Complex64::new((size as f64).sqrt().recip(), 0.0);
        Ok(Self {
            amplitudes: vec![a; size],
            n_qubits,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }
}

/// Reduced pair lifted to the full space: `v_tau` on the target and
/// `v_a / sqrt(N - 1)` on every other index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricEmbedding {
    pub target: usize,
    pub reduced: ComplexPair,
}

/// Coefficients of a full state along `|tau>` and `|a>`, plus the norm of
/// whatever lies outside that plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub v_tau: Complex64,
    pub v_a: Complex64,
    pub leakage: f64,
}

impl SymmetricEmbedding {
    pub fn new(target: usize, reduced: ComplexPair) -> Self {
        Self { target, reduced }
    }

    pub fn embed(&self, n_qubits: u32) -> Result<StateVector> {
        let size = check_qubits(n_qubits)?;
        check_target(self.target, size)?;
        let rest = self.reduced.v_a() / ((size - 1) as f64).sqrt();
        let mut amplitudes = vec![rest; size];
        amplitudes[self.target] = self.reduced.v_tau();
        Ok(StateVector { amplitudes, n_qubits })
    }

    pub fn project(state: &StateVector, target: usize) -> Result<Projection> {
        let size = state.len();
        check_target(target, size)?;
        let scale = ((size - 1) as f64).sqrt().recip();
        let sum: Complex64 = state
            .amplitudes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != target)
            .map(|(_, a)| a)
            .sum();
        let v_a = sum * scale;
        let per_index = v_a * scale;
        let leakage = state
            .amplitudes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != target)
            .map(|(_, a)| (a - per_index).norm_sqr())
            .sum::<f64>()
            .sqrt();
        Ok(Projection {
            v_tau: state.amplitudes[target],
            v_a,
            leakage,
        })
    }
}

/// `I + (e^{i phi} - 1)|tau><tau|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseOracle {
    n_qubits: u32,
    target: usize,
    factor: Complex64,
}

impl PhaseOracle {
    pub fn new(n_qubits: u32, target: usize, phi: f64) -> Result<Self> {
        let size = check_qubits(n_qubits)?;
        check_target(target, size)?;
        Ok(Self {
            n_qubits,
            target,
            factor: Complex64::from_polar(1.0, phi),
        })
    }

    pub fn apply(&self, state: &mut StateVector) {
        debug_assert_eq!(state.n_qubits, self.n_qubits);
        state.amplitudes[self.target] *= self.factor;
    }
}

/// The Fourier sign matrix on `n` qubits, i.e. the n-fold Hadamard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FourierSign {
    n_qubits: u32,
}

impl FourierSign {
    pub fn new(n_qubits: u32) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self { n_qubits })
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let scale = (-(self.n_qubits as f64) / 2.0).exp2();
        if (i & j).count_ones().is_multiple_of(2) {
            scale
        } else {
            -scale
        }
    }

    /// Dense `N x N` matrix, row-major. Memory is `16 N^2` bytes.
    pub fn dense(&self) -> Vec<Vec<Complex64>> {
        let size = 1usize << self.n_qubits;
        (0..size)
            .map(|i| (0..size).map(|j| Complex64::new(self.entry(i, j), 0.0)).collect())
            .collect()
    }

    pub fn apply(&self, state: &mut StateVector) {
        debug_assert_eq!(state.n_qubits, self.n_qubits);
        fwht(&mut state.amplitudes);
        let scale = (-(self.n_qubits as f64) / 2.0).exp2();
        for a in &mut state.amplitudes {
            *a *= scale;
        }
    }
}

/// Unnormalized in-place Walsh-Hadamard butterfly.
fn fwht(data: &mut [Complex64]) {
    let n = data.len();
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        half *= 2;
    }
}

/// One generalized Grover iterate `-F I_0 F I_tau` on the full space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroverIterate {
    oracle: PhaseOracle,
    zero_phase: PhaseOracle,
    fourier: FourierSign,
}

impl GroverIterate {
    pub fn new(n_qubits: u32, target: usize, phi: f64) -> Result<Self> {
        Ok(Self {
            oracle: PhaseOracle::new(n_qubits, target, phi)?,
            zero_phase: PhaseOracle::new(n_qubits, 0, phi)?,
            fourier: FourierSign::new(n_qubits)?,
        })
    }

    pub fn apply(&self, state: &mut StateVector) {
        self.oracle.apply(state);
        self.fourier.apply(state);
        self.zero_phase.apply(state);
        self.fourier.apply(state);
        for a in &mut state.amplitudes {
            *a = -*a;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionReport {
    /// Max over both components of `| |full|^2 - |reduced|^2 |`.
    pub prob_discrepancy: f64,
    /// Max componentwise amplitude difference, meaningful because the
    /// global phase is fixed to `-1`.
    pub amplitude_discrepancy: f64,
    pub leakage: f64,
}

/// Runs one step through both the full simulation and the reduced matrix
/// and compares the results.
pub fn verify_reduction(n_qubits: u32, target: usize, phi: f64, reduced: &ComplexPair) -> Result<ReductionReport> {
    let embedding = SymmetricEmbedding::new(target, *reduced);
    let mut state = embedding.embed(n_qubits)?;
    GroverIterate::new(n_qubits, target, phi)?.apply(&mut state);
    let proj = SymmetricEmbedding::project(&state, target)?;
    if proj.leakage > LEAKAGE_TOL {
        return Err(Error::Leakage(proj.leakage));
    }

    let params = BetaParams::from_qubits(n_qubits)?;
    let out = IterationMatrix::new(&params, phi).apply(reduced);
    let prob_discrepancy = (proj.v_tau.norm_sqr() - out.v_tau().norm_sqr())
        .abs()
        .max((proj.v_a.norm_sqr() - out.v_a().norm_sqr()).abs());
    let amplitude_discrepancy = (proj.v_tau - out.v_tau()).norm().max((proj.v_a - out.v_a()).norm());
    Ok(ReductionReport {
        prob_discrepancy,
        amplitude_discrepancy,
        leakage: proj.leakage,
    })
}

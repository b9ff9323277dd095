//! Acceptance gate. Run with `cargo test --test acceptance`; prints one
//! PASS/FAIL line per criterion and exits non-zero if any fail.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use grover_phase::experiment::{
    classical_iterations, run_sweep, run_trajectory, run_verification, Strategy, SweepSpec, VerifyConfig,
};
use grover_phase::{
    first_step_argmax, optimal_phase_general, optimal_phase_real, region_boundaries, target_probability_closed_form,
    target_probability_direct, threshold_probability, BetaParams, ComplexPair, IterationMatrix, OptimizerConfig,
    PolarForm, Region,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn params(n: u64) -> BetaParams {
    BetaParams::new(n).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Log-uniform size in [2, 2^20].
fn random_size(rng: &mut ChaCha8Rng) -> u64 {
    (rng.gen_range(1.0..=20.0f64).exp2().round() as u64).max(2)
}

/// Dense scan of the matrix-route probability over [-pi, pi) followed by
/// golden-section refinement around the best cell. Independent of the
/// closed form and of the optimizer.
fn scan_oracle(params: &BetaParams, v: &ComplexPair, points: usize) -> (f64, f64) {
    let f = |phi: f64| target_probability_direct(params, phi, v);
    let h = 2.0 * PI / points as f64;
    let (best_phi, raw) = (0..points)
        .map(|k| {
            let phi = -PI + h * k as f64;
            (phi, f(phi))
        })
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let (mut lo, mut hi) = (best_phi - h, best_phi + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) < f(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    (raw, f(0.5 * (lo + hi)).max(raw))
}

fn ac1_first_step_optimality() -> Outcome {
    let cfg = OptimizerConfig::default();
    let mut worst = 0.0f64;
    for q in 2..=20 {
        let p = BetaParams::from_qubits(q).unwrap();
        let start = ComplexPair::hadamard(&p).to_polar();
        let r = optimal_phase_general(&p, &start, &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((r.phi_opt.cos() + 1.0).abs());
    }
    check(worst <= 1e-8, format!("N=4..2^20, max |cos phi + 1| = {worst:.3e} (tol 1e-8)"))
}

fn ac2_n2_exception() -> Outcome {
    let p = params(2);
    let u = first_step_argmax(&p);
    let start = ComplexPair::hadamard(&p).to_polar();
    let r = optimal_phase_general(&p, &start, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
    let numeric = r.phi_opt.cos().abs();
    check(
        u.abs() <= 1e-8 && numeric <= 1e-8,
        format!("quadratic u* = {u}, numeric |cos phi_opt| = {numeric:.3e} (tol 1e-8)"),
    )
}

fn ac3_closed_form_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let p = params(random_size(&mut rng));
        let polar = PolarForm::new(rng.gen_range(0.0..=FRAC_PI_2), rng.gen_range(-PI..=PI)).unwrap();
        let phi = rng.gen_range(-PI..=PI);
        let closed = target_probability_closed_form(&p, phi, &polar).map_err(|e| e.to_string())?;
        let direct = target_probability_direct(&p, phi, &polar.to_pair());
        worst = worst.max((closed - direct).abs());
    }
    check(worst <= 1e-10, format!("10^4 samples, max |closed - direct| = {worst:.3e} (tol 1e-10)"))
}

fn ac4_region_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut worst_excess = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let p = params(random_size(&mut rng));
        let alpha = rng.gen_range(0.01..FRAC_PI_2 - 0.01);
        let closed = optimal_phase_real(&p, alpha).map_err(|e| e.to_string())?;
        let (raw, refined) = scan_oracle(&p, &PolarForm::real(alpha).unwrap().to_pair(), 8192);
        worst = worst.max((closed.p_opt - refined).abs());
        worst_excess = worst_excess.max(raw - closed.p_opt);
    }
    check(
        worst <= 1e-8 && worst_excess <= 1e-12,
        format!("10^4 samples, max |p_closed - p_scan| = {worst:.3e} (tol 1e-8), raw scan excess {worst_excess:.3e}"),
    )
}

fn ac5_threshold() -> Outcome {
    let p4 = threshold_probability(&params(4));
    let p6 = threshold_probability(&params(6));
    // 50-digit evaluation of (1 + 1018/sqrt(1040416)) / 2.
    let reference_1024 = 0.999_015_770_750_848_f64;
    let p1024 = threshold_probability(&params(1024));
    let mut worst = 0.0f64;
    for n in 2..=1024 {
        let p = params(n);
        let (low, _) = region_boundaries(&p);
        worst = worst.max((low.sin().powi(2) - threshold_probability(&p)).abs());
    }
    check(
        (p4 - 0.25).abs() <= 1e-15 && (p6 - 0.5).abs() <= 1e-15 && (p1024 - reference_1024).abs() <= 1e-7 && worst <= 1e-12,
        format!(
            "P_r(4) = {p4}, P_r(6) = {p6}, P_r(1024) = {p1024:.10}, max |sin^2(low) - P_r| over N=2..1024 = {worst:.3e}"
        ),
    )
}

fn ac6_trajectory_threshold() -> Outcome {
    let p = params(1024);
    let threshold = threshold_probability(&p);
    let (low, _) = region_boundaries(&p);
    let steps = classical_iterations(&p) + 5;
    let rows = run_trajectory(&p, Strategy::Optimal, steps, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
    let mut first_non_pi = None;
    for k in 1..rows.len() {
        let before = &rows[k - 1];
        let phi = rows[k].phi_used.unwrap();
        let is_pi = (phi - PI).abs() <= 1e-6;
        if before.p_target < threshold && !is_pi {
            return Err(format!("step {k}: P = {} < P_r but phi = {phi}", before.p_target));
        }
        if !is_pi {
            first_non_pi = Some(k);
            break;
        }
    }
    let k = first_non_pi.ok_or("optimal trajectory never left phi = pi")?;
    let entering = &rows[k - 1];
    let all_r1_before = rows[..k - 1]
        .iter()
        .all(|r| r.region == grover_phase::experiment::RegionLabel::Real(Region::R1));
    check(
        entering.alpha > low && entering.p_target >= threshold && all_r1_before,
        format!(
            "phi = pi while P < P_r = {threshold:.7}; first non-pi step {k} from alpha = {:.6} > boundary_low = {low:.6} (P = {:.6})",
            entering.alpha, entering.p_target
        ),
    )
}

fn ac7_classical_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for n in [4u64, 64, 1024] {
        let p = params(n);
        let kmax = classical_iterations(&p);
        let beta = p.beta();
        let mut state = ComplexPair::hadamard(&p);
        let step = IterationMatrix::new(&p, PI);
        for k in 1..=kmax {
            state = step.apply(&state);
            let expected = ((2 * k + 1) as f64 * beta).sin().powi(2);
            worst = worst.max((state.target_probability() - expected).abs());
        }
        let rows = run_trajectory(&p, Strategy::Classical, kmax, &OptimizerConfig::default()).map_err(|e| e.to_string())?;
        for r in &rows {
            let expected = ((2 * r.step + 1) as f64 * beta).sin().powi(2);
            worst = worst.max((r.p_target - expected).abs());
        }
    }
    check(worst <= 1e-10, format!("N in {{4, 64, 1024}}, max |P_k - sin^2((2k+1)beta)| = {worst:.3e} (tol 1e-10)"))
}

fn ac8_statevector_reduction() -> Outcome {
    let cfg = VerifyConfig {
        max_qubits: 10,
        samples: 100,
        seed: 1,
        phi: None,
    };
    let report = run_verification(&cfg).map_err(|e| e.to_string())?;
    let status = Command::new(env!("CARGO_BIN_EXE_grover-phase"))
        .args(["verify", "--qubits", "10", "--samples", "100", "--seed", "1", "--out", "-"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    check(
        report.passed() && status.code() == Some(0),
        format!("n = 2..10, 100 samples, seed 1: max discrepancy {:.3e} (tol 1e-10), cli exit {:?}", report.max_discrepancy(), status.code()),
    )
}

fn ac9_sweep_properties() -> Outcome {
    let spec = SweepSpec::new(params(1024));
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    if rows.len() != 10_000 {
        return Err(format!("expected 10^4 cells, got {}", rows.len()));
    }
    let min_improvement = rows.iter().map(|r| r.improvement).fold(f64::INFINITY, f64::min);
    let phi_in_range = rows.iter().all(|r| (-PI..=PI).contains(&r.phi_opt));
    let theta_zero_max = rows
        .iter()
        .filter(|r| r.theta == 0.0 && r.alpha > 0.1 && r.alpha < FRAC_PI_2 - 0.1)
        .map(|r| r.improvement)
        .fold(f64::NEG_INFINITY, f64::max);
    let best = rows.iter().max_by(|a, b| a.improvement.total_cmp(&b.improvement)).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut spot = 0.0f64;
    for _ in 0..10 {
        let r = &rows[rng.gen_range(0..rows.len())];
        let v = PolarForm::new(r.alpha, r.theta).unwrap().to_pair();
        let (_, scan) = scan_oracle(&spec.params, &v, 8192);
        spot = spot.max((scan - r.p_opt).abs());
    }
    check(
        min_improvement >= -1e-12 && phi_in_range && theta_zero_max <= 1e-6 && best.theta.abs() > FRAC_PI_2 && spot <= 1e-8,
        format!(
            "min improvement {min_improvement:.3e}, theta=0 interior max {theta_zero_max:.3e} (tol 1e-6), best cell theta = {:.4} (improvement {:.4}), spot-check {spot:.3e}",
            best.theta, best.improvement
        ),
    )
}

fn ac10_real_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let p = params(random_size(&mut rng));
        let t = rng.gen_range(0.0..2.0 * PI);
        let v = ComplexPair::new(t.cos().into(), t.sin().into()).unwrap();
        let out = IterationMatrix::new(&p, PI).apply(&v);
        worst = worst.max(out.v_tau().im.abs()).max(out.v_a().im.abs());
    }
    check(worst <= 1e-14, format!("10^3 real vectors, max |Im| = {worst:.3e} (tol 1e-14)"))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 first-step optimality", ac1_first_step_optimality, Duration::from_secs(1)),
        ("AC2 N=2 first-step exception", ac2_n2_exception, Duration::from_secs(1)),
        ("AC3 closed-form equivalence", ac3_closed_form_equivalence, Duration::from_secs(5)),
        ("AC4 region closed form vs dense scan", ac4_region_oracle, Duration::from_secs(30)),
        ("AC5 threshold reproduction", ac5_threshold, Duration::from_secs(1)),
        ("AC6 trajectory threshold behavior", ac6_trajectory_threshold, Duration::from_secs(1)),
        ("AC7 classical trajectory closed form", ac7_classical_closed_form, Duration::from_secs(1)),
        ("AC8 statevector reduction", ac8_statevector_reduction, Duration::from_secs(60)),
        ("AC9 sweep improvement properties", ac9_sweep_properties, Duration::from_secs(60)),
        ("AC10 real preservation", ac10_real_preservation, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) => (elapsed <= budget, d),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {name}: {detail} [{:.0} ms, budget {} s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64() * 1e3,
            budget.as_secs()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use rand::Rng;

use super::envelope::{fit_envelope, fit_exponential, EnvelopeFit};
use super::montecarlo::ensemble_mean;
use super::step_grid;
use crate::error::{ensure, Result};
use crate::rng::RngSpec;
use crate::series::TimeSeries;

/// Monte-Carlo settings shared by the trajectory experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub dt: f64,
    pub trials: usize,
    pub rng: RngSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct T1Curves {
    pub analytic: TimeSeries,
    pub monte_carlo: Option<TimeSeries>,
}

/// Excited-state population `e^{−t/t1}`, optionally estimated by sampling.
///
/// Each Monte-Carlo trajectory decays in a given step of width `dt` with
/// probability `1 − e^{−dt/t1}`; a time `t` is read at step `round(t/dt)`.
pub fn t1_curves(t1: f64, times: &[f64], mc: Option<McConfig>) -> Result<T1Curves> {
    ensure(t1 > 0.0 && t1.is_finite(), || format!("t1 must be positive, got {t1}"))?;
    ensure(times.iter().all(|t| t.is_finite() && *t >= 0.0), || {
        "times must be finite and non-negative".into()
    })?;
    let analytic = TimeSeries::from_fn(times, |t| (-t / t1).exp());
    let monte_carlo = match mc {
        None => None,
        Some(cfg) => {
            ensure(cfg.dt > 0.0 && cfg.dt <= t1 / 100.0, || {
                format!("dt must be in (0, t1/100], got {}", cfg.dt)
            })?;
            ensure(cfg.trials > 0, || "trials must be positive".into())?;
            let steps: Vec<usize> = times.iter().map(|t| (t / cfg.dt).round() as usize).collect();
            let last = steps.iter().copied().max().unwrap_or(0);
            let p_decay = -(-cfg.dt / t1).exp_m1();
            let values = ensemble_mean(cfg.rng, cfg.trials, times.len(), |rng, acc| {
                let decayed_at = (1..=last)
                    .find(|_| rng.random::<f64>() < p_decay)
                    .unwrap_or(usize::MAX);
                for (a, &k) in acc.iter_mut().zip(&steps) {
                    if decayed_at > k {
                        *a += 1.0;
                    }
                }
            });
            Some(TimeSeries::new(times.to_vec(), values))
        }
    };
    Ok(T1Curves {
        analytic,
        monte_carlo,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayRamsey {
    pub p_plus: TimeSeries,
    pub p_excited: TimeSeries,
    pub envelope: EnvelopeFit,
    /// Fringe envelope time; absent when the fringes do not decay.
    pub fitted_t2: Option<f64>,
    /// Population decay time; absent when the population does not decay.
    pub fitted_t1: Option<f64>,
}

/// Ramsey fringes from `|+⟩` limited only by energy decay.
///
/// Trajectories follow the quantum-jump unravelling of decay at rate
/// `1/t1`: in each step a trajectory with excited population `p_e` jumps
/// to `|0⟩` with probability `p_e(1 − e^{−dt/t1})`; otherwise the `|1⟩`
/// amplitude is damped by `e^{−dt/2t1}` and the state renormalised. Free
/// precession at `delta` is applied exactly. `t1 = ∞` disables decay.
pub fn decay_limited_ramsey(
    t1: f64,
    delta: f64,
    dt: f64,
    horizon: f64,
    trials: usize,
    rng: RngSpec,
) -> Result<DecayRamsey> {
    ensure(t1 > 0.0, || format!("t1 must be positive, got {t1}"))?;
    ensure(delta * t1 >= 20.0, || {
        format!("need delta·t1 >= 20 for resolvable fringes, got {}", delta * t1)
    })?;
    ensure(dt * delta.abs() < 0.1, || {
        format!("dt·delta must be below 0.1, got {}", dt * delta.abs())
    })?;
    ensure(trials > 0, || "trials must be positive".into())?;
    let times = step_grid(dt, horizon)?;
    let n = times.len();
    let gamma = if t1.is_finite() { 1.0 / t1 } else { 0.0 };
    let jump_factor = -(-gamma * dt).exp_m1();
    let damp = (-0.5 * gamma * dt).exp();
    let fringe: Vec<f64> = times.iter().map(|t| (delta * t).cos()).collect();

    // Interleaved (p₊, p_e) per sample.
    let both = ensemble_mean(rng, trials, 2 * n, |rng, acc| {
        let (mut c0, mut c1) = (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
        for k in 0..n {
            acc[2 * k] += 0.5 + c0 * c1 * fringe[k];
            acc[2 * k + 1] += c1 * c1;
            if k + 1 == n {
                break;
            }
            if rng.random::<f64>() < c1 * c1 * jump_factor {
                for j in k + 1..n {
                    acc[2 * j] += 0.5;
                }
                return;
            }
            c1 *= damp;
            let norm = c0.hypot(c1);
            c0 /= norm;
            c1 /= norm;
        }
    });
    let p_plus = TimeSeries::new(times.clone(), both.iter().step_by(2).copied().collect());
    let p_excited = TimeSeries::new(times, both.iter().skip(1).step_by(2).copied().collect());
    let threshold = 2.0 / (trials as f64).sqrt();
    let envelope = fit_envelope(&p_plus, threshold.min(0.1))?;
    let (_, rate) = fit_exponential(&p_excited, threshold.min(0.1))?;
    Ok(DecayRamsey {
        fitted_t2: envelope.t2(),
        fitted_t1: (rate > 1e-9).then(|| 1.0 / rate),
        envelope,
        p_plus,
        p_excited,
    })
}

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::envelope::{fit_envelope, EnvelopeFit};
use super::montecarlo::ensemble_mean;
use super::{step_grid, NoiseModel};
use crate::error::{ensure, Result};
use crate::numkernel::Propagator;
use crate::qubitcore::{free_hamiltonian, ramsey_trace, QubitKet};
use crate::rng::RngSpec;
use crate::series::TimeSeries;
use crate::spectral::dominant_frequency;

#[derive(Debug, Clone, PartialEq)]
pub struct RamseyEnsemble {
    pub p_plus: TimeSeries,
    pub envelope: Option<EnvelopeFit>,
    /// Fitted envelope time; absent without noise.
    pub fitted_t2: Option<f64>,
    /// Spectral peak of the fringes (angular).
    pub fitted_freq: f64,
    /// FFT bin width of `fitted_freq`.
    pub freq_bin: f64,
}

/// Minimum ensemble size for a noisy run.
pub const MIN_TRIALS: usize = 1000;

/// Ensemble-averaged Ramsey fringes under white gap noise.
///
/// Trajectory phase is `Δ₀t + Σ_k ξ_k·σ·√dt` with standard normal `ξ_k`,
/// and each trajectory contributes `½(1 + cos φ(t))`. With `σ = 0` the
/// closed-form fringe is returned and no random numbers are drawn.
pub fn ramsey_ensemble(
    delta0: f64,
    noise: NoiseModel,
    dt: f64,
    horizon: f64,
    trials: usize,
    rng: RngSpec,
) -> Result<RamseyEnsemble> {
    ensure(dt * delta0.abs() < 0.1, || {
        format!("dt·delta0 must be below 0.1, got {}", dt * delta0.abs())
    })?;
    let times = step_grid(dt, horizon)?;
    let sigma = noise.sigma();
    let (p_plus, envelope) = if sigma == 0.0 {
        (ramsey_trace(delta0, &times), None)
    } else {
        ensure(trials >= MIN_TRIALS, || {
            format!("need at least {MIN_TRIALS} trials, got {trials}")
        })?;
        let kick = sigma * dt.sqrt();
        let values = ensemble_mean(rng, trials, times.len(), |rng, acc| {
            let mut w = 0.0;
            acc[0] += 1.0;
            for k in 1..times.len() {
                let xi: f64 = rng.sample(StandardNormal);
                w += kick * xi;
                acc[k] += 0.5 * (1.0 + (delta0 * times[k] + w).cos());
            }
        });
        let series = TimeSeries::new(times, values);
        let fit = fit_envelope(&series, 2.0 / (trials as f64).sqrt())?;
        (series, Some(fit))
    };
    let peak = dominant_frequency(&p_plus.values, dt)?;
    Ok(RamseyEnsemble {
        fitted_t2: envelope.as_ref().and_then(|e| e.t2()),
        envelope,
        fitted_freq: peak.omega,
        freq_bin: peak.bin_width,
        p_plus,
    })
}

/// Equal-weight mixture of fringes with phase offsets 0 and `offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoOffsetFringe {
    pub p_plus: TimeSeries,
    /// `cos(δ/2)`
    pub amplitude: f64,
    /// `δ/2`
    pub phase: f64,
}

impl TwoOffsetFringe {
    /// `½ + ½cos(δ/2)·cos(Δt − δ/2)`
    pub fn single_fringe(&self, delta: f64, t: f64) -> f64 {
        0.5 + 0.5 * self.amplitude * (delta * t - self.phase).cos()
    }
}

pub fn two_offset_fringe(delta: f64, offset: f64, times: &[f64]) -> TwoOffsetFringe {
    let p_plus = TimeSeries::from_fn(times, |t| {
        0.5 * (0.5 + 0.5 * (delta * t).cos() + 0.5 + 0.5 * (delta * t - offset).cos())
    });
    TwoOffsetFringe {
        p_plus,
        amplitude: (0.5 * offset).cos(),
        phase: 0.5 * offset,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralFringe {
    pub p_plus: TimeSeries,
    pub p_excited: f64,
}

/// Fringes of `cos θ|0⟩ + e^{iφ}sin θ|1⟩`:
/// `p₊ = ½ + ½sin 2θ·cos(Δt − φ)`, `p₁ = sin²θ`.
pub fn general_fringe(theta: f64, phi: f64, delta: f64, times: &[f64]) -> GeneralFringe {
    let amp = 0.5 * (2.0 * theta).sin();
    GeneralFringe {
        p_plus: TimeSeries::from_fn(times, |t| 0.5 + amp * (delta * t - phi).cos()),
        p_excited: theta.sin().powi(2),
    }
}

/// `|⟨+|ψ(t)⟩|²` by evolving under `−½Δσ_z`.
pub fn general_fringe_numeric(theta: f64, phi: f64, delta: f64, times: &[f64]) -> Result<TimeSeries> {
    let psi = QubitKet::new(
        Complex64::new(theta.cos(), 0.0),
        Complex64::from_polar(theta.sin(), phi),
    )?
    .to_ket();
    let plus = QubitKet::plus().to_ket();
    let prop = Propagator::new(&free_hamiltonian(delta))?;
    let values = times
        .iter()
        .map(|&t| plus.fidelity(&prop.evolve(t, &psi)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TimeSeries::new(times.to_vec(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::linspace;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn noiseless_is_closed_form() {
        let r = ramsey_ensemble(2.0, NoiseModel::white(0.0).unwrap(), 0.01, 20.0, 0, RngSpec::new(0))
            .unwrap();
        let expected = ramsey_trace(2.0, &r.p_plus.times);
        assert_eq!(r.p_plus, expected);
        assert!(r.fitted_t2.is_none());
        assert!((r.fitted_freq - 2.0).abs() <= r.freq_bin);
    }

    #[test]
    fn noisy_run_is_reproducible() {
        let noise = NoiseModel::white(0.5).unwrap();
        let a = ramsey_ensemble(2.0 * PI, noise, 0.01, 4.0, 1000, RngSpec::new(5)).unwrap();
        let b = ramsey_ensemble(2.0 * PI, noise, 0.01, 4.0, 1000, RngSpec::new(5)).unwrap();
        assert_eq!(a.p_plus, b.p_plus);
        let c = ramsey_ensemble(2.0 * PI, noise, 0.01, 4.0, 1000, RngSpec::new(6)).unwrap();
        assert_ne!(a.p_plus, c.p_plus);
    }

    #[test]
    fn rejects_coarse_phase_resolution() {
        let noise = NoiseModel::white(0.1).unwrap();
        assert!(ramsey_ensemble(20.0, noise, 0.01, 1.0, 1000, RngSpec::new(0)).is_err());
        assert!(ramsey_ensemble(1.0, noise, 0.01, 1.0, 10, RngSpec::new(0)).is_err());
    }

    #[test]
    fn two_offsets_reduce_amplitude() {
        let times = linspace(0.0, 10.0, 300);
        let f = two_offset_fringe(1.3, 0.8, &times);
        assert!((f.amplitude - 0.4f64.cos()).abs() < 1e-15);
        for (t, p) in f.p_plus.iter() {
            assert!((p - f.single_fringe(1.3, t)).abs() < 1e-14);
        }
    }

    #[test]
    fn general_fringe_examples() {
        let times = linspace(0.0, 6.0, 60);
        let full = general_fringe(FRAC_PI_4, 0.0, 2.0, &times);
        assert!((full.p_plus.values[0] - 1.0).abs() < 1e-15);
        let flat = general_fringe(0.0, 0.3, 2.0, &times);
        assert!(flat.p_plus.values.iter().all(|&p| p == 0.5));
        assert_eq!(flat.p_excited, 0.0);

        let a1 = general_fringe(0.01, 0.0, 1.0, &[0.0]);
        let a2 = general_fringe(0.02, 0.0, 1.0, &[0.0]);
        let amp = |g: &GeneralFringe| g.p_plus.values[0] - 0.5;
        assert!((amp(&a2) / amp(&a1) - 2.0).abs() < 1e-3);
        assert!((a2.p_excited / a1.p_excited - 4.0).abs() < 1e-3);
    }

    #[test]
    fn general_fringe_matches_evolution() {
        let times = linspace(0.0, 7.0, 100);
        for (theta, phi) in [(0.3, 0.0), (1.1, 2.0), (FRAC_PI_4, -0.7)] {
            let closed = general_fringe(theta, phi, 1.7, &times);
            let num = general_fringe_numeric(theta, phi, 1.7, &times).unwrap();
            assert!(num.max_abs_diff(&closed.p_plus) < 1e-10);
        }
    }
}

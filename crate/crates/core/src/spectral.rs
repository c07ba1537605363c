//! Dominant-frequency estimation for uniformly sampled signals.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Peak of the one-sided power spectrum of a mean-subtracted signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    /// Angular frequency of the peak bin, refined by parabolic interpolation
    /// of the log power over the neighbouring bins.
    pub omega: f64,
    /// Angular frequency of the raw peak bin.
    pub omega_bin: f64,
    /// Angular bin width 2π/(N·dt).
    pub bin_width: f64,
}

pub fn dominant_frequency(values: &[f64], dt: f64) -> Result<SpectralPeak> {
    let n = values.len();
    if n < 4 || !(dt > 0.0) {
        return Err(Error::FitFailed(format!(
            "need at least 4 samples and dt > 0 (got {n}, dt = {dt})"
        )));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let power: Vec<f64> = buf[..=n / 2].iter().map(|z| z.norm_sqr()).collect();
    let (k, &peak) = power
        .iter()
        .enumerate()
        .skip(1)
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least two bins");
    if peak <= 0.0 {
        return Err(Error::FitFailed("signal has no oscillating component".into()));
    }
    let bin_width = 2.0 * std::f64::consts::PI / (n as f64 * dt);
    let mut offset = 0.0;
    if k + 1 < power.len() && power[k - 1] > 0.0 && power[k + 1] > 0.0 {
        let (l, c, r) = (power[k - 1].ln(), peak.ln(), power[k + 1].ln());
        let denom = l - 2.0 * c + r;
        if denom < 0.0 {
            offset = (0.5 * (l - r) / denom).clamp(-0.5, 0.5);
        }
    }
    Ok(SpectralPeak {
        omega: (k as f64 + offset) * bin_width,
        omega_bin: k as f64 * bin_width,
        bin_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cosine_frequency() {
        let dt = 0.01;
        let omega = 7.3;
        let v: Vec<f64> = (0..2000).map(|i| (omega * i as f64 * dt).cos()).collect();
        let peak = dominant_frequency(&v, dt).unwrap();
        assert!((peak.omega - omega).abs() < peak.bin_width);
        assert!((peak.omega_bin - omega).abs() <= 0.5 * peak.bin_width + 1e-12);
    }

    #[test]
    fn flat_signal_fails() {
        assert!(dominant_frequency(&[1.0; 64], 0.1).is_err());
        assert!(dominant_frequency(&[1.0, 2.0], 0.1).is_err());
    }
}

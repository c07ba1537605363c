use crate::error::{Error, Result};
use crate::optimize::linear_fit;
use crate::series::TimeSeries;

/// Exponential envelope `A·e^{−rate·t}` fitted to fringe extrema.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeFit {
    pub amplitude: f64,
    pub rate: f64,
    /// `(t, |p − ½|)` at each extremum used in the fit.
    pub extrema: Vec<(f64, f64)>,
}

impl EnvelopeFit {
    /// `1/rate`, absent when the envelope does not decay.
    pub fn t2(&self) -> Option<f64> {
        (self.rate > 0.0).then(|| 1.0 / self.rate)
    }
}

/// Fits the decay of fringes oscillating about ½.
///
/// The deviation `d = p − ½` is split into half-cycles with hysteresis: a
/// new half-cycle starts only when `d` passes `±threshold` with the sign
/// opposite to the current one, so noise near the midline cannot split a
/// lobe. The largest `|d|` in each half-cycle is its extremum; ties keep
/// the earliest sample. The last half-cycle is dropped because the series
/// may end before its peak. `ln|d|` at the extrema is then regressed
/// linearly on `t`.
pub fn fit_envelope(series: &TimeSeries, threshold: f64) -> Result<EnvelopeFit> {
    let mut extrema: Vec<(f64, f64)> = Vec::new();
    let mut sign = 0i8;
    let mut best = (0.0, 0.0);
    for (t, p) in series.iter() {
        let d = p - 0.5;
        let s = if d > threshold {
            1
        } else if d < -threshold {
            -1
        } else {
            0
        };
        if s != 0 && s != sign {
            if sign != 0 {
                extrema.push(best);
            }
            sign = s;
            best = (t, d.abs());
        } else if sign != 0 && d * sign as f64 > best.1 {
            best = (t, d.abs());
        }
    }
    if extrema.len() < 3 {
        return Err(Error::FitFailed(format!(
            "found {} complete fringe extrema above {threshold}, need 3",
            extrema.len()
        )));
    }
    let xs: Vec<f64> = extrema.iter().map(|e| e.0).collect();
    let ys: Vec<f64> = extrema.iter().map(|e| e.1.ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(EnvelopeFit {
        amplitude: fit.intercept.exp(),
        rate: -fit.slope,
        extrema,
    })
}

/// Log-linear fit of `A·e^{−rate·t}` to samples above `floor`.
pub fn fit_exponential(series: &TimeSeries, floor: f64) -> Result<(f64, f64)> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = series
        .iter()
        .filter(|&(_, v)| v > floor)
        .map(|(t, v)| (t, v.ln()))
        .unzip();
    if xs.len() < 3 {
        return Err(Error::FitFailed(format!(
            "only {} samples above {floor}",
            xs.len()
        )));
    }
    let fit = linear_fit(&xs, &ys)?;
    Ok((fit.intercept.exp(), -fit.slope))
}

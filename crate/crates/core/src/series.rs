/// Ordered `(time, value)` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(times.len(), values.len(), "times and values must align");
        TimeSeries { times, values }
    }

    /// Samples `f` at every time.
    pub fn from_fn(times: &[f64], f: impl Fn(f64) -> f64) -> Self {
        TimeSeries {
            times: times.to_vec(),
            values: times.iter().map(|&t| f(t)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Largest |a_i − b_i| against another series on the same grid.
    pub fn max_abs_diff(&self, other: &TimeSeries) -> f64 {
        assert_eq!(self.len(), other.len(), "series lengths differ");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `n + 1` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    if n == 0 {
        return vec![start];
    }
    let step = (stop - start) / n as f64;
    (0..=n).map(|k| start + step * k as f64).collect()
}

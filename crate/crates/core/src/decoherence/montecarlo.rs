use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::optimize::NeumaierSum;
use crate::rng::RngSpec;

/// Trajectories per parallel work unit.
pub const BLOCK_SIZE: usize = 64;

/// Mean over `trials` trajectories of per-sample contributions.
///
/// `run(rng, acc)` simulates one trajectory and adds its contribution for
/// each of the `len` samples into `acc`.
pub(crate) fn ensemble_mean<F>(spec: RngSpec, trials: usize, len: usize, run: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync,
{
    let blocks = trials.div_ceil(BLOCK_SIZE);
    let partial: Vec<Vec<f64>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![0.0; len];
            let end = ((b + 1) * BLOCK_SIZE).min(trials);
            for i in b * BLOCK_SIZE..end {
                let mut rng = spec.stream(i as u64);
                run(&mut rng, &mut acc);
            }
            acc
        })
        .collect();
    let mut sums = vec![NeumaierSum::default(); len];
    for block in &partial {
        for (s, &v) in sums.iter_mut().zip(block) {
            s.add(v);
        }
    }
    sums.iter().map(|s| s.value() / trials as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn draw(spec: RngSpec, trials: usize) -> Vec<f64> {
        ensemble_mean(spec, trials, 3, |rng, acc| {
            for a in acc.iter_mut() {
                *a += rng.random::<f64>();
            }
        })
    }

    #[test]
    fn independent_of_thread_count() {
        let spec = RngSpec::new(9);
        let a = draw(spec, 1000);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| draw(spec, 1000));
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_mean() {
        let m = draw(RngSpec::new(3), 20_000);
        assert!(m.iter().all(|v| (v - 0.5).abs() < 0.01));
    }
}

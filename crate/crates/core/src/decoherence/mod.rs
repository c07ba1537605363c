//! Decay and dephasing experiments and two-qubit correlation tables.
//!
//! Gap noise is modelled as white Gaussian noise: the accumulated phase
//! `∫δΔ dτ` over `[0, t]` is normal with variance `σ²t`, so the ensemble
//! fringe envelope is `e^{−σ²t/2}` and `T2 = 2/σ²`. Decay during Ramsey
//! evolution is unravelled into quantum-jump trajectories, keeping every
//! trajectory a pure state.
//!
//! Monte-Carlo routines split trajectories into fixed blocks of
//! [`BLOCK_SIZE`]. Trajectory `i` draws only from `rng.stream(i)`, blocks
//! run in parallel, and block sums are combined in block order with
//! compensated summation, so results do not depend on the worker count.

mod bell;
mod decay;
mod dephasing;
mod envelope;
mod montecarlo;

pub use bell::{
    bell_projections, bell_state, ensemble_joint_table, joint_table, marginal_table,
    outcome_states, BellKind, JointProbabilityTable, MarginalTable, TwoQubitKet, OUTCOME_LABELS,
};
pub use decay::{decay_limited_ramsey, t1_curves, DecayRamsey, McConfig, T1Curves};
pub use dephasing::{
    general_fringe, general_fringe_numeric, ramsey_ensemble, two_offset_fringe, GeneralFringe,
    RamseyEnsemble, TwoOffsetFringe,
};
pub use envelope::{fit_envelope, fit_exponential, EnvelopeFit};
pub use montecarlo::BLOCK_SIZE;

use crate::error::{ensure, Result};

/// White Gaussian gap noise of strength `sigma` (rad/√time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    sigma: f64,
}

impl NoiseModel {
    pub fn white(sigma: f64) -> Result<Self> {
        ensure(sigma >= 0.0 && sigma.is_finite(), || {
            format!("noise sigma must be non-negative, got {sigma}")
        })?;
        Ok(NoiseModel { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Envelope decay time `2/σ²`; infinite without noise.
    pub fn analytic_t2(&self) -> f64 {
        2.0 / (self.sigma * self.sigma)
    }
}

/// Sample times `k·dt`, `k = 0 … round(horizon/dt)`.
pub(crate) fn step_grid(dt: f64, horizon: f64) -> Result<Vec<f64>> {
    ensure(dt > 0.0 && dt.is_finite(), || format!("dt must be positive, got {dt}"))?;
    ensure(horizon >= 0.0 && horizon.is_finite(), || {
        format!("horizon must be non-negative, got {horizon}")
    })?;
    let n = (horizon / dt).round() as usize;
    Ok((0..=n).map(|k| k as f64 * dt).collect())
}

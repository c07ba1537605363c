//! Semiclassical Josephson junctions in reduced units.
//!
//! Φ₀ = 1 and ħ = 1. Currents are in units of the critical current where
//! noted, and washboard energies are in units of `I₀Φ₀/2π = E_J`, so the
//! reduced washboard is `u(φ) = −bφ − cos φ` with `b = I/I₀`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{ensure, Error, Result};
use crate::optimize::{golden_section, grid_minima};

/// Junction energy scale and capacitance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionSpec {
    ej: f64,
    i0: f64,
    cj: f64,
}

impl JunctionSpec {
    /// `i0 = 2π·ej` with Φ₀ = 1.
    pub fn new(ej: f64, cj: f64) -> Result<Self> {
        ensure(ej > 0.0 && ej.is_finite(), || format!("ej must be positive, got {ej}"))?;
        ensure(cj > 0.0 && cj.is_finite(), || format!("cj must be positive, got {cj}"))?;
        Ok(JunctionSpec {
            ej,
            i0: 2.0 * PI * ej,
            cj,
        })
    }

    pub fn ej(&self) -> f64 {
        self.ej
    }

    pub fn i0(&self) -> f64 {
        self.i0
    }

    pub fn cj(&self) -> f64 {
        self.cj
    }

    /// Charging energy `(2e)²/2C_J` with `2e = 1`.
    pub fn ec(&self) -> f64 {
        0.5 / self.cj
    }
}

/// cos(πx) with exact zeros at half-integers and exact ±1 at integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x - 2.0 * (0.5 * x).round()).abs();
    (PI * (0.5 - r)).sin()
}

pub fn dc_current(spec: &JunctionSpec, phi: f64) -> f64 {
    spec.i0 * phi.sin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WashboardPoint {
    pub phi: f64,
    pub u: f64,
}

/// Reduced tilted washboard `u(φ) = −bφ − cos φ`.
pub fn washboard_u(bias: f64, phi: f64) -> f64 {
    -bias * phi - phi.cos()
}

pub fn washboard(_spec: &JunctionSpec, bias: f64, phis: &[f64]) -> Vec<WashboardPoint> {
    phis.iter()
        .map(|&phi| WashboardPoint {
            phi,
            u: washboard_u(bias, phi),
        })
        .collect()
}

/// First washboard minimum, `arcsin(I/I₀)`.
pub fn first_minimum(_spec: &JunctionSpec, bias: f64) -> Result<f64> {
    if !(bias.abs() <= 1.0) {
        return Err(Error::NoMinimum(bias));
    }
    Ok(bias.asin())
}

/// Grid step used to bracket washboard minima.
pub const WASHBOARD_GRID_STEP: f64 = PI / 200.0;

/// Locates the washboard minimum on `[−π/2, π/2]` numerically.
///
/// The grid scan brackets the minimum; golden section then refines
/// `u(m + δ) − u(m) = −bδ + 2cos m·sin²(δ/2) + sin m·sin δ` about the
/// bracket centre `m`, which avoids the cancellation in `u` itself and
/// resolves the minimiser to ~1e-9.
pub fn numeric_minimum(bias: f64) -> Result<f64> {
    if !(bias.abs() < 1.0) {
        return Err(Error::NoMinimum(bias));
    }
    let n = (PI / WASHBOARD_GRID_STEP).round() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| -FRAC_PI_2 + k as f64 * WASHBOARD_GRID_STEP).collect();
    let values: Vec<f64> = grid.iter().map(|&p| washboard_u(bias, p)).collect();
    let i = grid_minima(&values)
        .into_iter()
        .next()
        .ok_or(Error::NoMinimum(bias))?;
    let m = grid[i];
    let (sm, cm) = m.sin_cos();
    let offset = |d: f64| {
        let h = (0.5 * d).sin();
        -bias * d + 2.0 * cm * h * h + sm * d.sin()
    };
    let (d, _) = golden_section(offset, -WASHBOARD_GRID_STEP, WASHBOARD_GRID_STEP, 1e-13);
    Ok(m + d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inductances {
    pub linear: f64,
    pub nonlinear: f64,
}

/// `L_J0 = Φ₀²/4π²E_J` and `L_J(Φ) = L_J0 / cos(2πΦ/Φ₀)`.
pub fn inductances(spec: &JunctionSpec, flux: f64) -> Result<Inductances> {
    let linear = 1.0 / (4.0 * PI * PI * spec.ej);
    let c = cos_pi(2.0 * flux);
    if c.abs() < 1e-12 {
        return Err(Error::InductanceSingular(flux));
    }
    Ok(Inductances {
        linear,
        nonlinear: linear / c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaylorRegime {
    /// About φ = 0.
    SmallBias,
    /// About φ = π/2.
    CriticalBias,
}

/// Cubic Taylor polynomial of the reduced washboard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorExpansion {
    pub center: f64,
    /// Coefficients of `(φ − center)^k`, k = 0…3.
    pub coeffs: [f64; 4],
}

impl TaylorExpansion {
    pub fn eval(&self, phi: f64) -> f64 {
        let x = phi - self.center;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Small bias: `−1 − bφ + φ²/2`.
/// Critical bias: `−bπ/2 + (1 − b)x − x³/6` with `x = φ − π/2`; the
/// quadratic term vanishes identically.
pub fn taylor_regime(_spec: &JunctionSpec, regime: TaylorRegime, bias: f64) -> TaylorExpansion {
    match regime {
        TaylorRegime::SmallBias => TaylorExpansion {
            center: 0.0,
            coeffs: [-1.0, -bias, 0.5, 0.0],
        },
        TaylorRegime::CriticalBias => TaylorExpansion {
            center: FRAC_PI_2,
            coeffs: [-bias * FRAC_PI_2, 1.0 - bias, 0.0, -1.0 / 6.0],
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquidResponse {
    /// Signed effective critical current `2I₀cos(π(n − Φ_ext))`.
    pub critical: f64,
    /// Junction phase for zero transport current, `π(n − Φ_ext)`.
    pub balanced_phase: f64,
}

impl SquidResponse {
    /// Tunable critical current magnitude.
    pub fn magnitude(&self) -> f64 {
        self.critical.abs()
    }

    /// Transport current `I = 2I₀cos(π(n − Φ_ext))·sin δφ`.
    pub fn current(&self, delta_phi: f64) -> f64 {
        self.critical * delta_phi.sin()
    }

    /// Junction phases `(φ_a, φ_b) = (π(n − Φ_ext) ± δφ)`.
    pub fn junction_phases(&self, delta_phi: f64) -> (f64, f64) {
        (self.balanced_phase + delta_phi, self.balanced_phase - delta_phi)
    }
}

pub fn squid_effective(i0_each: f64, phi_ext: f64, n: i64) -> SquidResponse {
    let x = n as f64 - phi_ext;
    SquidResponse {
        critical: 2.0 * i0_each * cos_pi(x),
        balanced_phase: PI * x,
    }
}

/// Junction currents `(I_a, I_b) = (i + I/2, i − I/2)` for circulating
/// current `i` and transport current `I`.
pub fn split_currents(circulating: f64, transport: f64) -> (f64, f64) {
    (circulating + 0.5 * transport, circulating - 0.5 * transport)
}

/// Flux-qubit loop energy `Φ²/2L − E_J cos(2π(Φ − Φ_ext))`.
pub fn flux_qubit_u(l: f64, ej: f64, phi_ext: f64, phi: f64) -> f64 {
    phi * phi / (2.0 * l) - ej * (2.0 * PI * (phi - phi_ext)).cos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxWell {
    pub phis: Vec<f64>,
    pub u: Vec<f64>,
    /// Interior local minima `(Φ, U)` in grid order.
    pub minima: Vec<(f64, f64)>,
}

impl FluxWell {
    /// Minima sorted by energy.
    pub fn lowest(&self) -> Vec<(f64, f64)> {
        let mut m = self.minima.clone();
        m.sort_by(|a, b| a.1.total_cmp(&b.1));
        m
    }
}

pub fn flux_qubit_potential(l: f64, ej: f64, phi_ext: f64, phis: &[f64]) -> Result<FluxWell> {
    ensure(l > 0.0 && ej > 0.0, || format!("need l > 0 and ej > 0, got {l}, {ej}"))?;
    ensure(phis.windows(2).all(|w| w[0] < w[1]), || {
        "flux grid must be strictly increasing".into()
    })?;
    let u: Vec<f64> = phis.iter().map(|&p| flux_qubit_u(l, ej, phi_ext, p)).collect();
    let minima = grid_minima(&u)
        .into_iter()
        .map(|i| {
            golden_section(
                |p| flux_qubit_u(l, ej, phi_ext, p),
                phis[i - 1],
                phis[i + 1],
                1e-12,
            )
        })
        .collect();
    Ok(FluxWell {
        phis: phis.to_vec(),
        u,
        minima,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fluxoid {
    pub n: i64,
    pub residual: f64,
}

/// Nearest fluxoid number; exact half-integers round to even `n`.
pub fn fluxoid_residual(total_flux: f64) -> Fluxoid {
    let n = total_flux.round_ties_even();
    Fluxoid {
        n: n as i64,
        residual: total_flux - n,
    }
}

/// Pair numbers and condensate phases of two coupled islands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoIslandState {
    pub n1: f64,
    pub n2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl TwoIslandState {
    /// δ = θ₂ − θ₁
    pub fn delta(&self) -> f64 {
        self.theta2 - self.theta1
    }

    fn derivative(&self, e: f64) -> [f64; 4] {
        let (s, c) = self.delta().sin_cos();
        let root = (self.n1 * self.n2).sqrt();
        let dn = e * root * s;
        [
            dn,
            -dn,
            -0.5 * e * (self.n2 / self.n1).sqrt() * c,
            -0.5 * e * (self.n1 / self.n2).sqrt() * c,
        ]
    }

    fn shifted(&self, k: &[f64; 4], h: f64) -> TwoIslandState {
        TwoIslandState {
            n1: self.n1 + h * k[0],
            n2: self.n2 + h * k[1],
            theta1: self.theta1 + h * k[2],
            theta2: self.theta2 + h * k[3],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoIslandTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<TwoIslandState>,
    /// `dn₁/dt` at each state (pair charge 2e = 1).
    pub current: Vec<f64>,
    /// `I₀ sin δ` with `I₀ = n₀E` and `n₀` the initial mean pair number.
    pub josephson_current: Vec<f64>,
}

/// Fixed-step RK4 integration of the two-island number/phase equations.
pub fn two_island_dynamics(
    state0: TwoIslandState,
    e_coupling: f64,
    dt: f64,
    steps: usize,
) -> Result<TwoIslandTrajectory> {
    ensure(dt > 0.0 && dt.is_finite(), || format!("dt must be positive, got {dt}"))?;
    ensure(state0.n1 > 0.0 && state0.n2 > 0.0, || {
        "initial pair numbers must be positive".into()
    })?;
    let i0 = 0.5 * (state0.n1 + state0.n2) * e_coupling;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut s = state0;
    times.push(0.0);
    states.push(s);
    for step in 1..=steps {
        let k1 = s.derivative(e_coupling);
        let k2 = s.shifted(&k1, 0.5 * dt).derivative(e_coupling);
        let k3 = s.shifted(&k2, 0.5 * dt).derivative(e_coupling);
        let k4 = s.shifted(&k3, dt).derivative(e_coupling);
        let k: [f64; 4] =
            std::array::from_fn(|j| (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) / 6.0);
        s = s.shifted(&k, dt);
        if !(s.n1 > 0.0 && s.n2 > 0.0) {
            return Err(Error::StepUnstable { step });
        }
        times.push(step as f64 * dt);
        states.push(s);
    }
    let current = states.iter().map(|s| s.derivative(e_coupling)[0]).collect();
    let josephson_current = states.iter().map(|s| i0 * s.delta().sin()).collect();
    Ok(TwoIslandTrajectory {
        times,
        states,
        current,
        josephson_current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> JunctionSpec {
        JunctionSpec::new(1.0 / (2.0 * PI), 1.0).unwrap()
    }

    #[test]
    fn current_relation() {
        let s = spec();
        assert!((s.i0() - 1.0).abs() < 1e-15);
        assert_eq!(dc_current(&s, 0.0), 0.0);
        assert_eq!(dc_current(&s, FRAC_PI_2), s.i0());
        assert!((dc_current(&s, PI / 6.0) - 0.5 * s.i0()).abs() < 1e-15);
    }

    #[test]
    fn washboard_values() {
        let pts = washboard(&spec(), 0.0, &[0.0, PI]);
        assert_eq!(pts[0].u, -1.0);
        assert_eq!(pts[1].u, 1.0);
        let p = washboard(&spec(), 1.0, &[FRAC_PI_2]);
        assert!((p[0].u + FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn minimum_examples() {
        let s = spec();
        assert_eq!(first_minimum(&s, 0.0).unwrap(), 0.0);
        assert_eq!(first_minimum(&s, 1.0).unwrap(), FRAC_PI_2);
        assert!(matches!(first_minimum(&s, 1.01), Err(Error::NoMinimum(_))));
        for b in [0.0, 0.1, 0.5, 0.9] {
            let phi = first_minimum(&s, b).unwrap();
            assert!((numeric_minimum(b).unwrap() - phi).abs() < 1e-8, "bias {b}");
            // u'(φ) = −b + sin φ, u''(φ) = cos φ
            assert!((phi.sin() - b).abs() < 1e-9);
            assert!(phi.cos() > 0.0);
            assert_eq!(phi.sin() * s.i0(), dc_current(&s, phi));
        }
    }

    #[test]
    fn inductance_values() {
        let s = spec();
        let l0 = inductances(&s, 0.0).unwrap();
        assert_eq!(l0.linear, l0.nonlinear);
        let l6 = inductances(&s, 1.0 / 6.0).unwrap();
        assert!((l6.nonlinear / l6.linear - 2.0).abs() < 1e-14);
        assert!(matches!(inductances(&s, 0.25), Err(Error::InductanceSingular(_))));
        assert!(matches!(inductances(&s, 0.75), Err(Error::InductanceSingular(_))));
        assert!(matches!(inductances(&s, -1.25), Err(Error::InductanceSingular(_))));
    }

    fn fd_coeffs(f: impl Fn(f64) -> f64, x: f64) -> [f64; 4] {
        let h = 1e-3;
        let h3 = 2e-3;
        [
            f(x),
            (f(x + h) - f(x - h)) / (2.0 * h),
            (f(x + h) - 2.0 * f(x) + f(x - h)) / (2.0 * h * h),
            (f(x + 2.0 * h3) - 2.0 * f(x + h3) + 2.0 * f(x - h3) - f(x - 2.0 * h3))
                / (12.0 * h3 * h3 * h3),
        ]
    }

    #[test]
    fn taylor_matches_finite_differences() {
        let s = spec();
        for (regime, b) in [
            (TaylorRegime::SmallBias, 0.0),
            (TaylorRegime::SmallBias, 0.05),
            (TaylorRegime::CriticalBias, 0.95),
            (TaylorRegime::CriticalBias, 0.5),
        ] {
            let t = taylor_regime(&s, regime, b);
            let fd = fd_coeffs(|p| washboard_u(b, p), t.center);
            for k in 0..4 {
                assert!((t.coeffs[k] - fd[k]).abs() < 1e-6, "{regime:?} b={b} k={k}");
            }
        }
        let c = taylor_regime(&s, TaylorRegime::CriticalBias, 0.9);
        assert_eq!(c.coeffs[2], 0.0);
        let z = taylor_regime(&s, TaylorRegime::SmallBias, 0.0);
        assert_eq!(z.coeffs, [-1.0, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn squid_tuning() {
        assert_eq!(squid_effective(1.0, 0.0, 0).critical, 2.0);
        assert_eq!(squid_effective(1.0, 0.5, 0).critical, 0.0);
        assert_eq!(squid_effective(1.0, 0.5, 3).critical, 0.0);
        let r = squid_effective(1.0, 0.3, 1);
        assert!((r.balanced_phase - 0.7 * PI).abs() < 1e-15);
        let (a, b) = r.junction_phases(0.2);
        let (ia, ib) = (a.sin(), b.sin());
        assert!((ia - ib - r.current(0.2)).abs() < 1e-14);
        let (sa, sb) = split_currents(0.1, 0.4);
        assert!((sa - sb - 0.4).abs() < 1e-15);
    }

    #[test]
    fn squid_periodic_and_even() {
        for k in 0..50 {
            let phi = -1.0 + 0.043 * k as f64;
            let base = squid_effective(1.0, phi, 0).magnitude();
            assert!((squid_effective(1.0, phi + 1.0, 0).magnitude() - base).abs() < 1e-12);
            assert!((squid_effective(1.0, -phi, 0).magnitude() - base).abs() < 1e-12);
        }
    }

    fn grid() -> Vec<f64> {
        (0..=800).map(|k| -2.0 + k as f64 * 0.005).collect()
    }

    #[test]
    fn flux_single_well() {
        let w = flux_qubit_potential(1.0, 0.1, 0.0, &grid()).unwrap();
        let low = w.lowest();
        assert!(low[0].0.abs() < 1e-8);
    }

    #[test]
    fn flux_double_well_degenerate() {
        let w = flux_qubit_potential(1.0, 0.1, 0.5, &grid()).unwrap();
        let low = w.lowest();
        assert!(low.len() >= 2);
        assert!((low[0].1 - low[1].1).abs() < 1e-9);
        assert!((low[0].0 + low[1].0).abs() < 1e-6);
    }

    #[test]
    fn flux_parity() {
        for &p in &[0.13, -0.4, 0.77] {
            let a = flux_qubit_u(0.8, 0.3, 0.21, p);
            let b = flux_qubit_u(0.8, 0.3, -0.21, -p);
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn fluxoid_examples() {
        assert_eq!(fluxoid_residual(3.0), Fluxoid { n: 3, residual: 0.0 });
        assert_eq!(fluxoid_residual(2.5), Fluxoid { n: 2, residual: 0.5 });
        assert_eq!(fluxoid_residual(3.5).n, 4);
        let f = fluxoid_residual(1.98);
        assert_eq!(f.n, 2);
        assert!((f.residual + 0.02).abs() < 1e-12);
    }

    #[test]
    fn two_island_symmetric() {
        // dδ/dt vanishes only while n₁ ≈ n₂, so keep E·t·Δn/n₀ negligible.
        let n0 = 1e9;
        let s0 = TwoIslandState {
            n1: n0,
            n2: n0,
            theta1: 0.0,
            theta2: 0.7,
        };
        let traj = two_island_dynamics(s0, 1e-9, 1e-2, 10_000).unwrap();
        let last = traj.states.last().unwrap();
        assert!(((last.n1 + last.n2) - 2.0 * n0).abs() / (2.0 * n0) < 1e-9);
        assert!((last.delta() - 0.7).abs() < 1e-9);
        for (i, j) in traj.current.iter().zip(&traj.josephson_current) {
            assert!((i - j).abs() <= 1e-6 * j.abs());
        }
    }

    #[test]
    fn two_island_zero_phase() {
        let s0 = TwoIslandState {
            n1: 100.0,
            n2: 100.0,
            theta1: 0.0,
            theta2: 0.0,
        };
        let traj = two_island_dynamics(s0, 0.1, 0.01, 100).unwrap();
        assert!(traj.current.iter().all(|&i| i == 0.0));
    }

    #[test]
    fn two_island_unstable() {
        let s0 = TwoIslandState {
            n1: 1.0,
            n2: 1e-3,
            theta1: 0.0,
            theta2: FRAC_PI_2,
        };
        assert!(matches!(
            two_island_dynamics(s0, 1.0, 0.5, 100),
            Err(Error::StepUnstable { .. })
        ));
    }
}

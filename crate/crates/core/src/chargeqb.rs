//! Cooper-pair box and transmon in the charge basis.
//!
//! `H = E_C(N̂ − N_g)² − E_J cos φ̂`, which in the number basis is
//! tridiagonal with `E_C(N − N_g)²` on the diagonal and `−E_J/2` coupling
//! neighbouring charge states. The qubit reduction about `N_g = ½` uses
//! `|0⟩ = |N=0⟩`, `|1⟩ = |N=1⟩` and drops the identity offset
//! `E_C(¼ + Δ_g²)`, which is returned separately.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{ensure, Error, Result};
use crate::numkernel::{hermitian_eigen, DenseMatrix, Ket, Propagator};
use crate::optimize::{golden_section, linear_fit};
use crate::qubitcore::{pauli, Axis};
use crate::series::TimeSeries;

const LABEL: &str = "charge";

/// Default charge cutoff.
pub const DEFAULT_NCUT: usize = 10;

/// Points per unit gate charge in sweeps and dispersion scans.
pub const GRID_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CPBParams {
    pub ec: f64,
    pub ej: f64,
    pub ng: f64,
}

impl CPBParams {
    pub fn new(ec: f64, ej: f64, ng: f64) -> Result<Self> {
        ensure(ec > 0.0 && ec.is_finite(), || format!("ec must be positive, got {ec}"))?;
        ensure(ej >= 0.0 && ej.is_finite(), || format!("ej must be non-negative, got {ej}"))?;
        ensure(ng.is_finite(), || "ng must be finite".into())?;
        Ok(CPBParams { ec, ej, ng })
    }

    pub fn with_ng(&self, ng: f64) -> Self {
        CPBParams { ng, ..*self }
    }
}

/// Charge states `|−ncut⟩ … |+ncut⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargeBasis {
    ncut: usize,
}

impl ChargeBasis {
    pub fn new(ncut: usize) -> Result<Self> {
        ensure(ncut >= 2, || format!("ncut must be at least 2, got {ncut}"))?;
        Ok(ChargeBasis { ncut })
    }

    pub fn ncut(&self) -> usize {
        self.ncut
    }

    pub fn dim(&self) -> usize {
        2 * self.ncut + 1
    }

    /// Charge number of basis index `i`.
    pub fn charge(&self, i: usize) -> i64 {
        i as i64 - self.ncut as i64
    }

    /// Basis index of charge `n`, if retained.
    pub fn index(&self, n: i64) -> Option<usize> {
        let i = n + self.ncut as i64;
        (0..self.dim() as i64).contains(&i).then_some(i as usize)
    }

    pub fn ket(&self, n: i64) -> Result<Ket> {
        let i = self.index(n).ok_or_else(|| {
            Error::InvalidParameter(format!("charge {n} outside cutoff {}", self.ncut))
        })?;
        Ok(Ket::basis(self.dim(), i, LABEL))
    }
}

pub fn cpb_hamiltonian(params: &CPBParams, basis: ChargeBasis) -> DenseMatrix {
    let d = basis.dim();
    let off = Complex64::new(-0.5 * params.ej, 0.0);
    DenseMatrix::from_fn(d, d, |i, j| {
        if i == j {
            let x = basis.charge(i) as f64 - params.ng;
            Complex64::new(params.ec * x * x, 0.0)
        } else if i.abs_diff(j) == 1 {
            off
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `k` lowest eigenvalues of `H` at a single gate charge.
pub fn levels(params: &CPBParams, basis: ChargeBasis, k: usize) -> Result<Vec<f64>> {
    check_levels(basis, k)?;
    let mut v = hermitian_eigen(&cpb_hamiltonian(params, basis))?.values;
    v.truncate(k);
    Ok(v)
}

fn check_levels(basis: ChargeBasis, k: usize) -> Result<()> {
    ensure(k >= 1 && k < 2 * basis.ncut(), || {
        format!(
            "levels must be in 1..={} for ncut = {}, got {k}",
            2 * basis.ncut() - 1,
            basis.ncut()
        )
    })
}

/// E₁ − E₀ at one gate charge.
pub fn qubit_gap(params: &CPBParams, basis: ChargeBasis) -> Result<f64> {
    let v = levels(params, basis, 2)?;
    Ok(v[1] - v[0])
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSweep {
    pub ng_values: Vec<f64>,
    /// Ascending eigenvalues, one list per gate charge.
    pub levels: Vec<Vec<f64>>,
}

impl SpectrumSweep {
    /// Level `k` across the grid.
    pub fn level(&self, k: usize) -> Vec<f64> {
        self.levels.iter().map(|l| l[k]).collect()
    }

    /// `E_{k+1} − E_k` across the grid.
    pub fn gap(&self, k: usize) -> Vec<f64> {
        self.levels.iter().map(|l| l[k + 1] - l[k]).collect()
    }
}

/// Diagonalises at every grid point; points run in parallel, output follows
/// the input order.
pub fn spectrum_sweep(
    template: &CPBParams,
    ng_grid: &[f64],
    ncut: usize,
    k: usize,
) -> Result<SpectrumSweep> {
    let basis = ChargeBasis::new(ncut)?;
    check_levels(basis, k)?;
    let levels = ng_grid
        .par_iter()
        .map(|&ng| levels(&template.with_ng(ng), basis, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumSweep {
        ng_values: ng_grid.to_vec(),
        levels,
    })
}

#[derive(Debug, Clone)]
pub struct ReducedQubit {
    /// `E_CΔ_g σ_z − (E_J/2)σ_x`
    pub h2: DenseMatrix,
    /// Dropped identity term `E_C(¼ + Δ_g²)`.
    pub offset: f64,
    pub dg: f64,
}

pub fn reduced_qubit(params: &CPBParams) -> Result<ReducedQubit> {
    let dg = params.ng - 0.5;
    ensure(dg.abs() < 0.5, || format!("ng must lie in (0, 1), got {}", params.ng))?;
    let h2 = &pauli(Axis::Z).scale_real(params.ec * dg) - &pauli(Axis::X).scale_real(0.5 * params.ej);
    Ok(ReducedQubit {
        h2,
        offset: params.ec * (0.25 + dg * dg),
        dg,
    })
}

/// `√(E_J² + 4E_C²Δ_g²)`
pub fn exact_gap(ec: f64, ej: f64, dg: f64) -> f64 {
    ej.hypot(2.0 * ec * dg)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    pub max_gap: f64,
    pub min_gap: f64,
    pub ng_at_max: f64,
    pub ng_at_min: f64,
}

impl Dispersion {
    pub fn dispersion(&self) -> f64 {
        self.max_gap - self.min_gap
    }
}

/// Relative tolerance for the cutoff-doubling self-check.
pub const DISPERSION_TRUNCATION_TOL: f64 = 1e-8;

/// Extremes of `E_{upper} − E_{lower}` over one gate-charge period.
///
/// The scan uses [`GRID_POINTS`] points on `[0, 1]`. The gaps at the two
/// extremal gate charges are recomputed with `2·ncut`; if either moves by
/// more than `DISPERSION_TRUNCATION_TOL·max_gap` the cutoff is rejected.
pub fn charge_dispersion(
    ec: f64,
    ej: f64,
    ncut: usize,
    pair: (usize, usize),
) -> Result<Dispersion> {
    let (lo, hi) = pair;
    ensure(lo < hi, || format!("level pair must be ordered, got {pair:?}"))?;
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| i as f64 / (GRID_POINTS - 1) as f64)
        .collect();
    let params = CPBParams::new(ec, ej, 0.0)?;
    let sweep = spectrum_sweep(&params, &grid, ncut, hi + 1)?;
    let gaps: Vec<f64> = sweep.levels.iter().map(|l| l[hi] - l[lo]).collect();
    let (imax, &max_gap) = gaps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");
    let (imin, &min_gap) = gaps
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty grid");

    let wide = ChargeBasis::new(2 * ncut)?;
    let gap_wide = |ng: f64| -> Result<f64> {
        let l = levels(&params.with_ng(ng), wide, hi + 1)?;
        Ok(l[hi] - l[lo])
    };
    let d_max = (gap_wide(grid[imax])? - max_gap).abs();
    let d_min = (gap_wide(grid[imin])? - min_gap).abs();
    let tol = DISPERSION_TRUNCATION_TOL * max_gap.abs();
    if d_max > tol || d_min > tol {
        return Err(Error::TruncationTooSmall(format!(
            "ncut = {ncut}: doubling moves the gap by {:e}",
            d_max.max(d_min)
        )));
    }
    Ok(Dispersion {
        max_gap,
        min_gap,
        ng_at_max: grid[imax],
        ng_at_min: grid[imin],
    })
}

/// Where the `E_J = 0` parabolas of charges `a` and `b` cross.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaCrossing {
    pub ng: f64,
    /// Index of the lower of the two levels that anticross there.
    pub lower_level: usize,
}

pub fn parabola_crossing(a: i64, b: i64) -> Result<ParabolaCrossing> {
    ensure(a != b, || "crossing needs two distinct charges".into())?;
    let (a, b) = (a.min(b), a.max(b));
    // Parabolas strictly below the crossing energy are the charges strictly
    // between a and b.
    Ok(ParabolaCrossing {
        ng: 0.5 * (a + b) as f64,
        lower_level: (b - a - 1) as usize,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingGap {
    pub ej: f64,
    pub ng: f64,
    pub gap: f64,
}

/// Half-width of the gate-charge window searched around a crossing.
pub const CROSSING_WINDOW: f64 = 0.05;

/// Minimum of `E_{k+1} − E_k` near `ng_center`, by golden section.
pub fn avoided_crossing_gap(
    ec: f64,
    ej: f64,
    ncut: usize,
    ng_center: f64,
    lower_level: usize,
) -> Result<CrossingGap> {
    let basis = ChargeBasis::new(ncut)?;
    let params = CPBParams::new(ec, ej, ng_center)?;
    check_levels(basis, lower_level + 2)?;
    let gap_at = |ng: f64| {
        levels(&params.with_ng(ng), basis, lower_level + 2)
            .map(|l| l[lower_level + 1] - l[lower_level])
    };
    // Surface eigensolver failures before the search swallows them.
    gap_at(ng_center)?;
    let (ng, _) = golden_section(
        |ng| gap_at(ng).unwrap_or(f64::INFINITY),
        ng_center - CROSSING_WINDOW,
        ng_center + CROSSING_WINDOW,
        1e-10,
    );
    Ok(CrossingGap {
        ej,
        ng,
        gap: gap_at(ng)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingScaling {
    pub gaps: Vec<CrossingGap>,
    /// Slope of log(gap) against log(E_J).
    pub slope: f64,
}

fn scaling(ec: f64, ej_list: &[f64], ncut: usize, crossing: ParabolaCrossing) -> Result<CrossingScaling> {
    ensure(ej_list.len() >= 2 && ej_list.iter().all(|&e| e > 0.0), || {
        "need at least two positive E_J values".into()
    })?;
    let gaps = ej_list
        .iter()
        .map(|&ej| avoided_crossing_gap(ec, ej, ncut, crossing.ng, crossing.lower_level))
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = gaps.iter().map(|g| g.ej.ln()).collect();
    let ys: Vec<f64> = gaps.iter().map(|g| g.gap.ln()).collect();
    let fit = linear_fit(&xs, &ys)?;
    Ok(CrossingScaling {
        gaps,
        slope: fit.slope,
    })
}

/// Gap at the `|0⟩–|2⟩` crossing (`N_g = 1`), which opens only at second
/// order in `E_J`.
pub fn second_order_gap(ec: f64, ej_list: &[f64], ncut: usize) -> Result<CrossingScaling> {
    scaling(ec, ej_list, ncut, parabola_crossing(0, 2)?)
}

/// Gap at the `|0⟩–|1⟩` crossing (`N_g = ½`), first order in `E_J`.
pub fn first_order_gap(ec: f64, ej_list: &[f64], ncut: usize) -> Result<CrossingScaling> {
    scaling(ec, ej_list, ncut, parabola_crossing(0, 1)?)
}

fn ground_state(params: &CPBParams, basis: ChargeBasis) -> Result<Ket> {
    let e = hermitian_eigen(&cpb_hamiltonian(params, basis))?;
    Ok(Ket::new(e.vector(0), LABEL))
}

/// Sudden jump of the gate from `N_g = 0` to `½`.
///
/// Returns the survival probability of the initial ground state, which in
/// the two-level picture is `½(1 + cos E_J t)`.
pub fn sudden_gate_sim(params: &CPBParams, times: &[f64], ncut: usize) -> Result<TimeSeries> {
    let basis = ChargeBasis::new(ncut)?;
    let psi0 = ground_state(&params.with_ng(0.0), basis)?;
    let prop = Propagator::new(&cpb_hamiltonian(&params.with_ng(0.5), basis))?;
    let values = times
        .iter()
        .map(|&t| psi0.fidelity(&prop.evolve(t, &psi0)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TimeSeries::new(times.to_vec(), values))
}

/// Two-level prediction for [`sudden_gate_sim`].
pub fn sudden_gate_two_level(ej: f64, times: &[f64]) -> TimeSeries {
    TimeSeries::from_fn(times, |t| 0.5 * (1.0 + (ej * t).cos()))
}

/// Hold time that maximises the excited-state population, `π/E_J`.
pub fn sudden_flip_time(ej: f64) -> f64 {
    std::f64::consts::PI / ej
}

/// Largest gate-charge change per piecewise-constant ramp step.
pub const MAX_RAMP_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticResult {
    /// Overlap with `(|N=0⟩ + |N=1⟩)/√2`.
    pub fidelity_to_plus: f64,
    /// Overlap with the ground state of `H(N_g = ½)`.
    pub fidelity_to_ground: f64,
}

/// Linear ramp `N_g: 0 → ½` over `ramp_time`, starting in the ground state.
///
/// Each of the `steps` intervals evolves under `H` frozen at the interval's
/// midpoint gate charge. `steps` must keep the per-step change below
/// [`MAX_RAMP_STEP`].
pub fn adiabatic_sweep_sim(
    params: &CPBParams,
    ramp_time: f64,
    steps: usize,
    ncut: usize,
) -> Result<AdiabaticResult> {
    ensure(ramp_time >= 0.0 && ramp_time.is_finite(), || {
        format!("ramp time must be non-negative, got {ramp_time}")
    })?;
    ensure(steps > 0 && 0.5 / (steps as f64) < MAX_RAMP_STEP, || {
        format!("{steps} steps change N_g by more than {MAX_RAMP_STEP} per step")
    })?;
    let basis = ChargeBasis::new(ncut)?;
    let mut psi = ground_state(&params.with_ng(0.0), basis)?;
    let dt = ramp_time / steps as f64;
    if dt > 0.0 {
        for k in 0..steps {
            let ng = 0.5 * (k as f64 + 0.5) / steps as f64;
            let prop = Propagator::new(&cpb_hamiltonian(&params.with_ng(ng), basis))?;
            psi = prop.evolve(dt, &psi)?;
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut plus = vec![Complex64::new(0.0, 0.0); basis.dim()];
    plus[basis.index(0).expect("ncut >= 2")] = Complex64::new(s, 0.0);
    plus[basis.index(1).expect("ncut >= 2")] = Complex64::new(s, 0.0);
    let plus = Ket::new(plus, LABEL);
    let ground = ground_state(&params.with_ng(0.5), basis)?;
    Ok(AdiabaticResult {
        fidelity_to_plus: plus.fidelity(&psi)?,
        fidelity_to_ground: ground.fidelity(&psi)?,
    })
}

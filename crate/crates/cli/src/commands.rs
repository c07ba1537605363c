use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use cqed::chargeqb::{charge_dispersion, spectrum_sweep, CPBParams};
use cqed::decoherence::{
    bell_state, decay_limited_ramsey, joint_table, marginal_table, ramsey_ensemble, t1_curves,
    BellKind, McConfig, NoiseModel, OUTCOME_LABELS,
};
use cqed::fockspace::{coherent_evolution, number_stats, quad_stats, FockBasis};
use cqed::jcmodel::{vacuum_rabi, JCParams, JCSpace};
use cqed::josephson::{
    first_minimum, flux_qubit_potential, squid_effective, two_island_dynamics, washboard,
    JunctionSpec, TwoIslandState,
};
use cqed::qubitcore::{rabi_numeric, rabi_trace, ramsey_circuit, ramsey_trace};
use cqed::rng::RngSpec;
use cqed::series::linspace;
use cqed::{Complex64, Error, Result};

use crate::output::{fmt_f64, OutputTable};
use crate::Command;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `steps` intervals on `[start, stop]`.
fn grid(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    ensure(steps >= 1, || "steps must be at least 1".into())?;
    ensure(start.is_finite() && stop.is_finite() && stop > start, || {
        format!("need a finite range with max > min, got [{start}, {stop}]")
    })?;
    Ok(linspace(start, stop, steps))
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 1.0)]
    ec: f64,
    #[arg(long, default_value_t = 0.1)]
    ej: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    ng_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    ng_max: f64,
    /// Number of gate-charge points.
    #[arg(long, default_value_t = 301)]
    ng_steps: usize,
    #[arg(long, default_value_t = 3)]
    levels: usize,
    #[arg(long, default_value_t = 10)]
    ncut: usize,
}

fn spectrum(a: &SpectrumArgs) -> Result<OutputTable> {
    ensure(a.ng_steps >= 2, || "ng-steps must be at least 2".into())?;
    ensure(a.levels >= 2, || "levels must be at least 2".into())?;
    let params = CPBParams::new(a.ec, a.ej, 0.0)?;
    let ngs = grid(a.ng_min, a.ng_max, a.ng_steps - 1)?;
    let sweep = spectrum_sweep(&params, &ngs, a.ncut, a.levels)?;
    let names: Vec<String> = (0..a.levels).map(|k| format!("e{k}")).collect();
    let mut cols: Vec<&str> = vec!["ng"];
    cols.extend(names.iter().map(String::as_str));
    cols.push("gap01");
    let mut t = OutputTable::new(&cols);
    let gaps = sweep.gap(0);
    for (i, &ng) in ngs.iter().enumerate() {
        let mut row = vec![ng];
        row.extend(&sweep.levels[i]);
        row.push(gaps[i]);
        t.push(row);
    }
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    t.meta_f64("ec", a.ec)
        .meta_f64("ej", a.ej)
        .meta("ncut", a.ncut)
        .meta_f64("min_gap01", min_gap);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct RabiArgs {
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 4.0 * PI)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

fn rabi(a: &RabiArgs) -> Result<OutputTable> {
    let times = grid(0.0, a.t_max, a.steps)?;
    let (p0, p1) = rabi_trace(a.omega, &times);
    let num = rabi_numeric(a.omega, &times)?;
    let mut t = OutputTable::new(&["t", "p0", "p1", "p0_numeric"]);
    for i in 0..times.len() {
        t.push(vec![times[i], p0.values[i], p1.values[i], num.values[i]]);
    }
    t.meta_f64("omega", a.omega);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct RamseyArgs {
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 4.0 * PI)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

fn ramsey(a: &RamseyArgs) -> Result<OutputTable> {
    let times = grid(0.0, a.t_max, a.steps)?;
    let circuit = ramsey_circuit(a.delta, &times)?;
    let closed = ramsey_trace(a.delta, &times);
    let mut t = OutputTable::new(&["t", "p_plus", "p_plus_closed"]);
    for i in 0..times.len() {
        t.push(vec![times[i], circuit.values[i], closed.values[i]]);
    }
    t.meta_f64("delta", a.delta);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_im: f64,
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, default_value_t = 2.0 * PI)]
    t_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Fock-space dimension; defaults to the truncation rule for `alpha`.
    #[arg(long)]
    dim: Option<usize>,
}

fn coherent(a: &CoherentArgs) -> Result<OutputTable> {
    let alpha = Complex64::new(a.alpha_re, a.alpha_im);
    let dim = a.dim.unwrap_or_else(|| FockBasis::required_for(alpha));
    let basis = FockBasis::new(dim)?;
    let times = grid(0.0, a.t_max, a.steps)?;
    let mut t = OutputTable::new(&["t", "mean_x1", "mean_x2", "var_x1", "var_x2", "mean_n", "fidelity"]);
    for &time in &times {
        let ev = coherent_evolution(alpha, a.omega, time, basis)?;
        let q = quad_stats(&ev.numeric, basis)?;
        let (n, _) = number_stats(&ev.numeric, basis)?;
        t.push(vec![time, q.mean1, q.mean2, q.var1, q.var2, n, ev.fidelity()]);
    }
    t.meta_f64("alpha_re", a.alpha_re)
        .meta_f64("alpha_im", a.alpha_im)
        .meta_f64("omega", a.omega)
        .meta("dim", dim);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct WashboardArgs {
    /// Bias current in units of the critical current.
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    bias: f64,
    #[arg(long, default_value_t = -2.0 * PI, allow_hyphen_values = true)]
    phi_min: f64,
    #[arg(long, default_value_t = 4.0 * PI, allow_hyphen_values = true)]
    phi_max: f64,
    #[arg(long, default_value_t = 600)]
    steps: usize,
}

fn washboard_cmd(a: &WashboardArgs) -> Result<OutputTable> {
    let spec = JunctionSpec::new(1.0, 1.0)?;
    let phis = grid(a.phi_min, a.phi_max, a.steps)?;
    let mut t = OutputTable::new(&["phi", "u"]);
    for p in washboard(&spec, a.bias, &phis) {
        t.push(vec![p.phi, p.u]);
    }
    t.meta_f64("bias", a.bias);
    match first_minimum(&spec, a.bias) {
        Ok(m) => t.meta_f64("first_minimum", m),
        Err(_) => t.meta("first_minimum", "none"),
    };
    Ok(t)
}

#[derive(Debug, Args)]
pub struct SquidArgs {
    /// Critical current of each junction.
    #[arg(long, default_value_t = 1.0)]
    i0: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    phi_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    phi_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

fn squid(a: &SquidArgs) -> Result<OutputTable> {
    ensure(a.i0 > 0.0, || format!("i0 must be positive, got {}", a.i0))?;
    let phis = grid(a.phi_min, a.phi_max, a.steps)?;
    let mut t = OutputTable::new(&["phi_ext", "critical", "magnitude"]);
    for &phi in &phis {
        let r = squid_effective(a.i0, phi, 0);
        t.push(vec![phi, r.critical, r.magnitude()]);
    }
    t.meta_f64("i0", a.i0);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct FluxwellArgs {
    #[arg(long, default_value_t = 1.0)]
    l: f64,
    #[arg(long, default_value_t = 0.1)]
    ej: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    phi_ext: f64,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    phi_min: f64,
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    phi_max: f64,
    #[arg(long, default_value_t = 800)]
    steps: usize,
}

fn fluxwell(a: &FluxwellArgs) -> Result<OutputTable> {
    let phis = grid(a.phi_min, a.phi_max, a.steps)?;
    let well = flux_qubit_potential(a.l, a.ej, a.phi_ext, &phis)?;
    let mut t = OutputTable::new(&["phi", "u"]);
    for (p, u) in well.phis.iter().zip(&well.u) {
        t.push(vec![*p, *u]);
    }
    let minima: Vec<String> = well
        .minima
        .iter()
        .map(|(p, u)| format!("{}:{}", fmt_f64(*p), fmt_f64(*u)))
        .collect();
    t.meta_f64("l", a.l)
        .meta_f64("ej", a.ej)
        .meta_f64("phi_ext", a.phi_ext)
        .meta("minima", minima.join(";"));
    Ok(t)
}

#[derive(Debug, Args)]
pub struct JcArgs {
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    #[arg(long, default_value_t = 2.0 * PI)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
}

fn jc(a: &JcArgs) -> Result<OutputTable> {
    let p = JCParams::new(a.g)?;
    let space = JCSpace::new(a.nmax)?;
    let times = grid(0.0, a.t_max, a.steps)?;
    let run = vacuum_rabi(&p, &times, space)?;
    let mut t = OutputTable::new(&["t", "p_qubit_excited", "mean_photons"]);
    for i in 0..times.len() {
        t.push(vec![times[i], run.p_qubit_excited.values[i], run.p_photon.values[i]]);
    }
    t.meta_f64("g", a.g).meta("nmax", a.nmax);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    #[arg(long, default_value_t = 5.0)]
    t_max: f64,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    /// Monte-Carlo trajectories; 0 skips sampling.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0.005)]
    dt: f64,
}

fn decay(a: &DecayArgs, seed: u64) -> Result<OutputTable> {
    let times = grid(0.0, a.t_max, a.steps)?;
    let mc = (a.trials > 0).then_some(McConfig {
        dt: a.dt,
        trials: a.trials,
        rng: RngSpec::new(seed),
    });
    let curves = t1_curves(a.t1, &times, mc)?;
    let mut t = match &curves.monte_carlo {
        Some(_) => OutputTable::new(&["t", "p_excited", "p_excited_mc"]),
        None => OutputTable::new(&["t", "p_excited"]),
    };
    for i in 0..times.len() {
        let mut row = vec![times[i], curves.analytic.values[i]];
        if let Some(mc) = &curves.monte_carlo {
            row.push(mc.values[i]);
        }
        t.push(row);
    }
    t.meta_f64("t1", a.t1).meta("trials", a.trials).meta_f64("dt", a.dt);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct DephaseArgs {
    /// Mean qubit gap.
    #[arg(long, default_value_t = 2.0 * PI)]
    delta: f64,
    /// White gap-noise strength; T2 = 2/sigma².
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, conflicts_with = "t1")]
    sigma: f64,
    /// Use energy decay with this lifetime instead of gap noise.
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 8.0)]
    horizon: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
}

fn dephase(a: &DephaseArgs, seed: u64) -> Result<OutputTable> {
    let rng = RngSpec::new(seed);
    let mut t;
    if let Some(t1) = a.t1 {
        let r = decay_limited_ramsey(t1, a.delta, a.dt, a.horizon, a.trials, rng)?;
        t = OutputTable::new(&["t", "p_plus", "p_excited"]);
        for i in 0..r.p_plus.len() {
            t.push(vec![r.p_plus.times[i], r.p_plus.values[i], r.p_excited.values[i]]);
        }
        t.meta("model", "decay").meta_f64("t1", t1);
        opt_meta(&mut t, "fitted_t2", r.fitted_t2);
        opt_meta(&mut t, "fitted_t1", r.fitted_t1);
    } else {
        let noise = NoiseModel::white(a.sigma)?;
        let r = ramsey_ensemble(a.delta, noise, a.dt, a.horizon, a.trials, rng)?;
        t = OutputTable::new(&["t", "p_plus"]);
        for (time, p) in r.p_plus.iter() {
            t.push(vec![time, p]);
        }
        t.meta("model", "white-noise")
            .meta_f64("sigma", a.sigma)
            .meta_f64("analytic_t2", noise.analytic_t2());
        opt_meta(&mut t, "fitted_t2", r.fitted_t2);
        t.meta_f64("fitted_freq", r.fitted_freq);
    }
    t.meta_f64("delta", a.delta)
        .meta_f64("dt", a.dt)
        .meta("trials", a.trials);
    Ok(t)
}

fn opt_meta(t: &mut OutputTable, key: &str, v: Option<f64>) {
    match v {
        Some(x) => t.meta_f64(key, x),
        None => t.meta(key, "none"),
    };
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BellTable {
    Joint,
    Marginal,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// phi+, phi-, psi+ or psi-.
    #[arg(long, default_value = "phi+")]
    state: String,
    #[arg(long, value_enum, default_value = "joint")]
    table: BellTable,
}

fn bell(a: &BellArgs) -> Result<OutputTable> {
    let kind = BellKind::parse(&a.state)?;
    let psi = bell_state(kind);
    let mut t;
    match a.table {
        BellTable::Joint => {
            t = OutputTable::new(&["alice", "bob", "probability"]);
            let j = joint_table(&psi);
            for (ai, row) in j.p.iter().enumerate() {
                for (bi, &p) in row.iter().enumerate() {
                    t.push(vec![ai as f64, bi as f64, p]);
                }
            }
        }
        BellTable::Marginal => {
            t = OutputTable::new(&["alice_basis", "bob", "probability"]);
            let m = marginal_table(&psi);
            // Basis index 3 is the average over Alice's bases.
            for (k, row) in m.by_alice_basis.iter().chain([&m.average]).enumerate() {
                for (bi, &p) in row.iter().enumerate() {
                    t.push(vec![k as f64, bi as f64, p]);
                }
            }
        }
    }
    t.meta("state", kind.label())
        .meta("outcomes", OUTCOME_LABELS.join(" "));
    Ok(t)
}

#[derive(Debug, Args)]
pub struct TransmonArgs {
    #[arg(long, default_value_t = 1.0)]
    ec: f64,
    /// Comma-separated E_J/E_C ratios.
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,20,50")]
    ratios: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    ncut: usize,
}

fn transmon(a: &TransmonArgs) -> Result<OutputTable> {
    ensure(!a.ratios.is_empty(), || "need at least one ratio".into())?;
    let mut t = OutputTable::new(&["ej_over_ec", "max_gap", "min_gap", "dispersion"]);
    for &r in &a.ratios {
        let d = charge_dispersion(a.ec, r * a.ec, a.ncut, (0, 1))?;
        t.push(vec![r, d.max_gap, d.min_gap, d.dispersion()]);
    }
    t.meta_f64("ec", a.ec).meta("ncut", a.ncut);
    Ok(t)
}

#[derive(Debug, Args)]
pub struct TunnelOdeArgs {
    /// Initial pair number on each island.
    #[arg(long, default_value_t = 1e9)]
    n0: f64,
    /// Tunnelling energy E.
    #[arg(long, default_value_t = 1e-9)]
    e: f64,
    /// Initial phase difference θ₂ − θ₁.
    #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
    delta0: f64,
    /// Initial n₂ − n₁.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    imbalance: f64,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    /// Emit every `stride`-th step.
    #[arg(long, default_value_t = 100)]
    stride: usize,
}

fn tunnel_ode(a: &TunnelOdeArgs) -> Result<OutputTable> {
    ensure(a.stride >= 1, || "stride must be at least 1".into())?;
    let s0 = TwoIslandState {
        n1: a.n0 - 0.5 * a.imbalance,
        n2: a.n0 + 0.5 * a.imbalance,
        theta1: 0.0,
        theta2: a.delta0,
    };
    let traj = two_island_dynamics(s0, a.e, a.dt, a.steps)?;
    let mut t = OutputTable::new(&["t", "n1", "n2", "delta", "current", "josephson_current"]);
    for i in (0..traj.states.len()).step_by(a.stride) {
        let s = &traj.states[i];
        t.push(vec![
            traj.times[i],
            s.n1,
            s.n2,
            s.delta(),
            traj.current[i],
            traj.josephson_current[i],
        ]);
    }
    t.meta_f64("n0", a.n0)
        .meta_f64("e", a.e)
        .meta_f64("delta0", a.delta0)
        .meta_f64("dt", a.dt)
        .meta("steps", a.steps);
    Ok(t)
}

pub fn run(cmd: &Command, seed: u64) -> Result<OutputTable> {
    match cmd {
        Command::Spectrum(a) => spectrum(a),
        Command::Rabi(a) => rabi(a),
        Command::Ramsey(a) => ramsey(a),
        Command::Coherent(a) => coherent(a),
        Command::Washboard(a) => washboard_cmd(a),
        Command::Squid(a) => squid(a),
        Command::Fluxwell(a) => fluxwell(a),
        Command::Jc(a) => jc(a),
        Command::Decay(a) => decay(a, seed),
        Command::Dephase(a) => dephase(a, seed),
        Command::Bell(a) => bell(a),
        Command::Transmon(a) => transmon(a),
        Command::TunnelOde(a) => tunnel_ode(a),
    }
}

//! Truncated harmonic-oscillator space.
//!
//! Free evolution carries two sign conventions in the literature: the
//! Schrödinger form `H = +ω₀n̂` gives `|n⟩ → e^{−inω₀t}|n⟩`, while the
//! coherent-state exercise convention rotates `α → α·e^{+iω₀t}`, which is
//! evolution under `−ω₀n̂`. [`coherent_evolution`] follows the latter;
//! [`PhaseConvention`] exposes both.

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::numkernel::{evolve, expectation, DenseMatrix, Ket};

const LABEL: &str = "fock";

/// Levels `|0⟩ … |dim−1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    dim: usize,
}

impl FockBasis {
    pub fn new(dim: usize) -> Result<Self> {
        ensure(dim >= 2, || format!("Fock basis needs dim >= 2, got {dim}"))?;
        Ok(FockBasis { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Smallest dimension accepted for a coherent state of amplitude `alpha`.
    pub fn required_for(alpha: Complex64) -> usize {
        let a = alpha.norm();
        (a * a + 10.0 * a + 10.0).ceil() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    omega0: f64,
}

impl OscillatorParams {
    pub fn new(omega0: f64) -> Result<Self> {
        ensure(omega0 > 0.0 && omega0.is_finite(), || {
            format!("omega0 must be positive and finite, got {omega0}")
        })?;
        Ok(OscillatorParams { omega0 })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }
}

#[derive(Debug, Clone)]
pub struct LadderSuite {
    pub lower: DenseMatrix,
    pub raise: DenseMatrix,
    pub number: DenseMatrix,
    pub x1: DenseMatrix,
    pub x2: DenseMatrix,
}

pub fn ladder_suite(basis: FockBasis) -> LadderSuite {
    let n = basis.dim();
    let lower = DenseMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let raise = lower.adjoint();
    let number = &raise * &lower;
    let x1 = (&lower + &raise).scale_real(0.5);
    let x2 = (&lower - &raise).scale(Complex64::new(0.0, -0.5));
    LadderSuite {
        lower,
        raise,
        number,
        x1,
        x2,
    }
}

pub fn fock_ket(n: usize, basis: FockBasis) -> Result<Ket> {
    ensure(n < basis.dim(), || {
        format!("level {n} outside a basis of dim {}", basis.dim())
    })?;
    Ok(Ket::basis(basis.dim(), n, LABEL))
}

/// Largest tolerated norm deficit before renormalisation.
pub const COHERENT_RESIDUAL_TOL: f64 = 1e-8;

/// Truncated coherent state `|α⟩`, renormalised.
pub fn coherent_ket(alpha: Complex64, basis: FockBasis) -> Result<Ket> {
    ensure(alpha.re.is_finite() && alpha.im.is_finite(), || {
        "alpha must be finite".into()
    })?;
    let need = FockBasis::required_for(alpha);
    if basis.dim() < need {
        return Err(Error::TruncationTooSmall(format!(
            "|alpha| = {} needs dim >= {need}, got {}",
            alpha.norm(),
            basis.dim()
        )));
    }
    let mut amps = Vec::with_capacity(basis.dim());
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..basis.dim() {
        amps.push(c);
        c = c * alpha / ((n + 1) as f64).sqrt();
    }
    let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let deficit = 1.0 - norm_sqr;
    if deficit > COHERENT_RESIDUAL_TOL {
        return Err(Error::TruncationTooSmall(format!(
            "norm deficit {deficit:e} exceeds {COHERENT_RESIDUAL_TOL:e}"
        )));
    }
    Ket::normalized(amps, LABEL)
}

/// Sign of the free oscillator Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `H = +ω₀n̂`, `|n⟩ → e^{−inω₀t}|n⟩`.
    Schrodinger,
    /// `H = −ω₀n̂`, `|α⟩ → |α·e^{+iω₀t}⟩`.
    Exercise,
}

pub fn free_hamiltonian(omega0: f64, basis: FockBasis, convention: PhaseConvention) -> DenseMatrix {
    let sign = match convention {
        PhaseConvention::Schrodinger => 1.0,
        PhaseConvention::Exercise => -1.0,
    };
    let diag: Vec<f64> = (0..basis.dim()).map(|n| sign * omega0 * n as f64).collect();
    DenseMatrix::from_real_diagonal(&diag)
}

#[derive(Debug, Clone)]
pub struct CoherentEvolution {
    pub analytic: Ket,
    pub numeric: Ket,
}

impl CoherentEvolution {
    pub fn fidelity(&self) -> f64 {
        self.analytic
            .fidelity(&self.numeric)
            .expect("both kets share the basis")
    }
}

/// Evolves `|α⟩` for time `t` under the exercise convention.
pub fn coherent_evolution(
    alpha: Complex64,
    omega0: f64,
    t: f64,
    basis: FockBasis,
) -> Result<CoherentEvolution> {
    let rotated = alpha * Complex64::from_polar(1.0, omega0 * t);
    let analytic = coherent_ket(rotated, basis)?;
    let start = coherent_ket(alpha, basis)?;
    let h = free_hamiltonian(omega0, basis, PhaseConvention::Exercise);
    let numeric = evolve(&h, t, &start)?;
    Ok(CoherentEvolution { analytic, numeric })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadStats {
    pub mean1: f64,
    pub mean2: f64,
    pub var1: f64,
    pub var2: f64,
}

fn mean_and_var(op: &DenseMatrix, psi: &Ket) -> Result<(f64, f64)> {
    let m = expectation(op, psi)?.re;
    let m2 = expectation(&(op * op), psi)?.re;
    Ok((m, m2 - m * m))
}

pub fn quad_stats(psi: &Ket, basis: FockBasis) -> Result<QuadStats> {
    let ops = ladder_suite(basis);
    let (mean1, var1) = mean_and_var(&ops.x1, psi)?;
    let (mean2, var2) = mean_and_var(&ops.x2, psi)?;
    Ok(QuadStats {
        mean1,
        mean2,
        var1,
        var2,
    })
}

/// Mean and variance of the photon number.
pub fn number_stats(psi: &Ket, basis: FockBasis) -> Result<(f64, f64)> {
    ensure(psi.dim() == basis.dim(), || {
        format!("ket dim {} does not match basis dim {}", psi.dim(), basis.dim())
    })?;
    let mut mean = 0.0;
    let mut second = 0.0;
    for n in 0..basis.dim() {
        let p = psi.probability(n);
        mean += n as f64 * p;
        second += (n * n) as f64 * p;
    }
    Ok((mean, second - mean * mean))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CavityKind {
    HalfWave,
    QuarterWave,
}

pub fn cavity_mode_freq(kind: CavityKind, omega0: f64, m: u32) -> f64 {
    let m = m as f64;
    match kind {
        CavityKind::HalfWave => (m + 1.0) * omega0,
        CavityKind::QuarterWave => (2.0 * m + 1.0) * omega0,
    }
}

//! Two-level algebra.
//!
//! Basis conventions: `|±⟩ = (|0⟩ ± |1⟩)/√2`, `|±i⟩ = (|0⟩ ± i|1⟩)/√2`.
//! The free qubit Hamiltonian is `H₀ = −½Δσ_z`, so `|0⟩` is the ground
//! state and `U₀(π/2Δ)` maps `|+⟩` to `|−i⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::numkernel::{DenseMatrix, Ket, Propagator, NORM_TOL};
use crate::series::TimeSeries;

const LABEL: &str = "qubit";
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Normalised qubit state `a0|0⟩ + a1|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitKet {
    a0: Complex64,
    a1: Complex64,
}

impl QubitKet {
    /// Accepts amplitudes whose norm is 1 within 1e-10.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        ensure((n - 1.0).abs() <= NORM_TOL, || {
            format!("qubit amplitudes have norm {n}, expected 1")
        })?;
        Ok(QubitKet { a0, a1 })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(a0: Complex64, a1: Complex64) -> Result<Self> {
        let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        ensure(n > 0.0 && n.is_finite(), || "zero or non-finite qubit state".into())?;
        Ok(QubitKet {
            a0: a0 / n,
            a1: a1 / n,
        })
    }

    pub fn zero() -> Self {
        QubitKet { a0: ONE, a1: ZERO }
    }

    pub fn one() -> Self {
        QubitKet { a0: ZERO, a1: ONE }
    }

    pub fn plus() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        QubitKet { a0: s, a1: s }
    }

    pub fn minus() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        QubitKet { a0: s, a1: -s }
    }

    pub fn plus_i() -> Self {
        QubitKet {
            a0: Complex64::new(FRAC_1_SQRT_2, 0.0),
            a1: Complex64::new(0.0, FRAC_1_SQRT_2),
        }
    }

    pub fn minus_i() -> Self {
        QubitKet {
            a0: Complex64::new(FRAC_1_SQRT_2, 0.0),
            a1: Complex64::new(0.0, -FRAC_1_SQRT_2),
        }
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &QubitKet) -> Complex64 {
        self.a0.conj() * other.a0 + self.a1.conj() * other.a1
    }

    pub fn fidelity(&self, other: &QubitKet) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// The orthogonal state `−a1*|0⟩ + a0*|1⟩`.
    pub fn orthogonal(&self) -> QubitKet {
        QubitKet {
            a0: -self.a1.conj(),
            a1: self.a0.conj(),
        }
    }

    pub fn to_ket(&self) -> Ket {
        Ket::new(vec![self.a0, self.a1], LABEL)
    }

    pub fn from_ket(ket: &Ket) -> Result<Self> {
        if ket.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: ket.dim(),
            });
        }
        QubitKet::new(ket.amplitudes()[0], ket.amplitudes()[1])
    }

    /// Applies a 2×2 operator; the result is renormalised to absorb rounding.
    pub fn apply(&self, op: &DenseMatrix) -> Result<QubitKet> {
        let out = op.apply(&[self.a0, self.a1])?;
        QubitKet::normalized(out[0], out[1])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub fn pauli(axis: Axis) -> DenseMatrix {
    let m = match axis {
        Axis::X => [ZERO, ONE, ONE, ZERO],
        Axis::Y => [ZERO, -I, I, ZERO],
        Axis::Z => [ONE, ZERO, ZERO, -ONE],
    };
    DenseMatrix::from_row_major(2, 2, m.to_vec()).expect("2x2 literal")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        let d = [self.x - other.x, self.y - other.y, self.z - other.z];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }

    /// Right-handed rotation by `theta` about the unit axis `n` (Rodrigues).
    pub fn rotated(&self, n: [f64; 3], theta: f64) -> BlochVector {
        let v = self.as_array();
        let (s, c) = theta.sin_cos();
        let dot = n[0] * v[0] + n[1] * v[1] + n[2] * v[2];
        let cross = [
            n[1] * v[2] - n[2] * v[1],
            n[2] * v[0] - n[0] * v[2],
            n[0] * v[1] - n[1] * v[0],
        ];
        let r: Vec<f64> = (0..3)
            .map(|k| v[k] * c + cross[k] * s + n[k] * dot * (1.0 - c))
            .collect();
        BlochVector {
            x: r[0],
            y: r[1],
            z: r[2],
        }
    }
}

/// Overlap differences against the three standard bases.
pub fn bloch(psi: &QubitKet) -> BlochVector {
    let diff = |p: QubitKet, m: QubitKet| p.fidelity(psi) - m.fidelity(psi);
    BlochVector {
        x: diff(QubitKet::plus(), QubitKet::minus()),
        y: diff(QubitKet::plus_i(), QubitKet::minus_i()),
        z: psi.a0.norm_sqr() - psi.a1.norm_sqr(),
    }
}

fn check_axis(n: [f64; 3]) -> Result<()> {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if (norm - 1.0).abs() > 1e-10 || !norm.is_finite() {
        return Err(Error::NotUnitAxis(norm));
    }
    Ok(())
}

/// `n·σ` for a unit axis.
pub fn n_dot_sigma(n: [f64; 3]) -> Result<DenseMatrix> {
    check_axis(n)?;
    Ok(DenseMatrix::from_row_major(
        2,
        2,
        vec![
            Complex64::new(n[2], 0.0),
            Complex64::new(n[0], -n[1]),
            Complex64::new(n[0], n[1]),
            Complex64::new(-n[2], 0.0),
        ],
    )
    .expect("finite axis"))
}

/// `U_n(θ) = cos(θ/2)·I − i·sin(θ/2)·n·σ`.
pub fn rotation(n: [f64; 3], theta: f64) -> Result<DenseMatrix> {
    let ns = n_dot_sigma(n)?;
    let (s, c) = (0.5 * theta).sin_cos();
    Ok(&DenseMatrix::identity(2).scale_real(c) + &ns.scale(Complex64::new(0.0, -s)))
}

pub fn rotate(n: [f64; 3], theta: f64, psi: &QubitKet) -> Result<QubitKet> {
    psi.apply(&rotation(n, theta)?)
}

/// `H₀ = −½Δσ_z`.
pub fn free_hamiltonian(delta: f64) -> DenseMatrix {
    pauli(Axis::Z).scale_real(-0.5 * delta)
}

/// `U₀(t) = exp(−iH₀t) = diag(e^{iΔt/2}, e^{−iΔt/2})`.
pub fn free_evolution_op(delta: f64, t: f64) -> DenseMatrix {
    let mut u = DenseMatrix::zeros(2, 2);
    u[(0, 0)] = Complex64::from_polar(1.0, 0.5 * delta * t);
    u[(1, 1)] = Complex64::from_polar(1.0, -0.5 * delta * t);
    u
}

/// Closed-form Rabi populations `(p0, p1)` under `½Ωσ_x` from `|0⟩`.
pub fn rabi_trace(omega: f64, times: &[f64]) -> (TimeSeries, TimeSeries) {
    let p0 = TimeSeries::from_fn(times, |t| 0.5 * (1.0 + (omega * t).cos()));
    let p1 = TimeSeries::from_fn(times, |t| 0.5 * (1.0 - (omega * t).cos()));
    (p0, p1)
}

/// `p0` from direct evolution under `½Ωσ_x`.
pub fn rabi_numeric(omega: f64, times: &[f64]) -> Result<TimeSeries> {
    let prop = Propagator::new(&pauli(Axis::X).scale_real(0.5 * omega))?;
    let start = QubitKet::zero().to_ket();
    let values = times
        .iter()
        .map(|&t| Ok(prop.evolve(t, &start)?.probability(0)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TimeSeries::new(times.to_vec(), values))
}

/// Closed-form Ramsey fringe `p0 = ½(1 + cos Δt)`.
pub fn ramsey_trace(delta: f64, times: &[f64]) -> TimeSeries {
    TimeSeries::from_fn(times, |t| 0.5 * (1.0 + (delta * t).cos()))
}

/// Hadamard, free evolution under `H₀`, Hadamard; returns `p0`.
pub fn ramsey_circuit(delta: f64, times: &[f64]) -> Result<TimeSeries> {
    let h = hadamard();
    let prop = Propagator::new(&free_hamiltonian(delta))?;
    let prepared = QubitKet::zero().to_ket().apply(&h)?;
    let values = times
        .iter()
        .map(|&t| Ok(prop.evolve(t, &prepared)?.apply(&h)?.probability(0)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(TimeSeries::new(times.to_vec(), values))
}

pub fn hadamard() -> DenseMatrix {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    DenseMatrix::from_row_major(2, 2, vec![s, s, s, -s]).expect("2x2 literal")
}

/// 2×2 density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitDensity {
    rho: DenseMatrix,
}

impl QubitDensity {
    pub fn pure(psi: &QubitKet) -> Self {
        let a = [psi.a0, psi.a1];
        QubitDensity {
            rho: DenseMatrix::from_fn(2, 2, |i, j| a[i] * a[j].conj()),
        }
    }

    /// `½(I + r·σ)` for `|r| ≤ 1`.
    pub fn from_bloch(r: BlochVector) -> Result<Self> {
        ensure(r.norm() <= 1.0 + 1e-12, || {
            format!("Bloch vector norm {} exceeds 1", r.norm())
        })?;
        let m = DenseMatrix::from_row_major(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + r.z), 0.0),
                Complex64::new(0.5 * r.x, -0.5 * r.y),
                Complex64::new(0.5 * r.x, 0.5 * r.y),
                Complex64::new(0.5 * (1.0 - r.z), 0.0),
            ],
        )?;
        Ok(QubitDensity { rho: m })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// tr(ρ²)
    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// `AρA†`
    pub fn evolved(&self, a: &DenseMatrix) -> Result<QubitDensity> {
        if a.shape() != (2, 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: a.rows(),
            });
        }
        Ok(QubitDensity {
            rho: a.matmul(&self.rho)?.matmul(&a.adjoint())?,
        })
    }

    /// `(tr ρσ_x, tr ρσ_y, tr ρσ_z)`; norm below 1 for mixed states.
    pub fn bloch(&self) -> BlochVector {
        let r = &self.rho;
        BlochVector {
            x: 2.0 * r[(1, 0)].re,
            y: 2.0 * r[(1, 0)].im,
            z: (r[(0, 0)] - r[(1, 1)]).re,
        }
    }
}

pub fn bloch_of_density(rho: &QubitDensity) -> BlochVector {
    rho.bloch()
}

#[derive(Debug, Clone)]
pub struct DensityPair {
    pub rho: QubitDensity,
    pub rho_evolved: QubitDensity,
}

pub fn density_ops(psi: &QubitKet, a: &DenseMatrix) -> Result<DensityPair> {
    let rho = QubitDensity::pure(psi);
    let rho_evolved = rho.evolved(a)?;
    Ok(DensityPair { rho, rho_evolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &QubitKet, b: &QubitKet) -> bool {
        a.fidelity(b) > 1.0 - 1e-12
    }

    #[test]
    fn pauli_actions() {
        let sx = pauli(Axis::X);
        assert_eq!(QubitKet::zero().apply(&sx).unwrap(), QubitKet::one());
        let p = QubitKet::plus().to_ket().apply(&sx).unwrap();
        assert!((p.amplitudes()[0] - QubitKet::plus().a0()).norm() < 1e-15);
        let m = QubitKet::minus().to_ket().apply(&sx).unwrap();
        assert!((m.amplitudes()[1] - QubitKet::minus().a0()).norm() < 1e-15);
        let z = QubitKet::plus().apply(&pauli(Axis::Z)).unwrap();
        assert_eq!(z, QubitKet::minus());
    }

    #[test]
    fn pauli_y_entries() {
        let sy = pauli(Axis::Y);
        assert_eq!(sy[(0, 1)], c(0.0, -1.0));
        assert_eq!(sy[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    fn bloch_of_basis_states() {
        let b = bloch(&QubitKet::zero());
        assert_eq!((b.x, b.y, b.z), (0.0, 0.0, 1.0));
        let b = bloch(&QubitKet::plus());
        assert!((b.x - 1.0).abs() < 1e-15 && b.y.abs() < 1e-15 && b.z.abs() < 1e-15);
        let b = bloch(&QubitKet::minus_i());
        assert!((b.y + 1.0).abs() < 1e-15 && b.x.abs() < 1e-15);
    }

    #[test]
    fn x_rotation_flips() {
        let out = rotate([1.0, 0.0, 0.0], PI, &QubitKet::zero()).unwrap();
        assert!(close(&out, &QubitKet::one()));
        let same = rotate([0.0, 0.6, 0.8], 0.0, &QubitKet::plus_i()).unwrap();
        assert!(close(&same, &QubitKet::plus_i()));
    }

    #[test]
    fn rejects_non_unit_axis() {
        assert!(matches!(
            rotate([1.0, 1.0, 0.0], 1.0, &QubitKet::zero()),
            Err(Error::NotUnitAxis(_))
        ));
    }

    #[test]
    fn free_evolution_handedness() {
        let delta = 2.3;
        let u = free_evolution_op(delta, PI / (2.0 * delta));
        let out = QubitKet::plus().apply(&u).unwrap();
        assert!(close(&out, &QubitKet::minus_i()));
        let prop = Propagator::new(&free_hamiltonian(delta)).unwrap();
        assert!(prop.unitary(0.7).max_abs_diff(&free_evolution_op(delta, 0.7)) < 1e-14);
    }

    #[test]
    fn rotation_matches_bloch_rodrigues() {
        let n = [0.48, -0.6, 0.64];
        let psi = QubitKet::normalized(c(0.3, -0.2), c(0.5, 0.7)).unwrap();
        let theta = 1.1;
        let image = bloch(&rotate(n, theta, &psi).unwrap());
        assert!(image.distance(&bloch(&psi).rotated(n, theta)) < 1e-9);
    }

    #[test]
    fn rabi_examples() {
        let omega = 1.7;
        let times = [0.0, PI / omega, PI / (2.0 * omega)];
        let (p0, p1) = rabi_trace(omega, &times);
        assert_eq!(p0.values[0], 1.0);
        assert!(p0.values[1].abs() < 1e-15 && (p1.values[1] - 1.0).abs() < 1e-15);
        assert!((p0.values[2] - 0.5).abs() < 1e-15);
        let num = rabi_numeric(omega, &times).unwrap();
        assert!(num.max_abs_diff(&p0) < 1e-10);
    }

    #[test]
    fn ramsey_examples() {
        let delta = 0.9;
        let times = [0.0, PI / delta, 2.0 * PI / delta, 1.234];
        let closed = ramsey_trace(delta, &times);
        assert_eq!(closed.values[0], 1.0);
        assert!(closed.values[1].abs() < 1e-15);
        assert!((closed.values[2] - 1.0).abs() < 1e-15);
        assert!(ramsey_circuit(delta, &times).unwrap().max_abs_diff(&closed) < 1e-10);
    }

    #[test]
    fn hadamard_actions() {
        let h = hadamard();
        assert!(close(&QubitKet::zero().apply(&h).unwrap(), &QubitKet::plus()));
        assert!(close(&QubitKet::minus().apply(&h).unwrap(), &QubitKet::one()));
        // (1/√2)² rounds up by one ulp, so H² is I to within a few ulp.
        assert!((&h * &h).max_abs_diff(&DenseMatrix::identity(2)) <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn density_examples() {
        let (a, b) = (c(0.6, 0.0), c(0.0, 0.8));
        let psi = QubitKet::new(a, b).unwrap();
        let d = density_ops(&psi, &DenseMatrix::identity(2)).unwrap();
        let r = d.rho.matrix();
        assert!((r[(0, 0)] - c(0.36, 0.0)).norm() < 1e-15);
        assert!((r[(0, 1)] - a * b.conj()).norm() < 1e-15);
        assert!((r[(1, 0)] - a.conj() * b).norm() < 1e-15);
        assert_eq!(d.rho, d.rho_evolved);
        assert!((d.rho.purity() - 1.0).abs() < 1e-12);

        let up = QubitDensity::from_bloch(BlochVector { x: 0.0, y: 0.0, z: 1.0 }).unwrap();
        let again = up.evolved(&n_dot_sigma([0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert!(again.matrix().max_abs_diff(up.matrix()) < 1e-15);
    }

    #[test]
    fn mixed_bloch_vector() {
        let r = BlochVector { x: 0.3, y: -0.2, z: 0.1 };
        let rho = QubitDensity::from_bloch(r).unwrap();
        let back = bloch_of_density(&rho);
        assert!(back.distance(&r) < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-15);
    }
}

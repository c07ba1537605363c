//! Resonant Jaynes-Cummings model `H = g(a⊗σ₊ + a†⊗σ₋)`.
//!
//! States are ordered cavity-major: `|n, q⟩` sits at index `2n + q`, with
//! `q = 1` the excited qubit. Every index goes through [`JCSpace::index`].

use num_complex::Complex64;

use crate::error::{ensure, Result};
use crate::fockspace::{ladder_suite, FockBasis};
use crate::numkernel::{hermitian_eigen, DenseMatrix, Ket, Propagator};
use crate::series::TimeSeries;

const LABEL: &str = "cavity⊗qubit";

/// Cavity levels kept by default; single-excitation dynamics only reach n = 1.
pub const DEFAULT_NMAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JCSpace {
    nmax: usize,
}

impl JCSpace {
    pub fn new(nmax: usize) -> Result<Self> {
        ensure(nmax >= 2, || format!("nmax must be at least 2, got {nmax}"))?;
        Ok(JCSpace { nmax })
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn dim(&self) -> usize {
        2 * self.nmax
    }

    pub fn index(&self, n: usize, q: usize) -> usize {
        assert!(n < self.nmax && q < 2, "|{n}, {q}> outside the space");
        2 * n + q
    }

    pub fn ket(&self, n: usize, q: usize) -> Ket {
        Ket::basis(self.dim(), self.index(n, q), LABEL)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JCParams {
    g: f64,
}

impl JCParams {
    pub fn new(g: f64) -> Result<Self> {
        ensure(g > 0.0 && g.is_finite(), || format!("g must be positive, got {g}"))?;
        Ok(JCParams { g })
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}

/// `σ₊ = |1⟩⟨0|`
pub fn sigma_plus() -> DenseMatrix {
    let mut m = DenseMatrix::zeros(2, 2);
    m[(1, 0)] = Complex64::new(1.0, 0.0);
    m
}

pub fn jc_hamiltonian(params: &JCParams, space: JCSpace) -> DenseMatrix {
    let ops = ladder_suite(FockBasis::new(space.nmax()).expect("nmax >= 2"));
    let sp = sigma_plus();
    let sm = sp.adjoint();
    (&ops.lower.kron(&sp) + &ops.raise.kron(&sm)).scale_real(params.g)
}

/// `n̂⊗I + I⊗|1⟩⟨1|`
pub fn excitation_number(space: JCSpace) -> DenseMatrix {
    let diag: Vec<f64> = (0..space.dim()).map(|i| (i / 2 + i % 2) as f64).collect();
    DenseMatrix::from_real_diagonal(&diag)
}

/// `cos(gt)|0,1⟩ − i sin(gt)|1,0⟩`
pub fn closed_form(params: &JCParams, t: f64, space: JCSpace) -> Ket {
    let (s, c) = (params.g * t).sin_cos();
    let mut amps = vec![Complex64::new(0.0, 0.0); space.dim()];
    amps[space.index(0, 1)] = Complex64::new(c, 0.0);
    amps[space.index(1, 0)] = Complex64::new(0.0, -s);
    Ket::new(amps, LABEL)
}

#[derive(Debug, Clone)]
pub struct VacuumRabi {
    pub p_qubit_excited: TimeSeries,
    /// Mean photon number.
    pub p_photon: TimeSeries,
    pub states: Vec<Ket>,
}

/// Evolves `|0, 1⟩` under the Jaynes-Cummings Hamiltonian.
pub fn vacuum_rabi(params: &JCParams, times: &[f64], space: JCSpace) -> Result<VacuumRabi> {
    let prop = Propagator::new(&jc_hamiltonian(params, space))?;
    let start = space.ket(0, 1);
    let states = times
        .iter()
        .map(|&t| prop.evolve(t, &start))
        .collect::<Result<Vec<Ket>>>()?;
    let excited = |k: &Ket| (0..space.nmax()).map(|n| k.probability(space.index(n, 1))).sum();
    let photons = |k: &Ket| {
        (0..space.nmax())
            .map(|n| n as f64 * (k.probability(space.index(n, 0)) + k.probability(space.index(n, 1))))
            .sum()
    };
    Ok(VacuumRabi {
        p_qubit_excited: TimeSeries::new(times.to_vec(), states.iter().map(excited).collect()),
        p_photon: TimeSeries::new(times.to_vec(), states.iter().map(photons).collect()),
        states,
    })
}

/// Time for complete qubit-to-cavity transfer, `π/2g`.
pub fn transfer_time(params: &JCParams) -> f64 {
    std::f64::consts::FRAC_PI_2 / params.g
}

/// Number of non-negligible Schmidt coefficients of a cavity⊗qubit state.
pub fn schmidt_rank(psi: &Ket, space: JCSpace, tol: f64) -> Result<usize> {
    ensure(psi.dim() == space.dim(), || {
        format!("ket dim {} does not match space dim {}", psi.dim(), space.dim())
    })?;
    // M[n][q] = ⟨n, q|ψ⟩; squared Schmidt coefficients are the eigenvalues of M†M.
    let a = psi.amplitudes();
    let m = DenseMatrix::from_fn(space.nmax(), 2, |n, q| a[space.index(n, q)]);
    let e = hermitian_eigen(&m.adjoint().matmul(&m)?)?;
    Ok(e.values.iter().filter(|&&v| v > tol).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::expectation;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn setup(g: f64) -> (JCParams, JCSpace) {
        (JCParams::new(g).unwrap(), JCSpace::new(DEFAULT_NMAX).unwrap())
    }

    #[test]
    fn hamiltonian_actions() {
        let (p, s) = setup(0.7);
        let h = jc_hamiltonian(&p, s);
        for n in 1..=3 {
            let out = s.ket(n, 0).apply(&h).unwrap();
            let expected = 0.7 * (n as f64).sqrt();
            assert!((out.amplitudes()[s.index(n - 1, 1)].re - expected).abs() < 1e-15);
            assert!((out.norm() - expected).abs() < 1e-15);
        }
        for n in 0..=2 {
            let out = s.ket(n, 1).apply(&h).unwrap();
            let expected = 0.7 * ((n + 1) as f64).sqrt();
            assert!((out.amplitudes()[s.index(n + 1, 0)].re - expected).abs() < 1e-15);
        }
        assert_eq!(s.ket(0, 0).apply(&h).unwrap().norm(), 0.0);
    }

    #[test]
    fn h_squared_on_single_excitation() {
        let (p, s) = setup(1.3);
        let h = jc_hamiltonian(&p, s);
        let out = s.ket(0, 1).apply(&(&h * &h)).unwrap();
        let expected = s.ket(0, 1).scaled(Complex64::new(1.3 * 1.3, 0.0));
        assert!(out.amplitudes().iter().zip(expected.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn excitation_number_commutes() {
        let (p, s) = setup(0.9);
        let comm = jc_hamiltonian(&p, s).commutator(&excitation_number(s)).unwrap();
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn vacuum_rabi_matches_closed_form() {
        let (p, s) = setup(1.1);
        let times: Vec<f64> = (0..50).map(|i| 0.13 * i as f64).collect();
        let r = vacuum_rabi(&p, &times, s).unwrap();
        assert_eq!(r.p_qubit_excited.values[0], 1.0);
        let nexc = excitation_number(s);
        for (t, k) in times.iter().zip(&r.states) {
            assert!(1.0 - k.fidelity(&closed_form(&p, *t, s)).unwrap() < 1e-9);
            assert!((expectation(&nexc, k).unwrap().re - 1.0).abs() < 1e-10);
            let pop = k.probability(s.index(0, 1)) + k.probability(s.index(1, 0));
            assert!((pop - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn transfer_and_midpoint() {
        let (p, s) = setup(2.0 * PI);
        assert!((transfer_time(&p) - 0.25).abs() < 1e-15);
        let r = vacuum_rabi(&p, &[transfer_time(&p), 0.5 * transfer_time(&p)], s).unwrap();
        assert!((r.p_photon.values[0] - 1.0).abs() < 1e-10);
        let mid = &r.states[1];
        assert!((mid.amplitudes()[s.index(0, 1)].norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((mid.amplitudes()[s.index(1, 0)].norm() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(schmidt_rank(mid, s, 1e-12).unwrap(), 2);
        assert_eq!(schmidt_rank(&s.ket(0, 1), s, 1e-12).unwrap(), 1);
    }

    #[test]
    fn full_period_returns() {
        let (p, s) = setup(0.8);
        let t = 2.0 * PI / 0.8;
        let r = vacuum_rabi(&p, &[t], s).unwrap();
        assert!(r.states[0].fidelity(&s.ket(0, 1)).unwrap() > 1.0 - 1e-9);
        let half = JCParams::new(1.6).unwrap();
        assert!((transfer_time(&half) - 0.5 * transfer_time(&p)).abs() < 1e-15);
    }
}

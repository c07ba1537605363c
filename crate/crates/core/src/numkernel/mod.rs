//! Dense complex linear algebra shared by every physics module.
//!
//! ħ = 1 everywhere, so time carries units of inverse energy and the
//! propagator is `U(t) = exp(−iHt)`. Global phases of evolved states are
//! kept as computed; compare states with [`Ket::fidelity`].

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, HermitianEigen, CONVERGENCE_TOL, HERMITIAN_TOL, MAX_SWEEPS};
pub use matrix::DenseMatrix;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalisation tolerance for physical states.
pub const NORM_TOL: f64 = 1e-10;

/// Complex amplitude vector over a finite, labelled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amplitudes: Vec<Complex64>,
    basis_label: String,
}

impl Ket {
    /// Wraps amplitudes without normalising; use for intermediates.
    pub fn new(amplitudes: Vec<Complex64>, basis_label: impl Into<String>) -> Self {
        Ket {
            amplitudes,
            basis_label: basis_label.into(),
        }
    }

    /// Normalises the amplitudes, rejecting the zero vector and non-finite
    /// entries.
    pub fn normalized(amplitudes: Vec<Complex64>, basis_label: impl Into<String>) -> Result<Self> {
        let ket = Ket::new(amplitudes, basis_label);
        let n = ket.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidParameter(
                "cannot normalise a zero or non-finite vector".into(),
            ));
        }
        Ok(ket.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// Basis vector `|index⟩` of dimension `dim`.
    pub fn basis(dim: usize, index: usize, basis_label: impl Into<String>) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ket::new(amps, basis_label)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn basis_label(&self) -> &str {
        &self.basis_label
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    pub fn scaled(&self, k: Complex64) -> Ket {
        Ket::new(
            self.amplitudes.iter().map(|&z| z * k).collect(),
            self.basis_label.clone(),
        )
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Ket) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Phase-insensitive overlap |⟨self|other⟩|².
    pub fn fidelity(&self, other: &Ket) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Population |⟨index|self⟩|².
    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    /// Applies `op` to the amplitudes, keeping the label.
    pub fn apply(&self, op: &DenseMatrix) -> Result<Ket> {
        Ok(Ket::new(op.apply(&self.amplitudes)?, self.basis_label.clone()))
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Ket) -> Ket {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        Ket::new(amps, format!("{}⊗{}", self.basis_label, other.basis_label))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    a.kron(b)
}

/// ⟨ψ|A|ψ⟩
pub fn expectation(a: &DenseMatrix, psi: &Ket) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    check_dim(a.cols(), psi.dim())?;
    let a_psi = a.apply(psi.amplitudes())?;
    Ok(psi
        .amplitudes()
        .iter()
        .zip(&a_psi)
        .map(|(p, q)| p.conj() * q)
        .sum())
}

/// Spectral propagator for a fixed Hamiltonian; diagonalise once, evolve to
/// many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigen: HermitianEigen,
}

impl Propagator {
    pub fn new(h: &DenseMatrix) -> Result<Self> {
        Ok(Propagator {
            eigen: hermitian_eigen(h)?,
        })
    }

    pub fn from_eigen(eigen: HermitianEigen) -> Self {
        Propagator { eigen }
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    /// exp(−iHt)·ψ; returns ψ unchanged at t = 0.
    pub fn evolve(&self, t: f64, psi: &Ket) -> Result<Ket> {
        let n = self.eigen.dim();
        check_dim(n, psi.dim())?;
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let v = &self.eigen.vectors;
        let amps = psi.amplitudes();
        // c_k = e^{−iλ_k t} ⟨v_k|ψ⟩
        let coeffs: Vec<Complex64> = (0..n)
            .map(|k| {
                let proj: Complex64 = (0..n).map(|i| v[(i, k)].conj() * amps[i]).sum();
                proj * Complex64::from_polar(1.0, -self.eigen.values[k] * t)
            })
            .collect();
        let out = (0..n)
            .map(|i| (0..n).map(|k| v[(i, k)] * coeffs[k]).sum())
            .collect();
        Ok(Ket::new(out, psi.basis_label()))
    }

    /// The full unitary exp(−iHt).
    pub fn unitary(&self, t: f64) -> DenseMatrix {
        let n = self.eigen.dim();
        let v = &self.eigen.vectors;
        let phases: Vec<Complex64> = self
            .eigen
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * t))
            .collect();
        DenseMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// exp(−iHt)·ψ0 via the spectral decomposition of `h`.
pub fn evolve(h: &DenseMatrix, t: f64, psi0: &Ket) -> Result<Ket> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            found: h.cols(),
        });
    }
    check_dim(h.rows(), psi0.dim())?;
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    Propagator::new(h)?.evolve(t, psi0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> DenseMatrix {
        DenseMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    #[test]
    fn diagonal_number_hamiltonian_phases() {
        let omega = 1.3;
        let t = 0.7;
        let h = DenseMatrix::from_real_diagonal(&[0.0, omega, 2.0 * omega, 3.0 * omega]);
        let psi = Ket::basis(4, 3, "fock");
        let out = evolve(&h, t, &psi).unwrap();
        let expected = Complex64::from_polar(1.0, -3.0 * omega * t);
        assert!((out.amplitudes()[3] - expected).norm() < 1e-12);
        assert!(out.amplitudes()[..3].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn rabi_amplitudes() {
        let omega = 2.0;
        let t = 0.9;
        let h = sigma_x().scale_real(0.5 * omega);
        let out = evolve(&h, t, &Ket::basis(2, 0, "qubit")).unwrap();
        let a = out.amplitudes();
        assert!((a[0] - c((0.5 * omega * t).cos(), 0.0)).norm() < 1e-12);
        assert!((a[1] - c(0.0, -(0.5 * omega * t).sin())).norm() < 1e-12);
    }

    #[test]
    fn zero_time_is_identity() {
        let h = sigma_x();
        let psi = Ket::normalized(vec![c(0.3, 0.1), c(-0.2, 0.9)], "q").unwrap();
        assert_eq!(evolve(&h, 0.0, &psi).unwrap(), psi);
    }

    #[test]
    fn expectation_values() {
        let n = DenseMatrix::from_real_diagonal(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let e = expectation(&n, &Ket::basis(5, 3, "fock")).unwrap();
        assert!((e - c(3.0, 0.0)).norm() < 1e-15);

        let psi = Ket::normalized(vec![c(0.3, 0.4), c(-0.5, 0.2)], "q").unwrap();
        let one = expectation(&DenseMatrix::identity(2), &psi).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-15);

        let sz = DenseMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        let plus = Ket::normalized(vec![c(1.0, 0.0), c(1.0, 0.0)], "q").unwrap();
        assert!(expectation(&sz, &plus).unwrap().norm() < 1e-15);
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let err = expectation(&DenseMatrix::identity(3), &Ket::basis(2, 0, "q")).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn unitary_matches_evolve() {
        let h = sigma_x().scale_real(0.5);
        let p = Propagator::new(&h).unwrap();
        let u = p.unitary(PI);
        let psi = Ket::basis(2, 0, "q");
        let a = psi.apply(&u).unwrap();
        let b = p.evolve(PI, &psi).unwrap();
        assert!(a.inner(&b).unwrap().norm() > 1.0 - 1e-14);
    }
}

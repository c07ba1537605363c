use num_complex::Complex64;

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Relative symmetry tolerance accepted on input.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius norm, relative to ‖A‖_F, at which iteration stops.
pub const CONVERGENCE_TOL: f64 = 1e-12;

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are ascending; column `k` of `vectors` is the eigenvector for
/// `values[k]`, normalised and with its largest-modulus component real and
/// non-negative.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Column `k` as an owned vector.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.vectors[(i, k)]).collect()
    }

    /// V·diag(values)·V†
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)].conj())
                .sum()
        })
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot element and then
/// applies the classical real Jacobi rotation, so the working matrix stays
/// Hermitian with a real diagonal. Iteration stops once the off-diagonal
/// Frobenius norm drops below `CONVERGENCE_TOL·‖A‖_F`.
pub fn hermitian_eigen(a: &DenseMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let scale = a.max_abs();
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian {
            asymmetry: defect,
            scale,
        });
    }

    // Work on the exactly Hermitian part.
    let mut w: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            w[i * n + j] = if i == j {
                Complex64::new(a[(i, i)].re, 0.0)
            } else {
                (a[(i, j)] + a[(j, i)].conj()) * 0.5
            };
        }
    }
    let mut v = DenseMatrix::identity(n);
    let threshold = CONVERGENCE_TOL * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&w, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&w, n) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[i * n + i].re.total_cmp(&w[j * n + j].re));

    let values: Vec<f64> = order.iter().map(|&k| w[k * n + k].re).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let mut best = 0;
        let mut best_mag = -1.0;
        for i in 0..n {
            let m = v[(i, k)].norm();
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        let pivot = v[(best, k)];
        let phase = if best_mag > 0.0 {
            pivot.conj() / best_mag
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            vectors[(i, col)] = v[(i, k)] * phase;
        }
        // Exact zero imaginary part on the pivot.
        vectors[(best, col)] = Complex64::new(vectors[(best, col)].re.abs(), 0.0);
    }

    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(w: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += w[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(w: &mut [Complex64], v: &mut DenseMatrix, n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = w[p * n + p].re;
    let aqq = w[q * n + q].re;
    // e^{-iφ} where a_pq = r e^{iφ}
    let unphase = apq.conj() / r;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let j00 = Complex64::new(c, 0.0);
    let j01 = Complex64::new(s, 0.0);
    let j10 = unphase * (-s);
    let j11 = unphase * c;

    // A <- A J
    for k in 0..n {
        let akp = w[k * n + p];
        let akq = w[k * n + q];
        w[k * n + p] = akp * j00 + akq * j10;
        w[k * n + q] = akp * j01 + akq * j11;
    }
    // A <- J† A
    for k in 0..n {
        let apk = w[p * n + k];
        let aqk = w[q * n + k];
        w[p * n + k] = j00.conj() * apk + j10.conj() * aqk;
        w[q * n + k] = j01.conj() * apk + j11.conj() * aqk;
    }
    w[p * n + q] = Complex64::new(0.0, 0.0);
    w[q * n + p] = Complex64::new(0.0, 0.0);
    w[p * n + p].im = 0.0;
    w[q * n + q].im = 0.0;

    // V <- V J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j00 + vkq * j10;
        v[(k, q)] = vkp * j01 + vkq * j11;
    }
}

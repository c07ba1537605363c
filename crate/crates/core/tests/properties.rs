use std::f64::consts::PI;

use cqed::decoherence::{
    bell_projections, joint_table, marginal_table, ramsey_ensemble, t1_curves, McConfig,
    NoiseModel, TwoQubitKet,
};
use cqed::numkernel::{evolve, hermitian_eigen, kron, Propagator};
use cqed::qubitcore::{bloch, n_dot_sigma, rotate, rotation, QubitKet};
use cqed::rng::RngSpec;
use cqed::{Complex64, DenseMatrix, Ket};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c(a, b))
}

fn hermitian(max_dim: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        prop::collection::vec(complex(), n * n).prop_map(move |v| {
            let m = DenseMatrix::from_row_major(n, n, v).unwrap();
            (&m + &m.adjoint()).scale_real(0.5)
        })
    })
}

fn matrix(n: usize) -> impl Strategy<Value = DenseMatrix> {
    prop::collection::vec(complex(), n * n)
        .prop_map(move |v| DenseMatrix::from_row_major(n, n, v).unwrap())
}

fn ket(n: usize) -> impl Strategy<Value = Ket> {
    prop::collection::vec(complex(), n)
        .prop_filter("non-zero", |v| v.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|v| Ket::normalized(v, "random").unwrap())
}

fn hamiltonian_and_ket() -> impl Strategy<Value = (DenseMatrix, Ket)> {
    (1..=12usize).prop_flat_map(|n| {
        (
            matrix(n).prop_map(|m| (&m + &m.adjoint()).scale_real(0.5)),
            ket(n),
        )
    })
}

fn qubit() -> impl Strategy<Value = QubitKet> {
    (complex(), complex())
        .prop_filter("non-zero", |(a, b)| a.norm() + b.norm() > 1e-3)
        .prop_map(|(a, b)| QubitKet::normalized(a, b).unwrap())
}

fn unit_axis() -> impl Strategy<Value = [f64; 3]> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(th, ph)| {
        let n = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        n.map(|x| x / norm)
    })
}

fn two_qubit() -> impl Strategy<Value = TwoQubitKet> {
    prop::array::uniform4(complex())
        .prop_filter("non-zero", |a| a.iter().any(|z| z.norm() > 1e-3))
        .prop_map(|a| TwoQubitKet::normalized(a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigen_reconstructs_and_is_orthonormal(a in hermitian(64)) {
        let e = hermitian_eigen(&a).unwrap();
        let n = e.dim();
        let scale = a.max_abs().max(1e-300);
        prop_assert!(e.reconstruct().max_abs_diff(&a) <= 1e-10 * scale);
        let vtv = e.vectors.adjoint().matmul(&e.vectors).unwrap();
        prop_assert!(vtv.max_abs_diff(&DenseMatrix::identity(n)) < 1e-10);
        prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigen_phase_convention(a in hermitian(16)) {
        let e = hermitian_eigen(&a).unwrap();
        for k in 0..e.dim() {
            let v = e.vector(k);
            let big = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let pivot = v.iter().find(|z| z.norm() == big).unwrap();
            prop_assert!(pivot.im == 0.0 && pivot.re >= 0.0);
        }
    }

    #[test]
    fn evolve_is_unitary((h, psi) in hamiltonian_and_ket(), t in -5.0..5.0f64) {
        let out = evolve(&h, t, &psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
        let u = Propagator::new(&h).unwrap().unitary(t);
        let n = h.rows();
        prop_assert!(u.adjoint().matmul(&u).unwrap().max_abs_diff(&DenseMatrix::identity(n)) < 1e-10);
    }

    #[test]
    fn evolve_composes((h, psi) in hamiltonian_and_ket(), t1 in 0.0..4.0f64, t2 in 0.0..4.0f64) {
        let once = evolve(&h, t1 + t2, &psi).unwrap();
        let twice = evolve(&h, t2, &evolve(&h, t1, &psi).unwrap()).unwrap();
        prop_assert!(once.fidelity(&twice).unwrap() > 1.0 - 1e-10);
        let back = evolve(&h, -t1, &evolve(&h, t1, &psi).unwrap()).unwrap();
        prop_assert!(back.fidelity(&psi).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(3), cm in matrix(2), d in matrix(3)) {
        let lhs = kron(&a, &b).matmul(&kron(&cm, &d)).unwrap();
        let rhs = kron(&a.matmul(&cm).unwrap(), &b.matmul(&d).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn orthogonal_states_are_antipodal(psi in qubit()) {
        let r = bloch(&psi);
        let s = bloch(&psi.orthogonal());
        prop_assert!((r.norm() - 1.0).abs() < 1e-10);
        prop_assert!((r.x + s.x).abs() < 1e-10 && (r.y + s.y).abs() < 1e-10 && (r.z + s.z).abs() < 1e-10);
        prop_assert!(psi.inner(&psi.orthogonal()).norm() < 1e-12);
    }

    #[test]
    fn n_dot_sigma_is_hermitian_and_unitary(n in unit_axis()) {
        let m = n_dot_sigma(n).unwrap();
        prop_assert!(m.hermitian_defect() < 1e-15);
        prop_assert!(m.matmul(&m).unwrap().max_abs_diff(&DenseMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn rotations_compose(n in unit_axis(), a in -PI..PI, b in -PI..PI) {
        let ab = rotation(n, a + b).unwrap();
        let seq = rotation(n, b).unwrap().matmul(&rotation(n, a).unwrap()).unwrap();
        prop_assert!(ab.max_abs_diff(&seq) < 1e-12);
    }

    #[test]
    fn rotation_moves_bloch_vector(psi in qubit(), n in unit_axis(), theta in -PI..PI) {
        let moved = bloch(&rotate(n, theta, &psi).unwrap());
        let expected = bloch(&psi).rotated(n, theta);
        prop_assert!(moved.distance(&expected) < 1e-10);
    }

    #[test]
    fn bell_basis_is_complete(psi in two_qubit()) {
        let total: f64 = bell_projections(&psi).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn joint_cells_sum_to_one(psi in two_qubit()) {
        let t = joint_table(&psi);
        for ab in 0..3 {
            for bb in 0..3 {
                prop_assert!((t.cell_sum(ab, bb) - 1.0).abs() < 1e-12);
            }
        }
        prop_assert!(t.p.iter().flatten().all(|&x| (-1e-15..=1.0 + 1e-12).contains(&x)));
        let m = marginal_table(&psi);
        prop_assert!(m.basis_dependence() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_is_reproducible(seed in any::<u64>()) {
        let noise = NoiseModel::white(0.4).unwrap();
        let a = ramsey_ensemble(2.0 * PI, noise, 0.01, 3.0, 1000, RngSpec::new(seed)).unwrap();
        let b = ramsey_ensemble(2.0 * PI, noise, 0.01, 3.0, 1000, RngSpec::new(seed)).unwrap();
        prop_assert_eq!(a.p_plus, b.p_plus);

        let cfg = McConfig { dt: 0.01, trials: 300, rng: RngSpec::new(seed) };
        let x = t1_curves(1.0, &[0.0, 0.5, 1.0], Some(cfg)).unwrap();
        let y = t1_curves(1.0, &[0.0, 0.5, 1.0], Some(cfg)).unwrap();
        prop_assert_eq!(x.monte_carlo, y.monte_carlo);
    }
}

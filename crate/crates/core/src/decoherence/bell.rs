use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::numkernel::NORM_TOL;
use crate::qubitcore::QubitKet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PsiMinus => "psi-",
        }
    }

    /// Accepts `phi+`, `phi-`, `psi+`, `psi-` (also with `−`).
    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('−', "-").as_str() {
            "phi+" => Ok(BellKind::PhiPlus),
            "phi-" => Ok(BellKind::PhiMinus),
            "psi+" => Ok(BellKind::PsiPlus),
            "psi-" => Ok(BellKind::PsiMinus),
            other => Err(Error::InvalidParameter(format!("unknown Bell state '{other}'"))),
        }
    }
}

/// Two-qubit pure state over `|00⟩, |01⟩, |10⟩, |11⟩`, Alice's qubit first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitKet {
    amps: [Complex64; 4],
}

impl TwoQubitKet {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        ensure((norm - 1.0).abs() <= NORM_TOL, || {
            format!("two-qubit state has norm {norm}")
        })?;
        Ok(TwoQubitKet { amps })
    }

    pub fn normalized(amps: [Complex64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        ensure(norm.is_finite() && norm > 0.0, || {
            "cannot normalise a zero or non-finite vector".into()
        })?;
        Ok(TwoQubitKet {
            amps: amps.map(|z| z / norm),
        })
    }

    /// `|a⟩ ⊗ |b⟩`
    pub fn product(alice: &QubitKet, bob: &QubitKet) -> Self {
        let (a, b) = ([alice.a0(), alice.a1()], [bob.a0(), bob.a1()]);
        TwoQubitKet {
            amps: [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn inner(&self, other: &TwoQubitKet) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|(⟨a| ⊗ ⟨b|)|self⟩|²`
    pub fn outcome_probability(&self, alice: &QubitKet, bob: &QubitKet) -> f64 {
        TwoQubitKet::product(alice, bob).inner(self).norm_sqr()
    }
}

pub fn bell_state(kind: BellKind) -> TwoQubitKet {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    let amps = match kind {
        BellKind::PhiPlus => [h, z, z, h],
        BellKind::PhiMinus => [h, z, z, -h],
        BellKind::PsiPlus => [z, h, h, z],
        BellKind::PsiMinus => [z, h, -h, z],
    };
    TwoQubitKet { amps }
}

/// `|⟨bell|ψ⟩|²` in the order of [`BellKind::ALL`].
pub fn bell_projections(psi: &TwoQubitKet) -> [f64; 4] {
    BellKind::ALL.map(|k| bell_state(k).inner(psi).norm_sqr())
}

/// Measurement outcomes in table order: the 0/1, ± and ±i bases.
pub const OUTCOME_LABELS: [&str; 6] = ["0", "1", "+", "-", "+i", "-i"];

pub fn outcome_states() -> [QubitKet; 6] {
    [
        QubitKet::zero(),
        QubitKet::one(),
        QubitKet::plus(),
        QubitKet::minus(),
        QubitKet::plus_i(),
        QubitKet::minus_i(),
    ]
}

/// Joint outcome probabilities; `p[a][b]` pairs Alice's outcome `a` with
/// Bob's outcome `b`, both indexed as in [`OUTCOME_LABELS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProbabilityTable {
    pub p: [[f64; 6]; 6],
}

impl JointProbabilityTable {
    /// 2×2 block for Alice basis `ab` and Bob basis `bb` (0, 1, 2).
    pub fn cell(&self, ab: usize, bb: usize) -> [[f64; 2]; 2] {
        let r = 2 * ab;
        let c = 2 * bb;
        [
            [self.p[r][c], self.p[r][c + 1]],
            [self.p[r + 1][c], self.p[r + 1][c + 1]],
        ]
    }

    pub fn cell_sum(&self, ab: usize, bb: usize) -> f64 {
        self.cell(ab, bb).iter().flatten().sum()
    }
}

pub fn joint_table(psi: &TwoQubitKet) -> JointProbabilityTable {
    let outcomes = outcome_states();
    let mut p = [[0.0; 6]; 6];
    for (a, alice) in outcomes.iter().enumerate() {
        for (b, bob) in outcomes.iter().enumerate() {
            p[a][b] = psi.outcome_probability(alice, bob);
        }
    }
    JointProbabilityTable { p }
}

/// Weighted average of joint tables for an ensemble of pure states.
pub fn ensemble_joint_table(members: &[(f64, TwoQubitKet)]) -> Result<JointProbabilityTable> {
    ensure(!members.is_empty(), || "ensemble is empty".into())?;
    ensure(members.iter().all(|(w, _)| *w >= 0.0), || {
        "ensemble weights must be non-negative".into()
    })?;
    let total: f64 = members.iter().map(|(w, _)| w).sum();
    ensure((total - 1.0).abs() <= 1e-12, || {
        format!("ensemble weights sum to {total}")
    })?;
    let mut p = [[0.0; 6]; 6];
    for (w, psi) in members {
        let t = joint_table(psi);
        for (row, trow) in p.iter_mut().zip(&t.p) {
            for (x, y) in row.iter_mut().zip(trow) {
                *x += w * y;
            }
        }
    }
    Ok(JointProbabilityTable { p })
}

/// Bob's outcome probabilities when Alice's result is unknown.
///
/// `by_alice_basis[k]` sums the joint table over Alice's two outcomes in
/// basis `k`; `average` is the mean over her three bases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalTable {
    pub by_alice_basis: [[f64; 6]; 3],
    pub average: [f64; 6],
}

impl MarginalTable {
    pub fn from_joint(table: &JointProbabilityTable) -> Self {
        let mut by_alice_basis = [[0.0; 6]; 3];
        for (k, row) in by_alice_basis.iter_mut().enumerate() {
            for (b, x) in row.iter_mut().enumerate() {
                *x = table.p[2 * k][b] + table.p[2 * k + 1][b];
            }
        }
        let average = std::array::from_fn(|b| by_alice_basis.iter().map(|r| r[b]).sum::<f64>() / 3.0);
        MarginalTable {
            by_alice_basis,
            average,
        }
    }

    /// Largest change in Bob's marginals between Alice's bases.
    pub fn basis_dependence(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for b in 0..6 {
            for k in 1..3 {
                worst = worst.max((self.by_alice_basis[k][b] - self.by_alice_basis[0][b]).abs());
            }
        }
        worst
    }
}

pub fn marginal_table(psi: &TwoQubitKet) -> MarginalTable {
    MarginalTable::from_joint(&joint_table(psi))
}

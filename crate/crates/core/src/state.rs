//! Two-qubit density matrices and their Hilbert-Schmidt (Pauli) decomposition.
//!
//! A state is written as
//! `ρ = ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ t_nm σ_n⊗σ_m)` with the first index of
//! `t_nm` belonging to the first qubit.

use std::sync::OnceLock;

use nalgebra::{Matrix3, Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    bloch_operator, hermitian_eigen, kron2, max_hermitian_deviation, partial_trace, pauli,
    trace_product, Mat2, Mat4, C64,
};

/// Validation thresholds for density matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Tolerances {
    /// For externally supplied data.
    pub const INGEST: Tolerances = Tolerances {
        herm: 1e-9,
        trace: 1e-9,
        psd: 1e-10,
    };
    /// For states assembled by this crate.
    pub const INTERNAL: Tolerances = Tolerances {
        herm: 1e-12,
        trace: 1e-12,
        psd: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances::INGEST
    }
}

/// Which qubit of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
}

/// A validated 4×4 density matrix with its cached spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Mat4,
    spectrum: [f64; 4],
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity, in that order.
    pub fn from_matrix(entries: Mat4, tol: Tolerances) -> Result<Self> {
        let herm = max_hermitian_deviation(&entries);
        if herm > tol.herm {
            return Err(Error::NotHermitian(herm));
        }
        let trace_err = (entries.trace() - C64::new(1.0, 0.0)).norm();
        if trace_err > tol.trace {
            return Err(Error::TraceNotOne(trace_err));
        }
        let eig = hermitian_eigen(&entries).ok_or(Error::ConvergenceFailure(
            crate::linalg::JACOBI_MAX_SWEEPS,
        ))?;
        let smallest = eig.values[3];
        if smallest < -tol.psd {
            return Err(Error::NotPositive(smallest));
        }
        let matrix = (entries + entries.adjoint()) * C64::new(0.5, 0.0);
        Ok(DensityMatrix {
            matrix,
            spectrum: eig.values,
        })
    }

    pub(crate) fn internal(entries: Mat4) -> Result<Self> {
        Self::from_matrix(entries, Tolerances::INTERNAL)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            matrix: Mat4::identity() * C64::new(0.25, 0.0),
            spectrum: [0.25; 4],
        }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self) -> [f64; 4] {
        self.spectrum
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.spectrum[0]
    }

    pub fn purity(&self) -> f64 {
        trace_product(&self.matrix, &self.matrix).re
    }

    pub fn hs(&self) -> HsParams {
        to_hs(self)
    }

    /// `Tr(ρ A⊗B)`.
    pub fn expectation(&self, a: &Mat2, b: &Mat2) -> f64 {
        trace_product(&self.matrix, &kron2(a, b)).re
    }

    /// Exact partial trace of the stored matrix.
    pub fn partial_trace(&self, keep: Subsystem) -> Mat2 {
        partial_trace(
            &self.matrix,
            match keep {
                Subsystem::First => 0,
                Subsystem::Second => 1,
            },
        )
    }
}

/// The `(r, s, T)` coefficients of the Pauli-tensor expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsParams {
    pub r: Vector3<f64>,
    pub s: Vector3<f64>,
    pub t: Matrix3<f64>,
}

impl HsParams {
    pub fn new(r: Vector3<f64>, s: Vector3<f64>, t: Matrix3<f64>) -> Self {
        HsParams { r, s, t }
    }

    pub fn t_state(t: Matrix3<f64>) -> Self {
        HsParams {
            r: Vector3::zeros(),
            s: Vector3::zeros(),
            t,
        }
    }

    /// `(r, s, T)` as plain arrays, `T` row-major.
    pub fn to_arrays(&self) -> ([f64; 3], [f64; 3], [[f64; 3]; 3]) {
        (
            self.r.into(),
            self.s.into(),
            std::array::from_fn(|i| std::array::from_fn(|j| self.t[(i, j)])),
        )
    }

    pub fn diagonal_t(&self) -> Vector3<f64> {
        self.t.diagonal()
    }

    /// Assembles the operator without validating it.
    pub fn operator(&self) -> Mat4 {
        let id = Mat2::identity();
        let mut m = kron2(&id, &id);
        m += kron2(&bloch_operator(&self.r), &id);
        m += kron2(&id, &bloch_operator(&self.s));
        for n in 0..3 {
            for k in 0..3 {
                let coeff = self.t[(n, k)];
                if coeff != 0.0 {
                    m += kron2(&pauli(n + 1), &pauli(k + 1)) * C64::new(coeff, 0.0);
                }
            }
        }
        m * C64::new(0.25, 0.0)
    }
}

/// Pauli tensors σ_a⊗σ_b for a, b ∈ 0..4 (index 0 is the identity).
fn pauli_tensors() -> &'static [[Mat4; 4]; 4] {
    static TABLE: OnceLock<[[Mat4; 4]; 4]> = OnceLock::new();
    TABLE.get_or_init(|| std::array::from_fn(|a| std::array::from_fn(|b| kron2(&pauli(a), &pauli(b)))))
}

pub fn to_hs(rho: &DensityMatrix) -> HsParams {
    let table = pauli_tensors();
    let m = rho.matrix();
    let coeff = |a: usize, b: usize| trace_product(m, &table[a][b]).re;
    HsParams {
        r: Vector3::from_fn(|n, _| coeff(n + 1, 0)),
        s: Vector3::from_fn(|n, _| coeff(0, n + 1)),
        t: Matrix3::from_fn(|n, k| coeff(n + 1, k + 1)),
    }
}

pub fn from_hs(params: &HsParams, tol: Tolerances) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix(params.operator(), tol)
}

/// A single-qubit density matrix `½(I + b·σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: Vector3<f64>,
}

impl QubitState {
    pub fn from_bloch(bloch: Vector3<f64>) -> Self {
        QubitState { bloch }
    }

    pub fn bloch(&self) -> Vector3<f64> {
        self.bloch
    }

    pub fn matrix(&self) -> Mat2 {
        (Mat2::identity() + bloch_operator(&self.bloch)) * C64::new(0.5, 0.0)
    }

    /// Eigenvalues `(1 ± |b|)/2`, descending.
    pub fn spectrum(&self) -> [f64; 2] {
        let len = self.bloch.norm();
        [0.5 * (1.0 + len), 0.5 * (1.0 - len)]
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.bloch.norm() - 1.0).abs() <= tol
    }
}

/// Reduced state from the local Bloch vector (`r` for the first qubit,
/// `s` for the second).
pub fn reduce(rho: &DensityMatrix, subsystem: Subsystem) -> QubitState {
    let hs = to_hs(rho);
    QubitState::from_bloch(match subsystem {
        Subsystem::First => hs.r,
        Subsystem::Second => hs.s,
    })
}

/// `E(a, b) = Tr(ρ a·σ ⊗ b·σ) = (a, T b)` for unit directions.
pub fn correlation(rho: &DensityMatrix, a: &Vector3<f64>, b: &Vector3<f64>) -> Result<f64> {
    const UNIT_TOL: f64 = 1e-9;
    for v in [a, b] {
        let len = v.norm();
        if (len - 1.0).abs() > UNIT_TOL {
            return Err(Error::NonUnitDirection(len));
        }
    }
    Ok(a.dot(&(to_hs(rho).t * b)))
}

/// `Tr ρρ' = ¼(1 + (r, r') + (s, s') + Tr(T T'ᵀ))`.
pub fn hs_inner(rho: &DensityMatrix, other: &DensityMatrix) -> f64 {
    let a = to_hs(rho);
    let b = to_hs(other);
    0.25 * (1.0 + a.r.dot(&b.r) + a.s.dot(&b.s) + (a.t * b.t.transpose()).trace())
}

pub fn spectrum(rho: &DensityMatrix) -> [f64; 4] {
    rho.spectrum()
}

/// Probability weights over the four Bell projectors `P0..P3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct BellSpectrum([f64; 4]);

impl BellSpectrum {
    pub const TOL: f64 = 1e-9;

    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < -Self::TOL) {
            return Err(Error::InvalidSpectrum(format!("negative or non-finite weight {bad}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > Self::TOL {
            return Err(Error::InvalidSpectrum(format!("weights sum to {sum}")));
        }
        Ok(BellSpectrum(p.map(|x| x.max(0.0))))
    }

    pub fn weights(&self) -> [f64; 4] {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Diagonal of `T` for the mixture, `t = Σ p_i t_i`.
    pub fn t_vector(&self) -> Vector3<f64> {
        BELL_T
            .iter()
            .zip(self.0)
            .fold(Vector3::zeros(), |acc, (t, p)| acc + Vector3::from(*t) * p)
    }

    /// Inverse of [`BellSpectrum::t_vector`]: `p_i = ¼(1 + (t_i, t))`.
    /// Does not validate; points outside the tetrahedron give negative weights.
    pub fn weights_from_t(t: &Vector3<f64>) -> [f64; 4] {
        BELL_T.map(|ti| 0.25 * (1.0 + Vector3::from(ti).dot(t)))
    }
}

impl TryFrom<[f64; 4]> for BellSpectrum {
    type Error = Error;
    fn try_from(p: [f64; 4]) -> Result<Self> {
        BellSpectrum::new(p)
    }
}

impl From<BellSpectrum> for [f64; 4] {
    fn from(p: BellSpectrum) -> [f64; 4] {
        p.0
    }
}

/// Diagonals of the Bell projectors' correlation matrices; these are also the
/// tetrahedron vertices. Index 0 is the singlet.
pub const BELL_T: [[f64; 3]; 4] = [
    [-1.0, -1.0, -1.0],
    [-1.0, 1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, -1.0],
];

/// The Bell basis in the computational basis `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone)]
pub struct BellBasis {
    pub vectors: [Vector4<C64>; 4],
    pub projectors: [DensityMatrix; 4],
}

impl BellBasis {
    pub fn standard() -> &'static BellBasis {
        static BASIS: OnceLock<BellBasis> = OnceLock::new();
        BASIS.get_or_init(|| {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let v = |a: f64, b: f64, c: f64, d: f64| {
                Vector4::new(
                    C64::new(a * h, 0.0),
                    C64::new(b * h, 0.0),
                    C64::new(c * h, 0.0),
                    C64::new(d * h, 0.0),
                )
            };
            let vectors = [
                v(0.0, 1.0, -1.0, 0.0),
                v(1.0, 0.0, 0.0, -1.0),
                v(1.0, 0.0, 0.0, 1.0),
                v(0.0, 1.0, 1.0, 0.0),
            ];
            let projectors = vectors.map(|psi| {
                DensityMatrix::internal(psi * psi.adjoint()).expect("Bell projector is a state")
            });
            BellBasis {
                vectors,
                projectors,
            }
        })
    }

    pub fn singlet() -> DensityMatrix {
        Self::standard().projectors[0].clone()
    }
}

/// `Σ p_i P_i` over the Bell basis.
pub fn bell_diagonal(p: &BellSpectrum) -> DensityMatrix {
    let basis = BellBasis::standard();
    let mut m = Mat4::zeros();
    for (proj, w) in basis.projectors.iter().zip(p.weights()) {
        m += proj.matrix() * C64::new(w, 0.0);
    }
    let mut spectrum = p.weights();
    spectrum.sort_by(|a, b| b.total_cmp(a));
    DensityMatrix {
        matrix: m,
        spectrum,
    }
}

/// `p·singlet + (1 − p)·I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            min: 0.0,
            max: 1.0,
        });
    }
    let q = (1.0 - p) / 4.0;
    Ok(bell_diagonal(&BellSpectrum([p + q, q, q, q])))
}

/// `|ψ><ψ|` for a normalized two-qubit vector.
pub fn pure_state(psi: &Vector4<C64>) -> Result<DensityMatrix> {
    DensityMatrix::internal(psi * psi.adjoint())
}

/// `ρ_a ⊗ ρ_b`.
pub fn product_state(a: &QubitState, b: &QubitState) -> Result<DensityMatrix> {
    DensityMatrix::internal(kron2(&a.matrix(), &b.matrix()))
}

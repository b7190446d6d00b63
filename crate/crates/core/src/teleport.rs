//! Teleportation diagnostics and a simulator of the standard protocol.

use nalgebra::{SMatrix, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{bloch_operator, pauli, svd3, trace_product, Mat2, Mat8, C64};
use crate::sampling::SeededGenerator;
use crate::separability::{require_t_state, BOUNDARY_TOL};
use crate::state::{to_hs, BellBasis, DensityMatrix};

/// Best average fidelity achievable without a quantum channel.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

/// `N(ρ) = Tr √(TᵀT)`, the sum of singular values of `T`.
pub fn n_value(rho: &DensityMatrix) -> f64 {
    svd3(&to_hs(rho).t).sigma.sum()
}

/// `½(1 + N/3)`, the optimal standard-scheme fidelity when `N > 1`.
pub fn fidelity_formula(n: f64) -> f64 {
    0.5 * (1.0 + n / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeleportReport {
    pub n_value: f64,
    /// `½(1 + N/3)` when useful, otherwise the classical bound ⅔.
    pub f_max: f64,
    /// `½(1 + N/3)` regardless of usefulness.
    pub f_max_formula: f64,
    pub useful: bool,
    /// Only defined for T-states.
    pub fully_entangled_fraction: Option<f64>,
    pub purifiable: Option<bool>,
}

pub fn diagnostics(rho: &DensityMatrix) -> TeleportReport {
    let n = n_value(rho);
    let useful = n > 1.0 + BOUNDARY_TOL;
    let formula = fidelity_formula(n);
    let fef = fully_entangled_fraction(rho).ok();
    TeleportReport {
        n_value: n,
        f_max: if useful { formula } else { CLASSICAL_FIDELITY },
        f_max_formula: formula,
        useful,
        fully_entangled_fraction: fef,
        purifiable: fef.map(|f| f > 0.5 + BOUNDARY_TOL),
    }
}

/// Maximal overlap with a maximally entangled state. For T-states the Bell
/// projectors of the canonical frame are eigenprojectors, so this is the
/// largest eigenvalue.
pub fn fully_entangled_fraction(rho: &DensityMatrix) -> Result<f64> {
    require_t_state(rho)?;
    Ok(rho.max_eigenvalue())
}

/// Pauli correction applied to the receiver's qubit for each Bell outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionTable(pub [Mat2; 4]);

impl CorrectionTable {
    /// Outcome `P_k = (σ_k⊗I) P₀ (σ_k⊗I)` is undone by `σ_k`; with a singlet
    /// channel this reproduces the input exactly.
    pub fn standard() -> Self {
        CorrectionTable(std::array::from_fn(pauli))
    }
}

impl Default for CorrectionTable {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    ExactDesign,
    MonteCarlo,
}

/// How to average over input states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Averaging {
    /// The six Pauli eigenstates.
    ExactDesign,
    MonteCarlo { n: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub fidelity: f64,
    pub method: Method,
    pub samples: usize,
    pub std_error: f64,
}

/// One run of the protocol for a fixed input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportOutcome {
    /// Probability of each Bell outcome on qubits 1 and 2.
    pub probabilities: [f64; 4],
    /// `Σ_k p_k Tr(ρ_k P_φ)`.
    pub fidelity: f64,
}

/// `⟨ψ_k|₁₂ ⊗ I₃` as a 2×8 matrix.
fn bell_bra_maps() -> [SMatrix<C64, 2, 8>; 4] {
    let basis = BellBasis::standard();
    std::array::from_fn(|k| {
        let psi = basis.vectors[k];
        let mut m = SMatrix::<C64, 2, 8>::zeros();
        for ab in 0..4 {
            for c in 0..2 {
                m[(c, 2 * ab + c)] = psi[ab].conj();
            }
        }
        m
    })
}

/// Teleports the qubit with Bloch vector `input` (unit length) through the
/// channel. Qubit 1 holds the input, qubits 2 and 3 the channel.
pub fn teleport_once(channel: &DensityMatrix, input: &Vector3<f64>, table: &CorrectionTable) -> TeleportOutcome {
    teleport_with_maps(channel, input, table, &bell_bra_maps())
}

fn teleport_with_maps(
    channel: &DensityMatrix,
    input: &Vector3<f64>,
    table: &CorrectionTable,
    maps: &[SMatrix<C64, 2, 8>; 4],
) -> TeleportOutcome {
    let target = (Mat2::identity() + bloch_operator(input)) * C64::new(0.5, 0.0);
    let total = kron_2_4(&target, channel);
    let mut probabilities = [0.0; 4];
    let mut fidelity = 0.0;
    for k in 0..4 {
        let unnormalized: Mat2 = maps[k] * total * maps[k].adjoint();
        let u = table.0[k];
        let corrected = u * unnormalized * u.adjoint();
        probabilities[k] = corrected.trace().re;
        fidelity += trace_product(&corrected, &target).re;
    }
    TeleportOutcome {
        probabilities,
        fidelity,
    }
}

fn kron_2_4(a: &Mat2, b: &DensityMatrix) -> Mat8 {
    let b = b.matrix();
    Mat8::from_fn(|r, c| a[(r / 4, c / 4)] * b[(r % 4, c % 4)])
}

/// The six Pauli eigenstates.
pub fn octahedral_design() -> [Vector3<f64>; 6] {
    [
        Vector3::x(),
        -Vector3::x(),
        Vector3::y(),
        -Vector3::y(),
        Vector3::z(),
        -Vector3::z(),
    ]
}

pub fn simulate_standard(channel: &DensityMatrix, averaging: Averaging) -> Result<SimulationResult> {
    simulate_with_corrections(channel, averaging, &CorrectionTable::standard())
}

/// Average fidelity of the standard scheme. Monte-Carlo sample `i` draws its
/// input from stream `i` of the seed, so the result does not depend on the
/// number of worker threads.
pub fn simulate_with_corrections(
    channel: &DensityMatrix,
    averaging: Averaging,
    table: &CorrectionTable,
) -> Result<SimulationResult> {
    let maps = bell_bra_maps();
    match averaging {
        Averaging::ExactDesign => {
            let design = octahedral_design();
            let total: f64 = design
                .iter()
                .map(|n| teleport_with_maps(channel, n, table, &maps).fidelity)
                .sum();
            Ok(SimulationResult {
                fidelity: total / design.len() as f64,
                method: Method::ExactDesign,
                samples: design.len(),
                std_error: 0.0,
            })
        }
        Averaging::MonteCarlo { n, seed } => {
            if n == 0 {
                return Err(Error::InvalidSampleCount);
            }
            let root = SeededGenerator::new(seed);
            let values: Vec<f64> = (0..n as u64)
                .into_par_iter()
                .map(|i| {
                    let input = root.split(i).unit_vector();
                    teleport_with_maps(channel, &input, table, &maps).fidelity
                })
                .collect();
            let mean = values.iter().sum::<f64>() / n as f64;
            let std_error = if n > 1 {
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
                (var / n as f64).sqrt()
            } else {
                0.0
            };
            Ok(SimulationResult {
                fidelity: mean.clamp(0.0, 1.0),
                method: Method::MonteCarlo,
                samples: n,
                std_error,
            })
        }
    }
}

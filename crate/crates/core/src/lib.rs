//! Two-qubit mixed-state analysis.
//!
//! States are handled through their Hilbert-Schmidt decomposition
//! `ρ = ¼(I⊗I + r·σ⊗I + I⊗s·σ + Σ t_nm σ_n⊗σ_m)`. After local rotations bring
//! `T` to diagonal form, states with maximally mixed reductions are points of
//! a tetrahedron whose separable part is the inscribed octahedron; the
//! modules here compute that geometry together with the Rényi-entropy,
//! spectral, flip-operator and teleportation criteria that characterize it.

pub mod entropy;
pub mod error;
pub mod linalg;
pub mod local;
pub mod sampling;
pub mod schema;
pub mod separability;
pub mod state;
pub mod survey;
pub mod teleport;

pub use entropy::{check_inequality, conditional, renyi, tstate_inequality, violation_scan, Alpha, AlphaEntropyVerdict};
pub use error::{Error, Result};
pub use local::{apply_local, canonicalize, rotation_from_unitary, unitary_from_rotation, CanonicalForm, LocalUnitary, ProperRotation};
pub use separability::{classify, flip_overlaps, in_octahedron, in_tetrahedron, spectral_separable, SeparabilityReport, TVector, Verdict};
pub use state::{
    bell_diagonal, correlation, from_hs, hs_inner, reduce, spectrum, to_hs, werner, BellBasis, BellSpectrum, DensityMatrix,
    HsParams, QubitState, Subsystem, Tolerances,
};
pub use teleport::{diagnostics, fully_entangled_fraction, n_value, simulate_standard, Averaging, SimulationResult, TeleportReport};

//! Geometric, spectral and flip-operator separability criteria.
//!
//! For states whose reductions are maximally mixed (T-states) the criteria
//! are exact: after diagonalizing `T`, the state is separable iff the
//! diagonal lies in the octahedron `|t₁| + |t₂| + |t₃| ≤ 1`, iff every
//! eigenvalue is at most ½. For other states only necessary conditions are
//! available.

use std::sync::OnceLock;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::entropy::{check_inequality, Alpha};
use crate::error::{Error, Result};
use crate::linalg::{kron2, pauli, trace_product, Mat2, Mat4, C64};
use crate::local::canonicalize;
use crate::state::{reduce, to_hs, DensityMatrix, Subsystem, BELL_T};

/// Inclusive slack on every membership test.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// `|r|, |s|` below this count as zero.
pub const T_STATE_TOL: f64 = 1e-6;

/// Diagonal of a diagonal correlation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TVector(Vector3<f64>);

impl TVector {
    pub fn new(t: Vector3<f64>) -> Result<Self> {
        if let Some(&bad) = t.iter().find(|x| x.is_nan() || x.abs() > 1.0 + BOUNDARY_TOL) {
            return Err(Error::OutOfRange {
                name: "t",
                value: bad,
                min: -1.0,
                max: 1.0,
            });
        }
        Ok(TVector(t))
    }

    pub fn from_array(t: [f64; 3]) -> Result<Self> {
        Self::new(Vector3::from(t))
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn l1_norm(&self) -> f64 {
        self.0.lp_norm(1)
    }
}

impl std::ops::Neg for TVector {
    type Output = TVector;
    fn neg(self) -> TVector {
        TVector(-self.0)
    }
}

/// Positivity of a state with diagonal `T` and `r = s = 0`: the four
/// inequalities `1 + (t_i, t) ≥ 0` over the Bell vertices `t_i`.
pub fn in_tetrahedron(t: &TVector) -> bool {
    BELL_T
        .iter()
        .all(|ti| 1.0 + Vector3::from(*ti).dot(t.vector()) >= -BOUNDARY_TOL)
}

/// `ℓ₁` ball of radius one: the intersection of the tetrahedron and its
/// reflection through the origin.
pub fn in_octahedron(t: &TVector) -> bool {
    t.l1_norm() <= 1.0 + BOUNDARY_TOL
}

/// Swap `V` and its Pauli images `V_i = (σ_i⊗I) V (σ_i⊗I)`, `V_0 = V`.
pub fn flip_operators() -> &'static [Mat4; 4] {
    static OPS: OnceLock<[Mat4; 4]> = OnceLock::new();
    OPS.get_or_init(|| {
        let mut swap = Mat4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                swap[(2 * b + a, 2 * a + b)] = C64::new(1.0, 0.0);
            }
        }
        std::array::from_fn(|i| {
            let s = kron2(&pauli(i), &Mat2::identity());
            s * swap * s
        })
    })
}

/// `(Tr V₀ρ, …, Tr V₃ρ)` from the explicit operators.
pub fn flip_overlaps(rho: &DensityMatrix) -> [f64; 4] {
    let ops = flip_operators();
    std::array::from_fn(|i| trace_product(&ops[i], rho.matrix()).re)
}

/// `Tr V_iρ = ½(1 − (t_i, t))`, where `t` is the diagonal of `T`. The local
/// vectors do not enter because `V_i` only has `I⊗I` and `σ_j⊗σ_j` terms.
pub fn flip_overlaps_hs(t: &Vector3<f64>) -> [f64; 4] {
    BELL_T.map(|ti| 0.5 * (1.0 - Vector3::from(ti).dot(t)))
}

fn local_vector_norms(rho: &DensityMatrix) -> (f64, f64) {
    let hs = to_hs(rho);
    (hs.r.norm(), hs.s.norm())
}

pub fn is_t_state(rho: &DensityMatrix) -> bool {
    let (r, s) = local_vector_norms(rho);
    r <= T_STATE_TOL && s <= T_STATE_TOL
}

pub(crate) fn require_t_state(rho: &DensityMatrix) -> Result<()> {
    let (r_norm, s_norm) = local_vector_norms(rho);
    if r_norm > T_STATE_TOL || s_norm > T_STATE_TOL {
        return Err(Error::NotTState { r_norm, s_norm });
    }
    Ok(())
}

/// Spectrum criterion for T-states: separable iff every eigenvalue ≤ ½.
pub fn spectral_separable(rho: &DensityMatrix) -> Result<bool> {
    require_t_state(rho)?;
    Ok(rho.max_eigenvalue() <= 0.5 + BOUNDARY_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Separable,
    Inseparable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub is_t_state: bool,
    /// Signed canonical diagonal in the tetrahedron.
    pub in_tetrahedron: bool,
    /// `ℓ₁` norm of the canonical diagonal, which equals `N(ρ)`.
    pub l1_norm: f64,
    pub in_octahedron: bool,
    pub max_eigenvalue: f64,
    /// Flip overlaps of the canonical state.
    pub flip_overlaps: [f64; 4],
    pub verdict: Verdict,
}

/// Combined verdict.
///
/// T-states get an exact answer from the octahedron test. Other states are
/// INSEPARABLE when a necessary condition fails (α ∈ {1, 2} entropy
/// inequalities, flip overlaps or octahedron in the canonical frame), pure
/// product states are SEPARABLE, and everything else is INCONCLUSIVE.
pub fn classify(rho: &DensityMatrix) -> Result<SeparabilityReport> {
    let canonical = canonicalize(rho)?;
    let t = TVector::new(canonical.diag)?;
    let overlaps = flip_overlaps(&canonical.state);
    let tetra = in_tetrahedron(&t);
    let octa = in_octahedron(&t);
    let t_state = is_t_state(rho);
    let max_eigenvalue = rho.max_eigenvalue();

    let verdict = if t_state {
        if octa {
            Verdict::Separable
        } else {
            Verdict::Inseparable
        }
    } else {
        let flips_ok = overlaps.iter().all(|&x| x >= -BOUNDARY_TOL);
        let entropy_ok = [Alpha::Finite(1.0), Alpha::Finite(2.0)]
            .into_iter()
            .map(|a| check_inequality(rho, a).map(|v| v.satisfied))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        if !(flips_ok && entropy_ok && octa && tetra) {
            Verdict::Inseparable
        } else if is_pure_product(rho) {
            Verdict::Separable
        } else {
            Verdict::Inconclusive
        }
    };

    Ok(SeparabilityReport {
        is_t_state: t_state,
        in_tetrahedron: tetra,
        l1_norm: t.l1_norm(),
        in_octahedron: octa,
        max_eigenvalue,
        flip_overlaps: overlaps,
        verdict,
    })
}

fn is_pure_product(rho: &DensityMatrix) -> bool {
    const PURE_TOL: f64 = 1e-9;
    (rho.max_eigenvalue() - 1.0).abs() <= PURE_TOL
        && reduce(rho, Subsystem::First).is_pure(PURE_TOL)
        && reduce(rho, Subsystem::Second).is_pure(PURE_TOL)
}

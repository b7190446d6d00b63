//! Local unitaries, their SO(3) images, and canonicalization of the
//! correlation matrix to diagonal form by proper rotations.

use nalgebra::{Matrix3, Vector3};
use crate::error::{Error, Result};
use crate::linalg::{kron2, pauli, proper_svd3, trace_product, Mat2, C64, JACOBI_MAX_SWEEPS};
use crate::state::{to_hs, DensityMatrix};

const ROTATION_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;

/// A real 3×3 orthogonal matrix with determinant +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperRotation(Matrix3<f64>);

impl ProperRotation {
    pub fn new(o: Matrix3<f64>) -> Result<Self> {
        let orthogonality = (o.transpose() * o - Matrix3::identity()).abs().max();
        let det = o.determinant();
        if orthogonality > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::NotProperRotation { orthogonality, det });
        }
        Ok(ProperRotation(o))
    }

    pub fn identity() -> Self {
        ProperRotation(Matrix3::identity())
    }

    /// Rotation by `angle` about the unit `axis` (right-hand rule).
    pub fn about_axis(axis: &Vector3<f64>, angle: f64) -> Self {
        let axis = nalgebra::Unit::new_normalize(*axis);
        ProperRotation(*nalgebra::Rotation3::from_axis_angle(&axis, angle).matrix())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }
}

/// A 2×2 unitary acting on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary(Mat2);

impl LocalUnitary {
    pub fn new(u: Mat2) -> Result<Self> {
        let err = (u.adjoint() * u - Mat2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if err > UNITARY_TOL {
            return Err(Error::NotUnitary(err));
        }
        Ok(LocalUnitary(u))
    }

    pub fn identity() -> Self {
        LocalUnitary(Mat2::identity())
    }

    /// `exp(−i θ n̂·σ / 2)` for a unit axis.
    pub fn exp_rotation(axis: &Vector3<f64>, angle: f64) -> Self {
        let n = axis.normalize();
        let (s, c) = (0.5 * angle).sin_cos();
        let generator = pauli(1) * C64::new(n[0], 0.0)
            + pauli(2) * C64::new(n[1], 0.0)
            + pauli(3) * C64::new(n[2], 0.0);
        LocalUnitary(Mat2::identity() * C64::new(c, 0.0) - generator * C64::new(0.0, s))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn rotation(&self) -> ProperRotation {
        rotation_from_unitary(self)
    }
}

/// The rotation `O` with `U (n̂·σ) U† = (O n̂)·σ`: `O_ij = ½ Tr(σ_i U σ_j U†)`.
pub fn rotation_from_unitary(u: &LocalUnitary) -> ProperRotation {
    let m = u.matrix();
    let conjugated: [Mat2; 3] = std::array::from_fn(|j| m * pauli(j + 1) * m.adjoint());
    ProperRotation(Matrix3::from_fn(|i, j| {
        0.5 * trace_product(&pauli(i + 1), &conjugated[j]).re
    }))
}

/// One of the two SU(2) preimages of a rotation.
///
/// The phase is fixed by writing `U = q₀ I − i (q₁σ₁ + q₂σ₂ + q₃σ₃)` for a unit
/// quaternion with `q₀ > 0`, or with the first nonzero of `q₁..q₃` positive
/// when `q₀ = 0` (half-turns).
pub fn unitary_from_rotation(o: &ProperRotation) -> LocalUnitary {
    let r = o.matrix();
    let trace = r.trace();
    // Shepperd's method: pivot on the largest of 1+trace and the 1+2R_ii-trace.
    let candidates = [
        1.0 + trace,
        1.0 + 2.0 * r[(0, 0)] - trace,
        1.0 + 2.0 * r[(1, 1)] - trace,
        1.0 + 2.0 * r[(2, 2)] - trace,
    ];
    let pivot = (0..4)
        .max_by(|&a, &b| candidates[a].total_cmp(&candidates[b]))
        .unwrap_or(0);
    let mut q = [0.0f64; 4];
    let big = 0.5 * candidates[pivot].max(0.0).sqrt();
    q[pivot] = big;
    let f = 0.25 / big;
    match pivot {
        0 => {
            q[1] = f * (r[(2, 1)] - r[(1, 2)]);
            q[2] = f * (r[(0, 2)] - r[(2, 0)]);
            q[3] = f * (r[(1, 0)] - r[(0, 1)]);
        }
        1 => {
            q[0] = f * (r[(2, 1)] - r[(1, 2)]);
            q[2] = f * (r[(0, 1)] + r[(1, 0)]);
            q[3] = f * (r[(0, 2)] + r[(2, 0)]);
        }
        2 => {
            q[0] = f * (r[(0, 2)] - r[(2, 0)]);
            q[1] = f * (r[(0, 1)] + r[(1, 0)]);
            q[3] = f * (r[(1, 2)] + r[(2, 1)]);
        }
        _ => {
            q[0] = f * (r[(1, 0)] - r[(0, 1)]);
            q[1] = f * (r[(0, 2)] + r[(2, 0)]);
            q[2] = f * (r[(1, 2)] + r[(2, 1)]);
        }
    }
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);
    const ZERO: f64 = 1e-14;
    let leading = q.iter().copied().find(|x| x.abs() > ZERO).unwrap_or(1.0);
    if leading < 0.0 {
        q.iter_mut().for_each(|x| *x = -*x);
    }
    let u = Mat2::identity() * C64::new(q[0], 0.0)
        - (pauli(1) * C64::new(q[1], 0.0) + pauli(2) * C64::new(q[2], 0.0) + pauli(3) * C64::new(q[3], 0.0))
            * C64::new(0.0, 1.0);
    LocalUnitary(u)
}

/// `(U₁⊗U₂) ρ (U₁⊗U₂)†`.
pub fn apply_local(rho: &DensityMatrix, u1: &LocalUnitary, u2: &LocalUnitary) -> Result<DensityMatrix> {
    let u = kron2(u1.matrix(), u2.matrix());
    DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint(), crate::state::Tolerances::INTERNAL)
}

/// A state rotated so that its correlation matrix is diagonal.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub state: DensityMatrix,
    pub o1: ProperRotation,
    pub o2: ProperRotation,
    pub u1: LocalUnitary,
    pub u2: LocalUnitary,
    /// Signed diagonal of the canonical `T`, sorted by descending magnitude;
    /// only the last entry can be negative.
    pub diag: Vector3<f64>,
}

/// Finds proper rotations with `O₁ T O₂ᵀ` diagonal and applies the matching
/// local unitaries.
pub fn canonicalize(rho: &DensityMatrix) -> Result<CanonicalForm> {
    let hs = to_hs(rho);
    let svd = proper_svd3(&hs.t);
    if !svd.converged {
        return Err(Error::ConvergenceFailure(JACOBI_MAX_SWEEPS));
    }
    let o1 = ProperRotation::new(svd.u.transpose())?;
    let o2 = ProperRotation::new(svd.v.transpose())?;
    let u1 = unitary_from_rotation(&o1);
    let u2 = unitary_from_rotation(&o2);
    let state = apply_local(rho, &u1, &u2)?;
    Ok(CanonicalForm {
        state,
        o1,
        o2,
        u1,
        u2,
        diag: svd.sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{werner, BellBasis, QubitState};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn check_covariance(u: &LocalUnitary, o: &ProperRotation) {
        for axis in 0..3 {
            let mut n = Vector3::zeros();
            n[axis] = 1.0;
            let lhs = u.matrix() * pauli(axis + 1) * u.matrix().adjoint();
            let rn = o.matrix() * n;
            let rhs = pauli(1) * C64::new(rn[0], 0.0) + pauli(2) * C64::new(rn[1], 0.0) + pauli(3) * C64::new(rn[2], 0.0);
            assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn rotation_of_identity() {
        let o = rotation_from_unitary(&LocalUnitary::identity());
        assert_abs_diff_eq!((o.matrix() - Matrix3::identity()).norm(), 0.0);
    }

    #[test]
    fn rotation_of_z_quarter_turn() {
        // U σ_x U† = σ_y, U σ_y U† = −σ_x, U σ_z U† = σ_z for θ = π/2.
        let u = LocalUnitary::exp_rotation(&Vector3::z(), PI / 2.0);
        let o = rotation_from_unitary(&u);
        let expected = Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert_abs_diff_eq!((o.matrix() - expected).norm(), 0.0, epsilon = 1e-15);
        check_covariance(&u, &o);
    }

    #[test]
    fn rotation_of_sigma_x() {
        let u = LocalUnitary::new(pauli(1)).unwrap();
        let o = rotation_from_unitary(&u);
        let expected = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0));
        assert_abs_diff_eq!((o.matrix() - expected).norm(), 0.0);
    }

    #[test]
    fn non_unitary_rejected() {
        assert!(matches!(
            LocalUnitary::new(pauli(1) * C64::new(1.1, 0.0)),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn unitary_from_rotation_cases() {
        let u = unitary_from_rotation(&ProperRotation::identity());
        assert_abs_diff_eq!((u.matrix() - Mat2::identity()).norm(), 0.0);

        let half_turn = ProperRotation::about_axis(&Vector3::z(), PI);
        let u = unitary_from_rotation(&half_turn);
        let expected = LocalUnitary::exp_rotation(&Vector3::z(), PI);
        // Equal up to sign.
        let d = (u.matrix() - expected.matrix()).norm().min((u.matrix() + expected.matrix()).norm());
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!((rotation_from_unitary(&u).matrix() - half_turn.matrix()).norm(), 0.0, epsilon = 1e-12);

        let reflection = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
        assert!(matches!(
            ProperRotation::new(reflection),
            Err(Error::NotProperRotation { .. })
        ));
    }

    #[test]
    fn unitary_round_trip_over_axis_angle_grid() {
        let axes = [
            Vector3::x(),
            Vector3::y(),
            Vector3::z(),
            Vector3::new(1.0, -2.0, 0.5),
            Vector3::new(-0.3, 0.1, -0.9),
        ];
        for axis in axes {
            for k in 0..=16 {
                let angle = -PI + 2.0 * PI * k as f64 / 16.0;
                let o = ProperRotation::about_axis(&axis, angle);
                let u = unitary_from_rotation(&o);
                assert!(LocalUnitary::new(*u.matrix()).is_ok());
                assert_abs_diff_eq!((rotation_from_unitary(&u).matrix() - o.matrix()).norm(), 0.0, epsilon = 1e-9);
                check_covariance(&u, &o);
            }
        }
    }

    #[test]
    fn apply_identity_is_noop() {
        let w = werner(0.4).unwrap();
        let out = apply_local(&w, &LocalUnitary::identity(), &LocalUnitary::identity()).unwrap();
        assert_abs_diff_eq!((out.matrix() - w.matrix()).norm(), 0.0);
    }

    #[test]
    fn singlet_is_u_cross_u_invariant() {
        let u = LocalUnitary::exp_rotation(&Vector3::new(0.2, 0.7, -0.4), 1.234);
        let singlet = BellBasis::singlet();
        let out = apply_local(&singlet, &u, &u).unwrap();
        let hs = to_hs(&out);
        assert_abs_diff_eq!((hs.t + Matrix3::identity()).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.spectrum()[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hs_transformation_rules() {
        let a = QubitState::from_bloch(Vector3::new(0.3, -0.2, 0.5));
        let b = QubitState::from_bloch(Vector3::new(-0.6, 0.1, 0.2));
        let rho = crate::state::product_state(&a, &b).unwrap();
        let u1 = LocalUnitary::exp_rotation(&Vector3::new(1.0, 2.0, 3.0), 0.9);
        let u2 = LocalUnitary::exp_rotation(&Vector3::new(-1.0, 0.5, 0.0), 2.1);
        let (o1, o2) = (u1.rotation(), u2.rotation());
        let before = to_hs(&rho);
        let after = to_hs(&apply_local(&rho, &u1, &u2).unwrap());
        assert_abs_diff_eq!((after.r - o1.matrix() * before.r).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!((after.s - o2.matrix() * before.s).norm(), 0.0, epsilon = 1e-10);
        let expected_t = o1.matrix() * before.t * o2.matrix().transpose();
        assert_abs_diff_eq!((after.t - expected_t).norm(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn canonicalize_diagonal_input() {
        let w = werner(0.6).unwrap();
        let c = canonicalize(&w).unwrap();
        let t = to_hs(&c.state).t;
        assert!((t - Matrix3::from_diagonal(&t.diagonal())).abs().max() <= 1e-10);
        // det(T) < 0, so one entry carries the sign.
        assert_abs_diff_eq!((c.diag - Vector3::new(0.6, 0.6, -0.6)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn canonicalize_rotated_singlet() {
        let u1 = LocalUnitary::exp_rotation(&Vector3::new(0.3, -1.0, 0.2), 0.77);
        let u2 = LocalUnitary::exp_rotation(&Vector3::new(1.0, 1.0, 1.0), 2.5);
        let rho = apply_local(&BellBasis::singlet(), &u1, &u2).unwrap();
        let c = canonicalize(&rho).unwrap();
        for d in c.diag.iter() {
            assert_abs_diff_eq!(d.abs(), 1.0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(c.o1.matrix().determinant(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(c.o2.matrix().determinant(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn canonicalize_product_state() {
        // |0><0| ⊗ |+><+|: T = ẑ x̂ᵀ, rank one.
        let rho = crate::state::product_state(
            &QubitState::from_bloch(Vector3::z()),
            &QubitState::from_bloch(Vector3::x()),
        )
        .unwrap();
        let c = canonicalize(&rho).unwrap();
        assert_abs_diff_eq!((c.diag.abs() - Vector3::new(1.0, 0.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
        let t = to_hs(&c.state).t;
        let expected = c.o1.matrix() * to_hs(&rho).t * c.o2.matrix().transpose();
        assert_abs_diff_eq!((t - expected).norm(), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!((t.diagonal() - c.diag).norm(), 0.0, epsilon = 1e-10);
    }
}

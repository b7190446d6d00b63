//! Small dense linear algebra: Pauli matrices, Kronecker products, a cyclic
//! Jacobi eigensolver for Hermitian matrices and a one-sided Jacobi SVD for
//! real 3×3 matrices.

use nalgebra::{Matrix3, SMatrix, Vector3};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = SMatrix<C64, 2, 2>;
pub type Mat4 = SMatrix<C64, 4, 4>;
pub type Mat8 = SMatrix<C64, 8, 8>;

/// Off-diagonal Frobenius threshold for the Hermitian Jacobi solver.
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative orthogonality threshold for the one-sided SVD.
pub const SVD_TOL: f64 = 1e-13;

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity2() -> Mat2 {
    Mat2::identity()
}

/// Pauli matrix σ_k for k ∈ {1, 2, 3}; k = 0 gives the identity.
pub fn pauli(k: usize) -> Mat2 {
    match k {
        0 => identity2(),
        1 => Mat2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        2 => Mat2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        3 => Mat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// `a·σ` for a real 3-vector.
pub fn bloch_operator(a: &Vector3<f64>) -> Mat2 {
    pauli(1) * c(a[0], 0.0) + pauli(2) * c(a[1], 0.0) + pauli(3) * c(a[2], 0.0)
}

pub fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `Tr(A B)` without forming the product.
pub fn trace_product<const N: usize>(a: &SMatrix<C64, N, N>, b: &SMatrix<C64, N, N>) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..N {
        for j in 0..N {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Largest entrywise modulus.
pub fn max_abs_entry<const R: usize, const K: usize>(m: &SMatrix<C64, R, K>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_hermitian_deviation<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues in descending order.
    pub values: [f64; N],
    /// Columns are the eigenvectors matching `values`.
    pub vectors: SMatrix<C64, N, N>,
    pub sweeps: usize,
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot element with a diagonal
/// unitary and then applies a real Givens rotation, so the combined transform
/// is unitary. Iterates until the off-diagonal Frobenius norm drops below
/// [`JACOBI_OFF_TOL`] (scaled by the matrix norm when it exceeds one).
/// Returns `None` when the sweep budget is exhausted.
pub fn hermitian_eigen<const N: usize>(m: &SMatrix<C64, N, N>) -> Option<HermitianEigen<N>> {
    let mut a = *m;
    // Symmetrize so rounding asymmetry cannot leak into the rotations.
    for i in 0..N {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..N {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = SMatrix::<C64, N, N>::identity();
    let scale = a.norm().max(1.0);
    let threshold = JACOBI_OFF_TOL * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return None;
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let w = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                // G = diag(1, conj(w)) · [[c, s], [-s, c]] restricted to (p, q).
                let g_pp = C64::new(cs, 0.0);
                let g_pq = C64::new(sn, 0.0);
                let g_qp = -w.conj() * sn;
                let g_qq = w.conj() * cs;

                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * g_pp + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * g_qq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.map(|i| a[(i, i)].re);
    let vectors = SMatrix::<C64, N, N>::from_fn(|r, col| v[(r, order[col])]);
    Some(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<C64, N, N>) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Real 3×3 singular value decomposition `A = U diag(sigma) Vᵀ`.
#[derive(Debug, Clone, Copy)]
pub struct Svd3 {
    pub u: Matrix3<f64>,
    pub sigma: Vector3<f64>,
    pub v: Matrix3<f64>,
    pub converged: bool,
}

/// One-sided (Hestenes) Jacobi SVD.
///
/// Singular values are nonnegative and sorted descending; `u` and `v` are
/// orthogonal but their determinants are not fixed (see [`proper_svd3`]).
/// When the sweep budget runs out the last iterate is returned with
/// `converged = false`.
pub fn svd3(a: &Matrix3<f64>) -> Svd3 {
    let mut w = *a;
    let mut v = Matrix3::<f64>::identity();
    let mut converged = false;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..3 {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dot(&w.column(q));
                if gamma == 0.0 || gamma.abs() <= SVD_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..3 {
                    let wp = w[(k, p)];
                    let wq = w[(k, q)];
                    w[(k, p)] = cs * wp - sn * wq;
                    w[(k, q)] = sn * wp + cs * wq;
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = cs * vp - sn * vq;
                    v[(k, q)] = sn * vp + cs * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }

    let norms = Vector3::from_fn(|i, _| w.column(i).norm());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let sigma = Vector3::from_fn(|i, _| norms[order[i]]);
    let v = Matrix3::from_fn(|r, col| v[(r, order[col])]);
    let w = Matrix3::from_fn(|r, col| w[(r, order[col])]);

    let cutoff = 1e-14 * sigma[0].max(f64::MIN_POSITIVE);
    let mut cols: Vec<Vector3<f64>> = Vec::with_capacity(3);
    for i in 0..3 {
        if sigma[i] > cutoff {
            cols.push(w.column(i) / sigma[i]);
        }
    }
    let u = complete_orthonormal(cols);
    Svd3 {
        u,
        sigma,
        v,
        converged,
    }
}

/// Extends up to three orthonormal columns to an orthonormal basis of R³.
fn complete_orthonormal(mut cols: Vec<Vector3<f64>>) -> Matrix3<f64> {
    match cols.len() {
        0 => return Matrix3::identity(),
        1 => {
            let u1 = cols[0];
            let axis = (0..3)
                .min_by(|&i, &j| u1[i].abs().total_cmp(&u1[j].abs()))
                .unwrap_or(0);
            let mut e = Vector3::zeros();
            e[axis] = 1.0;
            let u2 = (e - u1 * u1.dot(&e)).normalize();
            cols.push(u2);
            cols.push(u1.cross(&u2));
        }
        2 => {
            let u3 = cols[0].cross(&cols[1]).normalize();
            cols.push(u3);
        }
        _ => {}
    }
    Matrix3::from_columns(&cols)
}

/// SVD with both factors proper rotations (`det = +1`).
///
/// The sign needed to repair a reflection is pushed into the smallest
/// singular value, so `sigma` is sorted by descending magnitude and only its
/// last entry can be negative.
pub fn proper_svd3(a: &Matrix3<f64>) -> Svd3 {
    let mut svd = svd3(a);
    if svd.u.determinant() < 0.0 {
        svd.u.column_mut(2).neg_mut();
        svd.sigma[2] = -svd.sigma[2];
    }
    if svd.v.determinant() < 0.0 {
        svd.v.column_mut(2).neg_mut();
        svd.sigma[2] = -svd.sigma[2];
    }
    svd
}

/// Partial trace of a two-qubit operator; `keep = 0` keeps the first qubit.
pub fn partial_trace(m: &Mat4, keep: usize) -> Mat2 {
    let mut out = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[(i, j)] += if keep == 0 {
                    m[(2 * i + k, 2 * j + k)]
                } else {
                    m[(2 * k + i, 2 * k + j)]
                };
            }
        }
    }
    out
}

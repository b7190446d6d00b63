//! Seeded, reproducible generation of states and local unitaries.
//!
//! Every generator is a ChaCha8 keystream keyed by the seed; independent
//! streams (one per sample index) make parallel sampling deterministic
//! regardless of how work is scheduled.

use nalgebra::{Vector3, Vector4};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4, C64};
use crate::local::LocalUnitary;
use crate::state::{BellSpectrum, DensityMatrix, QubitState, Tolerances};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededGenerator {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        SeededGenerator { seed, stream, rng }
    }

    /// Independent generator for sample `index`; does not advance `self`.
    pub fn split(&self, index: u64) -> Self {
        Self::with_stream(self.seed, index.wrapping_add(1))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of 32-bit words consumed from the stream so far.
    pub fn position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn complex_normal(&mut self) -> C64 {
        C64::new(self.normal(), self.normal())
    }

    /// Uniform direction on the unit sphere.
    pub fn unit_vector(&mut self) -> Vector3<f64> {
        loop {
            let v = Vector3::new(self.normal(), self.normal(), self.normal());
            let n = v.norm();
            if n > 1e-12 {
                return v / n;
            }
        }
    }
}

impl RngCore for SeededGenerator {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }
    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }
    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// `k` weights uniform on the simplex, from the spacings of `k − 1` sorted
/// uniforms.
pub fn uniform_simplex(gen: &mut SeededGenerator, k: usize) -> Vec<f64> {
    let mut cuts: Vec<f64> = (0..k.saturating_sub(1)).map(|_| gen.uniform()).collect();
    cuts.sort_by(f64::total_cmp);
    let mut prev = 0.0;
    let mut out = Vec::with_capacity(k);
    for c in cuts.into_iter().chain(std::iter::once(1.0)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// Uniform on the probability simplex, i.e. uniform over the tetrahedron of
/// T-states with diagonal `T`.
pub fn uniform_bell_spectrum(gen: &mut SeededGenerator) -> BellSpectrum {
    let w = uniform_simplex(gen, 4);
    BellSpectrum::new([w[0], w[1], w[2], w[3]]).expect("simplex spacings form a distribution")
}

/// Haar-random pure qubit state.
pub fn random_pure_qubit(gen: &mut SeededGenerator) -> QubitState {
    QubitState::from_bloch(gen.unit_vector())
}

/// `Σ w_i ρ_i ⊗ ρ'_i` with simplex-uniform weights and Haar-random pure factors.
pub fn random_product_mixture(gen: &mut SeededGenerator, k: usize) -> Result<DensityMatrix> {
    if k == 0 {
        return Err(Error::InvalidCount);
    }
    let weights = uniform_simplex(gen, k);
    let mut m = Mat4::zeros();
    for w in weights {
        let a = random_pure_qubit(gen).matrix();
        let b = random_pure_qubit(gen).matrix();
        m += crate::linalg::kron2(&a, &b) * C64::new(w, 0.0);
    }
    DensityMatrix::from_matrix(m, Tolerances::INTERNAL)
}

/// Haar-random element of SU(2) (Haar on U(2) modulo global phase), from a
/// uniformly random unit quaternion.
pub fn random_local_unitary(gen: &mut SeededGenerator) -> LocalUnitary {
    let q = loop {
        let v = Vector4::new(gen.normal(), gen.normal(), gen.normal(), gen.normal());
        let n = v.norm();
        if n > 1e-12 {
            break v / n;
        }
    };
    let u = Mat2::new(
        C64::new(q[0], -q[3]),
        C64::new(-q[2], -q[1]),
        C64::new(q[2], -q[1]),
        C64::new(q[0], q[3]),
    );
    LocalUnitary::new(u).expect("unit quaternion gives a unitary")
}

/// `G G† / Tr(G G†)` with `G` a 4×4 matrix of standard complex Gaussians.
pub fn random_density(gen: &mut SeededGenerator) -> DensityMatrix {
    let g = Mat4::from_fn(|_, _| gen.complex_normal());
    let gg = g * g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::from_matrix(gg / C64::new(tr, 0.0), Tolerances::INTERNAL)
        .expect("Gram matrices are positive semidefinite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use crate::state::{from_hs, to_hs};
    use approx::assert_abs_diff_eq;

    #[test]
    fn equal_seeds_give_equal_streams() {
        let mut a = SeededGenerator::new(7);
        let mut b = SeededGenerator::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SeededGenerator::new(8);
        assert_ne!(a.next_u64(), c.next_u64());
        assert!(a.position() > 0);
    }

    #[test]
    fn split_streams_are_independent_of_parent_state() {
        let mut parent = SeededGenerator::new(3);
        let first = parent.split(5);
        parent.next_u64();
        let second = parent.split(5);
        assert_eq!(first, second);
        assert_ne!(parent.split(5).clone().next_u64(), parent.split(6).clone().next_u64());
    }

    #[test]
    fn random_unitary_is_unitary_with_rotation() {
        let mut gen = SeededGenerator::new(1);
        for _ in 0..1000 {
            let u = random_local_unitary(&mut gen);
            let err = (u.matrix().adjoint() * u.matrix() - Mat2::identity()).norm();
            assert!(err < 1e-12);
            let o = u.rotation();
            assert_abs_diff_eq!(o.matrix().determinant(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn random_unitary_matches_quaternion_convention() {
        // U = q0 I − i q·σ
        let mut gen = SeededGenerator::new(9);
        let u = random_local_unitary(&mut gen);
        let m = u.matrix();
        let q0 = 0.5 * (m[(0, 0)] + m[(1, 1)]).re;
        let rebuilt = Mat2::identity() * C64::new(q0, 0.0)
            - (1..=3)
                .map(|k| {
                    let qk = -0.5 * crate::linalg::trace_product(&pauli(k), m).im;
                    pauli(k) * C64::new(0.0, qk)
                })
                .fold(Mat2::zeros(), |acc, x| acc + x);
        assert_abs_diff_eq!((rebuilt - m).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn product_mixture_rejects_zero() {
        assert!(matches!(random_product_mixture(&mut SeededGenerator::new(0), 0), Err(Error::InvalidCount)));
    }

    #[test]
    fn random_density_round_trips() {
        let mut gen = SeededGenerator::new(11);
        for _ in 0..200 {
            let rho = random_density(&mut gen);
            let back = from_hs(&to_hs(&rho), Tolerances::INTERNAL).unwrap();
            assert!(crate::linalg::max_abs_entry(&(back.matrix() - rho.matrix())) <= 1e-12);
        }
    }

    #[test]
    fn simplex_sums_to_one() {
        let mut gen = SeededGenerator::new(5);
        for k in 1..10 {
            let w = uniform_simplex(&mut gen, k);
            assert_eq!(w.len(), k);
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
            assert!(w.iter().all(|&x| x >= 0.0));
        }
    }
}

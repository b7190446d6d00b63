//! Monte-Carlo survey of uniformly random Bell-diagonal states, checking that
//! every exact T-state criterion gives the same answer.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::entropy::{check_inequality, tstate_inequality, Alpha};
use crate::error::{Error, Result};
use crate::sampling::{uniform_bell_spectrum, SeededGenerator};
use crate::separability::{
    classify, flip_overlaps, in_octahedron, in_tetrahedron, spectral_separable, TVector, Verdict, BOUNDARY_TOL,
};
use crate::state::{bell_diagonal, to_hs};
use crate::teleport::diagnostics;

/// Per-sample criterion values. Each `*_separable` flag is one independent
/// route to the separability verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveySample {
    pub index: u64,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub l1_norm: f64,
    pub max_eigenvalue: f64,
    pub n_value: f64,
    pub fully_entangled_fraction: f64,
    pub octahedron_separable: bool,
    pub spectral_separable: bool,
    pub n_separable: bool,
    pub flip_separable: bool,
    pub classify_separable: bool,
    pub alpha2_violated: bool,
    pub alpha_inf_violated: bool,
    pub useful: bool,
    pub purifiable: bool,
    pub disagreement: bool,
}

impl SurveySample {
    /// All routes that must coincide with "separable".
    pub fn separable_routes(&self) -> [bool; 8] {
        [
            self.octahedron_separable,
            self.spectral_separable,
            self.n_separable,
            self.flip_separable,
            self.classify_separable,
            !self.alpha_inf_violated,
            !self.useful,
            !self.purifiable,
        ]
    }
}

/// Evaluates sample `index` drawn from stream `index` of `seed`.
pub fn survey_sample(seed: u64, index: u64) -> Result<SurveySample> {
    let mut gen = SeededGenerator::new(seed).split(index);
    let p = uniform_bell_spectrum(&mut gen);
    let rho = bell_diagonal(&p);
    let t_raw = to_hs(&rho).diagonal_t();
    let t = TVector::new(t_raw)?;

    let octahedron_separable = in_octahedron(&t);
    let spectral = spectral_separable(&rho)?;
    let tele = diagnostics(&rho);
    let n_separable = tele.n_value <= 1.0 + BOUNDARY_TOL;
    let flip_separable = flip_overlaps(&rho).iter().all(|&x| x >= -BOUNDARY_TOL) && in_tetrahedron(&-t);
    let classify_separable = classify(&rho)?.verdict == Verdict::Separable;

    let a2 = check_inequality(&rho, Alpha::Finite(2.0))?;
    let ainf = check_inequality(&rho, Alpha::Infinity)?;
    let closed_form_agrees = tstate_inequality(&p, Alpha::Finite(2.0))? == a2.satisfied
        && tstate_inequality(&p, Alpha::Infinity)? == ainf.satisfied;

    let fef = tele.fully_entangled_fraction.ok_or(Error::NotTState {
        r_norm: f64::NAN,
        s_norm: f64::NAN,
    })?;
    let w = p.weights();
    let mut sample = SurveySample {
        index,
        p0: w[0],
        p1: w[1],
        p2: w[2],
        p3: w[3],
        t1: t_raw[0],
        t2: t_raw[1],
        t3: t_raw[2],
        l1_norm: t.l1_norm(),
        max_eigenvalue: rho.max_eigenvalue(),
        n_value: tele.n_value,
        fully_entangled_fraction: fef,
        octahedron_separable,
        spectral_separable: spectral,
        n_separable,
        flip_separable,
        classify_separable,
        alpha2_violated: !a2.satisfied,
        alpha_inf_violated: !ainf.satisfied,
        useful: tele.useful,
        purifiable: tele.purifiable.unwrap_or(false),
        disagreement: false,
    };
    let routes = sample.separable_routes();
    sample.disagreement = routes.iter().any(|&r| r != routes[0]) || !closed_form_agrees;
    Ok(sample)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub n: u64,
    pub seed: u64,
    pub separable_fraction: f64,
    pub inseparable_fraction: f64,
    pub useful_fraction: f64,
    pub purifiable_fraction: f64,
    pub alpha2_violating_fraction: f64,
    pub alpha_inf_violating_fraction: f64,
    pub disagreements: u64,
}

#[derive(Debug, Default, Clone, Copy)]
struct Counts {
    separable: u64,
    useful: u64,
    purifiable: u64,
    alpha2: u64,
    alpha_inf: u64,
    disagreements: u64,
}

impl Counts {
    fn add(mut self, s: &SurveySample) -> Self {
        self.separable += s.classify_separable as u64;
        self.useful += s.useful as u64;
        self.purifiable += s.purifiable as u64;
        self.alpha2 += s.alpha2_violated as u64;
        self.alpha_inf += s.alpha_inf_violated as u64;
        self.disagreements += s.disagreement as u64;
        self
    }

    fn merge(self, o: Counts) -> Counts {
        Counts {
            separable: self.separable + o.separable,
            useful: self.useful + o.useful,
            purifiable: self.purifiable + o.purifiable,
            alpha2: self.alpha2 + o.alpha2,
            alpha_inf: self.alpha_inf + o.alpha_inf,
            disagreements: self.disagreements + o.disagreements,
        }
    }
}

pub fn survey(n: u64, seed: u64) -> Result<SurveySummary> {
    if n == 0 {
        return Err(Error::InvalidCount);
    }
    let counts = (0..n)
        .into_par_iter()
        .map(|i| survey_sample(seed, i).map(|s| Counts::default().add(&s)))
        .try_reduce(Counts::default, |a, b| Ok(a.merge(b)))?;
    let frac = |k: u64| k as f64 / n as f64;
    Ok(SurveySummary {
        n,
        seed,
        separable_fraction: frac(counts.separable),
        inseparable_fraction: frac(n - counts.separable),
        useful_fraction: frac(counts.useful),
        purifiable_fraction: frac(counts.purifiable),
        alpha2_violating_fraction: frac(counts.alpha2),
        alpha_inf_violating_fraction: frac(counts.alpha_inf),
        disagreements: counts.disagreements,
    })
}

/// Samples `start..end`, in index order.
pub fn survey_range(seed: u64, start: u64, end: u64) -> Result<Vec<SurveySample>> {
    (start..end).into_par_iter().map(|i| survey_sample(seed, i)).collect()
}

//! Exit criteria. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any fails.

use std::time::{Duration, Instant};

use twoqubit_core::entropy::{renyi, renyi_from_spectrum, Alpha};
use twoqubit_core::sampling::{
    random_density, random_local_unitary, random_product_mixture, uniform_bell_spectrum, SeededGenerator,
};
use twoqubit_core::separability::flip_overlaps;
use twoqubit_core::survey::survey;
use twoqubit_core::*;

const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Smallest p in [lo, hi] where a monotone predicate flips from false to true.
fn bisect(mut lo: f64, mut hi: f64, flipped: impl Fn(f64) -> bool) -> f64 {
    assert!(!flipped(lo) && flipped(hi));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if flipped(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn werner_state(p: f64) -> DensityMatrix {
    werner(p).expect("p in [0, 1]")
}

fn criterion_equivalence() -> Outcome {
    let start = Instant::now();
    let mut gen = SeededGenerator::new(2024);
    let n = 100_000;
    let mut disagreements = 0;
    let mut separable = 0;
    for _ in 0..n {
        let p = uniform_bell_spectrum(&mut gen);
        let rho = bell_diagonal(&p);
        let t = TVector::new(to_hs(&rho).diagonal_t()).unwrap();
        let octahedron = in_octahedron(&t);
        let spectral = spectral_separable(&rho).unwrap();
        let n_ok = n_value(&rho) <= 1.0 + TOL;
        let flips = flip_overlaps(&rho).iter().all(|&x| x >= -TOL) && in_tetrahedron(&-t);
        if !(octahedron == spectral && spectral == n_ok && n_ok == flips) {
            disagreements += 1;
        }
        separable += octahedron as usize;
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements == 0 && elapsed < Duration::from_secs(60),
        format!(
            "{n} spectra, {disagreements} disagreements, separable {separable}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn werner_thresholds() -> Outcome {
    let third = 1.0 / 3.0;
    let inv_sqrt3 = 1.0 / 3f64.sqrt();

    let sep = bisect(0.0, 1.0, |p| classify(&werner_state(p)).unwrap().verdict == Verdict::Inseparable);
    let useful = bisect(0.0, 1.0, |p| diagnostics(&werner_state(p)).useful);
    let violated = |a: Alpha| move |p: f64| !check_inequality(&werner_state(p), a).unwrap().satisfied;
    let a2 = bisect(0.0, 1.0, violated(Alpha::Finite(2.0)));
    let ainf = bisect(0.0, 1.0, violated(Alpha::Infinity));
    let a1_verdict = bisect(0.0, 1.0, violated(Alpha::Finite(1.0)));

    // S₁(ρ_W(p)) = ln 2 from the closed-form spectrum ((1+3p)/4, (1−p)/4 ×3).
    let ln2 = std::f64::consts::LN_2;
    let closed = |p: f64| {
        let big = (1.0 + 3.0 * p) / 4.0;
        let small = (1.0 - p) / 4.0;
        renyi_from_spectrum(&[big, small, small, small], Alpha::Finite(1.0)).unwrap()
    };
    let p_star = bisect(0.5, 0.99, |p| closed(p) < ln2);
    let p_star_lib = bisect(0.5, 0.99, |p| renyi(&werner_state(p), Alpha::Finite(1.0)).unwrap() < ln2);

    let checks = [
        ("separable", sep, third),
        ("useful", useful, third),
        ("alpha=2", a2, inv_sqrt3),
        ("alpha=inf", ainf, third),
        ("alpha=1 verdict", a1_verdict, p_star),
        ("alpha=1 spectrum", p_star_lib, p_star),
    ];
    let all_close = checks.iter().all(|(_, got, want)| (got - want).abs() <= TOL);
    let ordered = third < inv_sqrt3 && inv_sqrt3 < p_star;
    // The inseparable-but-α₂-satisfying band is nonempty.
    let mid = 0.5 * (third + inv_sqrt3);
    let band = classify(&werner_state(mid)).unwrap().verdict == Verdict::Inseparable
        && check_inequality(&werner_state(mid), Alpha::Finite(2.0)).unwrap().satisfied;
    let detail = checks
        .iter()
        .map(|(name, got, want)| format!("{name} {got:.12} (want {want:.12})"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(all_close && ordered && band, format!("{detail}; p* = {p_star:.12}"))
}

fn theorem_one() -> Outcome {
    let mut gen = SeededGenerator::new(31);
    let n = 10_000;
    let mut worst: f64 = f64::INFINITY;
    let mut worst_flip: f64 = f64::INFINITY;
    for i in 0..n {
        let rho = random_product_mixture(&mut gen, 1 + i % 16).unwrap();
        for a in [Alpha::Finite(1.0), Alpha::Finite(2.0)] {
            let v = check_inequality(&rho, a).unwrap();
            worst = worst.min(v.conditional_1given2).min(v.conditional_2given1);
        }
        worst_flip = flip_overlaps(&rho).iter().copied().fold(worst_flip, f64::min);
    }
    outcome(
        worst >= -TOL && worst_flip >= -TOL,
        format!("{n} mixtures, min conditional entropy {worst:.3e}, min flip overlap {worst_flip:.3e}"),
    )
}

fn teleportation() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0] {
        let rho = werner_state(p);
        let exact = simulate_standard(&rho, Averaging::ExactDesign).unwrap().fidelity;
        let want = 0.5 * (1.0 + p);
        let tol = if p == 1.0 { 1e-12 } else { TOL };
        ok &= (exact - want).abs() <= tol;
        let mc = simulate_standard(&rho, Averaging::MonteCarlo { n: 100_000, seed: 42 }).unwrap();
        // Werner channels are isotropic, so the per-sample spread is pure roundoff.
        ok &= (mc.fidelity - exact).abs() <= 3.0 * mc.std_error + 1e-12;
        notes.push(format!("p={p:.3}: exact {exact:.12}, mc {:.5}±{:.1e}", mc.fidelity, mc.std_error));
    }
    let skewed = bell_diagonal(&BellSpectrum::new([0.6, 0.3, 0.1, 0.0]).unwrap());
    let exact = simulate_standard(&skewed, Averaging::ExactDesign).unwrap().fidelity;
    let mc = simulate_standard(&skewed, Averaging::MonteCarlo { n: 100_000, seed: 42 }).unwrap();
    ok &= (exact - diagnostics(&skewed).f_max).abs() <= TOL;
    ok &= mc.std_error > 1e-4 && (mc.fidelity - exact).abs() <= 3.0 * mc.std_error;
    notes.push(format!("skewed: exact {exact:.12}, mc {:.5}±{:.1e}", mc.fidelity, mc.std_error));
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    outcome(ok, format!("{} ({:.2}s)", notes.join("; "), elapsed.as_secs_f64()))
}

fn volume_ratio_and_equivalence() -> (Outcome, Outcome) {
    let start = Instant::now();
    let summary = survey(1_000_000, 42).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let volume = outcome(
        (summary.separable_fraction - 0.5).abs() <= 0.005,
        format!("separable fraction {:.5} over {} samples ({elapsed:.1}s)", summary.separable_fraction, summary.n),
    );
    let chain = summary.disagreements == 0
        && summary.alpha_inf_violating_fraction == summary.inseparable_fraction
        && summary.useful_fraction == summary.inseparable_fraction
        && summary.purifiable_fraction == summary.inseparable_fraction
        && summary.alpha2_violating_fraction < summary.inseparable_fraction;
    let equivalence = outcome(
        chain,
        format!(
            "disagreements {}, inseparable {:.5}, alpha=inf violating {:.5}, useful {:.5}, purifiable {:.5}, alpha=2 violating {:.5}",
            summary.disagreements,
            summary.inseparable_fraction,
            summary.alpha_inf_violating_fraction,
            summary.useful_fraction,
            summary.purifiable_fraction,
            summary.alpha2_violating_fraction
        ),
    );
    (volume, equivalence)
}

fn local_unitary_invariance() -> Outcome {
    let mut gen = SeededGenerator::new(77);
    let alphas = Alpha::default_scan();
    let mut failures = Vec::new();
    let mut worst_det: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for trial in 0..1_000 {
        let rho = if trial % 2 == 0 {
            random_density(&mut gen)
        } else {
            bell_diagonal(&uniform_bell_spectrum(&mut gen))
        };
        let u1 = random_local_unitary(&mut gen);
        let u2 = random_local_unitary(&mut gen);
        let moved = apply_local(&rho, &u1, &u2).unwrap();

        let (sa, sb) = (spectrum(&rho), spectrum(&moved));
        let spectrum_ok = sa.iter().zip(&sb).all(|(a, b)| (a - b).abs() <= TOL);
        let n_ok = (n_value(&rho) - n_value(&moved)).abs() <= TOL;
        let mut entropy_ok = true;
        let mut inequality_ok = true;
        for &a in &alphas {
            let (va, vb) = (check_inequality(&rho, a).unwrap(), check_inequality(&moved, a).unwrap());
            entropy_ok &= (va.s_total - vb.s_total).abs() <= TOL
                && (va.s_sub1 - vb.s_sub1).abs() <= TOL
                && (va.s_sub2 - vb.s_sub2).abs() <= TOL;
            inequality_ok &= va.satisfied == vb.satisfied;
        }
        let (ca, cb) = (classify(&rho).unwrap(), classify(&moved).unwrap());
        let (ta, tb) = (diagnostics(&rho), diagnostics(&moved));
        let verdict_ok = ca.verdict == cb.verdict
            && ca.in_octahedron == cb.in_octahedron
            && ca.in_tetrahedron == cb.in_tetrahedron
            && ta.useful == tb.useful
            && ta.purifiable == tb.purifiable;

        for state in [&rho, &moved] {
            let c = canonicalize(state).unwrap();
            worst_det = worst_det
                .max((c.o1.matrix().determinant() - 1.0).abs())
                .max((c.o2.matrix().determinant() - 1.0).abs());
            let t = to_hs(&c.state).t;
            let mut off: f64 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        off = off.max(t[(i, j)].abs());
                    }
                }
            }
            worst_residual = worst_residual.max(off);
        }
        if !(spectrum_ok && n_ok && entropy_ok && inequality_ok && verdict_ok) {
            failures.push(trial);
        }
    }
    outcome(
        failures.is_empty() && worst_det <= 1e-10 && worst_residual <= 1e-10,
        format!(
            "1000 triples, {} failures {:?}, max |det-1| {worst_det:.1e}, max off-diagonal {worst_residual:.1e}",
            failures.len(),
            &failures[..failures.len().min(5)]
        ),
    )
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 criterion equivalence on 1e5 Bell spectra", criterion_equivalence()),
        ("2 Werner threshold table", werner_thresholds()),
        ("3 separable mixtures satisfy alpha in {1,2} and flip overlaps", theorem_one()),
        ("4 teleportation simulator vs closed form", teleportation()),
    ];
    let (volume, equivalence) = volume_ratio_and_equivalence();
    results.push(("5 octahedron/tetrahedron volume ratio", volume));
    results.push(("6 local-unitary invariance", local_unitary_invariance()));
    results.push(("7 entropy / separability / teleportation / purification equivalence", equivalence));

    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += (!o.pass) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

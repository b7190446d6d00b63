//! Full single-state report.

use serde::Serialize;
use serde_json::Value;
use twoqubit_core::schema::parse_state;
use twoqubit_core::separability::is_t_state;
use twoqubit_core::{
    canonicalize, check_inequality, classify, diagnostics, to_hs, violation_scan, Alpha, AlphaEntropyVerdict,
    BellSpectrum, DensityMatrix, SeparabilityReport, TeleportReport, Verdict,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HsJson {
    pub r: [f64; 3],
    pub s: [f64; 3],
    /// Row-major.
    pub t: [[f64; 3]; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: Value,
    pub hs_params: HsJson,
    /// Weights on the Bell basis of the canonical frame; `null` unless the
    /// state is a T-state.
    pub bell_spectrum: Option<[f64; 4]>,
    pub canonical_diag: [f64; 3],
    pub separability: SeparabilityReport,
    pub entropy_scan: Vec<AlphaEntropyVerdict>,
    pub teleport: TeleportReport,
}

pub fn analyze_text(text: &str, alphas: &[Alpha]) -> Result<AnalysisReport, CliError> {
    let (input, rho) = parse_state(text)?;
    let report = analyze_state(input, &rho, alphas)?;
    check_consistency(&rho, &report)?;
    Ok(report)
}

pub fn analyze_state(input: Value, rho: &DensityMatrix, alphas: &[Alpha]) -> Result<AnalysisReport, CliError> {
    let (r, s, t) = to_hs(rho).to_arrays();
    let canonical = canonicalize(rho)?;
    let diag = canonical.diag;
    let bell_spectrum = is_t_state(rho).then(|| BellSpectrum::weights_from_t(&diag));
    Ok(AnalysisReport {
        input,
        hs_params: HsJson { r, s, t },
        bell_spectrum,
        canonical_diag: [diag[0], diag[1], diag[2]],
        separability: classify(rho)?,
        entropy_scan: violation_scan(rho, alphas)?,
        teleport: diagnostics(rho),
    })
}

/// Cross-checks criteria that must agree. A failure here is a bug.
pub fn check_consistency(rho: &DensityMatrix, report: &AnalysisReport) -> Result<(), CliError> {
    let sep = &report.separability;
    let tele = &report.teleport;
    let inseparable = sep.verdict == Verdict::Inseparable;
    if tele.useful && !inseparable {
        return Err(CliError::Disagreement(format!(
            "N = {} exceeds 1 but the verdict is {:?}",
            tele.n_value, sep.verdict
        )));
    }
    if sep.verdict == Verdict::Separable {
        if let Some(v) = report.entropy_scan.iter().find(|v| !v.satisfied) {
            return Err(CliError::Disagreement(format!(
                "separable state violates the alpha = {} entropy inequality",
                v.alpha
            )));
        }
    }
    if sep.is_t_state {
        let alpha_inf_violated = !check_inequality(rho, Alpha::Infinity)?.satisfied;
        let routes = [
            ("useful", tele.useful),
            ("purifiable", tele.purifiable.unwrap_or(false)),
            ("alpha = inf violated", alpha_inf_violated),
        ];
        if let Some((name, _)) = routes.iter().find(|(_, v)| *v != inseparable) {
            return Err(CliError::Disagreement(format!(
                "T-state verdict {:?} disagrees with {name}",
                sep.verdict
            )));
        }
    }
    Ok(())
}

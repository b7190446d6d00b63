//! Simulated teleportation fidelity next to the closed form.

use serde::Serialize;
use serde_json::Value;
use twoqubit_core::schema::parse_state;
use twoqubit_core::teleport::CLASSICAL_FIDELITY;
use twoqubit_core::{diagnostics, simulate_standard, Averaging, SimulationResult, TeleportReport};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeleportSimReport {
    pub input: Value,
    pub simulation: SimulationResult,
    pub diagnostics: TeleportReport,
    pub classical_bound: f64,
}

pub fn teleport_sim(text: &str, averaging: Averaging) -> Result<TeleportSimReport, CliError> {
    let (input, rho) = parse_state(text)?;
    Ok(TeleportSimReport {
        input,
        simulation: simulate_standard(&rho, averaging)?,
        diagnostics: diagnostics(&rho),
        classical_bound: CLASSICAL_FIDELITY,
    })
}

//! Bell-spectrum ensemble survey.

use std::io::Write;

use twoqubit_core::survey::{survey, survey_range, SurveySummary};

use crate::CliError;

const CSV_CHUNK: u64 = 1 << 16;

pub fn run_survey(n: u64, seed: u64) -> Result<SurveySummary, CliError> {
    let summary = survey(n, seed)?;
    ensure_agreement(&summary)?;
    Ok(summary)
}

pub fn ensure_agreement(summary: &SurveySummary) -> Result<(), CliError> {
    if summary.disagreements > 0 {
        return Err(CliError::Disagreement(format!(
            "{} of {} samples disagree across criteria",
            summary.disagreements, summary.n
        )));
    }
    Ok(())
}

/// Streams the per-sample table in chunks so memory stays bounded.
pub fn write_samples<W: Write>(writer: W, n: u64, seed: u64) -> Result<(), csv::Error> {
    let mut out = csv::Writer::from_writer(writer);
    let mut start = 0;
    while start < n {
        let end = (start + CSV_CHUNK).min(n);
        for sample in survey_range(seed, start, end).map_err(std::io::Error::other)? {
            out.serialize(sample)?;
        }
        start = end;
    }
    out.flush()?;
    Ok(())
}

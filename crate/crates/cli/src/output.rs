//! Report formatting: CSV bodies and the one-line run summary.
//!
//! Every writer builds the complete file as a single `String` with `\n`
//! line endings, so identical inputs produce byte-identical files on any
//! platform. Probabilities and rates use six decimal places; counts stay
//! integral.

use wdbs_core::analysis::SweepRow;
use wdbs_core::optics::{SplitterSpec, Wavelength};
use wdbs_core::protocol::{Basis, PolarizationState};
use wdbs_core::simulation::{detection_histogram, SimulationReport};

fn real(value: f64) -> String {
    format!("{value:.6}")
}

fn opt_real(value: Option<f64>) -> String {
    match value {
        Some(v) => real(v),
        None => "nan".to_string(),
    }
}

fn state_label(state: PolarizationState) -> &'static str {
    match state {
        PolarizationState::H => "H",
        PolarizationState::V => "V",
        PolarizationState::D => "D",
        PolarizationState::A => "A",
    }
}

fn basis_label(basis: Basis) -> &'static str {
    match basis {
        Basis::Rectilinear => "rectilinear",
        Basis::Diagonal => "diagonal",
    }
}

/// Detection counts by sent state and measured (basis, bit): 16 rows.
pub fn histogram_csv(report: &SimulationReport) -> String {
    let histogram = detection_histogram(report);
    let mut out = String::from("sent_state,basis,bit,count\n");
    for state in PolarizationState::ALL {
        for basis in Basis::ALL {
            for bit in 0..2u8 {
                let count = histogram[state.index()][basis.index() * 2 + bit as usize];
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    state_label(state),
                    basis_label(basis),
                    bit,
                    count
                ));
            }
        }
    }
    out
}

/// Single-row run summary with the figures of merit.
pub fn summary_csv(report: &SimulationReport) -> String {
    let qber = report.qber();
    let mut out = String::from(
        "total_pulses,clicks,sifted,pooled_qber,basis_avg_qber,qber_rect,qber_diag,\
         eve_basis_match,key_fraction,seed,config_digest\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{}\n",
        report.total_pulses,
        report.clicks_total(),
        report.sifted_count(),
        opt_real(qber.pooled),
        opt_real(qber.basis_averaged),
        opt_real(qber.rectilinear),
        opt_real(qber.diagonal),
        opt_real(report.eve_basis_match_fraction()),
        opt_real(report.key_fraction()),
        report.seed,
        report.config_digest,
    ));
    out
}

/// Grid of closed-form attack figures over splitting-ratio pairs.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out =
        String::from("r1,r2,err_eq2,err_pooled,eve_basis_match,key_fraction,degenerate_flag\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            real(row.r1),
            real(row.r2),
            opt_real(row.err_eq),
            real(row.err_pooled),
            real(row.eve_basis_match),
            opt_real(row.key_fraction),
            u8::from(row.degenerate),
        ));
    }
    out
}

/// Fitted coupling ratio sampled at every integer nanometre, 1200..=1700.
pub fn curve_csv(splitter: &SplitterSpec) -> String {
    let mut out = String::from("lambda_nm,ratio\n");
    for nm in 1200u32..=1700 {
        let lambda = Wavelength::new(f64::from(nm)).expect("integer nm is valid");
        let ratio = splitter
            .ratio_at(lambda)
            .expect("a fitted model covers every wavelength");
        out.push_str(&format!("{nm},{}\n", real(ratio)));
    }
    out
}

/// One-line stdout digest of a simulation run.
pub fn simulate_summary_line(report: &SimulationReport) -> String {
    let qber = report.qber();
    format!(
        "pulses={} clicks={} sifted={} pooled_qber={} basis_avg_qber={} \
         eve_basis_match={} key_fraction={} seed={} digest={}",
        report.total_pulses,
        report.clicks_total(),
        report.sifted_count(),
        opt_real(qber.pooled),
        opt_real(qber.basis_averaged),
        opt_real(report.eve_basis_match_fraction()),
        opt_real(report.key_fraction()),
        report.seed,
        report.config_digest,
    )
}

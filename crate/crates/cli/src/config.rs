//! Scenario files: a TOML description of one run, resolved against the
//! device tables it references into a validated simulation config.
//!
//! Table paths inside a scenario are relative to the scenario file itself,
//! so a scenario and its calibration data can move around as a unit. With
//! `balance_target_click_prob` set, the eavesdropper's added attenuation is
//! computed here, at resolution time, so everything downstream (including
//! the config digest) sees the resolved values.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;
use crate::tables::read_table;
use wdbs_core::adversary::balance_attenuation;
use wdbs_core::adversary::EveStrategy;
use wdbs_core::optics::{
    ChannelSpec, CouplingModel, DetectorSpec, SplitterSpec, Wavelength, WavelengthTable,
};
use wdbs_core::protocol::Source;
use wdbs_core::simulation::{EveConfig, ReceiverConfig, SimulationConfig};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    source: SourceSection,
    splitter: SplitterSection,
    detector: DetectorSection,
    channel: ChannelSection,
    protocol: ProtocolSection,
    #[serde(default)]
    eve: Option<EveSection>,
    run: RunSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceSection {
    wavelength_nm: f64,
    mean_photon_number: f64,
}

/// Exactly one of `table` (measured calibration points) or `model` (fitted
/// coupling-law parameters) describes the splitter.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitterSection {
    #[serde(default)]
    table: Option<PathBuf>,
    #[serde(default)]
    model: Option<ModelSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSection {
    max_amplitude: f64,
    phase_coefficient: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DetectorSection {
    table: PathBuf,
    #[serde(default)]
    dark_count_prob: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelSection {
    attenuation_db: Vec<ChannelEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelEntry {
    wavelength_nm: f64,
    db: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProtocolSection {
    intrinsic_error: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EveSection {
    enabled: bool,
    #[serde(default = "default_resend_rectilinear_nm")]
    resend_rectilinear_nm: f64,
    #[serde(default = "default_resend_diagonal_nm")]
    resend_diagonal_nm: f64,
    #[serde(default = "default_resend_mean_photon_number")]
    resend_mean_photon_number: f64,
    /// Fixed added attenuation per wavelength; mutually exclusive with
    /// `balance_target_click_prob`.
    #[serde(default)]
    added_attenuation_db: Vec<ChannelEntry>,
    /// When set, added attenuation is solved for so Bob clicks at this rate.
    #[serde(default)]
    balance_target_click_prob: Option<f64>,
    /// Eve's own splitter table; defaults to the same device as Bob's.
    #[serde(default)]
    splitter_table: Option<PathBuf>,
    /// Eve's detector table; defaults to unit efficiency at the source
    /// wavelength.
    #[serde(default)]
    detector_table: Option<PathBuf>,
    #[serde(default)]
    dark_count_prob: f64,
    /// The tap between Alice's lab and Eve's receiver.
    #[serde(default)]
    channel_from_alice_db: f64,
}

fn default_resend_rectilinear_nm() -> f64 {
    1470.0
}

fn default_resend_diagonal_nm() -> f64 {
    1290.0
}

fn default_resend_mean_photon_number() -> f64 {
    2.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    pulses: u64,
    seed: u64,
}

/// A scenario ready to run: the resolved config plus its master seed.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub config: SimulationConfig,
    pub seed: u64,
}

fn field<T, E: std::fmt::Display>(path: &str, value: Result<T, E>) -> Result<T, CliError> {
    value.map_err(|e| CliError::Validation(format!("{path}: {e}")))
}

fn load_wavelength_table(
    base: &Path,
    relative: &Path,
    path_label: &str,
) -> Result<WavelengthTable, CliError> {
    let full = base.join(relative);
    let rows = read_table(&full)?;
    let mut entries = Vec::with_capacity(rows.len());
    for (nm, value) in rows {
        entries.push((field(path_label, Wavelength::new(nm))?, value));
    }
    field(path_label, WavelengthTable::new(entries))
}

fn resolve_channel_entries(
    entries: &[ChannelEntry],
    path_label: &str,
) -> Result<Vec<(Wavelength, f64)>, CliError> {
    entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let label = format!("{path_label}[{i}]");
            let lambda = field(&label, Wavelength::new(entry.wavelength_nm))?;
            field(&label, ChannelSpec::new(entry.db))?;
            Ok((lambda, entry.db))
        })
        .collect()
}

fn resolve_splitter(section: &SplitterSection, base: &Path) -> Result<SplitterSpec, CliError> {
    match (&section.table, &section.model) {
        (Some(table), None) => Ok(SplitterSpec::Table(load_wavelength_table(
            base,
            table,
            "splitter.table",
        )?)),
        (None, Some(model)) => Ok(SplitterSpec::Model(field(
            "splitter.model",
            CouplingModel::new(model.max_amplitude, model.phase_coefficient),
        )?)),
        _ => Err(CliError::Validation(
            "splitter: exactly one of `table` or `model` must be set".to_string(),
        )),
    }
}

fn resolve_eve(
    section: &EveSection,
    base: &Path,
    bob_splitter: &SplitterSpec,
    bob_detector: &DetectorSpec,
    bob_link: &[(Wavelength, f64)],
    source_wavelength: Wavelength,
) -> Result<EveConfig, CliError> {
    let resend_rect = field(
        "eve.resend_rectilinear_nm",
        Wavelength::new(section.resend_rectilinear_nm),
    )?;
    let resend_diag = field(
        "eve.resend_diagonal_nm",
        Wavelength::new(section.resend_diagonal_nm),
    )?;
    let splitter = match &section.splitter_table {
        Some(path) => SplitterSpec::Table(load_wavelength_table(base, path, "eve.splitter_table")?),
        None => bob_splitter.clone(),
    };
    let efficiency = match &section.detector_table {
        Some(path) => load_wavelength_table(base, path, "eve.detector_table")?,
        None => WavelengthTable::new(vec![(source_wavelength, 1.0)])
            .expect("single-entry unit table is valid"),
    };
    let detector = field(
        "eve.dark_count_prob",
        DetectorSpec::new(efficiency, section.dark_count_prob),
    )?;
    let channel = field(
        "eve.channel_from_alice_db",
        ChannelSpec::new(section.channel_from_alice_db),
    )?;

    let added = resolve_channel_entries(&section.added_attenuation_db, "eve.added_attenuation_db")?;
    if section.balance_target_click_prob.is_some() && !added.is_empty() {
        return Err(CliError::Validation(
            "eve.balance_target_click_prob: conflicts with eve.added_attenuation_db; \
             set one or the other"
                .to_string(),
        ));
    }

    let mut strategy = field(
        "eve",
        EveStrategy::new(
            resend_rect,
            resend_diag,
            section.resend_mean_photon_number,
            added,
            splitter,
            channel,
        ),
    )?;
    if let Some(target) = section.balance_target_click_prob {
        let balanced = field(
            "eve.balance_target_click_prob",
            balance_attenuation(&strategy, bob_detector, bob_link, target),
        )?;
        field(
            "eve.added_attenuation_db",
            strategy.set_added_attenuation(balanced),
        )?;
    }

    Ok(EveConfig { strategy, detector })
}

/// Loads and fully resolves a scenario file.
pub fn load_scenario(path: &Path) -> Result<ResolvedScenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let file: ScenarioFile = toml::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));

    let source_wavelength = field(
        "source.wavelength_nm",
        Wavelength::new(file.source.wavelength_nm),
    )?;
    let source = field(
        "source.mean_photon_number",
        Source::new(source_wavelength, file.source.mean_photon_number),
    )?;
    let splitter = resolve_splitter(&file.splitter, base)?;
    let detector_table = load_wavelength_table(base, &file.detector.table, "detector.table")?;
    let detector = field(
        "detector.dark_count_prob",
        DetectorSpec::new(detector_table, file.detector.dark_count_prob),
    )?;
    let bob_link = resolve_channel_entries(&file.channel.attenuation_db, "channel.attenuation_db")?;

    let bob = ReceiverConfig {
        splitter: splitter.clone(),
        detector: detector.clone(),
        intrinsic_error: file.protocol.intrinsic_error,
    };
    let eve = match &file.eve {
        Some(section) if section.enabled => Some(resolve_eve(
            section,
            base,
            &splitter,
            &detector,
            &bob_link,
            source_wavelength,
        )?),
        _ => None,
    };

    let config = SimulationConfig {
        source,
        bob,
        bob_link_db: bob_link,
        eve,
        pulses: file.run.pulses,
    };
    config.validate()?;
    Ok(ResolvedScenario {
        config,
        seed: file.run.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
        let path = dir.join(name);
        fs::write(&path, content).unwrap();
        path
    }

    fn write_devices(dir: &Path) {
        write(dir, "splitter.tsv", "1290\t0.003\n1470\t0.986\n1550\t0.5\n");
        write(
            dir,
            "detector.tsv",
            "1290\t0.05\n1470\t0.107\n1550\t0.121\n",
        );
    }

    const BASE_SCENARIO: &str = r#"
[source]
wavelength_nm = 1550.0
mean_photon_number = 1.0

[splitter]
table = "splitter.tsv"

[detector]
table = "detector.tsv"

[channel]
attenuation_db = [ { wavelength_nm = 1550.0, db = 10.79 } ]

[protocol]
intrinsic_error = 0.013

[run]
pulses = 1000
seed = 7
"#;

    #[test]
    fn minimal_scenario_resolves() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let path = write(dir.path(), "scenario.cfg", BASE_SCENARIO);
        let scenario = load_scenario(&path).unwrap();
        assert_eq!(scenario.seed, 7);
        assert_eq!(scenario.config.pulses, 1000);
        assert!(scenario.config.eve.is_none());
        assert_eq!(scenario.config.bob.intrinsic_error, 0.013);
    }

    #[test]
    fn unknown_fields_are_rejected_with_a_message() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let bad = BASE_SCENARIO.replace("intrinsic_error", "intrinsic_errr");
        let path = write(dir.path(), "scenario.cfg", &bad);
        match load_scenario(&path).unwrap_err() {
            CliError::Validation(message) => assert!(message.contains("intrinsic_errr")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn splitter_requires_exactly_one_description() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let bad = BASE_SCENARIO.replace("[splitter]\ntable = \"splitter.tsv\"", "[splitter]");
        let path = write(dir.path(), "scenario.cfg", &bad);
        match load_scenario(&path).unwrap_err() {
            CliError::Validation(message) => assert!(message.starts_with("splitter:")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn splitter_model_form_resolves() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let modeled = BASE_SCENARIO.replace(
            "[splitter]\ntable = \"splitter.tsv\"",
            "[splitter]\nmodel = { max_amplitude = 0.9943, phase_coefficient = 4.7066e-7 }",
        );
        let path = write(dir.path(), "scenario.cfg", &modeled);
        let scenario = load_scenario(&path).unwrap();
        assert!(matches!(
            scenario.config.bob.splitter,
            SplitterSpec::Model(_)
        ));
    }

    #[test]
    fn disabled_eve_section_resolves_to_no_eavesdropper() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let with_eve = format!("{BASE_SCENARIO}\n[eve]\nenabled = false\n");
        let path = write(dir.path(), "scenario.cfg", &with_eve);
        assert!(load_scenario(&path).unwrap().config.eve.is_none());
    }

    #[test]
    fn balancing_and_fixed_attenuation_conflict() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let with_eve = format!(
            "{}\n[eve]\nenabled = true\nbalance_target_click_prob = 0.01\n\
             added_attenuation_db = [ {{ wavelength_nm = 1470.0, db = 9.9 }} ]\n",
            BASE_SCENARIO.replace(
                "attenuation_db = [ { wavelength_nm = 1550.0, db = 10.79 } ]",
                "attenuation_db = [ { wavelength_nm = 1470.0, db = 3.3 }, \
                 { wavelength_nm = 1290.0, db = 0.0 } ]"
            )
        );
        let path = write(dir.path(), "scenario.cfg", &with_eve);
        match load_scenario(&path).unwrap_err() {
            CliError::Validation(message) => {
                assert!(message.contains("balance_target_click_prob"))
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn balanced_attack_scenario_resolves_with_computed_attenuation() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        let with_eve = format!(
            "{}\n[eve]\nenabled = true\nbalance_target_click_prob = 0.01\n",
            BASE_SCENARIO.replace(
                "attenuation_db = [ { wavelength_nm = 1550.0, db = 10.79 } ]",
                "attenuation_db = [ { wavelength_nm = 1470.0, db = 3.3 }, \
                 { wavelength_nm = 1290.0, db = 0.0 } ]"
            )
        );
        let path = write(dir.path(), "scenario.cfg", &with_eve);
        let scenario = load_scenario(&path).unwrap();
        let eve = scenario.config.eve.unwrap();
        let at_rect = eve.strategy.added_attenuation_at(Wavelength::NM_1470);
        let at_diag = eve.strategy.added_attenuation_at(Wavelength::NM_1290);
        assert!((at_rect - 9.982331984697698).abs() < 1e-6);
        assert!((at_diag - 9.978194251205789).abs() < 1e-6);
    }

    #[test]
    fn missing_wavelength_coverage_fails_validation_with_paths() {
        let dir = tempfile::tempdir().unwrap();
        write_devices(dir.path());
        // Attack wavelengths absent from the channel table.
        let with_eve = format!("{BASE_SCENARIO}\n[eve]\nenabled = true\n");
        let path = write(dir.path(), "scenario.cfg", &with_eve);
        match load_scenario(&path).unwrap_err() {
            CliError::Validation(message) => {
                assert!(message.contains("bob_link_db"), "got: {message}")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}

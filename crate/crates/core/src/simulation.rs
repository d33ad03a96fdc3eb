//! Seeded end-to-end Monte Carlo of the protocol, with or without the
//! eavesdropper in the line.
//!
//! A run is fully determined by a [`SimulationConfig`] and a master seed.
//! Pulses are processed in shards of [`SHARD_SIZE`](crate::rng::SHARD_SIZE),
//! each on its own deterministic random stream, so shards can execute in
//! parallel while the merged counts stay identical to a serial pass. All
//! aggregation is plain count addition.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::adversary::{eve_intercept, eve_resend, EveStrategy};
use crate::optics::{ChannelSpec, DetectorSpec, OpticsError, SplitterSpec, Wavelength};
use crate::protocol::{
    alice_prepare, bob_measure, secret_key_fraction, AliceRecord, Basis, BobRecord,
    PolarizationState, ProtocolError, QberEstimate, SiftedCounts, Source,
};
use crate::rng::{shard_rng, SHARD_SIZE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulationError {
    #[error("invalid configuration: {}", format_issues(.0))]
    InvalidConfig(Vec<ConfigIssue>),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
}

/// One field-level validation failure, with the path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(ConfigIssue::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Bob's receiver: the basis-selecting splitter, the detector pair behind
/// it, and the intrinsic misalignment error of the whole analyzer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReceiverConfig {
    pub splitter: SplitterSpec,
    pub detector: DetectorSpec,
    pub intrinsic_error: f64,
}

/// The eavesdropper: her strategy plus her own detector pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EveConfig {
    pub strategy: EveStrategy,
    pub detector: DetectorSpec,
}

/// A fully resolved simulation: devices loaded, attenuation balanced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub source: Source,
    pub bob: ReceiverConfig,
    /// Attenuation of the fiber into Bob's lab, keyed by the wavelength of
    /// the pulse traversing it.
    pub bob_link_db: Vec<(Wavelength, f64)>,
    pub eve: Option<EveConfig>,
    pub pulses: u64,
}

impl SimulationConfig {
    fn bob_link_attenuation(&self, lambda: Wavelength) -> Option<f64> {
        self.bob_link_db
            .iter()
            .find(|(w, _)| *w == lambda)
            .map(|(_, db)| *db)
    }

    /// Checks every cross-reference a run will exercise and returns all
    /// failures at once, each with the path of the offending field.
    pub fn validate(&self) -> Result<(), SimulationError> {
        let mut issues = Vec::new();
        let mut issue = |path: &str, message: String| {
            issues.push(ConfigIssue {
                path: path.to_string(),
                message,
            })
        };

        if self.pulses == 0 {
            issue("pulses", "must be at least 1".to_string());
        }
        if !(self.bob.intrinsic_error.is_finite()
            && (0.0..=1.0).contains(&self.bob.intrinsic_error))
        {
            issue(
                "bob.intrinsic_error",
                format!("must be in [0, 1], got {}", self.bob.intrinsic_error),
            );
        }
        for (i, (w, db)) in self.bob_link_db.iter().enumerate() {
            if !(db.is_finite() && *db >= 0.0) {
                issue(
                    "bob_link_db",
                    format!("entry {i} ({w}): attenuation must be nonnegative, got {db}"),
                );
            }
            if self.bob_link_db[i + 1..].iter().any(|(v, _)| v == w) {
                issue("bob_link_db", format!("duplicate entry for {w}"));
            }
        }

        // Wavelengths Bob will actually see: the source directly, or Eve's
        // resend wavelengths.
        let source_lambda = self.source.wavelength();
        let bob_sees: Vec<Wavelength> = match &self.eve {
            None => vec![source_lambda],
            Some(eve) => eve.strategy.resend_wavelengths(),
        };
        for lambda in &bob_sees {
            if let Err(e) = self.bob.splitter.ratio_at(*lambda) {
                issue("bob.splitter", e.to_string());
            }
            if let Err(e) = self.bob.detector.efficiency_at(*lambda) {
                issue("bob.detector", e.to_string());
            }
            if self.bob_link_attenuation(*lambda).is_none() {
                issue("bob_link_db", format!("no attenuation entry for {lambda}"));
            }
        }
        if let Some(eve) = &self.eve {
            if let Err(e) = eve.strategy.splitter().ratio_at(source_lambda) {
                issue("eve.strategy.splitter", e.to_string());
            }
            if let Err(e) = eve.detector.efficiency_at(source_lambda) {
                issue("eve.detector", e.to_string());
            }
        }

        if issues.is_empty() {
            Ok(())
        } else {
            Err(SimulationError::InvalidConfig(issues))
        }
    }

    /// Hex digest over the resolved configuration and the seed. Any change
    /// to either changes the digest; reruns of the same pair reproduce it.
    pub fn digest_with_seed(&self, seed: u64) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        hasher.update(b"\nseed=");
        hasher.update(seed.to_string().as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Click counts over (state entering Bob's channel, measured basis,
/// measured bit). With Eve active the sent state is her resend, which is
/// what Bob's wavelength-dependent statistics are conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClickMatrix {
    counts: [[[u64; 2]; 2]; 4],
}

impl ClickMatrix {
    pub fn record(&mut self, sent: PolarizationState, basis: Basis, bit: u8) {
        self.counts[sent.index()][basis.index()][(bit & 1) as usize] += 1;
    }

    pub fn count(&self, sent: PolarizationState, basis: Basis, bit: u8) -> u64 {
        self.counts[sent.index()][basis.index()][(bit & 1) as usize]
    }

    pub fn sent_total(&self, sent: PolarizationState) -> u64 {
        self.counts[sent.index()].iter().flatten().sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().flatten().sum()
    }

    fn merge(&mut self, other: &ClickMatrix) {
        for (mine, theirs) in self
            .counts
            .iter_mut()
            .flatten()
            .flatten()
            .zip(other.counts.iter().flatten().flatten())
        {
            *mine += theirs;
        }
    }
}

/// Bob-side outcomes of Eve's resends at one wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResendStats {
    pub sent: u64,
    pub bob_clicks: u64,
    pub bob_rectilinear_clicks: u64,
}

/// Eve's side of the run.
#[derive(Debug, Clone, PartialEq)]
pub struct EveReport {
    /// Pulses Eve intercepted (every pulse Alice sent).
    pub intercepted: u64,
    /// Pulses Eve detected and re-sent toward Bob.
    pub resent: u64,
    /// Sifted bits where Eve had measured in Alice's basis.
    pub basis_match_sifted: u64,
    /// Per resend wavelength: how many pulses went out and what Bob did.
    pub resend_stats: Vec<(Wavelength, ResendStats)>,
}

/// Aggregated result of one seeded run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub total_pulses: u64,
    pub seed: u64,
    pub config_digest: String,
    pub clicks: ClickMatrix,
    /// Clicks split by Alice's preparation basis (rectilinear, diagonal).
    pub clicks_by_alice_basis: [u64; 2],
    pub sifted: SiftedCounts,
    pub eve: Option<EveReport>,
}

impl SimulationReport {
    pub fn clicks_total(&self) -> u64 {
        self.clicks.total()
    }

    pub fn sifted_count(&self) -> u64 {
        self.sifted.total()
    }

    pub fn qber(&self) -> QberEstimate {
        self.sifted.estimate()
    }

    /// Secret-key fraction at the pooled error rate; `None` with no sifted
    /// bits, zero when the rate exceeds one half.
    pub fn key_fraction(&self) -> Option<f64> {
        self.qber().pooled.map(|e| {
            if e > 0.5 {
                0.0
            } else {
                secret_key_fraction(e).expect("rate within the bound's domain")
            }
        })
    }

    /// Fraction of sifted bits where Eve measured in Alice's basis. `None`
    /// without Eve or without sifted bits.
    pub fn eve_basis_match_fraction(&self) -> Option<f64> {
        let eve = self.eve.as_ref()?;
        let sifted = self.sifted.total();
        (sifted > 0).then(|| eve.basis_match_sifted as f64 / sifted as f64)
    }
}

/// The 4x4 click histogram: one row per sent state (H, V, D, A), columns
/// (rectilinear 0, rectilinear 1, diagonal 0, diagonal 1).
pub fn detection_histogram(report: &SimulationReport) -> [[u64; 4]; 4] {
    let mut grid = [[0u64; 4]; 4];
    for state in PolarizationState::ALL {
        for basis in Basis::ALL {
            for bit in [0u8, 1u8] {
                grid[state.index()][basis.index() * 2 + bit as usize] =
                    report.clicks.count(state, basis, bit);
            }
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq)]
struct ShardTally {
    clicks: ClickMatrix,
    clicks_by_alice_basis: [u64; 2],
    sifted: SiftedCounts,
    eve_intercepted: u64,
    eve_resent: u64,
    eve_match_sifted: u64,
    resend_stats: Vec<(Wavelength, ResendStats)>,
}

impl ShardTally {
    fn new(config: &SimulationConfig) -> ShardTally {
        let resend_stats = match &config.eve {
            Some(eve) => eve
                .strategy
                .resend_wavelengths()
                .into_iter()
                .map(|w| (w, ResendStats::default()))
                .collect(),
            None => Vec::new(),
        };
        ShardTally {
            clicks: ClickMatrix::default(),
            clicks_by_alice_basis: [0, 0],
            sifted: SiftedCounts::default(),
            eve_intercepted: 0,
            eve_resent: 0,
            eve_match_sifted: 0,
            resend_stats,
        }
    }

    fn merge(&mut self, other: &ShardTally) {
        self.clicks.merge(&other.clicks);
        for (mine, theirs) in self
            .clicks_by_alice_basis
            .iter_mut()
            .zip(other.clicks_by_alice_basis)
        {
            *mine += theirs;
        }
        self.sifted.merge(&other.sifted);
        self.eve_intercepted += other.eve_intercepted;
        self.eve_resent += other.eve_resent;
        self.eve_match_sifted += other.eve_match_sifted;
        debug_assert_eq!(self.resend_stats.len(), other.resend_stats.len());
        for ((_, mine), (_, theirs)) in self.resend_stats.iter_mut().zip(&other.resend_stats) {
            mine.sent += theirs.sent;
            mine.bob_clicks += theirs.bob_clicks;
            mine.bob_rectilinear_clicks += theirs.bob_rectilinear_clicks;
        }
    }

    fn observe(
        &mut self,
        alice: &AliceRecord,
        sent: PolarizationState,
        eve_basis: Option<Basis>,
        record: &BobRecord,
    ) {
        if let Some((basis, bit)) = record.outcome.click() {
            self.clicks.record(sent, basis, bit);
            self.clicks_by_alice_basis[alice.state.basis().index()] += 1;
            if basis == alice.state.basis() {
                self.sifted.record(basis, bit != alice.state.bit());
                if eve_basis == Some(basis) {
                    self.eve_match_sifted += 1;
                }
            }
        }
    }
}

fn run_shard(
    config: &SimulationConfig,
    seed: u64,
    shard_index: u64,
) -> Result<ShardTally, SimulationError> {
    let mut tally = ShardTally::new(config);
    let mut rng = shard_rng(seed, shard_index);
    let start = shard_index * SHARD_SIZE;
    let end = (start + SHARD_SIZE).min(config.pulses);

    for index in start..end {
        let (pulse, alice) = alice_prepare(&config.source, index, &mut rng);
        match &config.eve {
            None => {
                let link = self_link(config, pulse.wavelength)?;
                let record = bob_measure(
                    index,
                    &pulse,
                    &config.bob.splitter,
                    &config.bob.detector,
                    &link,
                    config.bob.intrinsic_error,
                    &mut rng,
                )?;
                tally.observe(&alice, pulse.polarization, None, &record);
            }
            Some(eve) => {
                tally.eve_intercepted += 1;
                let intercept =
                    eve_intercept(index, &pulse, &eve.strategy, &eve.detector, &mut rng)?;
                let Some(resent) = eve_resend(&intercept, &eve.strategy) else {
                    continue; // lost at Eve: Bob sees nothing this gate
                };
                tally.eve_resent += 1;
                let slot = tally
                    .resend_stats
                    .iter()
                    .position(|(w, _)| *w == resent.wavelength)
                    .expect("resend wavelength comes from the strategy map");
                tally.resend_stats[slot].1.sent += 1;

                let added = eve.strategy.added_attenuation_at(resent.wavelength);
                let link_db = config
                    .bob_link_attenuation(resent.wavelength)
                    .ok_or(OpticsError::UnknownWavelength(resent.wavelength.nm()))?;
                let link = ChannelSpec::new(link_db + added)?;
                let record = bob_measure(
                    index,
                    &resent,
                    &config.bob.splitter,
                    &config.bob.detector,
                    &link,
                    config.bob.intrinsic_error,
                    &mut rng,
                )?;
                if let Some((basis, _)) = record.outcome.click() {
                    let stats = &mut tally.resend_stats[slot].1;
                    stats.bob_clicks += 1;
                    stats.bob_rectilinear_clicks += u64::from(basis == Basis::Rectilinear);
                }
                let eve_basis = intercept.measurement.map(|(basis, _)| basis);
                tally.observe(&alice, resent.polarization, eve_basis, &record);
            }
        }
    }
    Ok(tally)
}

fn self_link(
    config: &SimulationConfig,
    lambda: Wavelength,
) -> Result<ChannelSpec, SimulationError> {
    let db = config
        .bob_link_attenuation(lambda)
        .ok_or(OpticsError::UnknownWavelength(lambda.nm()))?;
    Ok(ChannelSpec::new(db)?)
}

fn assemble(config: &SimulationConfig, seed: u64, tally: ShardTally) -> SimulationReport {
    let eve = config.eve.as_ref().map(|_| EveReport {
        intercepted: tally.eve_intercepted,
        resent: tally.eve_resent,
        basis_match_sifted: tally.eve_match_sifted,
        resend_stats: tally.resend_stats,
    });
    SimulationReport {
        total_pulses: config.pulses,
        seed,
        config_digest: config.digest_with_seed(seed),
        clicks: tally.clicks,
        clicks_by_alice_basis: tally.clicks_by_alice_basis,
        sifted: tally.sifted,
        eve,
    }
}

/// Runs the full protocol `config.pulses` times under `seed`.
///
/// Deterministic: the same config and seed produce the identical report on
/// every run, machine, and thread count. Pulse shards execute in parallel.
pub fn run_simulation(
    config: &SimulationConfig,
    seed: u64,
) -> Result<SimulationReport, SimulationError> {
    config.validate()?;
    let shard_count = config.pulses.div_ceil(SHARD_SIZE);
    let tallies: Vec<ShardTally> = (0..shard_count)
        .into_par_iter()
        .map(|shard| run_shard(config, seed, shard))
        .collect::<Result<_, _>>()?;
    let mut total = ShardTally::new(config);
    for tally in &tallies {
        total.merge(tally);
    }
    Ok(assemble(config, seed, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optics::WavelengthTable;

    fn paper_splitter() -> SplitterSpec {
        SplitterSpec::Table(
            WavelengthTable::new(vec![
                (Wavelength::NM_1290, 0.003),
                (Wavelength::NM_1470, 0.986),
                (Wavelength::NM_1550, 0.5),
            ])
            .unwrap(),
        )
    }

    fn bob_detector() -> DetectorSpec {
        DetectorSpec::new(
            WavelengthTable::new(vec![
                (Wavelength::NM_1290, 0.05),
                (Wavelength::NM_1470, 0.107),
                (Wavelength::NM_1550, 0.121),
            ])
            .unwrap(),
            0.0,
        )
        .unwrap()
    }

    fn no_eve_config(pulses: u64) -> SimulationConfig {
        SimulationConfig {
            source: Source::new(Wavelength::NM_1550, 1.0).unwrap(),
            bob: ReceiverConfig {
                splitter: paper_splitter(),
                detector: bob_detector(),
                intrinsic_error: 0.013,
            },
            bob_link_db: vec![(Wavelength::NM_1550, 10.79)],
            eve: None,
            pulses,
        }
    }

    fn attack_config(pulses: u64) -> SimulationConfig {
        let mut strategy = EveStrategy::default_against(paper_splitter());
        let link = vec![(Wavelength::NM_1470, 3.3), (Wavelength::NM_1290, 0.0)];
        let balanced =
            crate::adversary::balance_attenuation(&strategy, &bob_detector(), &link, 0.01).unwrap();
        strategy.set_added_attenuation(balanced).unwrap();
        SimulationConfig {
            source: Source::new(Wavelength::NM_1550, 1.0).unwrap(),
            bob: ReceiverConfig {
                splitter: paper_splitter(),
                detector: bob_detector(),
                intrinsic_error: 0.0,
            },
            bob_link_db: link,
            eve: Some(EveConfig {
                strategy,
                detector: DetectorSpec::new(
                    WavelengthTable::new(vec![(Wavelength::NM_1550, 1.0)]).unwrap(),
                    0.0,
                )
                .unwrap(),
            }),
            pulses,
        }
    }

    #[test]
    fn zero_pulse_configs_are_rejected() {
        let config = no_eve_config(0);
        match config.validate().unwrap_err() {
            SimulationError::InvalidConfig(issues) => {
                assert!(issues.iter().any(|i| i.path == "pulses"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validation_reports_every_missing_wavelength_with_its_path() {
        let mut config = attack_config(10);
        // Strip Bob's 1290 nm calibration: splitter, detector, and link all
        // lose the diagonal resend wavelength.
        config.bob.splitter = SplitterSpec::Table(
            WavelengthTable::new(vec![
                (Wavelength::NM_1470, 0.986),
                (Wavelength::NM_1550, 0.5),
            ])
            .unwrap(),
        );
        config.bob.detector = DetectorSpec::new(
            WavelengthTable::new(vec![
                (Wavelength::NM_1470, 0.107),
                (Wavelength::NM_1550, 0.121),
            ])
            .unwrap(),
            0.0,
        )
        .unwrap();
        config.bob_link_db = vec![(Wavelength::NM_1470, 3.3)];
        match config.validate().unwrap_err() {
            SimulationError::InvalidConfig(issues) => {
                let paths: Vec<&str> = issues.iter().map(|i| i.path.as_str()).collect();
                assert!(paths.contains(&"bob.splitter"));
                assert!(paths.contains(&"bob.detector"));
                assert!(paths.contains(&"bob_link_db"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validation_checks_eve_devices_at_the_source_wavelength() {
        let mut config = attack_config(10);
        config.eve.as_mut().unwrap().detector = DetectorSpec::new(
            WavelengthTable::new(vec![(Wavelength::NM_1470, 1.0)]).unwrap(),
            0.0,
        )
        .unwrap();
        match config.validate().unwrap_err() {
            SimulationError::InvalidConfig(issues) => {
                assert!(issues.iter().any(|i| i.path == "eve.detector"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn intrinsic_error_outside_unit_interval_is_an_issue() {
        let mut config = no_eve_config(10);
        config.bob.intrinsic_error = 1.7;
        match config.validate().unwrap_err() {
            SimulationError::InvalidConfig(issues) => {
                assert!(issues.iter().any(|i| i.path == "bob.intrinsic_error"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reports_are_reproducible_for_a_seed() {
        let config = no_eve_config(150_000);
        let a = run_simulation(&config, 7).unwrap();
        let b = run_simulation(&config, 7).unwrap();
        assert_eq!(a, b);
        let c = run_simulation(&config, 8).unwrap();
        assert_ne!(a.clicks, c.clicks);
        assert_ne!(a.config_digest, c.config_digest);
    }

    #[test]
    fn parallel_run_equals_serial_shard_merge() {
        let config = attack_config(200_000);
        let parallel = run_simulation(&config, 42).unwrap();
        let mut total = ShardTally::new(&config);
        for shard in 0..config.pulses.div_ceil(SHARD_SIZE) {
            total.merge(&run_shard(&config, 42, shard).unwrap());
        }
        let serial = assemble(&config, 42, total);
        assert_eq!(parallel, serial);
    }

    #[test]
    fn digest_tracks_every_resolved_field_and_the_seed() {
        let base = no_eve_config(1_000);
        let digest = base.digest_with_seed(7);
        assert_eq!(digest.len(), 64);
        assert_eq!(digest, base.digest_with_seed(7));
        assert_ne!(digest, base.digest_with_seed(8));

        let mut more_pulses = base.clone();
        more_pulses.pulses = 2_000;
        assert_ne!(digest, more_pulses.digest_with_seed(7));

        let mut other_error = base.clone();
        other_error.bob.intrinsic_error = 0.014;
        assert_ne!(digest, other_error.digest_with_seed(7));
    }

    #[test]
    fn eve_report_tracks_interceptions_and_resend_wavelengths() {
        let config = attack_config(30_000);
        let report = run_simulation(&config, 5).unwrap();
        let eve = report.eve.as_ref().unwrap();
        assert_eq!(eve.intercepted, 30_000);
        assert!(eve.resent > 0);
        assert!(eve.resent <= eve.intercepted);
        assert_eq!(eve.resend_stats.len(), 2);
        assert_eq!(eve.resend_stats[0].0, Wavelength::NM_1470);
        assert_eq!(eve.resend_stats[1].0, Wavelength::NM_1290);
        let sent: u64 = eve.resend_stats.iter().map(|(_, s)| s.sent).sum();
        assert_eq!(sent, eve.resent);
        let clicks: u64 = eve.resend_stats.iter().map(|(_, s)| s.bob_clicks).sum();
        assert_eq!(clicks, report.clicks_total());
    }

    #[test]
    fn blind_receiver_yields_an_all_zero_histogram() {
        let mut config = no_eve_config(5_000);
        config.bob.detector = DetectorSpec::new(
            WavelengthTable::new(vec![(Wavelength::NM_1550, 0.0)]).unwrap(),
            0.0,
        )
        .unwrap();
        let report = run_simulation(&config, 3).unwrap();
        assert_eq!(report.clicks_total(), 0);
        assert_eq!(detection_histogram(&report), [[0u64; 4]; 4]);
        assert_eq!(report.qber().pooled, None);
        assert_eq!(report.key_fraction(), None);
        assert_eq!(report.eve_basis_match_fraction(), None);
    }

    #[test]
    fn histogram_mirrors_the_click_matrix() {
        let config = no_eve_config(120_000);
        let report = run_simulation(&config, 9).unwrap();
        let grid = detection_histogram(&report);
        let mut total = 0u64;
        for state in PolarizationState::ALL {
            for basis in Basis::ALL {
                for bit in [0u8, 1u8] {
                    let cell = grid[state.index()][basis.index() * 2 + bit as usize];
                    assert_eq!(cell, report.clicks.count(state, basis, bit));
                    total += cell;
                }
            }
        }
        assert_eq!(total, report.clicks_total());
        assert_eq!(
            report.clicks_by_alice_basis[0] + report.clicks_by_alice_basis[1],
            report.clicks_total()
        );
    }
}

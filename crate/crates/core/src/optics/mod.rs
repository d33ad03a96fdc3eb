//! Optical device models: the wavelength-dependent beam splitter, detectors,
//! fiber channels, and weak coherent pulses.
//!
//! The central object is the fused biconical-taper coupler that Bob uses for
//! passive basis choice. Its coupling ratio follows the periodic law
//!
//! ```text
//! r(lambda) = F^2 * sin^2(K * lambda^2.5 / F)
//! ```
//!
//! with `F` the maximum coupling amplitude and `K` a phase coefficient set by
//! the taper geometry. [`fit_coupling_model`] recovers `(F, K)` from measured
//! per-wavelength ratios; see [`fit`] for the search strategy.

mod fit;

pub use fit::{fit_coupling_model, FitCandidate, FitError, FitOutcome};

use rand_core::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::rng::{bernoulli, uniform_f64};

/// Validation failures for optical device descriptions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("wavelength must be positive and finite, got {0} nm")]
    InvalidWavelength(f64),
    #[error("coupling amplitude must be in (0, 1], got {0}")]
    InvalidAmplitude(f64),
    #[error("phase coefficient must be nonnegative and finite, got {0}")]
    InvalidPhaseCoefficient(f64),
    #[error("value {value} at {wavelength_nm} nm is outside [0, 1]")]
    ValueOutOfRange { wavelength_nm: f64, value: f64 },
    #[error("wavelength {0} nm appears more than once in the table")]
    DuplicateWavelength(f64),
    #[error("wavelength {0} nm is not tabulated for this device")]
    UnknownWavelength(f64),
    #[error("per-wavelength table must not be empty")]
    EmptyTable,
    #[error("attenuation must be nonnegative and finite, got {0} dB")]
    InvalidAttenuation(f64),
    #[error("mean photon number must be nonnegative and finite, got {0}")]
    InvalidMeanPhotonNumber(f64),
    #[error("probability must be in [0, 1], got {0}")]
    InvalidProbability(f64),
}

/// An optical wavelength in nanometers. Always positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Wavelength(f64);

impl Wavelength {
    /// Alice's telecom source.
    pub const NM_1550: Wavelength = Wavelength(1550.0);
    /// Resend wavelength steering Bob toward the rectilinear arm.
    pub const NM_1470: Wavelength = Wavelength(1470.0);
    /// Resend wavelength steering Bob toward the diagonal arm.
    pub const NM_1290: Wavelength = Wavelength(1290.0);

    pub fn new(nm: f64) -> Result<Self, OpticsError> {
        if nm.is_finite() && nm > 0.0 {
            Ok(Wavelength(nm))
        } else {
            Err(OpticsError::InvalidWavelength(nm))
        }
    }

    pub fn nm(self) -> f64 {
        self.0
    }

    /// `lambda^2.5`, the phase argument scale of the coupling law.
    fn phase_scale(self) -> f64 {
        self.0 * self.0 * self.0.sqrt()
    }
}

impl std::fmt::Display for Wavelength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} nm", self.0)
    }
}

/// Per-wavelength values measured on a device (coupling ratios, detector
/// efficiencies). Lookup is by exact wavelength; these tables describe
/// discrete calibration points, not a continuum, so there is no
/// interpolation and an untabulated wavelength is an error at the call site.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavelengthTable {
    entries: Vec<(Wavelength, f64)>,
}

impl WavelengthTable {
    /// Builds a table from `(wavelength, value)` pairs. Values must lie in
    /// `[0, 1]` and wavelengths must be distinct. Entries are kept sorted by
    /// wavelength.
    pub fn new(mut entries: Vec<(Wavelength, f64)>) -> Result<Self, OpticsError> {
        if entries.is_empty() {
            return Err(OpticsError::EmptyTable);
        }
        for (w, v) in &entries {
            if !(v.is_finite() && (0.0..=1.0).contains(v)) {
                return Err(OpticsError::ValueOutOfRange {
                    wavelength_nm: w.nm(),
                    value: *v,
                });
            }
        }
        entries.sort_by(|a, b| a.0 .0.total_cmp(&b.0 .0));
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(OpticsError::DuplicateWavelength(pair[0].0.nm()));
            }
        }
        Ok(WavelengthTable { entries })
    }

    pub fn get(&self, lambda: Wavelength) -> Option<f64> {
        self.entries
            .iter()
            .find(|(w, _)| *w == lambda)
            .map(|(_, v)| *v)
    }

    pub fn entries(&self) -> &[(Wavelength, f64)] {
        &self.entries
    }
}

/// Fitted parameters of the periodic coupling law
/// `r(lambda) = F^2 * sin^2(K * lambda^2.5 / F)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingModel {
    max_amplitude: f64,
    phase_coefficient: f64,
}

impl CouplingModel {
    /// `max_amplitude` is `F` in `(0, 1]`; `phase_coefficient` is `K >= 0`
    /// in radians per nm^2.5.
    pub fn new(max_amplitude: f64, phase_coefficient: f64) -> Result<Self, OpticsError> {
        if !(max_amplitude.is_finite() && 0.0 < max_amplitude && max_amplitude <= 1.0) {
            return Err(OpticsError::InvalidAmplitude(max_amplitude));
        }
        if !(phase_coefficient.is_finite() && phase_coefficient >= 0.0) {
            return Err(OpticsError::InvalidPhaseCoefficient(phase_coefficient));
        }
        Ok(CouplingModel {
            max_amplitude,
            phase_coefficient,
        })
    }

    pub fn max_amplitude(&self) -> f64 {
        self.max_amplitude
    }

    pub fn phase_coefficient(&self) -> f64 {
        self.phase_coefficient
    }

    /// Coupling ratio at `lambda`: the probability that a photon exits the
    /// port feeding the rectilinear arm. Always in `[0, F^2]`.
    pub fn coupling_ratio(&self, lambda: Wavelength) -> f64 {
        let phase = self.phase_coefficient * lambda.phase_scale() / self.max_amplitude;
        let amplitude = self.max_amplitude * phase.sin();
        amplitude * amplitude
    }
}

/// Output port of the basis-selecting beam splitter. Port one feeds the
/// rectilinear measurement arm, port two the diagonal arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    One,
    Two,
}

/// Bob's (or Eve's) beam splitter: either measured calibration points or the
/// fitted coupling law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SplitterSpec {
    /// Exact per-wavelength coupling ratios.
    Table(WavelengthTable),
    /// The periodic model, defined at every positive wavelength.
    Model(CouplingModel),
}

impl SplitterSpec {
    /// Probability that a photon at `lambda` exits port one.
    pub fn ratio_at(&self, lambda: Wavelength) -> Result<f64, OpticsError> {
        match self {
            SplitterSpec::Table(table) => table
                .get(lambda)
                .ok_or(OpticsError::UnknownWavelength(lambda.nm())),
            SplitterSpec::Model(model) => Ok(model.coupling_ratio(lambda)),
        }
    }
}

/// Sends one photon at `lambda` through the splitter. Consumes exactly one
/// draw; ratios of 0 or 1 route deterministically.
pub fn route_photon(
    splitter: &SplitterSpec,
    lambda: Wavelength,
    rng: &mut impl RngCore,
) -> Result<Port, OpticsError> {
    let ratio = splitter.ratio_at(lambda)?;
    Ok(if bernoulli(ratio, rng) {
        Port::One
    } else {
        Port::Two
    })
}

/// A gated single-photon detector pair: per-wavelength quantum efficiency
/// plus an independent dark-count probability per gate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectorSpec {
    efficiency: WavelengthTable,
    dark_count_prob: f64,
}

impl DetectorSpec {
    pub fn new(efficiency: WavelengthTable, dark_count_prob: f64) -> Result<Self, OpticsError> {
        if !(dark_count_prob.is_finite() && (0.0..=1.0).contains(&dark_count_prob)) {
            return Err(OpticsError::InvalidProbability(dark_count_prob));
        }
        Ok(DetectorSpec {
            efficiency,
            dark_count_prob,
        })
    }

    pub fn efficiency_at(&self, lambda: Wavelength) -> Result<f64, OpticsError> {
        self.efficiency
            .get(lambda)
            .ok_or(OpticsError::UnknownWavelength(lambda.nm()))
    }

    pub fn dark_count_prob(&self) -> f64 {
        self.dark_count_prob
    }
}

/// A fiber span described by its total attenuation in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelSpec {
    attenuation_db: f64,
}

impl ChannelSpec {
    pub const LOSSLESS: ChannelSpec = ChannelSpec {
        attenuation_db: 0.0,
    };

    pub fn new(attenuation_db: f64) -> Result<Self, OpticsError> {
        if attenuation_db.is_finite() && attenuation_db >= 0.0 {
            Ok(ChannelSpec { attenuation_db })
        } else {
            Err(OpticsError::InvalidAttenuation(attenuation_db))
        }
    }

    pub fn attenuation_db(&self) -> f64 {
        self.attenuation_db
    }

    /// Power transmission `10^(-dB/10)`, in `(0, 1]`.
    pub fn transmission(&self) -> f64 {
        10f64.powf(-self.attenuation_db / 10.0)
    }
}

/// A weak coherent pulse: Poissonian photon statistics around
/// `mean_photon_number`, one polarization, one wavelength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub polarization: crate::protocol::PolarizationState,
    pub wavelength: Wavelength,
    pub mean_photon_number: f64,
}

impl Pulse {
    pub fn new(
        polarization: crate::protocol::PolarizationState,
        wavelength: Wavelength,
        mean_photon_number: f64,
    ) -> Result<Self, OpticsError> {
        if !(mean_photon_number.is_finite() && mean_photon_number >= 0.0) {
            return Err(OpticsError::InvalidMeanPhotonNumber(mean_photon_number));
        }
        Ok(Pulse {
            polarization,
            wavelength,
            mean_photon_number,
        })
    }
}

/// Probability that `pulse` produces at least one click behind `channel`:
/// `1 - (1 - dark) * exp(-mu * t * eta)` with `t` the channel transmission
/// and `eta` the detector efficiency at the pulse wavelength.
///
/// Monotone nondecreasing in `mu`, `t`, `eta`, and the dark-count
/// probability; zero when all of them vanish.
pub fn detection_probability(
    pulse: &Pulse,
    channel: &ChannelSpec,
    detector: &DetectorSpec,
) -> Result<f64, OpticsError> {
    let eta = detector.efficiency_at(pulse.wavelength)?;
    let mean_detected = pulse.mean_photon_number * channel.transmission() * eta;
    Ok(1.0 - (1.0 - detector.dark_count_prob()) * (-mean_detected).exp())
}

/// Number of photons surviving to the detector for one pulse, sampled from a
/// Poisson distribution with mean `mean` by CDF inversion. Consumes exactly
/// one draw; a nonpositive mean yields zero photons without drawing.
pub(crate) fn sample_photon_count(mean: f64, rng: &mut impl RngCore) -> u32 {
    if mean <= 0.0 {
        return 0;
    }
    let u = uniform_f64(rng);
    let mut pmf = (-mean).exp();
    let mut cdf = pmf;
    let mut n = 0u32;
    // The tail beyond n = 1000 carries no representable mass for the photon
    // numbers used here; the cap only guards against a runaway loop when the
    // pmf underflows to zero.
    while u >= cdf && n < 1_000 {
        n += 1;
        pmf *= mean / f64::from(n);
        cdf += pmf;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::PolarizationState;
    use crate::rng::shard_rng;
    use crate::stats::within_three_sigma;

    fn paper_splitter() -> WavelengthTable {
        WavelengthTable::new(vec![
            (Wavelength::NM_1290, 0.003),
            (Wavelength::NM_1470, 0.986),
            (Wavelength::NM_1550, 0.5),
        ])
        .unwrap()
    }

    #[test]
    fn wavelength_rejects_nonpositive_and_nonfinite() {
        assert!(Wavelength::new(1550.0).is_ok());
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(Wavelength::new(bad).is_err());
        }
    }

    #[test]
    fn table_lookup_is_exact_match_only() {
        let table = paper_splitter();
        assert_eq!(table.get(Wavelength::NM_1470), Some(0.986));
        assert_eq!(table.get(Wavelength::new(1471.0).unwrap()), None);
    }

    #[test]
    fn table_rejects_bad_entries() {
        let w = Wavelength::NM_1550;
        assert_eq!(
            WavelengthTable::new(vec![]).unwrap_err(),
            OpticsError::EmptyTable
        );
        assert!(matches!(
            WavelengthTable::new(vec![(w, 1.2)]).unwrap_err(),
            OpticsError::ValueOutOfRange { .. }
        ));
        assert_eq!(
            WavelengthTable::new(vec![(w, 0.4), (w, 0.4)]).unwrap_err(),
            OpticsError::DuplicateWavelength(1550.0)
        );
    }

    #[test]
    fn coupling_model_validates_parameters() {
        assert!(CouplingModel::new(0.9943, 4.7066e-7).is_ok());
        assert!(CouplingModel::new(0.0, 1e-7).is_err());
        assert!(CouplingModel::new(1.1, 1e-7).is_err());
        assert!(CouplingModel::new(0.5, -1e-7).is_err());
        assert!(CouplingModel::new(0.5, f64::NAN).is_err());
    }

    #[test]
    fn coupling_ratio_zero_phase_coefficient_is_flat_zero() {
        let model = CouplingModel::new(0.8, 0.0).unwrap();
        for nm in [1200.0, 1550.0, 1700.0] {
            assert_eq!(model.coupling_ratio(Wavelength::new(nm).unwrap()), 0.0);
        }
    }

    #[test]
    fn coupling_ratio_peaks_at_amplitude_squared() {
        // Choose K so the phase at 1550 nm is exactly pi/2: K = F * (pi/2) / 1550^2.5.
        let f = 0.9;
        let k = f * std::f64::consts::FRAC_PI_2 / 1550f64.powf(2.5);
        let model = CouplingModel::new(f, k).unwrap();
        let r = model.coupling_ratio(Wavelength::NM_1550);
        assert!((r - f * f).abs() < 1e-12);
    }

    #[test]
    fn splitter_table_errors_on_unknown_wavelength() {
        let splitter = SplitterSpec::Table(paper_splitter());
        let err = splitter
            .ratio_at(Wavelength::new(1400.0).unwrap())
            .unwrap_err();
        assert_eq!(err, OpticsError::UnknownWavelength(1400.0));
    }

    #[test]
    fn routing_follows_the_tabulated_ratio() {
        let splitter = SplitterSpec::Table(paper_splitter());
        let mut rng = shard_rng(11, 0);
        let n = 1_000_000u64;
        let mut port_one = 0u64;
        for _ in 0..n {
            if route_photon(&splitter, Wavelength::NM_1470, &mut rng).unwrap() == Port::One {
                port_one += 1;
            }
        }
        assert!(within_three_sigma(port_one, n, 0.986));
    }

    #[test]
    fn routing_is_deterministic_at_ratio_extremes() {
        let table =
            WavelengthTable::new(vec![(Wavelength::NM_1470, 1.0), (Wavelength::NM_1290, 0.0)])
                .unwrap();
        let splitter = SplitterSpec::Table(table);
        let mut rng = shard_rng(3, 0);
        for _ in 0..1_000 {
            assert_eq!(
                route_photon(&splitter, Wavelength::NM_1470, &mut rng).unwrap(),
                Port::One
            );
            assert_eq!(
                route_photon(&splitter, Wavelength::NM_1290, &mut rng).unwrap(),
                Port::Two
            );
        }
    }

    #[test]
    fn transmission_matches_decibel_definition() {
        assert_eq!(ChannelSpec::LOSSLESS.transmission(), 1.0);
        let t = ChannelSpec::new(10.79).unwrap().transmission();
        assert!((t - 0.08336811846196344).abs() < 1e-15);
        let t = ChannelSpec::new(3.3).unwrap().transmission();
        assert!((t - 0.46773514128719823).abs() < 1e-15);
    }

    #[test]
    fn channel_rejects_negative_attenuation() {
        assert!(ChannelSpec::new(-0.1).is_err());
        assert!(ChannelSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn detection_probability_matches_closed_form() {
        let detector = DetectorSpec::new(
            WavelengthTable::new(vec![(Wavelength::NM_1550, 0.121)]).unwrap(),
            0.0,
        )
        .unwrap();
        let pulse = Pulse::new(PolarizationState::H, Wavelength::NM_1550, 1.0).unwrap();
        let channel = ChannelSpec::new(10.79).unwrap();
        let p = detection_probability(&pulse, &channel, &detector).unwrap();
        assert!((p - 0.010036833730361239).abs() < 1e-15);

        let blind = DetectorSpec::new(
            WavelengthTable::new(vec![(Wavelength::NM_1550, 0.0)]).unwrap(),
            0.0,
        )
        .unwrap();
        assert_eq!(
            detection_probability(&pulse, &channel, &blind).unwrap(),
            0.0
        );
    }

    #[test]
    fn detection_probability_includes_dark_counts() {
        let detector = DetectorSpec::new(
            WavelengthTable::new(vec![(Wavelength::NM_1550, 0.0)]).unwrap(),
            1e-3,
        )
        .unwrap();
        let pulse = Pulse::new(PolarizationState::H, Wavelength::NM_1550, 1.0).unwrap();
        let p = detection_probability(&pulse, &ChannelSpec::LOSSLESS, &detector).unwrap();
        assert!((p - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn photon_count_sampler_matches_poisson_mean() {
        let mut rng = shard_rng(5, 0);
        let mean = 2.0;
        let n = 200_000;
        let mut total = 0u64;
        let mut zeros = 0u64;
        for _ in 0..n {
            let c = sample_photon_count(mean, &mut rng);
            total += u64::from(c);
            if c == 0 {
                zeros += 1;
            }
        }
        let avg = total as f64 / n as f64;
        // Poisson std of the sample mean: sqrt(mean / n).
        assert!((avg - mean).abs() < 3.0 * (mean / n as f64).sqrt());
        assert!(within_three_sigma(zeros, n, (-mean).exp()));
    }

    #[test]
    fn photon_count_sampler_handles_extremes() {
        let mut rng = shard_rng(6, 0);
        assert_eq!(sample_photon_count(0.0, &mut rng), 0);
        // Enormous mean: the pmf underflows but a click is still certain.
        assert!(sample_photon_count(1e9, &mut rng) >= 1);
    }

    #[test]
    fn pulse_rejects_invalid_mean_photon_number() {
        for bad in [-1.0, f64::NAN, f64::INFINITY] {
            assert!(Pulse::new(PolarizationState::H, Wavelength::NM_1550, bad).is_err());
        }
    }
}

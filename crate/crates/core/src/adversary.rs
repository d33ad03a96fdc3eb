//! The intercept-and-resend eavesdropper with per-basis resend wavelengths.
//!
//! Eve taps the fiber close to Alice, measures each pulse with a receiver of
//! the same passive design as Bob's, and re-prepares her result toward Bob.
//! The twist is spectral: rectilinear results go out on a wavelength where
//! Bob's splitter strongly prefers the rectilinear arm, diagonal results on
//! one where it prefers the diagonal arm, so Bob usually measures in the
//! basis Eve already knows. Extra attenuation per resend wavelength hides
//! the brighter resend pulses by pinning Bob's click rate at the no-attack
//! value.

use rand_core::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::optics::{
    detection_probability, ChannelSpec, DetectorSpec, OpticsError, Pulse, SplitterSpec, Wavelength,
};
use crate::protocol::{bob_measure, Basis, PolarizationState, ProtocolError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdversaryError {
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error("added attenuation at {wavelength_nm} nm must be nonnegative and finite, got {db} dB")]
    InvalidAddedAttenuation { wavelength_nm: f64, db: f64 },
    #[error("duplicate added-attenuation entry for {0} nm")]
    DuplicateAttenuationEntry(f64),
    #[error("target click probability must be in (0, 1), got {0}")]
    InvalidTargetClickRate(f64),
    #[error(
        "target click probability {target} is unreachable at {wavelength_nm} nm: \
         the unattenuated rate is only {unattenuated}"
    )]
    TargetAboveUnattenuatedRate {
        wavelength_nm: f64,
        target: f64,
        unattenuated: f64,
    },
    #[error(
        "target click probability {target} is below the dark-count floor {floor} \
         at {wavelength_nm} nm; no attenuation reaches it"
    )]
    TargetBelowDarkFloor {
        wavelength_nm: f64,
        target: f64,
        floor: f64,
    },
}

/// Eve's full attack configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EveStrategy {
    resend_rectilinear: Wavelength,
    resend_diagonal: Wavelength,
    resend_mean_photon_number: f64,
    /// Attenuation Eve inserts after her resend lasers, per wavelength.
    added_attenuation_db: Vec<(Wavelength, f64)>,
    splitter: SplitterSpec,
    /// The short tap between Alice and Eve's receiver.
    channel_from_alice: ChannelSpec,
}

impl EveStrategy {
    pub fn new(
        resend_rectilinear: Wavelength,
        resend_diagonal: Wavelength,
        resend_mean_photon_number: f64,
        added_attenuation_db: Vec<(Wavelength, f64)>,
        splitter: SplitterSpec,
        channel_from_alice: ChannelSpec,
    ) -> Result<Self, AdversaryError> {
        if !(resend_mean_photon_number.is_finite() && resend_mean_photon_number >= 0.0) {
            return Err(OpticsError::InvalidMeanPhotonNumber(resend_mean_photon_number).into());
        }
        validate_attenuation_entries(&added_attenuation_db)?;
        Ok(EveStrategy {
            resend_rectilinear,
            resend_diagonal,
            resend_mean_photon_number,
            added_attenuation_db,
            splitter,
            channel_from_alice,
        })
    }

    /// The canonical attack against a splitter of the given design: resend
    /// rectilinear results at 1470 nm and diagonal ones at 1290 nm with mean
    /// photon number 2, from a tap right next to Alice.
    pub fn default_against(splitter: SplitterSpec) -> Self {
        EveStrategy {
            resend_rectilinear: Wavelength::NM_1470,
            resend_diagonal: Wavelength::NM_1290,
            resend_mean_photon_number: 2.0,
            added_attenuation_db: Vec::new(),
            splitter,
            channel_from_alice: ChannelSpec::LOSSLESS,
        }
    }

    pub fn resend_wavelength(&self, basis: Basis) -> Wavelength {
        match basis {
            Basis::Rectilinear => self.resend_rectilinear,
            Basis::Diagonal => self.resend_diagonal,
        }
    }

    /// The distinct resend wavelengths, rectilinear first.
    pub fn resend_wavelengths(&self) -> Vec<Wavelength> {
        let mut out = vec![self.resend_rectilinear];
        if self.resend_diagonal != self.resend_rectilinear {
            out.push(self.resend_diagonal);
        }
        out
    }

    pub fn resend_mean_photon_number(&self) -> f64 {
        self.resend_mean_photon_number
    }

    /// Attenuation Eve adds at `lambda`; zero when no entry exists.
    pub fn added_attenuation_at(&self, lambda: Wavelength) -> f64 {
        self.added_attenuation_db
            .iter()
            .find(|(w, _)| *w == lambda)
            .map_or(0.0, |(_, db)| *db)
    }

    pub fn added_attenuation_entries(&self) -> &[(Wavelength, f64)] {
        &self.added_attenuation_db
    }

    /// Replaces the added-attenuation table, typically with the output of
    /// [`balance_attenuation`].
    pub fn set_added_attenuation(
        &mut self,
        entries: Vec<(Wavelength, f64)>,
    ) -> Result<(), AdversaryError> {
        validate_attenuation_entries(&entries)?;
        self.added_attenuation_db = entries;
        Ok(())
    }

    pub fn splitter(&self) -> &SplitterSpec {
        &self.splitter
    }

    pub fn channel_from_alice(&self) -> &ChannelSpec {
        &self.channel_from_alice
    }
}

fn validate_attenuation_entries(entries: &[(Wavelength, f64)]) -> Result<(), AdversaryError> {
    for (i, (w, db)) in entries.iter().enumerate() {
        if !(db.is_finite() && *db >= 0.0) {
            return Err(AdversaryError::InvalidAddedAttenuation {
                wavelength_nm: w.nm(),
                db: *db,
            });
        }
        if entries[i + 1..].iter().any(|(v, _)| v == w) {
            return Err(AdversaryError::DuplicateAttenuationEntry(w.nm()));
        }
    }
    Ok(())
}

/// Eve's measurement of one intercepted pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EveRecord {
    pub index: u64,
    /// Basis and bit when Eve's detector fired; `None` on a lost pulse.
    pub measurement: Option<(Basis, u8)>,
}

impl EveRecord {
    pub fn detected(&self) -> bool {
        self.measurement.is_some()
    }
}

/// Eve measures an intercepted pulse with her own passive receiver. The
/// measurement physics is exactly Bob's, with Eve's splitter, detector, and
/// tap channel, and no intrinsic misalignment.
pub fn eve_intercept(
    index: u64,
    pulse: &Pulse,
    strategy: &EveStrategy,
    detector: &DetectorSpec,
    rng: &mut impl RngCore,
) -> Result<EveRecord, ProtocolError> {
    let record = bob_measure(
        index,
        pulse,
        &strategy.splitter,
        detector,
        &strategy.channel_from_alice,
        0.0,
        rng,
    )?;
    Ok(EveRecord {
        index,
        measurement: record.outcome.click(),
    })
}

/// Re-prepares Eve's result toward Bob: the polarization she measured, at
/// the resend wavelength assigned to her measurement basis. A pulse Eve did
/// not detect is simply lost; nothing is sent.
pub fn eve_resend(record: &EveRecord, strategy: &EveStrategy) -> Option<Pulse> {
    record.measurement.map(|(basis, bit)| Pulse {
        polarization: PolarizationState::from_basis_bit(basis, bit),
        wavelength: strategy.resend_wavelength(basis),
        mean_photon_number: strategy.resend_mean_photon_number,
    })
}

/// Click probability at Bob for a resend pulse at `lambda` when Eve adds
/// `added_db` of attenuation on top of the fiber at `link_db`.
fn resend_click_probability(
    lambda: Wavelength,
    mean_photon_number: f64,
    link_db: f64,
    added_db: f64,
    bob_detector: &DetectorSpec,
) -> Result<f64, OpticsError> {
    let pulse = Pulse::new(PolarizationState::H, lambda, mean_photon_number)?;
    let channel = ChannelSpec::new(link_db + added_db)?;
    detection_probability(&pulse, &channel, bob_detector)
}

/// Finds, for each resend wavelength, the added attenuation that pins Bob's
/// click probability to `target_click_rate`.
///
/// The click probability is strictly decreasing in attenuation, so a plain
/// bisection converges to machine precision; results reproduce the target to
/// well under 1e-6. `bob_link_db` carries the fiber attenuation Bob's pulses
/// traverse, keyed by wavelength like the detector table. Returns one
/// `(wavelength, dB)` entry per distinct resend wavelength, in
/// [`EveStrategy::resend_wavelengths`] order.
pub fn balance_attenuation(
    strategy: &EveStrategy,
    bob_detector: &DetectorSpec,
    bob_link_db: &[(Wavelength, f64)],
    target_click_rate: f64,
) -> Result<Vec<(Wavelength, f64)>, AdversaryError> {
    if !(target_click_rate.is_finite() && 0.0 < target_click_rate && target_click_rate < 1.0) {
        return Err(AdversaryError::InvalidTargetClickRate(target_click_rate));
    }
    let mu = strategy.resend_mean_photon_number;
    let mut out = Vec::new();
    for lambda in strategy.resend_wavelengths() {
        let link_db = bob_link_db
            .iter()
            .find(|(w, _)| *w == lambda)
            .map(|(_, db)| *db)
            .ok_or(OpticsError::UnknownWavelength(lambda.nm()))?;
        let click_at =
            |added: f64| resend_click_probability(lambda, mu, link_db, added, bob_detector);

        let unattenuated = click_at(0.0)?;
        if unattenuated < target_click_rate {
            return Err(AdversaryError::TargetAboveUnattenuatedRate {
                wavelength_nm: lambda.nm(),
                target: target_click_rate,
                unattenuated,
            });
        }
        if unattenuated == target_click_rate {
            out.push((lambda, 0.0));
            continue;
        }
        // Infinite attenuation leaves only dark counts.
        let floor = bob_detector.dark_count_prob();
        if target_click_rate <= floor {
            return Err(AdversaryError::TargetBelowDarkFloor {
                wavelength_nm: lambda.nm(),
                target: target_click_rate,
                floor,
            });
        }

        let mut hi = 10.0;
        while click_at(hi)? > target_click_rate {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(AdversaryError::TargetBelowDarkFloor {
                    wavelength_nm: lambda.nm(),
                    target: target_click_rate,
                    floor,
                });
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if click_at(mid)? > target_click_rate {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push((lambda, 0.5 * (lo + hi)));
    }
    Ok(out)
}

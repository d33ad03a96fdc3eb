//! The four-state protocol: Alice's source, Bob's passive receiver, sifting,
//! and the error-rate / key-rate arithmetic.
//!
//! Bob has no basis switch. Each arriving photon is routed by the beam
//! splitter: port one feeds the rectilinear analyzer, port two the diagonal
//! one. All basis statistics downstream of the splitter are therefore set by
//! the coupling ratio at the photon's wavelength.

use rand_core::RngCore;
use serde::Serialize;
use thiserror::Error;

use crate::optics::{
    detection_probability, route_photon, sample_photon_count, ChannelSpec, DetectorSpec,
    OpticsError, Port, Pulse, SplitterSpec, Wavelength,
};
use crate::rng::{bernoulli, uniform_choice4};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error("record lists differ in length: {alice} from Alice, {bob} from Bob")]
    LengthMismatch { alice: usize, bob: usize },
    #[error("records misaligned at position {position}: Alice pulse {alice_index}, Bob pulse {bob_index}")]
    IndexMismatch {
        position: usize,
        alice_index: u64,
        bob_index: u64,
    },
    #[error("error rate must lie in [0, 0.5] for the key-rate bound, got {0}")]
    ErrorRateOutOfRange(f64),
}

/// Measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    Rectilinear,
    Diagonal,
}

impl Basis {
    pub const ALL: [Basis; 2] = [Basis::Rectilinear, Basis::Diagonal];

    /// The basis measured behind a given splitter port.
    pub fn from_port(port: Port) -> Basis {
        match port {
            Port::One => Basis::Rectilinear,
            Port::Two => Basis::Diagonal,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Basis::Rectilinear => 0,
            Basis::Diagonal => 1,
        }
    }
}

/// The four signal states: horizontal, vertical, and the two diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PolarizationState {
    H,
    V,
    D,
    A,
}

impl PolarizationState {
    pub const ALL: [PolarizationState; 4] = [
        PolarizationState::H,
        PolarizationState::V,
        PolarizationState::D,
        PolarizationState::A,
    ];

    pub fn basis(self) -> Basis {
        match self {
            PolarizationState::H | PolarizationState::V => Basis::Rectilinear,
            PolarizationState::D | PolarizationState::A => Basis::Diagonal,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            PolarizationState::H | PolarizationState::D => 0,
            PolarizationState::V | PolarizationState::A => 1,
        }
    }

    pub fn from_basis_bit(basis: Basis, bit: u8) -> PolarizationState {
        match (basis, bit & 1) {
            (Basis::Rectilinear, 0) => PolarizationState::H,
            (Basis::Rectilinear, _) => PolarizationState::V,
            (Basis::Diagonal, 0) => PolarizationState::D,
            (Basis::Diagonal, _) => PolarizationState::A,
        }
    }

    pub fn index(self) -> usize {
        match self {
            PolarizationState::H => 0,
            PolarizationState::V => 1,
            PolarizationState::D => 2,
            PolarizationState::A => 3,
        }
    }
}

/// Probability that a photon prepared in `incident` and analyzed in `basis`
/// produces outcome `bit`: certainty in the matching basis, a coin flip in
/// the conjugate one.
pub fn measurement_outcome_prob(incident: PolarizationState, basis: Basis, bit: u8) -> f64 {
    if incident.basis() == basis {
        if incident.bit() == bit & 1 {
            1.0
        } else {
            0.0
        }
    } else {
        0.5
    }
}

/// Alice's record of one emitted pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AliceRecord {
    pub index: u64,
    pub state: PolarizationState,
}

/// What Bob registered for one pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BobOutcome {
    NoClick,
    Click {
        basis: Basis,
        bit: u8,
    },
    /// More than one elementary event fired in the same gate (multiple
    /// photons, or a photon plus a dark count); squashed to one basis/bit.
    MultiClick {
        basis: Basis,
        bit: u8,
    },
}

impl BobOutcome {
    /// The registered basis and bit, for any kind of click.
    pub fn click(&self) -> Option<(Basis, u8)> {
        match *self {
            BobOutcome::NoClick => None,
            BobOutcome::Click { basis, bit } | BobOutcome::MultiClick { basis, bit } => {
                Some((basis, bit))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BobRecord {
    pub index: u64,
    pub outcome: BobOutcome,
}

/// One position of the sifted key: Bob clicked and his basis matched
/// Alice's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiftedPair {
    pub index: u64,
    pub basis: Basis,
    pub alice_bit: u8,
    pub bob_bit: u8,
}

/// Alice's pulsed source: uniform over the four states, fixed wavelength and
/// mean photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Source {
    wavelength: Wavelength,
    mean_photon_number: f64,
}

impl Source {
    pub fn new(wavelength: Wavelength, mean_photon_number: f64) -> Result<Self, OpticsError> {
        if !(mean_photon_number.is_finite() && mean_photon_number >= 0.0) {
            return Err(OpticsError::InvalidMeanPhotonNumber(mean_photon_number));
        }
        Ok(Source {
            wavelength,
            mean_photon_number,
        })
    }

    pub fn wavelength(&self) -> Wavelength {
        self.wavelength
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.mean_photon_number
    }
}

/// Draws one pulse from Alice's source. Consumes exactly one random draw.
pub fn alice_prepare(source: &Source, index: u64, rng: &mut impl RngCore) -> (Pulse, AliceRecord) {
    let state = PolarizationState::ALL[uniform_choice4(rng) as usize];
    let pulse = Pulse {
        polarization: state,
        wavelength: source.wavelength,
        mean_photon_number: source.mean_photon_number,
    };
    (pulse, AliceRecord { index, state })
}

fn sample_measured_bit(incident: PolarizationState, basis: Basis, rng: &mut impl RngCore) -> u8 {
    let p_zero = measurement_outcome_prob(incident, basis, 0);
    if p_zero >= 1.0 {
        0
    } else if p_zero <= 0.0 {
        1
    } else if bernoulli(p_zero, rng) {
        0
    } else {
        1
    }
}

/// Propagates one pulse through `channel` into the passive receiver.
///
/// The pipeline is: Poissonian survival of the pulse's photons through the
/// channel and detector efficiency, an independent dark-count chance, then
/// (for any click) wavelength-dependent routing, the polarization
/// measurement, and finally an intrinsic bit-flip with probability
/// `intrinsic_error` modeling receiver misalignment. A gate where only a
/// dark count fired carries no polarization information: basis and bit come
/// out uniform. Gates with several elementary events squash to
/// [`BobOutcome::MultiClick`].
pub fn bob_measure(
    index: u64,
    pulse: &Pulse,
    splitter: &SplitterSpec,
    detector: &DetectorSpec,
    channel: &ChannelSpec,
    intrinsic_error: f64,
    rng: &mut impl RngCore,
) -> Result<BobRecord, ProtocolError> {
    if !(intrinsic_error.is_finite() && (0.0..=1.0).contains(&intrinsic_error)) {
        return Err(OpticsError::InvalidProbability(intrinsic_error).into());
    }
    // Resolve both device tables up front so an unknown wavelength fails
    // loudly instead of depending on whether this particular pulse clicked.
    splitter.ratio_at(pulse.wavelength)?;
    let efficiency = detector.efficiency_at(pulse.wavelength)?;

    let mean_detected = pulse.mean_photon_number * channel.transmission() * efficiency;
    let photons = sample_photon_count(mean_detected, rng);
    let dark = detector.dark_count_prob() > 0.0 && bernoulli(detector.dark_count_prob(), rng);

    let outcome = if photons == 0 && !dark {
        BobOutcome::NoClick
    } else if photons == 0 {
        // Dark count only: no photon reached the splitter.
        let basis = if bernoulli(0.5, rng) {
            Basis::Rectilinear
        } else {
            Basis::Diagonal
        };
        let bit = (rng.next_u64() & 1) as u8;
        BobOutcome::Click { basis, bit }
    } else {
        let port = route_photon(splitter, pulse.wavelength, rng)?;
        let basis = Basis::from_port(port);
        let mut bit = sample_measured_bit(pulse.polarization, basis, rng);
        if intrinsic_error > 0.0 && bernoulli(intrinsic_error, rng) {
            bit ^= 1;
        }
        if photons >= 2 || dark {
            BobOutcome::MultiClick { basis, bit }
        } else {
            BobOutcome::Click { basis, bit }
        }
    };

    Ok(BobRecord { index, outcome })
}

/// Convenience wrapper: the click probability of `bob_measure`'s front end.
pub fn click_probability(
    pulse: &Pulse,
    channel: &ChannelSpec,
    detector: &DetectorSpec,
) -> Result<f64, ProtocolError> {
    Ok(detection_probability(pulse, channel, detector)?)
}

/// Keeps the positions where Bob clicked in Alice's basis. The two record
/// lists must be index-aligned.
pub fn sift(alice: &[AliceRecord], bob: &[BobRecord]) -> Result<Vec<SiftedPair>, ProtocolError> {
    if alice.len() != bob.len() {
        return Err(ProtocolError::LengthMismatch {
            alice: alice.len(),
            bob: bob.len(),
        });
    }
    let mut sifted = Vec::new();
    for (position, (a, b)) in alice.iter().zip(bob).enumerate() {
        if a.index != b.index {
            return Err(ProtocolError::IndexMismatch {
                position,
                alice_index: a.index,
                bob_index: b.index,
            });
        }
        if let Some((basis, bit)) = b.outcome.click() {
            if basis == a.state.basis() {
                sifted.push(SiftedPair {
                    index: a.index,
                    basis,
                    alice_bit: a.state.bit(),
                    bob_bit: bit,
                });
            }
        }
    }
    Ok(sifted)
}

/// Per-basis tallies over a sifted key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SiftedCounts {
    pub rect_total: u64,
    pub rect_errors: u64,
    pub diag_total: u64,
    pub diag_errors: u64,
}

impl SiftedCounts {
    pub fn record(&mut self, basis: Basis, error: bool) {
        match basis {
            Basis::Rectilinear => {
                self.rect_total += 1;
                self.rect_errors += u64::from(error);
            }
            Basis::Diagonal => {
                self.diag_total += 1;
                self.diag_errors += u64::from(error);
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.rect_total + self.diag_total
    }

    pub fn errors(&self) -> u64 {
        self.rect_errors + self.diag_errors
    }

    pub fn merge(&mut self, other: &SiftedCounts) {
        self.rect_total += other.rect_total;
        self.rect_errors += other.rect_errors;
        self.diag_total += other.diag_total;
        self.diag_errors += other.diag_errors;
    }

    /// Error rates from the tallies. Rates over an empty denominator are
    /// `None` rather than zero: an unmeasured quantity is not a perfect one.
    pub fn estimate(&self) -> QberEstimate {
        let ratio = |errors: u64, total: u64| (total > 0).then(|| errors as f64 / total as f64);
        let rectilinear = ratio(self.rect_errors, self.rect_total);
        let diagonal = ratio(self.diag_errors, self.diag_total);
        let pooled = ratio(self.errors(), self.total());
        let basis_averaged = match (rectilinear, diagonal) {
            (Some(r), Some(d)) => Some(0.5 * (r + d)),
            _ => None,
        };
        QberEstimate {
            pooled,
            rectilinear,
            diagonal,
            basis_averaged,
            counts: *self,
        }
    }
}

/// Error-rate estimates over a sifted key.
///
/// `pooled` weights every sifted bit equally; `basis_averaged` is the
/// unweighted mean of the two per-basis rates and is the estimator the
/// closed-form attack analysis predicts. The two differ whenever the attack
/// skews how often each basis sifts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QberEstimate {
    pub pooled: Option<f64>,
    pub rectilinear: Option<f64>,
    pub diagonal: Option<f64>,
    pub basis_averaged: Option<f64>,
    pub counts: SiftedCounts,
}

/// Tallies a sifted key into per-basis totals and error rates.
pub fn estimate_qber(sifted: &[SiftedPair]) -> QberEstimate {
    let mut counts = SiftedCounts::default();
    for pair in sifted {
        counts.record(pair.basis, pair.alice_bit != pair.bob_bit);
    }
    counts.estimate()
}

/// Binary entropy in bits. Defined as 0 at the endpoints.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2()) - (1.0 - p) * (1.0 - p).log2()
}

/// Asymptotic secret-key fraction `max(0, 1 - 2 H2(e))` for one-way
/// postprocessing at error rate `e`. Errors outside `[0, 0.5]`, where the
/// bound is not meaningful.
pub fn secret_key_fraction(error_rate: f64) -> Result<f64, ProtocolError> {
    if !(0.0..=0.5).contains(&error_rate) {
        return Err(ProtocolError::ErrorRateOutOfRange(error_rate));
    }
    Ok((1.0 - 2.0 * binary_entropy(error_rate)).max(0.0))
}

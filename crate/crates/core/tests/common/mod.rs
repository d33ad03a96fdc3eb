//! Shared fixtures for the integration tests: the measured coupler and
//! detector tables and the canonical no-attack / attack configurations.

#![allow(dead_code)]

use wdbs_core::adversary::{balance_attenuation, EveStrategy};
use wdbs_core::optics::{DetectorSpec, SplitterSpec, Wavelength, WavelengthTable};
use wdbs_core::protocol::Source;
use wdbs_core::simulation::{EveConfig, ReceiverConfig, SimulationConfig};

/// The measured coupling ratios of the receiver's beam splitter.
pub fn splitter_table() -> WavelengthTable {
    WavelengthTable::new(vec![
        (Wavelength::NM_1290, 0.003),
        (Wavelength::NM_1470, 0.986),
        (Wavelength::NM_1550, 0.5),
    ])
    .unwrap()
}

pub fn splitter() -> SplitterSpec {
    SplitterSpec::Table(splitter_table())
}

/// The measured detector efficiencies behind Bob's splitter.
pub fn bob_detector() -> DetectorSpec {
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

/// A lossless, perfectly efficient detector at one wavelength.
pub fn unit_detector_at(lambda: Wavelength) -> DetectorSpec {
    DetectorSpec::new(WavelengthTable::new(vec![(lambda, 1.0)]).unwrap(), 0.0).unwrap()
}

/// Fiber from Alice's lab to Bob's, as deployed without an attack.
pub fn baseline_link() -> Vec<(Wavelength, f64)> {
    vec![(Wavelength::NM_1550, 10.79)]
}

/// The same fiber at Eve's resend wavelengths.
pub fn attack_link() -> Vec<(Wavelength, f64)> {
    vec![(Wavelength::NM_1470, 3.3), (Wavelength::NM_1290, 0.0)]
}

/// No eavesdropper: Alice straight into Bob over the deployed fiber.
pub fn no_eve_config(pulses: u64, intrinsic_error: f64) -> SimulationConfig {
    SimulationConfig {
        source: Source::new(Wavelength::NM_1550, 1.0).unwrap(),
        bob: ReceiverConfig {
            splitter: splitter(),
            detector: bob_detector(),
            intrinsic_error,
        },
        bob_link_db: baseline_link(),
        eve: None,
        pulses,
    }
}

/// The full attack: Eve next to Alice with a twin receiver, resends at the
/// steering wavelengths with mean photon number 2, added attenuation
/// balanced so Bob clicks at the no-attack rate of 1%.
pub fn attack_config(pulses: u64, intrinsic_error: f64) -> SimulationConfig {
    let mut strategy = EveStrategy::default_against(splitter());
    let balanced = balance_attenuation(&strategy, &bob_detector(), &attack_link(), 0.01).unwrap();
    strategy.set_added_attenuation(balanced).unwrap();
    SimulationConfig {
        source: Source::new(Wavelength::NM_1550, 1.0).unwrap(),
        bob: ReceiverConfig {
            splitter: splitter(),
            detector: bob_detector(),
            intrinsic_error,
        },
        bob_link_db: attack_link(),
        eve: Some(EveConfig {
            strategy,
            detector: unit_detector_at(Wavelength::NM_1550),
        }),
        pulses,
    }
}

//! Simulation and analysis of the wavelength-dependent beam-splitter attack
//! on polarization BB84 with passive basis choice.
//!
//! Bob's receiver picks the measurement basis passively: a fused-coupler beam
//! splitter routes each incoming photon either to the rectilinear or to the
//! diagonal measurement arm. The coupling ratio of such a coupler is a strong
//! function of wavelength, so an eavesdropper who intercepts near Alice and
//! re-sends each measured state at a carefully chosen wavelength can steer
//! Bob's basis choice toward her own and hide an intercept-and-resend attack
//! inside the receiver's expected error rate.
//!
//! The crate splits into:
//! - [`optics`]: splitter, detector and channel models, pulses, and the
//!   periodic coupling-ratio law with its least-squares fit,
//! - [`protocol`]: the four-state source, the passive receiver, sifting and
//!   key-rate math,
//! - [`adversary`]: the intercept-and-resend strategy with per-basis resend
//!   wavelengths and attenuation balancing,
//! - [`analysis`]: closed-form attack error rates, the exact outcome
//!   enumeration, and parameter sweeps,
//! - [`simulation`]: the seeded end-to-end Monte Carlo driver,
//! - [`rng`] and [`stats`]: deterministic random streams and binomial
//!   acceptance bands for statistical tests.

pub mod adversary;
pub mod analysis;
pub mod optics;
pub mod protocol;
pub mod rng;
pub mod simulation;
pub mod stats;

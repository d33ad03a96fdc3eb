//! Closed-form analysis of the wavelength-steering attack.
//!
//! Everything here is conditional on the attack geometry: Eve measures at
//! the source wavelength, where her splitter is even, and re-sends toward
//! Bob at one wavelength per basis. Bob's splitter shows coupling ratio `r1`
//! at the rectilinear-resend wavelength and `r2` at the diagonal-resend one.
//! With `r1` near 1 and `r2` near 0, Bob almost always measures in Eve's
//! basis and the attack leaves almost no error signature.

use serde::Serialize;
use thiserror::Error;

use crate::protocol::{secret_key_fraction, Basis, PolarizationState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("coupling ratio {name} must be in [0, 1], got {value}")]
    RatioOutOfRange { name: &'static str, value: f64 },
    #[error("degenerate coupling ratios (r1 = {r1}, r2 = {r2}): the {basis:?} basis never sifts")]
    Degenerate { r1: f64, r2: f64, basis: Basis },
}

/// The two coupling ratios Bob's splitter shows at Eve's resend wavelengths:
/// `r1` at the rectilinear resend, `r2` at the diagonal resend.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttackParameters {
    r1: f64,
    r2: f64,
}

impl AttackParameters {
    pub fn new(r1: f64, r2: f64) -> Result<Self, AnalysisError> {
        for (name, value) in [("r1", r1), ("r2", r2)] {
            if !(value.is_finite() && (0.0..=1.0).contains(&value)) {
                return Err(AnalysisError::RatioOutOfRange { name, value });
            }
        }
        Ok(AttackParameters { r1, r2 })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }
}

/// Basis-averaged error rate of the attack: the unweighted mean of the two
/// per-basis sifted error rates,
///
/// ```text
/// Err = 1/4 * [ (1 - r1) / (2 - (r1 + r2)) + r2 / (r1 + r2) ]
/// ```
///
/// Errors when one basis never sifts (`r1 + r2` equal to 0 or 2), where the
/// corresponding per-basis rate is undefined. The result is always at most
/// one half.
pub fn qber_eq2(params: &AttackParameters) -> Result<f64, AnalysisError> {
    let (r1, r2) = (params.r1, params.r2);
    let sum = r1 + r2;
    if sum == 0.0 {
        return Err(AnalysisError::Degenerate {
            r1,
            r2,
            basis: Basis::Rectilinear,
        });
    }
    if sum == 2.0 {
        return Err(AnalysisError::Degenerate {
            r1,
            r2,
            basis: Basis::Diagonal,
        });
    }
    Ok(0.25 * ((1.0 - r1) / (2.0 - sum) + r2 / sum))
}

/// Pooled sifted error rate of the attack, weighting every sifted bit
/// equally: `(1 - r1 + r2) / 4`. Defined for all parameters.
pub fn pooled_error_rate(params: &AttackParameters) -> f64 {
    0.25 * (1.0 - params.r1 + params.r2)
}

/// Fraction of sifted bits where Bob's basis equals Eve's measurement
/// basis: `(1 + r1 - r2) / 2`. This is what the steering buys Eve; at an
/// ordinary wavelength-flat splitter it is 1/2.
pub fn eve_basis_match_rate(params: &AttackParameters) -> f64 {
    0.5 * (1.0 + params.r1 - params.r2)
}

/// How a sifted event is classified in the outcome tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafCategory {
    SiftedCorrect,
    SiftedError,
    Discarded,
}

/// One leaf of the per-basis outcome tree, with its probability conditional
/// on Alice's basis and on Bob registering a click.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeLeaf {
    pub alice_basis: Basis,
    pub category: LeafCategory,
    pub probability: f64,
}

/// The outcome tree for one of Alice's bases, as three leaves that sum to
/// one: sifted-correct, sifted-error, discarded (Bob measured the conjugate
/// basis).
///
/// For a rectilinear signal the sifted-correct mass is `r1/2 + r2/4` (Eve
/// guessed right and steered Bob right, or guessed wrong but Bob happened to
/// sift and flip no bit) and the sifted-error mass is `r2/4`. The diagonal
/// tree mirrors this with `1 - r2` and `1 - r1`.
pub fn tree_probabilities(params: &AttackParameters, alice_basis: Basis) -> [TreeLeaf; 3] {
    let (r1, r2) = (params.r1, params.r2);
    let (correct, error) = match alice_basis {
        Basis::Rectilinear => (0.5 * r1 + 0.25 * r2, 0.25 * r2),
        Basis::Diagonal => (0.5 * (1.0 - r2) + 0.25 * (1.0 - r1), 0.25 * (1.0 - r1)),
    };
    let leaf = |category, probability| TreeLeaf {
        alice_basis,
        category,
        probability,
    };
    [
        leaf(LeafCategory::SiftedCorrect, correct),
        leaf(LeafCategory::SiftedError, error),
        leaf(LeafCategory::Discarded, 1.0 - correct - error),
    ]
}

/// Exact attack expectations, from summing the finite outcome space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumeratedAttack {
    /// Probability that a clicked pulse survives sifting. Always 1/2 for
    /// this attack: steering shifts which basis sifts, not how much.
    pub sift_probability: f64,
    pub pooled_qber: Option<f64>,
    pub qber_rectilinear: Option<f64>,
    pub qber_diagonal: Option<f64>,
    /// Unweighted mean of the per-basis rates; `None` when a basis never
    /// sifts.
    pub basis_averaged_qber: Option<f64>,
    /// Fraction of sifted bits where Eve measured in Alice's basis.
    pub eve_basis_match: Option<f64>,
}

/// Walks every branch of the attack outcome space and accumulates exact
/// expectations: Alice's four states, Eve's even splitter and measurement,
/// the per-basis resend, Bob's steered splitter, and Bob's measurement.
///
/// Probabilities are conditional on Bob registering a click, which is
/// wavelength-independent once Eve balances her added attenuation, so
/// photon-number statistics cancel out of every ratio reported here.
pub fn enumerate_attack(params: &AttackParameters) -> EnumeratedAttack {
    let mut sift_mass = 0.0;
    let mut match_mass = 0.0;
    let mut per_basis_sift = [0.0f64; 2];
    let mut per_basis_err = [0.0f64; 2];

    for alice_state in PolarizationState::ALL {
        let w_state = 0.25;
        let alice_basis = alice_state.basis();
        for eve_basis in Basis::ALL {
            let w_eve_basis = w_state * 0.5;
            // Eve's outcome distribution for this state in this basis.
            for eve_bit in [0u8, 1u8] {
                let p_eve_bit =
                    crate::protocol::measurement_outcome_prob(alice_state, eve_basis, eve_bit);
                if p_eve_bit == 0.0 {
                    continue;
                }
                let w_eve = w_eve_basis * p_eve_bit;
                let resent = PolarizationState::from_basis_bit(eve_basis, eve_bit);
                // Bob's splitter at the resend wavelength for Eve's basis.
                let ratio = match eve_basis {
                    Basis::Rectilinear => params.r1,
                    Basis::Diagonal => params.r2,
                };
                for (bob_basis, p_port) in
                    [(Basis::Rectilinear, ratio), (Basis::Diagonal, 1.0 - ratio)]
                {
                    if p_port == 0.0 {
                        continue;
                    }
                    if bob_basis != alice_basis {
                        continue; // discarded at sifting; no error bookkeeping
                    }
                    for bob_bit in [0u8, 1u8] {
                        let p_bob_bit =
                            crate::protocol::measurement_outcome_prob(resent, bob_basis, bob_bit);
                        if p_bob_bit == 0.0 {
                            continue;
                        }
                        let w = w_eve * p_port * p_bob_bit;
                        sift_mass += w;
                        per_basis_sift[alice_basis.index()] += w;
                        if bob_bit != alice_state.bit() {
                            per_basis_err[alice_basis.index()] += w;
                        }
                        if eve_basis == alice_basis {
                            match_mass += w;
                        }
                    }
                }
            }
        }
    }

    let rate = |err: f64, total: f64| (total > 0.0).then(|| err / total);
    let qber_rectilinear = rate(per_basis_err[0], per_basis_sift[0]);
    let qber_diagonal = rate(per_basis_err[1], per_basis_sift[1]);
    let basis_averaged_qber = match (qber_rectilinear, qber_diagonal) {
        (Some(r), Some(d)) => Some(0.5 * (r + d)),
        _ => None,
    };
    EnumeratedAttack {
        sift_probability: sift_mass,
        pooled_qber: rate(per_basis_err[0] + per_basis_err[1], sift_mass),
        qber_rectilinear,
        qber_diagonal,
        basis_averaged_qber,
        eve_basis_match: rate(match_mass, sift_mass),
    }
}

/// One grid point of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub r1: f64,
    pub r2: f64,
    /// Basis-averaged error rate; `None` at degenerate corners.
    pub err_eq: Option<f64>,
    pub err_pooled: f64,
    pub eve_basis_match: f64,
    /// Secret-key fraction at the basis-averaged error rate.
    pub key_fraction: Option<f64>,
    pub degenerate: bool,
}

/// Evaluates the closed forms across a parameter grid. Degenerate points
/// are flagged rather than skipped so sweeps over full ranges stay
/// rectangular.
pub fn sweep_correlation(grid: &[AttackParameters]) -> Vec<SweepRow> {
    grid.iter()
        .map(|params| {
            let err_eq = qber_eq2(params).ok();
            let key_fraction = err_eq.map(|e| {
                secret_key_fraction(e).expect("basis-averaged attack error is at most 1/2")
            });
            SweepRow {
                r1: params.r1,
                r2: params.r2,
                err_eq,
                err_pooled: pooled_error_rate(params),
                eve_basis_match: eve_basis_match_rate(params),
                key_fraction,
                degenerate: err_eq.is_none(),
            }
        })
        .collect()
}

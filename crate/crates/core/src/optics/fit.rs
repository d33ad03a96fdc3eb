//! Least-squares fit of the periodic coupling law to measured ratios.
//!
//! The objective `sum_i (F^2 sin^2(K lambda_i^2.5 / F) - r_i)^2` is highly
//! multimodal in `K`: any number of extra half-periods between calibration
//! points produces another local optimum. The search therefore multi-starts
//! across phase branches anchored at the first data point, polishes every
//! start with a damped Gauss-Newton (Levenberg-Marquardt) loop, and resolves
//! near-ties toward the smallest phase coefficient, i.e. the slowest
//! oscillation consistent with the data.

use super::{CouplingModel, OpticsError, Wavelength};
use thiserror::Error;

/// Result of [`fit_coupling_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub model: CouplingModel,
    /// Signed residuals `predicted - observed`, one per input point, in
    /// input order.
    pub residuals: Vec<f64>,
    /// Sum of squared residuals of the chosen model.
    pub sse: f64,
    /// Every distinct local optimum the start sweep found, best first.
    pub candidates: Vec<FitCandidate>,
}

/// One polished local optimum from the multi-start sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitCandidate {
    pub max_amplitude: f64,
    pub phase_coefficient: f64,
    pub sse: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least two calibration points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    InvalidPoint(#[from] OpticsError),
    #[error("all measured ratios are zero; the coupling amplitude is unidentifiable")]
    AllRatiosZero,
    #[error("branch limit must be at least 1")]
    InvalidBranchLimit,
    #[error("no start converged; best sum of squares {best_sse:e}")]
    NonConvergence {
        best_sse: f64,
        candidates: Vec<FitCandidate>,
    },
}

const F_MIN: f64 = 1e-6;
const MAX_ITERATIONS: usize = 80;
/// Candidates within this much squared error of the best are considered tied
/// and resolved by phase coefficient.
const SSE_TIE_TOLERANCE: f64 = 1e-9;

fn phase_scale(lambda: Wavelength) -> f64 {
    let nm = lambda.nm();
    nm * nm * nm.sqrt()
}

fn model_ratio(f: f64, k: f64, ps: f64) -> f64 {
    let s = (k * ps / f).sin();
    let a = f * s;
    a * a
}

fn sum_squared_error(f: f64, k: f64, points: &[(f64, f64)]) -> f64 {
    points
        .iter()
        .map(|&(ps, r)| {
            let d = model_ratio(f, k, ps) - r;
            d * d
        })
        .sum()
}

/// One Levenberg-Marquardt descent from `(f0, k0)`, with `F` clamped to
/// `[F_MIN, 1]` and `K` to nonnegative values.
fn polish(f0: f64, k0: f64, points: &[(f64, f64)]) -> FitCandidate {
    let mut f = f0.clamp(F_MIN, 1.0);
    let mut k = k0.max(0.0);
    let mut cost = sum_squared_error(f, k, points);
    let mut damping = 1e-3;

    for _ in 0..MAX_ITERATIONS {
        // Normal equations J^T J step = -J^T r for the 2-parameter model.
        let (mut a11, mut a12, mut a22) = (0.0, 0.0, 0.0);
        let (mut g1, mut g2) = (0.0, 0.0);
        for &(ps, observed) in points {
            let phase = k * ps / f;
            let (s, c) = phase.sin_cos();
            let residual = f * f * s * s - observed;
            let d_f = 2.0 * f * s * s - 2.0 * k * ps * s * c;
            let d_k = 2.0 * f * ps * s * c;
            a11 += d_f * d_f;
            a12 += d_f * d_k;
            a22 += d_k * d_k;
            g1 += d_f * residual;
            g2 += d_k * residual;
        }

        // Marquardt scaling keeps the damping meaningful despite the huge
        // magnitude gap between the F and K columns.
        let m11 = a11 + damping * a11.max(1e-12);
        let m22 = a22 + damping * a22.max(1e-12);
        let det = m11 * m22 - a12 * a12;
        if det.abs() < 1e-300 || !det.is_finite() {
            break;
        }
        let step_f = (-g1 * m22 + g2 * a12) / det;
        let step_k = (-g2 * m11 + g1 * a12) / det;

        let f_new = (f + step_f).clamp(F_MIN, 1.0);
        let k_new = (k + step_k).max(0.0);
        let cost_new = sum_squared_error(f_new, k_new, points);

        if cost_new < cost {
            let relative_drop = (cost - cost_new) / cost.max(1e-300);
            f = f_new;
            k = k_new;
            cost = cost_new;
            damping = (damping * 0.3).max(1e-12);
            if relative_drop < 1e-15 || cost == 0.0 {
                break;
            }
        } else {
            damping *= 10.0;
            if damping > 1e12 {
                break;
            }
        }
    }

    FitCandidate {
        max_amplitude: f,
        phase_coefficient: k,
        sse: cost,
    }
}

/// Fits `(F, K)` of the coupling law to `(wavelength, ratio)` points.
///
/// Starts are generated per amplitude guess `F0` from the phase solutions of
/// the first point: `phi = asin(sqrt(r0) / F0) + n*pi` and its mirror
/// `(pi - asin) + n*pi`, for every wrap count `n` up to `branch_limit`. Each
/// start is polished independently; the best sum of squares wins, and ties
/// within `1e-9` go to the smallest `K`.
pub fn fit_coupling_model(
    points: &[(Wavelength, f64)],
    branch_limit: u32,
) -> Result<FitOutcome, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if branch_limit == 0 {
        return Err(FitError::InvalidBranchLimit);
    }
    for (w, r) in points {
        if !(r.is_finite() && (0.0..=1.0).contains(r)) {
            return Err(OpticsError::ValueOutOfRange {
                wavelength_nm: w.nm(),
                value: *r,
            }
            .into());
        }
    }
    for (i, (w, _)) in points.iter().enumerate() {
        if points[i + 1..].iter().any(|(v, _)| v == w) {
            return Err(OpticsError::DuplicateWavelength(w.nm()).into());
        }
    }
    let max_ratio = points.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    if max_ratio == 0.0 {
        return Err(FitError::AllRatiosZero);
    }

    let scaled: Vec<(f64, f64)> = points.iter().map(|&(w, r)| (phase_scale(w), r)).collect();
    let (ps0, r0) = scaled[0];

    let mut amplitude_starts = vec![1.0];
    let anchored = max_ratio.sqrt();
    if (anchored - 1.0).abs() > 1e-9 {
        amplitude_starts.push(anchored);
    }

    let mut candidates: Vec<FitCandidate> = Vec::new();
    for &f0 in &amplitude_starts {
        let base = (r0.sqrt() / f0).min(1.0).asin();
        for n in 0..=branch_limit {
            let shift = f64::from(n) * std::f64::consts::PI;
            for phi0 in [base + shift, (std::f64::consts::PI - base) + shift] {
                let k0 = phi0 * f0 / ps0;
                let candidate = polish(f0, k0, &scaled);
                if candidate.sse.is_finite() {
                    candidates.push(candidate);
                }
            }
        }
    }

    candidates.sort_by(|a, b| {
        a.sse
            .total_cmp(&b.sse)
            .then(a.phase_coefficient.total_cmp(&b.phase_coefficient))
    });
    candidates.dedup_by(|later, kept| {
        (later.max_amplitude - kept.max_amplitude).abs() < 1e-9
            && (later.phase_coefficient - kept.phase_coefficient).abs()
                < 1e-9 * kept.phase_coefficient.max(1e-9)
    });

    let best_sse = match candidates.first() {
        Some(c) => c.sse,
        None => {
            return Err(FitError::NonConvergence {
                best_sse: f64::INFINITY,
                candidates,
            })
        }
    };
    // Sorting is (sse, K), so the first candidate inside the tie band is the
    // smallest-K member of the tie by construction only among exact ties;
    // scan the band explicitly for the general case.
    let chosen = *candidates
        .iter()
        .filter(|c| c.sse <= best_sse + SSE_TIE_TOLERANCE)
        .min_by(|a, b| a.phase_coefficient.total_cmp(&b.phase_coefficient))
        .expect("tie band contains at least the best candidate");

    let model = CouplingModel::new(chosen.max_amplitude, chosen.phase_coefficient)
        .map_err(FitError::InvalidPoint)?;
    let residuals = points
        .iter()
        .map(|&(w, r)| model.coupling_ratio(w) - r)
        .collect();

    Ok(FitOutcome {
        model,
        residuals,
        sse: chosen.sse,
        candidates,
    })
}

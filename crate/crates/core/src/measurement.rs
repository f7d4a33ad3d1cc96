//! Continuous phase measurement on the clock qubit and Monte Carlo
//! estimation with it.
//!
//! The POVM is `dM(φ) = |ψ_φ⟩⟨ψ_φ| dφ/π` on `[0, 2π)` with
//! `|ψ_φ⟩ = (|0⟩ + e^{iφ}|1⟩)/√2`. On a state with coherence
//! `ρ₀₁ = (D/2) e^{-iψ}` the outcome density is
//! `f(φ) = (1 + D cos(ψ − φ)) / 2π`.
//!
//! Sampling follows the two-step realization of the POVM: draw `φ′`
//! uniformly on `[0, π)`, then measure the projective pair
//! `(|ψ_φ′⟩, |ψ_φ′+π⟩)` and record `φ′` or `φ′ + π`.
//!
//! No unbiased estimator of `θ₀` itself exists for this model, and `θ₀`
//! enters the statistics only through `e^{iAθ₀}`. Everything here therefore
//! estimates the reduced phase `ψ`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clock::{psi_pm, ClockConfig};
use crate::error::{Error, Result};
use crate::operator::{Complex, DensityOperator, Operator2};
use crate::optimize::golden_section;

pub const DEFAULT_RESOLUTION: usize = 4096;
/// Likelihood terms are clamped from below at this value before the log.
pub const LIKELIHOOD_FLOOR: f64 = 1e-300;
/// Half-width of the MLE refinement window around the phasor initializer.
pub const MLE_WINDOW: f64 = PI / 8.0;
/// Absolute bracket width at which the MLE refinement stops.
pub const MLE_TOL: f64 = 1e-10;

/// Quadrature-backed description of the phase POVM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasePovm {
    /// Trapezoid nodes on `[0, 2π)`.
    pub resolution: usize,
}

impl Default for PhasePovm {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

impl PhasePovm {
    pub fn new(resolution: usize) -> Self {
        Self {
            resolution: resolution.max(2),
        }
    }

    /// `|ψ_φ⟩⟨ψ_φ| / π`, the POVM density with respect to `dφ`.
    pub fn element(phi: f64) -> Operator2 {
        let [v, _] = psi_pm(phi);
        Operator2::outer(v, v).scale_real(1.0 / PI)
    }

    /// Largest entrywise deviation of `∫ dM(φ)` from the identity.
    pub fn completeness_error(&self) -> f64 {
        let n = self.resolution;
        let step = TAU / n as f64;
        let total = (0..n)
            .map(|k| Self::element(k as f64 * step))
            .fold(Operator2::zero(), |acc, m| acc + m)
            .scale_real(step);
        let diff = total - Operator2::identity();
        diff.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Born-rule density `tr[ρ dM(φ)]/dφ` for an arbitrary qubit state.
    pub fn density_for_state(rho: &DensityOperator, phi: f64) -> f64 {
        rho.op().multiply(&Self::element(phi)).trace().re
    }

    /// Classical Fisher information about `ψ`,
    /// `I_ψ = ∫ (∂_ψ f)² / f dφ`, by the periodic trapezoid rule.
    ///
    /// Nodes sit half a step off `ψ`, so the zero of `f` at `φ = ψ + π`
    /// (pure state) is never evaluated.
    pub fn fisher_information(&self, model: &OutcomeModel) -> f64 {
        let n = self.resolution;
        let step = TAU / n as f64;
        let d = model.visibility;
        let sum: f64 = (0..n)
            .map(|k| {
                let u = -((k as f64 + 0.5) * step);
                let f = (1.0 + d * u.cos()) / TAU;
                let df = -d * u.sin() / TAU;
                if f > 0.0 {
                    df * df / f
                } else {
                    0.0
                }
            })
            .sum();
        sum * step
    }
}

/// Outcome statistics of the phase POVM: reduced phase and visibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeModel {
    psi: f64,
    visibility: f64,
}

impl OutcomeModel {
    pub fn new(psi: f64, visibility: f64) -> Result<Self> {
        if !psi.is_finite() {
            return Err(Error::InvalidConfig(format!("phase must be finite, got {psi}")));
        }
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::InvalidConfig(format!(
                "visibility must lie in [0, 1], got {visibility}"
            )));
        }
        Ok(Self {
            psi: psi.rem_euclid(TAU),
            visibility,
        })
    }

    /// Model for the layer-averaged clock state. A negative Dirichlet
    /// factor is a sign flip of the coherence, i.e. a shift of `ψ` by `π`.
    pub fn from_config(cfg: &ClockConfig) -> Self {
        let d = cfg.visibility().value();
        let psi = if d < 0.0 { cfg.psi() + PI } else { cfg.psi() };
        Self {
            psi: psi.rem_euclid(TAU),
            visibility: d.abs().min(1.0),
        }
    }

    /// Reads `ψ` and `D` off the coherence `ρ₀₁ = (D/2) e^{-iψ}`.
    pub fn from_state(rho: &DensityOperator) -> Self {
        let c = rho.op().get(0, 1);
        Self {
            psi: (-c.arg()).rem_euclid(TAU),
            visibility: (2.0 * c.norm()).min(1.0),
        }
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }

    pub fn density(&self, phi: f64) -> f64 {
        (1.0 + self.visibility * (self.psi - phi).cos()) / TAU
    }
}

/// `f(φ) = (1 + D cos(ψ − φ)) / 2π`.
pub fn outcome_density(model: &OutcomeModel, phi: f64) -> f64 {
    model.density(phi.rem_euclid(TAU))
}

/// Draws `n` outcomes from `rng` with the two-step procedure.
pub fn sample_with<R: Rng + ?Sized>(model: &OutcomeModel, n: usize, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let phi = PI * rng.gen::<f64>();
            let p = 0.5 * (1.0 + model.visibility * (model.psi - phi).cos());
            if rng.gen::<f64>() < p {
                phi
            } else {
                phi + PI
            }
        })
        .collect()
}

/// Draws `n` outcomes from a ChaCha8 stream seeded with `seed`.
pub fn sample(model: &OutcomeModel, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(model, n, &mut rng)
}

/// `(1/n) Σ 2 e^{iφᵢ}`, unbiased for `D e^{iψ}`.
pub fn phasor_estimate(samples: &[f64]) -> Result<Complex> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let sum: Complex = samples.iter().map(|&phi| Complex::from_polar(2.0, phi)).sum();
    Ok(sum / samples.len() as f64)
}

/// Maximum-likelihood estimate of `ψ` for known visibility, in `[0, 2π)`.
///
/// Starts at the argument of [`phasor_estimate`] and refines by
/// golden-section search within `±π/8`.
pub fn mle_estimate(samples: &[f64], visibility: f64) -> Result<f64> {
    let start = phasor_estimate(samples)?.arg();
    let trig: Vec<(f64, f64)> = samples.iter().map(|phi| phi.sin_cos()).collect();
    let neg_log_lik = |psi: f64| {
        let (s, c) = psi.sin_cos();
        -trig
            .iter()
            .map(|&(sp, cp)| (1.0 + visibility * (c * cp + s * sp)).max(LIKELIHOOD_FLOOR).ln())
            .sum::<f64>()
    };
    let m = golden_section(neg_log_lik, start - MLE_WINDOW, start + MLE_WINDOW, MLE_TOL, 200);
    Ok(m.x.rem_euclid(TAU) % TAU)
}

/// `I_ψ` by trapezoid quadrature at the default resolution.
pub fn classical_fisher_quadrature(model: &OutcomeModel) -> f64 {
    PhasePovm::default().fisher_information(model)
}

/// Closed form `I_ψ = 1 − √(1 − D²)`, written to avoid cancellation at
/// small `D`.
pub fn phase_povm_fisher(visibility: f64) -> f64 {
    let d2 = visibility * visibility;
    d2 / (1.0 + (1.0 - d2).max(0.0).sqrt())
}

/// `(I_M(θ₀), S)`: classical Fisher information of the phase POVM and the
/// SLD Fisher information, both per atom and per unit `θ₀²`.
pub fn povm_vs_qfi_gap(cfg: &ClockConfig) -> (f64, f64) {
    let a = cfg.a();
    let d = cfg.visibility().value();
    let classical = a * a * phase_povm_fisher(d.abs());
    let quantum = (a * d) * (a * d);
    debug_assert!(classical <= quantum + 1e-9 * quantum.max(1.0));
    (classical, quantum)
}

/// Wraps `a − b` into `(−π, π]`.
pub fn angular_error(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// SplitMix64 finalizer, used to decorrelate per-trial seeds.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the substream owned by `trial`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed ^ mix64(trial)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub circular_mean: f64,
    /// `1 − |mean e^{iψ̂}|`.
    pub circular_variance: f64,
    /// Mean squared angular error against the true phase.
    pub mse: f64,
}

impl RunSummary {
    pub fn from_estimates(estimates: &[f64], psi_true: f64) -> Self {
        let n = estimates.len().max(1) as f64;
        let resultant: Complex = estimates.iter().map(|&e| Complex::from_polar(1.0, e)).sum::<Complex>() / n;
        let mse = estimates
            .iter()
            .map(|&e| angular_error(e, psi_true).powi(2))
            .sum::<f64>()
            / n;
        Self {
            circular_mean: resultant.arg().rem_euclid(TAU),
            circular_variance: 1.0 - resultant.norm(),
            mse,
        }
    }
}

/// A seeded batch of independent estimation trials.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationRun {
    pub seed: u64,
    pub n_samples: usize,
    pub n_trials: usize,
    pub psi_true: f64,
    pub visibility: f64,
    /// MLE of `ψ` per trial, in trial order.
    pub estimates: Vec<f64>,
    /// Phasor estimate per trial, in trial order.
    pub phasors: Vec<Complex>,
    pub summary: RunSummary,
}

impl EstimationRun {
    /// Per-trial squared angular errors, in trial order.
    pub fn squared_errors(&self) -> impl Iterator<Item = f64> + '_ {
        self.estimates
            .iter()
            .map(move |&e| angular_error(e, self.psi_true).powi(2))
    }
}

/// Runs `n_trials` trials of `n_samples` outcomes each. Trials run in
/// parallel; each owns the RNG substream `trial_seed(seed, trial)`, so the
/// result does not depend on the thread count.
pub fn run_estimation(
    model: &OutcomeModel,
    n_samples: usize,
    n_trials: usize,
    seed: u64,
) -> Result<EstimationRun> {
    if n_samples == 0 {
        return Err(Error::EmptySample);
    }
    if n_trials == 0 {
        return Err(Error::NonPositiveInput("n_trials"));
    }
    let per_trial: Vec<(f64, Complex)> = (0..n_trials as u64)
        .into_par_iter()
        .map(|trial| {
            let samples = sample(model, n_samples, trial_seed(seed, trial));
            let phasor = phasor_estimate(&samples)?;
            let psi_hat = mle_estimate(&samples, model.visibility)?;
            Ok((psi_hat, phasor))
        })
        .collect::<Result<_>>()?;
    let (estimates, phasors): (Vec<f64>, Vec<Complex>) = per_trial.into_iter().unzip();
    let summary = RunSummary::from_estimates(&estimates, model.psi);
    Ok(EstimationRun {
        seed,
        n_samples,
        n_trials,
        psi_true: model.psi,
        visibility: model.visibility,
        estimates,
        phasors,
        summary,
    })
}

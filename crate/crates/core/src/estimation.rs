//! SLD Fisher information and the Cramér–Rao bounds it implies.
//!
//! The generic solver works for any qubit model through the spectral
//! formula `⟨j|L|k⟩ = 2⟨j|∂ρ|k⟩ / (pⱼ + pₖ)`. The closed forms for the
//! clock models are `S = A²` for a single layer and `S = (A D)²` for the
//! layer-averaged state, where `D` is the Dirichlet visibility.
//!
//! The bound on `θ₀` carries over unchanged to `V₀/c²` because
//! `θ₀ = 1 + V₀/c²`. It diverges whenever `D = 0` and has its first local
//! minimum near `τ_min = π ħ c² / (n ΔE g h)`.

use std::f64::consts::PI;

use crate::clock::{multilayer_state, multilayer_state_derivative, ClockConfig, PhysicalConstants};
use crate::error::{Error, Result};
use crate::operator::{DensityOperator, Operator2};
use crate::optimize::golden_section;

/// Eigenvalue sums at or below this leave the SLD matrix element at zero.
pub const SLD_EIGEN_FLOOR: f64 = 1e-14;
/// Hermiticity and tracelessness tolerance for `∂ρ`.
pub const DRHO_TOL: f64 = 1e-10;
/// Points in the log-spaced scan that brackets the first bound minimum.
pub const MIN_SCAN_POINTS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SldResult {
    pub sld: Operator2,
    /// `tr(ρ L²)`.
    pub qfi: f64,
}

impl SldResult {
    /// `‖∂ρ − (ρL + Lρ)/2‖_F`.
    pub fn residual(&self, rho: &DensityOperator, drho: &Operator2) -> f64 {
        let r = rho.op();
        let sym = (r.multiply(&self.sld) + self.sld.multiply(r)).scale_real(0.5);
        (*drho - sym).frobenius_norm()
    }
}

/// Solves `∂ρ = (ρL + Lρ)/2` in the eigenbasis of `ρ`.
pub fn sld_generic(rho: &DensityOperator, drho: &Operator2) -> Result<SldResult> {
    let dev = drho.hermiticity_deviation();
    if dev > DRHO_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let tr = drho.trace();
    if tr.norm() > DRHO_TOL {
        return Err(Error::TraceNotZero(tr.norm()));
    }

    let spec = rho.op().eig_hermitian()?;
    let u = spec.basis_change();
    let d_eig = u.adjoint().multiply(drho).multiply(&u);
    let p = spec.eigenvalues;

    let mut l_eig = Operator2::zero();
    for j in 0..2 {
        for k in 0..2 {
            let denom = p[j] + p[k];
            if denom > SLD_EIGEN_FLOOR {
                l_eig.entries[j][k] = d_eig.entries[j][k] * (2.0 / denom);
            }
        }
    }
    let l = u.multiply(&l_eig).multiply(&u.adjoint());
    let sld = (l + l.adjoint()).scale_real(0.5);
    let qfi = rho.op().multiply(&sld).multiply(&sld).trace().re;
    Ok(SldResult { sld, qfi })
}

/// `S = A²`.
pub fn qfi_single_layer(cfg: &ClockConfig) -> f64 {
    let a = cfg.a();
    a * a
}

/// `S = (A D)²`.
pub fn qfi_multilayer(cfg: &ClockConfig) -> f64 {
    let ad = cfg.a() * cfg.visibility().value();
    ad * ad
}

/// Generic SLD solution for the layer-averaged clock state.
pub fn sld_multilayer(cfg: &ClockConfig) -> SldResult {
    let (rho, _) = multilayer_state(cfg);
    let drho = multilayer_state_derivative(cfg);
    sld_generic(&rho, &drho).expect("closed-form derivative is Hermitian and traceless")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrbReport {
    pub qfi_per_atom: f64,
    /// Lower bound on `Var[θ₀]`.
    pub var_theta0_lower: f64,
    /// Lower bound on `Var[V₀]/c⁴`.
    pub var_v0_lower_over_c4: f64,
    /// Lower bound on the standard deviation of `V₀`, m²/s².
    pub sigma_v0_lower: f64,
    /// Set when the Fisher information vanishes and every bound is infinite.
    pub diverged: bool,
}

pub fn crb_report(cfg: &ClockConfig) -> CrbReport {
    let qfi = qfi_multilayer(cfg);
    if qfi <= 0.0 {
        return CrbReport {
            qfi_per_atom: 0.0,
            var_theta0_lower: f64::INFINITY,
            var_v0_lower_over_c4: f64::INFINITY,
            sigma_v0_lower: f64::INFINITY,
            diverged: true,
        };
    }
    let var = 1.0 / (cfg.n_site as f64 * qfi);
    CrbReport {
        qfi_per_atom: qfi,
        var_theta0_lower: var,
        var_v0_lower_over_c4: var,
        sigma_v0_lower: cfg.constants.c_squared() * var.sqrt(),
        diverged: false,
    }
}

/// The lower bound on `Var[V₀]/c⁴` at interrogation time `tau`.
pub fn bound_at(cfg: &ClockConfig, tau: f64) -> f64 {
    crb_report(&cfg.with_tau(tau)).var_v0_lower_over_c4
}

/// Standard-quantum-limit instability
/// `σ = (1/ω₀τ) √(T_C/τ_avg) √(ξ_W²/N_site)`.
pub fn sql_sigma(
    tau: f64,
    t_cycle: f64,
    tau_avg: f64,
    n_site: u64,
    omega0: f64,
    xi_w_sq: f64,
) -> Result<f64> {
    for (name, v) in [
        ("tau", tau),
        ("t_cycle", t_cycle),
        ("tau_avg", tau_avg),
        ("omega0", omega0),
        ("xi_w_sq", xi_w_sq),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonPositiveInput(name));
        }
    }
    if n_site == 0 {
        return Err(Error::NonPositiveInput("n_site"));
    }
    Ok((t_cycle / tau_avg).sqrt() * (xi_w_sq / n_site as f64).sqrt() / (omega0 * tau))
}

/// Interrogation time at which `Aα/2 = π`, i.e. `2π ħ c² / (ΔE g h)`.
fn dephasing_period(delta_e: f64, g: f64, h_spacing: f64, k: &PhysicalConstants) -> f64 {
    2.0 * PI * (k.hbar / delta_e) * (k.c / g) * (k.c / h_spacing)
}

/// `τ_min = π ħ c² / (n ΔE g h)` for any positive layer count `n`.
pub fn tau_min_analytic(
    delta_e: f64,
    g: f64,
    h_spacing: f64,
    n_layer: u64,
    constants: &PhysicalConstants,
) -> f64 {
    0.5 * dephasing_period(delta_e, g, h_spacing, constants) / n_layer as f64
}

/// Divergence times, first-minimum time and the approximate bound there.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMarks {
    /// `τ_div(k) = (k/n) 2πħc²/(ΔE g h)` for `k ≤ k_max` with `k/n`
    /// non-integer.
    pub tau_div: Vec<f64>,
    pub tau_min: f64,
    /// `(1/N_site) [g n h / (2c²)]²`.
    pub bound_at_min_over_c4: f64,
}

pub fn time_marks(cfg: &ClockConfig, k_max: u64) -> Result<TimeMarks> {
    if cfg.ell == 0 {
        return Err(Error::SingleLayerNoDivergence);
    }
    if k_max == 0 {
        return Err(Error::NonPositiveInput("k_max"));
    }
    let n = cfg.n_layer();
    let period = dephasing_period(cfg.delta_e, cfg.g, cfg.h_spacing, &cfg.constants);
    let tau_div = (1..=k_max)
        .filter(|k| k % n != 0)
        .map(|k| k as f64 / n as f64 * period)
        .collect();
    let half_height = cfg.g * n as f64 * cfg.h_spacing / (2.0 * cfg.constants.c_squared());
    Ok(TimeMarks {
        tau_div,
        tau_min: tau_min_analytic(cfg.delta_e, cfg.g, cfg.h_spacing, n, &cfg.constants),
        bound_at_min_over_c4: half_height * half_height / cfg.n_site as f64,
    })
}

/// Locates the first local minimum of the exact bound on
/// `τ ∈ (0, τ_div(1))`. Returns `(τ*, bound(τ*))`.
pub fn locate_min_exact(cfg: &ClockConfig) -> Result<(f64, f64)> {
    let marks = time_marks(cfg, 1)?;
    let tau_div1 = marks.tau_div[0];
    let lo = tau_div1 * 1e-6;
    let hi = tau_div1 * (1.0 - 1e-9);
    let ratio = (hi / lo).ln();
    let grid: Vec<f64> = (0..MIN_SCAN_POINTS)
        .map(|i| lo * (ratio * i as f64 / (MIN_SCAN_POINTS - 1) as f64).exp())
        .collect();

    let (best, _) = grid
        .iter()
        .map(|&t| bound_at(cfg, t))
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bv), (i, v)| if v < bv { (i, v) } else { (bi, bv) });
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(MIN_SCAN_POINTS - 1)];

    let m = golden_section(|t| bound_at(cfg, t), a, b, (b - a) * 1e-12, 200);
    Ok((m.x, m.value))
}

/// Limiting standard deviation of `V₀/c²` at the first minimum, in the
/// potential-difference form `ΔV/(2c²√N_site)` and the aspect-ratio form
/// `(N_layer/√N_site) g h/(2c²)`.
pub fn limit_sigma(cfg: &ClockConfig) -> (f64, f64) {
    limit_sigma_for_layers(cfg.g, cfg.h_spacing, cfg.n_layer(), cfg.n_site, cfg.constants.c)
}

/// [`limit_sigma`] for an arbitrary layer count.
pub fn limit_sigma_for_layers(g: f64, h_spacing: f64, n_layer: u64, n_site: u64, c: f64) -> (f64, f64) {
    let c2 = c * c;
    let sqrt_n_site = (n_site as f64).sqrt();
    let delta_v = g * n_layer as f64 * h_spacing;
    let by_potential = delta_v / (2.0 * c2) / sqrt_n_site;
    let by_aspect = (n_layer as f64 / sqrt_n_site) * (g * h_spacing / (2.0 * c2));
    (by_potential, by_aspect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::single_layer_state;
    use crate::operator::Complex;

    fn dimless(a: f64, alpha: f64, ell: u32, n_site: u64) -> ClockConfig {
        ClockConfig::dimensionless(a, alpha, 1.0, ell, n_site).unwrap()
    }

    #[test]
    fn zero_derivative_gives_zero_sld() {
        let rho = single_layer_state(&dimless(1.0, 0.1, 0, 1));
        let r = sld_generic(&rho, &Operator2::zero()).unwrap();
        assert_eq!(r.sld, Operator2::zero());
        assert_eq!(r.qfi, 0.0);
    }

    #[test]
    fn single_layer_sld_matches_closed_form() {
        let cfg = dimless(2.0, 0.1, 0, 1).with_reduced_phase(0.8).unwrap();
        let rho = single_layer_state(&cfg);
        let drho = multilayer_state_derivative(&cfg);
        let r = sld_generic(&rho, &drho).unwrap();
        // L = -iA(e^{-iψ}|0⟩⟨1| − e^{iψ}|1⟩⟨0|)
        let a = cfg.a();
        let e = Complex::from_polar(1.0, -0.8);
        let expected = (Operator2::ket_bra(0, 1).scale(e) - Operator2::ket_bra(1, 0).scale(e.conj()))
            .scale(Complex::new(0.0, -a));
        assert!((r.sld - expected).frobenius_norm() < 1e-12);
        assert!((r.qfi - 4.0).abs() < 1e-12);
        assert_eq!(qfi_single_layer(&cfg), 4.0);
        assert!(r.residual(&rho, &drho) < 1e-12);
    }

    #[test]
    fn rejects_bad_derivatives() {
        let rho = single_layer_state(&dimless(1.0, 0.1, 0, 1));
        assert!(matches!(
            sld_generic(&rho, &Operator2::ket_bra(0, 1)),
            Err(Error::NotHermitian(_))
        ));
        assert!(matches!(
            sld_generic(&rho, &Operator2::identity()),
            Err(Error::TraceNotZero(_))
        ));
    }

    #[test]
    fn qfi_single_layer_zero_time() {
        assert_eq!(qfi_single_layer(&dimless(0.0, 0.1, 0, 1)), 0.0);
    }

    #[test]
    fn qfi_multilayer_cases() {
        assert_eq!(qfi_multilayer(&dimless(3.0, 0.2, 0, 1)), 9.0);
        // Aα/2 = π/10 with A = 1
        let q = qfi_multilayer(&dimless(1.0, PI / 5.0, 2, 1));
        let d = 1.0 / (5.0 * (PI / 10.0).sin());
        assert!((q - d * d).abs() < 1e-15);
        assert!((q - 0.418_885).abs() < 1e-6);
        let cfg = dimless(1.0, 0.1, 2, 1);
        let marks = time_marks(&cfg, 1).unwrap();
        assert_eq!(qfi_multilayer(&cfg.with_tau(marks.tau_div[0])), 0.0);
    }

    #[test]
    fn crb_report_cases() {
        let r = crb_report(&dimless(1.0, 0.1, 0, 1));
        assert!((r.var_theta0_lower - 1.0).abs() < 1e-15);
        assert!(!r.diverged);
        let a = crb_report(&dimless(2.3, 0.1, 1, 7));
        let b = crb_report(&dimless(2.3, 0.1, 1, 28));
        assert!((a.var_theta0_lower / b.var_theta0_lower - 4.0).abs() < 1e-12);

        let cfg = dimless(1.0, 0.1, 3, 1);
        let tau_div = time_marks(&cfg, 1).unwrap().tau_div[0];
        let r = crb_report(&cfg.with_tau(tau_div));
        assert!(r.diverged);
        assert!(r.var_v0_lower_over_c4.is_infinite());
        assert!(crb_report(&dimless(0.0, 0.1, 0, 1)).diverged);
    }

    #[test]
    fn sql_sigma_cases() {
        assert!((sql_sigma(1.0, 2.0, 2.0, 1, 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let s1 = sql_sigma(0.5, 1.0, 10.0, 4, 3.0, 1.0).unwrap();
        let s2 = sql_sigma(0.5, 1.0, 20.0, 4, 3.0, 1.0).unwrap();
        assert!((s1 / s2 - 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(
            sql_sigma(0.0, 1.0, 1.0, 1, 1.0, 1.0),
            Err(Error::NonPositiveInput("tau"))
        ));
        assert!(sql_sigma(1.0, 1.0, 1.0, 0, 1.0, 1.0).is_err());
    }

    #[test]
    fn time_marks_cd_and_exclusions() {
        // Cd: ΔE = 6.0e-19 J, h = 4.2e-7 m, n = 100
        let k = PhysicalConstants::default();
        let t = tau_min_analytic(6.0e-19, 9.806_65, 4.2e-7, 100, &k);
        assert!((t / 1.2e5 - 1.0).abs() < 0.05, "{t}");
        assert!((t / 3600.0 - 33.0).abs() < 1.7);

        let cfg = dimless(1.0, 0.1, 2, 1);
        let marks = time_marks(&cfg, 12).unwrap();
        assert_eq!(marks.tau_div.len(), 10);
        let period = 2.0 * PI / 0.1;
        let ks: Vec<u64> = marks
            .tau_div
            .iter()
            .map(|t| (t / period * 5.0).round() as u64)
            .collect();
        assert_eq!(ks, vec![1, 2, 3, 4, 6, 7, 8, 9, 11, 12]);
        assert!((marks.tau_min - marks.tau_div[0] / 2.0).abs() < 1e-12 * marks.tau_min);
        assert!(matches!(
            time_marks(&dimless(1.0, 0.1, 0, 1), 3),
            Err(Error::SingleLayerNoDivergence)
        ));
    }

    #[test]
    fn locate_min_small_stack() {
        let cfg = dimless(1.0, 0.05, 1, 1);
        let (tau, bound) = locate_min_exact(&cfg).unwrap();
        let tau_div1 = time_marks(&cfg, 1).unwrap().tau_div[0];
        assert!(tau > 0.0 && tau < tau_div1);
        assert!(bound > 0.0 && bound.is_finite());
        // local minimality
        assert!(bound <= bound_at(&cfg, tau * (1.0 + 1e-4)));
        assert!(bound <= bound_at(&cfg, tau * (1.0 - 1e-4)));
    }

    #[test]
    fn limit_sigma_forms() {
        let (p, a) = limit_sigma_for_layers(9.806_65, 4.2e-7, 100, 10_000, 1.0);
        assert!((p - 2.059_396_5e-6).abs() < 1e-12);
        assert!((p - a).abs() <= 1e-15 * p);
        // cube: N_layer = √N_site
        let (_, a) = limit_sigma_for_layers(9.8, 5e-7, 100, 10_000, 3e8);
        assert!((a - 9.8 * 5e-7 / (2.0 * 9e16)).abs() < 1e-15 * a);
    }
}

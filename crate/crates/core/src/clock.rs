//! Clock Hamiltonian and the states it prepares.
//!
//! A single atom starts in `(|0⟩ + |1⟩)/√2` and evolves under
//! `H = (ΔE/2) θ₀ σᶻ` for a time `τ`, picking up the relative phase
//! `A θ₀` with `A = ΔE τ / ħ`. In a lattice of `2ℓ+1` vertically stacked
//! layers the `j`-th layer sits at potential `V₀ + g j h`, so its phase is
//! `A (θ₀ + j α)` with `α = g h / c²`. Averaging the layers shrinks the
//! coherence by the Dirichlet-kernel visibility
//! `D = sin((Aα/2) n) / (n sin(Aα/2))`, `n = 2ℓ+1`.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::operator::{Complex, DensityOperator, Operator2};

/// Below this `|sin x|` the visibility is evaluated as a cosine sum.
pub const DIRICHLET_SINGULAR_TOL: f64 = 1e-8;
/// Relative distance of `n x / π` from an integer inside which the
/// numerator `sin(n x)` is treated as an exact zero.
pub const DIVERGENCE_SNAP_TOL: f64 = 1e-12;

/// Constants in SI units. Defaults are CODATA 2018 and standard gravity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Gravitational acceleration used when none is given, m/s².
    pub g_default: f64,
    /// Planck constant, J·s.
    pub planck_h: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            c: 2.997_924_58e8,
            g_default: 9.806_65,
            planck_h: 6.626_070_15e-34,
        }
    }
}

impl PhysicalConstants {
    /// Natural units: `ħ = c = 1`.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            g_default: 1.0,
            planck_h: TAU,
        }
    }

    pub fn c_squared(&self) -> f64 {
        self.c * self.c
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("c", self.c),
            ("g_default", self.g_default),
            ("planck_h", self.planck_h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Physical and geometric parameters of a lattice clock run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClockConfig {
    /// Clock transition energy ΔE, J.
    pub delta_e: f64,
    /// Interrogation time τ, s.
    pub tau: f64,
    /// `θ₀ = 1 + V₀/c²`.
    pub theta0: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
    /// Interlayer spacing h, m.
    pub h_spacing: f64,
    /// Half-width of the layer stack; `N_layer = 2ℓ+1`.
    pub ell: u32,
    /// Atoms per layer.
    pub n_site: u64,
    pub constants: PhysicalConstants,
    /// When set, replaces `(A θ₀) mod 2π` as the accumulated phase.
    pub psi_override: Option<f64>,
}

impl ClockConfig {
    /// Physical configuration with CODATA constants and standard gravity.
    pub fn physical(
        delta_e: f64,
        tau: f64,
        theta0: f64,
        h_spacing: f64,
        ell: u32,
        n_site: u64,
    ) -> Result<Self> {
        let constants = PhysicalConstants::default();
        let cfg = Self {
            delta_e,
            tau,
            theta0,
            g: constants.g_default,
            h_spacing,
            ell,
            n_site,
            constants,
            psi_override: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Configuration in natural units where `A` and `α` are given directly.
    ///
    /// Internally `ħ = c = ΔE = h = 1`, `τ = A` and `g = α`.
    pub fn dimensionless(a: f64, alpha: f64, theta0: f64, ell: u32, n_site: u64) -> Result<Self> {
        let constants = PhysicalConstants::natural();
        let cfg = Self {
            delta_e: 1.0,
            tau: a,
            theta0,
            g: alpha,
            h_spacing: 1.0,
            ell,
            n_site,
            constants,
            psi_override: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Uses `psi` (reduced into `[0, 2π)`) as the accumulated phase instead
    /// of deriving it from `A θ₀`.
    pub fn with_reduced_phase(mut self, psi: f64) -> Result<Self> {
        if !psi.is_finite() {
            return Err(Error::InvalidConfig(format!("reduced phase must be finite, got {psi}")));
        }
        self.psi_override = Some(psi.rem_euclid(TAU));
        Ok(self)
    }

    pub fn with_g(mut self, g: f64) -> Result<Self> {
        self.g = g;
        self.validate()?;
        Ok(self)
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Result<Self> {
        self.constants = constants;
        self.validate()?;
        Ok(self)
    }

    /// Same configuration at a different interrogation time.
    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.delta_e.is_finite() && self.delta_e > 0.0) {
            return bad(format!("delta_e must be positive, got {}", self.delta_e));
        }
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return bad(format!("tau must be non-negative, got {}", self.tau));
        }
        if !self.theta0.is_finite() {
            return bad(format!("theta0 must be finite, got {}", self.theta0));
        }
        if !(self.g.is_finite() && self.g > 0.0) {
            return bad(format!("g must be positive, got {}", self.g));
        }
        if !(self.h_spacing.is_finite() && self.h_spacing > 0.0) {
            return bad(format!("h_spacing must be positive, got {}", self.h_spacing));
        }
        if self.n_site == 0 {
            return bad("n_site must be at least 1".into());
        }
        Ok(())
    }

    pub fn n_layer(&self) -> u64 {
        2 * self.ell as u64 + 1
    }

    /// `A = ΔE τ / ħ`.
    pub fn a(&self) -> f64 {
        self.delta_e * self.tau / self.constants.hbar
    }

    /// `α = g h / c²`.
    pub fn alpha(&self) -> f64 {
        self.g * self.h_spacing / self.constants.c_squared()
    }

    /// `Aα/2 = ΔE g h τ / (2 ħ c²)`, evaluated without forming `A` or `α`.
    pub fn a_alpha_half(&self) -> f64 {
        let k = &self.constants;
        (self.delta_e / k.hbar) * (self.g / k.c) * (self.h_spacing / k.c) * self.tau * 0.5
    }

    /// The accumulated phase `(A θ₀) mod 2π` in `[0, 2π)`.
    pub fn psi(&self) -> f64 {
        match self.psi_override {
            Some(psi) => psi,
            None => reduced_phase(self.delta_e, self.tau, self.constants.hbar, self.theta0),
        }
    }

    pub fn visibility(&self) -> Visibility {
        if self.ell == 0 {
            return Visibility { value: 1.0 };
        }
        dirichlet_visibility(self.a_alpha_half(), self.n_layer())
            .expect("2ℓ+1 is always odd")
    }
}

/// Error-free product `a·b = p + e`.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `(ΔE τ θ₀ / ħ) mod 2π` using two-term compensated arithmetic, so the
/// reduction stays meaningful when the unreduced phase is ~10²¹ rad.
pub fn reduced_phase(delta_e: f64, tau: f64, hbar: f64, theta0: f64) -> f64 {
    const TWO_PI_HI: f64 = 6.283_185_307_179_586;
    const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

    // A = ΔE τ / ħ as hi + lo
    let (p, p_err) = two_prod(delta_e, tau);
    let a_hi = p / hbar;
    let a_lo = ((-a_hi).mul_add(hbar, p) + p_err) / hbar;

    // A θ₀
    let (x_hi, x_err) = two_prod(a_hi, theta0);
    let x_lo = x_err + a_lo * theta0;

    let k = (x_hi / TWO_PI_HI).round();
    let r = (-k).mul_add(TWO_PI_HI, x_hi);
    let r = r - k * TWO_PI_LO + x_lo;
    let r = r.rem_euclid(TAU);
    // rem_euclid may round up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Dirichlet-kernel visibility of an `n`-layer ensemble.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Visibility {
    value: f64,
}

impl Visibility {
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0.0
    }
}

/// `D = sin(n x) / (n sin x) = (1/n) Σ_{j=-ℓ}^{ℓ} e^{2ijx}` for odd `n`.
///
/// Near `sin x = 0` the cosine-sum form is used and returns the limit `+1`.
/// Where `n x` is a multiple of `π` that `x` is not, the result is exactly
/// zero, which downstream code uses as the divergence flag.
pub fn dirichlet_visibility(x: f64, n_layer: u64) -> Result<Visibility> {
    if n_layer == 0 || n_layer % 2 == 0 {
        return Err(Error::EvenLayerCount(n_layer));
    }
    if n_layer == 1 {
        return Ok(Visibility { value: 1.0 });
    }
    let n = n_layer as f64;

    let turns = n * x / PI;
    let k = turns.round();
    if (turns - k).abs() <= DIVERGENCE_SNAP_TOL * k.abs().max(1.0) && (k as i128) % (n_layer as i128) != 0 {
        return Ok(Visibility { value: 0.0 });
    }

    let s = x.sin();
    let value = if s.abs() < DIRICHLET_SINGULAR_TOL {
        let ell = (n_layer - 1) / 2;
        let sum: f64 = (1..=ell).map(|j| (2.0 * j as f64 * x).cos()).sum();
        (1.0 + 2.0 * sum) / n
    } else {
        (n * x).sin() / (n * s)
    };
    Ok(Visibility {
        value: value.clamp(-1.0, 1.0),
    })
}

/// `Ĥⱼ = (ΔE/2)(θ₀ + jα) σᶻ` for layer `j ∈ [-ℓ, ℓ]`.
pub fn hamiltonian(cfg: &ClockConfig, layer: i64) -> Result<Operator2> {
    if layer.unsigned_abs() > cfg.ell as u64 {
        return Err(Error::LayerOutOfRange { layer, ell: cfg.ell });
    }
    let scale = 0.5 * cfg.delta_e * (cfg.theta0 + layer as f64 * cfg.alpha());
    Ok(Operator2::sigma_z().scale_real(scale))
}

/// `½[I + D(e^{-iψ}|0⟩⟨1| + e^{iψ}|1⟩⟨0|)]`.
pub(crate) fn dephased_state(psi: f64, d: f64) -> Operator2 {
    let off = Complex::from_polar(0.5 * d, -psi);
    Operator2::identity().scale_real(0.5)
        + Operator2::ket_bra(0, 1).scale(off)
        + Operator2::ket_bra(1, 0).scale(off.conj())
}

/// `|ψ±⟩ = (|0⟩ ± e^{iψ}|1⟩)/√2`.
pub fn psi_pm(psi: f64) -> [[Complex; 2]; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let phase = Complex::from_polar(r, psi);
    [[Complex::new(r, 0.0), phase], [Complex::new(r, 0.0), -phase]]
}

/// The pure state of a single-layer clock after time `τ`.
pub fn single_layer_state(cfg: &ClockConfig) -> DensityOperator {
    dephased_state(cfg.psi(), 1.0)
        .validate_density()
        .expect("pure clock state is a valid density operator")
}

/// The layer-averaged state, built from its eigendecomposition
/// `½[(1+D)|ψ₊⟩⟨ψ₊| + (1−D)|ψ₋⟩⟨ψ₋|]`.
pub fn multilayer_state(cfg: &ClockConfig) -> (DensityOperator, Visibility) {
    let vis = cfg.visibility();
    let d = vis.value();
    let [plus, minus] = psi_pm(cfg.psi());
    let rho = Operator2::outer(plus, plus).scale_real(0.5 * (1.0 + d))
        + Operator2::outer(minus, minus).scale_real(0.5 * (1.0 - d));
    let rho = rho
        .validate_density()
        .expect("layer average is a valid density operator");
    (rho, vis)
}

/// `∂ρ/∂θ₀` of the layer-averaged state, in closed form.
pub fn multilayer_state_derivative(cfg: &ClockConfig) -> Operator2 {
    let d = cfg.visibility().value();
    let off = Complex::from_polar(0.5 * d * cfg.a(), -cfg.psi()) * Complex::new(0.0, -1.0);
    Operator2::ket_bra(0, 1).scale(off) + Operator2::ket_bra(1, 0).scale(off.conj())
}

//! Flat `key = value` configuration files.
//!
//! ```text
//! clock_wavelength_nm = 332      # or delta_e_joule
//! magic_wavelength_nm = 420      # or h_spacing_m
//! tau_s = 1.2e5
//! theta0 = 1.0                   # or psi_reduced
//! ell = 50
//! n_site = 10000
//! g = 9.80665
//! # optional constant overrides: hbar, c, planck_h, g_default
//! ```
//!
//! The format is parsed as TOML, so `#` comments and blank lines work.

use std::path::Path;

use serde::Deserialize;

use crate::atoms::wavelength_to_energy_with;
use crate::clock::{ClockConfig, PhysicalConstants};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub delta_e_joule: Option<f64>,
    pub clock_wavelength_nm: Option<f64>,
    pub tau_s: Option<f64>,
    pub theta0: Option<f64>,
    pub psi_reduced: Option<f64>,
    pub g: Option<f64>,
    pub h_spacing_m: Option<f64>,
    pub magic_wavelength_nm: Option<f64>,
    pub ell: Option<u32>,
    pub n_site: Option<u64>,
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub planck_h: Option<f64>,
    pub g_default: Option<f64>,
}

fn exclusive<T: Copy>(a: Option<T>, b: Option<T>, names: (&str, &str)) -> Result<Option<(bool, T)>> {
    match (a, b) {
        (Some(_), Some(_)) => Err(Error::InvalidConfig(format!(
            "`{}` and `{}` are mutually exclusive",
            names.0, names.1
        ))),
        (Some(v), None) => Ok(Some((true, v))),
        (None, Some(v)) => Ok(Some((false, v))),
        (None, None) => Ok(None),
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// CODATA defaults with any overrides from the file applied.
    pub fn constants(&self) -> Result<PhysicalConstants> {
        let mut k = PhysicalConstants::default();
        if let Some(v) = self.hbar {
            k.hbar = v;
        }
        if let Some(v) = self.c {
            k.c = v;
        }
        if let Some(v) = self.planck_h {
            k.planck_h = v;
        }
        if let Some(v) = self.g_default {
            k.g_default = v;
        }
        k.validate()?;
        Ok(k)
    }

    /// Builds a clock configuration. Energy, spacing and `tau_s` are
    /// required; `θ₀` defaults to 1, `ell` to 0, `n_site` to 1 and `g` to
    /// the constants' default.
    pub fn to_clock_config(&self) -> Result<ClockConfig> {
        let constants = self.constants()?;
        let missing = |what: &str| Error::InvalidConfig(format!("missing {what}"));

        let delta_e = match exclusive(
            self.delta_e_joule,
            self.clock_wavelength_nm,
            ("delta_e_joule", "clock_wavelength_nm"),
        )? {
            Some((true, e)) => e,
            Some((false, nm)) => wavelength_to_energy_with(nm, &constants)?,
            None => return Err(missing("delta_e_joule or clock_wavelength_nm")),
        };
        let h_spacing = match exclusive(
            self.h_spacing_m,
            self.magic_wavelength_nm,
            ("h_spacing_m", "magic_wavelength_nm"),
        )? {
            Some((true, h)) => h,
            Some((false, nm)) => {
                if !(nm.is_finite() && nm > 0.0) {
                    return Err(Error::NonPositiveWavelength(nm));
                }
                nm * 1e-9
            }
            None => return Err(missing("h_spacing_m or magic_wavelength_nm")),
        };
        let phase = exclusive(self.theta0, self.psi_reduced, ("theta0", "psi_reduced"))?;
        let tau = self.tau_s.ok_or_else(|| missing("tau_s"))?;

        let cfg = ClockConfig {
            delta_e,
            tau,
            theta0: match phase {
                Some((true, t)) => t,
                _ => 1.0,
            },
            g: self.g.unwrap_or(constants.g_default),
            h_spacing,
            ell: self.ell.unwrap_or(0),
            n_site: self.n_site.unwrap_or(1),
            constants,
            psi_override: None,
        };
        cfg.validate()?;
        match phase {
            Some((false, psi)) => cfg.with_reduced_phase(psi),
            _ => Ok(cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cd_from_wavelengths() {
        let cfg = ConfigFile::parse(
            "clock_wavelength_nm = 332\nmagic_wavelength_nm = 420\ntau_s = 1.2e5\nell = 50\nn_site = 10000\n",
        )
        .unwrap()
        .to_clock_config()
        .unwrap();
        assert!((cfg.delta_e - 5.983e-19).abs() < 1e-22);
        assert!((cfg.h_spacing - 4.2e-7).abs() < 1e-20);
        assert_eq!(cfg.n_layer(), 101);
        assert_eq!(cfg.g, 9.806_65);
        assert_eq!(cfg.theta0, 1.0);
    }

    #[test]
    fn explicit_fields_and_overrides() {
        let text = "# comment\ndelta_e_joule = 6.0e-19\nh_spacing_m = 4.2e-7\ntau_s = 10\npsi_reduced = 7.0\ng = 9.8\nhbar = 1.0e-34\n";
        let cfg = ConfigFile::parse(text).unwrap().to_clock_config().unwrap();
        assert_eq!(cfg.delta_e, 6.0e-19);
        assert_eq!(cfg.tau, 10.0);
        assert_eq!(cfg.g, 9.8);
        assert_eq!(cfg.constants.hbar, 1.0e-34);
        assert!((cfg.psi() - (7.0 - std::f64::consts::TAU)).abs() < 1e-15);
    }

    #[test]
    fn rejects_conflicts_and_gaps() {
        let both = "delta_e_joule = 1e-19\nclock_wavelength_nm = 500\nh_spacing_m = 1e-7\ntau_s = 1\n";
        assert!(matches!(
            ConfigFile::parse(both).unwrap().to_clock_config(),
            Err(Error::InvalidConfig(_))
        ));
        let no_tau = "delta_e_joule = 1e-19\nh_spacing_m = 1e-7\n";
        assert!(ConfigFile::parse(no_tau).unwrap().to_clock_config().is_err());
        assert!(matches!(ConfigFile::parse("colour = 3\n"), Err(Error::ConfigParse(_))));
        let neg = "delta_e_joule = 1e-19\nh_spacing_m = 1e-7\ntau_s = 1\nc = -1\n";
        assert!(ConfigFile::parse(neg).unwrap().to_clock_config().is_err());
    }
}

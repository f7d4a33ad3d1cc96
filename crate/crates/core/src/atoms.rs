//! Clock species, wavelength conversions and the optimal interrogation
//! time for each.
//!
//! The clock transition sets `ΔE = h c / λ_clock` and the lattice spacing
//! is taken to be the magic wavelength.

use crate::clock::PhysicalConstants;
use crate::error::{Error, Result};
use crate::estimation::tau_min_analytic;

/// Layer count of a million-atom cube, 100 atoms per side.
pub const REFERENCE_LAYERS: u64 = 100;
/// Tolerance against the two-significant-figure reference times.
pub const TABLE_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    pub name: &'static str,
    pub clock_wavelength_nm: f64,
    pub magic_wavelength_nm: f64,
    /// Published optimal interrogation time at 100 layers, s.
    pub reference_tau_min_s: f64,
}

pub const CATALOG: [AtomSpec; 5] = [
    AtomSpec {
        name: "Sr",
        clock_wavelength_nm: 698.0,
        magic_wavelength_nm: 813.0,
        reference_tau_min_s: 1.3e5,
    },
    AtomSpec {
        name: "Yb",
        clock_wavelength_nm: 578.0,
        magic_wavelength_nm: 759.0,
        reference_tau_min_s: 1.2e5,
    },
    AtomSpec {
        name: "Cd",
        clock_wavelength_nm: 332.0,
        magic_wavelength_nm: 420.0,
        reference_tau_min_s: 1.2e5,
    },
    AtomSpec {
        name: "Hg",
        clock_wavelength_nm: 266.0,
        magic_wavelength_nm: 363.0,
        reference_tau_min_s: 1.1e5,
    },
    AtomSpec {
        name: "Mg",
        clock_wavelength_nm: 458.0,
        magic_wavelength_nm: 468.0,
        reference_tau_min_s: 1.5e5,
    },
];

/// Case-insensitive catalog lookup.
pub fn find_atom(name: &str) -> Result<&'static AtomSpec> {
    CATALOG
        .iter()
        .find(|a| a.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownAtom(name.to_owned()))
}

fn nm_to_m(lambda_nm: f64) -> Result<f64> {
    if !(lambda_nm.is_finite() && lambda_nm > 0.0) {
        return Err(Error::NonPositiveWavelength(lambda_nm));
    }
    Ok(lambda_nm * 1e-9)
}

/// `ΔE = h c / λ` with CODATA constants.
pub fn wavelength_to_energy(lambda_nm: f64) -> Result<f64> {
    wavelength_to_energy_with(lambda_nm, &PhysicalConstants::default())
}

pub fn wavelength_to_energy_with(lambda_nm: f64, constants: &PhysicalConstants) -> Result<f64> {
    Ok(constants.planck_h * constants.c / nm_to_m(lambda_nm)?)
}

/// Magic wavelength as a lattice spacing in metres.
pub fn layer_spacing_m(atom: &AtomSpec) -> Result<f64> {
    nm_to_m(atom.magic_wavelength_nm)
}

/// First-minimum interrogation time for `atom` stacked in `n_layer` layers.
///
/// Any positive layer count is accepted here, including the even count of
/// a 100-per-side cube; the formula does not depend on the parity.
pub fn tau_min_for_atom(atom: &AtomSpec, n_layer: u64, g: f64) -> Result<f64> {
    tau_min_for_atom_with(atom, n_layer, g, &PhysicalConstants::default())
}

pub fn tau_min_for_atom_with(
    atom: &AtomSpec,
    n_layer: u64,
    g: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if n_layer == 0 {
        return Err(Error::NonPositiveInput("n_layer"));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::NonPositiveInput("g"));
    }
    let delta_e = wavelength_to_energy_with(atom.clock_wavelength_nm, constants)?;
    let h = layer_spacing_m(atom)?;
    Ok(tau_min_analytic(delta_e, g, h, n_layer, constants))
}

/// One row of the reproduced species table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub atom: &'static AtomSpec,
    pub tau_min_s: f64,
    /// `(computed − reference) / reference`.
    pub rel_dev: f64,
}

pub fn atoms_table(n_layer: u64, g: f64, constants: &PhysicalConstants) -> Result<Vec<TableRow>> {
    CATALOG
        .iter()
        .map(|atom| {
            let tau_min_s = tau_min_for_atom_with(atom, n_layer, g, constants)?;
            Ok(TableRow {
                atom,
                tau_min_s,
                rel_dev: (tau_min_s - atom.reference_tau_min_s) / atom.reference_tau_min_s,
            })
        })
        .collect()
}

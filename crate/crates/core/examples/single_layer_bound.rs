//! Cramér–Rao bound for a single-layer cadmium clock as the interrogation
//! time grows.
//!
//! ```text
//! cargo run --example single_layer_bound
//! ```

use gravclock::atoms::wavelength_to_energy;
use gravclock::estimation::{crb_report, sql_sigma};
use gravclock::ClockConfig;

fn main() -> gravclock::Result<()> {
    let delta_e = wavelength_to_energy(332.0)?;
    let n_site = 10_000;
    println!("{:>10} {:>14} {:>14} {:>14}", "tau [s]", "QFI/atom", "Var[V]/c^4", "sigma_V [m2/s2]");
    for tau in [1e-3, 1e-1, 1.0, 10.0, 1e3] {
        let cfg = ClockConfig::physical(delta_e, tau, 1.0, 420e-9, 0, n_site)?;
        let r = crb_report(&cfg);
        println!(
            "{tau:>10.1e} {:>14.4e} {:>14.4e} {:>14.4e}",
            r.qfi_per_atom, r.var_v0_lower_over_c4, r.sigma_v0_lower
        );
    }

    // the same number through the standard-quantum-limit formula
    let tau = 1.0;
    let cfg = ClockConfig::physical(delta_e, tau, 1.0, 420e-9, 0, n_site)?;
    let omega0 = delta_e / cfg.constants.hbar;
    let sigma = sql_sigma(tau, 1.0, 1.0, n_site, omega0, 1.0)?;
    println!("SQL sigma^2 at 1 s: {:.4e}", sigma * sigma);
    Ok(())
}

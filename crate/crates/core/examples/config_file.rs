//! Builds a clock from a `key = value` file and prints its bound.

use gravclock::config::ConfigFile;
use gravclock::estimation::crb_report;

const CD: &str = "
clock_wavelength_nm = 332
magic_wavelength_nm = 420
tau_s = 1.2e5
ell = 50
n_site = 10000
";

fn main() -> gravclock::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => CD.to_owned(),
    };
    let cfg = ConfigFile::parse(&text)?.to_clock_config()?;
    let r = crb_report(&cfg);
    println!("A = {:.6e}, alpha = {:.6e}, layers = {}", cfg.a(), cfg.alpha(), cfg.n_layer());
    println!("visibility = {:.6}", cfg.visibility().value());
    println!("sigma_V0 >= {:.4e} m^2/s^2 (diverged: {})", r.sigma_v0_lower, r.diverged);
    Ok(())
}

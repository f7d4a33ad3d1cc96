//! Layer-averaged state, divergence times and the exact optimum for a
//! 101-layer cadmium clock.

use gravclock::atoms::wavelength_to_energy;
use gravclock::clock::multilayer_state;
use gravclock::estimation::{bound_at, limit_sigma, locate_min_exact, time_marks};
use gravclock::ClockConfig;

fn main() -> gravclock::Result<()> {
    let delta_e = wavelength_to_energy(332.0)?;
    let cfg = ClockConfig::physical(delta_e, 1.2e5, 1.0, 420e-9, 50, 10_000)?;

    let (rho, d) = multilayer_state(&cfg);
    println!("layers = {}, visibility at tau = {} s: {:.6}", cfg.n_layer(), cfg.tau, d.value());
    println!("purity = {:.6}", rho.purity());

    let marks = time_marks(&cfg, 5)?;
    println!("tau_min (small angle) = {:.4e} s ({:.1} h)", marks.tau_min, marks.tau_min / 3600.0);
    println!("bound there           = {:.4e}", marks.bound_at_min_over_c4);
    let (tau_star, bound_star) = locate_min_exact(&cfg)?;
    println!("tau_min (exact)       = {tau_star:.4e} s, bound {bound_star:.4e}");

    for (k, t) in marks.tau_div.iter().enumerate() {
        println!("tau_div({}) = {t:.4e} s -> bound {}", k + 1, bound_at(&cfg, *t));
    }

    let (by_dv, by_aspect) = limit_sigma(&cfg);
    println!("limiting sigma(V0)/c^2 = {by_dv:.4e} = {by_aspect:.4e}");
    Ok(())
}

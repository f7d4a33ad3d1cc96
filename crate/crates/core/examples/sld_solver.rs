//! The symmetric logarithmic derivative of an arbitrary qubit state, and
//! the closed-form clock QFI it reproduces.

use gravclock::clock::{multilayer_state, multilayer_state_derivative};
use gravclock::estimation::{qfi_multilayer, sld_generic};
use gravclock::{Complex, ClockConfig, Operator2};

fn main() -> gravclock::Result<()> {
    let c = Complex::new;
    let rho = Operator2::new([[c(0.7, 0.0), c(0.1, -0.2)], [c(0.1, 0.2), c(0.3, 0.0)]]).validate_density()?;
    let drho = Operator2::new([[c(0.2, 0.0), c(0.0, 0.3)], [c(0.0, -0.3), c(-0.2, 0.0)]]);
    let sld = sld_generic(&rho, &drho)?;
    println!("L = {:?}", sld.sld.entries);
    println!("QFI = {:.12}, residual = {:.2e}", sld.qfi, sld.residual(&rho, &drho));

    let cfg = ClockConfig::dimensionless(5.0, 0.2, 1.0, 2, 1)?;
    let (rho, d) = multilayer_state(&cfg);
    let generic = sld_generic(&rho, &multilayer_state_derivative(&cfg))?.qfi;
    println!("clock: D = {:.6}, generic {generic:.12}, closed form {:.12}", d.value(), qfi_multilayer(&cfg));
    Ok(())
}

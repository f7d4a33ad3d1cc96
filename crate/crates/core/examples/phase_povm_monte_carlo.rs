//! Phase-POVM sampling and maximum-likelihood estimation against the
//! Fisher-information bound.

use gravclock::measurement::{classical_fisher_quadrature, phase_povm_fisher, run_estimation, OutcomeModel};

fn main() -> gravclock::Result<()> {
    let n = 10_000;
    for d in [1.0, 0.8, 0.6, 0.3] {
        let model = OutcomeModel::new(1.0, d)?;
        let info = phase_povm_fisher(d);
        let run = run_estimation(&model, n, 400, 2024)?;
        println!(
            "D = {d:.1}: I_psi = {info:.5} (quadrature {:.5}, SLD {:.5}), MSE*n*I = {:.3}",
            classical_fisher_quadrature(&model),
            d * d,
            run.summary.mse * n as f64 * info
        );
    }
    Ok(())
}

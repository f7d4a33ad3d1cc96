//! Optimal interrogation time for each catalogued clock species.

use gravclock::atoms::{atoms_table, REFERENCE_LAYERS};
use gravclock::report::write_atoms_csv;
use gravclock::PhysicalConstants;

fn main() -> gravclock::Result<()> {
    let k = PhysicalConstants::default();
    let rows = atoms_table(REFERENCE_LAYERS, k.g_default, &k)?;
    for r in &rows {
        println!(
            "{:<3} {:>10.3e} s  {:>5.1} h  ({:+.1}% vs reference)",
            r.atom.name,
            r.tau_min_s,
            r.tau_min_s / 3600.0,
            100.0 * r.rel_dev
        );
    }
    write_atoms_csv(std::io::stdout().lock(), &rows)
}

//! Writes the single-layer and five-layer bound curves as CSV and SVG into
//! a directory (default `target/curves`). The grid lands on the five-layer
//! divergence points.

use std::f64::consts::PI;
use std::path::PathBuf;

use gravclock::report::{emit_fig2, emit_fig4, render_svg, write_curve_csv};

fn main() -> gravclock::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/curves".into()));
    std::fs::create_dir_all(&dir)?;

    let single = emit_fig2(8.0 * PI, 1000)?;
    let layered = emit_fig4(5, 1.0, 8.0 * PI, 1000)?;
    for (name, curve, title) in [("single", &single, "single layer"), ("five_layers", &layered, "5 layers")] {
        write_curve_csv(std::fs::File::create(dir.join(format!("{name}.csv")))?, curve)?;
        std::fs::write(dir.join(format!("{name}.svg")), render_svg(curve, title))?;
    }
    let flagged = layered.iter().filter(|p| p.diverged).count();
    println!("wrote {} ({} diverged grid points)", dir.display(), flagged);
    Ok(())
}

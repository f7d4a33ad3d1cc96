//! Plot-ready curves and their CSV / SVG serializations.
//!
//! Every float is written with 12 significant digits in scientific
//! notation and every record ends in `\n`, so identical inputs give
//! byte-identical files. Infinite bounds are written as `inf` with
//! `diverged = true`.

use std::fmt::Write as _;
use std::io::Write;

use crate::atoms::TableRow;
use crate::clock::dirichlet_visibility;
use crate::error::{Error, Result};
use crate::measurement::EstimationRun;

/// A point of `Var[V]·N_site/c⁴` against `A = ΔEτ/ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub diverged: bool,
}

fn grid(a_max: f64, n_points: usize) -> Result<impl Iterator<Item = f64>> {
    if !(a_max.is_finite() && a_max > 0.0) {
        return Err(Error::NonPositiveInput("a_max"));
    }
    if n_points < 2 {
        return Err(Error::NonPositiveInput("n_points"));
    }
    let step = a_max / n_points as f64;
    Ok((1..=n_points).map(move |i| i as f64 * step))
}

/// Single-layer bound `1/x²` on `x = i·a_max/n_points`, `i = 1..=n_points`.
pub fn emit_fig2(a_max: f64, n_points: usize) -> Result<Vec<CurvePoint>> {
    Ok(grid(a_max, n_points)?
        .map(|x| CurvePoint {
            x,
            y: 1.0 / (x * x),
            diverged: false,
        })
        .collect())
}

/// Layered bound `(1/x²)(n sin(xα/2) / sin(xαn/2))²` at a single `x`.
pub fn fig4_point(x: f64, n_layer: u64, alpha: f64) -> Result<CurvePoint> {
    let d = dirichlet_visibility(0.5 * x * alpha, n_layer)?.value();
    let xd = x * d;
    if xd == 0.0 {
        return Ok(CurvePoint {
            x,
            y: f64::INFINITY,
            diverged: true,
        });
    }
    Ok(CurvePoint {
        x,
        y: 1.0 / (xd * xd),
        diverged: false,
    })
}

/// [`fig4_point`] over the same grid as [`emit_fig2`].
pub fn emit_fig4(n_layer: u64, alpha: f64, a_max: f64, n_points: usize) -> Result<Vec<CurvePoint>> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::NonPositiveInput("alpha"));
    }
    grid(a_max, n_points)?
        .map(|x| fig4_point(x, n_layer, alpha))
        .collect()
}

/// 12 significant digits, or `inf` / `-inf` / `nan`.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.11e}")
    }
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// `x,y,diverged`.
pub fn write_curve_csv<W: Write>(w: W, points: &[CurvePoint]) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["x", "y", "diverged"])?;
    for p in points {
        out.write_record([format_value(p.x), format_value(p.y), p.diverged.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// `trial,n_samples,psi_true,psi_hat,sq_err`.
pub fn write_simulation_csv<W: Write>(w: W, run: &EstimationRun) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["trial", "n_samples", "psi_true", "psi_hat", "sq_err"])?;
    for (trial, (psi_hat, sq_err)) in run.estimates.iter().zip(run.squared_errors()).enumerate() {
        out.write_record([
            trial.to_string(),
            run.n_samples.to_string(),
            format_value(run.psi_true),
            format_value(*psi_hat),
            format_value(sq_err),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// `atom,clock_nm,magic_nm,tau_min_s,paper_tau_min_s,rel_dev`.
pub fn write_atoms_csv<W: Write>(w: W, rows: &[TableRow]) -> Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["atom", "clock_nm", "magic_nm", "tau_min_s", "paper_tau_min_s", "rel_dev"])?;
    for r in rows {
        out.write_record([
            r.atom.name.to_string(),
            format_value(r.atom.clock_wavelength_nm),
            format_value(r.atom.magic_wavelength_nm),
            format_value(r.tau_min_s),
            format_value(r.atom.reference_tau_min_s),
            format_value(r.rel_dev),
        ])?;
    }
    out.flush()?;
    Ok(())
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 420.0;
const MARGIN: f64 = 50.0;

/// Line plot with a log-scaled y axis. Diverged points break the line and
/// are marked with a vertical dashed rule.
pub fn render_svg(points: &[CurvePoint], title: &str) -> String {
    let finite: Vec<&CurvePoint> = points.iter().filter(|p| p.y.is_finite() && p.y > 0.0).collect();
    let x_max = points.iter().map(|p| p.x).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let (mut ly_min, mut ly_max) = finite
        .iter()
        .map(|p| p.y.log10())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !ly_min.is_finite() {
        ly_min = 0.0;
        ly_max = 1.0;
    }
    // clip the plot so near-divergent spikes do not flatten the rest
    ly_max = ly_max.min(ly_min + 8.0);
    if ly_max - ly_min < 1e-9 {
        ly_max = ly_min + 1.0;
    }

    let px = |x: f64| MARGIN + x / x_max * (SVG_W - 2.0 * MARGIN);
    let py = |y: f64| {
        let t = ((y.log10() - ly_min) / (ly_max - ly_min)).clamp(0.0, 1.0);
        SVG_H - MARGIN - t * (SVG_H - 2.0 * MARGIN)
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        SVG_W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        svg,
        r#"<path d="M{m} {b} H{r} M{m} {b} V{m}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = SVG_H - MARGIN,
        r = SVG_W - MARGIN
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">ΔEτ/ħ (0 to {})</text>"#,
        SVG_W / 2.0,
        SVG_H - 15.0,
        format_value(x_max)
    );
    let _ = writeln!(
        svg,
        r#"<text x="12" y="{}" font-family="sans-serif" font-size="12" transform="rotate(-90 12 {})">log10 bound ({:.2} to {:.2})</text>"#,
        SVG_H / 2.0,
        SVG_H / 2.0,
        ly_min,
        ly_max
    );

    let mut segment = String::new();
    let flush = |segment: &mut String, svg: &mut String| {
        if segment.contains(' ') {
            let _ = writeln!(svg, r#"<polyline points="{}" stroke="steelblue" fill="none"/>"#, segment.trim());
        }
        segment.clear();
    };
    for p in points {
        if p.diverged || !p.y.is_finite() || p.y <= 0.0 {
            flush(&mut segment, &mut svg);
            if p.diverged {
                let _ = writeln!(
                    svg,
                    r#"<line x1="{x:.2}" y1="{t}" x2="{x:.2}" y2="{b}" stroke="crimson" stroke-dasharray="4 3"/>"#,
                    x = px(p.x),
                    t = MARGIN,
                    b = SVG_H - MARGIN
                );
            }
            continue;
        }
        let _ = write!(segment, "{:.2},{:.2} ", px(p.x), py(p.y));
    }
    flush(&mut segment, &mut svg);
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

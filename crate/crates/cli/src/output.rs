//! CSV and SVG writers. Floats use Rust's shortest round-trip form, so
//! identical runs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bousslab_core::decay::{DecayFit, NormKind, NormSeries};

use crate::error::CliError;

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-4, 1e15)` so tiny monitor values stay short.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

pub const NORMS_HEADER: [&str; 7] = ["t", "l2_uv", "linf_uv", "h1_uv", "l2_etaw", "boundary_monitor", "linf_sum"];
pub const FIT_HEADER: [&str; 6] = ["preset", "diss", "norm", "r", "C", "plateau"];
pub const CLASSIFY_HEADER: [&str; 6] = ["preset", "diss", "klass", "delta_m", "delta_M", "resonance"];

pub fn write_norms(path: &Path, series: &NormSeries) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(NORMS_HEADER)?;
    for r in series.records() {
        w.write_record(
            [r.t, r.l2_uv, r.linf_uv, r.h1_uv, r.l2_etaw, r.boundary_monitor, r.linf_sum].map(num),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// One row per norm that could be fitted.
pub fn write_fits(path: &Path, preset: &str, diss: &str, fits: &[(NormKind, DecayFit)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(FIT_HEADER)?;
    for (kind, f) in fits {
        w.write_record([
            preset.to_string(),
            diss.to_string(),
            kind.id().to_string(),
            num(f.r),
            num(f.c),
            f.plateau.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `(norm, colour, log-log points)`.
type Trace = (NormKind, &'static str, Vec<(f64, f64)>);

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

/// Log-log plot of the L² and L∞ (sum) series with their fitted power laws.
pub fn decay_svg(series: &NormSeries, fits: &[(NormKind, DecayFit)]) -> String {
    let shown = [(NormKind::L2, "#1f77b4"), (NormKind::LinfSum, "#d62728")];
    let points: Vec<Trace> = shown
        .iter()
        .map(|&(k, colour)| {
            let pts = series
                .values(k)
                .into_iter()
                .filter(|&(t, v)| t > 0.0 && v > 0.0 && v.is_finite())
                .map(|(t, v)| (t.log10(), v.log10()))
                .collect();
            (k, colour, pts)
        })
        .collect();

    let all = points.iter().flat_map(|(_, _, p)| p.iter().copied());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, -1.0, 0.0);
    }
    let (x0, x1) = (x0.floor(), x1.ceil().max(x0.floor() + 1.0));
    let (y0, y1) = (y0.floor(), y1.ceil().max(y0.floor() + 1.0));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<defs><clipPath id="frame"><rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}"/></clipPath></defs>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    )
    .unwrap();
    // Decade grid.
    for d in x0 as i32..=x1 as i32 {
        let x = sx(d as f64);
        writeln!(s, r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##, sy(y0), sy(y1)).unwrap();
        writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{d}</text>"#, sy(y0) + 18.0).unwrap();
    }
    for d in y0 as i32..=y1 as i32 {
        let y = sy(d as f64);
        writeln!(s, r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##, sx(x0), sx(x1)).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"#, sx(x0) - 6.0, y + 4.0).unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#,
        WIDTH / 2.0,
        HEIGHT - 16.0
    )
    .unwrap();

    for (i, (kind, colour, pts)) in points.iter().enumerate() {
        if !pts.is_empty() {
            let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
            writeln!(s, r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#, path.join(" ")).unwrap();
        }
        let mut label = kind.id().to_string();
        if let Some((_, f)) = fits.iter().find(|(k, _)| k == kind) {
            // C·t^(−r) across the plotted range.
            let line = |x: f64| f.c.log10() - f.r * x;
            writeln!(
                s,
                r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-dasharray="6 4" clip-path="url(#frame)"/>"#,
                sx(x0),
                sy(line(x0)),
                sx(x1),
                sy(line(x1))
            )
            .unwrap();
            write!(label, ": r = {:.4}, C = {:.4}", f.r, f.c).unwrap();
        }
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{colour}">{label}</text>"#,
            MARGIN + 10.0,
            MARGIN - 30.0 + 16.0 * i as f64
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(path: &Path, series: &NormSeries, fits: &[(NormKind, DecayFit)]) -> Result<(), CliError> {
    fs::write(path, decay_svg(series, fits))?;
    Ok(())
}

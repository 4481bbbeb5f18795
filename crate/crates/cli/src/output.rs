//! CSV and SVG emission.
//!
//! All numeric text goes through [`fmt_f64`] (shortest round-trip form) or
//! [`sig10`] (fixed significant digits).  Rust's float formatting always
//! uses `.` as the decimal separator and never inserts grouping characters,
//! so the output is locale-independent by construction; rows are terminated
//! with a bare line feed.
//!
//! The SVG writer draws axes, ticks, and polyline paths inline — the file
//! references nothing external and renders standalone.

use std::fmt::Write as _;
use std::path::Path;

/// Column header of curve CSV files, one row per ξ₁ grid point.
pub const CURVE_HEADER: &str =
    "xi,mu_computed,mu_asymptotic,newton_iters,pde_residual,projection_error,min_u,max_u";

/// Shortest decimal form that round-trips; non-finite values spelled in
/// lower case (`nan`, `inf`, `-inf`) for CSV consumers.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v}")
    }
}

/// Fixed-point form with ten significant digits, for eigenvalue reports.
pub fn sig10(v: f64) -> String {
    if !v.is_finite() {
        return fmt_f64(v);
    }
    if v == 0.0 {
        return "0.000000000".into();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (9 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// One CSV row from already-formatted cells.
pub fn csv_row(cells: &[String]) -> String {
    let mut row = cells.join(",");
    row.push('\n');
    row
}

/// Write a complete CSV file: header line, then one row per record.
pub fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut text = String::with_capacity(rows.len() * 64 + header.len() + 1);
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(&csv_row(row));
    }
    std::fs::write(path, text)
        .map_err(|err| anyhow::anyhow!("writing {}: {err}", path.display()))
}

/// A single curve on a plot.
pub struct PlotSeries {
    /// Legend label.
    pub label: String,
    /// Dashed stroke (asymptotic companions) instead of solid (computed).
    pub dashed: bool,
    /// Data points; non-finite entries break the polyline.
    pub points: Vec<(f64, f64)>,
}

const SVG_W: f64 = 860.0;
const SVG_H: f64 = 540.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 42.0;
const MARGIN_B: f64 = 54.0;

/// Render a self-contained SVG line chart.
pub fn render_svg(title: &str, x_label: &str, y_label: &str, series: &[PlotSeries]) -> String {
    let finite: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(svg, r#"<rect width="{SVG_W}" height="{SVG_H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        SVG_W / 2.0,
        escape_xml(title)
    );

    if finite.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">no finite data points</text>"#,
            SVG_W / 2.0,
            SVG_H / 2.0
        );
        svg.push_str("</svg>\n");
        return svg;
    }

    let (x_lo, x_hi) = padded_bounds(finite.iter().map(|p| p.0));
    let (y_lo, y_hi) = padded_bounds(finite.iter().map(|p| p.1));
    let map_x = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * (SVG_W - MARGIN_L - MARGIN_R);
    let map_y = |y: f64| SVG_H - MARGIN_B - (y - y_lo) / (y_hi - y_lo) * (SVG_H - MARGIN_T - MARGIN_B);

    // Frame and ticks.
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{:.1}" height="{:.1}" fill="none" stroke="#444" stroke-width="1"/>"##,
        SVG_W - MARGIN_L - MARGIN_R,
        SVG_H - MARGIN_T - MARGIN_B
    );
    for i in 0..=5 {
        let fx = i as f64 / 5.0;
        let xv = x_lo + fx * (x_hi - x_lo);
        let yv = y_lo + fx * (y_hi - y_lo);
        let px = map_x(xv);
        let py = map_y(yv);
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="#444"/>"##,
            SVG_H - MARGIN_B,
            SVG_H - MARGIN_B + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            SVG_H - MARGIN_B + 20.0,
            tick_label(xv)
        );
        let _ = writeln!(
            svg,
            r##"<line x1="{:.1}" y1="{py:.1}" x2="{MARGIN_L}" y2="{py:.1}" stroke="#444"/>"##,
            MARGIN_L - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
            MARGIN_L - 9.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    // Zero line, when the vertical range straddles it.
    if y_lo < 0.0 && y_hi > 0.0 {
        let py = map_y(0.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN_L}" y1="{py:.1}" x2="{:.1}" y2="{py:.1}" stroke="#bbb" stroke-width="0.7"/>"##,
            SVG_W - MARGIN_R
        );
    }

    // Axis labels.
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        MARGIN_L + (SVG_W - MARGIN_L - MARGIN_R) / 2.0,
        SVG_H - 14.0,
        escape_xml(x_label)
    );
    let y_mid = MARGIN_T + (SVG_H - MARGIN_T - MARGIN_B) / 2.0;
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{y_mid:.1}" text-anchor="middle" transform="rotate(-90 18 {y_mid:.1})">{}</text>"#,
        escape_xml(y_label)
    );

    // Curves.
    for s in series {
        let mut d = String::new();
        let mut pen_up = true;
        for &(x, y) in &s.points {
            if !(x.is_finite() && y.is_finite()) {
                pen_up = true;
                continue;
            }
            let _ = write!(d, "{}{:.2} {:.2} ", if pen_up { "M" } else { "L" }, map_x(x), map_y(y));
            pen_up = false;
        }
        let dash = if s.dashed { r#" stroke-dasharray="7 5""# } else { "" };
        let _ = writeln!(
            svg,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="1.4"{dash}/>"#,
            d.trim_end()
        );
    }

    // Legend, top-left inside the frame.
    for (i, s) in series.iter().enumerate() {
        let ly = MARGIN_T + 18.0 + 18.0 * i as f64;
        let dash = if s.dashed { r#" stroke-dasharray="7 5""# } else { "" };
        let _ = writeln!(
            svg,
            r#"<line x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="black" stroke-width="1.4"{dash}/>"#,
            MARGIN_L + 10.0,
            MARGIN_L + 44.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}">{}</text>"#,
            MARGIN_L + 50.0,
            ly + 4.0,
            escape_xml(&s.label)
        );
    }

    svg.push_str("</svg>\n");
    svg
}

/// Data bounds with 4% padding; degenerate ranges widen to a unit span.
fn padded_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !(lo < hi) {
        return (lo - 0.5, lo + 0.5);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Short tick label: round to four decimals, then print the shortest form.
fn tick_label(v: f64) -> String {
    let rounded = (v * 1e4).round() / 1e4;
    fmt_f64(rounded)
}

/// Escape the XML special characters that can appear in labels.
fn escape_xml(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_format_without_locale_artifacts() {
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(-1234.5), "-1234.5");
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        // Round-trip: parsing the printed form recovers the value exactly.
        let v = 5.783185962946785_f64;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn ten_significant_digits_across_magnitudes() {
        assert_eq!(sig10(5.783185962946785), "5.783185963");
        assert_eq!(sig10(14.681970642124863), "14.68197064");
        assert_eq!(sig10(2.404825557695773), "2.404825558");
        assert_eq!(sig10(0.0), "0.000000000");
    }

    #[test]
    fn svg_is_self_contained_and_breaks_on_nan() {
        let series = [
            PlotSeries {
                label: "computed".into(),
                dashed: false,
                points: vec![(0.0, 0.0), (1.0, 1.0), (f64::NAN, 2.0), (3.0, -1.0)],
            },
            PlotSeries {
                label: "asymptotic".into(),
                dashed: true,
                points: vec![(0.0, 0.5), (3.0, 0.5)],
            },
        ];
        let svg = render_svg("title", "xi", "mu", &series);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("stroke-dasharray"));
        // The NaN splits the first path into two `M` segments.
        let path = svg.lines().find(|l| l.contains("<path") && !l.contains("dasharray")).unwrap();
        assert_eq!(path.matches('M').count(), 2, "{path}");
        // No external references of any kind.
        assert!(!svg.contains("http://") || svg.matches("http://").count() == 1); // only the xmlns
        assert!(!svg.contains("href"));
    }

    #[test]
    fn empty_series_render_a_placeholder() {
        let svg = render_svg("t", "x", "y", &[]);
        assert!(svg.contains("no finite data points"));
    }
}

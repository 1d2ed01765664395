//! Minimal static line plot of the three purity curves.

use std::fmt::Write;

use anyondec::{ComparisonReport, Spacing};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;

struct Series<'a> {
    label: &'a str,
    colour: &'a str,
    values: &'a [f64],
}

pub fn render(report: &ComparisonReport, spacing: Spacing) -> String {
    let log = spacing == Spacing::Logarithmic && report.times.first().is_some_and(|t| *t > 0.0);
    let xs: Vec<f64> = report
        .times
        .iter()
        .map(|&t| if log { t.log10() } else { t })
        .collect();
    let (x_lo, x_hi) = (xs[0], xs[xs.len() - 1]);
    let (y_lo, y_hi) = (0.5, 1.0);
    let px = |x: f64| MARGIN + (x - x_lo) / (x_hi - x_lo) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y_lo) / (y_hi - y_lo) * (HEIGHT - 2.0 * MARGIN);

    let series = [
        Series {
            label: "Markovian",
            colour: "#1f77b4",
            values: &report.markovian,
        },
        Series {
            label: "short-time (quadrature)",
            colour: "#d62728",
            values: &report.shorttime_exact,
        },
        Series {
            label: "short-time (asymptotic)",
            colour: "#2ca02c",
            values: &report.shorttime_asymptotic,
        },
    ];

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{a},{b} L{a},{c} L{d},{c}" fill="none" stroke="black"/>"#,
        a = MARGIN,
        b = MARGIN,
        c = HEIGHT - MARGIN,
        d = WIDTH - MARGIN
    );
    for y in [0.5, 0.75, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.2}" font-size="12" text-anchor="end">{y}</text>"#,
            MARGIN - 6.0,
            py(y) + 4.0
        );
    }
    let x_label = if log { "log10(t / s)" } else { "t (s)" };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 20.0
    );
    for (x, anchor) in [(x_lo, "start"), (x_hi, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{}" font-size="12" text-anchor="{anchor}">{x:.3e}</text>"#,
            px(x),
            HEIGHT - MARGIN + 16.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="20" y="{}" font-size="13" transform="rotate(-90 20 {})" text-anchor="middle">purity</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    for (k, ser) in series.iter().enumerate() {
        let points: Vec<String> = xs
            .iter()
            .zip(ser.values)
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y.clamp(y_lo, y_hi))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="series" data-label="{}" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            ser.label,
            ser.colour,
            points.join(" ")
        );
        let ly = MARGIN + 18.0 * k as f64;
        let lx = WIDTH - MARGIN - 190.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/>"#,
            lx + 20.0,
            ser.colour
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            ser.label
        );
    }
    s.push_str("</svg>\n");
    s
}

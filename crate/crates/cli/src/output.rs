//! CSV and SVG rendering for sweep results.

use std::fmt::Write as _;

use skewrel::SweepRow64;

pub const CSV_HEADER: &str = "p,thm_lhs_num,thm_lhs_closed,thm_rhs_num,thm_rhs_closed,\
luo_lhs_closed,luo_rhs_closed,ent_lhs_num,ent_lhs_closed";

/// Rounds to 12 significant digits and prints the shortest decimal for that value.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let exp = rounded.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        // `{}` prints the shortest representation that round-trips.
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn sweep_csv(rows: &[SweepRow64]) -> String {
    let mut out = String::with_capacity(rows.len() * 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.p,
            r.thm_lhs_num,
            r.closed.thm_lhs,
            r.thm_rhs_num,
            r.closed.thm_rhs,
            r.closed.luo_lhs,
            r.closed.luo_rhs,
            r.ent_lhs_num,
            r.closed.ent_lhs,
        ];
        let line: Vec<String> = fields.iter().map(|&v| sig12(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

struct Curve {
    label: &'static str,
    color: &'static str,
    dashed: bool,
    values: Vec<f64>,
}

/// Line chart of every closed-form curve (solid) next to its numeric counterpart (dashed).
pub fn sweep_svg(rows: &[SweepRow64]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 600.0;
    const LEFT: f64 = 70.0;
    const RIGHT: f64 = 220.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 50.0;

    let col = |f: fn(&SweepRow64) -> f64| rows.iter().map(f).collect::<Vec<_>>();
    let curves = vec![
        Curve {
            label: "thm LHS closed",
            color: "#1f4e9c",
            dashed: false,
            values: col(|r| r.closed.thm_lhs),
        },
        Curve {
            label: "thm LHS numeric",
            color: "#1f4e9c",
            dashed: true,
            values: col(|r| r.thm_lhs_num),
        },
        Curve {
            label: "thm RHS closed",
            color: "#c0392b",
            dashed: false,
            values: col(|r| r.closed.thm_rhs),
        },
        Curve {
            label: "thm RHS numeric",
            color: "#c0392b",
            dashed: true,
            values: col(|r| r.thm_rhs_num),
        },
        Curve {
            label: "Luo LHS closed",
            color: "#27ae60",
            dashed: false,
            values: col(|r| r.closed.luo_lhs),
        },
        Curve {
            label: "Luo LHS numeric",
            color: "#27ae60",
            dashed: true,
            values: col(|r| r.luo_lhs_num),
        },
        Curve {
            label: "Luo RHS closed",
            color: "#7f8c8d",
            dashed: false,
            values: col(|r| r.closed.luo_rhs),
        },
        Curve {
            label: "Luo RHS numeric",
            color: "#7f8c8d",
            dashed: true,
            values: col(|r| r.luo_rhs_num),
        },
        Curve {
            label: "entropic LHS closed",
            color: "#2980b9",
            dashed: false,
            values: col(|r| r.closed.ent_lhs),
        },
        Curve {
            label: "entropic LHS numeric",
            color: "#2980b9",
            dashed: true,
            values: col(|r| r.ent_lhs_num),
        },
    ];

    let ps: Vec<f64> = rows.iter().map(|r| r.p).collect();
    let (x0, x1) = (ps[0], ps[ps.len() - 1]);
    let all = curves.iter().flat_map(|c| c.values.iter().copied());
    let (mut y0, mut y1) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if y1 - y0 < 1e-12 {
        y1 = y0 + 1.0;
    }
    let pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    let plot_w = W - LEFT - RIGHT;
    let plot_h = H - TOP - BOTTOM;
    let sx = |p: f64| LEFT + (p - x0) / (x1 - x0) * plot_w;
    let sy = |v: f64| TOP + (y1 - v) / (y1 - y0) * plot_h;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {W} {H}" width="{W}" height="{H}">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let p = x0 + t * (x1 - x0);
        let v = y0 + t * (y1 - y0);
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="middle">{:.2}</text>"#,
            sx(p),
            H - BOTTOM + 18.0,
            p
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-size="12" text-anchor="end">{:.2}</text>"#,
            LEFT - 6.0,
            sy(v) + 4.0,
            v
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-size="14" text-anchor="middle">p</text>"#,
        LEFT + plot_w / 2.0,
        H - 10.0
    )
    .unwrap();

    for (i, c) in curves.iter().enumerate() {
        let pts: Vec<String> = ps
            .iter()
            .zip(&c.values)
            .map(|(&p, &v)| format!("{:.2},{:.2}", sx(p), sy(v)))
            .collect();
        let dash = if c.dashed {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="{}"{} points="{}"/>"#,
            c.color,
            if c.dashed { 1.5 } else { 2.5 },
            dash,
            pts.join(" ")
        )
        .unwrap();
        let ly = TOP + 16.0 + 20.0 * i as f64;
        let lx = W - RIGHT + 15.0;
        writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"{}/>"#,
            lx + 24.0,
            c.color,
            dash
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            c.label
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-1.0), "-1");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(5f64.sqrt() / 3.0), "0.7453559925");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(0.999_999_999_999_9), "1");
        assert_eq!(sig12(4.440_892_098_500_626e-16), "4.4408920985e-16");
        assert_eq!(sig12(123_456_789_012_345.0), "1.23456789012e14");
        assert_eq!(sig12(0.1), "0.1");
    }

    #[test]
    fn header_is_frozen() {
        assert_eq!(
            CSV_HEADER,
            "p,thm_lhs_num,thm_lhs_closed,thm_rhs_num,thm_rhs_closed,luo_lhs_closed,luo_rhs_closed,ent_lhs_num,ent_lhs_closed"
        );
        assert_eq!(CSV_HEADER.split(',').count(), 9);
    }
}

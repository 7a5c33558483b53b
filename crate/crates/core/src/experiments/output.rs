use std::fmt::Write as _;

use super::config::Mitigation;
use super::run::{NoiseSweepRow, PointResult};

/// Chemical accuracy in Hartree.
pub const CHEMICAL_ACCURACY: f64 = 1.6e-3;

pub const DISSOCIATION_HEADER: &str = "r,e_exact,e_vqe,e_vqe_readout,e_rem,e_readout_rem,err_vqe,err_rem";
pub const NOISE_SWEEP_HEADER: &str = "p2,err_vqe,err_readout,err_rem,err_readout_rem";

fn fixed(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

fn sci(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6e}")).unwrap_or_default()
}

pub fn dissociation_csv(rows: &[PointResult], m: Mitigation) -> String {
    let mut out = String::from(DISSOCIATION_HEADER);
    out.push('\n');
    for p in rows {
        let fields = [
            p.r.map(|r| format!("{r:.4}")).unwrap_or_default(),
            fixed(Some(p.e_exact)),
            fixed(Some(p.e_vqe)),
            fixed(Some(p.e_vqe_readout)),
            fixed(p.e_rem),
            fixed(p.e_readout_rem),
            fixed(Some(p.err_vqe())),
            fixed(p.err_selected_rem(m)),
        ];
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

pub fn noise_sweep_csv(rows: &[NoiseSweepRow]) -> String {
    let mut out = String::from(NOISE_SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let p = &row.point;
        let fields =
            [sci(Some(row.p2)), sci(Some(p.err_vqe())), sci(Some(p.err_readout())), sci(p.err_rem()), sci(p.err_readout_rem())];
        let _ = writeln!(out, "{}", fields.join(","));
    }
    out
}

pub struct Series {
    pub name: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
    /// Shaded horizontal band `(y_lo, y_hi)`.
    pub band: Option<(f64, f64)>,
    /// Dashed vertical markers.
    pub markers: Vec<f64>,
}

const W: f64 = 640.0;
const H: f64 = 360.0;
const LEFT: f64 = 78.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 34.0;
const BOTTOM: f64 = 48.0;

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let vs: Vec<f64> =
            values.filter(|v| v.is_finite() && (!log || *v > 0.0)).map(|v| if log { v.log10() } else { v }).collect();
        let (mut lo, mut hi) = vs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if log {
            lo = lo.floor();
            hi = hi.ceil().max(lo + 1.0);
        } else {
            let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 * lo.abs().max(1e-3) };
            lo -= pad;
            hi += pad;
        }
        Axis { lo, hi, log }
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            return (self.lo as i32..=self.hi as i32).map(|k| (10f64.powi(k), format!("1e{k}"))).collect();
        }
        let raw = (self.hi - self.lo) / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
        let digits = (-step.log10().floor()).max(0.0) as usize;
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + 1e-12 * step {
            out.push((t, format!("{t:.digits$}")));
            t += step;
        }
        out
    }
}

impl Chart {
    /// Renders into a `<g>` translated by `y_offset`.
    fn render_into(&self, out: &mut String, y_offset: f64) {
        let xa = Axis::new(self.series.iter().flat_map(|s| s.points.iter().map(|p| p.0)), self.log_x);
        let extra = self.band.map(|b| vec![b.1]).unwrap_or_default();
        let ya = Axis::new(self.series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).chain(extra), self.log_y);
        let (pw, ph) = (W - LEFT - RIGHT, H - TOP - BOTTOM);
        let px = |x: f64| LEFT + xa.frac(x) * pw;
        let py = |y: f64| TOP + (1.0 - ya.frac(y)) * ph;
        let _ = writeln!(out, r#"<g transform="translate(0,{y_offset})">"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            LEFT + pw / 2.0,
            esc(&self.title)
        );
        if let Some((lo, hi)) = self.band {
            let lo = if ya.log { lo.max(10f64.powf(ya.lo)) } else { lo.max(ya.lo) };
            let (y0, y1) = (py(hi.min(if ya.log { 10f64.powf(ya.hi) } else { ya.hi })), py(lo));
            let _ = writeln!(
                out,
                r##"<rect x="{LEFT}" y="{y0:.2}" width="{pw}" height="{:.2}" fill="#d0d0d0" opacity="0.6"/>"##,
                (y1 - y0).max(0.0)
            );
        }
        for (t, label) in xa.ticks() {
            let x = px(t);
            let _ = writeln!(out, r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#eeeeee"/>"##, TOP + ph);
            let _ = writeln!(
                out,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="11">{label}</text>"#,
                TOP + ph + 16.0
            );
        }
        for (t, label) in ya.ticks() {
            let y = py(t);
            let _ = writeln!(out, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#eeeeee"/>"##, LEFT + pw);
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{label}</text>"#,
                LEFT - 6.0,
                y + 4.0
            );
        }
        for &m in &self.markers {
            let x = px(m);
            let _ = writeln!(
                out,
                r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#888888" stroke-dasharray="4,3"/>"##,
                TOP + ph
            );
        }
        let _ = writeln!(out, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="12">{}</text>"#,
            LEFT + pw / 2.0,
            H - 8.0,
            esc(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.1}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {:.1})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            esc(&self.y_label)
        );
        for (k, s) in self.series.iter().enumerate() {
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite() && (!xa.log || *x > 0.0) && (!ya.log || *y > 0.0))
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ =
                writeln!(out, r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.8"/>"#, pts.join(" "), s.color);
            for p in &pts {
                let (x, y) = p.split_once(',').expect("formatted pair");
                let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{}"/>"#, s.color);
            }
            let ly = TOP + 12.0 + 18.0 * k as f64;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/>"#,
                lx + 18.0,
                s.color
            );
            let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11">{}</text>"#, lx + 24.0, ly + 4.0, esc(&s.name));
        }
        out.push_str("</g>\n");
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Stacks charts vertically into one SVG document.
pub fn render_svg(charts: &[Chart]) -> String {
    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{}" font-family="sans-serif">"#,
        H * charts.len() as f64
    );
    out.push('\n');
    out.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    out.push('\n');
    for (i, c) in charts.iter().enumerate() {
        c.render_into(&mut out, H * i as f64);
    }
    out.push_str("</svg>\n");
    out
}

const COLORS: [&str; 5] = ["#000000", "#d62728", "#ff7f0e", "#1f77b4", "#2ca02c"];

fn series(name: &str, color: &'static str, points: Vec<(f64, Option<f64>)>) -> Option<Series> {
    let points: Vec<(f64, f64)> = points.into_iter().filter_map(|(x, y)| y.map(|y| (x, y))).collect();
    (!points.is_empty()).then(|| Series { name: name.into(), color, points })
}

pub fn dissociation_svg(title: &str, rows: &[PointResult]) -> String {
    let xs: Vec<f64> = rows.iter().enumerate().map(|(i, p)| p.r.unwrap_or(i as f64)).collect();
    let pick = |f: &dyn Fn(&PointResult) -> Option<f64>| -> Vec<(f64, Option<f64>)> {
        xs.iter().zip(rows).map(|(x, p)| (*x, f(p))).collect()
    };
    let energies = [
        series("exact", COLORS[0], pick(&|p| Some(p.e_exact))),
        series("VQE", COLORS[1], pick(&|p| Some(p.e_vqe))),
        series("VQE readout", COLORS[2], pick(&|p| Some(p.e_vqe_readout))),
        series("REM", COLORS[3], pick(&|p| p.e_rem)),
        series("readout + REM", COLORS[4], pick(&|p| p.e_readout_rem)),
    ];
    let errors = [
        series("VQE", COLORS[1], pick(&|p| Some(p.err_vqe().abs()))),
        series("VQE readout", COLORS[2], pick(&|p| Some(p.err_readout().abs()))),
        series("REM", COLORS[3], pick(&|p| p.err_rem().map(f64::abs))),
        series("readout + REM", COLORS[4], pick(&|p| p.err_readout_rem().map(f64::abs))),
    ];
    render_svg(&[
        Chart {
            title: format!("{title} dissociation"),
            x_label: "bond length (Å)".into(),
            y_label: "energy (Ha)".into(),
            log_x: false,
            log_y: false,
            series: energies.into_iter().flatten().collect(),
            band: None,
            markers: vec![],
        },
        Chart {
            title: "absolute error".into(),
            x_label: "bond length (Å)".into(),
            y_label: "|E − E_exact| (Ha)".into(),
            log_x: false,
            log_y: false,
            series: errors.into_iter().flatten().collect(),
            band: Some((0.0, CHEMICAL_ACCURACY)),
            markers: vec![],
        },
    ])
}

pub fn noise_sweep_svg(title: &str, rows: &[NoiseSweepRow], marker: f64) -> String {
    let pick = |f: &dyn Fn(&PointResult) -> Option<f64>| -> Vec<(f64, Option<f64>)> {
        rows.iter().map(|r| (r.p2, f(&r.point).map(f64::abs))).collect()
    };
    let errors = [
        series("VQE", COLORS[1], pick(&|p| Some(p.err_vqe()))),
        series("VQE readout", COLORS[2], pick(&|p| Some(p.err_readout()))),
        series("REM", COLORS[3], pick(&|p| p.err_rem())),
        series("readout + REM", COLORS[4], pick(&|p| p.err_readout_rem())),
    ];
    render_svg(&[Chart {
        title: format!("{title} error vs two-qubit error rate"),
        x_label: "p2".into(),
        y_label: "|E − E_exact| (Ha)".into(),
        log_x: true,
        log_y: true,
        series: errors.into_iter().flatten().collect(),
        band: Some((0.0, CHEMICAL_ACCURACY)),
        markers: vec![marker],
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(r: f64, e: f64) -> PointResult {
        PointResult {
            r: Some(r),
            e_exact: e,
            e_exact_ref: e + 0.02,
            e_vqe: e + 0.03,
            e_vqe_readout: e + 0.025,
            e_vqe_ref: e + 0.05,
            e_vqe_ref_readout: e + 0.044,
            e_rem: Some(e + 0.0),
            e_readout_rem: Some(e + 0.001),
            params_vqe: vec![0.1],
            params_readout: vec![0.1],
            evaluations: 25,
            converged: true,
        }
    }

    #[test]
    fn csv_layout() {
        let csv = dissociation_csv(&[point(0.7414, -1.137), point(1.0, -1.1)], Mitigation::ReadoutRem);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], DISSOCIATION_HEADER);
        assert_eq!(lines[1], "0.7414,-1.137000,-1.107000,-1.112000,-1.137000,-1.136000,0.030000,0.001000");
        let sweep = noise_sweep_csv(&[NoiseSweepRow { p2: 1e-3, point: point(0.7, -1.0) }]);
        assert!(sweep.lines().nth(1).unwrap().starts_with("1.000000e-3,3.000000e-2,"));
    }

    #[test]
    fn svg_has_band_and_marker() {
        let rows = vec![point(0.5, -1.0), point(1.0, -1.1)];
        let s = dissociation_svg("H2", &rows);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert!(s.contains("#d0d0d0"));
        let sw = noise_sweep_svg(
            "H2",
            &[NoiseSweepRow { p2: 1e-3, point: rows[0].clone() }, NoiseSweepRow { p2: 1e-2, point: rows[1].clone() }],
            1.8e-2,
        );
        assert!(sw.contains("stroke-dasharray"));
    }
}

//! SVG pictures of `{h = 1}`.
//!
//! Each component is star-shaped from the origin, so it is traced by
//! sweeping directions `u` across its arc and lifting to `u / h(u)^(1/τ)`.

use std::f64::consts::PI;
use std::fmt::Write;

use homcurve::hyperbolicity::components;
use homcurve::realroots::RootBackend;
use homcurve::{BinaryForm, Tolerance};

const SIZE: f64 = 600.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlotOptions {
    /// Half-width of the square viewport `[-r, r]²`.
    pub range: f64,
    pub samples_per_arc: usize,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            range: 3.0,
            samples_per_arc: 512,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Plot {
    pub svg: String,
    /// One `<g>` per component, in component order.
    pub groups: usize,
    /// Components with at least one traced point inside the viewport.
    pub visible: usize,
}

/// Liang-Barsky clipping of a segment to the square `[-r, r]²`.
fn clip(a: [f64; 2], b: [f64; 2], r: f64) -> Option<([f64; 2], [f64; 2])> {
    let d = [b[0] - a[0], b[1] - a[1]];
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [
        (-d[0], a[0] + r),
        (d[0], r - a[0]),
        (-d[1], a[1] + r),
        (d[1], r - a[1]),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t0 <= t1).then(|| {
        (
            [a[0] + t0 * d[0], a[1] + t0 * d[1]],
            [a[0] + t1 * d[0], a[1] + t1 * d[1]],
        )
    })
}

/// Splits a traced curve into the polylines visible in the viewport.
fn visible_runs(points: &[[f64; 2]], r: f64) -> Vec<Vec<[f64; 2]>> {
    let mut runs: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut current: Vec<[f64; 2]> = Vec::new();
    for w in points.windows(2) {
        match clip(w[0], w[1], r) {
            Some((a, b)) => {
                if current.last() != Some(&a) {
                    if current.len() > 1 {
                        runs.push(std::mem::take(&mut current));
                    }
                    current.clear();
                    current.push(a);
                }
                current.push(b);
            }
            None => {
                if current.len() > 1 {
                    runs.push(std::mem::take(&mut current));
                }
                current.clear();
            }
        }
    }
    if current.len() > 1 {
        runs.push(current);
    }
    runs
}

fn to_px(p: [f64; 2], r: f64) -> (f64, f64) {
    let s = SIZE / (2.0 * r);
    (SIZE / 2.0 + p[0] * s, SIZE / 2.0 - p[1] * s)
}

fn colour(hyperbolic: bool, mixed: bool) -> &'static str {
    match (hyperbolic, mixed) {
        (true, _) => "#1f5fbf",
        (false, true) => "#d97a00",
        (false, false) => "#7a7a7a",
    }
}

pub fn plot_svg<S: RootBackend>(
    h: &BinaryForm<S>,
    tol: &Tolerance,
    opts: &PlotOptions,
) -> homcurve::Result<Plot> {
    let comps = components(h, tol)?;
    let hf = h.to_f64();
    let tau = h.degree() as f64;
    let r = opts.range;
    let n = opts.samples_per_arc.max(2);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##
    );
    let (c, _) = to_px([0.0, 0.0], r);
    let _ = writeln!(
        svg,
        r##"<g class="axes" stroke="#000000" stroke-width="1"><line x1="0" y1="{c}" x2="{SIZE}" y2="{c}"/><line x1="{c}" y1="0" x2="{c}" y2="{SIZE}"/></g>"##
    );

    let mut visible = 0;
    for (index, comp) in comps.iter().enumerate() {
        let (start, span, closed) = match &comp.arc.start {
            Some(s) => {
                let a = s.approx_angle();
                let b = comp
                    .arc
                    .end
                    .as_ref()
                    .map_or(a + 2.0 * PI, |e| e.approx_angle());
                let span = (b - a).rem_euclid(2.0 * PI);
                (a, if span == 0.0 { 2.0 * PI } else { span }, false)
            }
            None => (0.0, 2.0 * PI, true),
        };
        let mut points: Vec<[f64; 2]> = (0..n)
            .filter_map(|i| {
                let theta = if closed {
                    start + span * i as f64 / n as f64
                } else {
                    start + span * (i as f64 + 0.5) / n as f64
                };
                let u = [theta.cos(), theta.sin()];
                let v = hf.eval(&u);
                (v > 0.0).then(|| {
                    let s = v.powf(-1.0 / tau);
                    [u[0] * s, u[1] * s]
                })
            })
            .collect();
        if closed {
            if let Some(&first) = points.first() {
                points.push(first);
            }
        }
        let runs = visible_runs(&points, r);
        if !runs.is_empty() {
            visible += 1;
        }
        let _ = writeln!(
            svg,
            r#"<g class="component" data-index="{index}" data-hyperbolic="{}" data-mixed="{}" fill="none" stroke="{}" stroke-width="2">"#,
            comp.hyperbolic,
            comp.mixed,
            colour(comp.hyperbolic, comp.mixed)
        );
        for run in runs {
            let pts: Vec<String> = run
                .iter()
                .map(|p| {
                    let (x, y) = to_px(*p, r);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(svg, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(Plot {
        svg,
        groups: comps.len(),
        visible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping() {
        assert_eq!(
            clip([0.0, 0.0], [1.0, 1.0], 2.0),
            Some(([0.0, 0.0], [1.0, 1.0]))
        );
        assert_eq!(
            clip([0.0, 0.0], [4.0, 0.0], 2.0),
            Some(([0.0, 0.0], [2.0, 0.0]))
        );
        assert_eq!(clip([3.0, 3.0], [4.0, 3.0], 2.0), None);
    }

    #[test]
    fn runs_split_at_the_border() {
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [5.0, 0.0],
            [6.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
        ];
        let runs = visible_runs(&pts, 2.0);
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[0], vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert_eq!(runs[1].last(), Some(&[0.0, 1.0]));
    }
}

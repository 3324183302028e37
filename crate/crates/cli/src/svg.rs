//! Static figures of plane curves in an affine chart.

use std::fmt::Write as _;

use hypcone::planecurve::{branch_class, sample_real_points};
use hypcone::realroots::{count_real_roots, default_width, isolate_roots, Interval};
use hypcone::scalar::dyadic_approx;
use hypcone::{Error, MultiPolyQ, Point, PointQ, Rational, Result, Scalar};

const SIZE: f64 = 640.0;
const MARGIN: f64 = 20.0;
const LEGEND_LINE: f64 = 16.0;
const SWEEP_ANGLES: usize = 180;

/// A projected point and its color class.
type Marked = ((f64, f64), usize);
const SCAN_LINES: usize = 160;
const SCAN_RANGE: f64 = 4.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];
const OVAL_PALETTE: [&str; 4] = ["#222222", "#b8860b", "#006d6f", "#7a1f5c"];

/// An orientation arrow: a curve point and an oriented tangent vector, both
/// in ambient coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub at: [f64; 3],
    pub tangent: [f64; 3],
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Figure {
    pub title: String,
    /// A hyperbolic direction to sweep from; curve points are then colored
    /// by oval.
    pub center: Option<PointQ>,
    /// Cone samples with their color group.
    pub cone_samples: Vec<(PointQ, usize)>,
    pub arrows: Vec<Arrow>,
}

/// Projective frame: the chart is `x . n = 1`, with axes along `u` and `v`.
struct Frame {
    n: PointQ,
    u: PointQ,
    v: PointQ,
    nf: [f64; 3],
    uf: [f64; 3],
    vf: [f64; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(p: &PointQ) -> [f64; 3] {
    let f = p.to_f64();
    let len = (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt();
    [f[0] / len, f[1] / len, f[2] / len]
}

impl Frame {
    fn new(n: PointQ) -> Frame {
        let k = (0..3)
            .min_by(|&i, &j| n[i].approx().abs().total_cmp(&n[j].approx().abs()))
            .expect("three coordinates");
        let e = Point::<Rational>::unit(3, k);
        let u = e.scale(&n.dot(&n)).sub(&n.scale(&e.dot(&n))).primitive();
        let v = n.cross(&u).primitive();
        Frame {
            nf: unit(&n),
            uf: unit(&u),
            vf: unit(&v),
            n,
            u,
            v,
        }
    }

    /// First low-height line missing the real curve, else the chart `x3 = 1`.
    fn choose(c: &MultiPolyQ) -> Result<Frame> {
        let d = c.homogeneous_degree()?;
        let mut normals: Vec<[i64; 3]> = Vec::new();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for cc in -2i64..=2 {
                    let first = [a, b, cc].into_iter().find(|&x| x != 0);
                    if first.is_some_and(|f| f > 0) {
                        normals.push([a, b, cc]);
                    }
                }
            }
        }
        normals.sort_by_key(|n| (n.iter().map(|x| x.abs()).sum::<i64>(), std::cmp::Reverse(*n)));
        for n in normals {
            let frame = Frame::new(Point::from_ints(&n));
            if c.evaluate(&frame.u)?.sign_i8() == 0 {
                continue;
            }
            let along = c.restrict_line_unchecked(&frame.u, &frame.v);
            if along.degree() == Some(d) && count_real_roots(&along, &Interval::real_line())? == 0 {
                return Ok(frame);
            }
        }
        Ok(Frame::new(Point::from_ints(&[0, 0, 1])))
    }

    fn project(&self, x: [f64; 3]) -> Option<(f64, f64)> {
        let s = dot(x, self.nf);
        if s.abs() < 1e-9 * dot(x, x).sqrt() {
            return None;
        }
        Some((dot(x, self.uf) / s, dot(x, self.vf) / s))
    }

    /// Real points of `C` on the chart lines `a = const` and `b = const`.
    fn scan(&self, c: &MultiPolyQ) -> Result<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        let scale = |p: &PointQ| {
            let f = p.to_f64();
            (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt()
        };
        let (nn, nu, nv) = (scale(&self.n), scale(&self.u), scale(&self.v));
        for (along, across, na, nb, swap) in [(&self.u, &self.v, nu, nv, false), (&self.v, &self.u, nv, nu, true)] {
            for k in 0..=SCAN_LINES {
                let a = -SCAN_RANGE + 2.0 * SCAN_RANGE * k as f64 / SCAN_LINES as f64;
                // the chart point (a, b) is n + (a |n|/|u|) u + (b |n|/|v|) v
                let beta = dyadic_approx(a * nn / na, 20);
                let base = self.n.add(&along.scale(&beta));
                let u = c.restrict_line_unchecked(across, &base);
                if u.is_zero() {
                    continue;
                }
                for r in isolate_roots(&u, &default_width())? {
                    let b = r.midpoint().approx() * nb / nn;
                    out.push(if swap { (b, a) } else { (a, b) });
                }
            }
        }
        Ok(out)
    }
}

fn color(palette: &[&'static str], i: usize) -> &'static str {
    palette[i % palette.len()]
}

/// Renders `C = 0` with cone samples and arrows in an affine chart.
pub fn render_svg(c: &MultiPolyQ, fig: &Figure) -> Result<String> {
    if c.nvars() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: c.nvars(),
        });
    }
    let d = c.homogeneous_degree()?;
    let frame = Frame::choose(c)?;

    let swept = fig
        .center
        .as_ref()
        .and_then(|e| sample_real_points(c, e, SWEEP_ANGLES).ok());
    let (curve, by_oval): (Vec<Marked>, bool) = match swept {
        Some(points) => (
            points
                .iter()
                .filter_map(|p| frame.project(p.approx()).map(|q| (q, branch_class(p.branch, d))))
                .collect(),
            true,
        ),
        None => (frame.scan(c)?.into_iter().map(|q| (q, 0)).collect(), false),
    };
    let cones: Vec<Marked> = fig
        .cone_samples
        .iter()
        .filter_map(|(x, g)| {
            let f = x.to_f64();
            frame.project([f[0], f[1], f[2]]).map(|q| (q, *g))
        })
        .collect();

    let extent = curve
        .iter()
        .chain(&cones)
        .map(|((a, b), _)| a.abs().max(b.abs()))
        .filter(|m| m.is_finite())
        .fold(1.0f64, f64::max)
        .min(SCAN_RANGE);
    let r = extent * 1.15;
    let half = (SIZE - 2.0 * MARGIN) / 2.0;
    let px = |(a, b): (f64, f64)| (SIZE / 2.0 + a / r * half, SIZE / 2.0 - b / r * half);
    let visible = |(a, b): (f64, f64)| a.abs() <= r && b.abs() <= r;

    let mut legend = vec![
        fig.title.clone(),
        format!("chart x.n = 1, n = {}; axes u = {}, v = {}", frame.n, frame.u, frame.v),
    ];
    if curve.is_empty() {
        legend.push("no real points on the curve".to_string());
    } else if by_oval {
        let ovals = curve.iter().map(|(_, k)| k + 1).max().unwrap_or(0);
        legend.push(format!("{} curve points in {} oval classes", curve.len(), ovals));
    } else {
        legend.push(format!("{} curve points (chart scan)", curve.len()));
    }
    if !cones.is_empty() {
        let groups = cones.iter().map(|(_, g)| g + 1).max().unwrap_or(0);
        legend.push(format!("{} cone samples in {} groups", cones.len(), groups));
    }
    if !fig.arrows.is_empty() {
        legend.push(format!("{} orientation arrows", fig.arrows.len()));
    }

    let height = SIZE + LEGEND_LINE * legend.len() as f64 + MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">"#
    );
    s.push_str(
        r##"<defs><marker id="head" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#000"/></marker></defs>"##,
    );
    s.push('\n');
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{SIZE}" height="{height}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="none" stroke="#999999"/>"##,
        w = SIZE - 2.0 * MARGIN
    );
    let (cx, cy) = px((0.0, 0.0));
    let _ = writeln!(
        s,
        r##"<path d="M{MARGIN},{cy:.2} H{e:.2} M{cx:.2},{MARGIN} V{e:.2}" stroke="#dddddd"/>"##,
        e = SIZE - MARGIN
    );
    for &(q, g) in &cones {
        if visible(q) {
            let (x, y) = px(q);
            let _ = writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{}" fill-opacity="0.55"/>"#,
                color(&PALETTE, g)
            );
        }
    }
    for &(q, k) in &curve {
        if visible(q) {
            let (x, y) = px(q);
            let _ = writeln!(
                s,
                r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.3" fill="{}"/>"#,
                color(&OVAL_PALETTE, k)
            );
        }
    }
    for arrow in &fig.arrows {
        let step = 1e-4;
        let ahead = [
            arrow.at[0] + step * arrow.tangent[0],
            arrow.at[1] + step * arrow.tangent[1],
            arrow.at[2] + step * arrow.tangent[2],
        ];
        let (Some(p0), Some(p1)) = (frame.project(arrow.at), frame.project(ahead)) else {
            continue;
        };
        if !visible(p0) {
            continue;
        }
        let (x0, y0) = px(p0);
        let (x1, y1) = px(p1);
        let len = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
        if len == 0.0 || !len.is_finite() {
            continue;
        }
        let (dx, dy) = ((x1 - x0) / len * 14.0, (y1 - y0) / len * 14.0);
        let _ = writeln!(
            s,
            r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000" stroke-width="1" marker-end="url(#head)"/>"##,
            x0 + dx,
            y0 + dy
        );
    }
    for (i, text) in legend.iter().enumerate() {
        let y = SIZE + LEGEND_LINE * (i as f64 + 0.5);
        let _ = writeln!(
            s,
            r#"<text x="{MARGIN}" y="{y:.1}" font-family="monospace" font-size="12">{}</text>"#,
            escape(text)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

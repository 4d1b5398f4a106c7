//! SVG pictures of two-variable CADs: input curves and one marker per cell.

use std::fmt::Write as _;

use cadkit::engine::CadResult;
use cadkit::Polynomial;
use num_traits::ToPrimitive;

use crate::CliError;

const SIZE: f64 = 600.0;
const GRID: usize = 240;
const COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    /// Parses `xmin,xmax,ymin,ymax`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Input(format!("bad viewport value '{}'", t))))
            .collect::<Result<_, _>>()?;
        if v.len() != 4 || !(v[0] < v[1] && v[2] < v[3]) || v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Input("viewport must be xmin,xmax,ymin,ymax with min < max".into()));
        }
        Ok(Viewport { xmin: v[0], xmax: v[1], ymin: v[2], ymax: v[3] })
    }

    /// Box around all sample points with a margin of one unit.
    fn around(points: &[(f64, f64)]) -> Self {
        let fold = |f: fn(&(f64, f64)) -> f64| {
            points.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        let (xmin, xmax) = fold(|p| p.0);
        let (ymin, ymax) = fold(|p| p.1);
        Viewport { xmin: xmin - 1.0, xmax: xmax + 1.0, ymin: ymin - 1.0, ymax: ymax + 1.0 }
    }

    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.xmin) / (self.xmax - self.xmin) * SIZE, (self.ymax - y) / (self.ymax - self.ymin) * SIZE)
    }
}

fn eval(p: &Polynomial, x: f64, y: f64) -> f64 {
    p.terms()
        .iter()
        .map(|t| t.coeff.to_f64().unwrap_or(0.0) * x.powi(t.exps[0] as i32) * y.powi(t.exps[1] as i32))
        .sum()
}

/// Zero set of `p` as line segments by marching squares.
fn curve_path(p: &Polynomial, vp: &Viewport) -> String {
    let dx = (vp.xmax - vp.xmin) / GRID as f64;
    let dy = (vp.ymax - vp.ymin) / GRID as f64;
    let at = |i: usize, j: usize| (vp.xmin + i as f64 * dx, vp.ymin + j as f64 * dy);
    let vals: Vec<Vec<f64>> =
        (0..=GRID).map(|i| (0..=GRID).map(|j| { let (x, y) = at(i, j); eval(p, x, y) }).collect()).collect();
    let mut d = String::new();
    for i in 0..GRID {
        for j in 0..GRID {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let mut cuts: Vec<(f64, f64)> = Vec::new();
            for k in 0..4 {
                let (a, b) = (corners[k], corners[(k + 1) % 4]);
                let (va, vb) = (vals[a.0][a.1], vals[b.0][b.1]);
                if (va < 0.0) != (vb < 0.0) {
                    let t = va / (va - vb);
                    let (xa, ya) = at(a.0, a.1);
                    let (xb, yb) = at(b.0, b.1);
                    cuts.push((xa + t * (xb - xa), ya + t * (yb - ya)));
                }
            }
            for seg in cuts.chunks(2).filter(|s| s.len() == 2) {
                let (x0, y0) = vp.px(seg[0].0, seg[0].1);
                let (x1, y1) = vp.px(seg[1].0, seg[1].1);
                let _ = write!(d, "M{:.2} {:.2}L{:.2} {:.2}", x0, y0, x1, y1);
            }
        }
    }
    d
}

/// SVG of the input curves and the cell samples of a two-variable result.
pub fn svg(r: &CadResult, names: &[(String, Polynomial)], viewport: Option<Viewport>) -> Result<String, CliError> {
    if r.cad.dim() != 2 {
        return Err(CliError::Input(format!("plot needs two variables, the problem has {}", r.cad.dim())));
    }
    let points: Vec<(f64, f64)> =
        r.cad.cells().iter().map(|c| (c.sample.coords[0].to_f64(), c.sample.coords[1].to_f64())).collect();
    let vp = viewport.unwrap_or_else(|| Viewport::around(&points));
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SIZE
    );
    let _ = writeln!(s, r#"<rect width="{0}" height="{0}" fill="white"/>"#, SIZE);
    for (k, (name, p)) in names.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<path class="curve" data-poly="{}" d="{}" stroke="{}" stroke-width="1.5" fill="none"/>"#,
            escape(name),
            curve_path(p, &vp),
            COLOURS[k % COLOURS.len()]
        );
    }
    for (i, c) in r.cad.cells().iter().enumerate() {
        let (x, y) = vp.px(points[i].0, points[i].1);
        let radius = [2.0, 3.0, 4.0][c.dimension()];
        let fill = if r.disjunction(i) { "#2ca02c" } else { "#7f7f7f" };
        let idx: Vec<String> = c.index.iter().map(|j| j.to_string()).collect();
        let _ = writeln!(
            s,
            r#"<circle class="cell" data-index="{}" cx="{:.2}" cy="{:.2}" r="{}" fill="{}" stroke="black" stroke-width="0.5"/>"#,
            idx.join(","),
            x,
            y,
            radius,
            fill
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

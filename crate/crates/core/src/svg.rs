//! Deterministic SVG scenes on a fixed 800×800 canvas.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::amoeba::BoundingBox;
use crate::error::LatticeError;
use crate::field::{rational_to_f64, Rational};
use crate::lattice::{DualComplex, RegularSubdivision};
use crate::pl::CornerLocus;

pub const CANVAS: f64 = 800.0;

const STYLE: &str = ".axis{stroke:#bbb;stroke-width:1;fill:none}\
.subdivision{stroke:#1f77b4;stroke-width:2;fill:none}\
.dual-complex{stroke:#d62728;stroke-width:2}\
.dual-vertex{fill:#d62728}\
.amoeba{fill:#2ca02c;fill-opacity:0.5}";

pub enum Layer<'a> {
    Subdivision(&'a RegularSubdivision),
    Dual(&'a DualComplex),
    Locus(&'a CornerLocus),
    Points(&'a [[f64; 2]]),
}

impl Layer<'_> {
    fn dim(&self) -> usize {
        match self {
            Layer::Subdivision(s) => s.n,
            Layer::Dual(p) => p.n,
            Layer::Locus(l) => l.n,
            Layer::Points(_) => 2,
        }
    }
}

struct Canvas {
    bbox: BoundingBox,
    out: String,
}

impl Canvas {
    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        let w = self.bbox.hi - self.bbox.lo;
        ((p[0] - self.bbox.lo) / w * CANVAS, CANVAS - (p[1] - self.bbox.lo) / w * CANVAS)
    }

    /// Liang–Barsky clipping of the segment `a b` to the box.
    fn clip(&self, a: [f64; 2], b: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        let d = [b[0] - a[0], b[1] - a[1]];
        for i in 0..2 {
            for (p, q) in [(-d[i], a[i] - self.bbox.lo), (d[i], self.bbox.hi - a[i])] {
                if p == 0.0 {
                    if q < 0.0 {
                        return None;
                    }
                } else {
                    let r = q / p;
                    if p < 0.0 {
                        t0 = t0.max(r);
                    } else {
                        t1 = t1.min(r);
                    }
                }
            }
        }
        (t0 <= t1).then(|| ([a[0] + t0 * d[0], a[1] + t0 * d[1]], [a[0] + t1 * d[0], a[1] + t1 * d[1]]))
    }

    fn line(&mut self, class: &str, a: [f64; 2], b: [f64; 2]) {
        if let Some((a, b)) = self.clip(a, b) {
            let (x1, y1) = self.px(a);
            let (x2, y2) = self.px(b);
            writeln!(self.out, r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#).unwrap();
        }
    }

    /// Ray from `a` in direction `d`, drawn to well past the box.
    fn ray(&mut self, class: &str, a: [f64; 2], d: [f64; 2], both_ways: bool) {
        let norm = d[0].hypot(d[1]);
        let reach = 4.0 * (self.bbox.hi - self.bbox.lo) + a[0].abs() + a[1].abs();
        let s = reach / norm;
        let far = [a[0] + s * d[0], a[1] + s * d[1]];
        let start = if both_ways { [a[0] - s * d[0], a[1] - s * d[1]] } else { a };
        self.line(class, start, far);
    }

    fn dot(&mut self, class: &str, p: [f64; 2], r: f64) {
        if self.bbox.contains(&p) {
            let (x, y) = self.px(p);
            writeln!(self.out, r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}"/>"#).unwrap();
        }
    }
}

fn pt(v: &[Rational]) -> [f64; 2] {
    [rational_to_f64(&v[0]), rational_to_f64(&v[1])]
}

fn ipt(v: &[i64]) -> [f64; 2] {
    [v[0] as f64, v[1] as f64]
}

/// Renders the layers in order; every layer must be planar.
pub fn render_svg(layers: &[Layer<'_>], bbox: BoundingBox) -> Result<String, LatticeError> {
    if let Some(l) = layers.iter().find(|l| l.dim() != 2) {
        return Err(LatticeError::DimensionUnsupported(l.dim()));
    }
    let mut c = Canvas { bbox, out: String::new() };
    writeln!(
        c.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    )
    .unwrap();
    writeln!(c.out, "<style>{STYLE}</style>").unwrap();
    let (ox, oy) = c.px([0.0, 0.0]);
    writeln!(c.out, r#"<path class="axis" d="M0 {oy:.3}H800M{ox:.3} 0V800"/>"#).unwrap();
    for layer in layers {
        match layer {
            Layer::Subdivision(s) => {
                for cell in &s.cells {
                    for (i, &a) in cell.iter().enumerate() {
                        for &b in &cell[i + 1..] {
                            c.line("subdivision", ipt(&s.points[a]), ipt(&s.points[b]));
                        }
                    }
                }
            }
            Layer::Dual(p) => {
                for (_, f) in p.faces_of_dim(1) {
                    let v0 = pt(&p.vertices[f.vertices[0]]);
                    match (f.vertices.len(), f.rays.first()) {
                        (2, _) => c.line("dual-complex", v0, pt(&p.vertices[f.vertices[1]])),
                        (_, Some(r)) => {
                            let d = [r[0].to_f64().unwrap_or(0.0), r[1].to_f64().unwrap_or(0.0)];
                            c.ray("dual-complex", v0, d, false);
                        }
                        _ => {}
                    }
                }
                for v in &p.vertices {
                    c.dot("dual-vertex", pt(v), 4.0);
                }
            }
            Layer::Locus(l) => {
                for piece in &l.pieces {
                    let vr = &piece.vrep;
                    let verts: Vec<[f64; 2]> = vr.vertices.iter().map(|v| pt(v)).collect();
                    match (verts.len(), vr.rays.len(), vr.lineality.len()) {
                        (1, 0, 0) => c.dot("dual-vertex", verts[0], 4.0),
                        (2, 0, 0) => c.line("dual-complex", verts[0], verts[1]),
                        (1, 1, 0) => c.ray("dual-complex", verts[0], pt(&vr.rays[0]), false),
                        (1, 0, 1) => c.ray("dual-complex", verts[0], pt(&vr.lineality[0]), true),
                        _ => {}
                    }
                }
            }
            Layer::Points(ps) => {
                for &p in ps.iter() {
                    c.dot("amoeba", p, 1.0);
                }
            }
        }
    }
    c.out.push_str("</svg>\n");
    Ok(c.out)
}

/// Box around the support points with a unit margin.
pub fn support_box(s: &RegularSubdivision) -> BoundingBox {
    let lo = s.points.iter().flatten().copied().min().unwrap_or(0) as f64 - 1.0;
    let hi = s.points.iter().flatten().copied().max().unwrap_or(0) as f64 + 1.0;
    BoundingBox { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{square_curve, tropical_line};
    use crate::lattice::{dual_complex, lower_hull_subdivision};
    use crate::pl::{corner_locus, tropicalize};

    fn count(s: &str, pat: &str) -> usize {
        s.matches(pat).count()
    }

    #[test]
    fn tropical_line_scene() {
        let p = dual_complex(&tropical_line()).unwrap();
        let svg = render_svg(&[Layer::Dual(&p)], BoundingBox::square(3.0)).unwrap();
        assert_eq!(count(&svg, "<line "), 3);
        assert_eq!(count(&svg, r#"class="dual-vertex""#), 1);
        let locus = corner_locus(&tropicalize(&tropical_line()));
        let svg2 = render_svg(&[Layer::Locus(&locus)], BoundingBox::square(3.0)).unwrap();
        assert_eq!(count(&svg2, "<line "), 3);
    }

    #[test]
    fn empty_scene_has_axes_only() {
        let svg = render_svg(&[], BoundingBox::square(3.0)).unwrap();
        assert_eq!(count(&svg, r#"class="axis""#), 1);
        assert_eq!(count(&svg, "<line "), 0);
    }

    #[test]
    fn scenes_are_deterministic() {
        let f = square_curve();
        let s = lower_hull_subdivision(&f);
        let p = dual_complex(&f).unwrap();
        let a = render_svg(&[Layer::Subdivision(&s)], support_box(&s)).unwrap();
        assert_eq!(a, render_svg(&[Layer::Subdivision(&s)], support_box(&s)).unwrap());
        assert_eq!(count(&a, r#"class="subdivision""#), 6);
        let b = render_svg(&[Layer::Dual(&p), Layer::Points(&[[0.5, 0.5], [9.0, 9.0]])], BoundingBox::square(3.0)).unwrap();
        assert_eq!(count(&b, r#"class="amoeba""#), 1);
    }

    #[test]
    fn clipping() {
        let c = Canvas { bbox: BoundingBox::square(1.0), out: String::new() };
        assert!(c.clip([2.0, 2.0], [3.0, 3.0]).is_none());
        let (a, b) = c.clip([-5.0, 0.0], [5.0, 0.0]).unwrap();
        assert_eq!((a, b), ([-1.0, 0.0], [1.0, 0.0]));
    }
}

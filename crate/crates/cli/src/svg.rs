//! Deterministic SVG output.
//!
//! All arithmetic is exact; coordinates are printed with four decimals, so the
//! same input always yields the same bytes. The y axis is flipped so that
//! larger y is drawn higher.

use std::fmt::Write as _;

use ladr::hitting::LineSet;
use ladr::model::{BBox, Point, Rect};
use ladr::scalar::{format_decimal, int, ratio};
use ladr::Rational;
use num_traits::{Signed, Zero};

use crate::CliError;

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub rects: Vec<(Rect, Point<Rational>)>,
    pub points: Vec<Point<Rational>>,
    pub lines: LineSet<Rational>,
    /// Drawn dashed.
    pub bbox: Option<BBox<Rational>>,
}

fn d(value: &Rational) -> String {
    format_decimal(value, 4)
}

fn max(a: Rational, b: Rational) -> Rational {
    if a > b {
        a
    } else {
        b
    }
}

fn min(a: Rational, b: Rational) -> Rational {
    if a < b {
        a
    } else {
        b
    }
}

impl Scene {
    fn extent(&self) -> Option<BBox<Rational>> {
        let mut xs: Vec<Rational> = Vec::new();
        let mut ys: Vec<Rational> = Vec::new();
        for (rect, c) in &self.rects {
            let (hw, hh) = (int(rect.w as i64) / int(2), int(rect.h as i64) / int(2));
            xs.extend([c.x.clone() - hw.clone(), c.x.clone() + hw]);
            ys.extend([c.y.clone() - hh.clone(), c.y.clone() + hh]);
        }
        for p in &self.points {
            xs.push(p.x.clone());
            ys.push(p.y.clone());
        }
        xs.extend(self.lines.verticals.iter().cloned());
        ys.extend(self.lines.horizontals.iter().cloned());
        if xs.is_empty() && ys.is_empty() {
            return None;
        }
        let range = |v: &[Rational]| {
            let lo = v.iter().cloned().reduce(min).unwrap_or_else(Rational::zero);
            let hi = v.iter().cloned().reduce(max).unwrap_or_else(Rational::zero);
            (lo, hi)
        };
        let ((left, right), (bottom, top)) = (range(&xs), range(&ys));
        Some(BBox { left, right, bottom, top })
    }
}

/// Renders the scene. Fails on an empty scene.
pub fn render(scene: &Scene) -> Result<String, CliError> {
    let ext = scene.extent().ok_or_else(|| CliError::Usage("nothing to render".into()))?;
    let pad = |span: Rational| {
        let m = span * ratio(1, 20);
        if m.is_positive() {
            m
        } else {
            int(1)
        }
    };
    let (mx, my) = (pad(ext.width()), pad(ext.height()));
    let vx = ext.left.clone() - mx.clone();
    let vy = -(ext.top.clone() + my.clone());
    let vw = ext.width() + mx * int(2);
    let vh = ext.height() + my * int(2);
    let size = max(vw.clone(), vh.clone());
    let stroke = size.clone() * ratio(3, 1000);
    let radius = size * ratio(1, 150);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        d(&vx),
        d(&vy),
        d(&vw),
        d(&vh)
    );
    if let Some(b) = &scene.bbox {
        let _ = writeln!(
            out,
            r#"  <rect class="bbox" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="gray" stroke-width="{}" stroke-dasharray="{} {}"/>"#,
            d(&b.left),
            d(&-b.top.clone()),
            d(&b.width()),
            d(&b.height()),
            d(&stroke),
            d(&(stroke.clone() * int(4))),
            d(&(stroke.clone() * int(3)))
        );
    }
    let mut rects: Vec<&(Rect, Point<Rational>)> = scene.rects.iter().collect();
    rects.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    for (rect, c) in rects {
        let (w, h) = (int(rect.w as i64), int(rect.h as i64));
        let _ = writeln!(
            out,
            r#"  <rect class="rect" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
            d(&(c.x.clone() - w.clone() / int(2))),
            d(&-(c.y.clone() + h.clone() / int(2))),
            d(&w),
            d(&h),
            d(&stroke)
        );
        let font = min(w, h) * ratio(2, 5);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            d(&c.x),
            d(&-c.y.clone()),
            d(&font),
            escape(rect.id.as_str())
        );
    }
    for p in &scene.points {
        let _ = writeln!(out, r#"  <circle class="point" cx="{}" cy="{}" r="{}"/>"#, d(&p.x), d(&-p.y.clone()), d(&radius));
    }
    for y in &scene.lines.horizontals {
        let _ = writeln!(
            out,
            r#"  <line class="hline" x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-width="{}"/>"#,
            d(&vx),
            d(&-y.clone()),
            d(&(vx.clone() + vw.clone())),
            d(&-y.clone()),
            d(&stroke)
        );
    }
    for x in &scene.lines.verticals {
        let _ = writeln!(
            out,
            r#"  <line class="vline" x1="{}" y1="{}" x2="{}" y2="{}" stroke="blue" stroke-width="{}"/>"#,
            d(x),
            d(&vy),
            d(x),
            d(&(vy.clone() + vh.clone())),
            d(&stroke)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_squares() -> Scene {
        Scene {
            rects: vec![
                (Rect::unit("b"), Point::new(int(2), int(2))),
                (Rect::unit("a"), Point::new(int(0), int(0))),
            ],
            bbox: Some(BBox { left: ratio(-1, 2), right: ratio(5, 2), bottom: ratio(-1, 2), top: ratio(5, 2) }),
            ..Scene::default()
        }
    }

    #[test]
    fn empty_scene_is_an_error() {
        assert!(render(&Scene::default()).is_err());
    }

    #[test]
    fn two_squares_and_dashed_box() {
        let svg = render(&two_squares()).unwrap();
        assert_eq!(svg.matches(r#"class="rect""#).count(), 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.find(">a<").unwrap() < svg.find(">b<").unwrap());
        // content spans 3 units, margin 0.15 per side
        assert!(svg.contains(r#"viewBox="-0.65 -2.65 3.3 3.3""#));
    }

    #[test]
    fn byte_stable() {
        assert_eq!(render(&two_squares()).unwrap(), render(&two_squares()).unwrap());
    }

    #[test]
    fn labels_are_escaped() {
        let scene = Scene { rects: vec![(Rect::unit("<&>"), Point::new(int(0), int(0)))], ..Scene::default() };
        assert!(render(&scene).unwrap().contains("&lt;&amp;&gt;"));
    }
}

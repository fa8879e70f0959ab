//! SVG figures: cap outline, shaded niche, rotation path and the `S₁` curves.

use std::f64::consts::PI;
use std::fmt::Write;

use anyhow::Result;
use sofa_core::f64::{Cap, Vec2};
use sofa_core::hallway::rotation_path;
use sofa_core::maximizer::s1_curves;
use sofa_core::sofa::niche;

/// SVG units per hallway width.
const SCALE: f64 = 100.0;
const MARGIN: f64 = 10.0;
const S1_SAMPLES: usize = 512;

fn fmt(x: f64) -> String {
    let s = format!("{:.3}", x);
    // Avoid "-0.000" so equal figures give equal bytes.
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0".to_string()
    } else {
        s
    }
}

struct Canvas {
    lo: Vec2,
    hi: Vec2,
    body: String,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            lo: Vec2::new(f64::INFINITY, f64::INFINITY),
            hi: Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
            body: String::new(),
        }
    }

    fn point(&mut self, p: Vec2) -> String {
        self.lo = Vec2::new(self.lo.x.min(p.x), self.lo.y.min(p.y));
        self.hi = Vec2::new(self.hi.x.max(p.x), self.hi.y.max(p.y));
        format!("{},{}", fmt(SCALE * p.x), fmt(-SCALE * p.y))
    }

    fn path(&mut self, subpaths: &[Vec<Vec2>], closed: bool) -> String {
        let mut d = String::new();
        for pts in subpaths.iter().filter(|p| !p.is_empty()) {
            for (k, &p) in pts.iter().enumerate() {
                let xy = self.point(p);
                let _ = write!(d, "{}{}{xy}", if d.is_empty() { "" } else { " " }, if k == 0 { "M" } else { "L" });
            }
            if closed {
                d.push_str(" Z");
            }
        }
        d
    }

    fn element(&mut self, tag: &str, id: &str, d: &str, style: &str) {
        let _ = writeln!(self.body, r#"  <{tag} id="{id}" d="{d}" {style}/>"#);
    }

    fn line(&mut self, id: &str, a: Vec2, b: Vec2, style: &str) {
        let (pa, pb) = (self.point(a), self.point(b));
        let (x1, y1) = pa.split_once(',').unwrap_or_default();
        let (x2, y2) = pb.split_once(',').unwrap_or_default();
        let _ = writeln!(self.body, r#"  <line id="{id}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#);
    }

    fn finish(self) -> String {
        let (lo, hi) = if self.lo.x.is_finite() { (self.lo, self.hi) } else { (Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0)) };
        let x = SCALE * lo.x - MARGIN;
        let y = -SCALE * hi.y - MARGIN;
        let w = SCALE * (hi.x - lo.x) + 2.0 * MARGIN;
        let h = SCALE * (hi.y - lo.y) + 2.0 * MARGIN;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            fmt(w),
            fmt(h),
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// Contiguous runs of non-empty niche columns as closed outlines.
fn niche_outlines(columns: &[(f64, f64, f64)]) -> Vec<Vec<Vec2>> {
    let mut out = Vec::new();
    let mut run: Vec<(f64, f64, f64)> = Vec::new();
    let mut flush = |run: &mut Vec<(f64, f64, f64)>| {
        if run.len() >= 2 {
            let top = run.iter().map(|&(x, hi, _)| Vec2::new(x, hi));
            let bottom = run.iter().rev().map(|&(x, _, lo)| Vec2::new(x, lo));
            out.push(top.chain(bottom).collect());
        }
        run.clear();
    };
    for &col in columns {
        if col.1 > col.2 {
            run.push(col);
        } else {
            flush(&mut run);
        }
    }
    flush(&mut run);
    out
}

pub fn svg(cap: Option<&Cap>, s1: bool, t_samples: usize, x_samples: usize) -> Result<String> {
    let mut c = Canvas::new();
    let mut shift = Vec2::new(0.0, 0.0);
    if let Some(cap) = cap {
        let outline = cap.polygon().vertices().to_vec();
        let d = c.path(&[outline], true);
        c.element("path", "cap", &d, r#"fill="none" stroke="black" stroke-width="1""#);

        let region = niche(cap, t_samples, x_samples);
        if !region.is_empty() {
            let d = c.path(&niche_outlines(&region.columns), true);
            if !d.is_empty() {
                c.element("path", "niche", &d, r##"fill="#b0b0b0" fill-opacity="0.6" stroke="none""##);
            }
        }

        let path = rotation_path(cap.support(), t_samples)?;
        let d = c.path(&[path.points], false);
        c.element("path", "rotation-path", &d, r##"fill="none" stroke="#c03030" stroke-width="1""##);

        let p = cap.support();
        shift = Vec2::new((p.value_at(0.0) - p.value_at(PI)) / 2.0, 0.0);
    }
    if s1 {
        let curves = s1_curves::<f64>(S1_SAMPLES);
        let style = r##"fill="none" stroke="#3050c0" stroke-width="1""##;
        for (id, curve) in [("s1-gamma", &curves.gamma), ("s1-gamma-mirror", &curves.gamma_mirror), ("s1-x", &curves.x)] {
            let pts: Vec<Vec2> = curve.points.iter().map(|&q| q + shift).collect();
            let d = c.path(&[pts], false);
            c.element("path", id, &d, style);
        }
        for (k, &(a, b)) in curves.segments.iter().enumerate() {
            c.line(&format!("s1-segment-{k}"), a + shift, b + shift, style);
        }
    }
    Ok(c.finish())
}

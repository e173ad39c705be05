//! SVG pictures of a situation and the template instances found in it.
//!
//! Objects are drawn as circles with an orientation tick (dashed and
//! tickless when the orientation is undefined) and labeled by their `type`
//! attribute. Each instance gets a color: its objects are ringed, and every
//! constraint is drawn as a skeleton through the points it graded.

use std::fmt::Write;
use std::path::Path;

use crate::fgr::FgrKind;
use crate::geometry::Point2;
use crate::io::{write_text, IoError};
use crate::recognition::{Situation, TemplateInstance};

const PLOT: f64 = 640.0;
const MARGIN: f64 = 40.0;
const LEGEND: f64 = 280.0;
const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// World to canvas mapping with y pointing up in the world.
struct Frame {
    min: Point2,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(points: &[Point2]) -> Self {
        let Some(&first) = points.first() else {
            return Self { min: Point2::ORIGIN, max_y: 100.0, scale: PLOT / 100.0 };
        };
        let (mut lo, mut hi) = (first, first);
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1.0);
        Self { min: lo, max_y: hi.y, scale: PLOT / span }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (MARGIN + (p.x - self.min.x) * self.scale, MARGIN + (self.max_y - p.y) * self.scale)
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

fn points_attr(frame: &Frame, pts: &[Point2]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn glyph(out: &mut String, x: f64, y: f64, orientation: Option<f64>, class: &str) {
    match orientation {
        Some(deg) => {
            let (s, c) = deg.to_radians().sin_cos();
            let _ = writeln!(
                out,
                r##"<g class="{class}"><circle cx="{x:.2}" cy="{y:.2}" r="7" fill="#f4f4f4" stroke="#333"/><line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{:.2}" stroke="#333" stroke-width="2"/></g>"##,
                x + 16.0 * c,
                y - 16.0 * s
            );
        }
        None => {
            let _ = writeln!(
                out,
                r##"<g class="{class}"><circle cx="{x:.2}" cy="{y:.2}" r="7" fill="#f4f4f4" stroke="#333" stroke-dasharray="3 2"/></g>"##
            );
        }
    }
}

/// Renders the situation and instances as a standalone SVG document.
/// Identical inputs give identical output.
pub fn render_svg(situation: &Situation, instances: &[TemplateInstance]) -> String {
    let mut pts: Vec<Point2> = situation.objects.iter().map(|o| o.location).collect();
    for inst in instances {
        for c in &inst.constraints {
            pts.extend(c.members.iter().copied());
            pts.push(c.reference.location);
        }
    }
    let frame = Frame::fit(&pts);
    let width = PLOT + 2.0 * MARGIN + LEGEND;
    let height = PLOT + 2.0 * MARGIN;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&situation.id));
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{PLOT}" height="{PLOT}" fill="none" stroke="#ccc"/>"##
    );

    for (i, inst) in instances.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="instance" data-rank="{}">"#, i + 1);
        for c in &inst.constraints {
            let pts = points_attr(&frame, &c.members);
            let shape = match c.kind {
                FgrKind::IsoscelesTriangle
                | FgrKind::EquilateralTriangle
                | FgrKind::RectangleTriangle
                | FgrKind::Rectangle => "polygon",
                _ => "polyline",
            };
            let _ = writeln!(
                out,
                r#"<{shape} class="skeleton" data-constraint="{}" points="{pts}" fill="none" stroke="{color}" stroke-width="1.5" stroke-dasharray="6 3" opacity="0.8"/>"#,
                escape(&c.id)
            );
            let (x, y) = frame.map(c.reference.location);
            let _ = writeln!(
                out,
                r#"<rect class="reference" x="{:.2}" y="{:.2}" width="6" height="6" fill="{color}"/>"#,
                x - 3.0,
                y - 3.0
            );
        }
        let _ = writeln!(out, "</g>");
    }

    for o in &situation.objects {
        let (x, y) = frame.map(o.location);
        glyph(&mut out, x, y, o.orientation.map(|a| a.degrees()), "glyph");
        let label = o.attributes.get("type").map(String::as_str).unwrap_or("?");
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="13" font-weight="bold">{}</text>"#,
            x + 9.0,
            y - 9.0,
            escape(label)
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-size="9" fill="#777">{}</text>"##,
            x + 9.0,
            y + 16.0,
            escape(&o.id)
        );
    }

    for (i, inst) in instances.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let r = 11.0 + 3.0 * (i % PALETTE.len()) as f64;
        for p in &inst.mapping {
            let Some(o) = situation.objects.iter().find(|o| o.id == p.situation_object) else { continue };
            let (x, y) = frame.map(o.location);
            let _ = writeln!(
                out,
                r#"<circle class="highlight" data-template-object="{}" cx="{x:.2}" cy="{y:.2}" r="{r}" fill="none" stroke="{color}" stroke-width="2.5"/>"#,
                escape(&p.template_object)
            );
        }
    }

    let lx = PLOT + 2.0 * MARGIN;
    let _ = writeln!(out, r#"<g class="legend">"#);
    let _ = writeln!(out, r#"<text x="{lx}" y="{}" font-size="15" font-weight="bold">Legend</text>"#, MARGIN + 4.0);
    glyph(&mut out, lx + 8.0, MARGIN + 30.0, Some(0.0), "legend-glyph");
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">oriented object (type)</text>"#, lx + 30.0, MARGIN + 34.0);
    glyph(&mut out, lx + 8.0, MARGIN + 56.0, None, "legend-glyph");
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">orientation undefined</text>"#, lx + 30.0, MARGIN + 60.0);
    if instances.is_empty() {
        let _ = writeln!(out, r##"<text x="{lx}" y="{}" font-size="12" fill="#777">no instances</text>"##, MARGIN + 90.0);
    }
    for (i, inst) in instances.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN + 90.0 + 20.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{lx}" y="{:.2}" width="12" height="12" fill="{color}"/><text x="{}" y="{y:.2}" font-size="12">#{} overall {:.3}, weakest {}</text>"#,
            y - 10.0,
            lx + 18.0,
            i + 1,
            inst.overall,
            escape(&inst.weakest)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

pub fn save_svg(path: impl AsRef<Path>, situation: &Situation, instances: &[TemplateInstance]) -> Result<(), IoError> {
    write_text(path, &render_svg(situation, instances))
}

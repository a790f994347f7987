//! Plain-SVG rendering of finite categories: objects on a circle,
//! morphisms as curved arrows, endomorphisms as loops. Identities are
//! omitted. Good enough for the small categories the demo works with.

use lenscat::category::{Category, MorId, ObjId};
use std::collections::BTreeMap;
use std::fmt::Write;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#9c755f",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Render a category. `group` assigns each object a palette colour
/// (e.g. the base object of a fibred construction); use `|_| 0` for a
/// plain category.
pub fn category_svg(cat: &Category, group: impl Fn(ObjId) -> usize) -> String {
    let n = cat.object_count().max(1);
    let radius = 60.0_f64.max(22.0 * n as f64);
    let margin = 90.0;
    let size = 2.0 * (radius + margin);
    let centre = radius + margin;
    let pos = |o: ObjId| -> (f64, f64) {
        let angle =
            std::f64::consts::TAU * o.index() as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
        (centre + radius * angle.cos(), centre + radius * angle.sin())
    };

    let mut svg = String::new();
    write!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size:.0} {size:.0}" font-family="sans-serif">"##
    )
    .unwrap();
    svg.push_str(
        r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker></defs>"##,
    );

    // Group parallel non-identity morphisms so they fan out.
    let mut parallel: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
    for m in cat.morphisms() {
        if cat.is_identity(m) {
            continue;
        }
        parallel
            .entry((cat.dom(m), cat.cod(m)))
            .or_default()
            .push(m);
    }

    for ((dom, cod), ms) in &parallel {
        let k = ms.len();
        for (i, &m) in ms.iter().enumerate() {
            let offset = (i as f64 - (k as f64 - 1.0) / 2.0) * 26.0;
            let label = escape(cat.morphism_name(m));
            if dom == cod {
                // Loop: a circle sitting outside the node.
                let (x, y) = pos(*dom);
                let dx = x - centre;
                let dy = y - centre;
                let len = (dx * dx + dy * dy).sqrt().max(1.0);
                let r = 16.0 + (i as f64) * 10.0;
                let cx = x + (dx / len) * (26.0 + r);
                let cy = y + (dy / len) * (26.0 + r);
                write!(
                    svg,
                    r##"<circle cx="{cx:.1}" cy="{cy:.1}" r="{r:.1}" fill="none" stroke="#555" stroke-width="1.3"/><text x="{tx:.1}" y="{ty:.1}" font-size="11" fill="#333" text-anchor="middle">{label}</text>"##,
                    tx = cx,
                    ty = cy - r - 4.0,
                )
                .unwrap();
            } else {
                let (x1, y1) = pos(*dom);
                let (x2, y2) = pos(*cod);
                let mx = (x1 + x2) / 2.0;
                let my = (y1 + y2) / 2.0;
                let dx = x2 - x1;
                let dy = y2 - y1;
                let len = (dx * dx + dy * dy).sqrt().max(1.0);
                // Perpendicular offset for parallel arrows.
                let px = -dy / len;
                let py = dx / len;
                let cx = mx + px * offset;
                let cy = my + py * offset;
                // Trim the endpoints to the node circles.
                let trim = 22.0 / len;
                let sx = x1 + dx * trim;
                let sy = y1 + dy * trim;
                let ex = x2 - dx * trim;
                let ey = y2 - dy * trim;
                write!(
                    svg,
                    r##"<path d="M {sx:.1} {sy:.1} Q {cx:.1} {cy:.1} {ex:.1} {ey:.1}" fill="none" stroke="#555" stroke-width="1.3" marker-end="url(#arrow)"/><text x="{lx:.1}" y="{ly:.1}" font-size="11" fill="#333" text-anchor="middle">{label}</text>"##,
                    lx = mx + px * (offset + 12.0),
                    ly = my + py * (offset + 12.0) + 4.0,
                )
                .unwrap();
            }
        }
    }

    for o in cat.objects() {
        let (x, y) = pos(o);
        let colour = PALETTE[group(o) % PALETTE.len()];
        let label = escape(cat.object_name(o));
        write!(
            svg,
            r##"<circle cx="{x:.1}" cy="{y:.1}" r="20" fill="{colour}" fill-opacity="0.15" stroke="{colour}" stroke-width="1.6"/><text x="{x:.1}" y="{ty:.1}" font-size="11" fill="#222" text-anchor="middle">{label}</text>"##,
            ty = y + 4.0,
        )
        .unwrap();
    }
    svg.push_str("</svg>");
    svg
}

//! Deterministic SVG rendering of fronts, ruling overlays and Stokes
//! diagrams. Strands are cubic paths, the under strand at each crossing is
//! drawn with a gap, ruling eyes are shaded, Stokes branches are sampled
//! polylines. Output is byte-stable for fixed input.

use crate::braidfront::{CuspSide, FrontDiagram, FrontKind};
use crate::rulings::{CrossingClass, EyeDecomposition, NormalRuling};
use crate::stokes::StokesDiagram;
use std::fmt::Write as _;

const DX: f64 = 60.0;
const DY: f64 = 36.0;
const MARGIN: f64 = 40.0;

fn fx(v: f64) -> String {
    format!("{v:.2}")
}

/// y pixel of a global slot (slot 1 on top).
fn slot_y(slot: usize) -> f64 {
    MARGIN + slot as f64 * DY
}

/// x pixel of a singularity slot.
fn sing_x(x: usize) -> f64 {
    MARGIN + (x as f64 + 1.0) * DX
}

struct Svg {
    body: String,
    width: f64,
    height: f64,
}

impl Svg {
    fn new(width: f64, height: f64) -> Svg {
        Svg { body: String::new(), width, height }
    }

    fn path(&mut self, d: &str, class: &str, style: &str) {
        let _ = writeln!(self.body, "  <path class=\"{class}\" d=\"{d}\" style=\"{style}\"/>");
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
            w = fx(self.width),
            h = fx(self.height),
            body = self.body
        )
    }
}

const STRAND_STYLE: &str = "fill:none;stroke:#1a1a1a;stroke-width:2";
const DASHED_STYLE: &str = "fill:none;stroke:#999999;stroke-width:1;stroke-dasharray:4 3";

/// Piecewise strand geometry of a rainbow front in pixel coordinates: for
/// each braid level the polyline through its slot positions, with crossing
/// swaps as diagonal segments.
fn braid_strand_points(front: &FrontDiagram, start_level: usize) -> Vec<(f64, f64)> {
    let n = front.n;
    let mut pts = Vec::new();
    let mut level = start_level;
    // entry at the left cusp of this level
    pts.push((sing_x(n - start_level) - 0.4 * DX, slot_y(n + start_level)));
    for c in &front.crossings {
        let x = sing_x(c.x);
        pts.push((x - 0.5 * DX, slot_y(n + level)));
        if c.level == level {
            pts.push((x + 0.5 * DX, slot_y(n + level + 1)));
            level += 1;
        } else if c.level + 1 == level {
            pts.push((x + 0.5 * DX, slot_y(n + level - 1)));
            level -= 1;
        } else {
            pts.push((x + 0.5 * DX, slot_y(n + level)));
        }
    }
    let exit = level;
    pts.push((sing_x(n + front.letters.len() + exit - 1) + 0.4 * DX, slot_y(n + exit)));
    pts
}

fn polyline_d(pts: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if i == 0 { "M" } else { " L" }, fx(*x), fx(*y));
    }
    d
}

/// Render a front diagram. Rainbow closures show cusped upper arcs, crossing
/// gaps on the ascending (under) strand, and base-point dots; cylindrical
/// closures show the braid band with wrap-around markers.
pub fn front_svg(front: &FrontDiagram) -> String {
    match front.kind {
        FrontKind::Rainbow => rainbow_svg(front, None),
        FrontKind::Cylindrical => cylindrical_svg(front),
    }
}

/// Render a rainbow front with a normal ruling overlay: eyes shaded, switch
/// crossings marked.
pub fn ruling_svg(front: &FrontDiagram, ruling: &NormalRuling, eyes: &EyeDecomposition) -> String {
    rainbow_svg(front, Some((ruling, eyes)))
}

fn rainbow_svg(front: &FrontDiagram, overlay: Option<(&NormalRuling, &EyeDecomposition)>) -> String {
    let n = front.n;
    let ell = front.letters.len();
    let total = 2 * n + ell;
    let width = 2.0 * MARGIN + (total as f64 + 1.0) * DX;
    let height = 2.0 * MARGIN + (2 * n + 1) as f64 * DY;
    let mut svg = Svg::new(width, height);

    // eye shading first, underneath the strands
    if let Some((ruling, eyes)) = overlay {
        const FILLS: [&str; 6] = ["#b3cde3", "#ccebc5", "#fbb4ae", "#decbe4", "#fed9a6", "#ffffcc"];
        for (e, eye) in eyes.eyes.iter().enumerate() {
            // polygon through the upper path then the reversed lower path,
            // one vertex per slice
            let mut pts: Vec<(f64, f64)> = Vec::new();
            let x_of_slice = |m: usize| sing_x(n + m) - 0.5 * DX;
            for (m, &slot) in eye.upper_path.iter().enumerate() {
                pts.push((x_of_slice(m), slot_y(slot + 1)));
            }
            for (m, &slot) in eye.lower_path.iter().enumerate().rev() {
                pts.push((x_of_slice(m), slot_y(slot + 1)));
            }
            if pts.is_empty() {
                continue;
            }
            let mut d = polyline_d(&pts);
            d.push_str(" Z");
            svg.path(
                &d,
                "eye",
                &format!("fill:{};fill-opacity:0.55;stroke:none", FILLS[e % FILLS.len()]),
            );
        }
        let _ = ruling;
    }

    // upper strands as flat-topped arcs
    for i in 1..=n {
        let y = slot_y(n + 1 - i);
        let x0 = sing_x(n - i);
        let x1 = sing_x(n + ell + i - 1);
        let y_cusp = slot_y(n) + 0.5 * DY;
        let d = format!(
            "M{} {} C{} {} {} {} {} {} L{} {} C{} {} {} {} {} {}",
            fx(x0),
            fx(y_cusp),
            fx(x0 - 0.6 * DX),
            fx(y_cusp),
            fx(x0 - 0.2 * DX),
            fx(y),
            fx(x0 + 0.4 * DX),
            fx(y),
            fx(x1 - 0.4 * DX),
            fx(y),
            fx(x1 + 0.2 * DX),
            fx(y),
            fx(x1 + 0.6 * DX),
            fx(y_cusp),
            fx(x1),
            fx(y_cusp)
        );
        svg.path(&d, "upper", STRAND_STYLE);
    }

    // braid strands; the ascending strand at each crossing carries the gap
    for start in 1..=n {
        let pts = braid_strand_points(front, start);
        svg.path(&polyline_d(&pts), "braid", STRAND_STYLE);
    }
    // crossing gaps: overpaint a short blank on the ascending strand
    for c in &front.crossings {
        let x = sing_x(c.x);
        let (y_top, y_bot) = (slot_y(c.slots.0), slot_y(c.slots.1));
        let mid = 0.5 * (y_top + y_bot);
        let d = format!(
            "M{} {} L{} {}",
            fx(x - 0.12 * DX),
            fx(mid + 0.12 * (y_bot - y_top)),
            fx(x + 0.12 * DX),
            fx(mid - 0.12 * (y_bot - y_top))
        );
        svg.path(&d, "understrand-gap", "fill:none;stroke:#ffffff;stroke-width:6");
        // redraw the over strand (descending) through the crossing
        let d_over = format!(
            "M{} {} L{} {}",
            fx(x - 0.5 * DX),
            fx(y_top),
            fx(x + 0.5 * DX),
            fx(y_bot)
        );
        svg.path(&d_over, "overstrand", STRAND_STYLE);
    }

    // cusp line and base points
    for cusp in front.cusps.iter().filter(|c| c.side == CuspSide::Right) {
        if front.basepoints.iter().any(|bp| bp.at_cusp == cusp.index) {
            let x = sing_x(cusp.x);
            let y = slot_y(n) + 0.5 * DY;
            let d = format!(
                "M{} {} a3 3 0 1 0 0.01 0",
                fx(x),
                fx(y - 3.0)
            );
            svg.path(&d, "basepoint", "fill:#c62828;stroke:none");
        }
    }

    // switch marks on top of everything
    if let Some((ruling, _)) = overlay {
        for (m, class) in ruling.classes.iter().enumerate() {
            if *class == CrossingClass::Switch {
                let c = &front.crossings[m];
                let x = sing_x(c.x);
                let y = 0.5 * (slot_y(c.slots.0) + slot_y(c.slots.1));
                let d = format!("M{} {} a5 5 0 1 0 0.01 0", fx(x), fx(y - 5.0));
                svg.path(&d, "switch", "fill:none;stroke:#c62828;stroke-width:2");
            }
        }
    }

    svg.finish()
}

fn cylindrical_svg(front: &FrontDiagram) -> String {
    let n = front.n;
    let ell = front.letters.len().max(1);
    let width = 2.0 * MARGIN + (ell as f64 + 1.0) * DX;
    let height = 2.0 * MARGIN + (n + 1) as f64 * DY;
    let mut svg = Svg::new(width, height);
    // seam markers
    for x in [MARGIN, width - MARGIN] {
        let d = format!("M{} {} L{} {}", fx(x), fx(MARGIN), fx(x), fx(height - MARGIN));
        svg.path(&d, "seam", DASHED_STYLE);
    }
    let slot_yy = |s: usize| MARGIN + s as f64 * DY;
    let x_at = |pos: f64| MARGIN + 0.5 * DX + pos * DX;
    for start in 1..=n {
        let mut level = start;
        let mut pts = vec![(MARGIN, slot_yy(level))];
        for (m, &k) in front.letters.iter().enumerate() {
            let x = x_at(m as f64);
            pts.push((x - 0.4 * DX, slot_yy(level)));
            if k == level {
                pts.push((x + 0.4 * DX, slot_yy(level + 1)));
                level += 1;
            } else if k + 1 == level {
                pts.push((x + 0.4 * DX, slot_yy(level - 1)));
                level -= 1;
            } else {
                pts.push((x + 0.4 * DX, slot_yy(level)));
            }
        }
        pts.push((width - MARGIN, slot_yy(level)));
        svg.path(&polyline_d(&pts), "braid", STRAND_STYLE);
    }
    for (m, &k) in front.letters.iter().enumerate() {
        let x = x_at(m as f64);
        let mid = 0.5 * (slot_yy(k) + slot_yy(k + 1));
        let d = format!("M{} {} L{} {}", fx(x - 6.0), fx(mid + 4.0), fx(x + 6.0), fx(mid - 4.0));
        svg.path(&d, "understrand-gap", "fill:none;stroke:#ffffff;stroke-width:6");
    }
    svg.finish()
}

/// Render a sampled Stokes diagram: one polyline per strand over the angle
/// axis, with crossing dots.
pub fn stokes_svg(diagram: &StokesDiagram) -> String {
    let width = 720.0;
    let height = 360.0;
    let mut svg = Svg::new(width, height);
    let samples = diagram.samples;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for vs in &diagram.strand_values {
        for &v in vs {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || hi - lo < 1e-12 {
        lo = -1.0;
        hi = 1.0;
    }
    let x_of = |j: usize| MARGIN + (width - 2.0 * MARGIN) * j as f64 / (samples.max(1) as f64);
    let y_of = |v: f64| height - MARGIN - (height - 2.0 * MARGIN) * (v - lo) / (hi - lo);
    const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];
    for (s, vs) in diagram.strand_values.iter().enumerate() {
        let pts: Vec<(f64, f64)> = vs.iter().enumerate().map(|(j, &v)| (x_of(j), y_of(v))).collect();
        svg.path(
            &polyline_d(&pts),
            "strand",
            &format!("fill:none;stroke:{};stroke-width:1.5", COLORS[s % COLORS.len()]),
        );
    }
    for c in &diagram.crossings {
        let j = c.theta / std::f64::consts::TAU * samples as f64;
        let x = MARGIN + (width - 2.0 * MARGIN) * j / samples as f64;
        // mark at the crossing height of the first strand
        let v = diagram.strand_values[c.strands.0][(j as usize).min(samples - 1)];
        let d = format!("M{} {} a4 4 0 1 0 0.01 0", fx(x), fx(y_of(v) - 4.0));
        svg.path(&d, "crossing", "fill:none;stroke:#333333;stroke-width:1.5");
    }
    svg.finish()
}

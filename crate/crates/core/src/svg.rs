//! Deterministic SVG rendering of a 2-face with a twist's support marked.
//!
//! The face is drawn in a fixed equilateral-ish frame whose corner
//! coordinates are multiples of 5, so every lattice point lands on integer
//! pixel coordinates: no floating point, and the output is byte-identical
//! for identical input.

use crate::lattice::{Geometry, DIVISOR_COUNT};
use crate::twist::{face_point_order, TwistClass};
use std::fmt::Write as _;

/// Frame corners for the barycentric embedding (all divisible by 5).
const CORNERS: [[i64; 2]; 3] = [[300, 40], [40, 490], [560, 490]];
const VIEW: [i64; 2] = [600, 540];

fn embed(bary: [u8; 3]) -> [i64; 2] {
    let mut p = [0i64; 2];
    for axis in 0..2 {
        p[axis] = (0..3)
            .map(|v| i64::from(bary[v]) * CORNERS[v][axis])
            .sum::<i64>()
            / 5;
    }
    p
}

/// Renders one 2-face: the 25-triangle subdivision with the 21 incident
/// divisor points, the twist's support filled.
#[must_use]
pub fn face_svg(geometry: &Geometry, face: [u8; 3], l: &TwistClass) -> String {
    let points = &geometry.points;
    let order = face_point_order(geometry, face);
    let local_bary = |p: usize| -> [u8; 3] {
        let b = points.points[p].bary;
        [
            b[face[0] as usize],
            b[face[1] as usize],
            b[face[2] as usize],
        ]
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\" width=\"{}\" height=\"{}\">",
        VIEW[0], VIEW[1], VIEW[0], VIEW[1]
    );
    let _ = writeln!(
        svg,
        "  <title>face V{}V{}V{} with twist support marked</title>",
        face[0], face[1], face[2]
    );
    svg.push_str("  <style>\n");
    svg.push_str("    .cell { fill: none; stroke: #888888; stroke-width: 1; }\n");
    svg.push_str("    .pt-off { fill: #ffffff; stroke: #222222; stroke-width: 1.5; }\n");
    svg.push_str("    .pt-on { fill: #c62828; stroke: #222222; stroke-width: 1.5; }\n");
    svg.push_str("    .lbl { font: 11px monospace; fill: #333333; text-anchor: middle; }\n");
    svg.push_str("  </style>\n");

    for tri in geometry.triangulation.triangles_of_face(face) {
        let coords: Vec<String> = tri
            .iter()
            .map(|&p| {
                let [x, y] = embed(local_bary(p));
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            svg,
            "  <polygon class=\"cell\" points=\"{}\"/>",
            coords.join(" ")
        );
    }

    for &p in &order {
        let [x, y] = embed(local_bary(p));
        let on = p < DIVISOR_COUNT && l.eps.get(p);
        let class = if on { "pt-on" } else { "pt-off" };
        let _ = writeln!(
            svg,
            "  <circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"7\"/>"
        );
        let _ = writeln!(
            svg,
            "  <text class=\"lbl\" x=\"{x}\" y=\"{}\">{}</text>",
            y + 22,
            points.id(p)
        );
    }

    svg.push_str("</svg>\n");
    svg
}

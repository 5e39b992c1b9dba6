//! SVG rendering of diagrams, following the usual drawing conventions:
//! floors are ellipses stacked by topological rank (lowest floor at the
//! bottom), edges are near-vertical segments oriented upward, a θ label
//! appears only when nonzero, an edge weight only when at least 2, and a
//! marking labels positions 1..s (dots on edges, numbers on floors).
//!
//! Layout is pure integer arithmetic from the diagram data, so the byte
//! output is deterministic.

use std::fmt::Write as _;

use crate::diagrams::{ElementId, FloorDiagram, Marking};
use crate::enumeration::DiagramInventory;

const RX: i64 = 22;
const RY: i64 = 12;
const ROW_DY: i64 = 72;
const STUB: i64 = 30;
const MARGIN: i64 = 28;
const SLOT_DX: i64 = 7;
const SUBFIG_W: i64 = 170;

/// Vertical rank of each floor: its index. Canonical forms (and every
/// diagram the sweep produces) index floors in topological order, and
/// rendering relies only on ranks for placement, not correctness.
fn ranks(d: &FloorDiagram) -> Vec<i64> {
    (0..d.vertex_count() as i64).collect()
}

struct Layout {
    /// Per-floor ellipse centers.
    centers: Vec<(i64, i64)>,
    /// Per bounded edge: x slot (shared between both endpoints).
    edge_x: Vec<i64>,
    /// Per bottom edge: x slot at its destination floor.
    bottom_x: Vec<i64>,
    /// Per top edge: x slot at its source floor.
    top_x: Vec<i64>,
    width: i64,
    height: i64,
}

fn layout(d: &FloorDiagram, x0: i64) -> Layout {
    let n = d.vertex_count();
    let ranks = ranks(d);
    let max_rank = *ranks.iter().max().unwrap();
    let cx = x0 + SUBFIG_W / 2;
    let y_of = |rank: i64| MARGIN + STUB + RY + (max_rank - rank) * ROW_DY;
    let centers: Vec<(i64, i64)> = (0..n).map(|v| (cx, y_of(ranks[v]))).collect();

    // Spread everything attached between the same pair of rows: bounded
    // edges grouped by (src, dst); unbounded stubs grouped per floor.
    let mut edge_x = vec![0i64; d.bounded_edges().len()];
    let mut groups: std::collections::BTreeMap<(usize, usize), Vec<usize>> =
        std::collections::BTreeMap::new();
    for (i, e) in d.bounded_edges().iter().enumerate() {
        groups.entry((e.src, e.dst)).or_default().push(i);
    }
    for ((_, _), members) in groups {
        let c = members.len() as i64;
        for (k, &i) in members.iter().enumerate() {
            edge_x[i] = cx + (2 * k as i64 - (c - 1)) * SLOT_DX;
        }
    }
    let spread = |count: usize, cx: i64| -> Vec<i64> {
        (0..count)
            .map(|k| cx + (2 * k as i64 - (count as i64 - 1)) * SLOT_DX)
            .collect()
    };
    let mut bottom_x = vec![0i64; d.bottoms().len()];
    let mut top_x = vec![0i64; d.tops().len()];
    for v in 0..n {
        let mine: Vec<usize> = (0..d.bottoms().len())
            .filter(|&i| d.bottoms()[i] == v)
            .collect();
        for (&i, x) in mine.iter().zip(spread(mine.len(), cx)) {
            bottom_x[i] = x;
        }
        let mine: Vec<usize> = (0..d.tops().len()).filter(|&i| d.tops()[i] == v).collect();
        for (&i, x) in mine.iter().zip(spread(mine.len(), cx)) {
            top_x[i] = x;
        }
    }
    Layout {
        centers,
        edge_x,
        bottom_x,
        top_x,
        width: SUBFIG_W,
        height: MARGIN * 2 + 2 * (STUB + RY) + max_rank * ROW_DY,
    }
}

fn text(out: &mut String, x: i64, y: i64, size: i64, s: &str) {
    writeln!(
        out,
        r#"<text x="{x}" y="{y}" font-size="{size}" font-family="serif" text-anchor="middle">{s}</text>"#
    )
    .unwrap();
}

fn line(out: &mut String, x1: i64, y1: i64, x2: i64, y2: i64) {
    writeln!(
        out,
        r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1.2"/>"#
    )
    .unwrap();
}

/// Renders one diagram into SVG group content (no outer `<svg>` tag).
fn render_into(out: &mut String, d: &FloorDiagram, marking: Option<&Marking>, x0: i64) -> Layout {
    let lay = layout(d, x0);
    // Position of each element when a marking is present.
    let mut mark_of = vec![None::<usize>; d.element_count()];
    if let Some(m) = marking {
        for i in 1..=m.len() {
            mark_of[d.element_index(m.element_at(i))] = Some(i);
        }
    }

    // Bounded edges: from the top of the source ellipse to the bottom of
    // the destination ellipse, at the edge's x slot.
    for (i, e) in d.bounded_edges().iter().enumerate() {
        let (_, y_src) = lay.centers[e.src];
        let (_, y_dst) = lay.centers[e.dst];
        let x = lay.edge_x[i];
        let (y1, y2) = (y_src - RY, y_dst + RY);
        line(out, x, y1, x, y2);
        let mid = (y1 + y2) / 2;
        if e.weight >= 2 {
            text(out, x + 10, mid - 4, 11, &e.weight.to_string());
        }
        if let Some(pos) = mark_of[d.element_index(ElementId::Bounded(i))] {
            writeln!(out, r#"<circle cx="{x}" cy="{mid}" r="2.4" fill="black"/>"#).unwrap();
            text(out, x - 9, mid + 4, 10, &pos.to_string());
        }
    }
    // Unbounded stubs: below destination floors and above source floors.
    for (i, &v) in d.bottoms().iter().enumerate() {
        let (_, y) = lay.centers[v];
        let x = lay.bottom_x[i];
        line(out, x, y + RY + STUB, x, y + RY);
        if let Some(pos) = mark_of[d.element_index(ElementId::Bottom(i))] {
            let mid = y + RY + STUB / 2;
            writeln!(out, r#"<circle cx="{x}" cy="{mid}" r="2.4" fill="black"/>"#).unwrap();
            text(out, x - 9, mid + 4, 10, &pos.to_string());
        }
    }
    for (i, &v) in d.tops().iter().enumerate() {
        let (_, y) = lay.centers[v];
        let x = lay.top_x[i];
        line(out, x, y - RY, x, y - RY - STUB);
        if let Some(pos) = mark_of[d.element_index(ElementId::Top(i))] {
            let mid = y - RY - STUB / 2;
            writeln!(out, r#"<circle cx="{x}" cy="{mid}" r="2.4" fill="black"/>"#).unwrap();
            text(out, x - 9, mid + 4, 10, &pos.to_string());
        }
    }
    // Floors last so ellipses sit on top of the line ends.
    for (v, &(x, y)) in lay.centers.iter().enumerate() {
        writeln!(
            out,
            r#"<ellipse cx="{x}" cy="{y}" rx="{RX}" ry="{RY}" fill="white" stroke="black" stroke-width="1.2"/>"#
        )
        .unwrap();
        let theta = d.theta(v);
        let pos = mark_of[d.element_index(ElementId::Vertex(v))];
        match (theta != 0, pos) {
            (true, Some(p)) => {
                text(out, x - 8, y + 4, 11, &theta.to_string());
                text(out, x + 8, y + 4, 11, &p.to_string());
            }
            (true, None) => text(out, x, y + 4, 11, &theta.to_string()),
            (false, Some(p)) => text(out, x, y + 4, 11, &p.to_string()),
            (false, None) => {}
        }
    }
    lay
}

fn document(width: i64, height: i64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    )
}

/// Renders a single (optionally marked) diagram as a complete SVG
/// document.
pub fn render_diagram(d: &FloorDiagram, marking: Option<&Marking>) -> String {
    let mut body = String::new();
    let lay = render_into(&mut body, d, marking, 0);
    document(lay.width, lay.height, &body)
}

/// Renders every diagram of an inventory side by side, canonical order.
pub fn render_inventory(inv: &DiagramInventory) -> String {
    if inv.entries.is_empty() {
        return document(SUBFIG_W, 2 * MARGIN, "");
    }
    let mut body = String::new();
    let mut width = 0;
    let mut height = 0;
    for (i, e) in inv.entries.iter().enumerate() {
        let lay = render_into(&mut body, &e.diagram, None, i as i64 * SUBFIG_W);
        width += lay.width;
        height = height.max(lay.height);
    }
    document(width, height, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::BoundedEdge;
    use crate::enumeration::{build_inventory, enumerate_marking_representatives};
    use crate::lattice::HTransversePolygon;

    #[test]
    fn single_floor_renders_one_ellipse_and_one_segment() {
        let d = FloorDiagram::new(vec![0], vec![], vec![0], vec![]).unwrap();
        let svg = render_diagram(&d, None);
        assert_eq!(svg.matches("<ellipse").count(), 1);
        assert_eq!(svg.matches("<line").count(), 1);
        // θ = 0 is not printed, and nothing is marked.
        assert_eq!(svg.matches("<text").count(), 0);
    }

    #[test]
    fn weight_two_label_is_present() {
        let d = FloorDiagram::new(
            vec![0, 0, 0],
            vec![
                BoundedEdge { src: 0, dst: 1, weight: 2 },
                BoundedEdge { src: 1, dst: 2, weight: 1 },
            ],
            vec![0, 0, 0],
            vec![],
        )
        .unwrap();
        let svg = render_diagram(&d, None);
        assert!(svg.contains(">2</text>"));
        // The weight-1 edge gets no label.
        assert_eq!(svg.matches("</text>").count(), 1);
    }

    #[test]
    fn nonzero_theta_is_printed() {
        let d = FloorDiagram::new(vec![-1], vec![], vec![], vec![0]).unwrap();
        let svg = render_diagram(&d, None);
        assert!(svg.contains(">-1</text>"));
    }

    #[test]
    fn marking_labels_every_position() {
        let p = HTransversePolygon::triangle(3);
        let inv = build_inventory(&p, 0, 1).unwrap();
        let d = &inv.entries[0].diagram;
        let m = enumerate_marking_representatives(d).into_iter().next().unwrap();
        let svg = render_diagram(d, Some(&m));
        for i in 1..=m.len() {
            assert!(svg.contains(&format!(">{i}</text>")), "missing mark {i}");
        }
    }

    #[test]
    fn inventory_renders_one_subfigure_per_diagram() {
        let p = HTransversePolygon::triangle(3);
        let inv = build_inventory(&p, 0, 1).unwrap();
        let svg = render_inventory(&inv);
        // 3 diagrams with 3 floors each: 9 ellipses.
        assert_eq!(svg.matches("<ellipse").count(), 9);
    }

    #[test]
    fn rendering_is_deterministic() {
        let p = HTransversePolygon::triangle(3);
        let a = render_inventory(&build_inventory(&p, 0, 1).unwrap());
        let b = render_inventory(&build_inventory(&p, 0, 4).unwrap());
        assert_eq!(a, b);
    }
}

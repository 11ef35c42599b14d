//! Static SVG drawing of a lattice embedding.

use std::fmt::Write;

use crate::lattice::{Embedding, Graph, LatticeError, VertexId};

pub const UNIT_PX: i64 = 20;
const MARGIN_PX: i64 = 20;

/// One `<line>` per edge, then one `<circle>` per vertex. Screen y grows
/// downward, so lattice y is flipped. Vertices in `highlight` are drawn
/// larger and in red.
pub fn render_svg(g: &Graph, e: &Embedding, highlight: &[VertexId]) -> Result<String, LatticeError> {
    let mut pos = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        pos.push(e.get(v).ok_or(LatticeError::NotTotal(v))?);
    }
    let (min_x, max_x) = bounds(pos.iter().map(|p| p.x));
    let (min_y, max_y) = bounds(pos.iter().map(|p| p.y));
    let width = (max_x - min_x) * UNIT_PX + 2 * MARGIN_PX;
    let height = (max_y - min_y) * UNIT_PX + 2 * MARGIN_PX;
    let sx = |x: i64| (x - min_x) * UNIT_PX + MARGIN_PX;
    let sy = |y: i64| (max_y - y) * UNIT_PX + MARGIN_PX;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str("<g stroke=\"#333\" stroke-width=\"2\">\n");
    for (u, v) in g.edges() {
        let (p, q) = (pos[u], pos[v]);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            sx(p.x),
            sy(p.y),
            sx(q.x),
            sy(q.y)
        );
    }
    out.push_str("</g>\n<g stroke=\"none\">\n");
    for (v, p) in pos.iter().enumerate() {
        let (r, fill) = if highlight.contains(&v) { (6, "#d62728") } else { (4, "#1f77b4") };
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}"><title>{v}</title></circle>"#,
            sx(p.x),
            sy(p.y)
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn bounds(values: impl Iterator<Item = i64>) -> (i64, i64) {
    values.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((v.min(lo), v.max(hi))),
    })
    .unwrap_or((0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;

    #[test]
    fn unit_square_drawing() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let e: Embedding = [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .enumerate()
            .map(|(v, &(x, y))| (v, LatticePoint::new(x, y)))
            .collect();
        let svg = render_svg(&g, &e, &[2]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 4);
        assert_eq!(svg.matches("#d62728").count(), 1);
        assert!(svg.contains(r#"width="60" height="60""#));
        // Vertex 3 at lattice (0, 1) sits at the top left.
        assert!(svg.contains(r##"<circle cx="20" cy="20" r="4" fill="#1f77b4"><title>3</title>"##));
    }

    #[test]
    fn partial_embedding_is_an_error() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let e: Embedding = [(0, LatticePoint::new(0, 0))].into_iter().collect();
        assert_eq!(render_svg(&g, &e, &[]), Err(LatticeError::NotTotal(1)));
    }
}

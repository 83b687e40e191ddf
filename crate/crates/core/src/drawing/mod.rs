//! Drawings with integer coordinates: realizing a crossing witness,
//! auditing a drawing exactly, and SVG output.

mod fpp;
pub mod geom;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{crossed_sequence, EdgeId, EdgeSet, MultiGraph, VertexId};
use crate::solver::{CrossingWitness, WitnessError};
pub use geom::{Point, RatPoint};
use geom::{intersect, on_segment, Meet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredCrossing {
    pub point: Point,
    pub edges: (EdgeId, EdgeId),
}

/// Vertex points, edge polylines and the crossings the producer claims.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    pub vertices: BTreeMap<VertexId, Point>,
    pub edges: BTreeMap<EdgeId, Vec<Point>>,
    #[serde(default)]
    pub crossings: Vec<DeclaredCrossing>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawError {
    #[error("invalid witness: {0}")]
    Witness(#[from] WitnessError),
    #[error("planarization could not be drawn")]
    Layout,
}

/// Builds a drawing of `G` whose crossings are exactly the witness pairs.
pub fn realize(g: &MultiGraph, w: &CrossingWitness) -> Result<Drawing, DrawError> {
    w.validate(g, &EdgeSet::new(), w.len())?;
    w.check_drawable()?;
    let (tilde, _) = w.subdivided(g, &EdgeSet::new())?;
    let crossed = crossed_sequence(&tilde, &w.pairs).map_err(WitnessError::from)?;
    let mut dummy_of: BTreeMap<EdgeId, VertexId> = BTreeMap::new();
    for rec in &crossed.crossings {
        dummy_of.insert(rec.pair.0, rec.dummy);
        dummy_of.insert(rec.pair.1, rec.dummy);
    }

    // Vertex sequence of every original edge in the planarization.
    let mut routes: Vec<(EdgeId, Vec<VertexId>)> = Vec::new();
    for path in &w.subdivision.paths {
        let chain: Vec<VertexId> = std::iter::once(path.ends.0)
            .chain(path.inner.iter().copied())
            .chain(std::iter::once(path.ends.1))
            .collect();
        let mut route = vec![chain[0]];
        for (i, piece) in path.pieces.iter().enumerate() {
            if let Some(&x) = dummy_of.get(piece) {
                route.push(x);
            }
            route.push(chain[i + 1]);
        }
        routes.push((path.original, route));
    }

    // Index graph; repeated vertex pairs get a bend vertex so the result
    // is simple.
    let index: BTreeMap<VertexId, usize> = crossed
        .graph
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let mut n = index.len();
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    let mut index_routes: Vec<Vec<usize>> = Vec::new();
    for (_, route) in &routes {
        let mut r = vec![index[&route[0]]];
        for pair in route.windows(2) {
            let (a, b) = (index[&pair[0]], index[&pair[1]]);
            if !seen.insert((a.min(b), a.max(b))) {
                let m = n;
                n += 1;
                edges.push([a, m]);
                edges.push([m, b]);
                r.push(m);
            } else {
                edges.push([a, b]);
            }
            r.push(b);
        }
        index_routes.push(r);
    }
    let coords = fpp::straight_line(n, &edges).ok_or(DrawError::Layout)?;
    let pt = |i: usize| Point::new(coords[i].0, coords[i].1);

    let mut d = Drawing::default();
    for v in g.vertices() {
        d.vertices.insert(v, pt(index[&v]));
    }
    for ((e, _), r) in routes.iter().zip(&index_routes) {
        d.edges.insert(*e, r.iter().map(|&i| pt(i)).collect());
    }
    let table = w.subdivision.origin_table();
    for rec in &crossed.crossings {
        let a = table[&rec.pair.0].0;
        let b = table[&rec.pair.1].0;
        d.crossings.push(DeclaredCrossing {
            point: pt(index[&rec.dummy]),
            edges: (a.min(b), a.max(b)),
        });
    }
    d.crossings.sort_by_key(|c| (c.edges, c.point));
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    MissingVertex { vertex: VertexId },
    MissingEdge { edge: EdgeId },
    UnknownVertex { vertex: VertexId },
    UnknownEdge { edge: EdgeId },
    /// Two vertices share a point.
    SharedVertexPoint { a: VertexId, b: VertexId },
    /// The polyline does not join the points of its endpoints.
    WrongEnds { edge: EdgeId },
    /// Zero-length segment or self-intersecting polyline.
    NotSimple { edge: EdgeId },
    /// The edge passes through a vertex point other than its ends.
    ThroughVertex { edge: EdgeId, vertex: VertexId },
    /// Two edges overlap along a segment.
    Overlap { a: EdgeId, b: EdgeId },
    /// Two edges share more than one interior point.
    MultipleMeetings { a: EdgeId, b: EdgeId, points: usize },
    /// More than two edges pass through one point.
    CrowdedPoint { point: RatPoint, edges: Vec<EdgeId> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub point: RatPoint,
    pub edges: (EdgeId, EdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub crossing_count: usize,
    pub crossings: Vec<Crossing>,
    pub violations: Vec<Violation>,
    /// Crossings that involve a forbidden edge.
    pub forbidden_crossings: Vec<Crossing>,
    /// Whether the drawing's own crossing list matches the computed one.
    pub declared_matches: bool,
    /// Valid, at most `k` crossings, none on a forbidden edge.
    pub k_good: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits every drawing rule with exact arithmetic and counts crossings:
/// points off the vertex set lying on exactly two edges.
pub fn validate(g: &MultiGraph, forbidden: &EdgeSet, d: &Drawing, k: usize) -> ValidationReport {
    let mut violations = Vec::new();
    for v in g.vertices() {
        if !d.vertices.contains_key(&v) {
            violations.push(Violation::MissingVertex { vertex: v });
        }
    }
    for &v in d.vertices.keys() {
        if !g.has_vertex(v) {
            violations.push(Violation::UnknownVertex { vertex: v });
        }
    }
    for e in g.edge_ids() {
        if !d.edges.contains_key(&e) {
            violations.push(Violation::MissingEdge { edge: e });
        }
    }
    for &e in d.edges.keys() {
        if !g.has_edge(e) {
            violations.push(Violation::UnknownEdge { edge: e });
        }
    }
    let mut by_point: BTreeMap<Point, VertexId> = BTreeMap::new();
    for (&v, &p) in &d.vertices {
        if let Some(&u) = by_point.get(&p) {
            violations.push(Violation::SharedVertexPoint { a: u, b: v });
        } else {
            by_point.insert(p, v);
        }
    }
    let vertex_points: BTreeSet<RatPoint> = d.vertices.values().map(|&p| p.into()).collect();

    // Per-edge checks.
    let mut segments: Vec<(EdgeId, usize, Point, Point)> = Vec::new();
    for (&e, line) in &d.edges {
        let Some((u, v)) = g.endpoints(e) else {
            continue;
        };
        let (Some(&pu), Some(&pv)) = (d.vertices.get(&u), d.vertices.get(&v)) else {
            continue;
        };
        if line.len() < 2 {
            violations.push(Violation::WrongEnds { edge: e });
            continue;
        }
        let (first, last) = (line[0], line[line.len() - 1]);
        if !((first == pu && last == pv) || (first == pv && last == pu)) {
            violations.push(Violation::WrongEnds { edge: e });
        }
        if line.windows(2).any(|w| w[0] == w[1]) {
            violations.push(Violation::NotSimple { edge: e });
            continue;
        }
        let count = line.len() - 1;
        for (i, w) in line.windows(2).enumerate() {
            segments.push((e, i, w[0], w[1]));
        }
        for (&p, &x) in &by_point {
            let hits = line.windows(2).enumerate().any(|(i, w)| {
                on_segment(p, w[0], w[1])
                    && !(i == 0 && p == first && p == w[0])
                    && !(i == count - 1 && p == last && p == w[1])
            });
            if hits {
                violations.push(Violation::ThroughVertex { edge: e, vertex: x });
            }
        }
    }

    let mut meets: BTreeMap<(EdgeId, EdgeId), BTreeSet<RatPoint>> = BTreeMap::new();
    let mut overlaps = BTreeSet::new();
    let mut not_simple = BTreeSet::new();
    for (i, &(e, si, a, b)) in segments.iter().enumerate() {
        for &(f, sj, c, dd) in &segments[i + 1..] {
            let m = intersect(a, b, c, dd);
            if e == f {
                let adjacent = si.abs_diff(sj) == 1;
                let bad = match m {
                    Meet::None => false,
                    Meet::Overlap => true,
                    Meet::Point(p) => !adjacent || {
                        let joint: RatPoint = if sj == si + 1 { b.into() } else { a.into() };
                        p != joint
                    },
                };
                if bad {
                    not_simple.insert(e);
                }
                continue;
            }
            let key = (e.min(f), e.max(f));
            match m {
                Meet::None => {}
                Meet::Overlap => {
                    overlaps.insert(key);
                }
                Meet::Point(p) => {
                    if !vertex_points.contains(&p) {
                        meets.entry(key).or_default().insert(p);
                    }
                }
            }
        }
    }
    for e in not_simple {
        violations.push(Violation::NotSimple { edge: e });
    }
    for (a, b) in overlaps {
        violations.push(Violation::Overlap { a, b });
    }

    let mut at_point: BTreeMap<RatPoint, BTreeSet<EdgeId>> = BTreeMap::new();
    for (&(a, b), pts) in &meets {
        if pts.len() > 1 {
            violations.push(Violation::MultipleMeetings {
                a,
                b,
                points: pts.len(),
            });
        }
        for &p in pts {
            let s = at_point.entry(p).or_default();
            s.insert(a);
            s.insert(b);
        }
    }
    let mut crossings = Vec::new();
    for (p, edges) in at_point {
        if edges.len() > 2 {
            violations.push(Violation::CrowdedPoint {
                point: p,
                edges: edges.into_iter().collect(),
            });
        } else {
            let mut it = edges.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            crossings.push(Crossing {
                point: p,
                edges: (a, b),
            });
        }
    }
    crossings.sort_by_key(|c| (c.edges, c.point));
    let forbidden_crossings: Vec<Crossing> = crossings
        .iter()
        .filter(|c| forbidden.contains(c.edges.0) || forbidden.contains(c.edges.1))
        .cloned()
        .collect();
    let mut declared: Vec<Crossing> = d
        .crossings
        .iter()
        .map(|c| Crossing {
            point: c.point.into(),
            edges: (c.edges.0.min(c.edges.1), c.edges.0.max(c.edges.1)),
        })
        .collect();
    declared.sort_by_key(|c| (c.edges, c.point));
    let k_good = violations.is_empty() && crossings.len() <= k && forbidden_crossings.is_empty();
    ValidationReport {
        crossing_count: crossings.len(),
        declared_matches: declared == crossings,
        crossings,
        violations,
        forbidden_crossings,
        k_good,
    }
}

/// Deterministic SVG rendering; declared crossings are marked in red.
pub fn emit_svg(d: &Drawing) -> String {
    const SCALE: i64 = 40;
    const MARGIN: i64 = 20;
    let all = d
        .vertices
        .values()
        .chain(d.edges.values().flatten())
        .chain(d.crossings.iter().map(|c| &c.point));
    let (mut x0, mut y0, mut x1, mut y1) = (0, 0, 0, 0);
    for (i, p) in all.enumerate() {
        if i == 0 {
            (x0, y0, x1, y1) = (p.x, p.y, p.x, p.y);
        }
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let width = (x1 - x0) * SCALE + 2 * MARGIN;
    let height = (y1 - y0) * SCALE + 2 * MARGIN;
    // SVG's y axis points down.
    let sx = |x: i64| (x - x0) * SCALE + MARGIN;
    let sy = |y: i64| (y1 - y) * SCALE + MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<g class="edges" fill="none" stroke="black" stroke-width="2">"#);
    for (e, line) in &d.edges {
        let pts: Vec<String> = line.iter().map(|p| format!("{},{}", sx(p.x), sy(p.y))).collect();
        let _ = writeln!(out, r#"<polyline id="{e}" points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="vertices" fill="white" stroke="black" stroke-width="2">"#);
    for (v, p) in &d.vertices {
        let _ = writeln!(out, r#"<circle id="{v}" cx="{}" cy="{}" r="6"/>"#, sx(p.x), sy(p.y));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="crossings" fill="red">"#);
    for c in &d.crossings {
        let _ = writeln!(
            out,
            r#"<circle class="crossing" data-edges="{} {}" cx="{}" cy="{}" r="4"/>"#,
            c.edges.0,
            c.edges.1,
            sx(c.point.x),
            sy(c.point.y)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::solver::{crossing_number, decide_k_good, SolveOptions};

    fn line(points: &[(i64, i64)]) -> Vec<Point> {
        points.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn straight(g: &MultiGraph, pos: &[(i64, i64)]) -> Drawing {
        let mut d = Drawing::default();
        for v in g.vertices() {
            let (x, y) = pos[v.0 as usize];
            d.vertices.insert(v, Point::new(x, y));
        }
        for (e, u, v) in g.edges() {
            d.edges.insert(e, vec![d.vertices[&u], d.vertices[&v]]);
        }
        d
    }

    #[test]
    fn two_diagonals_cross_once() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = straight(&g, &[(0, 0), (2, 2), (0, 2), (2, 0)]);
        let r = validate(&g, &EdgeSet::new(), &d, 1);
        assert!(r.is_valid());
        assert_eq!(r.crossing_count, 1);
        assert_eq!(r.crossings[0].point, RatPoint::new(1, 1, 1));
        assert!(r.k_good);
        assert!(!validate(&g, &EdgeSet::all(&g), &d, 1).k_good);
        assert!(!validate(&g, &EdgeSet::new(), &d, 0).k_good);
    }

    #[test]
    fn k4_convex_and_nested() {
        let g = generators::complete(4);
        let convex = straight(&g, &[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(validate(&g, &EdgeSet::new(), &convex, 1).crossing_count, 1);
        let nested = straight(&g, &[(0, 0), (6, 0), (3, 6), (3, 2)]);
        let r = validate(&g, &EdgeSet::new(), &nested, 0);
        assert!(r.is_valid());
        assert_eq!(r.crossing_count, 0);
    }

    #[test]
    fn rule_violations_are_reported() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        // Vertex 2 sits on edge 0–1.
        let d = straight(&g, &[(0, 0), (4, 0), (2, 0)]);
        let r = validate(&g, &EdgeSet::new(), &d, 5);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ThroughVertex { vertex: VertexId(2), .. })));

        // Overlapping parallel edges.
        let g = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let d = straight(&g, &[(0, 0), (4, 0)]);
        let r = validate(&g, &EdgeSet::new(), &d, 5);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Overlap { .. })));

        // Two edges meeting twice.
        let g = MultiGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let mut d = straight(&g, &[(0, 0), (6, 0), (1, -1), (5, -1)]);
        d.edges.insert(EdgeId(1), line(&[(1, -1), (2, 1), (4, 1), (5, -1)]));
        let r = validate(&g, &EdgeSet::new(), &d, 5);
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::MultipleMeetings { points: 2, .. })));

        // Three edges through one point.
        let g = MultiGraph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        let d = straight(&g, &[(0, 0), (2, 2), (0, 2), (2, 0), (1, 0), (1, 2)]);
        let r = validate(&g, &EdgeSet::new(), &d, 5);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::CrowdedPoint { .. })));

        // Self-intersecting polyline.
        let g = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let mut d = straight(&g, &[(0, 0), (4, 0)]);
        d.edges.insert(EdgeId(0), line(&[(0, 0), (2, 2), (2, -2), (1, 1), (4, 0)]));
        let r = validate(&g, &EdgeSet::new(), &d, 5);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotSimple { .. })));
    }

    #[test]
    fn planar_graph_draws_without_crossings() {
        let g = generators::complete(4);
        let r = decide_k_good(&g, &EdgeSet::new(), 0, &SolveOptions::default()).unwrap();
        let d = realize(&g, &r.witness.unwrap()).unwrap();
        let v = validate(&g, &EdgeSet::new(), &d, 0);
        assert!(v.is_valid() && v.k_good && v.declared_matches);
        assert_eq!(v.crossing_count, 0);
    }

    #[test]
    fn k5_and_k6_round_trip() {
        for (g, want) in [(generators::complete(5), 1), (generators::complete(6), 3)] {
            let cn = crossing_number(&g, &SolveOptions::default()).unwrap();
            let d = realize(&g, &cn.witness).unwrap();
            let v = validate(&g, &EdgeSet::new(), &d, want);
            assert!(v.is_valid(), "{:?}", v.violations);
            assert_eq!(v.crossing_count, want);
            assert!(v.declared_matches && v.k_good);
        }
    }

    #[test]
    fn svg_is_deterministic_and_counts_glyphs() {
        let g = generators::complete(5);
        let cn = crossing_number(&g, &SolveOptions::default()).unwrap();
        let d = realize(&g, &cn.witness).unwrap();
        let a = emit_svg(&d);
        assert_eq!(a, emit_svg(&d.clone()));
        assert_eq!(a.matches("<circle id=").count(), 5);
        assert_eq!(a.matches("<polyline").count(), 10);
        assert_eq!(a.matches(r#"class="crossing""#).count(), 1);
        let empty = emit_svg(&Drawing::default());
        assert!(empty.starts_with("<svg") && empty.ends_with("</svg>\n"));
    }
}

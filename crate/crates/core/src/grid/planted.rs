//! Seeded instances with a known flat grid.
//!
//! The base is `H_r` with its identity embedding. Some grid edges are
//! subdivided (their paths grow accordingly), planar attachments are added
//! inside faces, and small non-planar gadgets are glued to single vertices
//! of the outer cycle, where they are not attachments and keep the grid
//! flat.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{hex_grid, GridEmbedding, GridError};
use crate::graph::{EdgeSet, MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gadget {
    K5,
    K33,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planted {
    pub graph: MultiGraph,
    pub forbidden: EdgeSet,
    pub embedding: GridEmbedding,
    pub gadgets: Vec<Gadget>,
}

fn glue(g: &mut MultiGraph, anchor: VertexId, gadget: Gadget) {
    match gadget {
        Gadget::K5 => {
            let mut vs = vec![anchor];
            vs.extend((0..4).map(|_| g.push_vertex()));
            for i in 0..5 {
                for j in i + 1..5 {
                    g.push_edge(vs[i], vs[j]).expect("fresh vertices");
                }
            }
        }
        Gadget::K33 => {
            let left = [anchor, g.push_vertex(), g.push_vertex()];
            let right = [g.push_vertex(), g.push_vertex(), g.push_vertex()];
            for &a in &left {
                for &b in &right {
                    g.push_edge(a, b).expect("fresh vertices");
                }
            }
        }
    }
}

/// Builds a planted instance around `H_r`.
///
/// `forbid` is the probability that an edge lands in `F`.
pub fn planted(seed: u64, r: usize, forbid: f64) -> Result<Planted, GridError> {
    let grid = hex_grid(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = grid.graph.clone();
    let mut h = GridEmbedding::identity(&grid);

    // Subdivide a few grid edges once each.
    let mut grid_edges: Vec<_> = grid.graph.edge_ids().collect();
    grid_edges.shuffle(&mut rng);
    for &e in grid_edges.iter().take(rng.gen_range(0..=4)) {
        let (a, b) = g.remove_edge(e)?;
        let x = g.push_vertex();
        let ea = g.push_edge(a, x)?;
        let eb = g.push_edge(x, b)?;
        h.edge_paths.insert(e, vec![ea, eb]);
    }

    // Planar attachments: triangles on image edges and pendant vertices.
    let image_edges: Vec<_> = g.edge_ids().collect();
    for _ in 0..rng.gen_range(0..=3) {
        let e = *image_edges.choose(&mut rng).expect("grid has edges");
        let (a, b) = g.endpoints(e).expect("edge");
        let t = g.push_vertex();
        g.push_edge(a, t)?;
        g.push_edge(t, b)?;
    }
    let image_vertices: Vec<_> = g.vertices().collect();
    for _ in 0..rng.gen_range(0..=3) {
        let v = *image_vertices.choose(&mut rng).expect("grid has vertices");
        let p = g.push_vertex();
        g.push_edge(v, p)?;
    }

    // Non-planar gadgets on distinct outer-cycle vertices.
    let mut outer = grid.cycles[r - 1].clone();
    outer.shuffle(&mut rng);
    let mut gadgets = Vec::new();
    for &anchor in outer.iter().take(rng.gen_range(0..=2)) {
        let gadget = if rng.gen_bool(0.5) { Gadget::K5 } else { Gadget::K33 };
        glue(&mut g, anchor, gadget);
        gadgets.push(gadget);
    }

    let forbidden: EdgeSet = g.edge_ids().filter(|_| rng.gen_bool(forbid)).collect();
    Ok(Planted {
        graph: g,
        forbidden,
        embedding: h,
        gadgets,
    })
}

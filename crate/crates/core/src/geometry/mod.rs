//! Rank-3 opposition geometries inside `PG(3, q)` and their simple-connectedness
//! checks.

pub mod case1;
pub mod case2;
pub mod pg3;
pub mod rank2;
pub mod verify;

use std::collections::VecDeque;

use serde::Serialize;

pub use case1::{build_case1, find_case1_involution, SemilinearInvolution};
pub use case2::{build_case2, default_pairing, Pairing};
pub use pg3::Pg3;
pub use rank2::{build_rank2_bipartite, BipartiteGraph};
pub use verify::{verify_geometry, GeometryReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    /// Points and planes of `PG(3, q)`, lines not fixed by a semilinear involution.
    Case1,
    /// Objects of `PG(3, q)` in general position to a line `L`, with a pairing of
    /// the points of `L` with the planes on `L`.
    Case2,
}

/// A point-line-plane geometry carved out of `PG(3, q)`. Point-line and line-plane
/// incidence is containment; point-plane incidence is given by `pp_inc`.
#[derive(Clone, Debug)]
pub struct OppGeometry {
    pub kind: GeometryKind,
    pub pg: Pg3,
    pub point_ok: Vec<bool>,
    pub line_ok: Vec<bool>,
    pub plane_ok: Vec<bool>,
    pp_inc: Vec<bool>,
}

impl OppGeometry {
    fn new(kind: GeometryKind, pg: Pg3, point_ok: Vec<bool>, line_ok: Vec<bool>, plane_ok: Vec<bool>) -> Self {
        let pp_inc = vec![false; pg.planes.len() * pg.points.len()];
        OppGeometry { kind, pg, point_ok, line_ok, plane_ok, pp_inc }
    }

    fn set_incident(&mut self, p: usize, pi: usize, v: bool) {
        let np = self.pg.points.len();
        self.pp_inc[pi * np + p] = v;
    }

    pub fn q(&self) -> u32 {
        self.pg.q
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.point_ok.len()).filter(|&p| self.point_ok[p]).collect()
    }

    pub fn lines(&self) -> Vec<usize> {
        (0..self.line_ok.len()).filter(|&l| self.line_ok[l]).collect()
    }

    pub fn planes(&self) -> Vec<usize> {
        (0..self.plane_ok.len()).filter(|&p| self.plane_ok[p]).collect()
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.points().len(), self.lines().len(), self.planes().len())
    }

    pub fn point_line(&self, p: usize, l: usize) -> bool {
        self.point_ok[p] && self.line_ok[l] && self.pg.on_line(p, l)
    }

    pub fn line_plane(&self, l: usize, pi: usize) -> bool {
        self.line_ok[l] && self.plane_ok[pi] && self.pg.line_in_plane(l, pi)
    }

    pub fn point_plane(&self, p: usize, pi: usize) -> bool {
        self.pp_inc[pi * self.pg.points.len() + p]
    }

    pub fn collinear(&self, a: usize, b: usize) -> bool {
        a != b && self.point_ok[a] && self.point_ok[b] && self.line_ok[self.pg.line(a, b)]
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let pts = self.points();
        let mut adj = vec![Vec::new(); self.pg.points.len()];
        for &a in &pts {
            adj[a] = pts.iter().copied().filter(|&b| self.collinear(a, b)).collect();
        }
        adj
    }

    /// Edges of the collinearity graph, `a < b`.
    pub fn collinearity_edges(&self) -> Vec<(usize, usize)> {
        let adj = self.neighbours();
        let mut out = Vec::new();
        for (a, ns) in adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Diameter of the collinearity graph, `None` if disconnected.
    pub fn collinearity_diameter(&self) -> Option<usize> {
        let adj = self.neighbours();
        let pts = self.points();
        let mut diam = 0;
        for &s in &pts {
            let mut dist = vec![usize::MAX; adj.len()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            for &p in &pts {
                if dist[p] == usize::MAX {
                    return None;
                }
                diam = diam.max(dist[p]);
            }
        }
        Some(diam)
    }

    /// A triangle of pairwise collinear points is geometric when it lies on a line of
    /// the geometry or in a plane of the geometry incident to all three points.
    pub fn is_geometric_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        match self.pg.plane_through(a, b, c) {
            None => true,
            Some(pi) => {
                self.plane_ok[pi] && self.point_plane(a, pi) && self.point_plane(b, pi) && self.point_plane(c, pi)
            }
        }
    }
}

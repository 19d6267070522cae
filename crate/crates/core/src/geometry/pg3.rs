use std::collections::HashMap;

use crate::amalgam::standard_pair::projective_points;
use crate::error::Result;
use crate::field::{Field, FqElem};

/// `PG(3, q)` with points, lines and planes indexed, and the incidence tables needed
/// by the opposition geometries.
#[derive(Clone, Debug)]
pub struct Pg3 {
    pub q: u32,
    pub field: &'static Field,
    pub points: Vec<Vec<FqElem>>,
    point_index: HashMap<Vec<u32>, usize>,
    /// Each line as its sorted point indices.
    pub lines: Vec<Vec<usize>>,
    line_of: Vec<u32>,
    /// Each plane as a normal vector `a`, `π = {v : a·v = 0}`.
    pub planes: Vec<Vec<FqElem>>,
    pub plane_points: Vec<Vec<usize>>,
    in_plane: Vec<bool>,
    pub planes_of_line: Vec<Vec<usize>>,
    pub lines_of_plane: Vec<Vec<usize>>,
}

fn dot(a: &[FqElem], b: &[FqElem]) -> FqElem {
    a.iter().zip(b).fold(a[0].field().zero(), |acc, (x, y)| acc + *x * *y)
}

impl Pg3 {
    pub fn new(q: u32) -> Result<Pg3> {
        let field = Field::of_order(q)?;
        let points = projective_points(field, 4);
        let np = points.len();
        let point_index = points.iter().enumerate().map(|(i, v)| (key(v), i)).collect();
        let mut pg = Pg3 {
            q,
            field,
            points,
            point_index,
            lines: Vec::new(),
            line_of: vec![u32::MAX; np * np],
            planes: projective_points(field, 4),
            plane_points: Vec::new(),
            in_plane: Vec::new(),
            planes_of_line: Vec::new(),
            lines_of_plane: Vec::new(),
        };
        for a in 0..np {
            for b in a + 1..np {
                if pg.line_of[a * np + b] != u32::MAX {
                    continue;
                }
                let mut pts: Vec<usize> = pg.span2(a, b);
                pts.sort_unstable();
                let id = pg.lines.len() as u32;
                for &x in &pts {
                    for &y in &pts {
                        if x != y {
                            pg.line_of[x * np + y] = id;
                        }
                    }
                }
                pg.lines.push(pts);
            }
        }
        pg.plane_points = pg
            .planes
            .iter()
            .map(|a| (0..np).filter(|&p| dot(a, &pg.points[p]).is_zero()).collect())
            .collect();
        pg.in_plane = vec![false; pg.planes.len() * np];
        for (pi, pts) in pg.plane_points.iter().enumerate() {
            for &p in pts {
                pg.in_plane[pi * np + p] = true;
            }
        }
        pg.planes_of_line = vec![Vec::new(); pg.lines.len()];
        pg.lines_of_plane = vec![Vec::new(); pg.planes.len()];
        for l in 0..pg.lines.len() {
            for pi in 0..pg.planes.len() {
                if pg.line_in_plane(l, pi) {
                    pg.planes_of_line[l].push(pi);
                    pg.lines_of_plane[pi].push(l);
                }
            }
        }
        Ok(pg)
    }

    fn span2(&self, a: usize, b: usize) -> Vec<usize> {
        let (u, v) = (&self.points[a], &self.points[b]);
        let mut out = vec![a];
        for c in self.field.elements() {
            let w: Vec<FqElem> = u.iter().zip(v).map(|(x, y)| *x * c + *y).collect();
            out.push(self.point_of(&w).expect("u, v independent"));
        }
        out
    }

    /// Index of the projective point spanned by `v`, if `v ≠ 0`.
    pub fn point_of(&self, v: &[FqElem]) -> Option<usize> {
        let lead = v.iter().find(|x| !x.is_zero())?;
        let inv = lead.inv().unwrap();
        let n: Vec<FqElem> = v.iter().map(|x| *x * inv).collect();
        self.point_index.get(&key(&n)).copied()
    }

    pub fn line(&self, a: usize, b: usize) -> usize {
        assert_ne!(a, b);
        self.line_of[a * self.points.len() + b] as usize
    }

    pub fn on_line(&self, p: usize, l: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }

    pub fn in_plane(&self, p: usize, pi: usize) -> bool {
        self.in_plane[pi * self.points.len() + p]
    }

    pub fn line_in_plane(&self, l: usize, pi: usize) -> bool {
        self.in_plane(self.lines[l][0], pi) && self.in_plane(self.lines[l][1], pi)
    }

    /// The plane through three non-collinear points.
    pub fn plane_through(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        let l = self.line(a, b);
        if self.on_line(c, l) {
            return None;
        }
        self.planes_of_line[l].iter().copied().find(|&pi| self.in_plane(c, pi))
    }

    /// The plane spanned by a line and a point off it.
    pub fn plane_on(&self, l: usize, p: usize) -> Option<usize> {
        if self.on_line(p, l) {
            return None;
        }
        self.planes_of_line[l].iter().copied().find(|&pi| self.in_plane(p, pi))
    }

    /// The common point of two coplanar distinct lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Option<usize> {
        self.lines[l1].iter().copied().find(|&p| self.on_line(p, l2))
    }
}

fn key(v: &[FqElem]) -> Vec<u32> {
    v.iter().map(|x| x.value()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for q in [2u32, 3, 4, 5] {
            let pg = Pg3::new(q).unwrap();
            let np = (q.pow(4) - 1) / (q - 1);
            assert_eq!(pg.points.len() as u32, np);
            assert_eq!(pg.planes.len() as u32, np);
            assert_eq!(pg.lines.len() as u32, (q * q + 1) * (q * q + q + 1));
            assert!(pg.lines.iter().all(|l| l.len() as u32 == q + 1));
            assert!(pg.planes_of_line.iter().all(|p| p.len() as u32 == q + 1));
            assert!(pg.lines_of_plane.iter().all(|l| l.len() as u32 == q * q + q + 1));
        }
    }
}

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{GeometryKind, OppGeometry};

/// Outcome of the simple-connectedness checks on one geometry.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeometryReport {
    pub q: u32,
    pub points: usize,
    pub lines: usize,
    pub planes: usize,
    pub diameter: Option<usize>,
    /// Every good line has exactly one point not incident to any plane it lies in,
    /// counted over all incident line-plane pairs.
    pub line_plane_defects: usize,
    /// Pairs (point, good line off it) where the point is not collinear to exactly
    /// one point of the line (Case 2) or to more than one (Case 1).
    pub point_line_defects: usize,
    pub triangles: usize,
    pub triangles_nongeometric: usize,
    pub triangle_construction_failures: usize,
    pub triangle_undecomposable: usize,
    pub triangle_witness: Option<[usize; 3]>,
    pub quadrangles: usize,
    pub quadrangle_failures: usize,
    pub pentagons: usize,
    pub pentagon_failures: usize,
    pub moves_point_plane_point: (usize, usize),
    pub moves_point_plane_line: (usize, usize),
    pub moves_line_plane_line: (usize, usize),
}

impl GeometryReport {
    pub fn ok(&self) -> bool {
        self.diameter == Some(2)
            && self.line_plane_defects == 0
            && self.point_line_defects == 0
            && self.triangle_undecomposable == 0
            && self.triangle_construction_failures == 0
            && self.quadrangle_failures == 0
            && self.pentagon_failures == 0
            && self.moves_point_plane_point.1 == 0
            && self.moves_point_plane_line.1 == 0
            && self.moves_line_plane_line.1 == 0
    }
}

/// Run every check. Triangles and path moves are enumerated exhaustively;
/// quadrangles and pentagons are sampled, `samples` of each.
pub fn verify_geometry(g: &OppGeometry, samples: usize, seed: u64) -> GeometryReport {
    let (points, lines, planes) = g.counts();
    let mut r = GeometryReport { q: g.q(), points, lines, planes, diameter: g.collinearity_diameter(), ..Default::default() };
    let adj = g.neighbours();
    line_plane_counts(g, &mut r);
    point_line_counts(g, &mut r);
    triangles(g, &adj, &mut r);
    cycles(g, &adj, samples, seed, &mut r);
    moves(g, &mut r);
    r
}

fn line_plane_counts(g: &OppGeometry, r: &mut GeometryReport) {
    for l in g.lines() {
        for &pi in &g.pg.planes_of_line[l] {
            if g.plane_ok[pi] {
                let off = g.pg.lines[l].iter().filter(|&&p| !g.point_plane(p, pi)).count();
                r.line_plane_defects += usize::from(off != 1);
            }
        }
    }
}

fn point_line_counts(g: &OppGeometry, r: &mut GeometryReport) {
    let lines = g.lines();
    r.point_line_defects = g
        .points()
        .par_iter()
        .map(|&p| {
            lines
                .iter()
                .filter(|&&l| !g.pg.on_line(p, l))
                .filter(|&&l| {
                    let missed = g.pg.lines[l].iter().filter(|&&x| !g.collinear(p, x)).count();
                    match g.kind {
                        GeometryKind::Case1 => missed > 1,
                        GeometryKind::Case2 => missed != 1,
                    }
                })
                .count()
        })
        .sum();
}

/// The auxiliary point of the decomposition: collinear to all three and forming a
/// geometric triangle with each pair.
fn good_apex(g: &OppGeometry, t: [usize; 3], p: usize) -> bool {
    if t.contains(&p) || !g.point_ok[p] || !t.iter().all(|&x| g.collinear(p, x)) {
        return false;
    }
    g.is_geometric_triangle(p, t[0], t[1]) && g.is_geometric_triangle(p, t[0], t[2]) && g.is_geometric_triangle(p, t[1], t[2])
}

/// With `p1` not incident to `⟨p1, p2, p3⟩`: choose a plane `π'` on `⟨p2, p3⟩`
/// incident to `p2, p3`, lines of `π'` through `p2` and `p3` whose span with `p1` is
/// incident to their point, and try their intersections as the apex.
fn construction(g: &OppGeometry, p1: usize, p2: usize, p3: usize) -> bool {
    let pg = &g.pg;
    let base = pg.line(p2, p3);
    for &pi2 in &pg.planes_of_line[base] {
        if !g.plane_ok[pi2] || !g.point_plane(p2, pi2) || !g.point_plane(p3, pi2) {
            continue;
        }
        let through = |pi: usize| -> Vec<usize> {
            pg.lines_of_plane[pi2]
                .iter()
                .copied()
                .filter(|&l| l != base && g.line_ok[l] && pg.on_line(pi, l))
                .filter(|&l| {
                    let sigma = pg.plane_on(l, p1).unwrap_or(pi2);
                    g.plane_ok[sigma] && g.point_plane(pi, sigma)
                })
                .collect()
        };
        let (l2s, l3s) = (through(p2), through(p3));
        for &a in &l2s {
            for &b in &l3s {
                if let Some(p) = pg.meet(a, b) {
                    if good_apex(g, [p1, p2, p3], p) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn triangles(g: &OppGeometry, adj: &[Vec<usize>], r: &mut GeometryReport) {
    let pts = g.points();
    let per: Vec<(usize, usize, usize, usize, Option<[usize; 3]>)> = pts
        .par_iter()
        .map(|&a| {
            let (mut total, mut nongeo, mut cfail, mut undec, mut wit) = (0, 0, 0, 0, None);
            for &b in adj[a].iter().filter(|&&b| b > a) {
                for &c in adj[b].iter().filter(|&&c| c > b) {
                    if !g.collinear(a, c) {
                        continue;
                    }
                    total += 1;
                    if g.is_geometric_triangle(a, b, c) {
                        continue;
                    }
                    nongeo += 1;
                    let pi = g.pg.plane_through(a, b, c).unwrap();
                    let t = [a, b, c];
                    let ok = (0..3).filter(|&i| !g.point_plane(t[i], pi) || !g.plane_ok[pi]).any(|i| {
                        construction(g, t[i], t[(i + 1) % 3], t[(i + 2) % 3])
                    });
                    if !ok {
                        cfail += 1;
                        if !pts.iter().any(|&p| good_apex(g, t, p)) {
                            undec += 1;
                            wit.get_or_insert(t);
                        }
                    }
                }
            }
            (total, nongeo, cfail, undec, wit)
        })
        .collect();
    for (t, n, c, u, w) in per {
        r.triangles += t;
        r.triangles_nongeometric += n;
        r.triangle_construction_failures += c;
        r.triangle_undecomposable += u;
        if r.triangle_witness.is_none() {
            r.triangle_witness = w;
        }
    }
}

fn cycles(g: &OppGeometry, adj: &[Vec<usize>], samples: usize, seed: u64, r: &mut GeometryReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = g.points();
    let common = |x: usize, y: usize, avoid: &[usize]| -> Vec<usize> {
        adj[x].iter().copied().filter(|&z| g.collinear(z, y) && !avoid.contains(&z)).collect()
    };
    let mut tries = 0;
    while (r.quadrangles < samples || r.pentagons < samples) && tries < 100 * samples {
        tries += 1;
        let p1 = *pts.choose(&mut rng).unwrap();
        let p2 = *adj[p1].choose(&mut rng).unwrap();
        let p3 = *adj[p2].iter().filter(|&&x| x != p1).collect::<Vec<_>>().choose(&mut rng).unwrap().to_owned();
        if rng.gen_bool(0.5) && r.quadrangles < samples {
            let c = common(p3, p1, &[p2]);
            let Some(&p4) = c.choose(&mut rng) else { continue };
            r.quadrangles += 1;
            let l = g.pg.line(p2, p3);
            let ok = g.pg.lines[l].iter().any(|&x| g.point_ok[x] && g.collinear(x, p1) && g.collinear(x, p4));
            r.quadrangle_failures += usize::from(!ok);
        } else if r.pentagons < samples {
            let p4 = *adj[p3].choose(&mut rng).unwrap();
            if [p1, p2].contains(&p4) {
                continue;
            }
            let c = common(p4, p1, &[p2, p3]);
            if c.choose(&mut rng).is_none() {
                continue;
            }
            r.pentagons += 1;
            let l = g.pg.line(p3, p4);
            let ok = g.pg.lines[l].iter().any(|&x| g.point_ok[x] && g.collinear(x, p1));
            r.pentagon_failures += usize::from(!ok);
        }
    }
}

fn moves(g: &OppGeometry, r: &mut GeometryReport) {
    let pg = &g.pg;
    for pi in g.planes() {
        let ps: Vec<usize> = pg.plane_points[pi].iter().copied().filter(|&p| g.point_ok[p] && g.point_plane(p, pi)).collect();
        let ls: Vec<usize> = pg.lines_of_plane[pi].iter().copied().filter(|&l| g.line_ok[l]).collect();
        let good = |a: usize, b: usize| a == b || g.line_ok[pg.line(a, b)];
        for (i, &a) in ps.iter().enumerate() {
            for &b in &ps[i + 1..] {
                let ok = good(a, b) || ps.iter().any(|&c| c != a && c != b && good(a, c) && good(c, b));
                r.moves_point_plane_point.0 += 1;
                r.moves_point_plane_point.1 += usize::from(!ok);
            }
            for &l in ls.iter().filter(|&&l| !pg.on_line(a, l)) {
                let ok = pg.lines[l].iter().any(|&x| ps.contains(&x) && good(a, x));
                r.moves_point_plane_line.0 += 1;
                r.moves_point_plane_line.1 += usize::from(!ok);
            }
        }
        for (i, &l1) in ls.iter().enumerate() {
            for &l2 in &ls[i + 1..] {
                let on1: Vec<usize> = pg.lines[l1].iter().copied().filter(|x| ps.contains(x)).collect();
                let on2: Vec<usize> = pg.lines[l2].iter().copied().filter(|x| ps.contains(x)).collect();
                let ok = on1.iter().any(|&a| on2.iter().any(|&b| good(a, b)));
                r.moves_line_plane_line.0 += 1;
                r.moves_line_plane_line.1 += usize::from(!ok);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::*;

    #[test]
    fn case1_q5() {
        let pg = Pg3::new(5).unwrap();
        let phi = find_case1_involution(&pg).unwrap();
        let g = build_case1(pg, &phi).unwrap();
        let r = verify_geometry(&g, 1000, 7);
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn case2_q5() {
        let pg = Pg3::new(5).unwrap();
        let g = build_case2(pg.clone(), &default_pairing(&pg)).unwrap();
        let r = verify_geometry(&g, 1000, 7);
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn q3_is_too_small() {
        let pg = Pg3::new(3).unwrap();
        let g = build_case2(pg.clone(), &default_pairing(&pg)).unwrap();
        let r = verify_geometry(&g, 200, 1);
        assert_eq!(r.diameter, Some(2));
        assert!(r.triangle_undecomposable > 0 && r.triangle_witness.is_some());
    }
}

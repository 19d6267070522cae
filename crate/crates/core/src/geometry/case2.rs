use crate::error::{Error, Result};
use crate::geometry::{GeometryKind, OppGeometry, Pg3};

/// A bijection between the points of `L` and the planes through `L`, as
/// `(point, plane)` index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub line: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// `L = ⟨e1, e2⟩` paired by `p ↦ p^⊥` for the symplectic form
/// `u1 v3 - u3 v1 + u2 v4 - u4 v2`, for which `L` is totally isotropic.
pub fn default_pairing(pg: &Pg3) -> Pairing {
    let f = pg.field;
    let (z, o) = (f.zero(), f.one());
    let line = pg.line(pg.point_of(&[o, z, z, z]).unwrap(), pg.point_of(&[z, o, z, z]).unwrap());
    let pairs = pg.lines[line]
        .iter()
        .map(|&p| {
            let v = &pg.points[p];
            let normal = [z, z, v[0], v[1]];
            let pi = pg.planes.iter().position(|a| same_point(pg, a, &normal)).unwrap();
            (p, pi)
        })
        .collect();
    Pairing { line, pairs }
}

fn same_point(pg: &Pg3, a: &[crate::FqElem], b: &[crate::FqElem]) -> bool {
    pg.point_of(a) == pg.point_of(b)
}

impl Pairing {
    pub fn validate(&self, pg: &Pg3) -> Result<()> {
        let pts = &pg.lines[self.line];
        let planes = &pg.planes_of_line[self.line];
        if self.pairs.len() != pts.len() {
            return Err(Error::InvalidPairing(format!("{} pairs for {} points", self.pairs.len(), pts.len())));
        }
        let mut seen_p: Vec<usize> = self.pairs.iter().map(|x| x.0).collect();
        let mut seen_pi: Vec<usize> = self.pairs.iter().map(|x| x.1).collect();
        seen_p.sort_unstable();
        seen_pi.sort_unstable();
        let mut want_pi = planes.clone();
        want_pi.sort_unstable();
        if &seen_p != pts {
            return Err(Error::InvalidPairing("points are not those of L, each once".into()));
        }
        if seen_pi != want_pi {
            return Err(Error::InvalidPairing("planes are not those on L, each once".into()));
        }
        Ok(())
    }

    pub fn partner(&self, p: usize) -> Option<usize> {
        self.pairs.iter().find(|x| x.0 == p).map(|x| x.1)
    }
}

/// Case 2: points off `L`, lines disjoint from `L`, planes not on `L`; a point `p` is
/// incident to a plane `π ∋ p` unless `⟨p, L⟩` is paired with `L ∩ π`.
pub fn build_case2(pg: Pg3, pairing: &Pairing) -> Result<OppGeometry> {
    pairing.validate(&pg)?;
    let l = pairing.line;
    let point_ok: Vec<bool> = (0..pg.points.len()).map(|p| !pg.on_line(p, l)).collect();
    let line_ok = pg.lines.iter().map(|pts| pts.iter().all(|&p| !pg.on_line(p, l))).collect();
    let plane_ok = (0..pg.planes.len()).map(|pi| !pg.line_in_plane(l, pi)).collect();
    let mut g = OppGeometry::new(GeometryKind::Case2, pg, point_ok, line_ok, plane_ok);
    for pi in g.planes() {
        let meet = g.pg.lines[l].iter().copied().find(|&x| g.pg.in_plane(x, pi)).unwrap();
        let paired = pairing.partner(meet).unwrap();
        for k in 0..g.pg.plane_points[pi].len() {
            let p = g.pg.plane_points[pi][k];
            if g.point_ok[p] {
                let span = g.pg.plane_on(l, p).unwrap();
                g.set_incident(p, pi, span != paired);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q5_counts() {
        let pg = Pg3::new(5).unwrap();
        let pairing = default_pairing(&pg);
        let g = build_case2(pg, &pairing).unwrap();
        assert_eq!(g.counts(), (150, 625, 150));
    }

    #[test]
    fn bad_pairing_rejected() {
        let pg = Pg3::new(3).unwrap();
        let mut pairing = default_pairing(&pg);
        pairing.pairs[1].1 = pairing.pairs[0].1;
        assert!(matches!(build_case2(pg, &pairing), Err(Error::InvalidPairing(_))));
    }
}

use crate::error::{Error, Result};
use crate::field::{FieldAut, FqElem};
use crate::geometry::{GeometryKind, OppGeometry, Pg3};

/// `v ↦ M v^c` on `GF(q)^4`, with `c² = 1` and `M M^c` scalar, so that it induces an
/// involution of `PG(3, q)`.
#[derive(Clone, Debug)]
pub struct SemilinearInvolution {
    pub matrix: Vec<Vec<FqElem>>,
    pub aut: FieldAut,
}

fn mat_mul(a: &[Vec<FqElem>], b: &[Vec<FqElem>]) -> Vec<Vec<FqElem>> {
    let n = a.len();
    let z = a[0][0].field().zero();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(z, |acc, k| acc + a[i][k] * b[k][j])).collect())
        .collect()
}

fn scalar_of(m: &[Vec<FqElem>]) -> Option<FqElem> {
    let c = m[0][0];
    let ok = m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| if i == j { *x == c } else { x.is_zero() })
    });
    (ok && !c.is_zero()).then_some(c)
}

impl SemilinearInvolution {
    pub fn new(matrix: Vec<Vec<FqElem>>, aut: FieldAut) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("matrix must be square".into()));
        }
        if !aut.pow(2).is_identity() {
            return Err(Error::NoInvolution("field automorphism has order > 2".into()));
        }
        let mc: Vec<Vec<FqElem>> = matrix.iter().map(|r| r.iter().map(|x| aut.apply(*x)).collect()).collect();
        if scalar_of(&mat_mul(&matrix, &mc)).is_none() {
            return Err(Error::NoInvolution("M M^c is not a nonzero scalar".into()));
        }
        Ok(SemilinearInvolution { matrix, aut })
    }

    pub fn apply(&self, v: &[FqElem]) -> Vec<FqElem> {
        let z = v[0].field().zero();
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).fold(z, |acc, (m, x)| acc + *m * self.aut.apply(*x)))
            .collect()
    }

    /// Action on the points of `pg`.
    pub fn on_points(&self, pg: &Pg3) -> Vec<usize> {
        pg.points.iter().map(|v| pg.point_of(&self.apply(v)).expect("invertible")).collect()
    }
}

/// Search for a fixed-point-free semilinear involution of `PG(3, q)`.
///
/// The candidates are `N ⊕ N` for `2 × 2` matrices `N`, scanned in a fixed order for
/// every field automorphism of order at most 2; the first one without fixed points
/// is returned. Such involutions exist exactly when `q` is odd.
pub fn find_case1_involution(pg: &Pg3) -> Result<SemilinearInvolution> {
    let f = pg.field;
    if pg.q % 2 == 0 {
        return Err(Error::NoInvolution(format!(
            "q = {} is even: every semilinear involution of PG(3, q) fixes a point",
            pg.q
        )));
    }
    let elems: Vec<FqElem> = f.elements().collect();
    let auts = (0..f.degree() as i64).map(|e| FieldAut::new(f, e)).filter(|a| a.pow(2).is_identity());
    for aut in auts {
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        let n = [[*a, *b], [*c, *d]];
                        let z = f.zero();
                        let m = vec![
                            vec![n[0][0], n[0][1], z, z],
                            vec![n[1][0], n[1][1], z, z],
                            vec![z, z, n[0][0], n[0][1]],
                            vec![z, z, n[1][0], n[1][1]],
                        ];
                        let Ok(phi) = SemilinearInvolution::new(m, aut.clone()) else { continue };
                        if fixed_point(pg, &phi).is_none() {
                            return Ok(phi);
                        }
                    }
                }
            }
        }
    }
    Err(Error::NoInvolution(format!("search over GF({}) found no candidate", pg.q)))
}

fn fixed_point(pg: &Pg3, phi: &SemilinearInvolution) -> Option<usize> {
    phi.on_points(pg).iter().enumerate().find(|(p, img)| p == *img).map(|(p, _)| p)
}

/// Case 1: all points and planes, the lines not fixed by `φ`; a point is incident to
/// a plane `π` when it lies in `π` but not in `π^φ`.
pub fn build_case1(pg: Pg3, phi: &SemilinearInvolution) -> Result<OppGeometry> {
    if let Some(p) = fixed_point(&pg, phi) {
        return Err(Error::FixedPointFound { witness: pg.points[p].iter().map(|x| x.value()).collect() });
    }
    let img = phi.on_points(&pg);
    let np = pg.points.len();
    let line_ok = pg.lines.iter().map(|l| !l.iter().all(|p| l.binary_search(&img[*p]).is_ok())).collect();
    let mut g = OppGeometry::new(GeometryKind::Case1, pg, vec![true; np], line_ok, Vec::new());
    g.plane_ok = vec![true; g.pg.planes.len()];
    for pi in 0..g.pg.planes.len() {
        for k in 0..g.pg.plane_points[pi].len() {
            let p = g.pg.plane_points[pi][k];
            // p ⊂ π^φ iff φ(p) ⊂ π
            let inc = !g.pg.in_plane(img[p], pi);
            g.set_incident(p, pi, inc);
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
        let phi = find_case1_involution(&pg).unwrap();
        let g = build_case1(pg, &phi).unwrap();
        assert_eq!(g.counts(), (156, 806 - 26, 156));
        for pi in g.planes() {
            let bad = g.pg.lines_of_plane[pi].iter().filter(|&&l| !g.line_ok[l]).count();
            assert_eq!(bad, 1);
            assert_eq!(g.points().iter().filter(|&&p| g.point_plane(p, pi)).count(), 25);
        }
    }

    #[test]
    fn even_q_has_no_involution() {
        let pg = Pg3::new(4).unwrap();
        assert!(matches!(find_case1_involution(&pg), Err(Error::NoInvolution(_))));
    }

    #[test]
    fn fixed_points_rejected() {
        let pg = Pg3::new(3).unwrap();
        let f = pg.field;
        let id = (0..4).map(|i| (0..4).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect();
        let phi = SemilinearInvolution::new(id, FieldAut::identity(f)).unwrap();
        assert!(matches!(build_case1(pg, &phi), Err(Error::FixedPointFound { .. })));
    }
}

//! Standard pairs in `SL_3(k)` and the tori `D_i`, by direct enumeration.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{CTAmalgam, FMat, Sl2};
use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::matrix::RingMatrix;

/// Decompositions `V = U_i ⊕ V_i` certifying a standard pair. Lines are given by a
/// spanning vector, planes by a normal vector `a` with `V_i = {v : a·v = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardPairWitness {
    pub u1: Vec<FqElem>,
    pub v1_normal: Vec<FqElem>,
    pub u2: Vec<FqElem>,
    pub v2_normal: Vec<FqElem>,
}

/// Projective points of `k^3`, first nonzero coordinate 1, in lexicographic order.
pub fn projective_points(f: &'static Field, dim: usize) -> Vec<Vec<FqElem>> {
    let q = f.order() as usize;
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        for k in 0..q.pow(free as u32) {
            let mut v = vec![f.zero(); dim];
            v[lead] = f.one();
            let mut r = k;
            for slot in v.iter_mut().skip(lead + 1).rev() {
                *slot = f.elem((r % q) as u32);
                r /= q;
            }
            out.push(v);
        }
    }
    out
}

fn mat_vec(m: &FMat, v: &[FqElem]) -> Vec<FqElem> {
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(v[0].field().zero(), |acc, j| acc + *m.get(i, j) * v[j]))
        .collect()
}

fn dot(a: &[FqElem], b: &[FqElem]) -> FqElem {
    a.iter().zip(b).fold(a[0].field().zero(), |acc, (x, y)| acc + *x * *y)
}

fn proportional(a: &[FqElem], b: &[FqElem]) -> bool {
    // 2x2 minors vanish
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// Points fixed vector-wise by every generator.
fn fixed_points(gens: &[FMat], pts: &[Vec<FqElem>]) -> Vec<Vec<FqElem>> {
    pts.iter().filter(|v| gens.iter().all(|g| mat_vec(g, v) == **v)).cloned().collect()
}

/// Planes (by normal vector) mapped to themselves by every generator.
fn invariant_planes(gens: &[FMat], pts: &[Vec<FqElem>]) -> Vec<Vec<FqElem>> {
    let gt: Vec<FMat> = gens.iter().map(|g| g.transpose()).collect();
    pts.iter()
        .filter(|a| gt.iter().all(|g| proportional(&mat_vec(g, a), a)))
        .cloned()
        .collect()
}

/// Find `U_i, V_i` with `S_i` fixing `U_i` pointwise, preserving `V_i`, and
/// `U_1 ⊆ V_2`, `U_2 ⊆ V_1`.
pub fn check_standard_pair(s1: &[FMat], s2: &[FMat]) -> Result<StandardPairWitness> {
    let g0 = s1.first().or(s2.first()).ok_or_else(|| Error::NotStandardPair("empty generator set".into()))?;
    if g0.rows() != 3 || [s1, s2].iter().flat_map(|s| s.iter()).any(|g| g.rows() != 3 || !g.is_square()) {
        return Err(Error::NotStandardPair("generators must be 3x3".into()));
    }
    let f = g0.get(0, 0).field();
    let pts = projective_points(f, 3);
    let (fix1, inv1) = (fixed_points(s1, &pts), invariant_planes(s1, &pts));
    let (fix2, inv2) = (fixed_points(s2, &pts), invariant_planes(s2, &pts));
    for u1 in &fix1 {
        for v1 in inv1.iter().filter(|a| !dot(a, u1).is_zero()) {
            for u2 in fix2.iter().filter(|u| dot(v1, u).is_zero()) {
                for v2 in inv2.iter().filter(|a| !dot(a, u2).is_zero() && dot(a, u1).is_zero()) {
                    return Ok(StandardPairWitness {
                        u1: u1.clone(),
                        v1_normal: v1.clone(),
                        u2: u2.clone(),
                        v2_normal: v2.clone(),
                    });
                }
            }
        }
    }
    Err(Error::NotStandardPair(format!(
        "{} fixed lines / {} invariant planes for S1, {} / {} for S2",
        fix1.len(),
        inv1.len(),
        fix2.len(),
        inv2.len()
    )))
}

/// All elements of the group generated by `gens`, in breadth-first order.
pub fn group_closure(gens: &[FMat]) -> Vec<FMat> {
    let id = gens[0].identity_like();
    let mut seen: HashSet<FMat> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}

/// `D_i = N_{⟨S1,S2⟩}(S2) ∩ S1`, computed by enumerating `S1`.
#[derive(Clone, Debug, Serialize)]
pub struct Torus {
    pub elements: Vec<FMat>,
    pub order: usize,
    pub diagonal: bool,
}

pub fn compute_torus_di(s1: &[FMat], s2: &[FMat]) -> Result<Torus> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::InvalidParameters("empty generator set".into()));
    }
    let group1 = group_closure(s1);
    let group2: HashSet<FMat> = group_closure(s2).into_iter().collect();
    let elements: Vec<FMat> = group1
        .into_iter()
        .filter(|h| {
            let hi = h.inverse().expect("group elements are invertible");
            s2.iter().all(|g| group2.contains(&h.mul(g).mul(&hi)))
        })
        .collect();
    let diagonal = elements
        .iter()
        .all(|h| (0..h.rows()).all(|i| (0..h.cols()).all(|j| i == j || h.get(i, j).is_zero())));
    Ok(Torus { order: elements.len(), elements, diagonal })
}

/// `⟨D_i, D_j⟩`: its order and whether it is abelian.
pub fn joint_torus(di: &Torus, dj: &Torus) -> (usize, bool) {
    let mut gens = di.elements.clone();
    gens.extend(dj.elements.iter().cloned());
    let g = group_closure(&gens);
    let abelian = gens.iter().all(|a| gens.iter().all(|b| a.mul(b) == b.mul(a)));
    (g.len(), abelian)
}

/// Generator images of `G_i` and `G_j` inside `G_{i,j}`.
pub fn edge_generators(am: &CTAmalgam, i: usize, j: usize) -> Option<(Vec<FMat>, Vec<FMat>)> {
    let gens = super::sl2_generators(am.field);
    let a = gens.iter().map(|g| am.psi(i, j, g)).collect::<Option<Vec<_>>>()?;
    let b = gens.iter().map(|g| am.psi(j, i, g)).collect::<Option<Vec<_>>>()?;
    Some((a, b))
}

/// The elements of `G_i = SL_2(k)` whose image in `G_{i,j}` normalizes the image of `G_j`.
pub fn torus_pullback(am: &CTAmalgam, i: usize, j: usize) -> Result<Vec<Sl2>> {
    let (_, sj) = edge_generators(am, i, j).ok_or_else(|| Error::InvalidParameters(format!("no edge ({i}, {j})")))?;
    let gj: HashSet<FMat> = group_closure(&sj).into_iter().collect();
    let all = Sl2::all(am.field);
    Ok(all
        .into_iter()
        .filter(|a| {
            let h = am.psi(i, j, a).unwrap();
            let hi = am.psi(i, j, &a.inv()).unwrap();
            sj.iter().all(|g| gj.contains(&h.mul(g).mul(&hi)))
        })
        .collect())
}

/// Identity matrix over `f` of the given size.
pub fn eye(f: &'static Field, n: usize) -> FMat {
    RingMatrix::identity(n, &f.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{build_a_delta, Twist};

    fn block_pair(q: u32) -> (Vec<FMat>, Vec<FMat>) {
        let am = build_a_delta(4, q, Twist::IDENTITY).unwrap();
        edge_generators(&am, 1, 2).unwrap()
    }

    #[test]
    fn block_pair_witness() {
        let (s1, s2) = block_pair(5);
        let w = check_standard_pair(&s1, &s2).unwrap();
        let f = Field::of_order(5).unwrap();
        let (o, z) = (f.one(), f.zero());
        assert_eq!(w.u1, vec![z, z, o]);
        assert_eq!(w.v1_normal, vec![z, z, o]);
        assert_eq!(w.u2, vec![o, z, z]);
        assert_eq!(w.v2_normal, vec![o, z, z]);
        assert!(check_standard_pair(&s1, &s1).is_err());
    }

    #[test]
    fn tori_orders() {
        for q in [4, 5] {
            let (s1, s2) = block_pair(q);
            let d1 = compute_torus_di(&s1, &s2).unwrap();
            let d2 = compute_torus_di(&s2, &s1).unwrap();
            assert_eq!(d1.order as u32, q - 1);
            assert!(d1.diagonal && d2.diagonal);
            let (ord, abelian) = joint_torus(&d1, &d2);
            assert_eq!(ord as u32, (q - 1) * (q - 1));
            assert!(abelian);
        }
    }
}

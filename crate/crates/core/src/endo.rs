//! Endomorphisms of a free module over `R = k{t, t⁻¹}`, their composition rule,
//! and the embedding into `sn × sn` matrices over `A = k[T, T⁻¹]`, `T = t^s`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{gcd, FieldAut, FqElem};
use crate::laurent::LaurentPoly;
use crate::matrix::RingMatrix;
use crate::skew::SkewLaurentPoly;

/// An `n × n` matrix over `k{t, t⁻¹}` read as an element of `End_R(M)`,
/// with `g e_j = Σ_i g_ij e_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct EndoR {
    m: RingMatrix<SkewLaurentPoly>,
}

impl EndoR {
    pub fn new(m: RingMatrix<SkewLaurentPoly>) -> Result<EndoR> {
        if !m.is_square() {
            return Err(Error::SizeMismatch {
                expected: "square".into(),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        let d = m.get(0, 0).delta();
        if m.entries().iter().any(|e| e.delta() != d) {
            return Err(Error::IncompatibleRings("entries over different δ".into()));
        }
        Ok(EndoR { m })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> SkewLaurentPoly) -> EndoR {
        EndoR::new(RingMatrix::from_fn(n, n, f)).expect("entries share δ")
    }

    pub fn identity(n: usize, delta: FieldAut) -> EndoR {
        EndoR { m: RingMatrix::identity(n, &SkewLaurentPoly::one(delta)) }
    }

    /// Embed a matrix over `k` as constant entries.
    pub fn from_constants(m: &RingMatrix<FqElem>, delta: FieldAut) -> EndoR {
        EndoR { m: m.map(|&x| SkewLaurentPoly::constant(delta, x)) }
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn delta(&self) -> FieldAut {
        self.m.get(0, 0).delta()
    }

    pub fn matrix(&self) -> &RingMatrix<SkewLaurentPoly> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &SkewLaurentPoly {
        self.m.get(i, j)
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    /// Matrix of `self ∘ other`; panics on mismatch.
    pub fn compose(&self, other: &EndoR) -> EndoR {
        compose_endo(self, other).expect("compatible endomorphisms")
    }

    /// Apply to a coordinate vector `v = Σ v_j e_j`.
    pub fn apply(&self, v: &[SkewLaurentPoly]) -> Vec<SkewLaurentPoly> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n).fold(SkewLaurentPoly::zero(self.delta()), |acc, j| {
                    &acc + &(&v[j] * self.m.get(i, j))
                })
            })
            .collect()
    }

    /// Apply a field automorphism to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(FqElem) -> FqElem) -> EndoR {
        EndoR { m: self.m.map(|x| x.map_coeffs(&f)) }
    }
}

/// Matrix of `a ∘ b`: `c_ik = Σ_j b_jk · a_ij`.
pub fn compose_endo(a: &EndoR, b: &EndoR) -> Result<EndoR> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch {
            expected: format!("{}x{}", a.size(), a.size()),
            got: format!("{}x{}", b.size(), b.size()),
        });
    }
    if a.delta() != b.delta() {
        return Err(Error::IncompatibleRings(format!("{:?} vs {:?}", a.delta(), b.delta())));
    }
    let n = a.size();
    let zero = SkewLaurentPoly::zero(a.delta());
    let m = RingMatrix::from_fn(n, n, |i, k| {
        let mut acc = zero.clone();
        for j in 0..n {
            let (x, y) = (b.get(j, k), a.get(i, j));
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = &acc + &(x * y);
        }
        acc
    });
    Ok(EndoR { m })
}

/// Matrix of `g` on the `A`-basis `b_{n·i + j} = t^i e_j`, `0 ≤ i < s`, over `A = k[T, T⁻¹]`.
/// `T` is written as the variable of the returned [`LaurentPoly`] entries.
pub fn rho_embed(g: &EndoR, n: usize, s: usize) -> Result<RingMatrix<LaurentPoly>> {
    if g.size() != n {
        return Err(Error::SizeMismatch { expected: format!("{n}x{n}"), got: format!("{}", g.size()) });
    }
    let delta = g.delta();
    if delta.order() as usize != s {
        return Err(Error::InvalidParameters(format!("δ has order {}, not {s}", delta.order())));
    }
    let field = delta.field();
    let size = s * n;
    let mut out = vec![vec![LaurentPoly::zero(field); size]; size];
    for l in 0..s {
        for j in 0..n {
            let col = n * l + j;
            for k in 0..n {
                for (m, x) in g.get(k, j).terms() {
                    // t^l · x t^m = x^{δ^{-l}} t^{l+m}
                    let e = l as i64 + m;
                    let (d, r) = (e.div_euclid(s as i64), e.rem_euclid(s as i64) as usize);
                    let c = delta.pow(-(l as i64)).apply(x);
                    let row = n * r + k;
                    out[row][col] = &out[row][col] + &LaurentPoly::monomial(c, d);
                }
            }
        }
    }
    Ok(RingMatrix::from_fn(size, size, |i, j| out[i][j].clone()))
}

/// Left multiplication by `t` on the basis of [`rho_embed`]: `v ↦ x^n · v^{δ⁻¹}`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaMatrix {
    pub n: usize,
    pub s: usize,
    /// Companion matrix with `x b_u = b_{u+1}` and `x b_{sn-1} = T b_0`.
    pub x: RingMatrix<LaurentPoly>,
    /// Exponent `e` such that coefficients are twisted by `δ^e`.
    pub semilinear_power: i64,
}

impl ThetaMatrix {
    pub fn x_pow_n(&self) -> RingMatrix<LaurentPoly> {
        self.x.pow(self.n as u32)
    }
}

pub fn theta_matrix(field: &'static crate::field::Field, n: usize, s: usize) -> ThetaMatrix {
    let size = n * s;
    let x = RingMatrix::from_fn(size, size, |i, j| {
        if i == j + 1 {
            LaurentPoly::one(field)
        } else if i == 0 && j == size - 1 {
            LaurentPoly::t(field)
        } else {
            LaurentPoly::zero(field)
        }
    });
    ThetaMatrix { n, s, x, semilinear_power: -1 }
}

/// Apply `δ^e` to every coefficient of a matrix over `A`.
pub fn twist_coeffs(g: &RingMatrix<LaurentPoly>, delta: &FieldAut, e: i64) -> RingMatrix<LaurentPoly> {
    let d = delta.pow(e);
    g.map(|p| p.map_coeffs(|c| d.apply(c)))
}

/// `x^n · G^{δ⁻¹} = G · x^n`.
pub fn centralizer_check(g: &RingMatrix<LaurentPoly>, delta: &FieldAut, n: usize, s: usize) -> bool {
    if g.rows() != n * s || !g.is_square() {
        return false;
    }
    let xn = theta_matrix(delta.field(), n, s).x_pow_n();
    xn.mul(&twist_coeffs(g, delta, -1)) == g.mul(&xn)
}

/// `n × n` block `(r, l)` of an `sn × sn` matrix.
pub fn block(g: &RingMatrix<LaurentPoly>, n: usize, r: usize, l: usize) -> RingMatrix<LaurentPoly> {
    g.submatrix(n * r, n * l, n, n)
}

/// Blocks violating the recurrences forced by the centralizer identity:
/// `G_{r+1,l+1} = G_{r,l}^{δ⁻¹}`, `G_{0,l+1} = T·G_{s-1,l}^{δ⁻¹}` and
/// `G_{r+1,0} = T⁻¹·G_{r,s-1}^{δ⁻¹}`. Indices are 0-based block positions.
pub fn block_recurrence_defects(
    g: &RingMatrix<LaurentPoly>,
    delta: &FieldAut,
    n: usize,
    s: usize,
) -> Vec<(usize, usize)> {
    let tw = |b: RingMatrix<LaurentPoly>| twist_coeffs(&b, delta, -1);
    let shift = |b: RingMatrix<LaurentPoly>, e: i64| b.map(|p| p.shift(e));
    let mut bad = Vec::new();
    for r in 0..s {
        for l in 0..s {
            let (r1, l1) = ((r + 1) % s, (l + 1) % s);
            let mut expect = tw(block(g, n, r, l));
            let carry = (r1 == 0) as i64 - (l1 == 0) as i64;
            if carry != 0 {
                expect = shift(expect, carry);
            }
            if block(g, n, r1, l1) != expect {
                bad.push((r1, l1));
            }
        }
    }
    bad
}

/// `det_A(ρ(g))`, a Laurent polynomial in `T`.
pub fn det_r(g: &EndoR) -> Result<LaurentPoly> {
    let s = g.delta().order() as usize;
    Ok(rho_embed(g, g.size(), s)?.det())
}

/// `g ∈ GL_R(M)` iff `det_R(g)` is a unit of `A`.
pub fn is_unit_r(g: &EndoR) -> Result<bool> {
    Ok(det_r(g)?.is_unit())
}

/// `s · n · [(k^δ)* : ((k^δ)*)^{sn}]` for `k = GF(q)`, `q = p^m`, `δ = x ↦ x^{p^f}`.
pub fn index_formula(q: u32, m: u32, frob_power: u32, n: u32) -> Result<u64> {
    let p = (2..=q).find(|&p| p.checked_pow(m) == Some(q));
    let Some(_) = p else {
        return Err(Error::InvalidParameters(format!("{q} is not a {m}-th prime power")));
    };
    let field = crate::field::Field::of_order(q)?;
    if field.degree() != m {
        return Err(Error::InvalidParameters(format!("{q} is not a {m}-th prime power")));
    }
    let delta = FieldAut::new(field, frob_power as i64);
    let s = delta.order();
    let fixed = delta.fixed_field_order();
    Ok(s as u64 * n as u64 * gcd(s * n, fixed - 1) as u64)
}

/// The map `e_j ↦ e_{j+1}`, `e_{n} ↦ t e_1` (0-based: `e_{n-1} ↦ t e_0`).
pub fn shift_endo(n: usize, delta: FieldAut) -> EndoR {
    EndoR::from_fn(n, |i, j| {
        if i == 0 && j == n - 1 {
            SkewLaurentPoly::t(delta)
        } else if i == j + 1 {
            SkewLaurentPoly::one(delta)
        } else {
            SkewLaurentPoly::zero(delta)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_norm, Field};

    fn d4() -> FieldAut {
        FieldAut::new(Field::of_order(4).unwrap(), 1)
    }

    #[test]
    fn theta_x_small() {
        let f = Field::of_order(4).unwrap();
        let th = theta_matrix(f, 1, 2);
        let t = LaurentPoly::t(f);
        let (o, z) = (LaurentPoly::one(f), LaurentPoly::zero(f));
        assert_eq!(th.x, RingMatrix::new(2, 2, vec![z.clone(), t.clone(), o, z]).unwrap());
        let f5 = Field::of_order(5).unwrap();
        let x = theta_matrix(f5, 1, 2).x;
        assert_eq!(x.det(), -LaurentPoly::t(f5));
        // x^{ns} = T·I
        let th = theta_matrix(f, 2, 2);
        assert_eq!(th.x.pow(4), RingMatrix::identity(4, &t));
    }

    #[test]
    fn det_of_x_sign() {
        let f = Field::of_order(5).unwrap();
        for (n, s) in [(1, 2), (2, 2), (3, 1), (2, 3)] {
            let x = theta_matrix(f, n, s).x;
            let sign = if (n * s - 1) % 2 == 0 { 1 } else { -1 };
            assert_eq!(x.det(), LaurentPoly::monomial(f.from_int(sign), 1));
        }
    }

    #[test]
    fn rho_identity_and_scalars() {
        let d = d4();
        assert!(rho_embed(&EndoR::identity(3, d), 3, 2).unwrap().is_identity());
        let lam = d.fixed_field()[1];
        let g = EndoR::from_fn(2, |i, j| {
            if i == j {
                SkewLaurentPoly::constant(d, lam)
            } else {
                SkewLaurentPoly::zero(d)
            }
        });
        let r = rho_embed(&g, 2, 2).unwrap();
        assert_eq!(r, RingMatrix::identity(4, &LaurentPoly::constant(lam)));
    }

    #[test]
    fn det_r_examples() {
        let d = d4();
        let f = d.field();
        for a in f.elements() {
            let g = EndoR::from_fn(3, |i, j| match (i, j) {
                (0, 0) => SkewLaurentPoly::constant(d, a),
                _ if i == j => SkewLaurentPoly::one(d),
                _ => SkewLaurentPoly::zero(d),
            });
            assert_eq!(det_r(&g).unwrap(), LaurentPoly::constant(field_norm(a, &d)));
        }
        assert!(is_unit_r(&shift_endo(3, d)).unwrap());
        let sdet = det_r(&shift_endo(3, d)).unwrap();
        assert_eq!(sdet.as_monomial().unwrap().1, 1);
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_formula(4, 2, 1, 4).unwrap(), 8);
        assert_eq!(index_formula(5, 1, 0, 4).unwrap(), 16);
        assert_eq!(index_formula(7, 1, 0, 1).unwrap(), 1);
        assert!(index_formula(6, 1, 0, 4).is_err());
    }
}

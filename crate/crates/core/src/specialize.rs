//! Specializations `t ↦ a` of the Laurent and skew Laurent groups into finite classical
//! groups and cyclic algebras, plus a linear-span proxy for irreducibility.

use serde::Serialize;

use crate::amalgam::FMat;
use crate::endo::EndoR;
use crate::error::{Error, Result};
use crate::field::{coerce, Field, FieldAut, FqElem};
use crate::form::LMat;
use crate::matrix::RingMatrix;

/// A specialization point `a` in an extension `E` of `k`, with the automorphism
/// `s_a` of `E` that plays the role of `σ` (`s_a(a) = a⁻¹`) when one is known.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpecPoint {
    pub a: FqElem,
    #[serde(skip)]
    pub base: &'static Field,
    #[serde(skip)]
    pub conj: Option<FieldAut>,
}

impl SpecPoint {
    /// `a` in some extension of `base`; `s_a` is searched among `x ↦ x^{q^j}`.
    pub fn new(base: &'static Field, a: FqElem) -> Result<SpecPoint> {
        if a.is_zero() {
            return Err(Error::EvaluateAtZero);
        }
        let e = a.field();
        if e.characteristic() != base.characteristic() || e.degree() % base.degree() != 0 {
            return Err(Error::NoEmbedding { from: base.order(), to: e.order() });
        }
        let ainv = a.inv().unwrap();
        let conj = if a == ainv {
            Some(FieldAut::identity(e))
        } else {
            (1..e.degree() / base.degree())
                .map(|j| FieldAut::new(e, (j * base.degree()) as i64))
                .find(|s| s.apply(a) == ainv && s.order() == 2)
        };
        Ok(SpecPoint { a, base, conj })
    }

    pub fn minus_one(base: &'static Field) -> SpecPoint {
        SpecPoint::new(base, -base.one()).unwrap()
    }

    pub fn one(base: &'static Field) -> SpecPoint {
        SpecPoint::new(base, base.one()).unwrap()
    }

    /// The least element of multiplicative order `q + 1` in `GF(q²)`.
    pub fn zeta(base: &'static Field) -> SpecPoint {
        let q = base.order();
        let e = Field::get(base.characteristic(), 2 * base.degree()).expect("GF(q²) is available");
        let z = e.elements().find(|x| x.order() == Some(q + 1)).expect("GF(q²)* is cyclic of order q²−1");
        SpecPoint::new(base, z).unwrap()
    }

    pub fn field(&self) -> &'static Field {
        self.a.field()
    }

    /// `ε_a` on `k[t, t⁻¹]`.
    pub fn eval(&self, f: &crate::laurent::LaurentPoly) -> Result<FqElem> {
        f.eval(self.a)
    }

    /// `B(a) = [[0, I], [aI, 0]]` over `E`.
    pub fn gram(&self, n: usize) -> FMat {
        let e = self.field();
        RingMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j == i + n {
                e.one()
            } else if i >= n && j + n == i {
                self.a
            } else {
                e.zero()
            }
        })
    }

    /// `ᵗε(g) B(a) ε(g)^{s_a} = B(a)`; `None` without `s_a`.
    pub fn preserves_form(&self, g: &FMat) -> Option<bool> {
        let s = self.conj?;
        let n = g.rows() / 2;
        let b = self.gram(n);
        Some(g.transpose().mul(&b).mul(&g.map(|&x| s.apply(x))) == b)
    }
}

/// `ε_a(g)`, entrywise.
pub fn specialize_matrix(g: &LMat, pt: &SpecPoint) -> Result<FMat> {
    g.try_map(|p| p.eval(pt.a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormKind {
    Alternating,
    Symmetric,
    Hermitian,
    Unclassified,
}

/// Outcome of [`find_rescale_b`]: `f'_i = b f_i` with `b² = ζ`, and the scalar `κ`,
/// `κ^{q-1} = ζ`, that turns the rescaled Gram matrix into a hermitian one.
#[derive(Clone, Debug, Serialize)]
pub struct Rescale {
    pub b: FqElem,
    pub kappa: FqElem,
    pub field_order: u32,
    /// `D = diag(I, bI)`.
    pub d: FMat,
    /// `κ · ᵗD B(ζ) D̄`.
    pub gram: FMat,
    /// Whether `ᵗD B(ζ) D̄` is hermitian without `κ`.
    pub hermitian_without_kappa: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializedForm {
    pub kind: FormKind,
    pub gram: FMat,
    pub rescale: Option<Rescale>,
    pub warnings: Vec<String>,
}

fn conj_transpose(m: &FMat, s: &FieldAut) -> FMat {
    m.transpose().map(|&x| s.apply(x))
}

pub fn classify_specialized_form(pt: &SpecPoint, n: usize) -> SpecializedForm {
    let e = pt.field();
    let gram = pt.gram(n);
    let mut warnings = Vec::new();
    let neg = gram.map(|&x| -x);
    if pt.a == -e.one() && e.characteristic() != 2 {
        let ok = gram.transpose() == neg && (0..2 * n).all(|i| gram.get(i, i).is_zero());
        let kind = if ok { FormKind::Alternating } else { FormKind::Unclassified };
        return SpecializedForm { kind, gram, rescale: None, warnings };
    }
    if pt.a.is_one() {
        if e.characteristic() == 2 {
            warnings.push("characteristic 2: a = −1 = 1, the symmetric and alternating cases coincide".into());
        }
        let kind = if gram.transpose() == gram { FormKind::Symmetric } else { FormKind::Unclassified };
        return SpecializedForm { kind, gram, rescale: None, warnings };
    }
    if let Some(s) = pt.conj.filter(|s| !s.is_identity()) {
        let q = pt.base.order();
        if s.fixed_field_order() == q || pt.a.pow(q as i64 + 1).is_one() {
            if let Ok(r) = find_rescale_b(pt.a, q, n) {
                return SpecializedForm { kind: FormKind::Hermitian, gram: r.gram.clone(), rescale: Some(r), warnings };
            }
        }
        warnings.push(format!("s_a = x ↦ x^{{p^{}}} found but no hermitian rescale", s.frobenius_power()));
    }
    SpecializedForm { kind: FormKind::Unclassified, gram, rescale: None, warnings }
}

fn rescale_in(zeta: FqElem, q: u32, n: usize) -> Option<Rescale> {
    let e = zeta.field();
    let b = e.elements().find(|b| *b * *b == zeta)?;
    let kappa = e.elements().find(|k| !k.is_zero() && k.pow(q as i64 - 1) == zeta)?;
    let pt = SpecPoint { a: zeta, base: e, conj: None };
    // x ↦ x^q
    let bar = FieldAut::new(e, log_p(q, e.characteristic()) as i64);
    let d = RingMatrix::from_fn(2 * n, 2 * n, |i, j| match (i == j, i < n) {
        (true, true) => e.one(),
        (true, false) => b,
        _ => e.zero(),
    });
    let plain = d.transpose().mul(&pt.gram(n)).mul(&d.map(|&x| bar.apply(x)));
    let gram = plain.map(|&x| kappa * x);
    let hermitian_without_kappa = conj_transpose(&plain, &bar) == plain;
    (conj_transpose(&gram, &bar) == gram).then_some(Rescale {
        b,
        kappa,
        field_order: e.order(),
        d,
        gram,
        hermitian_without_kappa,
    })
}

fn log_p(q: u32, p: u32) -> u32 {
    let (mut q, mut m) = (q, 0);
    while q > 1 {
        q /= p;
        m += 1;
    }
    m
}

/// Search `GF(q²)`, then `GF(q⁴)`, for the rescaling; hermitian symmetry is verified.
pub fn find_rescale_b(zeta: FqElem, q: u32, n: usize) -> Result<Rescale> {
    if !zeta.pow(q as i64 + 1).is_one() {
        return Err(Error::InvalidParameters(format!("ζ = {zeta} is not a (q+1)-st root of unity")));
    }
    let p = zeta.field().characteristic();
    let m = log_p(q, p);
    for deg in [2 * m, 4 * m] {
        let e = Field::get(p, deg)?;
        if let Ok(z) = coerce(zeta, e) {
            if let Some(r) = rescale_in(z, q, n) {
                return Ok(r);
            }
        }
    }
    Err(Error::NoRescale)
}

/// Dimension of the span of all words of length `≤ radius` in `gens`.
pub fn algebra_span_dim(gens: &[FMat], radius: usize) -> usize {
    let Some(g0) = gens.first() else { return 0 };
    let mut basis = SpanBasis::default();
    let id = g0.identity_like();
    let mut frontier = vec![id.clone()];
    basis.insert(&id);
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let x = w.mul(g);
                if basis.insert(&x) {
                    next.push(x);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    basis.rows.len()
}

/// Incremental row echelon form over a finite field.
#[derive(Default)]
struct SpanBasis {
    rows: Vec<(usize, Vec<FqElem>)>,
}

impl SpanBasis {
    fn insert(&mut self, m: &FMat) -> bool {
        let mut v: Vec<FqElem> = m.entries().to_vec();
        for (p, r) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = *x - c * *y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = *x * inv;
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[p];
            if !c.is_zero() {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = *x - c * *y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Multiplicative order of `m`, if at most `bound`.
pub fn element_order(m: &FMat, bound: u64) -> Option<u64> {
    let mut x = m.clone();
    for k in 1..=bound {
        if x.is_identity() {
            return Some(k);
        }
        x = x.mul(m);
    }
    None
}

/// `(k/k', δ, a)` in its regular representation: `λ(x) = diag(x, x^δ, …)`, and
/// `λ(u)` the cyclic shift with `a` in the corner.
#[derive(Clone, Debug)]
pub struct CyclicAlgebraRep {
    pub n: usize,
    pub delta: FieldAut,
    pub a: FqElem,
    u: FMat,
    u_inv: FMat,
}

impl CyclicAlgebraRep {
    pub fn new(delta: FieldAut, a: FqElem) -> Result<CyclicAlgebraRep> {
        let n = delta.order() as usize;
        if a.is_zero() || delta.apply(a) != a || a.field() != delta.field() {
            return Err(Error::InvalidParameters(format!("a = {a} must be a nonzero element of k^δ")));
        }
        let f = delta.field();
        let u = RingMatrix::from_fn(n, n, |i, j| {
            if i == 0 && j == n - 1 {
                a
            } else if i == j + 1 {
                f.one()
            } else {
                f.zero()
            }
        });
        let u_inv = u.inverse()?;
        Ok(CyclicAlgebraRep { n, delta, a, u, u_inv })
    }

    pub fn lambda(&self, x: FqElem) -> FMat {
        let f = self.delta.field();
        RingMatrix::from_fn(self.n, self.n, |i, j| if i == j { self.delta.pow(i as i64).apply(x) } else { f.zero() })
    }

    pub fn lambda_u(&self) -> &FMat {
        &self.u
    }

    /// `λ(u)^e` for any integer `e`.
    pub fn u_pow(&self, e: i64) -> FMat {
        let base = if e >= 0 { &self.u } else { &self.u_inv };
        base.pow(e.unsigned_abs() as u32)
    }

    /// `Σ x_m t^m ↦ Σ λ(x_m) λ(u)^m`.
    pub fn eval(&self, p: &crate::skew::SkewLaurentPoly) -> FMat {
        let f = self.delta.field();
        p.terms().fold(RingMatrix::zeros(self.n, self.n, &f.zero()), |acc, (e, c)| {
            acc.try_add(&self.lambda(c).mul(&self.u_pow(e))).unwrap()
        })
    }
}

/// `g ↦` the block matrix with block `(i, k)` equal to `ᵗλ(g_ik)`. The transpose makes
/// the map multiplicative for the composition rule `(a∘b)_ik = Σ_j b_jk a_ij`.
pub fn cyclic_specialize(g: &EndoR, rep: &CyclicAlgebraRep) -> Result<FMat> {
    if g.delta() != rep.delta {
        return Err(Error::IncompatibleRings(format!("{:?} vs {:?}", g.delta(), rep.delta)));
    }
    let (r, n) = (g.size(), rep.n);
    let blocks: Vec<Vec<FMat>> = (0..r).map(|i| (0..r).map(|k| rep.eval(g.get(i, k)).transpose()).collect()).collect();
    Ok(RingMatrix::from_fn(r * n, r * n, |i, j| *blocks[i / n][j / n].get(i % n, j % n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{sl2_generators, Completion, LTau};
    use crate::endo::compose_endo;
    use crate::skew::SkewLaurentPoly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zeta_has_conjugation() {
        let k = Field::of_order(5).unwrap();
        let pt = SpecPoint::zeta(k);
        assert_eq!(pt.field().order(), 25);
        assert_eq!(pt.a.order(), Some(6));
        let s = pt.conj.unwrap();
        assert_eq!(s.apply(pt.a), pt.a.inv().unwrap());
        assert_eq!(s.fixed_field_order(), 5);
    }

    #[test]
    fn ltau_generators_preserve_specialized_forms() {
        for q in [4, 5] {
            let k = Field::of_order(q).unwrap();
            let l = LTau::new(k, 4);
            let pts = [SpecPoint::minus_one(k), SpecPoint::one(k), SpecPoint::zeta(k)];
            for a in sl2_generators(k) {
                for kk in 1..=4 {
                    let g = l.phi(kk, &a);
                    for pt in &pts {
                        let e = specialize_matrix(&g, pt).unwrap();
                        assert_eq!(pt.preserves_form(&e), Some(true), "q={q} a={}", pt.a);
                    }
                }
            }
        }
    }

    #[test]
    fn classification() {
        let k = Field::of_order(5).unwrap();
        assert_eq!(classify_specialized_form(&SpecPoint::minus_one(k), 4).kind, FormKind::Alternating);
        assert_eq!(classify_specialized_form(&SpecPoint::one(k), 4).kind, FormKind::Symmetric);
        let h = classify_specialized_form(&SpecPoint::zeta(k), 4);
        assert_eq!(h.kind, FormKind::Hermitian);
        let r = h.rescale.unwrap();
        assert_eq!(r.b * r.b, SpecPoint::zeta(k).a);
        assert_eq!(r.field_order, 25);
        assert!(!r.hermitian_without_kappa);
        let k4 = Field::of_order(4).unwrap();
        let c = classify_specialized_form(&SpecPoint::minus_one(k4), 2);
        assert_eq!(c.kind, FormKind::Symmetric);
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn rescale_trivial_and_transport() {
        let k = Field::of_order(5).unwrap();
        let r = find_rescale_b(k.one(), 5, 2).unwrap();
        assert!(r.b.is_one() && r.kappa.is_one());
        let pt = SpecPoint::zeta(k);
        let r = find_rescale_b(pt.a, 5, 4).unwrap();
        let s = pt.conj.unwrap();
        let l = LTau::new(k, 4);
        let dinv = r.d.inverse().unwrap();
        for a in sl2_generators(k) {
            let g = specialize_matrix(&l.phi(4, &a), &pt).unwrap();
            let h = dinv.mul(&g).mul(&r.d);
            assert_eq!(h.transpose().mul(&r.gram).mul(&h.map(|&x| s.apply(x))), r.gram);
        }
        assert!(find_rescale_b(pt.field().primitive(), 5, 2).is_err());
    }

    #[test]
    fn span_dims() {
        let k = Field::of_order(5).unwrap();
        let id = RingMatrix::identity(3, &k.one());
        assert_eq!(algebra_span_dim(&[id.clone()], 4), 1);
        let d = RingMatrix::from_fn(3, 3, |i, j| if i == j { k.from_int(i as i64 + 1) } else { k.zero() });
        assert_eq!(algebra_span_dim(&[d.clone()], 1), 2);
        assert_eq!(algebra_span_dim(&[d], 5), 3);
    }

    #[test]
    fn symplectic_image_is_irreducible() {
        let k = Field::of_order(5).unwrap();
        let l = LTau::new(k, 4);
        let pt = SpecPoint::minus_one(k);
        let gens: Vec<FMat> = (1..=4)
            .flat_map(|kk| sl2_generators(k).into_iter().map(move |a| (kk, a)))
            .map(|(kk, a)| specialize_matrix(&l.phi(kk, &a), &pt).unwrap())
            .collect();
        assert_eq!(algebra_span_dim(&gens, 6), 64);
    }

    #[test]
    fn cyclic_algebra_relations() {
        let k = Field::of_order(4).unwrap();
        let delta = FieldAut::new(k, 1);
        let rep = CyclicAlgebraRep::new(delta, k.one()).unwrap();
        assert_eq!(rep.u_pow(2), RingMatrix::identity(2, &k.one()));
        for x in k.elements() {
            assert_eq!(rep.lambda(x).mul(rep.lambda_u()), rep.lambda_u().mul(&rep.lambda(delta.apply(x))));
        }
        let t = EndoR::from_fn(1, |_, _| SkewLaurentPoly::t(delta));
        assert_eq!(cyclic_specialize(&t, &rep).unwrap(), rep.lambda_u().transpose());
        assert!(CyclicAlgebraRep::new(delta, k.primitive()).is_err());
    }

    #[test]
    fn cyclic_specialize_is_multiplicative() {
        let k = Field::of_order(4).unwrap();
        let delta = FieldAut::new(k, 1);
        let rep = CyclicAlgebraRep::new(delta, k.one()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut rand_endo = || {
            EndoR::from_fn(2, |_, _| {
                let c: Vec<_> = (0..2).map(|_| k.elem(rng.gen_range(0..4))).collect();
                SkewLaurentPoly::new(delta, rng.gen_range(-1..=1), &c)
            })
        };
        for _ in 0..30 {
            let (g, h) = (rand_endo(), rand_endo());
            let gh = compose_endo(&g, &h).unwrap();
            let lhs = cyclic_specialize(&gh, &rep).unwrap();
            let rhs = cyclic_specialize(&g, &rep).unwrap().mul(&cyclic_specialize(&h, &rep).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

//! The realization of `𝒜^δ`, `δ ∈ Aut(k)`, inside `GL_R(M)` for `R = k{t, t⁻¹}`, `M = R^n`.

use super::{place_sl2, Completion, Sl2};
use crate::endo::EndoR;
use crate::field::{Field, FieldAut};
use crate::skew::SkewLaurentPoly;

#[derive(Clone, Debug)]
pub struct LDelta {
    pub n: usize,
    pub delta: FieldAut,
    f: EndoR,
    f_inv: EndoR,
}

impl LDelta {
    /// `n ≥ 3` nodes, `δ = x ↦ x^{p^frobenius_power}` on `k = GF(q)`.
    pub fn new(field: &'static Field, n: usize, frobenius_power: i64) -> LDelta {
        assert!(n >= 3, "the cyclic diagram needs n ≥ 3");
        let delta = FieldAut::new(field, frobenius_power);
        let zero = SkewLaurentPoly::zero(delta);
        // F e_1 = t e_n, F e_j = e_{j-1}
        let f = EndoR::from_fn(n, |i, j| match (i, j) {
            (i, 0) if i == n - 1 => SkewLaurentPoly::t(delta),
            (i, j) if j >= 1 && i == j - 1 => SkewLaurentPoly::one(delta),
            _ => zero.clone(),
        });
        let f_inv = EndoR::from_fn(n, |i, j| match (i, j) {
            (0, j) if j == n - 1 => SkewLaurentPoly::monomial(delta, field.one(), -1),
            (i, j) if i == j + 1 => SkewLaurentPoly::one(delta),
            _ => zero.clone(),
        });
        LDelta { n, delta, f, f_inv }
    }

    pub fn f(&self) -> &EndoR {
        &self.f
    }

    pub fn f_inv(&self) -> &EndoR {
        &self.f_inv
    }

    /// `Φ(X) = F⁻¹ ∘ X ∘ F`.
    pub fn big_phi(&self, x: &EndoR) -> EndoR {
        self.f_inv.compose(&x.compose(&self.f))
    }

    fn block(&self, a: &Sl2, at: usize) -> EndoR {
        EndoR::from_constants(&place_sl2(a, at, self.n), self.delta)
    }

    /// The matrices listed for `L_k`, `1 ≤ k ≤ n`: `A` on rows `k, k+1` for `k < n`,
    /// and the wrapped form with `d^{δ⁻¹}`, `c t⁻¹`, `t b`, `a` for `k = n`.
    pub fn printed_phi(&self, k: usize, a: &Sl2) -> EndoR {
        assert!((1..=self.n).contains(&k));
        if k < self.n {
            return self.block(a, k - 1);
        }
        let n = self.n;
        let d = self.delta;
        let di = d.inverse();
        EndoR::from_fn(n, |i, j| match (i, j) {
            (0, 0) => SkewLaurentPoly::constant(d, di.apply(a.d)),
            (0, j) if j == n - 1 => SkewLaurentPoly::monomial(d, a.c, -1),
            (i, 0) if i == n - 1 => SkewLaurentPoly::monomial(d, di.apply(a.b), 1),
            (i, j) if i == n - 1 && j == n - 1 => SkewLaurentPoly::constant(d, a.a),
            (i, j) if i == j => SkewLaurentPoly::one(d),
            _ => SkewLaurentPoly::zero(d),
        })
    }
}

impl Completion for LDelta {
    type Elem = EndoR;

    fn name(&self) -> String {
        format!("L_delta(q={}, n={}, f={})", self.delta.field().order(), self.n, self.delta.frobenius_power())
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn field(&self) -> &'static Field {
        self.delta.field()
    }

    /// `φ_k = Φ^{k-1} ∘ φ_1` with `φ_1(A) = A ⊕ I_{n-2}`.
    fn phi(&self, k: usize, a: &Sl2) -> EndoR {
        assert!((1..=self.n + 1).contains(&k));
        (1..k).fold(self.block(a, 0), |x, _| self.big_phi(&x))
    }

    fn mul(&self, x: &EndoR, y: &EndoR) -> EndoR {
        x.compose(y)
    }

    fn is_identity(&self, x: &EndoR) -> bool {
        x.is_identity()
    }

    /// `A ↦ A^{δ⁻¹}`.
    fn closing_twist(&self, a: &Sl2) -> Sl2 {
        a.twist(&self.delta.inverse())
    }
}

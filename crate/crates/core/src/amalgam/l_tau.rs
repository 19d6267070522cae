//! The realization of `𝒜^τ` inside `SL_{2n}(k[t, t⁻¹])` through the involution θ.

use super::{place_sl2, Completion, Sl2};
use crate::field::Field;
use crate::form::{GramForm, LMat};
use crate::laurent::LaurentPoly;
use crate::matrix::RingMatrix;

#[derive(Clone, Debug)]
pub struct LTau {
    pub n: usize,
    pub form: GramForm,
}

impl LTau {
    pub fn new(field: &'static Field, n: usize) -> LTau {
        assert!(n >= 3, "the cyclic diagram needs n ≥ 3");
        LTau { n, form: GramForm::new(field, n) }
    }

    /// The cyclic permutation matrix `F` with `F_{i,i+1} = 1`, `F_{2n,1} = 1`.
    pub fn f(&self) -> LMat {
        let d = 2 * self.n;
        let f = self.form.field();
        RingMatrix::from_fn(d, d, |i, j| {
            if (i + 1) % d == j {
                LaurentPoly::one(f)
            } else {
                LaurentPoly::zero(f)
            }
        })
    }

    /// `Φ^m(X) = F^{-m} X F^m`, which shifts both indices by `m` cyclically.
    pub fn big_phi_pow(&self, x: &LMat, m: usize) -> LMat {
        let d = 2 * self.n;
        let m = m % d;
        RingMatrix::from_fn(d, d, |i, j| x.get((i + d - m) % d, (j + d - m) % d).clone())
    }

    /// `i(A) = A ⊕ I_{2n-2}`.
    pub fn embed(&self, a: &Sl2) -> LMat {
        place_sl2(a, 0, 2 * self.n).map(|&x| LaurentPoly::constant(x))
    }

    /// The matrices listed for `L_k`: `A` and `ᵗA⁻¹` on the diagonal for `k < n`, and the
    /// wrapped form coupling rows `1, n, n+1, 2n` for `k = n`.
    pub fn printed_phi(&self, k: usize, a: &Sl2) -> LMat {
        let n = self.n;
        assert!((1..=n).contains(&k));
        let f = self.form.field();
        let c = |x| LaurentPoly::constant(x);
        if k < n {
            return place_sl2(a, k - 1, n).direct_sum(&place_sl2(&a.tau(), k - 1, n)).map(|&x| c(x));
        }
        let t = LaurentPoly::t(f);
        let tinv = t.inv().unwrap();
        let d = 2 * n;
        let mut m = RingMatrix::identity(d, &LaurentPoly::one(f));
        m.set(0, 0, c(a.a));
        m.set(0, d - 1, -(&c(a.b) * &t));
        m.set(n - 1, n - 1, c(a.a));
        m.set(n - 1, n, c(a.b));
        m.set(n, n - 1, c(a.c));
        m.set(n, n, c(a.d));
        m.set(d - 1, 0, -(&c(a.c) * &tinv));
        m.set(d - 1, d - 1, c(a.d));
        m
    }
}

impl Completion for LTau {
    type Elem = LMat;

    fn name(&self) -> String {
        format!("L_tau(q={}, n={})", self.form.field().order(), self.n)
    }

    fn rank(&self) -> usize {
        self.n
    }

    fn field(&self) -> &'static Field {
        self.form.field()
    }

    /// `φ_k(A) = Φ^{k-1}(i(A)) · θ(Φ^{k-1}(i(A)))`.
    fn phi(&self, k: usize, a: &Sl2) -> LMat {
        assert!((1..=self.n + 1).contains(&k));
        let x = self.big_phi_pow(&self.embed(a), k - 1);
        let x_inv = self.big_phi_pow(&self.embed(&a.inv()), k - 1);
        x.mul(&self.form.theta_with_inverse(&x_inv))
    }

    fn mul(&self, x: &LMat, y: &LMat) -> LMat {
        x.mul(y)
    }

    fn is_identity(&self, x: &LMat) -> bool {
        x.is_identity()
    }

    /// `A ↦ ᵗA⁻¹`.
    fn closing_twist(&self, a: &Sl2) -> Sl2 {
        a.tau()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::verify_amalgam_relations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shift_is_conjugation_by_f() {
        let l = LTau::new(Field::of_order(5).unwrap(), 3);
        let f = l.f();
        let fi = f.inverse().unwrap();
        let x = RingMatrix::from_fn(6, 6, |i, j| LaurentPoly::monomial(l.field().from_int((i * 6 + j) as i64), i as i64));
        assert_eq!(l.big_phi_pow(&x, 1), fi.mul(&x).mul(&f));
        assert_eq!(l.big_phi_pow(&x, 7), l.big_phi_pow(&x, 1));
    }

    #[test]
    fn generic_matches_printed() {
        let f = Field::of_order(5).unwrap();
        let l = LTau::new(f, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = Sl2::random(f, &mut rng);
            for k in 1..=4 {
                assert_eq!(l.phi(k, &a), l.printed_phi(k, &a), "k={k}");
                assert!(l.form.is_isometry(&l.phi(k, &a)));
            }
            assert_eq!(l.phi(5, &a), l.phi(1, &a.tau()));
        }
    }

    #[test]
    fn relations_hold() {
        let l = LTau::new(Field::of_order(4).unwrap(), 4);
        let r = verify_amalgam_relations(&l, 2, 1);
        assert!(r.ok(), "{:?}", r.checks.iter().find(|c| !c.ok()));
    }
}

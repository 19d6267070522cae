//! A completion of `𝒜^δ` for mixed `δ = ατ`, `α ∈ Aut(k)` of order `s > 1`,
//! inside `SL_{2sn}(k[t, t⁻¹])`.
//!
//! Conjugation by powers of the cyclic shift `F` is an index rotation, so
//! `Φ(α)` and `Φ(τ)` never multiply by `F`. Two layouts of `φ_1` are offered:
//! [`MixedLayout::AsPrinted`] takes the product over `H = ⟨α, τ⟩` enumerated as
//! `α^j`, then `α^j τ`; [`MixedLayout::DeltaOrbit`] takes the product over the
//! orbit of `i(A)` under `Ψ = Φ(α)∘Φ(τ)` read with a single shift by `n`.

use std::fmt;

use serde::Serialize;

use crate::amalgam::{place_sl2, Completion, Sl2};
use crate::error::{Error, Result};
use crate::field::{Field, FieldAut};
use crate::form::LMat;
use crate::laurent::LaurentPoly;
use crate::matrix::RingMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MixedLayout {
    AsPrinted,
    DeltaOrbit,
}

/// `α^j` or `α^j τ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HElem {
    pub alpha_power: u32,
    pub tau: bool,
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α^{}{}", self.alpha_power, if self.tau { "τ" } else { "" })
    }
}

#[derive(Clone, Debug)]
pub struct MixedParams {
    pub n: usize,
    pub alpha: FieldAut,
    pub s: usize,
}

impl MixedParams {
    pub fn new(field: &'static Field, n: usize, frobenius_power: i64) -> Result<MixedParams> {
        let alpha = FieldAut::new(field, frobenius_power);
        let s = alpha.order() as usize;
        if s < 2 {
            return Err(Error::InvalidParameters("α must have order s > 1".into()));
        }
        if n < 3 {
            return Err(Error::InvalidParameters(format!("the cyclic diagram needs n ≥ 3, got {n}")));
        }
        Ok(MixedParams { n, alpha, s })
    }

    pub fn field(&self) -> &'static Field {
        self.alpha.field()
    }

    /// `2sn`.
    pub fn size(&self) -> usize {
        2 * self.s * self.n
    }

    /// `F` with `F_{i,i+1} = 1` and `F_{2sn,1} = 1`.
    pub fn f(&self) -> LMat {
        let d = self.size();
        let f = self.field();
        RingMatrix::from_fn(d, d, |i, j| if (i + 1) % d == j { LaurentPoly::one(f) } else { LaurentPoly::zero(f) })
    }

    /// `J = diag(t I_{sn}, I_{sn})`.
    pub fn j(&self) -> LMat {
        let d = self.size();
        let f = self.field();
        let t = LaurentPoly::t(f);
        RingMatrix::from_fn(d, d, |i, j| match (i == j, i < d / 2) {
            (true, true) => t.clone(),
            (true, false) => LaurentPoly::one(f),
            _ => LaurentPoly::zero(f),
        })
    }

    /// `F^{-m} X F^m`, an index rotation by `m`.
    pub fn shift(&self, x: &LMat, m: i64) -> LMat {
        let d = self.size() as i64;
        let m = m.rem_euclid(d) as usize;
        let d = d as usize;
        RingMatrix::from_fn(d, d, |i, j| x.get((i + d - m) % d, (j + d - m) % d).clone())
    }

    /// `J⁻¹ Y J`: entry `(i, j)` scaled by `t^{[j < sn] - [i < sn]}`.
    fn conj_j(&self, y: &LMat) -> LMat {
        let h = self.size() / 2;
        RingMatrix::from_fn(y.rows(), y.cols(), |i, j| y.get(i, j).shift((j < h) as i64 - (i < h) as i64))
    }

    /// `J Y J⁻¹`.
    fn conj_j_inv(&self, y: &LMat) -> LMat {
        let h = self.size() / 2;
        RingMatrix::from_fn(y.rows(), y.cols(), |i, j| y.get(i, j).shift((i < h) as i64 - (j < h) as i64))
    }

    fn apply_aut(&self, x: &LMat, a: &FieldAut) -> LMat {
        x.map(|p| p.map_coeffs(|c| a.apply(c)))
    }

    /// `Φ(α)(X) = F^{-n} X^α F^n`.
    pub fn phi_alpha(&self, x: &LMat) -> LMat {
        self.shift(&self.apply_aut(x, &self.alpha), self.n as i64)
    }

    pub fn phi_alpha_inv(&self, x: &LMat) -> LMat {
        self.apply_aut(&self.shift(x, -(self.n as i64)), &self.alpha.inverse())
    }

    /// `Φ(τ)(X) = F^{-sn} J⁻¹ ᵗX^{-σ} J F^{sn}`, given `X⁻¹`.
    pub fn phi_tau_with_inverse(&self, x_inv: &LMat) -> LMat {
        self.shift(&self.conj_j(&x_inv.sigma().transpose()), (self.s * self.n) as i64)
    }

    pub fn phi_tau(&self, x: &LMat) -> Result<LMat> {
        Ok(self.phi_tau_with_inverse(&x.inverse()?))
    }

    /// `Φ(τ)⁻¹(Y) = ((ᵗ(P⁻¹ Y P))^σ)⁻¹` with `P = F^{-sn} J⁻¹`.
    pub fn phi_tau_inv(&self, y: &LMat) -> Result<LMat> {
        let z = self.conj_j_inv(&self.shift(y, -((self.s * self.n) as i64)));
        z.transpose().sigma().inverse()
    }

    /// `Φ(η)` on a pair `(X, X⁻¹)`.
    pub fn phi_h(&self, eta: HElem, x: &LMat, x_inv: &LMat) -> (LMat, LMat) {
        let (mut y, mut yi) = if eta.tau {
            (self.phi_tau_with_inverse(x_inv), self.phi_tau_with_inverse(x))
        } else {
            (x.clone(), x_inv.clone())
        };
        for _ in 0..eta.alpha_power {
            y = self.phi_alpha(&y);
            yi = self.phi_alpha(&yi);
        }
        (y, yi)
    }

    /// `H` as `α^0, …, α^{s-1}, α^0 τ, …, α^{s-1} τ`.
    pub fn h_elements(&self) -> Vec<HElem> {
        [false, true]
            .iter()
            .flat_map(|&tau| (0..self.s as u32).map(move |j| HElem { alpha_power: j, tau }))
            .collect()
    }

    /// `i(A) = A ⊕ I_{2sn-2}`.
    pub fn embed(&self, a: &Sl2) -> LMat {
        place_sl2(a, 0, self.size()).map(|&x| LaurentPoly::constant(x))
    }

    /// `Ψ(X) = F^{-n} J⁻¹ ᵗ(X^α)^{-σ} J F^n` on `(X, X⁻¹)`.
    pub fn psi(&self, x: &LMat, x_inv: &LMat) -> (LMat, LMat) {
        let step = |m: &LMat| {
            self.shift(&self.conj_j(&self.apply_aut(m, &self.alpha).sigma().transpose()), self.n as i64)
        };
        (step(x_inv), step(x))
    }

    /// Factors of `φ_1(A)` with their labels, in product order.
    pub fn factors(&self, layout: MixedLayout, a: &Sl2) -> Vec<(String, LMat)> {
        let (x, xi) = (self.embed(a), self.embed(&a.inv()));
        match layout {
            MixedLayout::AsPrinted => self
                .h_elements()
                .into_iter()
                .map(|eta| (eta.to_string(), self.phi_h(eta, &x, &xi).0))
                .collect(),
            MixedLayout::DeltaOrbit => {
                let mut out = Vec::with_capacity(2 * self.s);
                let (mut y, mut yi) = (x, xi);
                for p in 0..2 * self.s {
                    out.push((format!("Ψ^{p}"), y.clone()));
                    (y, yi) = self.psi(&y, &yi);
                }
                out
            }
        }
    }

    /// `φ_1(A)`, failing if two factors do not commute.
    pub fn phi1_checked(&self, layout: MixedLayout, a: &Sl2) -> Result<LMat> {
        let fs = self.factors(layout, a);
        for (i, (ni, x)) in fs.iter().enumerate() {
            for (nj, y) in &fs[i + 1..] {
                if x.mul(y) != y.mul(x) {
                    return Err(Error::NonCommutingFactors(format!("{ni} and {nj} for A = {a:?}")));
                }
            }
        }
        Ok(product(&fs))
    }

    /// `δ⁻¹(A) = ᵗ(A^{α⁻¹})⁻¹`.
    pub fn delta_inverse(&self, a: &Sl2) -> Sl2 {
        a.twist(&self.alpha.inverse()).tau()
    }

    /// Defects of `Φ` as a map `H → Aut(SL_{2sn}(A))`.
    pub fn homomorphism_defects(&self, samples: &[(LMat, LMat)]) -> PhiDefects {
        let d = self.size();
        // Φ(τ)² is conjugation by C = P ᵗ(P^σ)⁻¹, P = F^{-sn} J⁻¹.
        let sn = (self.s * self.n) as i64;
        let j_inv = self.j().map(|p| p.inv().unwrap_or_else(|| p.clone()));
        let p = self.f_pow(-sn).mul(&j_inv);
        let c = p.mul(&p.sigma().transpose().inverse().expect("P is monomial"));
        let scalar = c.get(0, 0).clone();
        let tau_squared_scalar = c == RingMatrix::identity(d, &scalar);
        // Φ(α)Φ(τ) = c_D ∘ Φ(τ)Φ(α) with D = F^{-(s+1)n} J⁻¹ F^n J F^{-n} F^{(s+1)n}.
        let jp = self.shift(&self.j(), -(self.n as i64));
        let commutator_conjugator = self.shift(&j_inv.mul(&jp), sn + self.n as i64);
        let dinv = commutator_conjugator.map(|p| p.inv().unwrap_or_else(|| p.clone()));
        let mut commutator_is_inner = true;
        let mut tau_squared_identity = true;
        let mut alpha_tau_commute = true;
        let mut alpha_pow_s_is_shift = true;
        for (x, xi) in samples {
            let t1 = self.phi_tau_with_inverse(xi);
            let t1i = self.phi_tau_with_inverse(x);
            tau_squared_identity &= self.phi_tau_with_inverse(&t1i) == *x;
            let at = self.phi_alpha(&t1);
            let ta = self.phi_tau_with_inverse(&self.phi_alpha(xi));
            alpha_tau_commute &= at == ta;
            commutator_is_inner &= at == commutator_conjugator.mul(&ta).mul(&dinv);
            let mut y = x.clone();
            for _ in 0..self.s {
                y = self.phi_alpha(&y);
            }
            alpha_pow_s_is_shift &= y == self.shift(x, sn);
        }
        PhiDefects {
            tau_squared_conjugator: c,
            tau_squared_scalar,
            tau_squared_identity,
            alpha_tau_commute,
            commutator_conjugator,
            commutator_is_inner,
            alpha_pow_s_is_shift,
        }
    }

    /// `F^m` for any integer `m`.
    pub fn f_pow(&self, m: i64) -> LMat {
        let d = self.size();
        let f = self.field();
        let m = m.rem_euclid(d as i64) as usize;
        RingMatrix::from_fn(d, d, |i, j| if (i + m) % d == j { LaurentPoly::one(f) } else { LaurentPoly::zero(f) })
    }
}

fn product(fs: &[(String, LMat)]) -> LMat {
    let mut it = fs.iter().map(|(_, x)| x);
    let first = it.next().expect("H is non-empty").clone();
    it.fold(first, |acc, x| acc.mul(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiDefects {
    pub tau_squared_conjugator: LMat,
    pub tau_squared_scalar: bool,
    pub tau_squared_identity: bool,
    pub alpha_tau_commute: bool,
    /// `D` with `Φ(α)Φ(τ)Φ(α)⁻¹Φ(τ)⁻¹ = (Y ↦ D Y D⁻¹)`.
    pub commutator_conjugator: LMat,
    pub commutator_is_inner: bool,
    pub alpha_pow_s_is_shift: bool,
}

#[derive(Clone, Debug)]
pub struct MixedCompletion {
    pub params: MixedParams,
    pub layout: MixedLayout,
}

impl MixedCompletion {
    /// Checks that the factors of `φ_1` commute on the standard generators.
    pub fn new(params: MixedParams, layout: MixedLayout) -> Result<MixedCompletion> {
        for a in crate::amalgam::sl2_generators(params.field()) {
            params.phi1_checked(layout, &a)?;
        }
        Ok(MixedCompletion { params, layout })
    }
}

impl Completion for MixedCompletion {
    type Elem = LMat;

    fn name(&self) -> String {
        let p = &self.params;
        format!(
            "mixed(q={}, n={}, f={}, layout={:?})",
            p.field().order(),
            p.n,
            p.alpha.frobenius_power(),
            self.layout
        )
    }

    fn rank(&self) -> usize {
        self.params.n
    }

    fn field(&self) -> &'static Field {
        self.params.field()
    }

    /// `φ_k(A) = F^{-(k-1)} φ_1(A) F^{k-1}`.
    fn phi(&self, k: usize, a: &Sl2) -> LMat {
        let p1 = product(&self.params.factors(self.layout, a));
        self.params.shift(&p1, k as i64 - 1)
    }

    fn mul(&self, x: &LMat, y: &LMat) -> LMat {
        x.mul(y)
    }

    fn is_identity(&self, x: &LMat) -> bool {
        x.is_identity()
    }

    fn closing_twist(&self, a: &Sl2) -> Sl2 {
        self.params.delta_inverse(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::verify_amalgam_relations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params() -> MixedParams {
        MixedParams::new(Field::of_order(4).unwrap(), 4, 1).unwrap()
    }

    fn samples(p: &MixedParams, k: usize) -> Vec<(LMat, LMat)> {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        (0..k).map(|_| crate::form::random_sl(p.field(), p.size(), 6, 1, &mut rng)).collect()
    }

    #[test]
    fn shift_is_conjugation() {
        let p = params();
        let (x, _) = samples(&p, 1).pop().unwrap();
        let f = p.f();
        assert_eq!(p.shift(&x, 1), p.f_pow(-1).mul(&x).mul(&f));
        assert_eq!(p.f_pow(1), f);
        assert!(p.f_pow(p.size() as i64).is_identity());
        assert_eq!(p.shift(&x, 3), p.f_pow(-3).mul(&x).mul(&p.f_pow(3)));
    }

    #[test]
    fn phi_tau_is_automorphism() {
        let p = params();
        let s = samples(&p, 3);
        for w in s.windows(2) {
            let ((x, xi), (y, yi)) = (&w[0], &w[1]);
            let lhs = p.phi_tau_with_inverse(&yi.mul(xi));
            assert_eq!(lhs, p.phi_tau_with_inverse(xi).mul(&p.phi_tau_with_inverse(yi)));
            assert_eq!(p.phi_tau(x).unwrap(), p.phi_tau_with_inverse(xi));
            assert_eq!(p.phi_tau_inv(&p.phi_tau(x).unwrap()).unwrap(), *x);
            assert_eq!(p.phi_alpha_inv(&p.phi_alpha(y)), *y);
        }
    }

    #[test]
    fn defects() {
        let p = params();
        let d = p.homomorphism_defects(&samples(&p, 3));
        assert!(d.tau_squared_scalar && d.tau_squared_identity);
        assert!(d.alpha_pow_s_is_shift, "alpha^s");
        assert!(!d.alpha_tau_commute && d.commutator_is_inner);
        let dc = &d.commutator_conjugator;
        assert!((0..p.size()).all(|i| dc.get(i, i).is_unit()));
    }

    #[test]
    fn delta_orbit_layout_satisfies_relations() {
        let c = MixedCompletion::new(params(), MixedLayout::DeltaOrbit).unwrap();
        let r = verify_amalgam_relations(&c, 1, 2);
        assert!(r.ok(), "{:?}", r.checks.iter().find(|c| !c.ok()));
    }

    #[test]
    fn printed_layout_breaks_closing_twist() {
        let c = MixedCompletion::new(params(), MixedLayout::AsPrinted).unwrap();
        let r = verify_amalgam_relations(&c, 1, 2);
        assert!(!r.check("closing_twist").unwrap().ok());
    }
}

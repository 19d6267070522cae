//! Skew Laurent polynomials `k{t, t⁻¹}` with `t⁻¹ x t = x^δ`, coefficients written on the left.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldAut, FqElem};
use crate::laurent::{forward_owned, write_terms, LaurentPoly, Terms};

/// An element of `k{t, t⁻¹}` for a fixed automorphism `δ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewLaurentPoly {
    delta: FieldAut,
    terms: Terms,
}

impl SkewLaurentPoly {
    pub fn new(delta: FieldAut, offset: i64, coeffs: &[FqElem]) -> SkewLaurentPoly {
        let c = coeffs
            .iter()
            .map(|x| {
                assert!(x.field() == delta.field(), "coefficient from another field");
                x.raw()
            })
            .collect();
        SkewLaurentPoly { delta, terms: Terms::normalized(offset, c) }
    }

    pub fn zero(delta: FieldAut) -> SkewLaurentPoly {
        SkewLaurentPoly { delta, terms: Terms::zero() }
    }

    pub fn one(delta: FieldAut) -> SkewLaurentPoly {
        SkewLaurentPoly::constant(delta, delta.field().one())
    }

    pub fn constant(delta: FieldAut, c: FqElem) -> SkewLaurentPoly {
        SkewLaurentPoly::monomial(delta, c, 0)
    }

    /// `c t^e`.
    pub fn monomial(delta: FieldAut, c: FqElem, e: i64) -> SkewLaurentPoly {
        SkewLaurentPoly::new(delta, e, &[c])
    }

    pub fn t(delta: FieldAut) -> SkewLaurentPoly {
        SkewLaurentPoly::monomial(delta, delta.field().one(), 1)
    }

    /// Same coefficients, read in `k{t, t⁻¹}` for `δ`.
    pub fn from_laurent(delta: FieldAut, p: &LaurentPoly) -> SkewLaurentPoly {
        assert!(p.field() == delta.field());
        SkewLaurentPoly { delta, terms: p.terms.clone() }
    }

    /// Forget the twist. Only a ring map when `δ = id`.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.delta.field(), self.terms.clone())
    }

    pub fn delta(&self) -> FieldAut {
        self.delta
    }

    pub fn offset(&self) -> i64 {
        self.terms.offset
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        let f = self.delta.field();
        self.terms.c.iter().map(|&v| FqElem::from_raw(f, v)).collect()
    }

    pub fn coeff(&self, e: i64) -> FqElem {
        FqElem::from_raw(self.delta.field(), self.terms.get(e))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        let f = self.delta.field();
        self.terms.iter().map(move |(e, v)| (e, FqElem::from_raw(f, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.offset == 0 && self.terms.c == [1]
    }

    pub fn as_monomial(&self) -> Option<(FqElem, i64)> {
        (self.terms.c.len() == 1).then(|| (self.coeff(self.terms.offset), self.terms.offset))
    }

    pub fn is_unit(&self) -> bool {
        self.terms.c.len() == 1
    }

    /// `(a t^i)⁻¹ = (a⁻¹)^{δ^i} t^{-i}`.
    pub fn inv(&self) -> Option<SkewLaurentPoly> {
        let (a, i) = self.as_monomial()?;
        let c = self.delta.pow(i).apply(a.inv()?);
        Some(SkewLaurentPoly::monomial(self.delta, c, -i))
    }

    /// Apply a field automorphism to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(FqElem) -> FqElem) -> SkewLaurentPoly {
        let fld = self.delta.field();
        let c = self.terms.c.iter().map(|&v| f(FqElem::from_raw(fld, v)).raw()).collect();
        SkewLaurentPoly { delta: self.delta, terms: Terms::normalized(self.terms.offset, c) }
    }

    /// Product with a shared-`δ` check.
    pub fn try_mul(&self, rhs: &SkewLaurentPoly) -> Result<SkewLaurentPoly> {
        if self.delta != rhs.delta {
            return Err(Error::IncompatibleRings(format!("{:?} vs {:?}", self.delta, rhs.delta)));
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &SkewLaurentPoly) -> SkewLaurentPoly {
        let f = self.delta.field();
        if self.is_zero() || rhs.is_zero() {
            return SkewLaurentPoly::zero(self.delta);
        }
        let (a, b) = (&self.terms.c, &rhs.terms.c);
        let mut c = vec![0u16; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let ei = self.terms.offset + i as i64;
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let yt = self.delta.apply_raw_pow(y, -ei);
                c[i + j] = f.add_raw(c[i + j], f.mul_raw(x, yt));
            }
        }
        SkewLaurentPoly {
            delta: self.delta,
            terms: Terms::normalized(self.terms.offset + rhs.terms.offset, c),
        }
    }

    pub fn try_add(&self, rhs: &SkewLaurentPoly) -> Result<SkewLaurentPoly> {
        if self.delta != rhs.delta {
            return Err(Error::IncompatibleRings(format!("{:?} vs {:?}", self.delta, rhs.delta)));
        }
        Ok(SkewLaurentPoly { delta: self.delta, terms: self.terms.add(&rhs.terms, self.delta.field()) })
    }
}

impl fmt::Debug for SkewLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SkewLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), "t")
    }
}

impl Serialize for SkewLaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SkewLaurentPoly", 2)?;
        st.serialize_field("offset", &self.terms.offset)?;
        st.serialize_field("coeffs", &self.terms.c)?;
        st.end()
    }
}

impl<'a> Add for &'a SkewLaurentPoly {
    type Output = SkewLaurentPoly;
    fn add(self, rhs: &SkewLaurentPoly) -> SkewLaurentPoly {
        self.try_add(rhs).expect("skew polynomials over different rings")
    }
}

impl<'a> Neg for &'a SkewLaurentPoly {
    type Output = SkewLaurentPoly;
    fn neg(self) -> SkewLaurentPoly {
        SkewLaurentPoly { delta: self.delta, terms: self.terms.neg(self.delta.field()) }
    }
}

impl<'a> Sub for &'a SkewLaurentPoly {
    type Output = SkewLaurentPoly;
    fn sub(self, rhs: &SkewLaurentPoly) -> SkewLaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul for &'a SkewLaurentPoly {
    type Output = SkewLaurentPoly;
    fn mul(self, rhs: &SkewLaurentPoly) -> SkewLaurentPoly {
        self.try_mul(rhs).expect("skew polynomials over different rings")
    }
}

forward_owned!(SkewLaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for SkewLaurentPoly {
    type Output = SkewLaurentPoly;
    fn neg(self) -> SkewLaurentPoly {
        -&self
    }
}

/// `f · g` in `k{t, t⁻¹}`.
pub fn skew_mul(f: &SkewLaurentPoly, g: &SkewLaurentPoly) -> Result<SkewLaurentPoly> {
    f.try_mul(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn setup() -> (FieldAut, Vec<FqElem>) {
        let f = Field::of_order(4).unwrap();
        (FieldAut::new(f, 1), f.elements().collect())
    }

    #[test]
    fn defining_relation() {
        let (d, els) = setup();
        let t = SkewLaurentPoly::t(d);
        let tinv = t.inv().unwrap();
        for &x in &els {
            let xs = SkewLaurentPoly::constant(d, x);
            assert_eq!(&(&tinv * &xs) * &t, SkewLaurentPoly::constant(d, d.apply(x)));
            assert_eq!(&t * &xs, SkewLaurentPoly::monomial(d, d.inverse().apply(x), 1));
        }
    }

    #[test]
    fn monomial_product() {
        let (d, els) = setup();
        let (a, b) = (els[2], els[3]);
        let p = &SkewLaurentPoly::monomial(d, a, 1) * &SkewLaurentPoly::monomial(d, b, 1);
        assert_eq!(p, SkewLaurentPoly::monomial(d, a * d.inverse().apply(b), 2));
    }

    #[test]
    fn mismatched_delta() {
        let (d, _) = setup();
        let id = FieldAut::identity(d.field());
        let r = skew_mul(&SkewLaurentPoly::t(d), &SkewLaurentPoly::t(id));
        assert!(matches!(r, Err(Error::IncompatibleRings(_))));
    }

    #[test]
    fn inverse_of_monomials() {
        let (d, els) = setup();
        for &a in &els[1..] {
            for e in -3..=3 {
                let m = SkewLaurentPoly::monomial(d, a, e);
                let mi = m.inv().unwrap();
                assert!((&m * &mi).is_one());
                assert!((&mi * &m).is_one());
            }
        }
    }
}

//! Commutative Laurent polynomials `k[t, t⁻¹]` with the involution `σ: t ↔ t⁻¹`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{coerce, FqElem, Field};

/// Offset and coefficient vector in canonical form: empty for zero, nonzero ends otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Terms {
    pub offset: i64,
    pub c: Vec<u16>,
}

impl Terms {
    pub fn zero() -> Terms {
        Terms { offset: 0, c: Vec::new() }
    }

    pub fn normalized(mut offset: i64, mut c: Vec<u16>) -> Terms {
        while c.last() == Some(&0) {
            c.pop();
        }
        let lead = c.iter().take_while(|&&x| x == 0).count();
        if lead == c.len() {
            return Terms::zero();
        }
        if lead > 0 {
            c.drain(..lead);
            offset += lead as i64;
        }
        Terms { offset, c }
    }

    pub fn get(&self, e: i64) -> u16 {
        let i = e - self.offset;
        if i < 0 || i as usize >= self.c.len() {
            0
        } else {
            self.c[i as usize]
        }
    }

    pub fn top(&self) -> i64 {
        self.offset + self.c.len() as i64 - 1
    }

    pub fn add(&self, other: &Terms, f: &Field) -> Terms {
        if self.c.is_empty() {
            return other.clone();
        }
        if other.c.is_empty() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self.top().max(other.top());
        let c = (lo..=hi).map(|e| f.add_raw(self.get(e), other.get(e))).collect();
        Terms::normalized(lo, c)
    }

    pub fn neg(&self, f: &Field) -> Terms {
        Terms { offset: self.offset, c: self.c.iter().map(|&x| f.neg_raw(x)).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u16)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(move |(i, &x)| (self.offset + i as i64, x))
    }
}

/// An element of `k[t, t⁻¹]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: &'static Field,
    pub(crate) terms: Terms,
}

impl LaurentPoly {
    pub(crate) fn from_terms(field: &'static Field, terms: Terms) -> LaurentPoly {
        LaurentPoly { field, terms }
    }

    /// `Σ coeffs[i] t^(offset + i)`, normalized.
    pub fn new(field: &'static Field, offset: i64, coeffs: &[FqElem]) -> LaurentPoly {
        let c = coeffs
            .iter()
            .map(|x| {
                assert!(x.field() == field, "coefficient from another field");
                x.raw()
            })
            .collect();
        LaurentPoly { field, terms: Terms::normalized(offset, c) }
    }

    pub fn zero(field: &'static Field) -> LaurentPoly {
        LaurentPoly { field, terms: Terms::zero() }
    }

    pub fn one(field: &'static Field) -> LaurentPoly {
        LaurentPoly::constant(field.one())
    }

    pub fn constant(c: FqElem) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    /// `c t^e`.
    pub fn monomial(c: FqElem, e: i64) -> LaurentPoly {
        LaurentPoly { field: c.field(), terms: Terms::normalized(e, vec![c.raw()]) }
    }

    /// The variable `t`.
    pub fn t(field: &'static Field) -> LaurentPoly {
        LaurentPoly::monomial(field.one(), 1)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    /// Lowest exponent; 0 for the zero polynomial.
    pub fn offset(&self) -> i64 {
        self.terms.offset
    }

    pub fn coeffs(&self) -> Vec<FqElem> {
        self.terms.c.iter().map(|&v| FqElem::from_raw(self.field, v)).collect()
    }

    pub fn coeff(&self, e: i64) -> FqElem {
        FqElem::from_raw(self.field, self.terms.get(e))
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.terms.iter().map(|(e, v)| (e, FqElem::from_raw(self.field, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.offset == 0 && self.terms.c == [1]
    }

    /// `Some((λ, l))` when the polynomial is `λ t^l`.
    pub fn as_monomial(&self) -> Option<(FqElem, i64)> {
        (self.terms.c.len() == 1).then(|| (self.coeff(self.terms.offset), self.terms.offset))
    }

    /// Units of `k[t, t⁻¹]` are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.c.len() == 1
    }

    pub fn inv(&self) -> Option<LaurentPoly> {
        let (c, e) = self.as_monomial()?;
        Some(LaurentPoly::monomial(c.inv()?, -e))
    }

    /// Highest exponent minus lowest; `None` for zero.
    pub fn span(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.terms.c.len() as i64 - 1)
    }

    /// Largest `|e|` over nonzero terms.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms().map(|(e, _)| e.abs()).max().unwrap_or(0)
    }

    /// `t ↦ t⁻¹`.
    pub fn sigma(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.terms.c.clone();
        c.reverse();
        LaurentPoly { field: self.field, terms: Terms { offset: -self.terms.top(), c } }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(FqElem) -> FqElem) -> LaurentPoly {
        let c = self.terms.c.iter().map(|&v| f(FqElem::from_raw(self.field, v)).raw()).collect();
        LaurentPoly { field: self.field, terms: Terms::normalized(self.terms.offset, c) }
    }

    pub fn scale(&self, c: FqElem) -> LaurentPoly {
        self.map_coeffs(|x| x * c)
    }

    /// `t^e · self`.
    pub fn shift(&self, e: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            field: self.field,
            terms: Terms { offset: self.terms.offset + e, c: self.terms.c.clone() },
        }
    }

    /// Substitute `t := a` for `a` in any extension of the coefficient field.
    pub fn eval(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::EvaluateAtZero);
        }
        let target = a.field();
        let mut acc = target.zero();
        for (e, c) in self.terms() {
            acc = acc + coerce(c, target)? * a.pow(e);
        }
        Ok(acc)
    }

    /// `self / d` when `d` divides `self` in `k[t, t⁻¹]`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = self.field;
        let num = &self.terms.c;
        let den = &d.terms.c;
        if num.len() < den.len() {
            return None;
        }
        let inv_lead = f.inv_raw(*den.last().unwrap());
        let mut r = num.clone();
        let qlen = num.len() - den.len() + 1;
        let mut quo = vec![0u16; qlen];
        for k in (0..qlen).rev() {
            let coef = f.mul_raw(r[k + den.len() - 1], inv_lead);
            quo[k] = coef;
            if coef != 0 {
                for (i, &dv) in den.iter().enumerate() {
                    r[k + i] = f.sub_raw(r[k + i], f.mul_raw(coef, dv));
                }
            }
        }
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        Some(LaurentPoly {
            field: f,
            terms: Terms::normalized(self.terms.offset - d.terms.offset, quo),
        })
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        (0..e).fold(LaurentPoly::one(self.field), |acc, _| &acc * self)
    }

    pub fn coerce_into(&self, target: &'static Field) -> Result<LaurentPoly> {
        let c = self
            .terms
            .c
            .iter()
            .map(|&v| coerce(FqElem::from_raw(self.field, v), target).map(|x| x.raw()))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPoly { field: target, terms: Terms::normalized(self.terms.offset, c) })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, u16)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (e, c) {
            (0, _) => write!(f, "{c}")?,
            (1, 1) => write!(f, "{var}")?,
            (_, 1) => write!(f, "{var}^{e}")?,
            (1, _) => write!(f, "{c}{var}")?,
            _ => write!(f, "{c}{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), "t")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("offset", &self.terms.offset)?;
        st.serialize_field("coeffs", &self.terms.c)?;
        st.end()
    }
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "mixed fields");
        LaurentPoly { field: self.field, terms: self.terms.add(&rhs.terms, self.field) }
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Neg for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { field: self.field, terms: self.terms.neg(self.field) }
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "mixed fields");
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(f);
        }
        let (a, b) = (&self.terms.c, &rhs.terms.c);
        let mut c = vec![0u16; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = f.add_raw(c[i + j], f.mul_raw(x, y));
            }
        }
        LaurentPoly {
            field: f,
            terms: Terms::normalized(self.terms.offset + rhs.terms.offset, c),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

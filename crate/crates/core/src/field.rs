//! Finite fields GF(p^m) with interned tables, and their Frobenius-power automorphisms.
//!
//! Elements are stored as the integer `Σ c_i p^i` of their coordinate vector
//! relative to the modulus, which is the least monic irreducible polynomial of
//! degree `m` under the same encoding.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 14;

const ADD_TABLE_LIMIT: u32 = 1024;

/// Tables for one finite field. Obtained through [`Field::get`], never built directly.
pub struct Field {
    p: u16,
    m: u32,
    q: u32,
    modulus: Vec<u16>,
    generator: u16,
    log: Vec<u32>,
    exp: Vec<u16>,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn digits(mut x: u32, p: u32, m: u32) -> Vec<u16> {
    (0..m)
        .map(|_| {
            let d = (x % p) as u16;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u16], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c as u32)
}

/// Remainder of `a` modulo the monic `b` over GF(p). Both low-degree first.
fn poly_rem(a: &[u16], b: &[u16], p: u32) -> Vec<u16> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() as u32;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let v = r[shift + i] as u32 + p - (lead * c as u32) % p;
                r[shift + i] = (v % p) as u16;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u16], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, m: u32) -> Vec<u16> {
    if m == 1 {
        return vec![0, 1];
    }
    (0..p.pow(m))
        .map(|low| {
            let mut f = digits(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    /// The interned field GF(p^m).
    pub fn get(p: u32, m: u32) -> Result<&'static Field> {
        if !is_prime(p) || m == 0 || p.checked_pow(m).map_or(true, |q| q > MAX_ORDER) {
            return Err(Error::InvalidField { p, m });
        }
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), &'static Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("field cache poisoned");
        let f = *guard
            .entry((p, m))
            .or_insert_with(|| Box::leak(Box::new(Field::build(p, m))));
        Ok(f)
    }

    /// The field with `q` elements, `q` a prime power.
    pub fn of_order(q: u32) -> Result<&'static Field> {
        let p = (2..=q).find(|d| q % d == 0).ok_or(Error::InvalidField { p: q, m: 1 })?;
        let mut m = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            m += 1;
        }
        if r != 1 {
            return Err(Error::InvalidField { p: q, m: 1 });
        }
        Field::get(p, m)
    }

    fn build(p: u32, m: u32) -> Field {
        let q = p.pow(m);
        let modulus = least_irreducible(p, m);
        let add_raw = |a: u32, b: u32| -> u16 {
            let (da, db) = (digits(a, p, m), digits(b, p, m));
            let s: Vec<u16> = da.iter().zip(&db).map(|(x, y)| ((x + y) as u32 % p) as u16).collect();
            undigits(&s, p) as u16
        };
        let mul_raw = |a: u32, b: u32| -> u16 {
            let (da, db) = (digits(a, p, m), digits(b, p, m));
            let mut prod = vec![0u16; 2 * m as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u32 + x as u32 * y as u32) % p) as u16;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(m as usize, 0);
            undigits(&r, p) as u16
        };
        let order_of = |g: u32| -> u32 {
            let mut x = g as u16;
            let mut k = 1;
            while x != 1 {
                x = mul_raw(x as u32, g);
                k += 1;
            }
            k
        };
        let generator = if q == 2 {
            1
        } else {
            (1..q).find(|&g| order_of(g) == q - 1).expect("multiplicative group is cyclic") as u16
        };
        let mut exp = vec![0u16; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u16;
        for k in 0..q - 1 {
            exp[k as usize] = x;
            exp[(k + q - 1) as usize] = x;
            log[x as usize] = k;
            x = mul_raw(x as u32, generator as u32);
        }
        let add = if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_raw(a, b);
                }
            }
            t
        } else {
            Vec::new()
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u16> = digits(a, p, m).iter().map(|&c| ((p - c as u32) % p) as u16).collect();
                undigits(&d, p) as u16
            })
            .collect();
        Field { p: p as u16, m, q, modulus, generator, log, exp, add, neg }
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the modulus, constant term first; monic of degree `m`.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn zero(&'static self) -> FqElem {
        FqElem { field: self, v: 0 }
    }

    pub fn one(&'static self) -> FqElem {
        FqElem { field: self, v: 1 }
    }

    /// The least primitive element under the integer encoding.
    pub fn primitive(&'static self) -> FqElem {
        FqElem { field: self, v: self.generator }
    }

    /// The element with integer encoding `v`.
    pub fn elem(&'static self, v: u32) -> FqElem {
        assert!(v < self.q, "encoding {v} out of range for {self:?}");
        FqElem { field: self, v: v as u16 }
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&'static self, x: i64) -> FqElem {
        FqElem { field: self, v: x.rem_euclid(self.p as i64) as u16 }
    }

    pub fn from_coords(&'static self, coords: &[u16]) -> FqElem {
        assert_eq!(coords.len(), self.m as usize);
        self.elem(undigits(coords, self.p as u32))
    }

    pub fn elements(&'static self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(move |v| FqElem { field: self, v: v as u16 })
    }

    /// `x^k` for `k = 0..m`, a basis over the prime field.
    pub fn prime_basis(&'static self) -> Vec<FqElem> {
        (0..self.m).map(|k| self.elem((self.p as u32).pow(k))).collect()
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            return a ^ b;
        }
        if !self.add.is_empty() {
            return self.add[a as usize * self.q as usize + b as usize];
        }
        let (p, m) = (self.p as u32, self.m);
        let s: Vec<u16> = digits(a as u32, p, m)
            .iter()
            .zip(&digits(b as u32, p, m))
            .map(|(x, y)| ((x + y) as u32 % p) as u16)
            .collect();
        undigits(&s, p) as u16
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    /// `a^e` for any integer `e` (with `0^e = 0` for `e > 0`).
    pub(crate) fn pow_raw(&self, a: u16, e: i64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            assert!(e > 0, "negative power of zero");
            return 0;
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    /// `a^(p^f)`.
    #[inline]
    pub(crate) fn frob_raw(&self, a: u16, f: u32) -> u16 {
        if a == 0 || f % self.m == 0 {
            return a;
        }
        let n = (self.q - 1) as u64;
        let e = (self.p as u64).pow(f % self.m) % n;
        self.exp[((self.log[a as usize] as u64 * e) % n) as usize]
    }

    /// Discrete log to the base [`Field::primitive`].
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.v != 0).then(|| self.log[a.v as usize])
    }
}

/// An element of an interned finite field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: &'static Field,
    v: u16,
}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.p, self.m).hash(state)
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.p, self.field.m, self.v).cmp(&(other.field.p, other.field.m, other.v))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Serialize for FqElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u16(self.v)
    }
}

impl FqElem {
    pub fn field(&self) -> &'static Field {
        self.field
    }

    /// Integer encoding `Σ c_i p^i`.
    pub fn value(&self) -> u32 {
        self.v as u32
    }

    pub(crate) fn raw(&self) -> u16 {
        self.v
    }

    pub(crate) fn from_raw(field: &'static Field, v: u16) -> FqElem {
        FqElem { field, v }
    }

    /// Coordinates over the prime field, constant term first.
    pub fn coords(&self) -> Vec<u16> {
        digits(self.v as u32, self.field.p as u32, self.field.m)
    }

    pub fn is_zero(&self) -> bool {
        self.v == 0
    }

    pub fn is_one(&self) -> bool {
        self.v == 1
    }

    pub fn inv(&self) -> Option<FqElem> {
        (self.v != 0).then(|| FqElem { field: self.field, v: self.field.inv_raw(self.v) })
    }

    pub fn pow(&self, e: i64) -> FqElem {
        FqElem { field: self.field, v: self.field.pow_raw(self.v, e) }
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> FqElem {
        FqElem { field: self.field, v: self.field.frob_raw(self.v, 1) }
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        let l = self.field.log(*self)?;
        let n = self.field.q - 1;
        Some(n / gcd(l, n))
    }

    /// All `y` with `y^2 = self`, ascending.
    pub fn sqrt_all(&self) -> Vec<FqElem> {
        self.field.elements().filter(|y| *y * *y == *self).collect()
    }

    fn check(&self, other: &FqElem) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixed fields {:?} and {:?}",
            self.field,
            other.field
        );
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, rhs: FqElem) -> FqElem {
        self.check(&rhs);
        FqElem { field: self.field, v: self.field.add_raw(self.v, rhs.v) }
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, rhs: FqElem) -> FqElem {
        self.check(&rhs);
        FqElem { field: self.field, v: self.field.sub_raw(self.v, rhs.v) }
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, rhs: FqElem) -> FqElem {
        self.check(&rhs);
        FqElem { field: self.field, v: self.field.mul_raw(self.v, rhs.v) }
    }
}

impl Div for FqElem {
    type Output = FqElem;
    fn div(self, rhs: FqElem) -> FqElem {
        self.check(&rhs);
        FqElem { field: self.field, v: self.field.mul_raw(self.v, self.field.inv_raw(rhs.v)) }
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem { field: self.field, v: self.field.neg_raw(self.v) }
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The automorphism `x ↦ x^(p^f)` of GF(p^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldAut {
    field: &'static Field,
    frobenius_power: u32,
}

impl fmt::Debug for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frob^{} on {:?}", self.frobenius_power, self.field)
    }
}

impl FieldAut {
    pub fn new(field: &'static Field, frobenius_power: i64) -> FieldAut {
        let f = frobenius_power.rem_euclid(field.m as i64) as u32;
        FieldAut { field, frobenius_power: f }
    }

    pub fn identity(field: &'static Field) -> FieldAut {
        FieldAut::new(field, 0)
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn frobenius_power(&self) -> u32 {
        self.frobenius_power
    }

    /// Order `s` in Aut(k).
    pub fn order(&self) -> u32 {
        self.field.m / gcd(self.field.m, self.frobenius_power)
    }

    pub fn is_identity(&self) -> bool {
        self.frobenius_power == 0
    }

    /// Size of the fixed field `k^δ`.
    pub fn fixed_field_order(&self) -> u32 {
        (self.field.p as u32).pow(self.field.m / self.order())
    }

    pub fn fixed_field(&self) -> Vec<FqElem> {
        self.field.elements().filter(|x| self.apply(*x) == *x).collect()
    }

    pub fn apply(&self, x: FqElem) -> FqElem {
        FqElem { field: x.field, v: self.field.frob_raw(x.v, self.frobenius_power) }
    }

    /// `δ^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> FieldAut {
        FieldAut::new(self.field, self.frobenius_power as i64 * k)
    }

    pub fn inverse(&self) -> FieldAut {
        self.pow(-1)
    }

    pub fn compose(&self, other: &FieldAut) -> FieldAut {
        FieldAut::new(self.field, (self.frobenius_power + other.frobenius_power) as i64)
    }

    #[inline]
    pub(crate) fn apply_raw_pow(&self, v: u16, k: i64) -> u16 {
        let f = (self.frobenius_power as i64 * k).rem_euclid(self.field.m as i64) as u32;
        self.field.frob_raw(v, f)
    }
}

/// `N_δ(x) = x · x^δ ⋯ x^{δ^{s-1}}`.
pub fn field_norm(x: FqElem, delta: &FieldAut) -> FqElem {
    (0..delta.order() as i64).fold(x.field.one(), |acc, k| acc * delta.pow(k).apply(x))
}

/// A field embedding GF(p^a) → GF(p^b), sending the modulus root to the least root in the target.
#[derive(Clone)]
pub struct Embedding {
    source: &'static Field,
    target: &'static Field,
    table: Vec<u16>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.source, self.target)
    }
}

impl Embedding {
    /// The cached embedding; `source.degree()` must divide `target.degree()`.
    pub fn between(source: &'static Field, target: &'static Field) -> Result<&'static Embedding> {
        if source.p != target.p || target.m % source.m != 0 {
            return Err(Error::NoEmbedding {
                from: source.order(),
                to: target.order(),
            });
        }
        type Key = ((u16, u32), (u16, u32));
        static CACHE: OnceLock<Mutex<HashMap<Key, &'static Embedding>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("embedding cache poisoned");
        let key = ((source.p, source.m), (target.p, target.m));
        let e = *guard
            .entry(key)
            .or_insert_with(|| Box::leak(Box::new(Embedding::build(source, target))));
        Ok(e)
    }

    fn build(source: &'static Field, target: &'static Field) -> Embedding {
        let p = source.p as i64;
        let lift = |c: u16| target.from_int(c as i64);
        let eval_mod = |r: FqElem| {
            source
                .modulus
                .iter()
                .rev()
                .fold(target.zero(), |acc, &c| acc * r + lift(c))
        };
        let root = target
            .elements()
            .find(|r| eval_mod(*r).is_zero())
            .expect("the target contains a copy of the source");
        let table = (0..source.q)
            .map(|v| {
                let d = digits(v, p as u32, source.m);
                let img = d.iter().rev().fold(target.zero(), |acc, &c| acc * root + lift(c));
                img.v
            })
            .collect();
        Embedding { source, target, table }
    }

    pub fn source(&self) -> &'static Field {
        self.source
    }

    pub fn target(&self) -> &'static Field {
        self.target
    }

    pub fn apply(&self, x: FqElem) -> FqElem {
        assert!(std::ptr::eq(x.field, self.source));
        FqElem { field: self.target, v: self.table[x.v as usize] }
    }

    /// Preimage of `y`, if it lies in the image.
    pub fn preimage(&self, y: FqElem) -> Option<FqElem> {
        self.table
            .iter()
            .position(|&v| v == y.v)
            .map(|i| FqElem { field: self.source, v: i as u16 })
    }
}

/// Move `x` into `target` through the cached embedding.
pub fn coerce(x: FqElem, target: &'static Field) -> Result<FqElem> {
    if std::ptr::eq(x.field, target) {
        return Ok(x);
    }
    Ok(Embedding::between(x.field, target)?.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_least_irreducible() {
        assert_eq!(Field::get(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::get(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::get(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(Field::get(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn primitive_element_is_not_always_the_root() {
        let f = Field::get(3, 2).unwrap();
        assert_eq!(f.primitive().order(), Some(8));
        assert_eq!(f.elem(3).order(), Some(4));
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::of_order(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a + (-a), f.zero());
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), f.one());
                }
                assert_eq!((a + a.frobenius()).frobenius(), a.frobenius() + a.frobenius().frobenius());
                for &b in &els {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!((a * b).frobenius(), a.frobenius() * b.frobenius());
                    assert_eq!((a + b).frobenius(), a.frobenius() + b.frobenius());
                    for &c in &els {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn aut_order_and_fixed_field() {
        let f = Field::get(2, 4).unwrap();
        for fp in 0..4 {
            let d = FieldAut::new(f, fp);
            assert_eq!(d.fixed_field().len() as u32, d.fixed_field_order());
            for x in f.elements() {
                let mut y = x;
                for _ in 0..d.order() {
                    y = d.apply(y);
                }
                assert_eq!(y, x);
            }
        }
        assert_eq!(FieldAut::new(f, 2).order(), 2);
        assert_eq!(FieldAut::new(f, 2).fixed_field_order(), 4);
    }

    #[test]
    fn norm_examples() {
        let f4 = Field::of_order(4).unwrap();
        let d = FieldAut::new(f4, 1);
        assert!(field_norm(f4.zero(), &d).is_zero());
        for x in f4.elements().skip(1) {
            assert_eq!(field_norm(x, &d), f4.one());
        }
        let f9 = Field::of_order(9).unwrap();
        let d9 = FieldAut::new(f9, 1);
        let mut image: Vec<u32> = f9.elements().map(|x| field_norm(x, &d9).value()).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, vec![0, 1, 2]);
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        for (p, a, b) in [(2, 1, 2), (2, 2, 4), (5, 1, 2), (5, 2, 4), (3, 1, 2)] {
            let s = Field::get(p, a).unwrap();
            let t = Field::get(p, b).unwrap();
            let e = Embedding::between(s, t).unwrap();
            for x in s.elements() {
                for y in s.elements() {
                    assert_eq!(e.apply(x + y), e.apply(x) + e.apply(y));
                    assert_eq!(e.apply(x * y), e.apply(x) * e.apply(y));
                }
            }
        }
        assert!(Embedding::between(Field::get(2, 2).unwrap(), Field::get(2, 3).unwrap()).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::get(4, 1).is_err());
        assert!(Field::get(2, 0).is_err());
        assert!(Field::of_order(6).is_err());
    }
}

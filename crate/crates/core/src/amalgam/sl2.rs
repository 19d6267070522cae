use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::field::{Field, FieldAut, FqElem};
use crate::matrix::RingMatrix;

/// An element `[[a, b], [c, d]]` of `SL_2(k)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Sl2 {
    pub a: FqElem,
    pub b: FqElem,
    pub c: FqElem,
    pub d: FqElem,
}

impl fmt::Debug for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Sl2 {
    pub fn new(a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Option<Sl2> {
        let m = Sl2 { a, b, c, d };
        (a * d - b * c).is_one().then_some(m)
    }

    pub fn identity(f: &'static Field) -> Sl2 {
        Sl2 { a: f.one(), b: f.zero(), c: f.zero(), d: f.one() }
    }

    pub fn field(&self) -> &'static Field {
        self.a.field()
    }

    /// `x₊(λ) = [[1, λ], [0, 1]]`.
    pub fn x_plus(l: FqElem) -> Sl2 {
        let f = l.field();
        Sl2 { a: f.one(), b: l, c: f.zero(), d: f.one() }
    }

    /// `x₋(λ) = [[1, 0], [λ, 1]]`.
    pub fn x_minus(l: FqElem) -> Sl2 {
        let f = l.field();
        Sl2 { a: f.one(), b: f.zero(), c: l, d: f.one() }
    }

    /// `diag(u, u⁻¹)`.
    pub fn torus(u: FqElem) -> Sl2 {
        let f = u.field();
        Sl2 { a: u, b: f.zero(), c: f.zero(), d: u.inv().expect("torus parameter is nonzero") }
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Sl2 {
        Sl2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `A^τ = ᵗA⁻¹`.
    pub fn tau(&self) -> Sl2 {
        Sl2 { a: self.d, b: -self.c, c: -self.b, d: self.a }
    }

    pub fn twist(&self, aut: &FieldAut) -> Sl2 {
        Sl2 { a: aut.apply(self.a), b: aut.apply(self.b), c: aut.apply(self.c), d: aut.apply(self.d) }
    }

    pub fn to_matrix(&self) -> RingMatrix<FqElem> {
        RingMatrix::new(2, 2, vec![self.a, self.b, self.c, self.d]).unwrap()
    }

    pub fn random<R: Rng>(f: &'static Field, rng: &mut R) -> Sl2 {
        let q = f.order();
        loop {
            let a = f.elem(rng.gen_range(0..q));
            let b = f.elem(rng.gen_range(0..q));
            let c = f.elem(rng.gen_range(0..q));
            if !a.is_zero() {
                let d = (f.one() + b * c) / a;
                return Sl2 { a, b, c, d };
            }
        }
    }

    /// Every element of `SL_2(k)`.
    pub fn all(f: &'static Field) -> Vec<Sl2> {
        let els: Vec<_> = f.elements().collect();
        let mut out = Vec::new();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    for &d in &els {
                        if let Some(m) = Sl2::new(a, b, c, d) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Generating set `{x₊(λ), x₋(λ) : λ in a prime-field basis} ∪ {diag(u, u⁻¹)}`, `u` primitive.
pub fn sl2_generators(f: &'static Field) -> Vec<Sl2> {
    let basis = f.prime_basis();
    let mut g: Vec<Sl2> = basis.iter().map(|&l| Sl2::x_plus(l)).collect();
    g.extend(basis.iter().map(|&l| Sl2::x_minus(l)));
    if f.order() > 2 {
        g.push(Sl2::torus(f.primitive()));
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_of_sl2() {
        for q in [2u32, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            assert_eq!(Sl2::all(f).len() as u32, q * (q * q - 1));
        }
    }

    #[test]
    fn tau_is_transpose_inverse() {
        let f = Field::of_order(5).unwrap();
        for m in Sl2::all(f) {
            assert_eq!(m.tau().to_matrix(), m.inv().to_matrix().transpose());
            assert_eq!(m.mul(&m.inv()), Sl2::identity(f));
        }
    }
}

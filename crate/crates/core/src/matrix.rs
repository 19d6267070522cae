//! Dense matrices over the supported rings, with exact determinants and inverses
//! over the commutative ones.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::laurent::LaurentPoly;
use crate::skew::SkewLaurentPoly;

/// Ring operations needed by [`RingMatrix`]. Constants come from an existing element,
/// since rings here are parameterized at runtime.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

/// Commutative integral domains with exact division.
pub trait CommRing: Ring {
    /// `self / d` when exact.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    fn unit_inverse(&self) -> Option<Self>;
}

macro_rules! ring_by_ops {
    ($t:ty, $($zero:tt)*) => {
        impl Ring for $t {
            fn zero_like(&self) -> Self {
                let s = self;
                ($($zero)*)(s).0
            }
            fn one_like(&self) -> Self {
                let s = self;
                ($($zero)*)(s).1
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn plus(&self, other: &Self) -> Self {
                self.clone() + other.clone()
            }
            fn minus(&self, other: &Self) -> Self {
                self.clone() - other.clone()
            }
            fn negated(&self) -> Self {
                -self.clone()
            }
            fn times(&self, other: &Self) -> Self {
                self.clone() * other.clone()
            }
        }
    };
}

ring_by_ops!(FqElem, |s: &FqElem| (s.field().zero(), s.field().one()));
ring_by_ops!(LaurentPoly, |s: &LaurentPoly| (LaurentPoly::zero(s.field()), LaurentPoly::one(s.field())));
ring_by_ops!(SkewLaurentPoly, |s: &SkewLaurentPoly| (
    SkewLaurentPoly::zero(s.delta()),
    SkewLaurentPoly::one(s.delta())
));

impl CommRing for FqElem {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| *self * i)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl CommRing for LaurentPoly {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        LaurentPoly::exact_div(self, d)
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// Dense row-major matrix. Dimensions are always positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<RingMatrix<R>> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::SizeMismatch {
                expected: format!("{rows}x{cols} > 0"),
                got: format!("{} entries", entries.len()),
            });
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> RingMatrix<R> {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RingMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize, one: &R) -> RingMatrix<R> {
        let zero = one.zero_like();
        RingMatrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros(rows: usize, cols: usize, zero: &R) -> RingMatrix<R> {
        RingMatrix::from_fn(rows, cols, |_, _| zero.clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn one(&self) -> R {
        self.entries[0].one_like()
    }

    pub fn zero(&self) -> R {
        self.entries[0].zero_like()
    }

    pub fn identity_like(&self) -> RingMatrix<R> {
        RingMatrix::identity(self.rows, &self.one())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == e.one_like()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> RingMatrix<S> {
        RingMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<RingMatrix<S>> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn transpose(&self) -> RingMatrix<R> {
        RingMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same(&self, other: &RingMatrix<R>) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::SizeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.plus(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn try_sub(&self, other: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.minus(b)).collect();
        Ok(RingMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn neg(&self) -> RingMatrix<R> {
        self.map(|x| x.negated())
    }

    /// The ordinary product `Σ_j a_ij b_jk`.
    pub fn try_mul(&self, other: &RingMatrix<R>) -> Result<RingMatrix<R>> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch {
                expected: format!("{} rows", self.cols),
                got: format!("{} rows", other.rows),
            });
        }
        let zero = self.zero();
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = zero.clone();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(j, k);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(b));
                }
                out.push(acc);
            }
        }
        Ok(RingMatrix { rows: self.rows, cols: other.cols, entries: out })
    }

    /// Ordinary product; panics on shape mismatch.
    pub fn mul(&self, other: &RingMatrix<R>) -> RingMatrix<R> {
        self.try_mul(other).expect("matrix shapes do not chain")
    }

    pub fn pow(&self, e: u32) -> RingMatrix<R> {
        (0..e).fold(self.identity_like(), |acc, _| acc.mul(self))
    }

    pub fn scale_left(&self, c: &R) -> RingMatrix<R> {
        self.map(|x| c.times(x))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RingMatrix<R> {
        RingMatrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Drop row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> RingMatrix<R> {
        RingMatrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            self.get(i + (i >= r) as usize, j + (j >= c) as usize).clone()
        })
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &RingMatrix<R>) -> RingMatrix<R> {
        let zero = self.zero();
        RingMatrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => zero.clone(),
            }
        })
    }

    /// Commutator `a b a⁻¹ b⁻¹` given the inverses.
    pub fn commutator_with(a: &Self, ai: &Self, b: &Self, bi: &Self) -> Self {
        a.mul(b).mul(ai).mul(bi)
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.cols)
    }
}

impl<R: CommRing> RingMatrix<R> {
    /// Determinant: cofactor expansion up to size 6, fraction-free elimination above.
    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows <= 6 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    pub fn det_cofactor(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return self.entries[0].clone();
        }
        if n == 2 {
            return self.get(0, 0).times(self.get(1, 1)).minus(&self.get(0, 1).times(self.get(1, 0)));
        }
        let mut acc = self.zero();
        for j in 0..n {
            let a = self.get(0, j);
            if a.is_zero() {
                continue;
            }
            let term = a.times(&self.minor(0, j).det_cofactor());
            acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
        }
        acc
    }

    /// Bareiss elimination with exact division by the previous pivot.
    pub fn det_bareiss(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        let mut m: Vec<Vec<R>> = self.rows_iter().map(|r| r.to_vec()).collect();
        let mut prev = self.one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return self.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].times(&m[i][j]).minus(&m[i][k].times(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = self.zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            d.negated()
        } else {
            d
        }
    }

    /// Returns `(d, E)` with `E · self = d · I`, i.e. `E = d · self⁻¹`, by fraction-free
    /// Gauss-Jordan. `d` is zero when the matrix is singular.
    pub fn scaled_inverse(&self) -> (R, RingMatrix<R>) {
        assert!(self.is_square());
        let n = self.rows;
        let one = self.one();
        let zero = self.zero();
        let mut m: Vec<Vec<R>> = (0..n)
            .map(|i| {
                let mut row = self.rows_iter().nth(i).unwrap().to_vec();
                row.extend((0..n).map(|j| if i == j { one.clone() } else { zero.clone() }));
                row
            })
            .collect();
        let mut prev = one.clone();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => m.swap(k, r),
                    None => return (zero.clone(), RingMatrix::zeros(n, n, &zero)),
                }
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    let num = m[k][k].times(&m[i][j]).minus(&m[i][k].times(&m[k][j]));
                    m[i][j] = num.exact_div(&prev).expect("Jordan-Bareiss division is exact");
                }
                m[i][k] = zero.clone();
            }
            prev = m[k][k].clone();
        }
        // Rows other than the last pivot row lag one step behind; rescale them.
        let d = m[n - 1][n - 1].clone();
        let e = RingMatrix::from_fn(n, n, |i, j| {
            let v = &m[i][n + j];
            if i == n - 1 {
                v.clone()
            } else {
                v.times(&d).exact_div(&m[i][i]).expect("rescale is exact")
            }
        });
        (d, e)
    }

    /// Inverse when the determinant is a unit.
    pub fn inverse(&self) -> Result<RingMatrix<R>> {
        let (d, e) = self.scaled_inverse();
        let di = d.unit_inverse().ok_or(Error::NotInvertible)?;
        Ok(e.map(|x| x.times(&di)))
    }

    /// Classical adjugate via cofactors.
    pub fn adjugate(&self) -> RingMatrix<R> {
        let n = self.rows;
        if n == 1 {
            return self.identity_like();
        }
        RingMatrix::from_fn(n, n, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                c.negated()
            }
        })
    }
}

impl RingMatrix<LaurentPoly> {
    /// Entrywise `t ↦ t⁻¹`.
    pub fn sigma(&self) -> RingMatrix<LaurentPoly> {
        self.map(|x| x.sigma())
    }
}

impl<R: fmt::Debug> fmt::Debug for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in self.entries.chunks(self.cols) {
            write!(f, "  ")?;
            for (k, e) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e:?}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<R: Serialize> Serialize for RingMatrix<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[R]> = self.entries.chunks(self.cols).collect();
        let mut st = s.serialize_struct("RingMatrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_laurent(f: &'static Field, rng: &mut ChaCha8Rng) -> LaurentPoly {
        let lo = rng.gen_range(-2..=1);
        let c: Vec<FqElem> = (0..rng.gen_range(1..=3)).map(|_| f.elem(rng.gen_range(0..f.order()))).collect();
        LaurentPoly::new(f, lo, &c)
    }

    fn random_matrix(n: usize, f: &'static Field, rng: &mut ChaCha8Rng) -> RingMatrix<LaurentPoly> {
        RingMatrix::from_fn(n, n, |_, _| random_laurent(f, rng))
    }

    #[test]
    fn cofactor_matches_bareiss() {
        let f = Field::of_order(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6 {
            for _ in 0..5 {
                let m = random_matrix(n, f, &mut rng);
                assert_eq!(m.det_cofactor(), m.det_bareiss());
            }
        }
    }

    #[test]
    fn det_multiplicative() {
        let f = Field::of_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in [2, 3, 7] {
            let a = random_matrix(n, f, &mut rng);
            let b = random_matrix(n, f, &mut rng);
            assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
        }
    }

    #[test]
    fn scaled_inverse_matches_adjugate() {
        let f = Field::of_order(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            let a = random_matrix(n, f, &mut rng);
            let (d, e) = a.scaled_inverse();
            assert_eq!(e.mul(&a), RingMatrix::identity(n, &d));
            let det = a.det();
            if d == det {
                assert_eq!(e, a.adjugate());
            } else {
                assert_eq!(d, det.negated());
            }
        }
    }

    #[test]
    fn inverse_of_unimodular() {
        let f = Field::of_order(5).unwrap();
        let t = LaurentPoly::t(f);
        let one = LaurentPoly::one(f);
        let zero = LaurentPoly::zero(f);
        // Upper unitriangular times lower unitriangular.
        let u = RingMatrix::new(2, 2, vec![one.clone(), &t + &one, zero.clone(), one.clone()]).unwrap();
        let l = RingMatrix::new(2, 2, vec![one.clone(), zero, t.sigma(), one]).unwrap();
        let g = u.mul(&l);
        let gi = g.inverse().unwrap();
        assert!(g.mul(&gi).is_identity());
        assert!(gi.mul(&g).is_identity());
    }

    #[test]
    fn singular_is_not_invertible() {
        let f = Field::of_order(5).unwrap();
        let z = RingMatrix::zeros(3, 3, &f.zero());
        assert_eq!(z.inverse(), Err(Error::NotInvertible));
        assert!(z.det().is_zero());
    }
}

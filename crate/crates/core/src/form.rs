//! The σ-sesquilinear form `β(u, v) = ᵗu B v^σ` on `A^{2n}`, `A = k[t, t⁻¹]`,
//! with Gram matrix `B = [[0, I], [tI, 0]]`, and its adjoint involution θ.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::matrix::RingMatrix;

pub type LMat = RingMatrix<LaurentPoly>;

/// The Gram matrix `B` and its precomputed companions.
#[derive(Clone, Debug)]
pub struct GramForm {
    pub n: usize,
    pub b: LMat,
    b_inv: LMat,
    bt: LMat,
    bt_inv: LMat,
}

impl GramForm {
    pub fn new(field: &'static Field, n: usize) -> GramForm {
        let t = LaurentPoly::t(field);
        let one = LaurentPoly::one(field);
        let zero = LaurentPoly::zero(field);
        let anti = |top: &LaurentPoly, bottom: &LaurentPoly| {
            RingMatrix::from_fn(2 * n, 2 * n, |i, j| {
                if i < n && j == i + n {
                    top.clone()
                } else if i >= n && j + n == i {
                    bottom.clone()
                } else {
                    zero.clone()
                }
            })
        };
        let tinv = t.inv().unwrap();
        let b = anti(&one, &t);
        let b_inv = anti(&tinv, &one);
        let bt = b.transpose();
        let bt_inv = b_inv.transpose();
        GramForm { n, b, b_inv, bt, bt_inv }
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn field(&self) -> &'static Field {
        self.b.get(0, self.n).field()
    }

    pub fn b_inv(&self) -> &LMat {
        &self.b_inv
    }

    /// `t · ᵗB^σ = B`.
    pub fn gram_identity_holds(&self) -> bool {
        let t = LaurentPoly::t(self.field());
        self.bt.sigma().scale_left(&t) == self.b
    }

    /// `β(u, v) = ᵗu B v^σ`.
    pub fn beta(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> Result<LaurentPoly> {
        let d = self.dim();
        if u.len() != d || v.len() != d {
            return Err(Error::SizeMismatch { expected: format!("{d}"), got: format!("{}, {}", u.len(), v.len()) });
        }
        let n = self.n;
        let t = LaurentPoly::t(self.field());
        let mut acc = LaurentPoly::zero(self.field());
        for i in 0..n {
            acc = &acc + &(&u[i] * &v[i + n].sigma());
            acc = &acc + &(&(&u[i + n] * &t) * &v[i].sigma());
        }
        Ok(acc)
    }

    /// `θ(g) = ᵗB⁻¹ ᵗ(g⁻¹)^σ ᵗB`, with `g⁻¹` supplied.
    pub fn theta_with_inverse(&self, g_inv: &LMat) -> LMat {
        self.bt_inv.mul(&g_inv.transpose().sigma()).mul(&self.bt)
    }

    /// `θ(g)` for `g` with unit determinant.
    pub fn theta(&self, g: &LMat) -> Result<LMat> {
        self.check_square(g)?;
        Ok(self.theta_with_inverse(&g.inverse()?))
    }

    /// `ᵗg B g^σ = B`.
    pub fn is_isometry(&self, g: &LMat) -> bool {
        g.rows() == self.dim() && g.is_square() && g.transpose().mul(&self.b).mul(&g.sigma()) == self.b
    }

    /// Columns `a_j*` with `β(a_i, a_j*) = δ_ij`, i.e. `P* = (B⁻¹ ᵗP⁻¹)^σ`.
    pub fn right_dual_basis(&self, basis: &LMat) -> Result<LMat> {
        self.check_square(basis)?;
        let inv = basis.inverse()?;
        Ok(self.b_inv.mul(&inv.transpose()).sigma())
    }

    fn check_square(&self, g: &LMat) -> Result<()> {
        if g.rows() != self.dim() || !g.is_square() {
            return Err(Error::SizeMismatch {
                expected: format!("{0}x{0}", self.dim()),
                got: format!("{}x{}", g.rows(), g.cols()),
            });
        }
        Ok(())
    }
}

/// `I + c t^e E_ij` and its inverse.
pub fn transvection(field: &'static Field, size: usize, i: usize, j: usize, c: LaurentPoly) -> (LMat, LMat) {
    assert_ne!(i, j);
    let id = RingMatrix::identity(size, &LaurentPoly::one(field));
    let mut g = id.clone();
    let mut gi = id;
    g.set(i, j, c.clone());
    gi.set(i, j, -c);
    (g, gi)
}

/// A random element of `SL_d(k[t, t⁻¹])` as a product of `len` transvections with
/// monomial entries of exponent in `[-deg, deg]`, together with its inverse.
pub fn random_sl<R: Rng>(field: &'static Field, d: usize, len: usize, deg: i64, rng: &mut R) -> (LMat, LMat) {
    let id = RingMatrix::identity(d, &LaurentPoly::one(field));
    let (mut g, mut gi) = (id.clone(), id);
    for _ in 0..len {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let c = field.elem(rng.gen_range(1..field.order()));
        let e = rng.gen_range(-deg..=deg);
        let (x, xi) = transvection(field, d, i, j, LaurentPoly::monomial(c, e));
        g = g.mul(&x);
        gi = xi.mul(&gi);
    }
    (g, gi)
}

pub fn random_vector<R: Rng>(field: &'static Field, d: usize, deg: i64, rng: &mut R) -> Vec<LaurentPoly> {
    (0..d)
        .map(|_| {
            let lo = rng.gen_range(-deg..=deg);
            let c: Vec<_> = (0..rng.gen_range(1..=2)).map(|_| field.elem(rng.gen_range(0..field.order()))).collect();
            LaurentPoly::new(field, lo, &c)
        })
        .collect()
}

pub fn mat_vec(g: &LMat, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    (0..g.rows())
        .map(|i| {
            (0..g.cols()).fold(LaurentPoly::zero(v[0].field()), |acc, j| &acc + &(g.get(i, j) * &v[j]))
        })
        .collect()
}

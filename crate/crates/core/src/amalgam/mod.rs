//! Curtis-Tits amalgams of type Ã_{n-1} over finite fields and their matrix completions.
//!
//! [`CTAmalgam`] is the abstract amalgam: `SL_2(k)` at every node of the cyclic diagram,
//! `SL_3(k)` on adjacent pairs, `SL_2 × SL_2` elsewhere, with the closing edge twisted.
//! A [`Completion`] realizes the node groups inside a single matrix group; the
//! relation suite in [`relations`] checks that the realization is faithful to the amalgam.

pub mod l_delta;
pub mod l_tau;
pub mod relations;
pub mod sl2;
pub mod standard_pair;

use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldAut, FqElem};
use crate::matrix::RingMatrix;

pub use l_delta::LDelta;
pub use l_tau::LTau;
pub use relations::{verify_amalgam_relations, RelationReport};
pub use sl2::{sl2_generators, Sl2};
pub use standard_pair::{check_standard_pair, compute_torus_di, StandardPairWitness};

pub type FMat = RingMatrix<FqElem>;

/// `δ ∈ Aut(k) × ⟨τ⟩`: a Frobenius power, optionally composed with transpose-inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Twist {
    pub frobenius_power: u32,
    pub tau: bool,
}

impl Twist {
    pub const IDENTITY: Twist = Twist { frobenius_power: 0, tau: false };

    pub fn aut(&self, f: &'static Field) -> FieldAut {
        FieldAut::new(f, self.frobenius_power as i64)
    }

    pub fn apply(&self, a: &Sl2) -> Sl2 {
        let b = a.twist(&self.aut(a.field()));
        if self.tau {
            b.tau()
        } else {
            b
        }
    }

    pub fn inverse(&self, f: &'static Field) -> Twist {
        let fp = FieldAut::new(f, -(self.frobenius_power as i64)).frobenius_power();
        Twist { frobenius_power: fp, tau: self.tau }
    }
}

/// Position of a node group inside an edge group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Slot {
    /// `A ↦ [[A, 0], [0, 1]]` in `SL_3`.
    UpperLeft,
    /// `A ↦ [[1, 0], [0, A]]` in `SL_3`.
    LowerRight,
    /// `A ↦ A ⊕ I_2` in `SL_2 × SL_2`.
    FirstFactor,
    /// `A ↦ I_2 ⊕ A` in `SL_2 × SL_2`.
    SecondFactor,
}

/// The inclusion `ψ_{i,j}: G_i → G_{i,j}` as a printable formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionMap {
    pub node: usize,
    pub slot: Slot,
    pub twist: Twist,
}

impl InclusionMap {
    pub fn apply(&self, a: &Sl2) -> FMat {
        let a = self.twist.apply(a);
        let f = a.field();
        let m = a.to_matrix();
        let one = RingMatrix::identity(1, &f.one());
        let i2 = RingMatrix::identity(2, &f.one());
        match self.slot {
            Slot::UpperLeft => m.direct_sum(&one),
            Slot::LowerRight => one.direct_sum(&m),
            Slot::FirstFactor => m.direct_sum(&i2),
            Slot::SecondFactor => i2.direct_sum(&m),
        }
    }
}

/// The edge group `G_{i,j}` with its two inclusions.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeGroup {
    pub i: usize,
    pub j: usize,
    pub adjacent: bool,
    pub maps: [InclusionMap; 2],
}

/// The amalgam `𝒜^δ` on the cyclic diagram with nodes `1..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct CTAmalgam {
    pub n: usize,
    pub q: u32,
    pub twist: Twist,
    #[serde(skip)]
    pub field: &'static Field,
    pub edges: Vec<EdgeGroup>,
    pub warnings: Vec<String>,
}

/// `i` and `j` are neighbours on the `n`-cycle.
pub fn adjacent(i: usize, j: usize, n: usize) -> bool {
    let d = (i + n - j) % n;
    d == 1 || d == n - 1
}

pub fn build_a_delta(n: usize, q: u32, twist: Twist) -> Result<CTAmalgam> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("the cyclic diagram needs n ≥ 3, got {n}")));
    }
    let field = Field::of_order(q)?;
    let mut warnings = Vec::new();
    if n < 4 {
        warnings.push(format!("n = {n} is below the standing hypothesis n ≥ 4"));
    }
    if q < 4 {
        warnings.push(format!("q = {q} is below the standing hypothesis |k| ≥ 4"));
    }
    let plain = |node, slot| InclusionMap { node, slot, twist: Twist::IDENTITY };
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let edge = if j == i + 1 {
                EdgeGroup { i, j, adjacent: true, maps: [plain(i, Slot::UpperLeft), plain(j, Slot::LowerRight)] }
            } else if i == 1 && j == n {
                // G_{n,1}: G_n in the upper block, G_1 in the lower block through δ.
                EdgeGroup {
                    i,
                    j,
                    adjacent: true,
                    maps: [InclusionMap { node: 1, slot: Slot::LowerRight, twist }, plain(n, Slot::UpperLeft)],
                }
            } else {
                EdgeGroup {
                    i,
                    j,
                    adjacent: false,
                    maps: [plain(i, Slot::FirstFactor), plain(j, Slot::SecondFactor)],
                }
            };
            edges.push(edge);
        }
    }
    Ok(CTAmalgam { n, q, twist, field, edges, warnings })
}

impl CTAmalgam {
    pub fn edge(&self, i: usize, j: usize) -> Option<&EdgeGroup> {
        let (a, b) = (i.min(j), i.max(j));
        self.edges.iter().find(|e| e.i == a && e.j == b)
    }

    /// `ψ_{i,j}(A)`.
    pub fn psi(&self, i: usize, j: usize, a: &Sl2) -> Option<FMat> {
        let e = self.edge(i, j)?;
        e.maps.iter().find(|m| m.node == i).map(|m| m.apply(a))
    }
}

/// A root element `X_{i,j}(λ) = I + λ E_ij` of `SL_3(k)`, indices `1..=3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootElement {
    pub i: usize,
    pub j: usize,
    pub lambda: FqElem,
    pub matrix: FMat,
}

impl RootElement {
    pub fn new(i: usize, j: usize, lambda: FqElem) -> Result<RootElement> {
        if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
            return Err(Error::InvalidParameters(format!("({i}, {j}) is not a root of SL_3")));
        }
        let f = lambda.field();
        let mut m = RingMatrix::identity(3, &f.one());
        m.set(i - 1, j - 1, lambda);
        Ok(RootElement { i, j, lambda, matrix: m })
    }

    /// Recognize `m` as an element of some `X_{i,j}`.
    pub fn recognize(m: &FMat) -> Option<RootElement> {
        for i in 1..=3 {
            for j in 1..=3 {
                if i == j {
                    continue;
                }
                let r = RootElement::new(i, j, *m.get(i - 1, j - 1)).ok()?;
                if r.matrix == *m {
                    return Some(r);
                }
            }
        }
        None
    }
}

/// `X_{i,j}(λ)^τ`, returned as the root element of `X_{j,i}` it equals.
pub fn tau_on_root_groups(i: usize, j: usize, lambda: FqElem) -> Result<RootElement> {
    let x = RootElement::new(i, j, lambda)?;
    let t = x.matrix.inverse()?.transpose();
    let r = RootElement::new(j, i, *t.get(j - 1, i - 1))?;
    if r.matrix != t {
        return Err(Error::InvalidParameters("τ image is not a root element".into()));
    }
    Ok(r)
}

/// A completion: maps `φ_k: SL_2(k) → G` for `k = 1..=n+1` into a group with explicit product.
pub trait Completion: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync + Serialize;

    fn name(&self) -> String;
    fn rank(&self) -> usize;
    fn field(&self) -> &'static Field;
    /// `φ_k(A)` for `1 ≤ k ≤ n + 1`.
    fn phi(&self, k: usize, a: &Sl2) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn is_identity(&self, x: &Self::Elem) -> bool;
    /// The automorphism `η` with `φ_{n+1}(A) = φ_1(η(A))`.
    fn closing_twist(&self, a: &Sl2) -> Sl2;
}

/// `A` placed on rows and columns `at, at+1` of the identity of the given size.
pub fn place_sl2(a: &Sl2, at: usize, size: usize) -> FMat {
    let f = a.field();
    let m = [[a.a, a.b], [a.c, a.d]];
    RingMatrix::from_fn(size, size, |i, j| {
        if (at..at + 2).contains(&i) && (at..at + 2).contains(&j) {
            m[i - at][j - at]
        } else if i == j {
            f.one()
        } else {
            f.zero()
        }
    })
}

/// `φ_k` applied to the standard generators, for `k = 1..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorTable<E> {
    pub name: String,
    pub generators: Vec<Sl2>,
    pub images: Vec<Vec<E>>,
}

pub fn generator_table<C: Completion>(c: &C) -> GeneratorTable<C::Elem> {
    let gens = sl2_generators(c.field());
    let images = (1..=c.rank()).map(|k| gens.iter().map(|a| c.phi(k, a)).collect()).collect();
    GeneratorTable { name: c.name(), generators: gens, images }
}

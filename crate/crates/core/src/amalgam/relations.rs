//! Exact relation checks for a [`Completion`] against the amalgam it should realize.
//!
//! For an adjacent pair `(k, k+1)` the root elements are transported as
//! `X12 = φ_k(x₊)`, `X21 = φ_k(x₋)`, `X23 = φ_{k+1}(x₊)`, `X32 = φ_{k+1}(x₋)`,
//! with `X13(λ) = [X12(λ), X23(1)]` and `X31(λ) = [X32(λ), X21(1)]`. Every relation
//! is first evaluated in `SL_3(k)` to fix its right-hand side, then in the completion.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{adjacent, sl2_generators, Completion, FMat, Sl2};
use crate::field::{Field, FqElem};
use crate::matrix::RingMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    pub witness: Option<String>,
}

impl RelationCheck {
    fn new(name: impl Into<String>) -> RelationCheck {
        RelationCheck { name: name.into(), passed: 0, failed: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub completion: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    pub fn check(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Sym {
    X12,
    X21,
    X23,
    X32,
    H1,
    H2,
}

#[derive(Clone, Copy, Debug)]
struct Letter(Sym, FqElem);

type Word = Vec<Letter>;

fn inverse(w: &Word) -> Word {
    w.iter()
        .rev()
        .map(|&Letter(s, p)| match s {
            Sym::H1 | Sym::H2 => Letter(s, p.inv().unwrap()),
            _ => Letter(s, -p),
        })
        .collect()
}

fn comm(a: &Word, b: &Word) -> Word {
    [a.clone(), b.clone(), inverse(a), inverse(b)].concat()
}

fn x(s: Sym, p: FqElem) -> Word {
    vec![Letter(s, p)]
}

fn x13(l: FqElem) -> Word {
    comm(&x(Sym::X12, l), &x(Sym::X23, l.field().one()))
}

fn x31(l: FqElem) -> Word {
    comm(&x(Sym::X32, l), &x(Sym::X21, l.field().one()))
}

fn root_word(i: usize, j: usize, l: FqElem) -> Word {
    match (i, j) {
        (1, 2) => x(Sym::X12, l),
        (2, 1) => x(Sym::X21, l),
        (2, 3) => x(Sym::X23, l),
        (3, 2) => x(Sym::X32, l),
        (1, 3) => x13(l),
        (3, 1) => x31(l),
        _ => unreachable!("not a root of SL_3"),
    }
}

fn letter_sl2(l: &Letter) -> (bool, Sl2) {
    let Letter(s, p) = *l;
    match s {
        Sym::X12 => (false, Sl2::x_plus(p)),
        Sym::X21 => (false, Sl2::x_minus(p)),
        Sym::H1 => (false, Sl2::torus(p)),
        Sym::X23 => (true, Sl2::x_plus(p)),
        Sym::X32 => (true, Sl2::x_minus(p)),
        Sym::H2 => (true, Sl2::torus(p)),
    }
}

fn eval_reference(w: &Word, f: &'static Field) -> FMat {
    let one = RingMatrix::identity(1, &f.one());
    w.iter().fold(RingMatrix::identity(3, &f.one()), |acc, l| {
        let (second, a) = letter_sl2(l);
        let m = if second { one.direct_sum(&a.to_matrix()) } else { a.to_matrix().direct_sum(&one) };
        acc.mul(&m)
    })
}

struct Evaluator<'a, C: Completion> {
    c: &'a C,
    k: usize,
    memo: HashMap<(bool, Sl2), C::Elem>,
}

impl<'a, C: Completion> Evaluator<'a, C> {
    fn letter(&mut self, l: &Letter) -> C::Elem {
        let key = letter_sl2(l);
        let (c, k) = (self.c, self.k);
        self.memo
            .entry(key)
            .or_insert_with(|| c.phi(if key.0 { k + 1 } else { k }, &key.1))
            .clone()
    }

    fn word(&mut self, w: &Word) -> C::Elem {
        let mut it = w.iter();
        let first = it.next().expect("non-empty word");
        let mut acc = self.letter(first);
        for l in it {
            let y = self.letter(l);
            acc = self.c.mul(&acc, &y);
        }
        acc
    }
}

/// One relation: `lhs = rhs`, where `rhs` is read off the reference value of `lhs`.
struct Relation {
    name: &'static str,
    lhs: Word,
    root: Option<(usize, usize)>,
}

fn relations_for(l: FqElem, m: FqElem, u: FqElem) -> Vec<Relation> {
    use Sym::*;
    let r = |name, lhs, root| Relation { name, lhs, root };
    vec![
        r("comm_12_23", comm(&x(X12, l), &x(X23, m)), Some((1, 3))),
        r("comm_21_32", comm(&x(X21, l), &x(X32, m)), Some((3, 1))),
        r("comm_12_32", comm(&x(X12, l), &x(X32, m)), None),
        r("comm_21_23", comm(&x(X21, l), &x(X23, m)), None),
        r("comm_12_13", comm(&x(X12, l), &x13(m)), None),
        r("comm_23_13", comm(&x(X23, l), &x13(m)), None),
        r("comm_21_31", comm(&x(X21, l), &x31(m)), None),
        r("comm_32_31", comm(&x(X32, l), &x31(m)), None),
        r("comm_23_31", comm(&x(X23, l), &x31(m)), Some((2, 1))),
        r("comm_31_12", comm(&x31(l), &x(X12, m)), Some((3, 2))),
        r("comm_13_32", comm(&x13(l), &x(X32, m)), Some((1, 2))),
        r("comm_21_13", comm(&x(X21, l), &x13(m)), Some((2, 3))),
        r("additive_13", [x13(l), x13(m)].concat(), Some((1, 3))),
        r("additive_31", [x31(l), x31(m)].concat(), Some((3, 1))),
        r("torus_1_on_23", [x(H1, u), x(X23, l), x(H1, u.inv().unwrap())].concat(), Some((2, 3))),
        r("torus_2_on_12", [x(H2, u), x(X12, l), x(H2, u.inv().unwrap())].concat(), Some((1, 2))),
        r("torus_1_on_13", [x(H1, u), x13(l), x(H1, u.inv().unwrap())].concat(), Some((1, 3))),
        r("torus_2_on_31", [x(H2, u), x31(l), x(H2, u.inv().unwrap())].concat(), Some((3, 1))),
    ]
}

/// Sample parameters: a prime-field basis plus `extra` random nonzero elements.
fn parameters(f: &'static Field, extra: usize, rng: &mut ChaCha8Rng) -> Vec<FqElem> {
    let mut ps = f.prime_basis();
    for _ in 0..extra {
        ps.push(f.elem(rng.gen_range(1..f.order())));
    }
    ps
}

fn sample_sl2(f: &'static Field, extra: usize, rng: &mut ChaCha8Rng) -> Vec<Sl2> {
    let mut s = sl2_generators(f);
    for _ in 0..extra {
        s.push(Sl2::random(f, rng));
    }
    s
}

fn steinberg_check<C: Completion>(c: &C, k: usize, params: &[FqElem], torus: &[FqElem]) -> RelationCheck {
    let f = c.field();
    let n = c.rank();
    let mut chk = RelationCheck::new(format!("steinberg_{}_{}", k, if k == n { 1 } else { k + 1 }));
    let mut ev = Evaluator { c, k, memo: HashMap::new() };
    for &l in params {
        for &m in params {
            for &u in torus {
                for rel in relations_for(l, m, u) {
                    let reference = eval_reference(&rel.lhs, f);
                    let rhs = match rel.root {
                        None => {
                            assert!(reference.is_identity(), "{} is not trivial in SL_3", rel.name);
                            None
                        }
                        Some((i, j)) => {
                            let w = root_word(i, j, *reference.get(i - 1, j - 1));
                            assert_eq!(eval_reference(&w, f), reference, "{} reference mismatch", rel.name);
                            Some(w)
                        }
                    };
                    let lhs_v = ev.word(&rel.lhs);
                    let ok = match &rhs {
                        None => c.is_identity(&lhs_v),
                        Some(w) => lhs_v == ev.word(w),
                    };
                    chk.record(ok, || format!("{} with λ={l}, μ={m}, u={u}", rel.name));
                }
            }
        }
    }
    chk
}

/// Run the full relation suite with `samples` random extras per family.
pub fn verify_amalgam_relations<C: Completion>(c: &C, samples: usize, seed: u64) -> RelationReport {
    let f = c.field();
    let n = c.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sl2s = sample_sl2(f, samples, &mut rng);
    let params = parameters(f, samples.min(2), &mut rng);
    let torus = if f.order() > 2 { vec![f.primitive()] } else { vec![f.one()] };
    let gens = sl2_generators(f);

    let mut checks = Vec::new();

    let mut ident = RelationCheck::new("identity");
    for k in 1..=n + 1 {
        let v = c.phi(k, &Sl2::identity(f));
        ident.record(c.is_identity(&v), || format!("φ_{k}(I) is not the identity"));
    }
    checks.push(ident);

    let per_k: Vec<(RelationCheck, RelationCheck)> = (1..=n + 1)
        .into_par_iter()
        .map(|k| {
            let mut hom = RelationCheck::new("homomorphism");
            let mut inj = RelationCheck::new("injective");
            let imgs: Vec<C::Elem> = sl2s.iter().map(|a| c.phi(k, a)).collect();
            for (i, a) in sl2s.iter().enumerate() {
                for (j, b) in sl2s.iter().enumerate() {
                    let ok = c.phi(k, &a.mul(b)) == c.mul(&imgs[i], &imgs[j]);
                    hom.record(ok, || format!("φ_{k}({a:?}·{b:?})"));
                    if i < j && a != b {
                        inj.record(imgs[i] != imgs[j], || format!("φ_{k}({a:?}) = φ_{k}({b:?})"));
                    }
                }
            }
            (hom, inj)
        })
        .collect();
    let mut hom = RelationCheck::new("homomorphism");
    let mut inj = RelationCheck::new("injective");
    for (h, i) in per_k {
        for (dst, src) in [(&mut hom, h), (&mut inj, i)] {
            dst.passed += src.passed;
            dst.failed += src.failed;
            if dst.witness.is_none() {
                dst.witness = src.witness;
            }
        }
    }
    checks.push(hom);
    checks.push(inj);

    let mut commute = RelationCheck::new("commute_nonadjacent");
    for i in 1..=n {
        for j in i + 1..=n {
            if adjacent(i, j, n) {
                continue;
            }
            for a in &gens {
                let x = c.phi(i, a);
                for b in &gens {
                    let y = c.phi(j, b);
                    let ok = c.mul(&x, &y) == c.mul(&y, &x);
                    commute.record(ok, || format!("φ_{i}({a:?}) and φ_{j}({b:?}) do not commute"));
                }
            }
        }
    }
    checks.push(commute);

    let steinberg: Vec<RelationCheck> =
        (1..=n).into_par_iter().map(|k| steinberg_check(c, k, &params, &torus)).collect();
    checks.extend(steinberg);

    let mut twist = RelationCheck::new("closing_twist");
    for a in &sl2s {
        let ok = c.phi(n + 1, a) == c.phi(1, &c.closing_twist(a));
        twist.record(ok, || format!("φ_{}({a:?}) ≠ φ_1({:?})", n + 1, c.closing_twist(a)));
    }
    checks.push(twist);

    checks.sort_by(|a, b| a.name.cmp(&b.name));
    RelationReport { completion: c.name(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `SL_3(k)` itself with `φ_1`, `φ_2` the two block embeddings and `n = 2`.
    struct Rank2 {
        f: &'static Field,
    }

    impl Completion for Rank2 {
        type Elem = FMat;
        fn name(&self) -> String {
            "sl3".into()
        }
        fn rank(&self) -> usize {
            2
        }
        fn field(&self) -> &'static Field {
            self.f
        }
        fn phi(&self, k: usize, a: &Sl2) -> FMat {
            let one = RingMatrix::identity(1, &self.f.one());
            if k % 2 == 1 {
                a.to_matrix().direct_sum(&one)
            } else {
                one.direct_sum(&a.to_matrix())
            }
        }
        fn mul(&self, x: &FMat, y: &FMat) -> FMat {
            x.mul(y)
        }
        fn is_identity(&self, x: &FMat) -> bool {
            x.is_identity()
        }
        fn closing_twist(&self, a: &Sl2) -> Sl2 {
            *a
        }
    }

    #[test]
    fn reference_group_satisfies_its_own_relations() {
        let c = Rank2 { f: Field::of_order(4).unwrap() };
        let r = verify_amalgam_relations(&c, 2, 0);
        let st = r.check("steinberg_1_2").unwrap();
        assert!(st.ok() && st.passed > 0);
        assert!(r.check("homomorphism").unwrap().ok());
    }
}

use ctlab::field::{field_norm, Field, FieldAut, FqElem};
use ctlab::{compose_endo, EndoR, LaurentPoly, SkewLaurentPoly};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = &'static Field> {
    prop::sample::select(vec![2u32, 3, 4, 5, 8, 9, 25, 27]).prop_map(|q| Field::of_order(q).unwrap())
}

fn elem(f: &'static Field) -> impl Strategy<Value = FqElem> {
    (0..f.order()).prop_map(move |v| f.elem(v))
}

fn laurent(f: &'static Field) -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(0..f.order(), 0..4))
        .prop_map(move |(lo, c)| LaurentPoly::new(f, lo, &c.iter().map(|&v| f.elem(v)).collect::<Vec<_>>()))
}

fn skew(d: FieldAut) -> impl Strategy<Value = SkewLaurentPoly> {
    let f = d.field();
    (-2i64..=2, prop::collection::vec(0..f.order(), 0..3))
        .prop_map(move |(lo, c)| SkewLaurentPoly::new(d, lo, &c.iter().map(|&v| f.elem(v)).collect::<Vec<_>>()))
}

fn gf4_delta() -> FieldAut {
    FieldAut::new(Field::of_order(4).unwrap(), 1)
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_strategy().prop_flat_map(|f| (Just(f), elem(f), elem(f), elem(f)))) {
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a + f.zero(), a);
        prop_assert_eq!(a - a, f.zero());
        if !a.is_zero() {
            prop_assert_eq!(a * a.inv().unwrap(), f.one());
        }
        let fr = FieldAut::new(f, 1);
        prop_assert_eq!(fr.apply(a * b + c), fr.apply(a) * fr.apply(b) + fr.apply(c));
    }

    #[test]
    fn sigma_and_eval_are_homomorphisms((f, x, y) in Just(Field::of_order(5).unwrap()).prop_flat_map(|f| (Just(f), laurent(f), laurent(f))), a in 1u32..5) {
        prop_assert_eq!((&x * &y).sigma(), &x.sigma() * &y.sigma());
        prop_assert_eq!(x.sigma().sigma(), x.clone());
        let a = f.elem(a);
        prop_assert_eq!((&x * &y).eval(a).unwrap(), x.eval(a).unwrap() * y.eval(a).unwrap());
        prop_assert_eq!((&x + &y).eval(a).unwrap(), x.eval(a).unwrap() + y.eval(a).unwrap());
    }

    #[test]
    fn skew_ring_is_associative(x in skew(gf4_delta()), y in skew(gf4_delta()), z in skew(gf4_delta())) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn compose_endo_is_associative_and_acts(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let d = gf4_delta();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f = d.field();
        let mut rs = || {
            let c: Vec<FqElem> = (0..2).map(|_| f.elem(rng.gen_range(0..4))).collect();
            SkewLaurentPoly::new(d, rng.gen_range(-1..=1), &c)
        };
        let mut endo = || EndoR::from_fn(3, |_, _| rs());
        let (a, b, c) = (endo(), endo(), endo());
        let ab = compose_endo(&a, &b).unwrap();
        prop_assert_eq!(compose_endo(&ab, &c).unwrap(), compose_endo(&a, &compose_endo(&b, &c).unwrap()).unwrap());
        let v: Vec<SkewLaurentPoly> = (0..3).map(|_| rs()).collect();
        prop_assert_eq!(ab.apply(&v), a.apply(&b.apply(&v)));
    }
}

#[test]
fn norm_examples() {
    let f4 = Field::of_order(4).unwrap();
    let d = FieldAut::new(f4, 1);
    assert_eq!(field_norm(f4.zero(), &d), f4.zero());
    assert!(f4.elements().filter(|x| !x.is_zero()).all(|x| field_norm(x, &d).is_one()));
    let f9 = Field::of_order(9).unwrap();
    let d9 = FieldAut::new(f9, 1);
    let mut image: Vec<u32> = f9.elements().map(|x| field_norm(x, &d9).value()).collect();
    image.sort_unstable();
    image.dedup();
    let gf3: Vec<u32> = d9.fixed_field().iter().map(|x| x.value()).collect();
    assert_eq!(image.len(), 3);
    assert!(image.iter().all(|v| gf3.contains(v)));
}

#[test]
fn laurent_examples() {
    let f = Field::of_order(5).unwrap();
    let t = LaurentPoly::t(f);
    assert_eq!(t.sigma(), t.inv().unwrap());
    let p = LaurentPoly::new(f, 0, &[f.one(), f.from_int(2)]);
    assert_eq!(p.sigma(), &LaurentPoly::one(f) + &LaurentPoly::monomial(f.from_int(2), -1));
    assert_eq!(t.eval(-f.one()).unwrap(), f.from_int(4));
    // t + t⁻¹ at ζ is ζ + ζ^q
    let e = Field::of_order(25).unwrap();
    let zeta = e.elements().find(|x| x.order() == Some(6)).unwrap();
    let te = LaurentPoly::t(e);
    let s = &te + &te.inv().unwrap();
    assert_eq!(s.eval(zeta).unwrap(), zeta + zeta.pow(5));
}

#[test]
fn skew_monomials() {
    let d = gf4_delta();
    let f = d.field();
    let (a, b) = (f.primitive(), f.primitive() + f.one());
    let lhs = &SkewLaurentPoly::monomial(d, a, 1) * &SkewLaurentPoly::monomial(d, b, 1);
    assert_eq!(lhs, SkewLaurentPoly::monomial(d, a * d.inverse().apply(b), 2));
    let t = SkewLaurentPoly::t(d);
    let x = SkewLaurentPoly::constant(d, a);
    assert_eq!(&t * &x, &SkewLaurentPoly::constant(d, d.inverse().apply(a)) * &t);
}

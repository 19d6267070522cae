use ctlab::amalgam::standard_pair::{edge_generators, joint_torus};
use ctlab::amalgam::{
    build_a_delta, check_standard_pair, compute_torus_di, sl2_generators, tau_on_root_groups, verify_amalgam_relations, Completion,
    LDelta, LTau, Sl2, Twist,
};
use ctlab::field::Field;
use ctlab::mixed::{MixedCompletion, MixedLayout, MixedParams};
use ctlab::suite::random_sl2;
use ctlab::{det_r, LaurentPoly, SkewLaurentPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_edge_is_a_standard_pair() {
    for tw in [Twist::IDENTITY, Twist { frobenius_power: 0, tau: true }] {
        let am = build_a_delta(4, 5, tw).unwrap();
        for i in 1..=4 {
            let j = i % 4 + 1;
            let (a, b) = edge_generators(&am, i, j).unwrap();
            check_standard_pair(&a, &b).unwrap();
        }
    }
}

#[test]
fn tori_of_an_edge() {
    for q in [4u32, 5] {
        let am = build_a_delta(4, q, Twist::IDENTITY).unwrap();
        let (a, b) = edge_generators(&am, 1, 2).unwrap();
        let (di, dj) = (compute_torus_di(&a, &b).unwrap(), compute_torus_di(&b, &a).unwrap());
        assert_eq!(di.order, q as usize - 1);
        assert!(di.diagonal);
        let (order, abelian) = joint_torus(&di, &dj);
        assert!(abelian);
        assert_eq!(order, (q as usize - 1).pow(2));
    }
}

#[test]
fn tau_and_borels() {
    let f = Field::of_order(5).unwrap();
    for l in f.elements() {
        let r = tau_on_root_groups(1, 2, l).unwrap();
        assert_eq!((r.i, r.j, r.lambda), (2, 1, -l));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let a = random_sl2(f, &mut rng);
        let upper = Sl2::new(a.a, a.b, f.zero(), a.a.inv().unwrap()).unwrap();
        assert!(upper.tau().b.is_zero());
    }
}

#[test]
fn ldelta_wrapped_generator() {
    let f = Field::of_order(4).unwrap();
    let l = LDelta::new(f, 4, 1);
    let d = l.f().delta();
    let a = Sl2::new(f.primitive(), f.one(), f.one(), f.zero()).unwrap();
    let g = l.phi(4, &a);
    assert_eq!(*g.get(0, 0), SkewLaurentPoly::constant(d, d.inverse().apply(a.d)));
    assert_eq!(*g.get(0, 3), SkewLaurentPoly::monomial(d, a.c, -1));
    assert_eq!(g, l.printed_phi(4, &a));
    for k in 1..=4 {
        for x in sl2_generators(f) {
            assert!(det_r(&l.phi(k, &x)).unwrap().is_one());
        }
    }
    assert!(l.phi(2, &Sl2::identity(f)).is_identity());
}

#[test]
fn ltau_generators_are_isometries() {
    let f = Field::of_order(5).unwrap();
    let l = LTau::new(f, 4);
    let a = Sl2::new(f.from_int(2), f.from_int(1), f.from_int(1), f.from_int(1)).unwrap();
    for k in 1..=4 {
        let g = l.phi(k, &a);
        assert!(l.form.is_isometry(&g));
        assert_eq!(g, l.printed_phi(k, &a));
    }
    let g = l.phi(2, &a);
    let lower = a.tau();
    assert_eq!(*g.get(5, 5), LaurentPoly::constant(lower.a));
    assert_eq!(*g.get(5, 6), LaurentPoly::constant(lower.b));
    let r = verify_amalgam_relations(&l, 2, 0);
    assert!(r.ok());
    assert!(r.check("commute_nonadjacent").unwrap().passed > 0);
}

#[test]
fn mixed_closing_identity() {
    let f = Field::of_order(4).unwrap();
    let p = MixedParams::new(f, 4, 1).unwrap();
    let c = MixedCompletion::new(p, MixedLayout::DeltaOrbit).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = random_sl2(f, &mut rng);
        assert_eq!(c.params.shift(&c.phi(1, &a), 4), c.phi(1, &c.params.delta_inverse(&a)));
    }
    assert!(MixedParams::new(Field::of_order(5).unwrap(), 4, 0).is_err());
}

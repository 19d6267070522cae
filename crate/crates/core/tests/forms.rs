use ctlab::field::Field;
use ctlab::form::{mat_vec, random_sl, random_vector, transvection, GramForm};
use ctlab::specialize::{specialize_matrix, SpecPoint};
use ctlab::{LaurentPoly, RingMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup() -> (GramForm, &'static Field) {
    let f = Field::of_order(5).unwrap();
    (GramForm::new(f, 4), f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn theta_is_an_involutive_homomorphism(seed in any::<u64>()) {
        let (form, f) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, gi) = random_sl(f, 8, 5, 1, &mut rng);
        let (_, hi) = random_sl(f, 8, 5, 1, &mut rng);
        let (tg, th) = (form.theta_with_inverse(&gi), form.theta_with_inverse(&hi));
        prop_assert_eq!(form.theta_with_inverse(&hi.mul(&gi)), tg.mul(&th));
        prop_assert_eq!(form.theta(&tg).unwrap(), g.clone());
        let (u, v) = (random_vector(f, 8, 1, &mut rng), random_vector(f, 8, 1, &mut rng));
        prop_assert_eq!(form.beta(&mat_vec(&g, &u), &mat_vec(&tg, &v)).unwrap(), form.beta(&u, &v).unwrap());
        prop_assert_eq!(form.beta(&v, &u).unwrap(), &LaurentPoly::t(f) * &form.beta(&u, &v).unwrap().sigma());
    }

    #[test]
    fn specialization_is_multiplicative(seed in any::<u64>()) {
        let (_, f) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_sl(f, 4, 5, 2, &mut rng);
        let (h, _) = random_sl(f, 4, 5, 2, &mut rng);
        for pt in [SpecPoint::minus_one(f), SpecPoint::one(f), SpecPoint::zeta(f)] {
            let (eg, eh) = (specialize_matrix(&g, &pt).unwrap(), specialize_matrix(&h, &pt).unwrap());
            prop_assert_eq!(specialize_matrix(&g.mul(&h), &pt).unwrap(), eg.mul(&eh));
            prop_assert_eq!(eg.det(), pt.eval(&g.det()).unwrap());
        }
    }
}

#[test]
fn beta_of_u_with_itself() {
    let (form, f) = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let u = random_vector(f, 8, 2, &mut rng);
        // u = Σ λ_i e_i + μ_i f_i, x = Σ λ_i μ_i^σ
        let x = (0..4).fold(LaurentPoly::zero(f), |acc, i| &acc + &(&u[i] * &u[i + 4].sigma()));
        let want = &x + &(&x.sigma() * &LaurentPoly::t(f));
        assert_eq!(form.beta(&u, &u).unwrap(), want);
    }
}

#[test]
fn dual_bases() {
    let (form, f) = setup();
    let t = LaurentPoly::t(f);
    let id = RingMatrix::identity(8, &LaurentPoly::one(f));
    let dual = form.right_dual_basis(&id).unwrap();
    // double dual is t times the basis
    assert_eq!(form.right_dual_basis(&dual).unwrap(), id.scale_left(&t));
    // (t^j a_i)* = t^j a_i*: scaling the basis by t^j scales the dual by t^j
    for j in [-2i64, 1, 3] {
        let tj = LaurentPoly::monomial(f.one(), j);
        assert_eq!(form.right_dual_basis(&id.scale_left(&tj)).unwrap(), dual.scale_left(&tj));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (p, _) = random_sl(f, 8, 6, 1, &mut rng);
    let pd = form.right_dual_basis(&p).unwrap();
    for i in 0..8 {
        for k in 0..8 {
            let a: Vec<_> = (0..8).map(|r| p.get(r, i).clone()).collect();
            let b: Vec<_> = (0..8).map(|r| pd.get(r, k).clone()).collect();
            let want = if i == k { LaurentPoly::one(f) } else { LaurentPoly::zero(f) };
            assert_eq!(form.beta(&a, &b).unwrap(), want);
        }
    }
}

#[test]
fn transvection_is_not_an_isometry() {
    let (form, f) = setup();
    let (g, _) = transvection(f, 8, 0, 1, LaurentPoly::one(f));
    assert!(!form.is_isometry(&g));
    assert!(form.theta(&RingMatrix::identity(8, &LaurentPoly::one(f))).unwrap().is_identity());
}

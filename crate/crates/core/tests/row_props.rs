use laurent_rows::comaximal::{top_bottom_bezout, weierstrass_test};
use laurent_rows::row::{gen_example, pairing, random_laurent, weierstrass_reduce, GLFactor, GLWitness};
use laurent_rows::{LaurentPoly, LocalBase};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn local_base() -> impl Strategy<Value = LocalBase> {
    prop_oneof![
        Just(LocalBase::Rationals),
        Just(LocalBase::PrimeField(5)),
        Just(LocalBase::LocalizedAt(2)),
        Just(LocalBase::LocalizedAt(3)),
    ]
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bezout_identity_holds(p in prop_oneof![Just(2u64), Just(3)], f in coeffs(5), g in coeffs(4), f0 in 1i64..20) {
        let base = LocalBase::LocalizedAt(p);
        let p = p as i64;
        // unit constant term, Weierstrass g
        let mut fc = f;
        fc.insert(0, if f0 % p == 0 { f0 + 1 } else { f0 });
        let mut gc: Vec<i64> = g.iter().map(|c| c * p).collect();
        gc.push(1);
        let f = LaurentPoly::from_ints(base, &fc);
        let g = LaurentPoly::from_ints(base, &gc);
        prop_assert!(weierstrass_test(&g, &base).unwrap());
        let b = top_bottom_bezout(&f, &g, &base).unwrap();
        prop_assert_eq!(b.u.mul(&f).add(&b.v.mul(&g)), LaurentPoly::one());
    }

    #[test]
    fn unit_recognition_matches_monomial_shape(base in local_base(), c in -9i64..=9, e in -4i64..=4, extra in coeffs(3)) {
        let m = LaurentPoly::monomial(base.int(c), e);
        prop_assert_eq!(m.is_unit(&base), c != 0 && base.is_unit(&base.int(c)));
        if let Some(inv) = m.unit_inverse(&base) {
            prop_assert_eq!(inv.mul(&m), LaurentPoly::one());
        }
        // two or more terms is never a unit of R[t, 1/t]
        let p = m.add(&LaurentPoly::from_ints(base, &extra).shift(5));
        if p.num_terms() >= 2 {
            prop_assert!(!p.is_unit(&base));
        }
    }

    #[test]
    fn glwitness_preserves_unimodularity(base in local_base(), seed in any::<u64>(), steps in 0usize..5, extra in 0usize..4) {
        let (b, _) = gen_example(2, base, seed, steps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
        let mut w = GLWitness::identity(3);
        for i in 0..extra {
            let coeff = random_laurent(&mut rng, &base, -2, 2, 3);
            w.push(GLFactor::Elementary { from: i % 3, to: (i + 1) % 3, coeff });
        }
        w.push(GLFactor::Scalar { factor: LaurentPoly::monomial(base.int(1), 3) });
        let moved = w.apply_bundle(&b).unwrap();
        prop_assert!(moved.check());
        prop_assert_eq!(pairing(&moved.row, &moved.complement), pairing(&b.row, &b.complement));
        prop_assert_eq!(moved.row, w.apply_row(&b.row));
    }

    #[test]
    fn reduction_certificates_reverify(base in local_base(), seed in 0u64..10_000, r in 2usize..=3) {
        let (b, _) = gen_example(r, base, seed, 4).unwrap();
        let res = weierstrass_reduce(&b, 64).unwrap();
        prop_assert!(res.verify().unwrap().passed());
        prop_assert!(weierstrass_test(&res.weierstrass_row[0], &base).unwrap());
    }
}

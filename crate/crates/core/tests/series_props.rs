use laurent_rows::{LaurentPoly, LocalBase, TruncSeries};
use proptest::prelude::*;

fn poly(base: LocalBase) -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(-5i64..=5, 1..8), -3i64..=3).prop_map(move |(c, s)| LaurentPoly::from_ints(base, &c).shift(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Products are exact below the reported precision.
    #[test]
    fn product_precision_is_sound(a in poly(LocalBase::Rationals), b in poly(LocalBase::Rationals), pa in 2i64..12, pb in 2i64..12) {
        let q = LocalBase::Rationals;
        let sa = TruncSeries::from_laurent(q, &a, pa);
        let sb = TruncSeries::from_laurent(q, &b, pb);
        if let Ok(prod) = sa.mul(&sb) {
            let exact = a.mul(&b);
            for e in -20..prod.precision {
                prop_assert_eq!(prod.coeff(e), exact.coeff(e), "exponent {}", e);
            }
        }
    }

    /// Inverse times the series is one to the inverse's precision.
    #[test]
    fn inverse_agrees(c in prop::collection::vec(-5i64..=5, 1..6), v in -2i64..=2, p in 6i64..16) {
        let base = LocalBase::LocalizedAt(3);
        let mut c = c;
        c.insert(0, 1);
        let a = LaurentPoly::from_ints(base, &c).shift(v);
        let s = TruncSeries::from_laurent(base, &a, p);
        let inv = s.invert().unwrap();
        let one = inv.mul_exact(&a).unwrap();
        prop_assert!(one.agrees_with_exact(&LaurentPoly::one()));
        prop_assert!(one.precision >= p - v - v.max(0));
    }

    #[test]
    fn sums_keep_the_smaller_precision(a in poly(LocalBase::PrimeField(7)), b in poly(LocalBase::PrimeField(7)), pa in 4i64..10, pb in 4i64..10) {
        let f7 = LocalBase::PrimeField(7);
        let a = a.normalized(&f7).unwrap();
        let b = b.normalized(&f7).unwrap();
        let s = TruncSeries::from_laurent(f7, &a, pa).add(&TruncSeries::from_laurent(f7, &b, pb));
        if let Ok(s) = s {
            prop_assert!(s.precision <= pa.min(pb));
            prop_assert!(s.agrees_with_exact(&a.add(&b)));
        }
    }
}

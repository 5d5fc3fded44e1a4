//! Property tests for the exact arithmetic layer: ring axioms over both
//! coefficient fields, and the Laurent division round-trip.

use pfres::ring::{
    gen_binomial, laurent_div_power, one_minus_s, FieldKind, LaurentPoly, Monomial, PolyElem,
    VarSet, DEFAULT_PRIME,
};
use proptest::prelude::*;
use std::sync::Arc;

fn arb_poly(field: FieldKind) -> impl Strategy<Value = PolyElem> {
    let vars: Arc<VarSet> = VarSet::t_only(3);
    proptest::collection::vec((proptest::collection::vec(0u16..4, 3), -50i128..50), 0..6)
        .prop_map(move |terms| {
            PolyElem::from_terms(
                &vars,
                field,
                terms.into_iter().map(|(exps, c)| {
                    (Monomial(exps.into_iter().collect()), field.from_i128(c))
                }),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_fp(a in arb_poly(FieldKind::Fp(DEFAULT_PRIME)),
                      b in arb_poly(FieldKind::Fp(DEFAULT_PRIME)),
                      c in arb_poly(FieldKind::Fp(DEFAULT_PRIME))) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.sub(&a).num_terms(), 0);
    }

    #[test]
    fn ring_axioms_rational(a in arb_poly(FieldKind::Rational),
                            b in arb_poly(FieldKind::Rational),
                            c in arb_poly(FieldKind::Rational)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn laurent_division_roundtrip(coeffs in proptest::collection::vec((-6i64..6, -40i128..40), 0..8),
                                  k in 0usize..=6) {
        let h = LaurentPoly::from_coeffs(coeffs);
        let mut prod = h.clone();
        for _ in 0..k {
            prod = prod.mul(&one_minus_s());
        }
        let q = laurent_div_power(&prod, k).expect("constructed to be divisible");
        prop_assert_eq!(q, h);
    }

    #[test]
    fn binomial_pascal_random(a in -60i128..60, b in 0i128..40) {
        prop_assert_eq!(
            gen_binomial(a, b),
            gen_binomial(a - 1, b) + gen_binomial(a - 1, b - 1)
        );
    }
}

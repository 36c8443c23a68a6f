use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;
use qloop::qring::{
    qbinom, qint, series_expand, BarLaurent, ExpansionDir, Mono, RationalScalar, TailSeries,
    TorusScalar,
};

fn lp(terms: &[(i64, i64)]) -> BarLaurent {
    BarLaurent::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
}

/// Gaussian binomial from subset statistics: Σ_S q^{2(ΣS − p(p−1)/2) − p(m−p)}.
fn qbinom_oracle(m: i64, p: i64) -> BarLaurent {
    let mut out = BarLaurent::zero();
    for s in (0..m).combinations(p as usize) {
        let inv: i64 = s.iter().sum::<i64>() - p * (p - 1) / 2;
        out.add_term(2 * inv - p * (m - p), BigInt::from(1));
    }
    out
}

#[test]
fn qint_values() {
    assert!(qint(0).is_zero());
    assert_eq!(qint(2), lp(&[(1, 1), (-1, 1)]));
    assert_eq!(qint(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
    assert_eq!(qint(-2), -qint(2));
}

#[test]
fn qbinom_values() {
    assert_eq!(qbinom(5, 0), BarLaurent::one());
    assert_eq!(qbinom(2, 1), lp(&[(1, 1), (-1, 1)]));
    assert_eq!(qbinom(4, 2), lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]));
}

#[test]
fn qbinom_matches_subset_oracle() {
    for m in 0..9 {
        for p in 0..=m {
            assert_eq!(qbinom(m, p), qbinom_oracle(m, p), "({m},{p})");
        }
    }
}

#[test]
fn qbinom_pascal() {
    for m in 2..10 {
        for p in 1..m {
            let rhs = &qbinom(m - 1, p).shift(p) + &qbinom(m - 1, p - 1).shift(p - m);
            assert_eq!(qbinom(m, p), rhs);
        }
    }
}

#[test]
fn rendering() {
    assert_eq!(qint(3).to_string(), "q^2 + 1 + q^-2");
    assert_eq!(lp(&[(1, -1), (-1, 3)]).to_string(), "-q + 3*q^-1");
    assert_eq!(BarLaurent::zero().to_string(), "0");
    let t = &TorusScalar::term(1, 1, &[1, -1]) + &TorusScalar::term(-2, 0, &[0, 2]);
    assert_eq!(t.to_string(), "q*z1*z2^-1 - 2*z2^2");
}

#[test]
fn bar_dagger_partial_examples() {
    assert_eq!(lp(&[(2, 1), (0, 1)]).bar(), lp(&[(-2, 1), (0, 1)]));
    assert_eq!(TorusScalar::term(1, 1, &[1]).bar(), TorusScalar::term(1, -1, &[1]));
    assert_eq!(TorusScalar::term(1, 0, &[1, -1]).dagger(), TorusScalar::term(1, 0, &[-1, 1]));
    assert_eq!(TorusScalar::q_pow(2, 1).dagger(), TorusScalar::q_pow(2, 1));
    let x = &TorusScalar::term(1, 2, &[0, 0]) + &TorusScalar::term(1, 1, &[1, -1]);
    assert_eq!(x.partial(), lp(&[(2, 1)]));
    for n in -3..4 {
        for m in -3..4 {
            let p = TorusScalar::term(1, 0, &[n - m]).partial();
            assert_eq!(p.is_one(), n == m);
        }
    }
}

#[test]
fn geometric_expansion_at_infinity() {
    // 1/(1 - q/z): z is variable 0
    let one = TorusScalar::one(1);
    let r = RationalScalar::new(one.clone(), &(&one - &TorusScalar::term(1, 1, &[-1])));
    let e = series_expand(&r, 0, ExpansionDir::AtInfinity, 3).unwrap();
    for k in 0..=3 {
        assert_eq!(e.coeffs[k as usize], TorusScalar::q_pow(1, k));
    }
    // constants expand to themselves
    let c = RationalScalar::from_torus(TorusScalar::term(5, 2, &[0]));
    let e = series_expand(&c, 0, ExpansionDir::AtZero, 2).unwrap();
    assert_eq!(e.coeffs[0], TorusScalar::term(5, 2, &[0]));
    assert!(e.coeffs[1].is_zero() && e.coeffs[2].is_zero());
    // 2z + q has a non-unit leading coefficient at infinity
    let bad = RationalScalar::new(
        one.clone(),
        &(&TorusScalar::term(2, 0, &[1]) + &TorusScalar::term(1, 1, &[0])),
    );
    assert!(series_expand(&bad, 0, ExpansionDir::AtInfinity, 2).is_err());
}

#[test]
fn tail_inverse_roundtrip() {
    // (1 - q^-2 z1/z2)^{-1}·(1 - q^-2 z1/z2) = 1 to order -16
    let f = &TorusScalar::one(2) - &TorusScalar::term(1, -2, &[1, -1]);
    let inv = TailSeries::inverse_of(&f, -16).unwrap();
    let prod = inv.mul_torus(&f);
    assert_eq!(prod.known_part(), &TorusScalar::one(2));
    assert!(prod.truncation_order() >= -16);
    // top part q^2 z1/z2 is a unit too
    let g = &TorusScalar::one(2) - &TorusScalar::term(1, 2, &[1, -1]);
    let inv = TailSeries::inverse_of(&g, -10).unwrap();
    assert_eq!(inv.mul_torus(&g).known_part(), &TorusScalar::one(2));
    // 1 - z1/z2 is not expandable in q⁻¹
    let h = &TorusScalar::one(2) - &TorusScalar::term(1, 0, &[1, -1]);
    assert!(TailSeries::inverse_of(&h, -10).is_err());
}

#[test]
fn tail_truncation_is_max() {
    let a = TailSeries::new(&TorusScalar::one(0), -5);
    let b = TailSeries::new(&TorusScalar::q_pow(0, -1), -9);
    assert_eq!(a.add(&b).truncation_order(), -5);
    assert_eq!(a.mul(&b).truncation_order(), -5);
}

fn torus_strategy(rank: usize) -> impl Strategy<Value = TorusScalar> {
    prop::collection::vec((-3i64..4, prop::collection::vec(-2i64..3, rank), -3i64..4), 0..5)
        .prop_map(move |v| {
            TorusScalar::from_terms(
                rank,
                v.into_iter().map(|(q, z, c)| (Mono { q, z }, BigInt::from(c))),
            )
        })
}

proptest! {
    #[test]
    fn ring_axioms(a in torus_strategy(2), b in torus_strategy(2), c in torus_strategy(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn involutions(a in torus_strategy(2), b in torus_strategy(2)) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.dagger().dagger(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a * &b).dagger(), &a.dagger() * &b.dagger());
        prop_assert_eq!(a.dagger().partial(), a.partial());
    }

    #[test]
    fn exact_division(a in torus_strategy(2), b in torus_strategy(2)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
    }

    #[test]
    fn rational_canonical(a in torus_strategy(1), b in torus_strategy(1), w in torus_strategy(1)) {
        prop_assume!(!b.is_zero() && !w.is_zero());
        let x = RationalScalar::new(a.clone(), &b);
        let y = RationalScalar::new(&a * &w, &(&b * &w));
        prop_assert_eq!(&x, &y);
        prop_assert_eq!((&x * &RationalScalar::from_torus(b.clone())).to_torus(), Some(a.clone()));
    }

    #[test]
    fn laurent_bar_involutive(v in prop::collection::vec((-5i64..6, -4i64..5), 0..6)) {
        let p = lp(&v);
        prop_assert_eq!(p.bar().bar(), p.clone());
        let r = qint(3);
        prop_assert_eq!((&p * &r).div_exact(&r), Some(p));
    }
}

use num_rational::Rational64;
use proptest::prelude::*;
use qloop::rootkit::{AffineRoot, CartanDatum, LatticeVec, WeylElement};

fn all_types() -> Vec<String> {
    let mut v: Vec<String> = (1..=7).map(|n| format!("A{n}")).collect();
    v.extend((4..=7).map(|n| format!("D{n}")));
    v.extend(["E6", "E7", "E8"].map(String::from));
    v
}

/// Coxeter numbers from the classification tables.
fn coxeter_table(label: &str) -> i64 {
    let n: i64 = label[1..].parse().unwrap();
    match &label[..1] {
        "A" => n + 1,
        "D" => 2 * n - 2,
        _ => [12, 18, 30][(n - 6) as usize],
    }
}

#[test]
fn rejects_non_simply_laced() {
    for t in ["B2", "C3", "F4", "G2", "A0", "D3", "E9", ""] {
        assert!(CartanDatum::parse(t).is_err(), "{t}");
    }
    // a cycle is not a Dynkin diagram
    let cyc = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
    assert!(CartanDatum::from_matrix("cycle", cyc).is_err());
}

#[test]
fn pairing_examples() {
    let a1 = CartanDatum::parse("A1").unwrap();
    let r = LatticeVec::Root(vec![1]);
    let w = LatticeVec::Weight(vec![1]);
    assert_eq!(a1.pairing(&r, &r).unwrap(), Rational64::from(2));
    assert_eq!(a1.pairing(&w, &w).unwrap(), Rational64::new(1, 2));
    assert_eq!(a1.pairing(&w, &r).unwrap(), Rational64::from(1));
    assert!(a1.pairing(&w, &LatticeVec::Root(vec![1, 0])).is_err());
    let a3 = CartanDatum::parse("A3").unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let v = a3
                .pairing(&LatticeVec::Weight(a3.fundamental_weight(i)), &LatticeVec::Root(a3.simple_root(j)))
                .unwrap();
            assert_eq!(v, Rational64::from(i64::from(i == j)));
        }
    }
    assert_eq!(a1.norm2(&[0]), 0);
    assert_eq!(a1.norm2(&[1]), 1);
    assert_eq!(CartanDatum::parse("A2").unwrap().norm2(&[1, 1]), 2);
}

#[test]
fn basis_change_round_trip() {
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        for r in d.positive_roots() {
            assert_eq!(d.weight_to_root(&d.root_to_weight(r)).as_ref(), Some(r));
        }
    }
    let a1 = CartanDatum::parse("A1").unwrap();
    assert_eq!(a1.weight_to_root(&[1]), None);
    assert_eq!(a1.weight_to_root(&[2]), Some(vec![1]));
}

#[test]
fn coxeter_numbers_and_root_counts() {
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        let c = d.coxeter_number();
        assert_eq!(c, coxeter_table(&t), "{t}");
        assert_eq!(2 * d.positive_roots().len() as i64, d.rank() as i64 * c, "{t}");
        assert_eq!(d.longest_element().length(), d.positive_roots().len());
    }
    assert_eq!(CartanDatum::parse("E8").unwrap().positive_roots().len(), 120);
}

#[test]
fn index_involution() {
    let a1 = CartanDatum::parse("A1").unwrap();
    assert_eq!(a1.bar_index(0), 0);
    let a2 = CartanDatum::parse("A2").unwrap();
    assert_eq!((a2.bar_index(0), a2.bar_index(1)), (1, 0));
    let d4 = CartanDatum::parse("D4").unwrap();
    assert!((0..4).all(|i| d4.bar_index(i) == i));
    let d5 = CartanDatum::parse("D5").unwrap();
    assert_eq!((d5.bar_index(3), d5.bar_index(4), d5.bar_index(0)), (4, 3, 0));
    let e6 = CartanDatum::parse("E6").unwrap();
    assert_eq!((0..6).map(|i| e6.bar_index(i)).collect::<Vec<_>>(), vec![5, 1, 4, 3, 2, 0]);
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        let w0 = d.longest_element();
        assert!(d.weyl_mul(w0, w0).is_identity());
        for i in 0..d.rank() {
            assert_eq!(d.bar_index(d.bar_index(i)), i);
            for j in 0..d.rank() {
                assert_eq!(d.a(i, j), d.a(d.bar_index(i), d.bar_index(j)));
            }
        }
    }
}

#[test]
fn affine_root_sets() {
    let a1 = CartanDatum::parse("A1").unwrap();
    let set = a1.hat_delta_omega(0).unwrap();
    assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![AffineRoot::new(vec![-1], 1)]);
    assert_eq!(a1.gamma(0).unwrap(), AffineRoot::new(vec![-1], 1));
    assert_eq!(a1.pair_affine(&a1.gamma(0).unwrap(), &[1]), -2);
    let a2 = CartanDatum::parse("A2").unwrap();
    assert_eq!(a2.hat_delta_omega(0).unwrap().len(), 2);
    assert_eq!(a2.pair_affine(&a2.gamma(0).unwrap(), &[1, 0]), -3);
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        for i in 0..d.rank() {
            // the set has the size of the translation's length Σ_{α>0} (ωᵢ, α)
            let len: i64 = d.positive_roots().iter().map(|r| r[i]).sum();
            assert_eq!(d.hat_delta_omega(i).unwrap().len() as i64, len, "{t} {i}");
            assert!(d.gamma_check(i).unwrap(), "{t} {i}");
        }
    }
}

#[test]
fn sign_colorings() {
    let a2 = CartanDatum::parse("A2").unwrap();
    let [o, p] = a2.sign_assignments().unwrap();
    assert_eq!(o, vec![1, -1]);
    assert_eq!(p, vec![-1, 1]);
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        assert!(d.sign_check().unwrap(), "{t}");
        for o in d.sign_assignments().unwrap() {
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if d.a(i, j) < 0 {
                        assert_eq!(o[i] + o[j], 0);
                    }
                }
            }
        }
    }
}

#[test]
fn weyl_enumeration_orders() {
    for (t, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("D4", 192), ("A4", 120)] {
        let d = CartanDatum::parse(t).unwrap();
        let all = d.enumerate_weyl().unwrap();
        assert_eq!(all.len(), order, "{t}");
        for w in &all {
            assert_eq!(d.inversions(w).len(), w.length());
            // the action is an isometry
            for a in d.positive_roots() {
                for b in d.positive_roots() {
                    assert_eq!(d.pair_rr(&w.apply_root(a), &w.apply_root(b)), d.pair_rr(a, b));
                }
            }
        }
    }
    assert!(CartanDatum::parse("A5").unwrap().enumerate_weyl().is_err());
}

#[test]
fn length_statistic() {
    let a1 = CartanDatum::parse("A1").unwrap();
    let s = WeylElement::simple(&a1, 0);
    assert_eq!(a1.length_stat_a(&WeylElement::identity(1), 0), Rational64::from(0));
    assert_eq!(a1.length_stat_a(&s, 0), Rational64::from(2));
    for t in all_types() {
        let d = CartanDatum::parse(&t).unwrap();
        let c = d.coxeter_number();
        for i in 0..d.rank() {
            let ib = d.bar_index(i);
            let w = d.weyl_mul(d.longest_element(), &WeylElement::simple(&d, ib));
            assert_eq!(d.length_stat_a(&w, ib), Rational64::from(c - 2), "{t} {i}");
        }
    }
}

#[test]
fn length_statistic_recursions() {
    for t in ["A1", "A2", "A3", "D4"] {
        let d = CartanDatum::parse(t).unwrap();
        let all = d.enumerate_weyl().unwrap();
        let n = d.rank();
        for x in &all {
            for i in 0..n {
                for k in 0..n {
                    if d.a(i, k) == 0 {
                        let w = d.weyl_mul(x, &WeylElement::simple(&d, k));
                        if w.length() == x.length() + 1 {
                            assert_eq!(d.length_stat_a(&w, i), d.length_stat_a(x, i));
                        }
                    } else if d.a(i, k) == -1 {
                        let sisk = WeylElement::from_word(&d, &[i, k]).unwrap();
                        let w = d.weyl_mul(x, &sisk);
                        if w.length() == x.length() + 2 {
                            assert_eq!(d.length_stat_a(&w, i), d.length_stat_a(x, k) + 1);
                        }
                    }
                }
                // integral whenever w(αᵢ) is simple
                let img = x.apply_root(&d.simple_root(i));
                if img.iter().sum::<i64>() == 1 && img.iter().all(|&c| c >= 0) {
                    assert!(d.length_stat_a(x, i).is_integer());
                }
            }
        }
    }
}

#[test]
fn w_star_examples() {
    let a1 = CartanDatum::parse("A1").unwrap();
    let id = WeylElement::identity(1);
    assert_eq!(a1.w_star(&id, &[3], &[5]), vec![3]);
    for l in 0..6 {
        assert_eq!(a1.w_star(a1.longest_element(), &[0], &[l]), vec![l]);
    }
}

/// `λ − w(λ) + w(α)` through weight coordinates and the matrix action.
fn w_star_oracle(d: &CartanDatum, w: &WeylElement, alpha: &[i64], lambda: &[i64]) -> Vec<i64> {
    let wl = d.act_weight(w, lambda);
    let diff: Vec<i64> = lambda.iter().zip(&wl).map(|(a, b)| a - b).collect();
    let diff = d.weight_to_root(&diff).unwrap();
    let wa = w.apply_root(alpha);
    diff.iter().zip(&wa).map(|(a, b)| a + b).collect()
}

proptest! {
    #[test]
    fn w_star_cocycle(
        t in prop::sample::select(vec!["A2", "A3", "D4"]),
        u in prop::collection::vec(0usize..4, 0..8),
        v in prop::collection::vec(0usize..4, 0..8),
        alpha in prop::collection::vec(-4i64..5, 4),
        lambda in prop::collection::vec(0i64..4, 4),
    ) {
        let d = CartanDatum::parse(t).unwrap();
        let n = d.rank();
        let u: Vec<_> = u.into_iter().filter(|&i| i < n).collect();
        let v: Vec<_> = v.into_iter().filter(|&i| i < n).collect();
        let (alpha, lambda) = (&alpha[..n], &lambda[..n]);
        let w1 = WeylElement::from_word(&d, &u).unwrap();
        let w2 = WeylElement::from_word(&d, &v).unwrap();
        let w12 = d.weyl_mul(&w1, &w2);
        prop_assert_eq!(d.w_star(&w12, alpha, lambda), d.w_star(&w1, &d.w_star(&w2, alpha, lambda), lambda));
        prop_assert_eq!(d.w_star(&w12, alpha, lambda), w_star_oracle(&d, &w12, alpha, lambda));
        prop_assert!(d.weyl_mul(&w12, &d.weyl_inverse(&w12)).is_identity());
        prop_assert_eq!(w12.length(), d.inversions(&w12).len());
    }
}

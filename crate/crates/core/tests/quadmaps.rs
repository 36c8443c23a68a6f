#![allow(clippy::needless_range_loop)]

use num_rational::Rational64;
use qloop::quadmaps::{choose_orientation, random_dominant, QuadMaps};
use qloop::rootkit::CartanDatum;

fn dat(t: &str) -> CartanDatum {
    CartanDatum::parse(t).unwrap()
}

#[test]
fn orientations() {
    let a1 = dat("A1");
    let o = choose_orientation(&a1).unwrap();
    assert_eq!(o.n, vec![vec![0]]);
    let a2 = dat("A2");
    let o = choose_orientation(&a2).unwrap();
    assert_eq!(o.n[0][1] + o.n[1][0], 1);
    assert!(o.satisfies_convention(&a2));
    // A3 needs 1→2←3 or its reverse
    let a3 = dat("A3");
    let o = choose_orientation(&a3).unwrap();
    assert_eq!(o.n[0][1], o.n[2][1]);
    for t in ["A1", "A2", "A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6", "E7", "E8"] {
        let d = dat(t);
        let o = choose_orientation(&d).unwrap();
        assert!(o.is_consistent(&d) && o.satisfies_convention(&d), "{t}");
    }
}

#[test]
fn a1_rank_books() {
    let a1 = dat("A1");
    for l in 0..5 {
        let qm = QuadMaps::new(&a1, &[l]).unwrap();
        assert_eq!(qm.nu, vec![l]);
        for a in -2..=l + 2 {
            let b = qm.rank_books(&[a], 0);
            assert_eq!(b.f, l - 2 * a);
            assert_eq!(b.v, a);
            assert_eq!(b.f_minus, -a);
            assert_eq!(b.f_plus, l - a);
            assert_eq!(b.d, 2 * a * (l - a));
            assert_eq!(b.t, a * l);
            assert_eq!(b.r_plus, l - a);
            assert_eq!(b.r_minus, -a);
        }
        let zero = qm.rank_books(&[0], 0);
        assert_eq!((zero.f, zero.v, zero.t, zero.d), (l, 0, 0, 0));
        // x(ν) = (c−1)ℓ² − c·ℓ²/2 = 0, q₁₁ = 1, b₁ = −ℓ
        assert_eq!(qm.x_at_nu().unwrap(), 0);
        let x = qm.solve_x().unwrap();
        assert_eq!(x.qform[0][0], Rational64::from(1));
        assert_eq!(x.linear, vec![-l]);
        assert_eq!(qm.solve_y().unwrap().eval(&qm.nu), 0);
    }
}

#[test]
fn t_increment_and_ranks() {
    for (t, lam) in [("A2", vec![1, 2]), ("A3", vec![1, 0, 2]), ("D4", vec![1, 1, 0, 1])] {
        let d = dat(t);
        let qm = QuadMaps::new(&d, &lam).unwrap();
        for a in qm.sample_alphas(7, 30, 4) {
            for j in 0..d.rank() {
                let b = qm.rank_books(&a, j);
                assert_eq!(b.f, b.f_plus + b.f_minus);
                let mut a2 = a.clone();
                a2[j] += 1;
                assert_eq!(qm.rank_books(&a2, j).t - b.t, b.f_plus - b.f_minus);
            }
        }
    }
}

#[test]
fn g_is_the_displayed_affine_function() {
    // g_{i;α} = cᵢ + Σ cᵢⱼaⱼ with cᵢ = −1 + (2−c)ℓᵢ + (2c−1)kᵢ,
    // cᵢⱼ = (c−2)aᵢⱼ + δᵢⱼ(2−2c)
    for (t, lam) in [("A2", vec![2, 1]), ("A3", vec![1, 1, 1]), ("D4", vec![0, 2, 1, 0]), ("E6", vec![1; 6])] {
        let d = dat(t);
        let qm = QuadMaps::new(&d, &lam).unwrap();
        let c = qm.c;
        for a in qm.sample_alphas(11, 20, 5) {
            for i in 0..d.rank() {
                let mut expect = -1 + (2 - c) * lam[i] + (2 * c - 1) * qm.nu[i];
                for j in 0..d.rank() {
                    expect += ((c - 2) * d.a(i, j) + i64::from(i == j) * (2 - 2 * c)) * a[j];
                }
                assert_eq!(qm.g(i, &a), expect, "{t} {i} {a:?}");
            }
        }
    }
}

#[test]
fn cocycles_and_w0_invariance() {
    for (k, t) in ["A2", "A3", "A4", "D4", "D5", "E6"].iter().enumerate() {
        let d = dat(t);
        for lam in [d.rho(), random_dominant(&d, 100 + k as u64, 3)] {
            let qm = QuadMaps::new(&d, &lam).unwrap();
            let s = qm.sample_alphas(5 + k as u64, 40, 6);
            assert!(qm.cocycle_check(&s), "{t}");
            assert!(qm.closed_form_check(&s).unwrap(), "{t}");
            assert!(qm.appendix_check(&s).unwrap(), "{t}");
            // kⱼ = k_j̄
            for j in 0..d.rank() {
                assert_eq!(qm.nu[j], qm.nu[d.bar_index(j)]);
            }
            let x = qm.solve_x().unwrap();
            let zero = vec![0; d.rank()];
            assert_eq!(x.eval(&zero).unwrap(), x.eval(&qm.nu).unwrap());
            assert_eq!(qm.solve_y().unwrap().eval(&qm.nu), 0);
        }
    }
}

#[test]
fn rejects_bad_weights() {
    let a2 = dat("A2");
    assert!(QuadMaps::new(&a2, &[1]).is_err());
    assert!(QuadMaps::new(&a2, &[1, -1]).is_err());
}

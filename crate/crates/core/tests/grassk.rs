use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;
use qloop::canbasis::{linalg, BlockSpace};
use qloop::grassk::{A1Model, FixedClass, Op, PairValue, PairingKind, ScalarBook, Space, TailClass};
use qloop::qring::{neg_q_pow, qint, BarLaurent, RationalScalar, TorusScalar};
use qloop::uqalg::{apply_letter, bar_action, psi_action, Letter};

fn model(ell: usize) -> A1Model {
    A1Model::new(ell).unwrap()
}

fn unit(ell: usize, a: usize) -> FixedClass {
    FixedClass::unit(ell, a, Space::F)
}

fn exact(v: PairValue) -> TorusScalar {
    match v {
        PairValue::Exact(t) => t,
        PairValue::Tail(t) => panic!("expected an exact value, got {t}"),
    }
}

fn bar_pair(m: &A1Model, b: &ScalarBook, x: &FixedClass, y: &FixedClass) -> TorusScalar {
    exact(m.pair(b, x, y, PairingKind::SingleBar, -16).unwrap())
}

fn mono_class(m: &A1Model, a: usize, f: impl Fn(u32) -> qloop::qring::Mono) -> FixedClass {
    FixedClass::on_component(m.ell(), Space::F, a, |s| TorusScalar::from_mono(m.ell(), BigInt::from(1), f(s)))
}

#[test]
fn highest_weight_lowering_and_raising() {
    for ell in 1..=4 {
        let m = model(ell);
        for a in 0..=ell {
            let up = m.act(&Op::XtPlus(0), &unit(ell, a)).unwrap();
            let down = m.act(&Op::XtMinus(0), &unit(ell, a)).unwrap();
            let expect_up = if a == 0 { FixedClass::zero(ell, Space::F) } else { unit(ell, a - 1).scale(&qint((ell - a + 1) as i64)) };
            let expect_down = if a == ell { FixedClass::zero(ell, Space::F) } else { unit(ell, a + 1).scale(&qint((a + 1) as i64)) };
            assert_eq!(up, expect_up, "ℓ={ell} a={a}");
            assert_eq!(down, expect_down, "ℓ={ell} a={a}");
        }
    }
}

/// Coefficients of `Π(1 + t·x)` over the given characters.
fn elementary(chars: &[TorusScalar], rank: usize) -> Vec<TorusScalar> {
    let mut e = vec![TorusScalar::one(rank)];
    for x in chars {
        let mut next = e.clone();
        next.push(TorusScalar::zero(rank));
        for i in 0..e.len() {
            next[i + 1] += &(&e[i] * x);
        }
        e = next;
    }
    e
}

#[test]
fn zero_section_pushforward_is_koszul_class() {
    for ell in 1..=3 {
        let m = model(ell);
        for a in 0..=ell {
            let k = m.kappa_star(&unit(ell, a)).unwrap();
            for s in m.subsets(a) {
                let q = m.restrict_taut("Q'", a, s).unwrap();
                let e = m.restrict_taut("E'", a, s).unwrap().dagger();
                let chars: Vec<TorusScalar> = (&q * &e)
                    .terms()
                    .flat_map(|(mo, c)| {
                        let n: usize = c.try_into().unwrap();
                        std::iter::repeat_n(TorusScalar::from_mono(ell, BigInt::from(1), mo.clone()), n)
                    })
                    .collect();
                let mut expect = TorusScalar::zero(ell);
                for (i, ei) in elementary(&chars, ell).iter().enumerate() {
                    // (−1)^i q^{−2i} ⋀^i
                    expect += &ei.mul_laurent(&BarLaurent::q_pow(-2 * i as i64)).scale_int(&BigInt::from(if i % 2 == 0 { 1 } else { -1 }));
                }
                let idx = m.subsets(a).iter().position(|&t| t == s).unwrap();
                assert_eq!(k.component(a)[idx], RationalScalar::from_torus(expect), "ℓ={ell} S={s:b}");
            }
        }
    }
}

#[test]
fn k_eigenvalues_and_weights() {
    for ell in 1..=3 {
        let m = model(ell);
        for a in 0..=ell {
            let w = ell as i64 - 2 * a as i64;
            for p in [-1, 1, 2] {
                assert_eq!(m.act(&Op::K(p), &unit(ell, a)).unwrap(), unit(ell, a).scale(&BarLaurent::q_pow(p * w)));
            }
            // k⁺_0 k⁻_0 = 1 and k⁺_0 = k
            for s in m.subsets(a) {
                let kp = m.eigenvalue(&Op::KPlus(0), s).unwrap();
                let km = m.eigenvalue(&Op::KMinus(0), s).unwrap();
                assert!((&kp * &km).is_one());
                assert_eq!(kp, TorusScalar::q_pow(ell, w));
            }
        }
    }
}

#[test]
fn tilde_operators_are_conjugates() {
    for ell in 1..=3 {
        let m = model(ell);
        let li = ell as i64;
        let det_e = |n: i64, a: usize| mono_class(&m, a, |s| m.det_e(s).pow(n));
        for a in 0..=ell {
            for r in -1..=1 {
                for b in m.det_power_classes().into_iter().filter(|c| c.support() == vec![a]) {
                    // x̃⁺_r = ⋀ℰ′^{−ℓ} x⁺_r ⋀𝒲^{−ℓ} ⋀ℰ′^{ℓ}
                    let inner = b.mul_class(&det_e(li, a)).scale_torus(&TorusScalar::from_mono(ell, BigInt::from(1), m.det_w().pow(-li)));
                    let out = m.act(&Op::XPlus(r), &inner).unwrap();
                    let lhs = m.act(&Op::XtPlus(r), &b).unwrap();
                    if a > 0 {
                        assert_eq!(lhs, out.mul_class(&det_e(-li, a - 1)), "x̃⁺ ℓ={ell} a={a} r={r}");
                    }
                    let inner = b.mul_class(&det_e(li, a)).scale_torus(&TorusScalar::from_mono(ell, BigInt::from(1), m.det_w().pow(li)));
                    let out = m.act(&Op::XMinus(r), &inner).unwrap();
                    let lhs = m.act(&Op::XtMinus(r), &b).unwrap();
                    if a < ell {
                        assert_eq!(lhs, out.mul_class(&det_e(-li, a + 1)), "x̃⁻ ℓ={ell} a={a} r={r}");
                    }
                }
            }
        }
    }
}

#[test]
fn divided_powers_match_composition() {
    for ell in 1..=3 {
        let m = model(ell);
        for c in m.det_power_classes() {
            for n in 1..=3u32 {
                for plus in [true, false] {
                    let op = if plus { Op::EDiv(n) } else { Op::FDiv(n) };
                    assert_eq!(m.act(&op, &c).unwrap(), m.divided_power_by_composition(plus, n, &c).unwrap(), "ℓ={ell} n={n} plus={plus}");
                }
            }
        }
    }
}

#[test]
fn h_is_integral_for_unit_index() {
    let m = model(1);
    assert_eq!(m.eigenvalue(&Op::H(1), 0).unwrap(), TorusScalar::term(1, -2, &[1]));
    assert_eq!(m.eigenvalue(&Op::H(-1), 0).unwrap(), TorusScalar::term(1, 2, &[-1]));
    assert!(m.eigenvalue(&Op::H(2), 0).is_err());
}

#[test]
fn scalar_suite() {
    for ell in 1..=3usize {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        let li = ell as i64;
        assert_eq!(&b.r * &b.s, TorusScalar::from_laurent(ell, &neg_q_pow(li)), "r·s, ℓ={ell}");
        assert_eq!(b.theta, BarLaurent::q_pow(li * li));
        assert_eq!(b.theta.pow(2), BarLaurent::q_pow(2 * li * li));
        let full: u32 = (1 << ell) - 1;
        assert!((&b.c_at(ell, full) * &b.r).is_one(), "c_ν·r = 1, ℓ={ell}");
        assert_eq!(m.omega_pullback(&b.c), b.c, "ω*(c) = c, ℓ={ell}");
        assert_eq!(b.r, TorusScalar::from_mono(ell, BigInt::from(1), m.det_w().pow(li * (li - 1))));
    }
    // frozen ℓ = 2 values
    let b = ScalarBook::new(&model(2)).unwrap();
    assert_eq!(b.r, TorusScalar::term(1, 0, &[2, 2]));
    assert_eq!(b.s, TorusScalar::term(1, 2, &[-2, -2]));
    assert_eq!(b.a[2], BarLaurent::q_pow(2));
    assert_eq!(b.b[1], &neg_q_pow(-1) * &BarLaurent::q_pow(-1));
}

#[test]
fn involutions() {
    for ell in 1..=3 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        assert_eq!(m.beta(&b, &unit(ell, 0)).unwrap(), unit(ell, 0));
        for c in m.det_power_classes() {
            let bc = m.beta(&b, &c).unwrap();
            assert_eq!(m.beta(&b, &bc).unwrap(), c, "β² ℓ={ell}");
            if ell <= 2 {
                let cq = c.clone().relabel(Space::Q);
                let bq = m.beta_prime(&b, &cq).unwrap();
                assert_eq!(m.beta_prime(&b, &bq).unwrap(), cq, "β′² ℓ={ell}");
            }
        }
    }
}

#[test]
fn beta_is_semilinear_for_generators() {
    let letters = [Letter::E(0), Letter::F(0), Letter::XPlus(0, 1), Letter::XPlus(0, -1), Letter::XMinus(0, 1), Letter::XMinus(0, -1)];
    for ell in 1..=2 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        for c in m.det_power_classes() {
            let bc = m.beta(&b, &c).unwrap();
            for l in &letters {
                let lhs = m.beta(&b, &apply_letter(&m, l, &c).unwrap()).unwrap();
                assert_eq!(lhs, bar_action(&m, l, &bc).unwrap(), "β({l}·v) ℓ={ell}");
            }
            // β(q·v) = q⁻¹·β(v)
            let q = BarLaurent::q_pow(1);
            assert_eq!(m.beta(&b, &c.scale(&q)).unwrap(), bc.scale(&q.bar()));
        }
    }
}

#[test]
fn pairing_on_highest_weight_vectors() {
    for ell in 1..=2 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        let one = unit(ell, 0);
        for (i, j) in (-2..=2).cartesian_product(-2..=2) {
            let x = TorusScalar::z_pow(ell, 0, i);
            let y = TorusScalar::z_pow(ell, ell - 1, j);
            let v = bar_pair(&m, &b, &one.scale_torus(&x), &one.scale_torus(&y));
            assert_eq!(v, &x * &y.dagger());
        }
    }
}

#[test]
fn pairing_is_dagger_symmetric() {
    for ell in 1..=2 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        let span = m.det_power_classes();
        for x in &span {
            for y in &span {
                assert_eq!(bar_pair(&m, &b, x, y), bar_pair(&m, &b, y, x).dagger());
            }
        }
    }
}

#[test]
fn adjunction_for_generators() {
    let letters = [
        Letter::E(0),
        Letter::F(0),
        Letter::K(0, 1),
        Letter::K(0, -1),
        Letter::XPlus(0, 1),
        Letter::XPlus(0, -1),
        Letter::XMinus(0, 1),
        Letter::XMinus(0, -1),
        Letter::E(1),
        Letter::F(1),
    ];
    for ell in 1..=2 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        let span = m.det_power_classes();
        for l in &letters {
            for x in &span {
                let ux = apply_letter(&m, l, x).unwrap();
                for y in &span {
                    let lhs = bar_pair(&m, &b, &ux, y);
                    let rhs = bar_pair(&m, &b, x, &psi_action(&m, l, y).unwrap());
                    assert_eq!(lhs, rhs, "({l}x|y) ℓ={ell}");
                }
            }
        }
    }
}

#[test]
fn beta_compatible_with_double_bar() {
    for ell in 1..=2 {
        let m = model(ell);
        let b = ScalarBook::new(&m).unwrap();
        let span = m.det_power_classes();
        for x in &span {
            let bx = m.beta(&b, x).unwrap();
            for y in &span {
                let yq = y.clone().relabel(Space::Q);
                let by = m.beta_prime(&b, &yq).unwrap();
                let lhs = exact(m.pair(&b, &bx, &yq, PairingKind::DoubleBar, -16).unwrap());
                let rhs = exact(m.pair(&b, x, &by, PairingKind::DoubleBar, -16).unwrap());
                assert_eq!(lhs, rhs.bar());
            }
        }
    }
}

#[test]
fn colon_pairing_on_units() {
    // (1_{10}:1′_{10}) = 1 and (1_{21}:1′_{21}) = Σ 1/e_F
    let m = model(1);
    let b = ScalarBook::new(&m).unwrap();
    let v = exact(m.pair(&b, &unit(1, 0), &FixedClass::unit(1, 0, Space::Q), PairingKind::Colon, -16).unwrap());
    assert!(v.is_one());
    let m = model(2);
    let v = exact(m.pair(&b_of(&m), &unit(2, 1), &FixedClass::unit(2, 1, Space::Q), PairingKind::Colon, -16).unwrap());
    assert!(v.is_one(), "χ(P¹, O) = 1, got {v}");
}

fn b_of(m: &A1Model) -> ScalarBook {
    ScalarBook::new(m).unwrap()
}

#[test]
fn dualities_are_involutive() {
    for ell in 1..=3 {
        let m = model(ell);
        for c in m.det_power_classes() {
            assert_eq!(m.omega_pullback(&m.omega_pullback(&c)), c);
            assert_eq!(m.serre_dual(&m.serre_dual(&c)), c);
            let cq = c.clone().relabel(Space::Q);
            assert_eq!(m.serre_dual(&m.serre_dual(&cq)), cq);
            assert_eq!(m.gamma_f(&m.gamma_f(&c).unwrap()).unwrap(), c);
            assert_eq!(m.gamma_q(&m.gamma_q(&cq).unwrap()).unwrap(), cq);
        }
    }
    // χ(P¹, Ω) = −1, so the Serre dual of O integrates to 1.
    let m = model(2);
    let d = m.serre_dual(&unit(2, 1));
    assert!(m.integrate(&d).to_torus().unwrap().is_one());
    let q1 = FixedClass::unit(2, 0, Space::Q);
    assert_eq!(m.serre_dual(&q1), q1);
}

#[test]
fn kappa_inverse_round_trip() {
    for ell in 1..=3 {
        let m = model(ell);
        for c in m.det_power_classes() {
            let k = m.kappa_star(&c).unwrap();
            let back: TailClass = m.kappa_star_inv(&k, -16).unwrap();
            assert_eq!(back.truncation_order(), -16);
            assert!(back.agrees_with(&c).unwrap(), "ℓ={ell}");
            assert_eq!(m.kappa_star_inv_exact(&k).unwrap(), c);
        }
    }
}

#[test]
fn kappa_determinant_is_a_completion_unit() {
    let m = model(2);
    let block = BlockSpace::new(&m).unwrap();
    let (det, unit) = block.kappa_determinant(-16).unwrap();
    assert!(unit, "det κ★ = {det}");
    // det κ★ = Π_S e_N(S) up to the Vandermonde normalization, which cancels.
    let mut expect = TorusScalar::one(2);
    for a in 0..=2 {
        for s in m.subsets(a) {
            expect = &expect * &m.e_n(s);
        }
    }
    assert_eq!(det, expect);
}

#[test]
fn operators_commute_with_weyl_permutations() {
    let ops = [Op::XPlus(0), Op::XPlus(1), Op::XMinus(-1), Op::XtPlus(0), Op::XtMinus(1), Op::K(1), Op::KPlus(1), Op::KMinus(-2), Op::H(1), Op::P(2), Op::EDiv(2), Op::FDiv(2)];
    for ell in 2..=3 {
        let m = model(ell);
        for perm in (0..ell).permutations(ell) {
            for c in m.det_power_classes() {
                let sc = m.permute_class(&c, &perm).unwrap();
                for op in &ops {
                    let lhs = m.act(op, &sc).unwrap();
                    let rhs = m.permute_class(&m.act(op, &c).unwrap(), &perm).unwrap();
                    assert_eq!(lhs, rhs, "{op:?} ℓ={ell} σ={perm:?}");
                }
            }
        }
    }
}

#[test]
fn symmetric_classes_form_a_submodule() {
    let m = model(3);
    let sym = |c: &FixedClass| (0..3).permutations(3).all(|p| m.permute_class(c, &p).unwrap() == *c);
    // 1_{30} and e_1(z)·1_{30} are symmetric; the operators keep them symmetric.
    let e1 = (0..3).fold(TorusScalar::zero(3), |acc, j| &acc + &TorusScalar::z_pow(3, j, 1));
    for v in [unit(3, 0), unit(3, 0).scale_torus(&e1)] {
        assert!(sym(&v));
        let mut w = v.clone();
        for op in [Op::XMinus(0), Op::XMinus(1), Op::XMinus(-1)] {
            w = m.act(&op, &w).unwrap();
            assert!(sym(&w), "{op:?}");
        }
    }
}

/// Words in `x⁻_r` and the divided powers `(x⁻_0)^{(n)}` applied to `1_{ℓ0}`
/// generate **W** over the torus ring.
#[test]
fn highest_weight_vector_is_cyclic() {
    for ell in 1..=3 {
        let m = model(ell);
        let block = BlockSpace::new(&m).unwrap();
        let mut layers: Vec<Vec<FixedClass>> = vec![vec![unit(ell, 0)]];
        for a in 1..=ell {
            let mut next: Vec<FixedClass> =
                layers[a - 1].iter().flat_map(|v| (-2..=2).map(|r| m.act(&Op::XMinus(r), v).unwrap()).collect::<Vec<_>>()).collect();
            for n in 2..=a {
                next.extend(layers[a - n].iter().map(|v| m.act(&Op::FDiv(n as u32), v).unwrap()));
            }
            layers.push(next);
        }
        for (a, cands) in layers.iter().enumerate() {
            let idx: Vec<usize> = (0..block.dim()).filter(|&i| block.slots[i].a == a).collect();
            let coords: Vec<Vec<RationalScalar>> = cands.iter().map(|v| block.rational_coordinates(v).unwrap()).collect();
            let found = coords.iter().combinations(idx.len()).any(|pick| {
                let mat: linalg::Matrix = pick.iter().map(|c| idx.iter().map(|&i| c[i].clone()).collect()).collect();
                linalg::determinant(&mat, ell).to_torus().is_some_and(|d| d.is_unit())
            });
            assert!(found, "component {a} of ℓ={ell} is not generated");
        }
    }
}

fn lattice_vector(ell: usize, coeffs: &[(i64, i64, i64)]) -> FixedClass {
    let m = model(ell);
    let span = m.det_power_classes();
    let mut out = FixedClass::zero(ell, Space::F);
    for (i, &(c, qe, ze)) in coeffs.iter().enumerate() {
        let mut z = vec![0; ell];
        z[0] = ze;
        out = out.add(&span[i % span.len()].scale_torus(&TorusScalar::term(c, qe, &z)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn beta_involutive_on_lattice(coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2), 1..6)) {
        let v = lattice_vector(2, &coeffs);
        let m = model(2);
        let b = ScalarBook::new(&m).unwrap();
        prop_assert_eq!(m.beta(&b, &m.beta(&b, &v).unwrap()).unwrap(), v);
    }

    #[test]
    fn pairing_is_sesquilinear(coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2), 1..5), qe in -2i64..=2, ze in -2i64..=2) {
        let m = model(2);
        let b = ScalarBook::new(&m).unwrap();
        let v = lattice_vector(2, &coeffs);
        let w = unit(2, 1);
        let c = TorusScalar::term(1, qe, &[ze, 0]);
        let base = bar_pair(&m, &b, &v, &w);
        prop_assert_eq!(bar_pair(&m, &b, &v.scale_torus(&c), &w), &base * &c);
        prop_assert_eq!(bar_pair(&m, &b, &v, &w.scale_torus(&c)), &base * &c.dagger());
    }

    #[test]
    fn operators_are_linear(coeffs in prop::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2), 1..6), r in -2i64..=2) {
        let m = model(3);
        let v = lattice_vector(3, &coeffs);
        let w = lattice_vector(3, &coeffs[..1]);
        for op in [Op::XPlus(r), Op::XMinus(r), Op::XtPlus(r), Op::XtMinus(r)] {
            let lhs = m.act(&op, &v.add(&w)).unwrap();
            let rhs = m.act(&op, &v).unwrap().add(&m.act(&op, &w).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

use super::*;
use crate::numkernel::binom;
use crate::pade::{pade, TaylorSeries};
use crate::processes::LevyModel;
use crate::quadrature::{jacobi_roots, JacobiParams};

fn d(s: &str, p: Precision) -> BigReal {
    BigReal::parse(s, p).unwrap()
}

fn q(n: i64, m: i64, p: Precision) -> BigReal {
    BigReal::from_ratio(n, m, p)
}

fn close(a: &BigReal, b: &BigReal, tol: &BigReal) -> bool {
    (a - b).abs() <= tol * b.abs().max(&BigReal::one(b.precision()))
}

fn gamma_series(len: usize, p: Precision) -> TaylorSeries {
    LevyModel::gamma(p).taylor_coeffs(len)
}

fn coeffwise_close(a: &RationalFunction, b: &RationalFunction, tol: &BigReal) -> bool {
    let z = BigReal::zero(a.precision());
    let get = |v: &[BigReal], i: usize| v.get(i).cloned().unwrap_or_else(|| z.clone());
    let n = a.num.len().max(b.num.len());
    let m = a.den.len().max(b.den.len());
    (0..n).all(|i| close(&get(&a.num, i), &get(&b.num, i), tol))
        && (0..m).all(|i| close(&get(&a.den, i), &get(&b.den, i), tol))
}

#[test]
fn gamma_two_sided_order_one() {
    let p = Precision::default();
    let (h, rep) = approx_two_sided(&LevyModel::gamma(p), 1).unwrap();
    assert!(close(&h.drift, &BigReal::one(p), &p.tol(20)));
    assert!(h.sigma2.is_zero());
    assert_eq!(h.positive.len(), 1);
    assert!(h.negative.is_empty());
    assert!(close(&h.positive[0].amplitude, &q(27, 16, p), &p.tol(20)));
    assert!(close(&h.positive[0].rate, &q(3, 2, p), &p.tol(20)));
    assert_eq!(h.cutoff, Cutoff::Identity);
    // z + z^2 (1/2) / (1 - 2z/3) = z + z^2/2 + z^3/3 + 2 z^4 / 9 + ...
    let c = h.taylor_coeffs(5);
    let expect = [q(0, 1, p), q(1, 1, p), q(1, 2, p), q(1, 3, p), q(2, 9, p)];
    for (a, b) in c.iter().zip(&expect) {
        assert!((a - b).abs() < p.tol(20));
    }
    assert_eq!(rep.cumulants.len(), 3);
    assert!(rep.cumulants.iter().all(|r| r.expected && r.matched));
    let pf = crate::pade::partial_fractions(&rep.rational).unwrap();
    assert_eq!(pf.poles.len(), 1);
    assert!((&pf.poles[0].location - &q(3, 2, p)).abs() < p.tol(20));
}

#[test]
fn gamma_one_sided_order_one_k0() {
    let p = Precision::default();
    let (h, rep) = approx_one_sided(&LevyModel::gamma(p), 1, 0).unwrap();
    assert!(h.drift.is_zero() && h.sigma2.is_zero());
    assert_eq!(h.cutoff, Cutoff::Zero);
    assert!(close(&h.positive[0].amplitude, &q(4, 1, p), &p.tol(20)));
    assert!(close(&h.positive[0].rate, &q(2, 1, p), &p.tol(20)));
    assert!(close(&h.jump_intensity(), &q(2, 1, p), &p.tol(20)));
    // z / (1 - z/2)
    let r = &rep.rational;
    assert!(close(&r.num[1], &BigReal::one(p), &p.tol(20)));
    assert!(close(&r.den[1], &q(-1, 2, p), &p.tol(20)));
    let dens = h.levy_density(&BigReal::one(p));
    assert!(close(
        &dens,
        &(BigReal::from_int(-2, p).exp() * 4),
        &p.tol(20)
    ));
    assert!((dens.to_f64() - 0.5413).abs() < 1e-4);
    assert!(h.levy_density(&BigReal::from_int(-1, p)).is_zero());
    let (r2, r1, r0) = h.asymptotic_coeffs();
    assert!(r2.is_zero() && r1.is_zero());
    assert!(close(&r0, &q(-2, 1, p), &p.tol(20)));
}

#[test]
fn asymptotics_of_pure_drift_and_k2() {
    let p = Precision::new(60);
    let h =
        HyperExpProcess::new(d("0.3", p), BigReal::zero(p), vec![], vec![], Cutoff::Zero).unwrap();
    let (r2, r1, r0) = h.asymptotic_coeffs();
    assert!(r2.is_zero() && r0.is_zero());
    assert_eq!(r1, d("0.3", p));
    let (h2, _) = approx_one_sided(&LevyModel::gamma(p), 3, 2).unwrap();
    assert!(h2.asymptotic_coeffs().0.is_positive());
    // the asymptotic triple matches psi(z) at a large real z
    let z = BigReal::from_int(1_000_000, p);
    let (r2, r1, r0) = h2.asymptotic_coeffs();
    let approx = &r2 * &z * &z + &r1 * &z + r0;
    let exact = h2.laplace_exponent_real(&z).unwrap();
    assert!((exact - approx).abs() < BigReal::from_f64(1e-3, p));
}

#[test]
fn gamma_explicit_k0_order_one() {
    let p = Precision::default();
    let r = approx_gamma_explicit(1, 0, p).unwrap();
    // 2z / (2 - z)
    assert!(r.num[0].abs() < p.tol(10));
    assert!(close(&r.num[1], &BigReal::one(p), &p.tol(10)));
    assert!(close(&r.den[1], &q(-1, 2, p), &p.tol(10)));
    // q_{n,k}(1) = P_n^(0,k)(1) > 0 up to normalization
    for n in 1..6 {
        for k in 0..3 {
            let r = approx_gamma_explicit(n, k, p).unwrap();
            assert!(poly::eval(&r.den, &BigReal::one(p), p).is_positive());
        }
    }
}

#[test]
fn gamma_explicit_equals_generic() {
    let p = Precision::default();
    let tol = p.tol(50);
    for n in 1..=10 {
        for k in 0..=2 {
            let e = approx_gamma_explicit(n, k, p).unwrap();
            let g = pade(&gamma_series(2 * n + k + 1, p), n + k, n).unwrap();
            assert!(coeffwise_close(&e, &g, &tol), "n={n} k={k}");
        }
    }
}

#[test]
fn gamma_denominator_alternative_form() {
    // from the two-binomial form of P_n^(0,k): sum_j binom(n, j) binom(n+k, j) (1-z)^j
    let p = Precision::default();
    for n in 1..8usize {
        for k in 0..3usize {
            let mut alt = vec![BigReal::zero(p); n + 1];
            let mut pw = vec![BigReal::one(p)];
            for j in 0..=n {
                let c = binom(&BigReal::from_int((k + n) as i64, p), j, p)
                    * binom(&BigReal::from_int(n as i64, p), j, p);
                for (i, v) in pw.iter().enumerate() {
                    alt[i] += &c * v;
                }
                pw = poly::mul(&pw, &[BigReal::one(p), BigReal::from_int(-1, p)], p);
            }
            let a0 = alt[0].clone();
            let r = approx_gamma_explicit(n, k, p).unwrap();
            for (x, y) in r.den.iter().zip(&alt) {
                assert!((x - &(y / &a0)).abs() < p.tol(30), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn tempered_stable_explicit_equals_generic() {
    let p = Precision::default();
    let tol = p.tol(50);
    for (alpha, ks) in [
        ("0.5", vec![0, 1, 2]),
        ("1.2", vec![1, 2]),
        ("0.3", vec![0, 1]),
    ] {
        let a = d(alpha, p);
        let m = LevyModel::tempered_stable(a.clone()).unwrap();
        for n in 1..=8 {
            for &k in &ks {
                let e = approx_tempered_stable_explicit(&a, n, k).unwrap();
                let g = pade(&m.taylor_coeffs(2 * n + k + 1), n + k, n).unwrap();
                assert!(coeffwise_close(&e, &g, &tol), "alpha={alpha} n={n} k={k}");
                assert!(poly::eval(&e.num, &BigReal::zero(p), p).abs() < p.tol(40));
            }
        }
    }
}

#[test]
fn tempered_stable_denominator_example() {
    // z P_1^(1/2,1/2)(2/z - 1) = 3 - 3z/2
    let p = Precision::default();
    let r = approx_tempered_stable_explicit(&q(1, 2, p), 1, 1).unwrap();
    assert!(close(&r.den[1], &q(-1, 2, p), &p.tol(20)));
    assert!(matches!(
        approx_tempered_stable_explicit(&d("1.5", p), 3, 0),
        Err(Error::VariantUnavailable(_))
    ));
}

#[test]
fn one_sided_nodes_are_shifted_jacobi_roots() {
    let p = Precision::default();
    for (alpha, k) in [
        ("0", 0usize),
        ("0", 1),
        ("0", 2),
        ("0.5", 0),
        ("0.5", 2),
        ("1.2", 1),
    ] {
        let a = d(alpha, p);
        let model = if a.is_zero() {
            LevyModel::gamma(p)
        } else {
            LevyModel::tempered_stable(a.clone()).unwrap()
        };
        let n = 6;
        let (_, rep) = approx_one_sided(&model, n, k).unwrap();
        let jp = JacobiParams::new(a.clone(), BigReal::from_int(k as i64, p) - &a, n).unwrap();
        let y = jacobi_roots(&jp).unwrap();
        for (x, y) in rep.rule.nodes.iter().zip(&y) {
            assert!(
                (x - &((y + 1) / 2)).abs() < p.tol(40),
                "alpha={alpha} k={k}"
            );
        }
        // and the denominator is z^n P_n(2/z - 1)
        let e = if a.is_zero() {
            approx_gamma_explicit(n, k, p).unwrap()
        } else {
            approx_tempered_stable_explicit(&a, n, k).unwrap()
        };
        for (u, v) in rep.rational.den.iter().zip(&e.den) {
            assert!((u - v).abs() < p.tol(40));
        }
    }
}

fn catalogue(p: Precision) -> Vec<LevyModel> {
    vec![
        LevyModel::gamma(p),
        LevyModel::tempered_stable(d("0.5", p)).unwrap(),
        LevyModel::tempered_stable(d("1.2", p)).unwrap(),
        LevyModel::vg_direct(d("21.8735", p), d("56.4414", p), d("0.2", p), d("0.1", p)).unwrap(),
        LevyModel::cgmy(
            d("1", p),
            d("8.8", p),
            d("14.5", p),
            d("1.2", p),
            BigReal::zero(p),
        )
        .unwrap(),
        LevyModel::nig(d("0.3", p), d("0.25", p), d("-0.05", p), BigReal::zero(p)).unwrap(),
        LevyModel::nig_subordinator(d("0.5", p)).unwrap(),
    ]
}

#[test]
fn two_sided_matches_cumulants_and_respects_the_strip() {
    let p = Precision::default();
    for m in catalogue(p) {
        let s = m.strip();
        for n in [1, 4, 9] {
            let (h, rep) = approx_two_sided(&m, n).unwrap();
            assert_eq!(rep.cumulants.len(), 2 * n + 1);
            assert!(
                rep.cumulants.iter().all(|r| r.matched),
                "{} n={n}",
                m.family
            );
            let tol = p.tol(20);
            for t in &h.positive {
                assert!(t.rate >= s.rho.clone().unwrap() - &tol);
            }
            for t in &h.negative {
                assert!(t.rate <= -s.rho_hat.clone().unwrap() + &tol);
            }
            for x in [-3.0, -0.5, 0.01, 0.7, 4.0] {
                assert!(h.levy_density(&BigReal::from_f64(x, p)) >= 0);
            }
        }
    }
}

#[test]
fn one_sided_matches_cumulants() {
    let p = Precision::default();
    for m in catalogue(p)
        .into_iter()
        .filter(LevyModel::is_spectrally_positive)
    {
        for n in [1, 5, 12] {
            for k in 0..=2 {
                if k == 0 && !m.finite_variation() {
                    assert!(matches!(
                        approx_one_sided(&m, n, k),
                        Err(Error::VariantUnavailable(_))
                    ));
                    continue;
                }
                let (h, rep) = approx_one_sided(&m, n, k).unwrap();
                assert_eq!(rep.cumulants.len(), 2 * n + k);
                assert!(
                    rep.cumulants.iter().all(|r| r.matched),
                    "{} n={n} k={k}",
                    m.family
                );
                assert_eq!(h.sigma2.is_positive(), k == 2);
                if k < 2 {
                    assert!(h.is_subordinator() || !m.finite_variation());
                }
            }
        }
    }
}

#[test]
fn matching_stops_after_the_guaranteed_order() {
    let p = Precision::default();
    let m = LevyModel::gamma(p);
    let (h, _) = approx_two_sided(&m, 3).unwrap();
    let t = cumulant_table(&m, &h, 8, 7);
    assert!(t[..7].iter().all(|r| r.matched && r.expected));
    assert!(!t[7].matched && !t[7].expected);
    // Gamma n = 1: fourth Taylor coefficient 2/9 against 1/4
    let (h1, _) = approx_two_sided(&m, 1).unwrap();
    let c = h1.taylor_coeffs(5);
    assert!((&c[4] - &q(2, 9, p)).abs() < p.tol(20));
}

#[test]
fn symmetric_model_with_odd_order_has_a_zero_node() {
    // a = ahat makes |v|^3 mu* symmetric, so the middle node of an odd rule is 0
    let p = Precision::default();
    let m = LevyModel::vg_direct(d("2", p), d("2", p), d("1", p), BigReal::zero(p)).unwrap();
    let (h, rep) = approx_two_sided(&m, 3).unwrap();
    assert_eq!(h.positive.len(), 1);
    assert_eq!(h.negative.len(), 1);
    assert!(h.sigma2.is_positive());
    assert!(close(&h.sigma2, &(&rep.rule.weights[1] * 2), &p.tol(20)));
    assert!(rep.cumulants.iter().all(|r| r.matched));
    // the process is symmetric
    assert!(close(
        &h.positive[0].amplitude,
        &h.negative[0].amplitude,
        &p.tol(20)
    ));
    assert!((&h.positive[0].rate + &h.negative[0].rate).abs() < p.tol(20));
}

#[test]
fn gaussian_part_is_passed_through() {
    let p = Precision::default();
    let mut m = LevyModel::vg_direct(d("5", p), d("7", p), d("0.5", p), d("0.02", p)).unwrap();
    m.parts.push(crate::processes::ExponentPart::Gaussian {
        sigma2: d("0.04", p),
    });
    let (h, rep) = approx_two_sided(&m, 4).unwrap();
    assert!(close(&h.sigma2, &d("0.04", p), &p.tol(20)));
    assert!(rep.cumulants.iter().all(|r| r.matched));
}

#[test]
fn k2_gaussian_coefficient_positive_small() {
    let p = Precision::default();
    for m in catalogue(p)
        .into_iter()
        .filter(LevyModel::is_spectrally_positive)
    {
        for n in 1..=8 {
            let (h, _) = approx_one_sided(&m, n, 2).unwrap();
            assert!(h.sigma2.is_positive());
        }
    }
}

#[test]
fn rational_and_partial_fraction_round_trip() {
    let p = Precision::default();
    for m in catalogue(p) {
        let (h, rep) = approx_two_sided(&m, 3).unwrap();
        let back = HyperExpProcess::from_rational(&rep.rational).unwrap();
        for z in ["0.3", "-0.7", "1.1"] {
            let z = d(z, p);
            let a = h.laplace_exponent_real(&z).unwrap();
            let b = back.laplace_exponent_real(&z).unwrap();
            assert!(close(&a, &b, &p.tol(30)), "{}", m.family);
            let r = rep.rational.eval(&z).unwrap();
            assert!(close(&a, &r, &p.tol(30)));
        }
    }
}

#[test]
fn complex_and_real_evaluations_agree() {
    let p = Precision::new(60);
    let (h, _) = approx_two_sided(&catalogue(p)[4], 5).unwrap();
    for x in [-3.0, 0.5, 2.0] {
        let a = h
            .laplace_exponent(num_complex::Complex64::new(x, 0.0))
            .unwrap()
            .re;
        let b = h
            .laplace_exponent_real(&BigReal::from_f64(x, p))
            .unwrap()
            .to_f64();
        assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
    }
    let pole = h.positive[0].rate.to_f64();
    assert!(matches!(
        h.laplace_exponent(num_complex::Complex64::new(pole, 0.0)),
        Err(Error::PoleEvaluation { .. })
    ));
}

#[test]
fn difference_of_gamma_tails_is_vg() {
    let p = Precision::default();
    let vg =
        LevyModel::vg_direct(d("21.8735", p), d("56.4414", p), d("0.2", p), d("0.03", p)).unwrap();
    let spec = TailSpec { n: 4, k: 1 };
    let (h, reports) = approx_by_tails(&vg, spec, spec).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(h.positive.len(), 4);
    assert_eq!(h.negative.len(), 4);
    // cumulants match up to 2n + k on both tails
    let t = cumulant_table(&vg, &h, 9, 9);
    assert!(t.iter().all(|r| r.matched));
    // same thing through the explicit Gamma formulas
    let (ptail, ntail) = vg.split_tails().unwrap();
    let hp = explicit_one_sided(&ptail.unwrap().parts[0], 4, 1).unwrap();
    let hn = explicit_one_sided(&ntail.unwrap().parts[0], 4, 1).unwrap();
    let e = compose_difference(&hp, &hn, &d("0.03", p)).unwrap();
    for z in ["0.5", "-3", "10"] {
        let z = d(z, p);
        assert!(close(
            &e.laplace_exponent_real(&z).unwrap(),
            &h.laplace_exponent_real(&z).unwrap(),
            &p.tol(40)
        ));
    }
}

#[test]
fn difference_trivial_cases() {
    let p = Precision::new(60);
    let (g, _) = approx_one_sided(&LevyModel::gamma(p), 3, 1).unwrap();
    let empty = HyperExpProcess::new(
        BigReal::zero(p),
        BigReal::zero(p),
        vec![],
        vec![],
        Cutoff::Zero,
    )
    .unwrap();
    let shifted = compose_difference(&g, &empty, &d("0.5", p)).unwrap();
    let z = d("0.4", p);
    let expect = g.laplace_exponent_real(&z).unwrap() + &z * &d("0.5", p);
    assert!(close(
        &shifted.laplace_exponent_real(&z).unwrap(),
        &expect,
        &p.tol(30)
    ));
    // mirrored difference is odd: psi(-z) = psi(z) up to an odd drift term, here zero
    let sym = compose_difference(&g, &g, &BigReal::zero(p)).unwrap();
    let a = sym.laplace_exponent_real(&z).unwrap();
    let b = sym.laplace_exponent_real(&-&z).unwrap();
    assert!(close(&a, &b, &p.tol(30)));
    let c = sym.cumulants(6);
    for j in [0, 2, 4] {
        assert!(c[j].abs() < p.tol(30), "odd cumulant {}", j + 1);
    }
}

#[test]
fn brownian_subordination_single_term() {
    // sigma = sqrt(2), a = 0: beta splits into +-sqrt(beta)
    let p = Precision::default();
    let sub = HyperExpProcess::new(
        BigReal::zero(p),
        BigReal::zero(p),
        vec![ExpTerm::new(d("3", p), d("4", p))],
        vec![],
        Cutoff::Zero,
    )
    .unwrap();
    let z = subordinate_brownian(&sub, &BigReal::from_int(2, p).sqrt(), &BigReal::zero(p)).unwrap();
    assert!(close(&z.positive[0].rate, &d("2", p), &p.tol(20)));
    assert!(close(&z.negative[0].rate, &d("-2", p), &p.tol(20)));
    assert!(close(
        &z.positive[0].amplitude,
        &z.negative[0].amplitude,
        &p.tol(20)
    ));
    // psi_Z(z) = psi_sub(z^2) with sigma^2/2 = 1
    for x in ["0.5", "1.3", "-1.7"] {
        let x = d(x, p);
        let w = &x * &x;
        assert!(close(
            &z.laplace_exponent_real(&x).unwrap(),
            &sub.laplace_exponent_real(&w).unwrap(),
            &p.tol(30)
        ));
    }
    let bad =
        HyperExpProcess::new(BigReal::zero(p), d("1", p), vec![], vec![], Cutoff::Zero).unwrap();
    assert!(subordinate_brownian(&bad, &d("1", p), &d("0", p)).is_err());
}

#[test]
fn nig_by_subordination_matches_cumulants() {
    let p = Precision::default();
    let m = LevyModel::nig(d("0.3", p), d("0.25", p), d("-0.05", p), d("0.01", p)).unwrap();
    for (n, k) in [(3, 0), (5, 1), (8, 1)] {
        let h = approx_nig_subordinated(&m, n, k).unwrap();
        // chain rule: psi_Z(z) = psi_Y(w(z)) with w(z) = O(z), so the first 2n+k
        // cumulants of Z depend only on the matched cumulants of Y
        let t = cumulant_table(&m, &h, 2 * n + k, 2 * n + k);
        assert!(t.iter().all(|r| r.matched), "n={n} k={k}");
    }
    assert!(approx_nig_subordinated(&m, 3, 2).is_err());
}

#[test]
fn rescale_identity_and_substitution() {
    let p = Precision::default();
    let (g, _) = approx_two_sided(&catalogue(p)[3], 3).unwrap();
    let one = BigReal::one(p);
    assert_eq!(rescale(&g, &one, &one).unwrap(), g);
    let single = HyperExpProcess::new(
        BigReal::zero(p),
        BigReal::zero(p),
        vec![ExpTerm::new(d("3", p), d("5", p))],
        vec![],
        Cutoff::Zero,
    )
    .unwrap();
    let two = d("2", p);
    let r = rescale(&single, &two, &one).unwrap();
    // lambda psi(c z) has rate beta/c and amplitude lambda alpha / c
    assert!(close(&r.positive[0].rate, &d("2.5", p), &p.tol(20)));
    assert!(close(&r.positive[0].amplitude, &d("1.5", p), &p.tol(20)));
    let (c, lam) = (d("0.7", p), d("1.9", p));
    let s = rescale(&g, &c, &lam).unwrap();
    for z in ["0.1", "0.35", "-0.8", "2.0", "-4.5"] {
        let z = d(z, p);
        let expect = &lam * &g.laplace_exponent_real(&(&c * &z)).unwrap();
        assert!(close(
            &s.laplace_exponent_real(&z).unwrap(),
            &expect,
            &p.tol(30)
        ));
    }
    let k0 = g.cumulants(5);
    let k1 = s.cumulants(5);
    for j in 0..5 {
        let expect = &lam * &c.powi(j as i32 + 1) * &k0[j];
        assert!(close(&k1[j], &expect, &p.tol(30)));
    }
}

#[test]
fn cutoff_conversion_preserves_the_exponent() {
    let p = Precision::default();
    let (g, _) = approx_two_sided(&catalogue(p)[4], 3).unwrap();
    let h0 = g.with_cutoff(Cutoff::Zero);
    let z = d("0.9", p);
    assert!(close(
        &g.laplace_exponent_real(&z).unwrap(),
        &h0.laplace_exponent_real(&z).unwrap(),
        &p.tol(30)
    ));
    assert!(close(&h0.drift_hx(), &g.drift, &p.tol(30)));
}

#[test]
fn json_round_trip() {
    let p = Precision::default();
    let (g, _) = approx_two_sided(&catalogue(p)[3], 4).unwrap();
    let text = g.to_json(60);
    let back = HyperExpProcess::from_json(&text, p).unwrap();
    assert_eq!(back.provenance, g.provenance);
    let z = d("1.0", p);
    assert!(close(
        &back.laplace_exponent_real(&z).unwrap(),
        &g.laplace_exponent_real(&z).unwrap(),
        &BigReal::ten_pow(-55, p)
    ));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["cutoff"], "h=x");
    assert!(HyperExpProcess::from_json(r#"{"drift":"1"}"#, p).is_err());
}

#[test]
fn invalid_terms_rejected() {
    let p = Precision::new(30);
    let z = BigReal::zero(p);
    assert!(HyperExpProcess::new(z.clone(), d("-1", p), vec![], vec![], Cutoff::Zero).is_err());
    assert!(HyperExpProcess::new(
        z.clone(),
        z.clone(),
        vec![ExpTerm::new(d("1", p), d("-1", p))],
        vec![],
        Cutoff::Zero
    )
    .is_err());
    assert!(HyperExpProcess::new(
        z.clone(),
        z.clone(),
        vec![],
        vec![ExpTerm::new(d("-1", p), d("-1", p))],
        Cutoff::Zero
    )
    .is_err());
    assert!(approx_one_sided(&catalogue(p)[3], 2, 1).is_err());
    assert!(approx_one_sided(&LevyModel::gamma(p), 2, 3).is_err());
    assert!(approx_two_sided(&LevyModel::gamma(p), 0).is_err());
}

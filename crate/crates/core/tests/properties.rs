//! Property tests over randomly drawn model parameters.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use levy_pade::hyperexp::{
    approx_by_tails, approx_one_sided, approx_two_sided, HyperExpProcess, TailSpec,
};
use levy_pade::pade::{pade, TaylorSeries};
use levy_pade::processes::LevyModel;
use levy_pade::quadrature::{gauss_from_moments, gauss_jacobi_shifted, JacobiParams};
use levy_pade::transforms::{
    cdf_many, price_european_call, price_european_put, Contract, HepExponent, InversionGrid,
};
use levy_pade::{BigReal, Precision};

const P: Precision = Precision::new(80);

fn big(x: f64) -> BigReal {
    // three decimals, so the parameter is exact in decimal
    BigReal::parse(&format!("{x:.3}"), P).unwrap()
}

fn vg(a: f64, ahat: f64, nu: f64) -> LevyModel {
    LevyModel::vg_direct(big(a), big(ahat), big(nu), BigReal::zero(P)).unwrap()
}

fn cgmy(g: f64, m: f64, y: f64) -> LevyModel {
    LevyModel::cgmy(BigReal::one(P), big(g), big(m), big(y), BigReal::zero(P)).unwrap()
}

fn model_strategy() -> impl Strategy<Value = LevyModel> {
    prop_oneof![
        (2.0..40.0f64, 2.0..60.0f64, 0.05..1.0f64).prop_map(|(a, b, n)| vg(a, b, n)),
        (2.0..20.0f64, 2.0..20.0f64, 0.1..1.8f64)
            .prop_filter("Y = 1 is a different family", |t| (t.2 - 1.0).abs() > 0.05)
            .prop_map(|(g, m, y)| cgmy(g, m, y)),
    ]
}

fn rule_check(hep: &HyperExpProcess, model: &LevyModel) -> Result<(), TestCaseError> {
    let s = model.strip();
    let tol = P.tol(20);
    for t in &hep.positive {
        let rho = s.rho.as_ref().unwrap();
        prop_assert!(t.rate > (rho - &tol), "positive rate {} below rho", t.rate);
    }
    for t in &hep.negative {
        let rho_hat = s.rho_hat.as_ref().unwrap();
        prop_assert!(
            t.rate < (&tol - rho_hat),
            "negative rate {} above -rho_hat",
            t.rate
        );
    }
    for x in [-3.0, -0.5, -0.01, 0.01, 0.5, 3.0] {
        prop_assert!(hep.levy_density_f64(x) >= 0.0);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn two_sided_matches_cumulants(model in model_strategy(), n in 1usize..9) {
        let (hep, report) = approx_two_sided(&model, n).unwrap();
        prop_assert_eq!(report.cumulants.len(), 2 * n + 1);
        prop_assert!(report.cumulants.iter().all(|r| r.matched));
        rule_check(&hep, &model)?;
    }

    #[test]
    fn tails_match_cumulants(model in model_strategy(), n in 1usize..7, k in 1usize..3) {
        let spec = TailSpec { n, k };
        let (hep, reports) = approx_by_tails(&model, spec, spec).unwrap();
        for r in &reports {
            prop_assert!(r.cumulants.iter().all(|c| c.matched));
        }
        let exact = model.taylor_coeffs(2 * n + k + 1).coeffs;
        let approx = hep.taylor_coeffs(2 * n + k + 1);
        for j in 1..=2 * n + k {
            let err = (&approx[j] - &exact[j]).abs() / exact[j].abs().max(&BigReal::one(P));
            prop_assert!(err < P.tol(40), "order {j}: {}", err);
        }
        if k == 2 {
            prop_assert!(hep.sigma2.is_positive());
        }
        rule_check(&hep, &model)?;
    }

    #[test]
    fn stieltjes_pade_poles_are_negative(
        raw in prop::collection::vec((0.01..1.0f64, 0.05..2.0f64), 2..6),
        m in 1usize..4,
    ) {
        // f(z) = sum w / (1 + x z) for a discrete measure with more atoms than poles
        let n = m.min(raw.len() - 1);
        let coeffs: Vec<BigReal> = (0..2 * n)
            .map(|j| {
                raw.iter().fold(BigReal::zero(P), |acc, &(x, w)| {
                    acc + big(w) * big(-x).powi(j as i32)
                })
            })
            .collect();
        let max = coeffs.iter().fold(BigReal::zero(P), |a, c| a.max(&c.abs()).clone());
        let r = pade(&TaylorSeries::at_zero(coeffs.clone(), P), n - 1, n).unwrap();
        let mut back = vec![BigReal::zero(P); 2 * n];
        for (i, a) in r.num.iter().enumerate() {
            back[i] = a.clone();
        }
        // P - Q f vanishes through z^(2n-1)
        for j in 0..2 * n {
            let mut s = back[j].clone();
            for (i, b) in r.den.iter().enumerate().take(j + 1) {
                s -= b * &coeffs[j - i];
            }
            prop_assert!(s.abs() <= P.tol(30) * &max);
        }
        let rule = gauss_from_moments(&coeffs.iter().enumerate().map(|(j, c)| if j % 2 == 0 { c.clone() } else { -c }).collect::<Vec<_>>(),
            &BigReal::zero(P), &big(1.1)).unwrap();
        prop_assert!(rule.weights.iter().all(BigReal::is_positive));
        prop_assert!(rule.nodes.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn beta_moments_give_jacobi_rules(k in 0i64..4, n in 2usize..8) {
        // v^k dv on (0, 1): moments 1 / (j + k + 1)
        let moments: Vec<BigReal> = (0..2 * n as i64 + 1).map(|j| BigReal::from_ratio(1, j + k + 1, P)).collect();
        let rule = gauss_from_moments(&moments[..2 * n], &BigReal::zero(P), &BigReal::one(P)).unwrap();
        let jac = gauss_jacobi_shifted(&JacobiParams::new(BigReal::zero(P), BigReal::from_int(k, P), n).unwrap()).unwrap();
        for (a, b) in rule.nodes.iter().zip(&jac.nodes) {
            prop_assert!((a - b).abs() < P.tol(30));
        }
        for (a, b) in rule.weights.iter().zip(&jac.weights) {
            prop_assert!((a - b).abs() < P.tol(30));
        }
        for (j, m) in moments[..2 * n].iter().enumerate() {
            prop_assert!(((rule.moment(j) - m) / m).abs() < P.tol(30));
        }
        // degree 2n is not integrated exactly
        prop_assert!(((rule.moment(2 * n) - &moments[2 * n]) / &moments[2 * n]).abs() > P.tol(30));
        let next = gauss_from_moments(&(0..2 * n as i64 + 2).map(|j| BigReal::from_ratio(1, j + k + 1, P)).collect::<Vec<_>>(),
            &BigReal::zero(P), &BigReal::one(P)).unwrap();
        prop_assert!(rule.interlaces(&next));
    }

    #[test]
    fn serialization_round_trip(model in model_strategy(), n in 1usize..6) {
        let (hep, _) = approx_two_sided(&model, n).unwrap();
        let back = HyperExpProcess::from_json(&hep.to_json(P.digits() as usize + 8), P).unwrap();
        prop_assert_eq!(back.positive, hep.positive);
        prop_assert_eq!(back.negative, hep.negative);
        prop_assert_eq!(back.drift, hep.drift);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn put_call_parity(g in 4.0..12.0f64, m in 6.0..20.0f64, strike in 70.0..130.0f64, t in 0.1..1.0f64) {
        let model = cgmy(g, m, 0.8).calibrated(&big(0.03)).unwrap();
        let c = Contract { spot: 100.0, strike, maturity: t, rate: 0.03 };
        let grid = InversionGrid::default();
        let call = price_european_call(&model, &c, &grid).unwrap();
        let put = price_european_put(&model, &c, &grid).unwrap();
        prop_assert!((call - put - (100.0 - strike * (-0.03 * t).exp())).abs() < 1e-7);
    }

    #[test]
    fn approximate_cdf_is_monotone(n in 2usize..8, k in 0usize..3, t in 0.5..3.0f64) {
        let (hep, _) = approx_one_sided(&LevyModel::gamma(P), n, k).unwrap();
        let xs: Vec<f64> = (1..=60).map(|i| i as f64 * 0.25).collect();
        let grid = InversionGrid { tail_tolerance: 1e-5, ..InversionGrid::default() };
        let f = cdf_many(&HepExponent::new(&hep), t, &xs, &grid).unwrap();
        for w in f.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-7);
        }
        prop_assert!(f[0] > -1e-7 && f[f.len() - 1] < 1.0 + 1e-7);
        prop_assert!(f[f.len() - 1] > 0.9);
    }
}

#[test]
fn exponent_symmetry_at_seeded_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let models = [
        vg(21.8735, 56.4414, 0.2),
        cgmy(8.8, 14.5, 1.2),
        LevyModel::gamma(P),
    ];
    for m in &models {
        let s = m.strip();
        let lo = s.rho_hat.as_ref().map_or(-5.0, |r| -r.to_f64()) * 0.9;
        let hi = s.rho.as_ref().map_or(5.0, |r| r.to_f64()) * 0.9;
        for _ in 0..50 {
            let z = num_complex::Complex64::new(rng.gen_range(lo..hi), rng.gen_range(-50.0..50.0));
            let a = m.laplace_exponent(z).unwrap();
            let b = m.laplace_exponent(z.conj()).unwrap().conj();
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0), "{z}");
        }
    }
}

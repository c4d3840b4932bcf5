use super::*;
use crate::hyperexp::{approx_one_sided, approx_two_sided, ExpTerm};
use crate::numkernel::Precision;
use crate::processes::ExponentPart;

fn d(s: &str, p: Precision) -> BigReal {
    BigReal::parse(s, p).unwrap()
}

fn gamma_cdf_exact(t: u32, x: f64) -> f64 {
    // 1 - e^-x sum_{j<t} x^j / j!
    let mut term = 1.0;
    let mut s = 0.0;
    for j in 0..t {
        if j > 0 {
            term *= x / j as f64;
        }
        s += term;
    }
    1.0 - (-x).exp() * s
}

/// `P(Gamma(m, rate) > y)` for integer shape.
fn erlang_sf(m: u32, rate: f64, y: f64) -> f64 {
    if y <= 0.0 {
        return 1.0;
    }
    let z = rate * y;
    let mut term = 1.0;
    let mut s = 0.0;
    for j in 0..m {
        if j > 0 {
            term *= z / j as f64;
        }
        s += term;
    }
    (-z).exp() * s
}

fn poisson(lambda: f64, m: u32) -> f64 {
    let mut p = (-lambda).exp();
    for j in 1..=m {
        p *= lambda / j as f64;
    }
    p
}

fn single_jump_hep(p: Precision, drift: &str, alpha: &str, beta: &str) -> HyperExpProcess {
    HyperExpProcess::new(
        d(drift, p),
        BigReal::zero(p),
        vec![ExpTerm::new(d(alpha, p), d(beta, p))],
        vec![],
        Cutoff::Zero,
    )
    .unwrap()
}

#[test]
fn exact_gamma_cdf() {
    let p = Precision::new(50);
    let g = LevyModel::gamma(p);
    let grid = InversionGrid::default();
    let xs = [0.5, 1.0, 2.0, 5.0, 10.0, 25.0];
    for t in [1u32, 2] {
        let v = cdf_many(&g, t as f64, &xs, &grid).unwrap();
        for (x, f) in xs.iter().zip(&v) {
            // truncation error of the u^-2 tail is about 1 / (pi x u_max^2)
            assert!(
                (f - gamma_cdf_exact(t, *x)).abs() < 1e-7 / x,
                "t={t} x={x}: {f}"
            );
        }
    }
    let far = cdf(&g, 1.0, 40.0, &grid).unwrap();
    assert!((far - 1.0).abs() < 1e-9);
}

#[test]
fn compound_poisson_cdf_matches_series() {
    // Gamma n = 1, k = 0: intensity 2, jumps Exp(2), atom e^(-2t) at zero
    let p = Precision::default();
    let (h, _) = approx_one_sided(&LevyModel::gamma(p), 1, 0).unwrap();
    let e = HepExponent::new(&h);
    let grid = InversionGrid::default();
    for t in [0.5, 1.0, 2.0] {
        let xs = [0.01, 0.3, 1.0, 4.0, 12.0];
        let v = cdf_many(&e, t, &xs, &grid).unwrap();
        for (x, f) in xs.iter().zip(&v) {
            let mut oracle = poisson(2.0 * t, 0);
            for m in 1..80 {
                oracle += poisson(2.0 * t, m) * (1.0 - erlang_sf(m, 2.0, *x));
            }
            assert!((f - oracle).abs() < 1e-8, "t={t} x={x}: {f} vs {oracle}");
        }
    }
}

#[test]
fn drifted_atom_sits_at_r1_t() {
    // drift 0.7, one jump type: atom at 0.7 t
    let p = Precision::new(40);
    let h = single_jump_hep(p, "0.7", "3", "1.5");
    let e = HepExponent::new(&h);
    let grid = InversionGrid::default();
    let t = 1.0;
    let lam = 2.0;
    let below = cdf(&e, t, 0.69, &grid).unwrap();
    let above = cdf(&e, t, 0.71, &grid).unwrap();
    assert!(below.abs() < 1e-8);
    assert!((above - (-lam * t).exp()).abs() < 0.02 * lam * (-lam).exp());
    for x in [1.0, 2.5, 6.0] {
        let mut oracle = poisson(lam * t, 0);
        for m in 1..80 {
            oracle += poisson(lam * t, m) * (1.0 - erlang_sf(m, 1.5, x - 0.7));
        }
        assert!((cdf(&e, t, x, &grid).unwrap() - oracle).abs() < 1e-10);
    }
}

#[test]
fn cdf_is_monotone_with_atom_consistency() {
    let p = Precision::default();
    let (h, _) = approx_one_sided(&LevyModel::gamma(p), 5, 0).unwrap();
    let e = HepExponent::new(&h);
    let xs: Vec<f64> = (1..=400).map(|i| i as f64 * 0.05).collect();
    let v = cdf_many(&e, 1.0, &xs, &InversionGrid::default()).unwrap();
    for w in v.windows(2) {
        assert!(w[1] >= w[0] - 1e-10);
    }
    let atom = (asymptotic_coeffs(&h).r0.to_f64()).exp();
    let tiny = cdf(&e, 1.0, 0.01, &InversionGrid::default()).unwrap();
    assert!(tiny - atom >= -1e-9);
    assert!((v[v.len() - 1] - 1.0).abs() < 1e-8);
}

#[test]
fn cdf_rejects_bad_input() {
    let p = Precision::new(30);
    let g = LevyModel::gamma(p);
    let grid = InversionGrid::default();
    assert!(matches!(
        cdf(&g, 1.0, 0.0, &grid),
        Err(Error::InvalidArgument(_))
    ));
    assert!(matches!(
        cdf(&g, -1.0, 1.0, &grid),
        Err(Error::InvalidArgument(_))
    ));
    let bad = InversionGrid {
        du: 0.3,
        u_max: 1.0,
        ..grid
    };
    assert!(cdf(&g, 1.0, 1.0, &bad).is_err());
    let odd = InversionGrid {
        du: 1.0,
        u_max: 5.0,
        ..grid
    };
    assert!(cdf(&g, 1.0, 1.0, &odd).is_err());
    let trap = InversionGrid {
        du: 1.0,
        u_max: 5.0,
        scheme: Scheme::Trapezoid,
        tail_tolerance: 1.0,
        ..grid
    };
    assert!(cdf(&g, 1.0, 1.0, &trap).is_ok());
    let short = InversionGrid { u_max: 5.0, ..grid };
    assert!(matches!(
        cdf(&g, 1.0, 0.5, &short),
        Err(Error::GridInsufficient { .. })
    ));
    assert!(cdf(
        &g,
        1.0,
        1.0,
        &InversionGrid {
            damping: Some(1.5),
            ..grid
        }
    )
    .is_err());
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / std::f64::consts::SQRT_2)
}

#[test]
fn black_scholes_limit() {
    let p = Precision::new(50);
    let sigma = 0.25;
    let r = 0.04;
    let s2 = d("0.0625", p);
    let mu = d("0.04", p) - &s2 / 2;
    let m = LevyModel::custom(
        "brownian",
        vec![
            ExponentPart::Gaussian { sigma2: s2 },
            ExponentPart::Linear { mu },
        ],
    )
    .unwrap();
    let grid = InversionGrid {
        damping: Some(1.5),
        ..InversionGrid::default()
    };
    for k in [80.0, 100.0, 125.0] {
        let c = Contract {
            spot: 100.0,
            strike: k,
            maturity: 0.5,
            rate: r,
        };
        let price = price_european_call(&m, &c, &grid).unwrap();
        let st = sigma * 0.5f64.sqrt();
        let d1 = ((100.0 / k).ln() + (r + sigma * sigma / 2.0) * 0.5) / st;
        let bs = 100.0 * normal_cdf(d1) - k * (-r * 0.5).exp() * normal_cdf(d1 - st);
        assert!((price - bs).abs() < 1e-9, "K={k}: {price} vs {bs}");
    }
}

#[test]
fn compound_poisson_price_matches_series() {
    // one jump type with rate beta, drift chosen for the martingale condition
    let p = Precision::default();
    let r = 0.03;
    let (alpha, beta) = (4.0, 5.0);
    let lam = alpha / beta;
    let drift = r - lam / (beta - 1.0);
    let h = single_jump_hep(p, "0", "4", "5").with_drift(d("0.03", p) - d("0.2", p));
    assert!((h.drift.to_f64() - drift).abs() < 1e-15);
    let e = HepExponent::new(&h);
    let grid = InversionGrid::default();
    for (k, t) in [(90.0, 0.5), (100.0, 1.0), (130.0, 2.0)] {
        let c = Contract {
            spot: 100.0,
            strike: k,
            maturity: t,
            rate: r,
        };
        let price = price_european_call(&e, &c, &grid).unwrap();
        let a = 100.0 * (drift * t).exp();
        let l = (k / a).ln();
        let mut oracle = poisson(lam * t, 0) * (a - k).max(0.0);
        for m in 1..120 {
            let up = (beta / (beta - 1.0)).powi(m as i32);
            let v = a * up * erlang_sf(m, beta - 1.0, l) - k * erlang_sf(m, beta, l);
            oracle += poisson(lam * t, m) * v;
        }
        oracle *= (-r * t).exp();
        assert!((price - oracle).abs() < 1e-9, "K={k}: {price} vs {oracle}");
    }
}

fn benchmark_vg(p: Precision) -> LevyModel {
    LevyModel::vg_direct(
        d("21.8735", p),
        d("56.4414", p),
        d("0.2", p),
        BigReal::zero(p),
    )
    .unwrap()
    .calibrated(&d("0.04", p))
    .unwrap()
}

#[test]
fn put_call_parity() {
    let p = Precision::default();
    let vg = benchmark_vg(p);
    let grid = InversionGrid::default();
    let check = |target: &dyn Exponent| {
        for k in [80.0, 100.0, 120.0] {
            let c = Contract {
                spot: 100.0,
                strike: k,
                maturity: 0.25,
                rate: 0.04,
            };
            let call = price_european_call(target, &c, &grid).unwrap();
            let put = price_european_put(target, &c, &grid).unwrap();
            let parity = 100.0 - k * (-0.04f64 * 0.25).exp();
            assert!(
                (call - put - parity).abs() < 1e-7,
                "K={k}: {}",
                call - put - parity
            );
        }
    };
    check(&vg);
    let (h, _) = approx_two_sided(&vg, 4).unwrap();
    let h = h.with_drift(
        &h.drift + &(d("0.04", p) - h.laplace_exponent_real(&BigReal::one(p)).unwrap()),
    );
    check(&HepExponent::new(&h));
}

#[test]
fn deep_in_the_money_call() {
    let p = Precision::default();
    let vg = benchmark_vg(p);
    let c = Contract {
        spot: 100.0,
        strike: 1e-3,
        maturity: 0.25,
        rate: 0.04,
    };
    // the default damping is sized for strikes near the money
    let grid = InversionGrid {
        damping: Some(1.5),
        ..InversionGrid::default()
    };
    let price = price_european_call(&vg, &c, &grid).unwrap();
    assert!((price - (100.0 - 1e-3 * (-0.01f64).exp())).abs() < 1e-6);
}

#[test]
fn martingale_condition_enforced() {
    let p = Precision::default();
    let raw = LevyModel::vg_direct(
        d("21.8735", p),
        d("56.4414", p),
        d("0.2", p),
        BigReal::zero(p),
    )
    .unwrap();
    let c = Contract {
        spot: 100.0,
        strike: 100.0,
        maturity: 0.25,
        rate: 0.04,
    };
    assert!(matches!(
        price_european_call(&raw, &c, &InversionGrid::default()),
        Err(Error::MartingaleViolated { .. })
    ));
    let bad = Contract { strike: -1.0, ..c };
    assert!(matches!(
        price_european_call(&benchmark_vg(p), &bad, &InversionGrid::default()),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn asymptotic_triple_of_gamma() {
    let p = Precision::default();
    let (h, _) = approx_one_sided(&LevyModel::gamma(p), 1, 0).unwrap();
    let a = asymptotic_coeffs(&h);
    assert!(a.r2.is_zero() && a.r1.is_zero());
    assert!((a.r0.to_f64() + 2.0).abs() < 1e-15);
}

#[test]
fn neumaier_is_order_stable() {
    let v = [1e16, 1.0, -1e16, 1.0];
    assert_eq!(neumaier_sum(v), 2.0);
    assert_eq!("simpson".parse::<Scheme>().unwrap(), Scheme::Simpson);
    assert!("gauss".parse::<Scheme>().is_err());
}

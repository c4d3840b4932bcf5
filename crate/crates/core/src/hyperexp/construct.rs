use std::fmt;

use super::{Cutoff, ExpTerm, HyperExpProcess, Provenance};
use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};
use crate::pade::RationalFunction;
use crate::processes::{ExponentPart, LevyModel};
use crate::quadrature::{gauss_from_moments, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `[n+1/n]` approximant of a two-sided model.
    TwoSided,
    /// `[n+k/n]` approximant of a one-sided model.
    OneSided { k: usize },
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::TwoSided => write!(f, "two-sided"),
            Variant::OneSided { k } => write!(f, "one-sided k={k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CumulantRow {
    pub order: usize,
    pub model: BigReal,
    pub approx: BigReal,
    pub rel_err: BigReal,
    /// Whether the construction guarantees agreement at this order.
    pub expected: bool,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationReport {
    pub n: usize,
    pub variant: Variant,
    pub rational: RationalFunction,
    pub rule: QuadratureRule,
    pub cumulants: Vec<CumulantRow>,
}

/// Relative error with an absolute fallback for vanishing reference values.
pub(crate) fn rel_err(approx: &BigReal, exact: &BigReal) -> BigReal {
    let d = (approx - exact).abs();
    if exact.is_zero() {
        d
    } else {
        d / exact.abs()
    }
}

/// Cumulants `1..=j_max` of `model` and `hep`; orders up to `matched_up_to`
/// are flagged as expected, and an order counts as matched when the relative
/// error is at most `10^(40-p)`.
pub fn cumulant_table(
    model: &LevyModel,
    hep: &HyperExpProcess,
    j_max: usize,
    matched_up_to: usize,
) -> Vec<CumulantRow> {
    let prec = hep.precision().min(model.precision());
    let tol = prec.tol(40);
    let c = model.taylor_coeffs(j_max + 1).coeffs;
    let approx = hep.cumulants(j_max);
    let mut fact = BigReal::one(prec);
    (1..=j_max)
        .map(|j| {
            fact = &fact * j as i64;
            let exact = &c[j] * &fact;
            let a = approx[j - 1].clone();
            let e = rel_err(&a, &exact);
            CumulantRow {
                order: j,
                matched: e <= tol,
                model: exact,
                approx: a,
                rel_err: e,
                expected: j <= matched_up_to,
            }
        })
        .collect()
}

/// Support `[-1/rho_hat, 1/rho]` of the spectral moment measure, with zero
/// standing in for an infinite bound.
fn moment_support(model: &LevyModel, prec: Precision) -> (BigReal, BigReal) {
    let s = model.strip();
    let lo = s
        .rho_hat
        .map_or_else(|| BigReal::zero(prec), |r| -r.recip());
    let hi = s.rho.map_or_else(|| BigReal::zero(prec), |r| r.recip());
    (lo, hi)
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "approximation order n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// The `[n+1/n]` approximant `a z + z^2 sum w_i / (1 - z x_i)` built from the
/// Gaussian rule for the moments `c_2, ..., c_{2n+1}`.
///
/// A Gaussian part of `model` is removed before and restored after the
/// construction. A node with `|x| < 10^(-p/2) max |x_i|` is read as an exact
/// zero and contributes `2 w` to the Gaussian variance; nodes between that and
/// `10^(-p/4) max |x_i|` give `ZeroNodeAmbiguity`.
pub fn approx_two_sided(
    model: &LevyModel,
    n: usize,
) -> Result<(HyperExpProcess, ApproximationReport)> {
    check_order(n)?;
    let prec = model.precision();
    let sigma2_model = model.gaussian_variance();
    let no_gauss = LevyModel {
        family: model.family.clone(),
        parts: model
            .parts
            .iter()
            .filter(|p| !matches!(p, ExponentPart::Gaussian { .. }))
            .cloned()
            .collect(),
    };
    if no_gauss.jump_part().parts.is_empty() {
        return Err(Error::DegenerateInput(
            "model has no jumps to approximate".into(),
        ));
    }
    let c = no_gauss.taylor_coeffs(2 * n + 2).coeffs;
    let (lo, hi) = moment_support(model, prec);
    let slack = (&hi - &lo) * prec.frac_tol(1, 2);
    let rule = gauss_from_moments(&c[2..2 * n + 2], &(&lo - &slack), &(&hi + &slack))?;

    let xmax = rule
        .nodes
        .iter()
        .map(BigReal::abs)
        .fold(BigReal::zero(prec), |a, v| a.max(&v).clone());
    let zero_band = &xmax * &prec.frac_tol(1, 2);
    let ambiguous_band = &xmax * &prec.frac_tol(1, 4);
    let mut sigma2 = sigma2_model;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let ax = x.abs();
        if ax < zero_band {
            sigma2 += w * 2;
        } else if ax < ambiguous_band {
            return Err(Error::ZeroNodeAmbiguity { node: x.to_f64() });
        } else {
            let term = ExpTerm::new(w / &(&ax * &ax * &ax), x.recip());
            if x.is_positive() {
                positive.push(term);
            } else {
                negative.push(term);
            }
        }
    }
    let hep = HyperExpProcess::new(c[1].clone(), sigma2, positive, negative, Cutoff::Identity)?
        .with_provenance(Provenance {
            model: model.family.to_string(),
            variant: Variant::TwoSided.to_string(),
            n: Some(n),
            k: None,
        });
    let report = ApproximationReport {
        n,
        variant: Variant::TwoSided,
        rational: hep.rational(),
        rule,
        cumulants: cumulant_table(model, &hep, 2 * n + 1, 2 * n + 1),
    };
    Ok((hep, report))
}

/// The `[n+k/n]` approximant `sum_{j<=k} c_j z^j + z^(k+1) sum w_i / (1 - z x_i)`
/// of a spectrally positive model, from the Gaussian rule for the moments
/// `c_{k+1}, ..., c_{k+2n}` of `v^(2+k) mu*(dv)`.
///
/// The linear part of the model is kept aside and added to the drift of the
/// result, so `k = 0` applies to any finite-variation jump part.
pub fn approx_one_sided(
    model: &LevyModel,
    n: usize,
    k: usize,
) -> Result<(HyperExpProcess, ApproximationReport)> {
    check_order(n)?;
    if k > 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be 0, 1 or 2, got {k}"
        )));
    }
    if model.has_negative_jumps() || !model.gaussian_variance().is_zero() {
        return Err(Error::VariantUnavailable(format!(
            "{} is not spectrally positive without Gaussian part; approximate each tail separately",
            model.family
        )));
    }
    let jumps = model.jump_part();
    if jumps.parts.is_empty() {
        return Err(Error::DegenerateInput(
            "model has no jumps to approximate".into(),
        ));
    }
    let finite_variation = jumps.finite_variation();
    if k == 0 && !finite_variation {
        return Err(Error::VariantUnavailable(
            "k = 0 needs jumps of finite variation; spectrally positive processes with jumps of infinite variation allow k in {1, 2}"
                .into(),
        ));
    }
    let prec = model.precision();
    let c = jumps.taylor_coeffs(2 * n + k + 1).coeffs;
    let (_, hi) = moment_support(model, prec);
    let slack = &hi * &prec.frac_tol(1, 2);
    let rule = gauss_from_moments(
        &c[k + 1..k + 2 * n + 1],
        &BigReal::zero(prec),
        &(&hi + &slack),
    )?;

    let inv_sum = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .fold(BigReal::zero(prec), |acc, (x, w)| acc + w / x);
    let positive: Vec<ExpTerm> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| ExpTerm::new(w / &x.powi(2 + k as i32), x.recip()))
        .collect();
    let zero = BigReal::zero(prec);
    let (drift, sigma2, cutoff) = match k {
        0 => (zero.clone(), zero, Cutoff::Zero),
        1 if finite_variation => (&c[1] - &inv_sum, zero, Cutoff::Zero),
        1 => (c[1].clone(), zero, Cutoff::Identity),
        _ => {
            let s2 = (&c[2] - &inv_sum) * 2;
            if !s2.is_positive() {
                return Err(Error::NonpositiveGaussian {
                    value: s2.to_f64(),
                    n,
                });
            }
            (c[1].clone(), s2, Cutoff::Identity)
        }
    };
    let variant = Variant::OneSided { k };
    let hep = HyperExpProcess::new(
        drift + model.linear_drift(),
        sigma2,
        positive,
        Vec::new(),
        cutoff,
    )?
    .with_provenance(Provenance {
        model: model.family.to_string(),
        variant: variant.to_string(),
        n: Some(n),
        k: Some(k),
    });
    let report = ApproximationReport {
        n,
        variant,
        rational: hep.rational(),
        rule,
        cumulants: cumulant_table(model, &hep, 2 * n + k, 2 * n + k),
    };
    Ok((hep, report))
}

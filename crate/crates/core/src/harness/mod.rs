//! Verification runs: cumulant reports, density comparisons, convergence
//! studies and the reproduction of the reference pricing and CDF tables.

mod tables;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperexp::{
    approx_one_sided, approx_two_sided, cumulant_table, CumulantRow, HyperExpProcess, Variant,
};
use crate::numkernel::BigReal;
use crate::processes::LevyModel;

pub use tables::{
    benchmark_cgmy, benchmark_vg, gamma_cdf_error, table_reproduction, TableCell, TableId,
    TableReport, TableScope,
};

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub rows: Vec<CumulantRow>,
    /// Every order the construction guarantees is matched.
    pub consistent: bool,
}

/// Cumulants `1..=j_max` of `model` against `hep`, with orders up to
/// `matched_up_to` expected to agree.
pub fn moment_report(
    model: &LevyModel,
    hep: &HyperExpProcess,
    j_max: usize,
    matched_up_to: usize,
) -> MomentReport {
    let rows = cumulant_table(model, hep, j_max, matched_up_to);
    let consistent = rows.iter().filter(|r| r.expected).all(|r| r.matched);
    MomentReport { rows, consistent }
}

/// `(x, x pi(x), x pi_n(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityRow {
    pub x: f64,
    pub exact: f64,
    pub approx: f64,
    pub rel_err: f64,
}

pub fn density_comparison(
    model: &LevyModel,
    hep: &HyperExpProcess,
    xs: &[f64],
) -> Result<Vec<DensityRow>> {
    let prec = hep.precision();
    xs.iter()
        .map(|&x| {
            if x == 0.0 || !x.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "density needs a finite x != 0, got {x}"
                )));
            }
            let bx = BigReal::from_f64(x, prec);
            let exact = model.levy_density(&bx).ok_or_else(|| {
                Error::VariantUnavailable(format!(
                    "{} has no closed-form Levy density",
                    model.family
                ))
            })?;
            let approx = hep.levy_density(&bx);
            let e = (&bx * &exact).to_f64();
            let a = (&bx * &approx).to_f64();
            let rel_err = if e == 0.0 {
                (a - e).abs()
            } else {
                ((a - e) / e).abs()
            };
            Ok(DensityRow {
                x,
                exact: e,
                approx: a,
                rel_err,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub n: usize,
    /// `max |psi_n(z) - psi(z)|` over the sample points.
    pub max_error: f64,
    /// `q^n` for the geometric factor `q` of the Stieltjes error bound.
    pub envelope: Option<f64>,
    /// `max_error(n) / max_error(n - 1)`.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub records: Vec<ConvergenceRecord>,
    /// Least-squares slope of `ln max_error` against `n`.
    pub fitted_rate: f64,
    pub envelope_factor: Option<f64>,
    /// Largest `ratio / envelope_factor` over consecutive orders.
    pub worst_ratio_over_factor: Option<f64>,
}

/// `|(sqrt(R + s) - sqrt(R)) / (sqrt(R + s) + sqrt(R))|^2`, the per-order
/// error factor for the `[n-1/n]` approximants of a Stieltjes series with
/// radius `R` evaluated at `s`.
pub fn stieltjes_factor(radius: f64, s: f64) -> Option<f64> {
    if !(radius > 0.0 && radius + s > 0.0) {
        return None;
    }
    let (a, b) = ((radius + s).sqrt(), radius.sqrt());
    Some(((a - b) / (a + b)).powi(2))
}

/// The Stieltjes variable and radius behind a `variant` approximation at `z`.
fn stieltjes_point(model: &LevyModel, variant: Variant, z: f64) -> Option<(f64, f64)> {
    let s = model.strip();
    let rho = s.rho_f64();
    let rho_hat = s.rho_hat_f64();
    match variant {
        Variant::OneSided { .. } => Some((rho, -z)),
        Variant::TwoSided => {
            let inv = 1.0 / rho + 1.0 / rho_hat;
            if inv == 0.0 {
                return None;
            }
            Some((1.0 / inv, -z / (1.0 + z / rho_hat)))
        }
    }
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (sx, sy): (f64, f64) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    num / den
}

/// Error of the `variant` approximation of `model` at the real points `zs`
/// for each order in `ns`.
pub fn convergence_study(
    model: &LevyModel,
    variant: Variant,
    ns: &[usize],
    zs: &[f64],
) -> Result<ConvergenceStudy> {
    if ns.len() < 2 || zs.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least two orders and one sample point".into(),
        ));
    }
    let prec = model.precision();
    let exact: Vec<BigReal> = zs
        .iter()
        .map(|&z| model.laplace_exponent_real(&BigReal::from_f64(z, prec)))
        .collect::<Result<_>>()?;
    let factor = zs
        .iter()
        .map(|&z| stieltjes_point(model, variant, z).and_then(|(r, s)| stieltjes_factor(r, s)))
        .try_fold(0.0f64, |acc, q| q.map(|q| acc.max(q)));
    let mut records: Vec<ConvergenceRecord> = Vec::new();
    for &n in ns {
        let hep = match variant {
            Variant::TwoSided => approx_two_sided(model, n)?.0,
            Variant::OneSided { k } => approx_one_sided(model, n, k)?.0,
        };
        let mut err = 0.0f64;
        for (z, e) in zs.iter().zip(&exact) {
            let a = hep.laplace_exponent_real(&BigReal::from_f64(*z, prec))?;
            err = err.max((a - e).abs().to_f64());
        }
        let ratio = records.last().map(|r| err / r.max_error);
        records.push(ConvergenceRecord {
            n,
            max_error: err,
            envelope: factor.map(|q| q.powi(n as i32)),
            ratio,
        });
    }
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.max_error > 0.0)
        .map(|r| (r.n as f64, r.max_error.ln()))
        .collect();
    let fitted_rate = if pts.len() >= 2 {
        fit_slope(&pts)
    } else {
        f64::NAN
    };
    let worst_ratio_over_factor = factor.and_then(|q| {
        records
            .iter()
            .filter_map(|r| r.ratio)
            .map(|x| x / q)
            .reduce(f64::max)
    });
    Ok(ConvergenceStudy {
        records,
        fitted_rate,
        envelope_factor: factor,
        worst_ratio_over_factor,
    })
}

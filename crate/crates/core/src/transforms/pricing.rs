use num_complex::Complex64;

use super::{
    check_damping, integrate, neumaier_sum, regular_transform, tail_estimate, CompoundPoisson,
    Exponent, InversionGrid,
};
use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};

/// European option on `S_T = S0 exp(X_T)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contract {
    pub spot: f64,
    pub strike: f64,
    pub maturity: f64,
    pub rate: f64,
}

impl Contract {
    fn validate(&self) -> Result<()> {
        for (name, v) in [("S0", self.spot), ("K", self.strike), ("T", self.maturity)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if !self.rate.is_finite() {
            return Err(Error::InvalidArgument("r must be finite".into()));
        }
        Ok(())
    }
}

const MARTINGALE_TOL: f64 = 1e-20;

fn check_martingale(target: &dyn Exponent, r: f64) -> Result<()> {
    let one = BigReal::one(Precision::new(60));
    let psi1 = target.psi_real(&one).map_err(|e| match e {
        Error::OutsideStrip(_) | Error::PoleEvaluation { .. } => {
            Error::MartingaleViolated { gap: f64::INFINITY }
        }
        other => other,
    })?;
    // the shortest decimal form of r, so that r = 0.04 means 4/100
    let r = BigReal::parse(&format!("{r}"), one.precision())?;
    let gap = (psi1 - r).abs().to_f64();
    if gap > MARTINGALE_TOL {
        return Err(Error::MartingaleViolated { gap });
    }
    Ok(())
}

/// `int (A e^y - K)^+ pi(y) dy` with `pi` the Levy density of `cp`.
fn call_on_jumps(cp: &CompoundPoisson, a: f64, k: f64) -> f64 {
    let l = (k / a).ln();
    neumaier_sum(cp.terms.iter().map(|&(alpha, beta)| {
        if beta > 0.0 {
            let m = l.max(0.0);
            alpha * (a * ((1.0 - beta) * m).exp() / (beta - 1.0) - k * (-beta * m).exp() / beta)
        } else if l < 0.0 {
            let b = -beta;
            alpha * (-a * ((1.0 + b) * l).exp_m1() / (1.0 + b) + k * (b * l).exp_m1() / b)
        } else {
            0.0
        }
    }))
}

/// `int (K - A e^y)^+ pi(y) dy`.
fn put_on_jumps(cp: &CompoundPoisson, a: f64, k: f64) -> f64 {
    let l = (k / a).ln();
    neumaier_sum(cp.terms.iter().map(|&(alpha, beta)| {
        if beta > 0.0 {
            if l > 0.0 {
                alpha
                    * (-k * (-beta * l).exp_m1() / beta
                        + a * ((1.0 - beta) * l).exp_m1() / (beta - 1.0))
            } else {
                0.0
            }
        } else {
            let b = -beta;
            let m = l.min(0.0);
            alpha * (k * (b * m).exp() / b - a * ((1.0 + b) * m).exp() / (1.0 + b))
        }
    }))
}

/// Puts and calls share the kernel `Phi(z) e^(kappa (1 - z)) / (z (z - 1))`
/// and differ in the contour: `Re z > 1` for calls, `Re z < 0` for puts.
fn damped_integral(
    target: &dyn Exponent,
    cp: Option<&CompoundPoisson>,
    contract: &Contract,
    c: f64,
    grid: &InversionGrid,
) -> Result<f64> {
    let kappa = (contract.strike / contract.spot).ln();
    let t = contract.maturity;
    let (s, last) = integrate(grid, |u| {
        let z = Complex64::new(c, u);
        let phi = regular_transform(target, cp, z, t)?;
        Ok((phi * ((1.0 - z) * kappa).exp() / (z * (z - 1.0))).re)
    })?;
    let tail = tail_estimate(last, grid.u_max, kappa) / std::f64::consts::PI;
    if tail > grid.tail_tolerance {
        return Err(Error::GridInsufficient {
            tail,
            tolerance: grid.tail_tolerance,
        });
    }
    Ok(contract.spot * s / std::f64::consts::PI)
}

/// Price of a European call, `e^(-rT) E (S_T - K)^+`.
///
/// Requires `psi(1) = r` to within `1e-20`. Atoms and single-jump terms of
/// compound Poisson inputs are priced in closed form.
pub fn price_european_call(
    target: &dyn Exponent,
    contract: &Contract,
    grid: &InversionGrid,
) -> Result<f64> {
    contract.validate()?;
    check_martingale(target, contract.rate)?;
    let strip = target.strip();
    let hint = target.damping_strip();
    let c = grid.damping.unwrap_or_else(|| {
        if hint.1.is_finite() {
            (1.0 + hint.1) / 2.0
        } else {
            2.0
        }
    });
    check_damping(c, strip, (1.0, f64::INFINITY), "a call")?;
    let t = contract.maturity;
    let cp = target.compound_poisson().filter(|cp| cp.usable(t));
    let mut value = damped_integral(target, cp, contract, c, grid)?;
    if let Some(cp) = cp {
        let atom = (-t * cp.intensity).exp();
        let a = contract.spot * (cp.r1 * t).exp();
        value +=
            atom * ((a - contract.strike).max(0.0) + t * call_on_jumps(cp, a, contract.strike));
    }
    Ok((-contract.rate * t).exp() * value)
}

/// Price of a European put, `e^(-rT) E (K - S_T)^+`, on the contour
/// `Re z < 0` (default: the midpoint of `(-rho_hat, 0)`, capped at `-1`).
pub fn price_european_put(
    target: &dyn Exponent,
    contract: &Contract,
    grid: &InversionGrid,
) -> Result<f64> {
    contract.validate()?;
    check_martingale(target, contract.rate)?;
    let strip = target.strip();
    let c = grid
        .damping
        .unwrap_or_else(|| (target.damping_strip().0 / 2.0).max(-1.0));
    check_damping(c, strip, (f64::NEG_INFINITY, 0.0), "a put")?;
    let t = contract.maturity;
    let cp = target.compound_poisson().filter(|cp| cp.usable(t));
    let mut value = damped_integral(target, cp, contract, c, grid)?;
    if let Some(cp) = cp {
        let atom = (-t * cp.intensity).exp();
        let a = contract.spot * (cp.r1 * t).exp();
        value += atom * ((contract.strike - a).max(0.0) + t * put_on_jumps(cp, a, contract.strike));
    }
    Ok((-contract.rate * t).exp() * value)
}

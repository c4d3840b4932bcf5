//! Invariance properties of Pade approximants under variable and value
//! transformations, used to cross-check the construction.

use super::{pade, series, RationalFunction, TaylorSeries};
use crate::error::{Error, Result};
use crate::numkernel::{poly, BigReal, Precision};

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub max_deviation: BigReal,
    pub tolerance: BigReal,
    pub points: usize,
}

fn finish(devs: Vec<BigReal>, prec: Precision) -> Result<InvarianceReport> {
    let tolerance = prec.tol(30);
    let points = devs.len();
    let max_deviation = devs
        .into_iter()
        .fold(BigReal::zero(prec), |a, v| a.max(&v).clone());
    if max_deviation > tolerance {
        return Err(Error::InvarianceViolation {
            deviation: max_deviation.to_f64(),
            tolerance: tolerance.to_f64(),
        });
    }
    Ok(InvarianceReport {
        max_deviation,
        tolerance,
        points,
    })
}

fn rel_dev(x: &BigReal, y: &BigReal, prec: Precision) -> BigReal {
    let scale = BigReal::one(prec).max(&y.abs()).clone();
    (x - y).abs() / scale
}

fn local(r: &RationalFunction, w: &BigReal) -> Result<BigReal> {
    r.eval(&(w + &r.center))
}

/// With `w = a z / (1 + b z)` and `g(w) = f(z)`, checks
/// `g^[n/n](w) = f^[n/n](z)` at `points` (values of `z - center`).
pub fn check_invariance_rational_substitution(
    f: &TaylorSeries,
    n: usize,
    a: &BigReal,
    b: &BigReal,
    points: &[BigReal],
) -> Result<InvarianceReport> {
    if a.is_zero() {
        return Err(Error::InvalidArgument(
            "substitution w = az/(1+bz) needs a != 0".into(),
        ));
    }
    let prec = f.precision();
    let len = 2 * n + 1;
    let fr = pade(f, n, n)?;
    // z(w) = (w/a) / (1 - (b/a) w)
    let ratio = b / a;
    let inner: Vec<BigReal> = (0..len)
        .map(|k| {
            if k == 0 {
                BigReal::zero(prec)
            } else {
                a.recip() * ratio.powi(k as i32 - 1)
            }
        })
        .collect();
    let g = TaylorSeries::new(
        f.center.clone(),
        series::compose(&f.coeffs, &inner, len, prec)?,
    );
    let gr = pade(&g, n, n)?;
    let devs = points
        .iter()
        .map(|z| {
            let w = a * z / (BigReal::one(prec) + b * z);
            Ok(rel_dev(&local(&gr, &w)?, &local(&fr, z)?, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(devs, prec)
}

/// With `g = (a + b f) / (c + d f)`, checks
/// `g^[n/n] = (a + b f^[n/n]) / (c + d f^[n/n])` at `points`.
pub fn check_invariance_mobius(
    f: &TaylorSeries,
    n: usize,
    coeffs: [&BigReal; 4],
    points: &[BigReal],
) -> Result<InvarianceReport> {
    let [a, b, c, d] = coeffs;
    let prec = f.precision();
    let len = 2 * n + 1;
    if (c + &(d * &f.coeffs[0])).is_zero() {
        return Err(Error::InvalidArgument("c + d f(0) must be nonzero".into()));
    }
    let num: Vec<BigReal> = f.coeffs[..len]
        .iter()
        .enumerate()
        .map(|(i, x)| if i == 0 { a + &(b * x) } else { b * x })
        .collect();
    let den: Vec<BigReal> = f.coeffs[..len]
        .iter()
        .enumerate()
        .map(|(i, x)| if i == 0 { c + &(d * x) } else { d * x })
        .collect();
    let g = TaylorSeries::new(f.center.clone(), series::div(&num, &den, len, prec)?);
    let fr = pade(f, n, n)?;
    let gr = pade(&g, n, n)?;
    let devs = points
        .iter()
        .map(|z| {
            let fv = local(&fr, z)?;
            let want = (a + &(b * &fv)) / (c + &(d * &fv));
            Ok(rel_dev(&local(&gr, z)?, &want, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(devs, prec)
}

/// With `g = (f - sum_{i<k} c_i z^i) z^-k`, checks
/// `g^[n-k/m] = (f^[n/m] - sum_{i<k} c_i z^i) z^-k` for `n - k >= m - 1`.
pub fn check_invariance_shift(
    f: &TaylorSeries,
    n: usize,
    m: usize,
    k: usize,
    points: &[BigReal],
) -> Result<InvarianceReport> {
    if k == 0 || n < k || n + 1 < k + m {
        return Err(Error::InvalidArgument(format!(
            "shift invariance needs k >= 1 and n - k >= m - 1 (n = {n}, m = {m}, k = {k})"
        )));
    }
    let prec = f.precision();
    let fr = pade(f, n, m)?;
    let g = TaylorSeries::new(f.center.clone(), f.coeffs[k..].to_vec());
    let gr = pade(&g, n - k, m)?;
    let head = &f.coeffs[..k];
    let devs = points
        .iter()
        .map(|z| {
            if z.is_zero() {
                return Err(Error::InvalidArgument(
                    "shift invariance is checked away from the center".into(),
                ));
            }
            let want = (local(&fr, z)? - poly::eval(head, z, prec)) / z.powi(k as i32);
            Ok(rel_dev(&local(&gr, z)?, &want, prec))
        })
        .collect::<Result<Vec<_>>>()?;
    finish(devs, prec)
}

//! Pade approximants of formal power series, their evaluation and partial
//! fraction decomposition.

mod invariance;
mod partial;
pub mod series;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{poly, solve_dense, BigReal, Precision};

pub use invariance::{
    check_invariance_mobius, check_invariance_rational_substitution, check_invariance_shift,
    InvarianceReport,
};
pub use partial::{partial_fractions, PartialFractions, Pole};

/// Coefficients of a power series in `z - center`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    pub center: BigReal,
    pub coeffs: Vec<BigReal>,
}

impl TaylorSeries {
    pub fn new(center: BigReal, coeffs: Vec<BigReal>) -> Self {
        TaylorSeries { center, coeffs }
    }

    /// Series centred at zero.
    pub fn at_zero(coeffs: Vec<BigReal>, prec: Precision) -> Self {
        TaylorSeries {
            center: BigReal::zero(prec),
            coeffs,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn precision(&self) -> Precision {
        self.coeffs
            .first()
            .map_or_else(|| self.center.precision(), BigReal::precision)
    }

    /// `c_i`, with `c_i = 0` for negative indices.
    fn coeff(&self, i: isize, prec: Precision) -> BigReal {
        if i < 0 {
            BigReal::zero(prec)
        } else {
            self.coeffs[i as usize].clone()
        }
    }
}

/// `P(w) / Q(w)` with `w = z - center` and `Q(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub num: Vec<BigReal>,
    pub den: Vec<BigReal>,
    pub center: BigReal,
}

impl RationalFunction {
    /// Normalizes the denominator so that its constant term is one.
    pub fn new(num: Vec<BigReal>, den: Vec<BigReal>, center: BigReal) -> Result<Self> {
        let d0 = den
            .first()
            .filter(|v| !v.is_zero())
            .cloned()
            .ok_or_else(|| {
                Error::DegenerateInput("denominator vanishes at the expansion center".into())
            })?;
        Ok(RationalFunction {
            num: num.iter().map(|c| c / &d0).collect(),
            den: den.iter().map(|c| c / &d0).collect(),
            center,
        })
    }

    pub fn precision(&self) -> Precision {
        self.den[0].precision()
    }

    pub fn eval(&self, z: &BigReal) -> Result<BigReal> {
        let prec = self.precision();
        let w = z - &self.center;
        let q = poly::eval(&self.den, &w, prec);
        if q.abs() <= prec.frac_tol(1, 2) {
            return Err(Error::PoleEvaluation {
                z: z.to_decimal(20),
            });
        }
        Ok(poly::eval(&self.num, &w, prec) / q)
    }

    /// Double-precision complex evaluation.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        let w = z - self.center.to_f64();
        let (mut q, mut scale) = (Complex64::new(0.0, 0.0), 0.0);
        for c in self.den.iter().rev() {
            q = q * w + c.to_f64();
            scale = scale * w.norm() + c.to_f64().abs();
        }
        if q.norm() <= 1e-14 * scale {
            return Err(Error::PoleEvaluation { z: format!("{z}") });
        }
        let p = self
            .num
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c.to_f64());
        Ok(p / q)
    }

    /// Taylor coefficients of `P/Q` at the center.
    pub fn taylor(&self, len: usize) -> Vec<BigReal> {
        series::div(&self.num, &self.den, len, self.precision()).expect("denominator is normalized")
    }
}

/// The `[m/n]` Pade approximant of `series`.
///
/// The denominator comes from the Hankel system on `c_{m-n+1}..c_{m+n}`
/// (coefficients with negative index are zero, so `m < n` is accepted; the
/// quadrature module needs `[n-1/n]`), the numerator from
/// `a_i = c_i + sum_{j=1}^{min(i,n)} b_j c_{i-j}`.
pub fn pade(series: &TaylorSeries, m: usize, n: usize) -> Result<RationalFunction> {
    if series.len() < m + n + 1 {
        return Err(Error::InvalidArgument(format!(
            "[{m}/{n}] approximant needs {} coefficients, got {}",
            m + n + 1,
            series.len()
        )));
    }
    let prec = series.precision();
    let mut b = vec![BigReal::one(prec)];
    if n > 0 {
        let base = m as isize - n as isize + 1;
        let h: Vec<Vec<BigReal>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| series.coeff(base + (i + j) as isize, prec))
                    .collect()
            })
            .collect();
        let rhs: Vec<BigReal> = (0..n)
            .map(|i| -series.coeff((m + 1 + i) as isize, prec))
            .collect();
        let y = solve_dense(&h, &rhs, prec).map_err(|e| match e {
            Error::SingularMatrix { column, .. } => Error::ApproximantMissing {
                m,
                n,
                reason: format!("Hankel system is singular at column {column}"),
            },
            other => other,
        })?;
        // y = (b_n, ..., b_1)
        b.extend(y.into_iter().rev());
    }
    let a: Vec<BigReal> = (0..=m)
        .map(|i| {
            let mut acc = series.coeffs[i].clone();
            for j in 1..=i.min(n) {
                acc += &b[j] * &series.coeffs[i - j];
            }
            acc
        })
        .collect();

    let r = RationalFunction {
        num: a,
        den: b,
        center: series.center.clone(),
    };
    check_order(&r, series, m, n)?;
    Ok(r)
}

/// The re-expansion must reproduce `c_0..c_{m+n}`; a solve that lost all
/// accuracy on a near-singular Hankel matrix shows up here.
fn check_order(r: &RationalFunction, series: &TaylorSeries, m: usize, n: usize) -> Result<()> {
    let prec = series.precision();
    let len = m + n + 1;
    let one = BigReal::one(prec);
    let cmax = series.coeffs[..len]
        .iter()
        .map(BigReal::abs)
        .fold(one.clone(), |a, v| a.max(&v).clone());
    let bmax = r
        .den
        .iter()
        .map(BigReal::abs)
        .fold(one, |a, v| a.max(&v).clone());
    let tol = prec.tol(30) * &cmax * &bmax;
    let back = r.taylor(len);
    for (i, (x, c)) in back.iter().zip(&series.coeffs).enumerate() {
        if (x - c).abs() > tol {
            return Err(Error::ApproximantMissing {
                m,
                n,
                reason: format!("order condition fails at coefficient {i}"),
            });
        }
    }
    Ok(())
}

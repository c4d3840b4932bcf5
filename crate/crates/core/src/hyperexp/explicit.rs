use super::{compose::rescale, HyperExpProcess, Provenance};
use crate::error::{Error, Result};
use crate::numkernel::{binom, pochhammer, poly, BigReal, Precision};
use crate::pade::RationalFunction;
use crate::processes::ExponentPart;

/// `z^n P_n^(alpha, k-alpha)(2/z - 1) = sum_j d_j (1-z)^j z^(n-j)` in the power
/// basis, `d_j = binom(alpha+n, n-j) binom(k+n+j, j)`.
fn jacobi_denominator(alpha: &BigReal, n: usize, k: usize, prec: Precision) -> Vec<BigReal> {
    let an = alpha + n as i64;
    let one_minus_z = [BigReal::one(prec), BigReal::from_int(-1, prec)];
    let mut q = vec![BigReal::zero(prec); n + 1];
    let mut pw = vec![BigReal::one(prec)];
    for j in 0..=n {
        let d =
            binom(&an, n - j, prec) * binom(&BigReal::from_int((k + n + j) as i64, prec), j, prec);
        // (1-z)^j z^(n-j)
        for (i, c) in pw.iter().enumerate() {
            q[i + n - j] += &d * c;
        }
        pw = poly::mul(&pw, &one_minus_z, prec);
    }
    q
}

/// Numerator from the order conditions `a_i = c_i + sum_j b_j c_(i-j)`.
fn numerator_from_series(c: &[BigReal], q: &[BigReal], m: usize, prec: Precision) -> Vec<BigReal> {
    crate::pade::series::mul(c, q, m + 1, prec)
}

/// `[n+k/n]` approximant of `-ln(1-z)` in closed form: denominator
/// `z^n P_n^(0,k)(2/z - 1)`, numerator
/// `2 sum_j binom(n,j)^2 (H_(n-j) - H_j) (1-z)^j` when `k = 0` and the order
/// conditions otherwise.
pub fn approx_gamma_explicit(n: usize, k: usize, prec: Precision) -> Result<RationalFunction> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be 0, 1 or 2, got {k}"
        )));
    }
    let zero = BigReal::zero(prec);
    let q = jacobi_denominator(&zero, n, k, prec);
    let p = if k == 0 {
        let mut h = vec![zero.clone()];
        for j in 1..=n {
            let next = &h[j - 1] + &BigReal::from_ratio(1, j as i64, prec);
            h.push(next);
        }
        let one_minus_z = [BigReal::one(prec), BigReal::from_int(-1, prec)];
        let mut p = vec![zero.clone(); n + 1];
        let mut pw = vec![BigReal::one(prec)];
        for j in 0..=n {
            let b = binom(&BigReal::from_int(n as i64, prec), j, prec);
            let f = &b * &b * &(&h[n - j] - &h[j]) * 2;
            for (i, c) in pw.iter().enumerate() {
                p[i] += &f * c;
            }
            pw = poly::mul(&pw, &one_minus_z, prec);
        }
        p
    } else {
        let mut c = vec![zero];
        c.extend((1..=n + k).map(|i| BigReal::from_ratio(1, i as i64, prec)));
        numerator_from_series(&c, &q, n + k, prec)
    };
    RationalFunction::new(p, q, BigReal::zero(prec))
}

fn check_ts_range(alpha: &BigReal, k: usize) -> Result<()> {
    if k > 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be 0, 1 or 2, got {k}"
        )));
    }
    if !(alpha.is_positive() && *alpha < 2 && *alpha != 1) {
        return Err(Error::InvalidArgument(
            "tempered-stable alpha must lie in (0,1) or (1,2)".into(),
        ));
    }
    if *alpha > 1 && k == 0 {
        return Err(Error::VariantUnavailable(
            "k = 0 needs jumps of finite variation; for alpha in (1,2) use k in {1, 2}".into(),
        ));
    }
    Ok(())
}

/// `[n+k/n]` approximant of `Gamma(-alpha)((1-z)^alpha - 1)` in closed form:
/// `q = z^n P_n^(alpha, k-alpha)(2/z - 1)` and
/// `p = Gamma(-alpha) [ (1/n!) sum_j (2n+k-j)! (-n-alpha)_j / (j! (n+k-j)!) z^j - q ]`.
pub fn approx_tempered_stable_explicit(
    alpha: &BigReal,
    n: usize,
    k: usize,
) -> Result<RationalFunction> {
    check_ts_range(alpha, k)?;
    let prec = alpha.precision();
    let q = jacobi_denominator(alpha, n, k, prec);
    let fact = |i: usize| BigReal::from_int(i as i64 + 1, prec).gamma();
    let rising = pochhammer(&(-alpha - n as i64), n + k, prec);
    let nfact = fact(n);
    let mut p: Vec<BigReal> = (0..=n + k)
        .map(|j| fact(2 * n + k - j) * &rising[j] / (fact(j) * fact(n + k - j) * &nfact))
        .collect();
    for (pi, qi) in p.iter_mut().zip(&q) {
        *pi -= qi;
    }
    let g = (-alpha).gamma();
    let p = p.iter().map(|c| c * &g).collect();
    RationalFunction::new(p, q, BigReal::zero(prec))
}

/// Explicit `[n+k/n]` approximation of a single one-sided piece
/// `-w ln(1 - z/s)` or `C ((1 - z/s)^Y - 1)` with `s > 0`, by rescaling the
/// Gamma or tempered-stable formulas.
pub fn explicit_one_sided(part: &ExponentPart, n: usize, k: usize) -> Result<HyperExpProcess> {
    let (base, scale, pole, label) = match part {
        ExponentPart::Log { weight, pole } if pole.is_positive() => (
            approx_gamma_explicit(n, k, weight.precision())?,
            weight.clone(),
            pole.clone(),
            "gamma explicit",
        ),
        ExponentPart::Power {
            scale,
            pole,
            exponent,
        } if pole.is_positive() => {
            let base = approx_tempered_stable_explicit(exponent, n, k)?;
            (
                base,
                scale / &(-exponent).gamma(),
                pole.clone(),
                "tempered-stable explicit",
            )
        }
        _ => {
            return Err(Error::VariantUnavailable(
                "explicit formulas cover positive-side log and power pieces only".into(),
            ))
        }
    };
    let hep = HyperExpProcess::from_rational(&base)?;
    // psi(z) = scale psi_base(z / pole)
    Ok(
        rescale(&hep, &pole.recip(), &scale)?.with_provenance(Provenance {
            model: label.into(),
            variant: format!("one-sided k={k}"),
            n: Some(n),
            k: Some(k),
        }),
    )
}

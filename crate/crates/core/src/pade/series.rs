//! Truncated power-series arithmetic on ascending coefficient vectors.

use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};

fn at(a: &[BigReal], i: usize, prec: Precision) -> BigReal {
    a.get(i).cloned().unwrap_or_else(|| BigReal::zero(prec))
}

/// `a * b` truncated to `len` terms.
pub fn mul(a: &[BigReal], b: &[BigReal], len: usize, prec: Precision) -> Vec<BigReal> {
    (0..len)
        .map(|k| {
            let mut acc = BigReal::zero(prec);
            for i in 0..=k.min(a.len().saturating_sub(1)) {
                if let Some(bj) = b.get(k - i) {
                    acc += &a[i] * bj;
                }
            }
            acc
        })
        .collect()
}

/// `a / b` truncated to `len` terms; `b[0]` must be nonzero.
pub fn div(a: &[BigReal], b: &[BigReal], len: usize, prec: Precision) -> Result<Vec<BigReal>> {
    let b0 = b.first().filter(|v| !v.is_zero()).ok_or_else(|| {
        Error::DegenerateInput("series division by a series with zero constant term".into())
    })?;
    let mut out: Vec<BigReal> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = at(a, k, prec);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            acc -= &b[j] * &out[k - j];
        }
        out.push(acc / b0);
    }
    Ok(out)
}

/// `f(g(w))` truncated to `len` terms, where `g[0]` must be zero.
pub fn compose(f: &[BigReal], g: &[BigReal], len: usize, prec: Precision) -> Result<Vec<BigReal>> {
    if g.first().is_some_and(|v| !v.is_zero()) {
        return Err(Error::InvalidArgument(
            "inner series of a composition must vanish at zero".into(),
        ));
    }
    // Horner in the series ring.
    let mut out = vec![BigReal::zero(prec); len];
    for c in f.iter().take(len).rev() {
        out = mul(&out, g, len, prec);
        if len > 0 {
            out[0] += c;
        }
    }
    Ok(out)
}

/// Square root of a series with positive constant term.
pub fn sqrt(q: &[BigReal], len: usize, prec: Precision) -> Result<Vec<BigReal>> {
    let q0 = at(q, 0, prec);
    if !q0.is_positive() {
        return Err(Error::InvalidArgument(
            "series square root needs a positive constant term".into(),
        ));
    }
    let mut s: Vec<BigReal> = Vec::with_capacity(len);
    s.push(q0.sqrt());
    let two_s0 = &s[0] * 2;
    for n in 1..len {
        let mut acc = at(q, n, prec);
        for i in 1..n {
            acc -= &s[i] * &s[n - i];
        }
        s.push(acc / &two_s0);
    }
    s.truncate(len);
    Ok(s)
}

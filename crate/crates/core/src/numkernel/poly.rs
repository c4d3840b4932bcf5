//! Dense polynomials as ascending coefficient vectors (`p[i]` multiplies `x^i`).

use super::{BigReal, Precision};

pub fn eval(p: &[BigReal], x: &BigReal, prec: Precision) -> BigReal {
    let mut acc = BigReal::zero(prec);
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Value and first derivative in one Horner pass.
pub fn eval_with_derivative(p: &[BigReal], x: &BigReal, prec: Precision) -> (BigReal, BigReal) {
    let mut v = BigReal::zero(prec);
    let mut d = BigReal::zero(prec);
    for c in p.iter().rev() {
        d = &(&d * x) + &v;
        v = &(&v * x) + c;
    }
    (v, d)
}

pub fn derivative(p: &[BigReal]) -> Vec<BigReal> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as i64)
        .collect()
}

pub fn mul(a: &[BigReal], b: &[BigReal], prec: Precision) -> Vec<BigReal> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigReal::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn add(a: &[BigReal], b: &[BigReal], prec: Precision) -> Vec<BigReal> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => BigReal::zero(prec),
        })
        .collect()
}

pub fn scale(a: &[BigReal], s: &BigReal) -> Vec<BigReal> {
    a.iter().map(|c| c * s).collect()
}

/// Index of the highest coefficient whose magnitude exceeds `tol`.
pub fn degree(p: &[BigReal], tol: &BigReal) -> Option<usize> {
    p.iter().rposition(|c| c.abs() > *tol)
}

/// Drops trailing coefficients with magnitude at most `tol`.
pub fn trim(p: &[BigReal], tol: &BigReal) -> Vec<BigReal> {
    match degree(p, tol) {
        Some(d) => p[..=d].to_vec(),
        None => Vec::new(),
    }
}

/// Quotient and remainder of `num / den`; `den` must have a nonzero leading
/// coefficient.
pub fn divrem(num: &[BigReal], den: &[BigReal], prec: Precision) -> (Vec<BigReal>, Vec<BigReal>) {
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (Vec::new(), num.to_vec());
    }
    let lead = &den[dd];
    let mut rem = num.to_vec();
    let mut quot = vec![BigReal::zero(prec); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let q = &rem[k + dd] / lead;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &q * d;
        }
        quot[k] = q;
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Power-basis coefficients of `p(alpha + beta * x)`.
pub fn compose_affine(
    p: &[BigReal],
    alpha: &BigReal,
    beta: &BigReal,
    prec: Precision,
) -> Vec<BigReal> {
    let lin = vec![alpha.clone(), beta.clone()];
    let mut out: Vec<BigReal> = Vec::new();
    for c in p.iter().rev() {
        out = mul(&out, &lin, prec);
        if out.is_empty() {
            out.push(BigReal::zero(prec));
        }
        out[0] += c;
    }
    out
}

/// Coefficients of `x^n p(1/x)` for `n = len - 1`.
pub fn reversed(p: &[BigReal]) -> Vec<BigReal> {
    p.iter().rev().cloned().collect()
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[BigReal], prec: Precision) -> Vec<BigReal> {
    let mut out = vec![BigReal::one(prec)];
    for r in roots {
        out = mul(&out, &[-r, BigReal::one(prec)], prec);
    }
    out
}

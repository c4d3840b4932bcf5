use super::{poly, BigReal, Precision};
use crate::error::{Error, Result};

/// All roots of `p` in the open interval `(lo, hi)`, sorted increasingly.
///
/// The polynomial is assumed to have all of its roots real, simple and
/// inside the interval (orthogonal polynomials, Stieltjes-Pade
/// denominators). Isolation first scans a Chebyshev-spaced grid for sign
/// changes. When the grid cannot separate every root (tight clusters far
/// from the interval ends) the brackets are rebuilt from the critical points
/// of `p`, which interlace its roots. Each bracket is narrowed by bisection
/// and then polished with safeguarded Newton steps; no deflation is used.
///
/// Fails with [`Error::RootCountMismatch`] if the number of roots found
/// differs from the degree.
pub fn real_roots_in_interval(
    p: &[BigReal],
    lo: &BigReal,
    hi: &BigReal,
    prec: Precision,
) -> Result<Vec<BigReal>> {
    let roots = isolate_roots(p, lo, hi, prec)?;
    check_separation(&roots, lo, hi, prec)?;
    Ok(roots)
}

/// Like [`real_roots_in_interval`] but without the separation check, for
/// callers that classify near-coincident roots themselves.
pub(crate) fn isolate_roots(
    p: &[BigReal],
    lo: &BigReal,
    hi: &BigReal,
    prec: Precision,
) -> Result<Vec<BigReal>> {
    if lo >= hi {
        return Err(Error::DegenerateInput(format!(
            "empty root interval ({}, {})",
            lo.to_decimal(8),
            hi.to_decimal(8)
        )));
    }
    let exact_zero = BigReal::zero(prec);
    let p = poly::trim(p, &exact_zero);
    if p.is_empty() {
        return Err(Error::DegenerateInput(
            "zero polynomial has no isolated roots".into(),
        ));
    }
    let degree = p.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }

    let roots = match grid_brackets(&p, lo, hi, degree, prec) {
        Some(brackets) => refine_all(&p, &brackets, prec),
        None => rolle_roots(&p, lo, hi, prec)?,
    };
    if roots.len() != degree {
        return Err(mismatch(degree, roots.len(), lo, hi));
    }
    Ok(roots)
}

fn mismatch(expected: usize, found: usize, lo: &BigReal, hi: &BigReal) -> Error {
    Error::RootCountMismatch {
        expected,
        found,
        lo: lo.to_f64(),
        hi: hi.to_f64(),
    }
}

fn check_separation(roots: &[BigReal], lo: &BigReal, hi: &BigReal, prec: Precision) -> Result<()> {
    let width = hi - lo;
    let tol = &width * &prec.frac_tol(1, 4);
    for w in roots.windows(2) {
        if &w[1] - &w[0] <= tol {
            return Err(mismatch(roots.len(), roots.len() - 1, lo, hi));
        }
    }
    Ok(())
}

enum Bracket {
    Exact(BigReal),
    Sign(BigReal, BigReal),
}

/// Sign-change brackets on a Chebyshev grid, or `None` if the grid does not
/// resolve exactly `degree` roots.
fn grid_brackets(
    p: &[BigReal],
    lo: &BigReal,
    hi: &BigReal,
    degree: usize,
    prec: Precision,
) -> Option<Vec<Bracket>> {
    let points = 8 * (degree + 1);
    let mid = (lo + hi) / 2;
    let half = (hi - lo) / 2;
    let pi = BigReal::pi(Precision::new(30)).to_f64();
    // Interior grid points; the cosine is only used to place them, so f64 is enough.
    let mut xs = Vec::with_capacity(points + 1);
    xs.push(lo.clone());
    for j in 1..points {
        let c = -(pi * j as f64 / points as f64).cos();
        xs.push(&mid + &(&half * &BigReal::from_f64(c, prec)));
    }
    xs.push(hi.clone());

    let mut brackets = Vec::new();
    let mut prev: Option<(BigReal, i32)> = None;
    for (idx, x) in xs.iter().enumerate() {
        let s = poly::eval(p, x, prec).signum_i32();
        let interior = idx != 0 && idx != xs.len() - 1;
        if s == 0 {
            if interior {
                brackets.push(Bracket::Exact(x.clone()));
            }
            prev = None;
            continue;
        }
        if let Some((px, ps)) = &prev {
            if *ps != s {
                brackets.push(Bracket::Sign(px.clone(), x.clone()));
            }
        }
        prev = Some((x.clone(), s));
    }
    (brackets.len() == degree).then_some(brackets)
}

/// Isolates roots between consecutive critical points: for a real-rooted
/// polynomial the roots of `p'` interlace those of `p`.
fn rolle_roots(p: &[BigReal], lo: &BigReal, hi: &BigReal, prec: Precision) -> Result<Vec<BigReal>> {
    let degree = p.len() - 1;
    if degree == 1 {
        let r = -(&p[0] / &p[1]);
        return Ok(if &r > lo && &r < hi {
            vec![r]
        } else {
            Vec::new()
        });
    }
    let dp = poly::derivative(p);
    let crit = rolle_roots(&dp, lo, hi, prec)?;
    if crit.len() != degree - 1 {
        return Err(mismatch(degree, crit.len(), lo, hi));
    }
    let mut edges = Vec::with_capacity(degree + 1);
    edges.push(lo.clone());
    edges.extend(crit);
    edges.push(hi.clone());

    let mut brackets = Vec::new();
    for w in edges.windows(2) {
        let sa = poly::eval(p, &w[0], prec).signum_i32();
        let sb = poly::eval(p, &w[1], prec).signum_i32();
        if sa != 0 && sb != 0 && sa != sb {
            brackets.push(Bracket::Sign(w[0].clone(), w[1].clone()));
        }
    }
    Ok(refine_all(p, &brackets, prec))
}

fn refine_all(p: &[BigReal], brackets: &[Bracket], prec: Precision) -> Vec<BigReal> {
    brackets
        .iter()
        .map(|b| match b {
            Bracket::Exact(x) => x.clone(),
            Bracket::Sign(a, b) => refine(p, a, b, prec),
        })
        .collect()
}

/// Bisection to double-precision width, then Newton kept inside the bracket.
fn refine(p: &[BigReal], a: &BigReal, b: &BigReal, prec: Precision) -> BigReal {
    let mut lo = a.clone();
    let mut hi = b.clone();
    let s_lo = poly::eval(p, &lo, prec).signum_i32();
    let width0 = &hi - &lo;
    let coarse = &width0 * &BigReal::ten_pow(-18, prec);
    while &hi - &lo > coarse {
        let mid = (&lo + &hi) / 2;
        let s = poly::eval(p, &mid, prec).signum_i32();
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut x = (&lo + &hi) / 2;
    let step_tol = prec.tol(4);
    let newton_from = |at: &BigReal, lo: &BigReal, hi: &BigReal| -> Option<BigReal> {
        let (v, d) = poly::eval_with_derivative(p, at, prec);
        if d.is_zero() {
            return None;
        }
        let n = at - &(&v / &d);
        // A step below the working resolution lands on the bracket end it
        // started from; that is convergence, not a rejected step.
        (n >= *lo && n <= *hi).then_some(n)
    };
    for _ in 0..200 {
        let v = poly::eval(p, &x, prec);
        if v.is_zero() {
            break;
        }
        if v.signum_i32() == s_lo {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        // When the step from x overshoots, the bracket end on the other side
        // of the root is usually the better starting point.
        let other = if x == lo { hi.clone() } else { lo.clone() };
        let next = newton_from(&x, &lo, &hi)
            .or_else(|| newton_from(&other, &lo, &hi))
            .unwrap_or_else(|| (&lo + &hi) / 2);
        let scale = BigReal::one(prec).max(&x.abs()).clone();
        let done = (&next - &x).abs() <= &step_tol * &scale;
        x = next;
        if done {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64], p: Precision) -> Vec<BigReal> {
        v.iter().map(|&x| BigReal::from_int(x, p)).collect()
    }

    fn close(a: &BigReal, b: &BigReal, tol: &BigReal) -> bool {
        (a - b).abs() <= *tol
    }

    #[test]
    fn symmetric_quadratic() {
        let p = Precision::default();
        let r = real_roots_in_interval(
            &ints(&[-1, 0, 1], p),
            &BigReal::from_int(-2, p),
            &BigReal::from_int(2, p),
            p,
        )
        .unwrap();
        let tol = p.tol(20);
        assert!(close(&r[0], &BigReal::from_int(-1, p), &tol));
        assert!(close(&r[1], &BigReal::from_int(1, p), &tol));
    }

    #[test]
    fn shifted_legendre_degree_two() {
        let p = Precision::default();
        let r = real_roots_in_interval(
            &ints(&[1, -6, 6], p),
            &BigReal::zero(p),
            &BigReal::one(p),
            p,
        )
        .unwrap();
        let half = BigReal::from_ratio(1, 2, p);
        let d = BigReal::from_int(3, p).sqrt() / 6;
        let tol = p.tol(20);
        assert!(close(&r[0], &(&half - &d), &tol));
        assert!(close(&r[1], &(&half + &d), &tol));
        assert!((r[0].to_f64() - 0.211325).abs() < 1e-6);
        assert!((r[1].to_f64() - 0.788675).abs() < 1e-6);
    }

    #[test]
    fn linear_root() {
        let p = Precision::default();
        let r = real_roots_in_interval(&ints(&[-1, 2], p), &BigReal::zero(p), &BigReal::one(p), p)
            .unwrap();
        assert!(close(&r[0], &BigReal::from_ratio(1, 2, p), &p.tol(20)));
    }

    #[test]
    fn clustered_roots_fall_back_to_critical_points() {
        // roots 1e-6, 2e-6, 3e-6 and 0.9 in (-40, 40): the coarse grid cannot
        // separate the cluster near zero.
        let p = Precision::new(80);
        let roots: Vec<BigReal> = ["1e-6", "2e-6", "3e-6", "0.9"]
            .iter()
            .map(|s| BigReal::parse(s, p).unwrap())
            .collect();
        let c = poly::from_roots(&roots, p);
        let found =
            real_roots_in_interval(&c, &BigReal::from_int(-40, p), &BigReal::from_int(40, p), p)
                .unwrap();
        for (a, b) in found.iter().zip(&roots) {
            assert!(close(a, b, &p.tol(20)));
        }
    }

    #[test]
    fn residual_bound_holds() {
        let p = Precision::default();
        let roots: Vec<BigReal> = (1..=9).map(|i| BigReal::from_ratio(i, 10, p)).collect();
        let c = poly::from_roots(&roots, p);
        let (lo, hi) = (BigReal::zero(p), BigReal::one(p));
        let found = real_roots_in_interval(&c, &lo, &hi, p).unwrap();
        let bound = p.tol(15);
        for r in &found {
            assert!(poly::eval(&c, r, p).abs() <= bound);
        }
        for w in found.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn root_outside_interval_is_a_count_mismatch() {
        let p = Precision::new(50);
        let err = real_roots_in_interval(
            &ints(&[-4, 0, 1], p),
            &BigReal::zero(p),
            &BigReal::one(p),
            p,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::RootCountMismatch {
                expected: 2,
                found: 0,
                ..
            }
        ));
    }

    #[test]
    fn complex_roots_are_a_count_mismatch() {
        let p = Precision::new(50);
        let err = real_roots_in_interval(
            &ints(&[1, 0, 1], p),
            &BigReal::from_int(-3, p),
            &BigReal::from_int(3, p),
            p,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RootCountMismatch { .. }));
    }

    #[test]
    fn degenerate_inputs() {
        let p = Precision::new(50);
        let zero = vec![BigReal::zero(p); 3];
        assert!(matches!(
            real_roots_in_interval(&zero, &BigReal::zero(p), &BigReal::one(p), p),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            real_roots_in_interval(&ints(&[-1, 2], p), &BigReal::one(p), &BigReal::one(p), p),
            Err(Error::DegenerateInput(_))
        ));
    }
}

use super::{BigReal, Precision};
use crate::error::{Error, Result};

/// Solves `matrix * x = rhs` by Gaussian elimination with partial pivoting.
///
/// A pivot whose magnitude is below `10^(-p/2)` times the largest entry of
/// the matrix is reported as [`Error::SingularMatrix`].
pub fn solve_dense(
    matrix: &[Vec<BigReal>],
    rhs: &[BigReal],
    prec: Precision,
) -> Result<Vec<BigReal>> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::DegenerateInput("empty linear system".into()));
    }
    if rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "linear system must be square with a matching right-hand side (n = {n}, rhs = {})",
            rhs.len()
        )));
    }

    let mut a: Vec<Vec<BigReal>> = matrix
        .iter()
        .map(|row| row.iter().map(|v| v.with_precision(prec)).collect())
        .collect();
    let mut b: Vec<BigReal> = rhs.iter().map(|v| v.with_precision(prec)).collect();

    let scale = a
        .iter()
        .flatten()
        .map(BigReal::abs)
        .fold(BigReal::zero(prec), |m, v| if v > m { v } else { m });
    if scale.is_zero() {
        return Err(Error::SingularMatrix {
            column: 0,
            pivot: 0.0,
        });
    }
    let threshold = &scale * &prec.frac_tol(1, 2);

    for col in 0..n {
        let (piv_row, piv_abs) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .fold(None::<(usize, BigReal)>, |best, (r, v)| match best {
                Some((_, ref bv)) if *bv >= v => best,
                _ => Some((r, v)),
            })
            .expect("non-empty pivot range");
        if piv_abs < threshold {
            return Err(Error::SingularMatrix {
                column: col,
                pivot: piv_abs.to_f64(),
            });
        }
        a.swap(col, piv_row);
        b.swap(col, piv_row);

        let pivot = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }

    let mut x = vec![BigReal::zero(prec); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc -= &a[r][c] * &x[c];
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}

/// `max_i |(matrix * x - rhs)_i|`.
pub fn residual_max_norm(
    matrix: &[Vec<BigReal>],
    x: &[BigReal],
    rhs: &[BigReal],
    prec: Precision,
) -> BigReal {
    matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let ax = row
                .iter()
                .zip(x)
                .fold(BigReal::zero(prec), |acc, (m, v)| acc + m * v);
            (ax - b).abs()
        })
        .fold(BigReal::zero(prec), |m, v| if v > m { v } else { m })
}

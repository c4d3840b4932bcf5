//! Extended-precision scalars, dense polynomials, linear solves and real
//! root isolation.

mod bigreal;
mod linalg;
pub mod poly;
mod roots;

pub use bigreal::{sum, BigReal, Precision};
pub use linalg::{residual_max_norm, solve_dense};
pub(crate) use roots::isolate_roots;
pub use roots::real_roots_in_interval;

/// Generalized binomial coefficient `binom(a, j)` for real `a`.
pub fn binom(a: &BigReal, j: usize, prec: Precision) -> BigReal {
    let mut out = BigReal::one(prec);
    for i in 0..j {
        out = out * &(a - i as i64) / (i as i64 + 1);
    }
    out
}

/// `a_j` for `j = 0..n`, where `(a)_j` is the rising factorial.
pub fn pochhammer(a: &BigReal, n: usize, prec: Precision) -> Vec<BigReal> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigReal::one(prec);
    out.push(acc.clone());
    for i in 0..n {
        acc *= &(a + i as i64);
        out.push(acc.clone());
    }
    out
}

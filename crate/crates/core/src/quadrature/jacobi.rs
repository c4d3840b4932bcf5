use super::QuadratureRule;
use crate::error::{Error, Result};
use crate::numkernel::{binom, poly, real_roots_in_interval, BigReal, Precision};

/// Parameters of `P_n^(alpha, beta)`, orthogonal for `(1-x)^alpha (1+x)^beta`
/// on `(-1, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiParams {
    pub alpha: BigReal,
    pub beta: BigReal,
    pub n: usize,
}

impl JacobiParams {
    pub fn new(alpha: BigReal, beta: BigReal, n: usize) -> Result<Self> {
        if alpha <= -1 || beta <= -1 {
            return Err(Error::InvalidArgument(format!(
                "Jacobi parameters must exceed -1 (alpha = {}, beta = {})",
                alpha.to_decimal(10),
                beta.to_decimal(10)
            )));
        }
        Ok(JacobiParams { alpha, beta, n })
    }

    pub fn with_degree(&self, n: usize) -> Self {
        JacobiParams { n, ..self.clone() }
    }

    fn precision(&self) -> Precision {
        self.alpha.precision().max(self.beta.precision())
    }

    /// `d_j = binom(alpha+n, n-j) binom(alpha+beta+n+j, j)`, the coefficients
    /// in powers of `(x-1)/2`.
    fn half_shift_coeffs(&self) -> Vec<BigReal> {
        let prec = self.precision();
        let n = self.n;
        let an = &self.alpha + n as i64;
        let abn = &(&self.alpha + &self.beta) + n as i64;
        (0..=n)
            .map(|j| binom(&an, n - j, prec) * binom(&(&abn + j as i64), j, prec))
            .collect()
    }

    /// Coefficient of `x^n` in `P_n`.
    pub fn leading_coeff(&self) -> BigReal {
        let prec = self.precision();
        let s = &(&self.alpha + &self.beta) + (2 * self.n) as i64;
        binom(&s, self.n, prec) / BigReal::from_int(2, prec).powi(self.n as i32)
    }

    /// `int_{-1}^{1} P_n^2 (1-x)^alpha (1+x)^beta dx`.
    pub fn norm(&self) -> BigReal {
        let prec = self.precision();
        let (a, b) = (&self.alpha, &self.beta);
        let ab = a + b;
        let two_pow = BigReal::from_int(2, prec).pow(&(&ab + 1));
        if self.n == 0 {
            return two_pow * (a + 1).gamma() * (b + 1).gamma() / (&ab + 2).gamma();
        }
        let n = self.n as i64;
        let nfact = BigReal::from_int(n + 1, prec).gamma();
        two_pow * (a + (n + 1)).gamma() * (b + (n + 1)).gamma()
            / ((&ab + (2 * n + 1)) * (&ab + (n + 1)).gamma() * nfact)
    }
}

pub fn jacobi_eval(params: &JacobiParams, x: &BigReal) -> BigReal {
    let prec = params.precision().max(x.precision());
    let t = (x - 1) / 2;
    poly::eval(&params.half_shift_coeffs(), &t, prec)
}

/// Power-basis coefficients of `P_n` in `x`.
pub fn jacobi_coeffs(params: &JacobiParams) -> Vec<BigReal> {
    let prec = params.precision();
    let half = BigReal::from_ratio(1, 2, prec);
    poly::compose_affine(&params.half_shift_coeffs(), &-&half, &half, prec)
}

pub fn jacobi_roots(params: &JacobiParams) -> Result<Vec<BigReal>> {
    if params.n == 0 {
        return Err(Error::InvalidArgument(
            "Jacobi roots need degree n >= 1".into(),
        ));
    }
    let prec = params.precision();
    real_roots_in_interval(
        &jacobi_coeffs(params),
        &BigReal::from_int(-1, prec),
        &BigReal::one(prec),
        prec,
    )
}

/// Gauss-Jacobi rule for `(1-x)^alpha (1+x)^beta dx` on `(-1, 1)`, with
/// weights `(a_n / a_{n-1}) h_{n-1} / (P_{n-1}(x_j) P_n'(x_j))`.
pub fn gauss_jacobi(params: &JacobiParams) -> Result<QuadratureRule> {
    let prec = params.precision();
    let nodes = jacobi_roots(params)?;
    let prev = params.with_degree(params.n - 1);
    let factor = params.leading_coeff() / prev.leading_coeff() * prev.norm();
    let cn = jacobi_coeffs(params);
    let cp = jacobi_coeffs(&prev);
    let weights = nodes
        .iter()
        .map(|x| {
            let (_, d) = poly::eval_with_derivative(&cn, x, prec);
            &factor / (poly::eval(&cp, x, prec) * d)
        })
        .collect();
    QuadratureRule::new(
        nodes,
        weights,
        BigReal::from_int(-1, prec),
        BigReal::one(prec),
    )
}

/// Rule for `(1-v)^alpha v^beta dv` on `(0, 1)` via `v = (y+1)/2`; the
/// weights pick up the factor `2^-(alpha+beta+1)`.
pub fn gauss_jacobi_shifted(params: &JacobiParams) -> Result<QuadratureRule> {
    let prec = params.precision();
    let rule = gauss_jacobi(params)?;
    let scale = BigReal::from_int(2, prec).pow(&-(&(&params.alpha + &params.beta) + 1));
    let nodes = rule.nodes.iter().map(|y| (y + 1) / 2).collect();
    let weights = rule.weights.iter().map(|w| w * &scale).collect();
    QuadratureRule::new(nodes, weights, BigReal::zero(prec), BigReal::one(prec))
}

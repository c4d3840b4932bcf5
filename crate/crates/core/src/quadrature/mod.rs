//! Gaussian quadrature: Gauss-Jacobi rules from Jacobi polynomial roots and
//! general rules from a moment sequence.

mod jacobi;

use crate::error::{Error, Result};
use crate::numkernel::{isolate_roots, poly, BigReal, Precision};
use crate::pade::{pade, TaylorSeries};

pub use jacobi::{
    gauss_jacobi, gauss_jacobi_shifted, jacobi_coeffs, jacobi_eval, jacobi_roots, JacobiParams,
};

/// Nodes and positive weights of an `n`-point rule for a measure on `(lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<BigReal>,
    pub weights: Vec<BigReal>,
    pub lo: BigReal,
    pub hi: BigReal,
}

impl QuadratureRule {
    /// Validates positivity, ordering and containment in `(lo, hi)`.
    pub fn new(
        nodes: Vec<BigReal>,
        weights: Vec<BigReal>,
        lo: BigReal,
        hi: BigReal,
    ) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "quadrature rule needs matching non-empty node and weight lists ({} vs {})",
                nodes.len(),
                weights.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::NotAStieltjesSequence(format!(
                "weight {i} = {} is not positive",
                w.to_decimal(12)
            )));
        }
        if let Some(x) = nodes.iter().find(|x| **x <= lo || **x >= hi) {
            return Err(Error::NotAStieltjesSequence(format!(
                "node {} escapes the support ({}, {})",
                x.to_decimal(12),
                lo.to_decimal(12),
                hi.to_decimal(12)
            )));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotAStieltjesSequence(
                "nodes are not strictly increasing".into(),
            ));
        }
        Ok(QuadratureRule {
            nodes,
            weights,
            lo,
            hi,
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn precision(&self) -> Precision {
        self.weights[0].precision()
    }

    /// `sum_i w_i x_i^k`.
    pub fn moment(&self, k: usize) -> BigReal {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(BigReal::zero(self.precision()), |acc, (x, w)| {
                acc + w * &x.powi(k as i32)
            })
    }

    pub fn integrate<F: Fn(&BigReal) -> BigReal>(&self, f: F) -> BigReal {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(BigReal::zero(self.precision()), |acc, (x, w)| {
                acc + w * &f(x)
            })
    }

    /// Whether the nodes of `next` (one more point) strictly interlace ours.
    pub fn interlaces(&self, next: &QuadratureRule) -> bool {
        if next.order() != self.order() + 1 {
            return false;
        }
        self.nodes
            .iter()
            .enumerate()
            .all(|(i, x)| next.nodes[i] < *x && *x < next.nodes[i + 1])
    }
}

/// The `n`-point Gaussian rule for the measure with moments `m_0..m_{2n-1}`.
///
/// Nodes and weights come from the `[n-1/n]` Pade approximant of the
/// Stieltjes series `sum_j (-z)^j m_j = sum_i w_i / (1 + x_i z)`. Writing
/// `s = -1/z`, the nodes are the roots of `s^n Q(-1/s)` and the weights the
/// residues of `s^(n-1) P(-1/s) / (s^n Q(-1/s))`; this avoids dividing by
/// nodes, so a node at zero is recovered like any other.
///
/// `(lo, hi)` is only used for validation.
pub fn gauss_from_moments(
    moments: &[BigReal],
    lo: &BigReal,
    hi: &BigReal,
) -> Result<QuadratureRule> {
    if moments.is_empty() || !moments.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "an n-point rule needs 2n moments, got {}",
            moments.len()
        )));
    }
    if lo >= hi {
        return Err(Error::DegenerateInput("empty support interval".into()));
    }
    let n = moments.len() / 2;
    let prec = moments[0].precision();
    let signed: Vec<BigReal> = moments
        .iter()
        .enumerate()
        .map(|(j, m)| if j % 2 == 0 { m.clone() } else { -m })
        .collect();
    let r = pade(&TaylorSeries::at_zero(signed, prec), n - 1, n)?;

    let alt = |c: &[BigReal], deg: usize| -> Vec<BigReal> {
        // ascending coefficients of s^deg c(-1/s)
        (0..=deg)
            .map(|i| {
                let j = deg - i;
                let v = c.get(j).cloned().unwrap_or_else(|| BigReal::zero(prec));
                if j.is_multiple_of(2) {
                    v
                } else {
                    -v
                }
            })
            .collect()
    };
    let node_poly = alt(&r.den, n);
    let weight_poly = alt(&r.num, n - 1);

    let bound = r
        .den
        .iter()
        .map(BigReal::abs)
        .fold(BigReal::zero(prec), |a, v| a.max(&v).clone())
        + 2;
    let search_lo = lo.min(&-&bound).clone() - 1;
    let search_hi = hi.max(&bound).clone() + 1;
    let nodes = isolate_roots(&node_poly, &search_lo, &search_hi, prec).map_err(|e| match e {
        Error::RootCountMismatch { expected, found, .. } => Error::NotAStieltjesSequence(format!(
            "orthogonal polynomial of degree {expected} has {found} real roots; the moments are not those of a positive measure or precision is exhausted"
        )),
        other => other,
    })?;

    let dq = poly::derivative(&node_poly);
    let weights = nodes
        .iter()
        .map(|x| poly::eval(&weight_poly, x, prec) / poly::eval(&dq, x, prec))
        .collect();
    QuadratureRule::new(nodes, weights, lo.clone(), hi.clone())
}

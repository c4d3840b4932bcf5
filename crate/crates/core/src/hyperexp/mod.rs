//! Hyperexponential processes: Levy processes whose jump density is a finite
//! mixture of exponentials on each half-line, and their construction from
//! Pade approximants of a target Laplace exponent.

mod compose;
mod construct;
mod explicit;
mod serial;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{poly, BigReal, Precision};
use crate::pade::{partial_fractions, RationalFunction};

pub use compose::{
    approx_by_tails, approx_nig_subordinated, compose_difference, rescale, subordinate_brownian,
    TailSpec,
};
pub use construct::{
    approx_one_sided, approx_two_sided, cumulant_table, ApproximationReport, CumulantRow, Variant,
};
pub use explicit::{approx_gamma_explicit, approx_tempered_stable_explicit, explicit_one_sided};
pub use serial::{HepDocument, TermDocument};

/// Truncation function of the Levy-Khintchine formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    /// `h(x) = 0`
    Zero,
    /// `h(x) = x`
    Identity,
}

impl Cutoff {
    pub fn tag(self) -> &'static str {
        match self {
            Cutoff::Zero => "h=0",
            Cutoff::Identity => "h=x",
        }
    }
}

/// One exponential `amplitude * exp(-rate * x)`, supported on `x > 0` when
/// `rate > 0` and on `x < 0` when `rate < 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpTerm {
    pub amplitude: BigReal,
    pub rate: BigReal,
}

impl ExpTerm {
    pub fn new(amplitude: BigReal, rate: BigReal) -> Self {
        ExpTerm { amplitude, rate }
    }

    /// `int x pi(dx)` over the term's half-line, `sign(rate) amplitude / rate^2`.
    fn first_moment(&self) -> BigReal {
        &self.amplitude / &(&self.rate * &self.rate.abs())
    }

    /// Jump intensity `amplitude / |rate|`.
    fn intensity(&self) -> BigReal {
        &self.amplitude / &self.rate.abs()
    }
}

/// Where a process came from.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub model: String,
    pub variant: String,
    pub n: Option<usize>,
    pub k: Option<usize>,
}

/// Drift, Gaussian variance and exponential jump terms.
///
/// With cutoff `h = 0` the exponent is
/// `a z + sigma2 z^2/2 + sum alpha z / (|beta| (beta - z))`;
/// with `h = x` each term contributes `alpha z^2 / (beta |beta| (beta - z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperExpProcess {
    pub drift: BigReal,
    pub sigma2: BigReal,
    pub positive: Vec<ExpTerm>,
    pub negative: Vec<ExpTerm>,
    pub cutoff: Cutoff,
    pub provenance: Provenance,
}

impl HyperExpProcess {
    /// Validates signs: amplitudes > 0, positive rates on the positive side,
    /// negative rates on the negative side, `sigma2 >= 0`.
    pub fn new(
        drift: BigReal,
        sigma2: BigReal,
        positive: Vec<ExpTerm>,
        negative: Vec<ExpTerm>,
        cutoff: Cutoff,
    ) -> Result<Self> {
        if sigma2.is_negative() {
            return Err(Error::NotALaplaceExponent(format!(
                "negative Gaussian variance {}",
                sigma2.to_decimal(12)
            )));
        }
        for t in &positive {
            if !t.amplitude.is_positive() || !t.rate.is_positive() {
                return Err(Error::NotALaplaceExponent(format!(
                    "positive-side term ({}, {}) needs amplitude > 0 and rate > 0",
                    t.amplitude.to_decimal(12),
                    t.rate.to_decimal(12)
                )));
            }
        }
        for t in &negative {
            if !t.amplitude.is_positive() || !t.rate.is_negative() {
                return Err(Error::NotALaplaceExponent(format!(
                    "negative-side term ({}, {}) needs amplitude > 0 and rate < 0",
                    t.amplitude.to_decimal(12),
                    t.rate.to_decimal(12)
                )));
            }
        }
        let mut positive = positive;
        let mut negative = negative;
        positive.sort_by(|a, b| a.rate.partial_cmp(&b.rate).expect("finite rates"));
        negative.sort_by(|a, b| b.rate.partial_cmp(&a.rate).expect("finite rates"));
        Ok(HyperExpProcess {
            drift,
            sigma2,
            positive,
            negative,
            cutoff,
            provenance: Provenance::default(),
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn precision(&self) -> Precision {
        self.drift.precision()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ExpTerm> {
        self.positive.iter().chain(&self.negative)
    }

    pub fn is_subordinator(&self) -> bool {
        self.negative.is_empty() && self.sigma2.is_zero() && !self.drift_h0().is_negative()
    }

    /// Drift under the `h = 0` convention.
    pub fn drift_h0(&self) -> BigReal {
        match self.cutoff {
            Cutoff::Zero => self.drift.clone(),
            Cutoff::Identity => self
                .terms()
                .fold(self.drift.clone(), |acc, t| acc - t.first_moment()),
        }
    }

    /// Drift under the `h = x` convention, `psi'(0)`.
    pub fn drift_hx(&self) -> BigReal {
        match self.cutoff {
            Cutoff::Identity => self.drift.clone(),
            Cutoff::Zero => self
                .terms()
                .fold(self.drift.clone(), |acc, t| acc + t.first_moment()),
        }
    }

    /// The same process written with another cutoff.
    pub fn with_cutoff(&self, cutoff: Cutoff) -> HyperExpProcess {
        let drift = match cutoff {
            Cutoff::Zero => self.drift_h0(),
            Cutoff::Identity => self.drift_hx(),
        };
        HyperExpProcess {
            drift,
            cutoff,
            ..self.clone()
        }
    }

    /// Replaces the drift (in the current convention).
    pub fn with_drift(&self, drift: BigReal) -> HyperExpProcess {
        HyperExpProcess {
            drift,
            ..self.clone()
        }
    }

    /// Shifts the drift so that `psi(1) = r`, making `e^(X_t - r t)` a
    /// martingale.
    pub fn martingale_calibrated(&self, r: &BigReal) -> Result<HyperExpProcess> {
        if let Some(t) = self.positive.iter().find(|t| t.rate <= 1) {
            return Err(Error::StripTooNarrow {
                rho: t.rate.to_decimal(12),
            });
        }
        let psi1 = self.laplace_exponent_real(&BigReal::one(self.precision()))?;
        Ok(self.with_drift(&self.drift + &(r - &psi1)))
    }

    /// Total jump intensity.
    pub fn jump_intensity(&self) -> BigReal {
        self.terms()
            .fold(BigReal::zero(self.precision()), |acc, t| {
                acc + t.intensity()
            })
    }

    /// Levy density at `x != 0`.
    pub fn levy_density(&self, x: &BigReal) -> BigReal {
        let side = if x.is_positive() {
            &self.positive
        } else {
            &self.negative
        };
        if x.is_zero() {
            return BigReal::zero(self.precision());
        }
        side.iter().fold(BigReal::zero(self.precision()), |acc, t| {
            acc + &t.amplitude * &(-(&t.rate * x)).exp()
        })
    }

    pub fn levy_density_f64(&self, x: f64) -> f64 {
        let side = if x > 0.0 {
            &self.positive
        } else {
            &self.negative
        };
        if x == 0.0 {
            return 0.0;
        }
        side.iter()
            .map(|t| t.amplitude.to_f64() * (-t.rate.to_f64() * x).exp())
            .sum()
    }

    /// Real poles `beta_i` in increasing order.
    pub fn poles(&self) -> Vec<BigReal> {
        let mut p: Vec<BigReal> = self.terms().map(|t| t.rate.clone()).collect();
        p.sort_by(|a, b| a.partial_cmp(b).expect("finite rates"));
        p
    }

    /// `psi(z)` in double precision.
    pub fn laplace_exponent(&self, z: Complex64) -> Result<Complex64> {
        let v = self.to_f64_view();
        if v.terms
            .iter()
            .any(|&(_, beta)| (beta - z).norm() <= 1e-14 * beta.abs())
        {
            return Err(Error::PoleEvaluation { z: format!("{z}") });
        }
        Ok(v.eval(z))
    }

    pub fn to_f64_view(&self) -> HepF64 {
        let h0 = self.with_cutoff(Cutoff::Zero);
        HepF64 {
            drift: h0.drift.to_f64(),
            half_sigma2: self.sigma2.to_f64() / 2.0,
            terms: h0
                .terms()
                .map(|t| (t.intensity().to_f64(), t.rate.to_f64()))
                .collect(),
        }
    }

    /// `psi(z)` at a real point, full precision.
    pub fn laplace_exponent_real(&self, z: &BigReal) -> Result<BigReal> {
        let prec = self.precision();
        let h0 = self.with_cutoff(Cutoff::Zero);
        let mut acc = &h0.drift * z + &self.sigma2 * z * z / 2;
        for t in h0.terms() {
            let d = &t.rate - z;
            if d.abs() <= prec.frac_tol(1, 2) * t.rate.abs() {
                return Err(Error::PoleEvaluation {
                    z: z.to_decimal(20),
                });
            }
            acc += &t.amplitude * z / &(t.rate.abs() * d);
        }
        Ok(acc)
    }

    /// Taylor coefficients `c_0..c_{len-1}` of `psi` at zero.
    pub fn taylor_coeffs(&self, len: usize) -> Vec<BigReal> {
        let prec = self.precision();
        let h0 = self.with_cutoff(Cutoff::Zero);
        let mut c = vec![BigReal::zero(prec); len];
        if len > 1 {
            c[1] += &h0.drift;
        }
        if len > 2 {
            c[2] += &self.sigma2 / 2;
        }
        for t in h0.terms() {
            // alpha/|beta| sum_{j>=1} (z/beta)^j
            let inv = t.rate.recip();
            let mut pw = t.intensity();
            for cj in c.iter_mut().skip(1) {
                pw *= &inv;
                *cj += &pw;
            }
        }
        c
    }

    /// Cumulants `kappa_1..kappa_jmax` of `X_1`, `kappa_j = j! c_j`.
    pub fn cumulants(&self, j_max: usize) -> Vec<BigReal> {
        let c = self.taylor_coeffs(j_max + 1);
        let mut fact = BigReal::one(self.precision());
        (1..=j_max)
            .map(|j| {
                fact = &fact * j as i64;
                &c[j] * &fact
            })
            .collect()
    }

    /// The exponent as `P(z)/Q(z)` with `Q(z) = prod (1 - z/beta_i)`.
    pub fn rational(&self) -> RationalFunction {
        let prec = self.precision();
        let mut q = vec![BigReal::one(prec)];
        for t in self.terms() {
            q = poly::mul(&q, &[BigReal::one(prec), -t.rate.recip()], prec);
        }
        let n = q.len() - 1;
        let m = n + if self.sigma2.is_zero() { 1 } else { 2 };
        let c = self.taylor_coeffs(m + 1);
        let p = crate::pade::series::mul(&c, &q, m + 1, prec);
        RationalFunction::new(p, q, BigReal::zero(prec)).expect("Q(0) = 1")
    }

    /// Reads a rational Laplace exponent `P/Q` centred at zero with real simple
    /// poles and a polynomial part of degree at most two.
    pub fn from_rational(r: &RationalFunction) -> Result<Self> {
        if !r.center.is_zero() {
            return Err(Error::InvalidArgument(
                "rational exponent must be expanded at zero".into(),
            ));
        }
        let prec = r.precision();
        let pf = partial_fractions(r)?;
        let mut poly_part = pf.poly.clone();
        poly_part.resize(3.max(poly_part.len()), BigReal::zero(prec));
        if poly_part.len() > 3 && poly_part[3..].iter().any(|c| c.abs() > prec.tol(30)) {
            return Err(Error::NotALaplaceExponent(
                "polynomial part has degree above two".into(),
            ));
        }
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for pole in &pf.poles {
            // res/(z - beta) = -sign(beta) alpha / (|beta| ... ) in h = 0 form
            let alpha = if pole.location.is_positive() {
                -&pole.residue
            } else {
                pole.residue.clone()
            };
            let term = ExpTerm::new(alpha, pole.location.clone());
            if pole.location.is_positive() {
                positive.push(term);
            } else {
                negative.push(term);
            }
        }
        HyperExpProcess::new(
            poly_part[1].clone(),
            &poly_part[2] * 2,
            positive,
            negative,
            Cutoff::Zero,
        )
    }

    /// Coefficients `(r2, r1, r0)` of `psi(z) = r2 z^2 + r1 z + r0 + O(1/z)`.
    pub fn asymptotic_coeffs(&self) -> (BigReal, BigReal, BigReal) {
        (&self.sigma2 / 2, self.drift_h0(), -self.jump_intensity())
    }
}

/// Double-precision copy of the exponent for repeated evaluation:
/// `drift z + half_sigma2 z^2 + sum lambda z / (beta - z)` over `(lambda, beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HepF64 {
    pub drift: f64,
    pub half_sigma2: f64,
    pub terms: Vec<(f64, f64)>,
}

impl HepF64 {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let jumps: Complex64 = self
            .terms
            .iter()
            .map(|&(lam, beta)| z * lam / (beta - z))
            .sum();
        z * self.drift + z * z * self.half_sigma2 + jumps
    }
}

#[cfg(test)]
mod tests;

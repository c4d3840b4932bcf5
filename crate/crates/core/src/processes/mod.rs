//! Target Levy models with completely monotone jumps: Laplace exponents,
//! Taylor coefficients, analyticity strips, Esscher shifts and martingale
//! calibration.

mod parts;
mod spec;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};
use crate::pade::TaylorSeries;

pub use parts::ExponentPart;
pub use spec::{parse_model_spec, ModelSpec};

/// Which catalogue entry a model came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Gamma,
    TemperedStable {
        alpha: BigReal,
    },
    Vg {
        theta: BigReal,
        sigma: BigReal,
        nu: BigReal,
    },
    VgDirect {
        a: BigReal,
        ahat: BigReal,
        nu: BigReal,
    },
    Cgmy {
        c: BigReal,
        g: BigReal,
        m: BigReal,
        y: BigReal,
    },
    NigSubordinator {
        kappa: BigReal,
    },
    Nig {
        kappa: BigReal,
        sigma: BigReal,
        theta: BigReal,
    },
    Custom {
        label: String,
    },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::TemperedStable { .. } => "tempered-stable",
            Family::Vg { .. } => "vg",
            Family::VgDirect { .. } => "vg",
            Family::Cgmy { .. } => "cgmy",
            Family::NigSubordinator { .. } => "nig-subordinator",
            Family::Nig { .. } => "nig",
            Family::Custom { .. } => "custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |x: &BigReal| x.to_decimal(12);
        match self {
            Family::Gamma => write!(f, "Gamma"),
            Family::TemperedStable { alpha } => write!(f, "TemperedStable(alpha={})", d(alpha)),
            Family::Vg { theta, sigma, nu } => write!(
                f,
                "VG(theta={}, sigma={}, nu={})",
                d(theta),
                d(sigma),
                d(nu)
            ),
            Family::VgDirect { a, ahat, nu } => {
                write!(f, "VG(a={}, ahat={}, nu={})", d(a), d(ahat), d(nu))
            }
            Family::Cgmy { c, g, m, y } => {
                write!(f, "CGMY(C={}, G={}, M={}, Y={})", d(c), d(g), d(m), d(y))
            }
            Family::NigSubordinator { kappa } => write!(f, "IG(kappa={})", d(kappa)),
            Family::Nig {
                kappa,
                sigma,
                theta,
            } => {
                write!(
                    f,
                    "NIG(kappa={}, sigma={}, theta={})",
                    d(kappa),
                    d(sigma),
                    d(theta)
                )
            }
            Family::Custom { label } => write!(f, "Custom({label})"),
        }
    }
}

/// Analyticity strip `(-rho_hat, rho)`; `None` stands for infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Strip {
    pub rho_hat: Option<BigReal>,
    pub rho: Option<BigReal>,
}

impl Strip {
    pub fn contains(&self, x: &BigReal) -> bool {
        let below = self.rho.as_ref().is_none_or(|r| x < r);
        let above = self.rho_hat.as_ref().is_none_or(|r| *x > -r);
        below && above
    }

    pub fn rho_f64(&self) -> f64 {
        self.rho.as_ref().map_or(f64::INFINITY, BigReal::to_f64)
    }

    pub fn rho_hat_f64(&self) -> f64 {
        self.rho_hat.as_ref().map_or(f64::INFINITY, BigReal::to_f64)
    }
}

/// A Levy process given as a sum of [`ExponentPart`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct LevyModel {
    pub family: Family,
    pub parts: Vec<ExponentPart>,
}

impl LevyModel {
    /// Validates every part.
    pub fn new(family: Family, parts: Vec<ExponentPart>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "a model needs at least one exponent part".into(),
            ));
        }
        for p in &parts {
            p.validate()?;
        }
        Ok(LevyModel { family, parts })
    }

    /// `psi(z) = -ln(1 - z)`.
    pub fn gamma(prec: Precision) -> Self {
        LevyModel {
            family: Family::Gamma,
            parts: vec![ExponentPart::Log {
                weight: BigReal::one(prec),
                pole: BigReal::one(prec),
            }],
        }
    }

    /// `psi(z) = Gamma(-alpha) ((1 - z)^alpha - 1)`, `alpha` in (0,1) or (1,2).
    pub fn tempered_stable(alpha: BigReal) -> Result<Self> {
        let prec = alpha.precision();
        if !(alpha.is_positive() && alpha < 2 && alpha != 1) {
            return Err(Error::InvalidArgument(
                "tempered-stable alpha must lie in (0,1) or (1,2)".into(),
            ));
        }
        Ok(LevyModel {
            parts: vec![ExponentPart::Power {
                scale: (-&alpha).gamma(),
                pole: BigReal::one(prec),
                exponent: alpha.clone(),
            }],
            family: Family::TemperedStable { alpha },
        })
    }

    /// `psi(z) = mu z - (1/nu) ln(1 - z/a) - (1/nu) ln(1 + z/ahat)`.
    pub fn vg_direct(a: BigReal, ahat: BigReal, nu: BigReal, mu: BigReal) -> Result<Self> {
        if !(a.is_positive() && ahat.is_positive() && nu.is_positive()) {
            return Err(Error::InvalidArgument("VG needs a, ahat, nu > 0".into()));
        }
        let w = nu.recip();
        Ok(LevyModel {
            parts: vec![
                ExponentPart::Linear { mu },
                ExponentPart::Log {
                    weight: w.clone(),
                    pole: a.clone(),
                },
                ExponentPart::Log {
                    weight: w,
                    pole: -&ahat,
                },
            ],
            family: Family::VgDirect { a, ahat, nu },
        })
    }

    /// VG from `(theta, sigma, nu)` via `mu_p = sqrt(theta^2 + 2 sigma^2/nu)/2 + theta/2`,
    /// `mu_n = mu_p - theta`, `a = 1/(mu_p nu)`, `ahat = 1/(mu_n nu)`.
    pub fn vg(theta: BigReal, sigma: BigReal, nu: BigReal, mu: BigReal) -> Result<Self> {
        if !(sigma.is_positive() && nu.is_positive()) {
            return Err(Error::InvalidArgument("VG needs sigma, nu > 0".into()));
        }
        let mu_p = (&theta * &theta + &sigma * &sigma * 2 / &nu).sqrt() / 2 + &theta / 2;
        let mu_n = &mu_p - &theta;
        let a = (&mu_p * &nu).recip();
        let ahat = (&mu_n * &nu).recip();
        let mut m = LevyModel::vg_direct(a, ahat, nu.clone(), mu)?;
        m.family = Family::Vg { theta, sigma, nu };
        Ok(m)
    }

    /// `psi(z) = mu z + C Gamma(-Y) [(M - z)^Y - M^Y + (G + z)^Y - G^Y]`.
    pub fn cgmy(c: BigReal, g: BigReal, m: BigReal, y: BigReal, mu: BigReal) -> Result<Self> {
        if !(c.is_positive() && g.is_positive() && m.is_positive()) {
            return Err(Error::InvalidArgument("CGMY needs C, G, M > 0".into()));
        }
        if !(y.is_positive() && y < 2 && y != 1) {
            return Err(Error::InvalidArgument(
                "CGMY needs Y in (0,1) or (1,2)".into(),
            ));
        }
        let cg = &c * &(-&y).gamma();
        Ok(LevyModel {
            parts: vec![
                ExponentPart::Linear { mu },
                ExponentPart::Power {
                    scale: &cg * &m.pow(&y),
                    pole: m.clone(),
                    exponent: y.clone(),
                },
                ExponentPart::Power {
                    scale: &cg * &g.pow(&y),
                    pole: -&g,
                    exponent: y.clone(),
                },
            ],
            family: Family::Cgmy { c, g, m, y },
        })
    }

    /// Inverse Gaussian subordinator `psi(z) = (1 - sqrt(1 - kappa z)) / kappa`.
    pub fn nig_subordinator(kappa: BigReal) -> Result<Self> {
        if !kappa.is_positive() {
            return Err(Error::InvalidArgument(
                "IG subordinator needs kappa > 0".into(),
            ));
        }
        let prec = kappa.precision();
        Ok(LevyModel {
            parts: vec![ExponentPart::Power {
                scale: -kappa.recip(),
                pole: kappa.recip(),
                exponent: BigReal::from_ratio(1, 2, prec),
            }],
            family: Family::NigSubordinator { kappa },
        })
    }

    /// Brownian motion `sigma W + theta t` time-changed by the IG subordinator:
    /// `psi(z) = mu z + (1 - sqrt(1 - kappa (sigma^2 z^2 / 2 + theta z))) / kappa`.
    pub fn nig(kappa: BigReal, sigma: BigReal, theta: BigReal, mu: BigReal) -> Result<Self> {
        if !(kappa.is_positive() && sigma.is_positive()) {
            return Err(Error::InvalidArgument("NIG needs kappa, sigma > 0".into()));
        }
        let prec = kappa.precision();
        let q = [
            BigReal::one(prec),
            -(&kappa * &theta),
            -(&kappa * &sigma * &sigma / 2),
        ];
        Ok(LevyModel {
            parts: vec![
                ExponentPart::Linear { mu },
                ExponentPart::SqrtQuadratic {
                    scale: kappa.recip(),
                    q,
                },
            ],
            family: Family::Nig {
                kappa,
                sigma,
                theta,
            },
        })
    }

    pub fn custom(label: impl Into<String>, parts: Vec<ExponentPart>) -> Result<Self> {
        LevyModel::new(
            Family::Custom {
                label: label.into(),
            },
            parts,
        )
    }

    pub fn precision(&self) -> Precision {
        self.parts[0].precision()
    }

    pub fn strip(&self) -> Strip {
        let min_opt = |acc: Option<BigReal>, v: Option<BigReal>| match (acc, v) {
            (Some(a), Some(b)) => Some(if b < a { b } else { a }),
            (a, b) => a.or(b),
        };
        let mut strip = Strip {
            rho_hat: None,
            rho: None,
        };
        for p in &self.parts {
            let (neg, pos) = p.singularities();
            strip.rho_hat = min_opt(strip.rho_hat, neg);
            strip.rho = min_opt(strip.rho, pos);
        }
        strip
    }

    /// `psi(z)` in double precision, principal branches.
    pub fn laplace_exponent(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 {
            let strip = self.strip();
            if z.re >= strip.rho_f64() || z.re <= -strip.rho_hat_f64() {
                return Err(Error::OutsideStrip(format!(
                    "z = {} lies on a branch cut of {}",
                    z.re, self.family
                )));
            }
        }
        Ok(self.parts.iter().map(|p| p.eval_complex(z)).sum())
    }

    /// `psi(z)` at a real point of the strip, at full precision.
    pub fn laplace_exponent_real(&self, z: &BigReal) -> Result<BigReal> {
        if !self.strip().contains(z) {
            return Err(Error::OutsideStrip(format!(
                "z = {} is outside the strip of {}",
                z.to_decimal(15),
                self.family
            )));
        }
        let prec = self.precision().max(z.precision());
        Ok(self
            .parts
            .iter()
            .fold(BigReal::zero(prec), |acc, p| acc + p.eval_real(z)))
    }

    /// `c_0..c_{len-1}` of `psi` at zero.
    pub fn taylor_coeffs(&self, len: usize) -> TaylorSeries {
        self.taylor_coeffs_at(len, self.precision())
    }

    pub fn taylor_coeffs_at(&self, len: usize, prec: Precision) -> TaylorSeries {
        let mut c = vec![BigReal::zero(prec); len];
        for p in &self.parts {
            for (acc, v) in c.iter_mut().zip(p.taylor(len, prec)) {
                *acc += v;
            }
        }
        TaylorSeries::at_zero(c, prec)
    }

    /// `psi(a + z) - psi(a)`, a Custom model on the strip `(-rho_hat - a, rho - a)`.
    pub fn esscher_shift(&self, a: &BigReal) -> Result<LevyModel> {
        if !self.strip().contains(a) {
            return Err(Error::OutsideStrip(format!(
                "Esscher parameter {} is outside the strip of {}",
                a.to_decimal(15),
                self.family
            )));
        }
        if a.is_zero() {
            return Ok(self.clone());
        }
        let parts = self.parts.iter().flat_map(|p| p.esscher(a)).collect();
        Ok(LevyModel {
            family: Family::Custom {
                label: format!("Esscher({}, a={})", self.family, a.to_decimal(12)),
            },
            parts: merge_linear(parts),
        })
    }

    /// Sum of the linear coefficients.
    pub fn linear_drift(&self) -> BigReal {
        self.parts
            .iter()
            .fold(BigReal::zero(self.precision()), |acc, p| match p {
                ExponentPart::Linear { mu } => acc + mu,
                _ => acc,
            })
    }

    pub fn gaussian_variance(&self) -> BigReal {
        self.parts
            .iter()
            .fold(BigReal::zero(self.precision()), |acc, p| match p {
                ExponentPart::Gaussian { sigma2 } => acc + sigma2,
                _ => acc,
            })
    }

    /// The model with its linear and Gaussian parts removed.
    pub fn jump_part(&self) -> LevyModel {
        LevyModel {
            family: self.family.clone(),
            parts: self
                .parts
                .iter()
                .filter(|p| {
                    !matches!(
                        p,
                        ExponentPart::Linear { .. } | ExponentPart::Gaussian { .. }
                    )
                })
                .cloned()
                .collect(),
        }
    }

    /// Same model with the linear coefficient replaced by `mu`.
    pub fn with_drift(&self, mu: BigReal) -> LevyModel {
        let mut parts: Vec<ExponentPart> = self
            .parts
            .iter()
            .filter(|p| !matches!(p, ExponentPart::Linear { .. }))
            .cloned()
            .collect();
        parts.insert(0, ExponentPart::Linear { mu });
        LevyModel {
            family: self.family.clone(),
            parts,
        }
    }

    /// The linear coefficient making `psi(1) = r`.
    pub fn martingale_drift(&self, r: &BigReal) -> Result<BigReal> {
        let strip = self.strip();
        if let Some(rho) = &strip.rho {
            if *rho <= 1 {
                return Err(Error::StripTooNarrow {
                    rho: rho.to_decimal(12),
                });
            }
        }
        let prec = self.precision();
        let one = BigReal::one(prec);
        let rest = self.laplace_exponent_real(&one)? - self.linear_drift();
        Ok(r - &rest)
    }

    pub fn calibrated(&self, r: &BigReal) -> Result<LevyModel> {
        Ok(self.with_drift(self.martingale_drift(r)?))
    }

    /// Model of `-X`.
    pub fn reflected(&self) -> LevyModel {
        LevyModel {
            family: Family::Custom {
                label: format!("-{}", self.family),
            },
            parts: self.parts.iter().map(ExponentPart::reflected).collect(),
        }
    }

    pub fn has_negative_jumps(&self) -> bool {
        self.parts.iter().any(|p| match p {
            ExponentPart::Log { pole, .. } | ExponentPart::Power { pole, .. } => pole.is_negative(),
            ExponentPart::SqrtQuadratic { .. } => p.singularities().0.is_some(),
            _ => false,
        })
    }

    pub fn has_positive_jumps(&self) -> bool {
        self.parts.iter().any(|p| match p {
            ExponentPart::Log { pole, .. } | ExponentPart::Power { pole, .. } => pole.is_positive(),
            ExponentPart::SqrtQuadratic { .. } => p.singularities().1.is_some(),
            _ => false,
        })
    }

    /// No negative jumps and no Gaussian part.
    pub fn is_spectrally_positive(&self) -> bool {
        !self.has_negative_jumps() && self.gaussian_variance().is_zero()
    }

    pub fn finite_variation(&self) -> bool {
        self.parts.iter().all(ExponentPart::finite_variation)
    }

    /// Splits into (positive-jump model, reflected negative-jump model); the
    /// linear part goes with neither. Fails for pieces that mix both sides.
    pub fn split_tails(&self) -> Result<(Option<LevyModel>, Option<LevyModel>)> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for p in &self.parts {
            match p {
                ExponentPart::Linear { .. } => {}
                ExponentPart::Log { pole, .. } | ExponentPart::Power { pole, .. } => {
                    if pole.is_positive() {
                        pos.push(p.clone());
                    } else {
                        neg.push(p.reflected());
                    }
                }
                ExponentPart::Gaussian { .. } | ExponentPart::SqrtQuadratic { .. } => {
                    return Err(Error::VariantUnavailable(format!(
                        "{} cannot be split into one-sided jump parts; use the subordination route",
                        self.family
                    )))
                }
            }
        }
        let mk = |parts: Vec<ExponentPart>, label: &str| {
            (!parts.is_empty()).then(|| LevyModel {
                family: Family::Custom {
                    label: format!("{} {label} tail", self.family),
                },
                parts,
            })
        };
        Ok((mk(pos, "positive"), mk(neg, "negative")))
    }

    /// Levy density at `x != 0`; `None` if some piece has no closed form.
    pub fn levy_density(&self, x: &BigReal) -> Option<BigReal> {
        let prec = self.precision().max(x.precision());
        self.parts.iter().try_fold(BigReal::zero(prec), |acc, p| {
            p.levy_density(x).map(|v| acc + v)
        })
    }

    /// Positivity of the Hankel forms of `m_k = c_{k+2}`, `k < 2n`, the
    /// moments of the spectral measure of the jumps (a Hamburger check, and
    /// a Stieltjes check on the shifted sequence when jumps are one-sided).
    pub fn check_moment_positivity(&self, n: usize) -> Result<()> {
        let c = self.jump_part().taylor_coeffs(2 * n + 3).coeffs;
        let m = &c[2..];
        hankel_positive(&m[..2 * n], n)?;
        if !self.has_negative_jumps() {
            hankel_positive(&m[1..2 * n], n)?;
        }
        Ok(())
    }
}

fn merge_linear(parts: Vec<ExponentPart>) -> Vec<ExponentPart> {
    let mut mu: Option<BigReal> = None;
    let mut rest = Vec::new();
    for p in parts {
        match p {
            ExponentPart::Linear { mu: m } => mu = Some(mu.map_or(m.clone(), |x| x + &m)),
            other => rest.push(other),
        }
    }
    if let Some(mu) = mu {
        rest.insert(0, ExponentPart::Linear { mu });
    }
    rest
}

/// Leading pivots of the `dim x dim` Hankel matrix `[m_{i+j}]` without
/// pivoting; all positive iff the matrix is positive definite.
fn hankel_positive(m: &[BigReal], dim: usize) -> Result<()> {
    let dim = dim.min(m.len().div_ceil(2));
    let mut a: Vec<Vec<BigReal>> = (0..dim)
        .map(|i| (0..dim).map(|j| m[i + j].clone()).collect())
        .collect();
    for k in 0..dim {
        if !a[k][k].is_positive() {
            return Err(Error::NotAStieltjesSequence(format!(
                "Hankel pivot {k} = {} is not positive",
                a[k][k].to_decimal(6)
            )));
        }
        for i in k + 1..dim {
            let f = &a[i][k] / &a[k][k];
            for j in k..dim {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    Ok(())
}

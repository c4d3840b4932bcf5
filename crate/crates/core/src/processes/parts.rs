use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};
use crate::pade::series;

/// One additive piece of a Laplace exponent. Every piece vanishes at zero.
#[derive(Debug, Clone, PartialEq)]
pub enum ExponentPart {
    /// `mu z`
    Linear { mu: BigReal },
    /// `sigma2 z^2 / 2`
    Gaussian { sigma2: BigReal },
    /// `-weight ln(1 - z/pole)`; jumps of density `weight e^{-|pole| |x|} / |x|`
    /// on the side of `sign(pole)`.
    Log { weight: BigReal, pole: BigReal },
    /// `scale ((1 - z/pole)^exponent - 1)`, a tempered-stable tail.
    Power {
        scale: BigReal,
        pole: BigReal,
        exponent: BigReal,
    },
    /// `-scale (sqrt(q(z)) - sqrt(q(0)))` with `q(z) = q[0] + q[1] z + q[2] z^2`,
    /// an inverse-Gaussian time change of Brownian motion.
    SqrtQuadratic { scale: BigReal, q: [BigReal; 3] },
}

fn c64(x: &BigReal) -> Complex64 {
    Complex64::new(x.to_f64(), 0.0)
}

impl ExponentPart {
    pub fn precision(&self) -> Precision {
        match self {
            ExponentPart::Linear { mu } => mu.precision(),
            ExponentPart::Gaussian { sigma2 } => sigma2.precision(),
            ExponentPart::Log { weight, .. } => weight.precision(),
            ExponentPart::Power { scale, .. } | ExponentPart::SqrtQuadratic { scale, .. } => {
                scale.precision()
            }
        }
    }

    /// Real branch points `(negative side, positive side)`, if any.
    pub fn singularities(&self) -> (Option<BigReal>, Option<BigReal>) {
        let side = |s: &BigReal| {
            if s.is_positive() {
                (None, Some(s.clone()))
            } else {
                (Some(s.abs()), None)
            }
        };
        match self {
            ExponentPart::Linear { .. } | ExponentPart::Gaussian { .. } => (None, None),
            ExponentPart::Log { pole, .. } | ExponentPart::Power { pole, .. } => side(pole),
            ExponentPart::SqrtQuadratic { q, .. } => {
                let [q0, q1, q2] = q;
                if q2.is_zero() {
                    if q1.is_zero() {
                        return (None, None);
                    }
                    return side(&-(q0 / q1));
                }
                let disc = (q1 * q1 - &(q0 * q2) * 4).sqrt();
                let den = q2 * 2;
                let r1 = (-q1 + &disc) / &den;
                let r2 = (-q1 - &disc) / &den;
                let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                let neg = lo.is_negative().then(|| lo.abs());
                let pos = hi.is_positive().then_some(hi);
                (neg, pos)
            }
        }
    }

    /// Whether the jumps of this piece have finite variation.
    pub fn finite_variation(&self) -> bool {
        match self {
            ExponentPart::Linear { .. } | ExponentPart::Log { .. } => true,
            ExponentPart::Gaussian { .. } => false,
            ExponentPart::Power { exponent, .. } => *exponent < 1,
            ExponentPart::SqrtQuadratic { q, .. } => q[2].is_zero(),
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        match self {
            ExponentPart::Linear { mu } => z * mu.to_f64(),
            ExponentPart::Gaussian { sigma2 } => z * z * (0.5 * sigma2.to_f64()),
            ExponentPart::Log { weight, pole } => {
                -(Complex64::new(1.0, 0.0) - z / c64(pole)).ln() * weight.to_f64()
            }
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => {
                let base = Complex64::new(1.0, 0.0) - z / c64(pole);
                (base.powf(exponent.to_f64()) - 1.0) * scale.to_f64()
            }
            ExponentPart::SqrtQuadratic { scale, q } => {
                let qz = c64(&q[0]) + z * q[1].to_f64() + z * z * q[2].to_f64();
                -(qz.sqrt() - q[0].to_f64().sqrt()) * scale.to_f64()
            }
        }
    }

    /// Value at a real point inside the strip.
    pub fn eval_real(&self, z: &BigReal) -> BigReal {
        let prec = self.precision().max(z.precision());
        let one = BigReal::one(prec);
        match self {
            ExponentPart::Linear { mu } => mu * z,
            ExponentPart::Gaussian { sigma2 } => sigma2 * z * z / 2,
            ExponentPart::Log { weight, pole } => -(weight * &(&one - &(z / pole)).ln()),
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => scale * &((&one - &(z / pole)).pow(exponent) - 1),
            ExponentPart::SqrtQuadratic { scale, q } => {
                let qz = &q[0] + &(&q[1] * z) + &(&q[2] * z * z);
                -(scale * &(qz.sqrt() - q[0].sqrt()))
            }
        }
    }

    /// Taylor coefficients `c_0..c_{len-1}` at zero.
    pub fn taylor(&self, len: usize, prec: Precision) -> Vec<BigReal> {
        let mut c = vec![BigReal::zero(prec); len];
        match self {
            ExponentPart::Linear { mu } => {
                if len > 1 {
                    c[1] = mu.with_precision(prec);
                }
            }
            ExponentPart::Gaussian { sigma2 } => {
                if len > 2 {
                    c[2] = sigma2.with_precision(prec) / 2;
                }
            }
            ExponentPart::Log { weight, pole } => {
                let inv = pole.with_precision(prec).recip();
                let mut pw = BigReal::one(prec);
                for (j, cj) in c.iter_mut().enumerate().skip(1) {
                    pw *= &inv;
                    *cj = weight * &pw / j as i64;
                }
            }
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => {
                let y = exponent.with_precision(prec);
                let step = -(pole.with_precision(prec).recip());
                let mut b = BigReal::one(prec);
                let mut pw = BigReal::one(prec);
                for (j, cj) in c.iter_mut().enumerate().skip(1) {
                    b = b * &(&y - (j as i64 - 1)) / j as i64;
                    pw *= &step;
                    *cj = scale * &b * &pw;
                }
            }
            ExponentPart::SqrtQuadratic { scale, q } => {
                let qs: Vec<BigReal> = q.iter().map(|v| v.with_precision(prec)).collect();
                let s = series::sqrt(&qs, len, prec).expect("q(0) > 0 by construction");
                for (j, cj) in c.iter_mut().enumerate().skip(1) {
                    *cj = -(scale * &s[j]);
                }
            }
        }
        c
    }

    /// `psi(a + z) - psi(a)` for this piece, again as pieces.
    pub fn esscher(&self, a: &BigReal) -> Vec<ExponentPart> {
        let prec = self.precision().max(a.precision());
        match self {
            ExponentPart::Linear { .. } => vec![self.clone()],
            ExponentPart::Gaussian { sigma2 } => vec![
                ExponentPart::Linear { mu: sigma2 * a },
                ExponentPart::Gaussian {
                    sigma2: sigma2.clone(),
                },
            ],
            ExponentPart::Log { weight, pole } => vec![ExponentPart::Log {
                weight: weight.clone(),
                pole: pole - a,
            }],
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => {
                let factor = (BigReal::one(prec) - &(a / pole)).pow(exponent);
                vec![ExponentPart::Power {
                    scale: scale * &factor,
                    pole: pole - a,
                    exponent: exponent.clone(),
                }]
            }
            ExponentPart::SqrtQuadratic { scale, q } => {
                let [q0, q1, q2] = q;
                let nq0 = q0 + &(q1 * a) + &(q2 * a * a);
                let nq1 = q1 + &(q2 * a * 2);
                vec![ExponentPart::SqrtQuadratic {
                    scale: scale.clone(),
                    q: [nq0, nq1, q2.clone()],
                }]
            }
        }
    }

    /// Piece of the exponent of `-X`.
    pub fn reflected(&self) -> ExponentPart {
        match self {
            ExponentPart::Linear { mu } => ExponentPart::Linear { mu: -mu },
            ExponentPart::Gaussian { .. } => self.clone(),
            ExponentPart::Log { weight, pole } => ExponentPart::Log {
                weight: weight.clone(),
                pole: -pole,
            },
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => ExponentPart::Power {
                scale: scale.clone(),
                pole: -pole,
                exponent: exponent.clone(),
            },
            ExponentPart::SqrtQuadratic { scale, q } => ExponentPart::SqrtQuadratic {
                scale: scale.clone(),
                q: [q[0].clone(), -&q[1], q[2].clone()],
            },
        }
    }

    /// Levy density at `x != 0`; `None` when this piece has no closed form.
    pub fn levy_density(&self, x: &BigReal) -> Option<BigReal> {
        let prec = self.precision().max(x.precision());
        let same_side = |pole: &BigReal| pole.signum_i32() == x.signum_i32();
        match self {
            ExponentPart::Linear { .. } | ExponentPart::Gaussian { .. } => {
                Some(BigReal::zero(prec))
            }
            ExponentPart::Log { weight, pole } => Some(if same_side(pole) {
                weight * &(-(pole.abs() * x.abs())).exp() / x.abs()
            } else {
                BigReal::zero(prec)
            }),
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => Some(if same_side(pole) {
                // scale = C Gamma(-Y) |s|^Y for density C e^{-|s||x|} / |x|^{1+Y}
                let c = scale / &((-exponent).gamma() * pole.abs().pow(exponent));
                c * (-(pole.abs() * x.abs())).exp() / x.abs().pow(&(exponent + 1))
            } else {
                BigReal::zero(prec)
            }),
            ExponentPart::SqrtQuadratic { .. } => None,
        }
    }

    /// Checks the parameter ranges that make this piece a Laplace exponent.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        match self {
            ExponentPart::Linear { .. } => Ok(()),
            ExponentPart::Gaussian { sigma2 } if sigma2.is_negative() => {
                bad("Gaussian variance must be >= 0".into())
            }
            ExponentPart::Gaussian { .. } => Ok(()),
            ExponentPart::Log { weight, pole } => {
                if !weight.is_positive() || pole.is_zero() {
                    bad("log piece needs weight > 0 and a nonzero pole".into())
                } else {
                    Ok(())
                }
            }
            ExponentPart::Power {
                scale,
                pole,
                exponent,
            } => {
                let y_ok = exponent.is_positive() && *exponent < 2 && *exponent != 1;
                if !y_ok || pole.is_zero() {
                    return bad(
                        "power piece needs exponent in (0,1) or (1,2) and a nonzero pole".into(),
                    );
                }
                // Gamma(-Y) < 0 for Y in (0,1) and > 0 for Y in (1,2); the
                // density amplitude scale / (Gamma(-Y) |s|^Y) must be positive.
                let gamma_sign = (-exponent).gamma().signum_i32();
                if scale.signum_i32() != gamma_sign {
                    return bad(
                        "power piece scale has the wrong sign for a positive Levy density".into(),
                    );
                }
                Ok(())
            }
            ExponentPart::SqrtQuadratic { scale, q } => {
                if !scale.is_positive() || !q[0].is_positive() || q[2].is_positive() {
                    return bad("sqrt piece needs scale > 0, q(0) > 0 and a nonpositive quadratic coefficient".into());
                }
                Ok(())
            }
        }
    }
}

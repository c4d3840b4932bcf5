//! Fourier inversion for distribution functions and European options.
//!
//! All integrals run in `f64` over a uniform grid `u_j = j du` on `[0, u_max]`.
//! For a compound Poisson process with drift (any hyperexponential process
//! without Gaussian part) the atom `e^(t r0)` at `r1 t` and the single-jump
//! term `e^(t r0) t pi(x - r1 t)` are handled in closed form, so the remaining
//! integrand decays like `u^-3`.

mod pricing;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperexp::{Cutoff, HyperExpProcess};
use crate::numkernel::BigReal;
use crate::processes::LevyModel;

pub use pricing::{price_european_call, price_european_put, Contract};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Trapezoid,
    Simpson,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Trapezoid => "trapezoid",
            Scheme::Simpson => "simpson",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trapezoid" | "trap" => Ok(Scheme::Trapezoid),
            "simpson" => Ok(Scheme::Simpson),
            _ => Err(Error::InvalidArgument(format!(
                "unknown quadrature scheme {s:?}"
            ))),
        }
    }
}

/// Integration grid. `damping = None` picks the default for the task:
/// `0.5` (clamped into the strip) for distribution functions, the midpoint of
/// `(1, rho)` for calls and `max(-rho_hat / 2, -1)` for puts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionGrid {
    pub damping: Option<f64>,
    pub du: f64,
    pub u_max: f64,
    pub scheme: Scheme,
    /// Largest acceptable estimate of the truncated tail, relative to the
    /// natural scale of the result (1 for probabilities, `S0` for prices).
    pub tail_tolerance: f64,
}

impl Default for InversionGrid {
    fn default() -> Self {
        InversionGrid {
            damping: None,
            du: 0.05,
            u_max: 2000.0,
            scheme: Scheme::Simpson,
            tail_tolerance: 1e-6,
        }
    }
}

impl InversionGrid {
    /// Number of integration steps; fails unless `u_max / du` is an integer
    /// (even for Simpson).
    pub fn steps(&self) -> Result<usize> {
        if !(self.du > 0.0 && self.u_max > 0.0) || !self.du.is_finite() || !self.u_max.is_finite() {
            return Err(Error::InvalidArgument(
                "du and u_max must be positive".into(),
            ));
        }
        let m = self.u_max / self.du;
        let steps = m.round();
        if (m - steps).abs() > 1e-9 * m.max(1.0) || steps < 2.0 {
            return Err(Error::InvalidArgument(format!(
                "u_max / du = {m} must be an integer number of steps (at least 2)"
            )));
        }
        let steps = steps as usize;
        if self.scheme == Scheme::Simpson && steps % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "Simpson's rule needs an even number of steps, got {steps}"
            )));
        }
        Ok(steps)
    }

    /// Nodes and weights of the rule.
    fn rule(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let m = self.steps()?;
        let h = self.du;
        let nodes = (0..=m).map(|j| j as f64 * h).collect();
        let weights = (0..=m)
            .map(|j| match self.scheme {
                Scheme::Trapezoid if j == 0 || j == m => h / 2.0,
                Scheme::Trapezoid => h,
                Scheme::Simpson if j == 0 || j == m => h / 3.0,
                Scheme::Simpson if j % 2 == 1 => 4.0 * h / 3.0,
                Scheme::Simpson => 2.0 * h / 3.0,
            })
            .collect();
        Ok((nodes, weights))
    }
}

/// Compensated (Neumaier) summation in a fixed order.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// `psi(z) = r2 z^2 + r1 z + r0 + O(1/z)` as `z -> infinity`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticTriple {
    pub r2: BigReal,
    pub r1: BigReal,
    pub r0: BigReal,
}

pub fn asymptotic_coeffs(hep: &HyperExpProcess) -> AsymptoticTriple {
    let (r2, r1, r0) = hep.asymptotic_coeffs();
    AsymptoticTriple { r2, r1, r0 }
}

/// Compound Poisson structure of a hyperexponential process without Gaussian
/// part: drift `r1` (cutoff `h = 0`), intensity `-r0` and terms
/// `(alpha, beta)` of the Levy density.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundPoisson {
    pub r1: f64,
    pub intensity: f64,
    pub terms: Vec<(f64, f64)>,
}

impl CompoundPoisson {
    /// `psi(z) - r1 z - r0 = sum alpha / (beta - z)` with the sign of `beta`
    /// absorbed, i.e. the transform of the Levy density.
    fn jump_transform(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(a, b)| if b > 0.0 { a / (b - z) } else { a / (z - b) })
            .sum()
    }

    /// `int_{-inf}^y pi(s) ds`.
    fn levy_cdf(&self, y: f64) -> f64 {
        neumaier_sum(self.terms.iter().map(|&(a, b)| {
            if b > 0.0 {
                if y <= 0.0 {
                    0.0
                } else {
                    -a / b * (-b * y).exp_m1()
                }
            } else {
                let c = -b;
                if y < 0.0 {
                    a / c * (c * y).exp()
                } else {
                    a / c
                }
            }
        }))
    }

    /// Whether the atom is large enough to matter in double precision.
    fn usable(&self, t: f64) -> bool {
        t * self.intensity < 600.0
    }
}

/// A Laplace exponent that the inversion routines can evaluate.
pub trait Exponent: Sync {
    fn psi(&self, z: Complex64) -> Result<Complex64>;
    /// Full-precision value at a real point, used for the martingale check.
    fn psi_real(&self, x: &BigReal) -> Result<BigReal>;
    /// Open interval of real parts where `E e^(z X_1)` is finite.
    fn strip(&self) -> (f64, f64);
    /// Interval the default damping is taken from; a subset of `strip`.
    fn damping_strip(&self) -> (f64, f64) {
        self.strip()
    }
    fn compound_poisson(&self) -> Option<&CompoundPoisson> {
        None
    }
}

impl Exponent for LevyModel {
    fn psi(&self, z: Complex64) -> Result<Complex64> {
        self.laplace_exponent(z)
    }

    fn psi_real(&self, x: &BigReal) -> Result<BigReal> {
        self.laplace_exponent_real(x)
    }

    fn strip(&self) -> (f64, f64) {
        let s = LevyModel::strip(self);
        (-s.rho_hat_f64(), s.rho_f64())
    }
}

/// A hyperexponential process prepared for repeated double-precision
/// evaluation.
#[derive(Debug, Clone)]
pub struct HepExponent {
    pub hep: HyperExpProcess,
    half_sigma2: f64,
    cp: CompoundPoisson,
    strip: (f64, f64),
    hint: Option<(f64, f64)>,
}

impl HepExponent {
    pub fn new(hep: &HyperExpProcess) -> Self {
        let h0 = hep.with_cutoff(Cutoff::Zero);
        let terms: Vec<(f64, f64)> = h0
            .terms()
            .map(|t| (t.amplitude.to_f64(), t.rate.to_f64()))
            .collect();
        let intensity = neumaier_sum(terms.iter().map(|&(a, b)| a / b.abs()));
        let hi = terms
            .iter()
            .filter(|t| t.1 > 0.0)
            .map(|t| t.1)
            .fold(f64::INFINITY, f64::min);
        let lo = terms
            .iter()
            .filter(|t| t.1 < 0.0)
            .map(|t| t.1)
            .fold(f64::NEG_INFINITY, f64::max);
        HepExponent {
            hep: hep.clone(),
            half_sigma2: hep.sigma2.to_f64() / 2.0,
            cp: CompoundPoisson {
                r1: h0.drift.to_f64(),
                intensity,
                terms,
            },
            strip: (lo, hi),
            hint: None,
        }
    }

    /// Takes default dampings from `strip` (typically the strip of the model
    /// that was approximated) instead of the much wider strip of `hep`.
    pub fn with_damping_hint(mut self, strip: (f64, f64)) -> Self {
        self.hint = Some((strip.0.max(self.strip.0), strip.1.min(self.strip.1)));
        self
    }

    /// Prepares an approximation of `model`.
    pub fn approximating(hep: &HyperExpProcess, model: &LevyModel) -> Self {
        Self::new(hep).with_damping_hint(Exponent::strip(model))
    }
}

impl Exponent for HepExponent {
    fn psi(&self, z: Complex64) -> Result<Complex64> {
        if self
            .cp
            .terms
            .iter()
            .any(|&(_, b)| (b - z).norm() <= 1e-14 * b.abs())
        {
            return Err(Error::PoleEvaluation { z: format!("{z}") });
        }
        Ok(
            z * z * self.half_sigma2 + z * self.cp.r1 - self.cp.intensity
                + self.cp.jump_transform(z),
        )
    }

    fn psi_real(&self, x: &BigReal) -> Result<BigReal> {
        self.hep.laplace_exponent_real(x)
    }

    fn strip(&self) -> (f64, f64) {
        self.strip
    }

    fn damping_strip(&self) -> (f64, f64) {
        self.hint.unwrap_or(self.strip)
    }

    fn compound_poisson(&self) -> Option<&CompoundPoisson> {
        (self.half_sigma2 == 0.0).then_some(&self.cp)
    }
}

/// `e^w - 1 - w` without cancellation for small `w`.
fn exp_minus_linear(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        let mut term = w * w / 2.0;
        let mut acc = term;
        for k in 3..30 {
            term = term * w / k as f64;
            acc += term;
            if term.norm() < 1e-18 * acc.norm() {
                break;
            }
        }
        acc
    } else {
        w.exp() - 1.0 - w
    }
}

/// Transform of the law of `X_t` with the atom and the single-jump term
/// removed when `cp` is given.
pub(crate) fn regular_transform(
    target: &dyn Exponent,
    cp: Option<&CompoundPoisson>,
    z: Complex64,
    t: f64,
) -> Result<Complex64> {
    match cp {
        Some(cp) => {
            let j = cp.jump_transform(z) * t;
            Ok((z * (t * cp.r1) - t * cp.intensity).exp() * exp_minus_linear(j))
        }
        None => Ok((target.psi(z)? * t).exp()),
    }
}

/// Checks `c` against the strip and the extra constraint `range`.
pub(crate) fn check_damping(
    c: f64,
    strip: (f64, f64),
    range: (f64, f64),
    what: &str,
) -> Result<()> {
    let lo = strip.0.max(range.0);
    let hi = strip.1.min(range.1);
    if !(c > lo && c < hi) {
        return Err(Error::InvalidArgument(format!(
            "damping {c} for {what} must lie in ({lo}, {hi})"
        )));
    }
    Ok(())
}

fn cdf_damping(target: &dyn Exponent, grid: &InversionGrid) -> Result<f64> {
    let strip = target.strip();
    let hint = target.damping_strip();
    let c = grid
        .damping
        .unwrap_or_else(|| if hint.1 > 0.5 { 0.5 } else { hint.1 / 2.0 });
    check_damping(c, strip, (0.0, f64::INFINITY), "the distribution function")?;
    Ok(c)
}

fn tail_estimate(last: f64, u_max: f64, freq: f64) -> f64 {
    let span = if freq.abs() > 0.0 {
        u_max.min(2.0 / freq.abs())
    } else {
        u_max
    };
    last * span
}

/// `P(X_t <= x)` for every `x` in `xs` (all positive), sharing one set of
/// transform values.
pub fn cdf_many(
    target: &dyn Exponent,
    t: f64,
    xs: &[f64],
    grid: &InversionGrid,
) -> Result<Vec<f64>> {
    if let Some(x) = xs.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "the inversion formula needs x > 0, got {x}"
        )));
    }
    cdf_grid(target, t, xs, grid)
}

/// `P(X_t <= 0)`. The inversion formula extends to `x = 0` once the atom and
/// the single-jump term are split off, because what is left is absolutely
/// continuous; an atom exactly at zero counts as `X_t <= 0`.
pub fn cdf_at_zero(target: &dyn Exponent, t: f64, grid: &InversionGrid) -> Result<f64> {
    Ok(cdf_grid(target, t, &[0.0], grid)?[0])
}

fn cdf_grid(target: &dyn Exponent, t: f64, xs: &[f64], grid: &InversionGrid) -> Result<Vec<f64>> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time t = {t} must be positive"
        )));
    }
    let c = cdf_damping(target, grid)?;
    let (nodes, weights) = grid.rule()?;
    let cp = target.compound_poisson().filter(|cp| cp.usable(t));
    let g: Vec<Complex64> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&u, &w)| {
            let z = Complex64::new(c, u);
            regular_transform(target, cp, z, t).map(|phi| phi / z * w)
        })
        .collect::<Result<_>>()?;
    let last = (g[g.len() - 1] / weights[weights.len() - 1]).norm();
    xs.par_iter()
        .map(|&x| {
            let pref = (-c * x).exp() / std::f64::consts::PI;
            let tail = pref * tail_estimate(last, grid.u_max, x);
            if tail > grid.tail_tolerance {
                return Err(Error::GridInsufficient {
                    tail,
                    tolerance: grid.tail_tolerance,
                });
            }
            let s = neumaier_sum(nodes.iter().zip(&g).map(|(&u, gj)| {
                let (sn, cs) = (u * x).sin_cos();
                gj.re * cs + gj.im * sn
            }));
            let upper = pref * s;
            Ok(match cp {
                Some(cp) => {
                    let atom = (-t * cp.intensity).exp();
                    let y = x - cp.r1 * t;
                    let reg_mass = 1.0 - atom - atom * t * cp.intensity;
                    let jumps = atom * t * cp.levy_cdf(y);
                    let at = if y >= 0.0 { atom } else { 0.0 };
                    reg_mass - upper + jumps + at
                }
                None => 1.0 - upper,
            })
        })
        .collect()
}

/// `P(X_t <= x)` for `x > 0`.
pub fn cdf(target: &dyn Exponent, t: f64, x: f64, grid: &InversionGrid) -> Result<f64> {
    Ok(cdf_many(target, t, &[x], grid)?[0])
}

/// Runs a grid integral `int_0^u_max f(u) du` in a fixed summation order.
pub(crate) fn integrate(
    grid: &InversionGrid,
    f: impl Fn(f64) -> Result<f64> + Sync,
) -> Result<(f64, f64)> {
    let (nodes, weights) = grid.rule()?;
    let vals: Vec<f64> = nodes.par_iter().map(|&u| f(u)).collect::<Result<_>>()?;
    let last = vals[vals.len() - 1].abs();
    Ok((
        neumaier_sum(vals.iter().zip(&weights).map(|(v, w)| v * w)),
        last,
    ))
}

#[cfg(test)]
mod tests;

use super::construct::{approx_one_sided, ApproximationReport};
use super::explicit::explicit_one_sided;
use super::{Cutoff, ExpTerm, HyperExpProcess, Provenance};
use crate::error::{Error, Result};
use crate::numkernel::BigReal;
use crate::processes::{Family, LevyModel};

/// `X_+ - X_-` for spectrally positive `pos` and `neg`, plus `extra_drift t`.
pub fn compose_difference(
    pos: &HyperExpProcess,
    neg: &HyperExpProcess,
    extra_drift: &BigReal,
) -> Result<HyperExpProcess> {
    if !pos.negative.is_empty() || !neg.negative.is_empty() {
        return Err(Error::InvalidArgument(
            "compose_difference needs two spectrally positive processes".into(),
        ));
    }
    let cutoff = if pos.cutoff == Cutoff::Zero && neg.cutoff == Cutoff::Zero {
        Cutoff::Zero
    } else {
        Cutoff::Identity
    };
    let (p, q) = (pos.with_cutoff(cutoff), neg.with_cutoff(cutoff));
    let negative = q
        .positive
        .iter()
        .map(|t| ExpTerm::new(t.amplitude.clone(), -&t.rate))
        .collect();
    let hep = HyperExpProcess::new(
        &p.drift - &q.drift + extra_drift,
        &p.sigma2 + &q.sigma2,
        p.positive.clone(),
        negative,
        cutoff,
    )?;
    Ok(hep.with_provenance(Provenance {
        model: format!("{} minus {}", pos.provenance.model, neg.provenance.model),
        variant: "difference".into(),
        n: None,
        k: None,
    }))
}

/// `sigma W(Y_t) + a Y_t` for a hyperexponential subordinator `Y`, with
/// exponent `psi_Y(sigma^2 z^2 / 2 + a z)`.
///
/// Each pole `beta` of `psi_Y` splits into the roots `r_+ > 0 > r_-` of
/// `sigma^2 z^2 / 2 + a z = beta`, both carrying amplitude
/// `2 alpha / (sigma^2 (r_+ - r_-))`.
pub fn subordinate_brownian(
    sub: &HyperExpProcess,
    sigma: &BigReal,
    a: &BigReal,
) -> Result<HyperExpProcess> {
    if !sub.is_subordinator() {
        return Err(Error::InvalidArgument(
            "time change needs a subordinator: no negative jumps, no Gaussian part, nonnegative drift".into(),
        ));
    }
    if !sigma.is_positive() {
        return Err(Error::InvalidArgument(
            "Brownian volatility must be positive".into(),
        ));
    }
    let h0 = sub.with_cutoff(Cutoff::Zero);
    let s2 = sigma * sigma;
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for t in &h0.positive {
        let disc = a * a + &(&s2 * &t.rate * 2);
        if disc.is_negative() {
            return Err(Error::ComplexPoleRoots {
                pole: t.rate.to_decimal(20),
            });
        }
        let root = disc.sqrt();
        let rp = (-a + &root) / &s2;
        let rm = (-a - &root) / &s2;
        let amp = &t.amplitude * 2 / &(&s2 * &(&rp - &rm));
        positive.push(ExpTerm::new(amp.clone(), rp));
        negative.push(ExpTerm::new(amp, rm));
    }
    let hep = HyperExpProcess::new(
        &h0.drift * a,
        &h0.drift * &s2,
        positive,
        negative,
        Cutoff::Zero,
    )?;
    Ok(hep.with_provenance(Provenance {
        model: format!("Brownian motion subordinated to {}", sub.provenance.model),
        variant: "subordinated".into(),
        n: sub.provenance.n,
        k: sub.provenance.k,
    }))
}

/// `lambda psi(c z)`: rates become `beta / c`, amplitudes `lambda alpha / c`,
/// drift `lambda c a`, variance `lambda c^2 sigma2`.
pub fn rescale(hep: &HyperExpProcess, c: &BigReal, lambda: &BigReal) -> Result<HyperExpProcess> {
    if !c.is_positive() || !lambda.is_positive() {
        return Err(Error::InvalidArgument(
            "rescale needs c > 0 and lambda > 0".into(),
        ));
    }
    let map = |ts: &[ExpTerm]| -> Vec<ExpTerm> {
        ts.iter()
            .map(|t| ExpTerm::new(lambda * &t.amplitude / c, &t.rate / c))
            .collect()
    };
    let hep2 = HyperExpProcess::new(
        lambda * &hep.drift * c,
        lambda * &hep.sigma2 * c * c,
        map(&hep.positive),
        map(&hep.negative),
        hep.cutoff,
    )?;
    Ok(hep2.with_provenance(hep.provenance.clone()))
}

/// Order and `k` for one tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailSpec {
    pub n: usize,
    pub k: usize,
}

/// Approximates the positive and negative jump parts separately with
/// `[n+k/n]` one-sided approximants and recombines them with the model's
/// linear drift.
pub fn approx_by_tails(
    model: &LevyModel,
    pos: TailSpec,
    neg: TailSpec,
) -> Result<(HyperExpProcess, Vec<ApproximationReport>)> {
    let (ptail, ntail) = model.split_tails()?;
    let prec = model.precision();
    let empty = HyperExpProcess::new(
        BigReal::zero(prec),
        BigReal::zero(prec),
        vec![],
        vec![],
        Cutoff::Zero,
    )?;
    let mut reports = Vec::new();
    let mut side = |tail: Option<LevyModel>, spec: TailSpec| -> Result<HyperExpProcess> {
        match tail {
            Some(m) => {
                let (h, r) = approx_one_sided(&m, spec.n, spec.k)?;
                reports.push(r);
                Ok(h)
            }
            None => Ok(empty.clone()),
        }
    };
    let hp = side(ptail, pos)?;
    let hn = side(ntail, neg)?;
    let hep = compose_difference(&hp, &hn, &model.linear_drift())?;
    let k_label = if pos == neg {
        format!("one-sided k={} per tail", pos.k)
    } else {
        format!(
            "one-sided (n+,k+)=({},{}) (n-,k-)=({},{})",
            pos.n, pos.k, neg.n, neg.k
        )
    };
    Ok((
        hep.with_provenance(Provenance {
            model: model.family.to_string(),
            variant: k_label,
            n: (pos.n == neg.n).then_some(pos.n),
            k: (pos.k == neg.k).then_some(pos.k),
        }),
        reports,
    ))
}

/// NIG approximation: the inverse Gaussian subordinator is approximated with
/// the explicit tempered-stable `alpha = 1/2` formulas, rescaled by
/// `lambda = 1/(2 sqrt(pi) kappa)` and `c = kappa`, and then used as the time
/// change of `sigma W + theta t`.
pub fn approx_nig_subordinated(model: &LevyModel, n: usize, k: usize) -> Result<HyperExpProcess> {
    let Family::Nig {
        kappa,
        sigma,
        theta,
    } = &model.family
    else {
        return Err(Error::VariantUnavailable(format!(
            "subordination route is implemented for NIG models, not {}",
            model.family
        )));
    };
    if k == 2 {
        return Err(Error::VariantUnavailable(
            "k = 2 adds a Gaussian part to the subordinator, which is then no longer a time change"
                .into(),
        ));
    }
    let ig = LevyModel::nig_subordinator(kappa.clone())?;
    let sub = explicit_one_sided(&ig.parts[0], n, k)?;
    let hep = subordinate_brownian(&sub, sigma, theta)?;
    let hep = hep.with_drift(&hep.drift + &model.linear_drift());
    Ok(hep.with_provenance(Provenance {
        model: model.family.to_string(),
        variant: format!("subordinated k={k}"),
        n: Some(n),
        k: Some(k),
    }))
}

//! Turning flags into models, approximations and grids.

use std::path::PathBuf;

use clap::Args;
use serde_json::{Map, Value};

use levy_pade::hyperexp::{
    approx_by_tails, approx_nig_subordinated, approx_one_sided, approx_two_sided,
    ApproximationReport, HyperExpProcess, TailSpec,
};
use levy_pade::processes::{parse_model_spec, ExponentPart, Family, LevyModel, ModelSpec};
use levy_pade::transforms::{InversionGrid, Scheme};
use levy_pade::{BigReal, Precision};

use crate::commands::CliError;

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// gamma, tempered-stable, vg, cgmy, nig, ig, or custom (with --spec).
    #[arg(long)]
    pub model: Option<String>,
    /// JSON model specification.
    #[arg(long, value_name = "FILE", conflicts_with = "model")]
    pub spec: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub ahat: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

impl ModelArgs {
    pub fn given(&self) -> bool {
        self.model.is_some() || self.spec.is_some()
    }

    pub fn build(&self, prec: Precision) -> Result<LevyModel, CliError> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            return Ok(parse_model_spec(&text, prec)?);
        }
        let family = self
            .model
            .clone()
            .ok_or_else(|| CliError::Usage("give a model with --model or --spec".into()))?;
        let mut params = Map::new();
        for (name, v) in [
            ("a", &self.a),
            ("ahat", &self.ahat),
            ("nu", &self.nu),
            ("theta", &self.theta),
            ("sigma", &self.sigma),
            ("kappa", &self.kappa),
            ("c", &self.c),
            ("g", &self.g),
            ("m", &self.m),
            ("y", &self.y),
            ("alpha", &self.alpha),
            ("mu", &self.mu),
        ] {
            if let Some(v) = v {
                params.insert(name.into(), Value::String(v.clone()));
            }
        }
        let spec = ModelSpec {
            family,
            params,
            precision: None,
            parts: Vec::new(),
            label: None,
        };
        Ok(spec.build(prec)?)
    }
}

#[derive(Debug, Clone, Args)]
pub struct VariantArgs {
    /// Order of the approximation.
    #[arg(long)]
    pub n: Option<usize>,
    /// Exactly matched Taylor coefficients beyond the quadrature, in {0, 1, 2}.
    #[arg(long)]
    pub k: Option<usize>,
    /// Use the two-sided [n+1/n] approximant instead of one-sided ones.
    #[arg(long)]
    pub two_sided: bool,
    /// Order for the positive tail (defaults to --n).
    #[arg(long)]
    pub n_pos: Option<usize>,
    #[arg(long)]
    pub k_pos: Option<usize>,
    /// Order for the negative tail (defaults to --n).
    #[arg(long)]
    pub n_neg: Option<usize>,
    #[arg(long)]
    pub k_neg: Option<usize>,
}

const K_RULE: &str = "k = 0 needs jumps of finite variation; spectrally positive processes with jumps of infinite variation allow k in {1, 2}";

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// The construction a set of variant flags selects for a given model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plan {
    TwoSided(usize),
    OneSided(TailSpec),
    Tails(TailSpec, TailSpec),
    Subordinated(TailSpec),
}

impl VariantArgs {
    pub fn given(&self) -> bool {
        self.n.is_some() || self.n_pos.is_some() || self.n_neg.is_some()
    }

    fn plan(&self, model: &LevyModel) -> Result<Plan, CliError> {
        let tail = |n: Option<usize>, k: Option<usize>, side: &str| -> Result<TailSpec, CliError> {
            let n = n.or(self.n).ok_or_else(|| {
                usage(format!(
                    "missing order for the {side} tail: give --n or --n-{side}"
                ))
            })?;
            let k = k.or(self.k).unwrap_or(1);
            if n == 0 {
                return Err(usage("the order n must be at least 1"));
            }
            if k > 2 {
                return Err(usage(format!("k = {k} is not available; {K_RULE}")));
            }
            Ok(TailSpec { n, k })
        };
        if self.two_sided {
            if self.k.is_some()
                || self.n_pos.is_some()
                || self.n_neg.is_some()
                || self.k_pos.is_some()
                || self.k_neg.is_some()
            {
                return Err(usage("--two-sided takes only --n; k and per-tail orders belong to one-sided approximations"));
            }
            let n = self.n.ok_or_else(|| usage("--two-sided needs --n"))?;
            if n == 0 {
                return Err(usage("the order n must be at least 1"));
            }
            return Ok(Plan::TwoSided(n));
        }
        let check_k = |part: &LevyModel, spec: TailSpec| -> Result<(), CliError> {
            if spec.k == 0 && !part.finite_variation() {
                return Err(usage(format!(
                    "k = 0 is not available for {}: {K_RULE}",
                    part.family
                )));
            }
            Ok(())
        };
        if matches!(model.family, Family::Nig { .. }) {
            let spec = tail(self.n_pos, self.k_pos, "pos")?;
            if spec.k == 2 {
                return Err(usage("k = 2 adds a Gaussian part to the subordinator, which is then no longer a time change; use k in {0, 1}"));
            }
            return Ok(Plan::Subordinated(spec));
        }
        if !model.has_negative_jumps() {
            if self.n_neg.is_some() || self.k_neg.is_some() {
                return Err(usage(format!(
                    "{} has no negative jumps; drop --n-neg/--k-neg",
                    model.family
                )));
            }
            let spec = tail(self.n_pos, self.k_pos, "pos")?;
            check_k(&model.jump_part(), spec)?;
            return Ok(Plan::OneSided(spec));
        }
        let (pos, neg) = model.split_tails()?;
        let ps = tail(self.n_pos, self.k_pos, "pos")?;
        let ns = tail(self.n_neg, self.k_neg, "neg")?;
        if let Some(p) = &pos {
            check_k(p, ps)?;
        }
        if let Some(q) = &neg {
            check_k(q, ns)?;
        }
        Ok(Plan::Tails(ps, ns))
    }

    /// Checks the flags against `model` and runs the construction.
    pub fn approximate(&self, model: &LevyModel) -> Result<Approximation, CliError> {
        let one_sided =
            |label: &str, part: &LevyModel, report: ApproximationReport, s: TailSpec| {
                let c = part.jump_part().taylor_coeffs(2 * s.n + s.k + 1).coeffs;
                RulePart {
                    label: label.into(),
                    moments: c[s.k + 1..].to_vec(),
                    report,
                }
            };
        Ok(match self.plan(model)? {
            Plan::TwoSided(n) => {
                let (hep, report) = approx_two_sided(model, n)?;
                let no_gauss = LevyModel {
                    family: model.family.clone(),
                    parts: model
                        .parts
                        .iter()
                        .filter(|p| !matches!(p, ExponentPart::Gaussian { .. }))
                        .cloned()
                        .collect(),
                };
                let c = no_gauss.taylor_coeffs(2 * n + 2).coeffs;
                let part = RulePart {
                    label: "two-sided".into(),
                    moments: c[2..].to_vec(),
                    report,
                };
                Approximation {
                    hep,
                    parts: vec![part],
                    matched: 2 * n + 1,
                }
            }
            Plan::OneSided(s) => {
                let (hep, report) = approx_one_sided(model, s.n, s.k)?;
                let part = one_sided("one-sided", model, report, s);
                Approximation {
                    hep,
                    parts: vec![part],
                    matched: 2 * s.n + s.k,
                }
            }
            Plan::Tails(p, q) => {
                let (hep, reports) = approx_by_tails(model, p, q)?;
                let (pt, nt) = model.split_tails()?;
                let tails = [(pt, p, "positive tail"), (nt, q, "negative tail")];
                let present = tails
                    .into_iter()
                    .filter_map(|(m, s, l)| m.map(|m| (m, s, l)));
                let parts = present
                    .zip(reports)
                    .map(|((m, s, l), r)| one_sided(l, &m, r, s))
                    .collect();
                let matched = (2 * p.n + p.k).min(2 * q.n + q.k);
                Approximation {
                    hep,
                    parts,
                    matched,
                }
            }
            Plan::Subordinated(s) => Approximation {
                hep: approx_nig_subordinated(model, s.n, s.k)?,
                parts: Vec::new(),
                matched: 2 * s.n + s.k,
            },
        })
    }
}

/// A quadrature rule behind an approximation and the moments it should
/// reproduce.
pub struct RulePart {
    pub label: String,
    pub moments: Vec<BigReal>,
    pub report: ApproximationReport,
}

pub struct Approximation {
    pub hep: HyperExpProcess,
    pub parts: Vec<RulePart>,
    /// Highest cumulant order the construction matches.
    pub matched: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Contour abscissa Re z (default chosen from the analyticity strip).
    #[arg(long, allow_hyphen_values = true)]
    pub damping: Option<f64>,
    #[arg(long)]
    pub du: Option<f64>,
    #[arg(long)]
    pub umax: Option<f64>,
    /// trapezoid or simpson.
    #[arg(long)]
    pub scheme: Option<Scheme>,
    /// Largest acceptable estimate of the truncated tail.
    #[arg(long)]
    pub tail_tol: Option<f64>,
}

impl GridArgs {
    pub fn grid(&self) -> Result<InversionGrid, CliError> {
        let mut g = InversionGrid {
            damping: self.damping,
            ..InversionGrid::default()
        };
        if let Some(du) = self.du {
            g.du = du;
        }
        if let Some(u) = self.umax {
            g.u_max = u;
        }
        if let Some(s) = self.scheme {
            g.scheme = s;
        }
        if let Some(t) = self.tail_tol {
            g.tail_tolerance = t;
        }
        g.steps()?;
        Ok(g)
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use levy_pade::harness::{
    convergence_study, density_comparison, moment_report, table_reproduction, TableId, TableScope,
};
use levy_pade::hyperexp::{HepDocument, HyperExpProcess, Variant};
use levy_pade::processes::LevyModel;
use levy_pade::transforms::{
    cdf_many, price_european_call, price_european_put, Contract, Exponent, HepExponent,
};
use levy_pade::{BigReal, Precision};

use crate::inputs::{Approximation, ModelArgs, VariantArgs};
use crate::output::{num, Format, Report};
use crate::{Check, Command, Common, OptionKind, TargetArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable files.
    Usage(String),
    Lib(levy_pade::Error),
    /// A check ran and did not pass.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) if e.is_validation() => 2,
            CliError::Lib(_) | CliError::Failed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "InvalidArgument: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl From<levy_pade::Error> for CliError {
    fn from(e: levy_pade::Error) -> Self {
        CliError::Lib(e)
    }
}

/// The document written by `approximate --format json`: the process at full
/// working precision, plus the strip of the approximated model so that
/// `--from-hep` picks the same default contour.
#[derive(Debug, Serialize, Deserialize)]
struct ApproxDocument {
    #[serde(flatten)]
    hep: HepDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model_strip: Option<[String; 2]>,
}

fn lossless_digits(prec: Precision) -> usize {
    prec.digits() as usize + 8
}

fn precision(common: &Common) -> Result<Precision, CliError> {
    if common.precision < 16 {
        return Err(CliError::Usage(format!(
            "--precision {} is too small; use at least 16 digits",
            common.precision
        )));
    }
    Ok(Precision::new(common.precision))
}

fn parse_rate(r: &str, prec: Precision) -> Result<(f64, BigReal), CliError> {
    let big = BigReal::parse(r, prec)?;
    let f: f64 = r
        .parse()
        .map_err(|_| CliError::Usage(format!("r = {r:?} is not a decimal number")))?;
    Ok((f, big))
}

fn read_hep(
    path: &std::path::Path,
    prec: Precision,
) -> Result<(HyperExpProcess, Option<(f64, f64)>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: ApproxDocument = serde_json::from_str(&text).map_err(|e| {
        levy_pade::Error::Parse(format!("hyperexponential document {}: {e}", path.display()))
    })?;
    let hep = HyperExpProcess::from_document(&doc.hep, prec)?;
    let strip = match &doc.model_strip {
        Some([lo, hi]) => {
            let p = |s: &str| {
                s.parse::<f64>().map_err(|_| {
                    levy_pade::Error::Parse(format!("model_strip entry {s:?} is not a number"))
                })
            };
            Some((p(lo)?, p(hi)?))
        }
        None => None,
    };
    Ok((hep, strip))
}

/// The process whose exponent a transform is applied to. `r`, when given,
/// is imposed as the martingale condition.
fn target(
    model: &ModelArgs,
    variant: &VariantArgs,
    target: &TargetArgs,
    prec: Precision,
    r: Option<&BigReal>,
) -> Result<Box<dyn Exponent>, CliError> {
    if let Some(path) = &target.from_hep {
        if model.given() || variant.given() {
            return Err(CliError::Usage(
                "--from-hep replaces the model and variant flags".into(),
            ));
        }
        let (hep, strip) = read_hep(path, prec)?;
        let hep = match r {
            Some(r) => hep.martingale_calibrated(r)?,
            None => hep,
        };
        let e = HepExponent::new(&hep);
        return Ok(Box::new(match strip {
            Some(s) => e.with_damping_hint(s),
            None => e,
        }));
    }
    let m = model.build(prec)?;
    if target.exact {
        if variant.given() {
            return Err(CliError::Usage(
                "--exact uses the model itself; drop --n/--k".into(),
            ));
        }
        return Ok(Box::new(match r {
            Some(r) => m.calibrated(r)?,
            None => m,
        }));
    }
    if !variant.given() {
        return Err(CliError::Usage(
            "choose --exact, --from-hep FILE, or an approximation order --n".into(),
        ));
    }
    let approx = variant.approximate(&m)?;
    let hep = match r {
        Some(r) => approx.hep.martingale_calibrated(r)?,
        None => approx.hep,
    };
    Ok(Box::new(HepExponent::approximating(&hep, &m)))
}

pub fn run(command: Command, common: &Common) -> Result<String, CliError> {
    let prec = precision(common)?;
    let digits = common.digits;
    let fmt = common.format;
    match command {
        Command::Approximate { model, variant, r } => {
            if !variant.given() {
                return Err(CliError::Usage("approximate needs an order --n".into()));
            }
            let m = model.build(prec)?;
            let approx = variant.approximate(&m)?;
            let hep = match &r {
                Some(r) => approx.hep.martingale_calibrated(&parse_rate(r, prec)?.1)?,
                None => approx.hep,
            };
            Ok(render_hep(&hep, &m, fmt, digits))
        }
        Command::Density {
            model,
            variant,
            target: t,
            x,
        } => {
            if t.exact {
                return Err(CliError::Usage(
                    "density compares an approximation with --exact implied; drop --exact".into(),
                ));
            }
            if let Some(bad) = x.iter().find(|x| **x == 0.0 || !x.is_finite()) {
                return Err(CliError::Usage(format!(
                    "density needs finite x != 0, got {bad}"
                )));
            }
            let (hep, m) = match &t.from_hep {
                Some(path) => {
                    if variant.given() {
                        return Err(CliError::Usage(
                            "--from-hep replaces the variant flags".into(),
                        ));
                    }
                    let m = if model.given() {
                        Some(model.build(prec)?)
                    } else {
                        None
                    };
                    (read_hep(path, prec)?.0, m)
                }
                None => {
                    let m = model.build(prec)?;
                    (variant.approximate(&m)?.hep, Some(m))
                }
            };
            let mut rep;
            match m.filter(|m| m.levy_density(&BigReal::one(prec)).is_some()) {
                Some(m) => {
                    rep = Report::new(&["x", "x_pi", "x_pi_n", "rel_err"]);
                    for row in density_comparison(&m, &hep, &x)? {
                        rep.row(vec![
                            num(row.x, digits),
                            num(row.exact, digits),
                            num(row.approx, digits),
                            num(row.rel_err, 3),
                        ]);
                    }
                }
                None => {
                    rep = Report::new(&["x", "x_pi_n"]);
                    for &xi in &x {
                        rep.row(vec![
                            num(xi, digits),
                            num(xi * hep.levy_density_f64(xi), digits),
                        ]);
                    }
                }
            }
            Ok(rep.render(fmt))
        }
        Command::Cdf {
            model,
            variant,
            target: t,
            grid,
            t: time,
            x,
        } => {
            if let Some(bad) = x.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
                return Err(CliError::Usage(format!(
                    "the inversion formula needs x > 0, got x = {bad}"
                )));
            }
            if !(time > 0.0 && time.is_finite()) {
                return Err(CliError::Usage(format!("t = {time} must be positive")));
            }
            let grid = grid.grid()?;
            let e = target(&model, &variant, &t, prec, None)?;
            let values = cdf_many(e.as_ref(), time, &x, &grid)?;
            let mut rep = Report::new(&["x", "cdf"]);
            for (xi, v) in x.iter().zip(values) {
                rep.row(vec![num(*xi, digits), num(v, digits)]);
            }
            rep.note("t", num(time, digits));
            Ok(rep.render(fmt))
        }
        Command::Price {
            model,
            variant,
            target: t,
            grid,
            s0,
            strike,
            maturity,
            r,
            option,
        } => {
            let grid = grid.grid()?;
            let (rate, big_r) = parse_rate(&r, prec)?;
            let e = target(&model, &variant, &t, prec, Some(&big_r))?;
            let mut rep = Report::new(&["strike", "price"]);
            for k in strike {
                let contract = Contract {
                    spot: s0,
                    strike: k,
                    maturity,
                    rate,
                };
                let v = match option {
                    OptionKind::Call => price_european_call(e.as_ref(), &contract, &grid)?,
                    OptionKind::Put => price_european_put(e.as_ref(), &contract, &grid)?,
                };
                rep.row(vec![num(k, digits), num(v, digits)]);
            }
            rep.note("option", format!("{option:?}").to_lowercase());
            rep.note("S0", num(s0, digits));
            rep.note("T", num(maturity, digits));
            rep.note("r", r);
            Ok(rep.render(fmt))
        }
        Command::Verify {
            check,
            model,
            variant,
            j_max,
        } => {
            let m = model.build(prec)?;
            if !variant.given() {
                return Err(CliError::Usage("verify needs an order --n".into()));
            }
            let approx = variant.approximate(&m)?;
            verify(check, &m, &approx, j_max, fmt, digits)
        }
        Command::Convergence {
            model,
            two_sided,
            k,
            n_from,
            n_to,
            z,
        } => {
            if n_from == 0 || n_to <= n_from {
                return Err(CliError::Usage("need 1 <= --n-from < --n-to".into()));
            }
            let m = model.build(prec)?;
            let v = if two_sided {
                Variant::TwoSided
            } else {
                Variant::OneSided { k }
            };
            let ns: Vec<usize> = (n_from..=n_to).collect();
            let study = convergence_study(&m, v, &ns, &z)?;
            let mut rep = Report::new(&["n", "max_error", "envelope", "ratio"]);
            let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| num(v, digits));
            for rec in &study.records {
                rep.row(vec![
                    rec.n.to_string(),
                    num(rec.max_error, digits),
                    opt(rec.envelope),
                    opt(rec.ratio),
                ]);
            }
            rep.note("variant", v.to_string());
            rep.note("fitted_rate", num(study.fitted_rate, digits));
            rep.note("envelope_factor", opt(study.envelope_factor));
            rep.note(
                "worst_ratio_over_factor",
                opt(study.worst_ratio_over_factor),
            );
            Ok(rep.render(fmt))
        }
        Command::ReproduceTable { table, full } => {
            let scope = if full {
                TableScope::Full
            } else {
                TableScope::Acceptance
            };
            render_table(table, scope, prec, fmt, digits)
        }
    }
}

fn side_rows(rep: &mut Report, side: &str, terms: &[levy_pade::hyperexp::ExpTerm], digits: usize) {
    for t in terms {
        rep.row(vec![
            side.into(),
            t.amplitude.to_decimal(digits),
            t.rate.to_decimal(digits),
        ]);
    }
}

fn render_hep(hep: &HyperExpProcess, model: &LevyModel, fmt: Format, digits: usize) -> String {
    match fmt {
        Format::Json => {
            let (lo, hi) = Exponent::strip(model);
            let doc = ApproxDocument {
                hep: hep.to_document(lossless_digits(hep.precision())),
                model_strip: Some([lo.to_string(), hi.to_string()]),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut rep = Report::new(&["side", "amplitude", "rate"]);
            side_rows(&mut rep, "+", &hep.positive, digits);
            side_rows(&mut rep, "-", &hep.negative, digits);
            if fmt == Format::Table {
                rep.note("model", hep.provenance.model.clone());
                rep.note("variant", hep.provenance.variant.clone());
                rep.note("drift", hep.drift.to_decimal(digits));
                rep.note("sigma2", hep.sigma2.to_decimal(digits));
                rep.note("cutoff", hep.cutoff.tag());
            }
            rep.render(fmt)
        }
    }
}

fn verify(
    check: Check,
    model: &LevyModel,
    approx: &Approximation,
    j_max: Option<usize>,
    fmt: Format,
    digits: usize,
) -> Result<String, CliError> {
    let mut rep = Report::new(&["check", "item", "model", "approx", "rel_err", "status"]);
    let mut ok = true;
    let tol = BigReal::ten_pow(-30, model.precision());
    if matches!(check, Check::Moments | Check::All) {
        let j_max = j_max.unwrap_or(approx.matched + 2);
        let mr = moment_report(model, &approx.hep, j_max, approx.matched);
        ok &= mr.consistent;
        for row in &mr.rows {
            let status = match (row.expected, row.matched) {
                (true, true) => "matched",
                (true, false) => "FAIL",
                (false, true) => "agrees",
                (false, false) => "differs",
            };
            rep.row(vec![
                "cumulant".into(),
                row.order.to_string(),
                row.model.to_decimal(digits),
                row.approx.to_decimal(digits),
                row.rel_err.to_decimal(3),
                status.into(),
            ]);
        }
    }
    if matches!(check, Check::Quadrature | Check::All) {
        for part in &approx.parts {
            let rule = &part.report.rule;
            let positive = rule.weights.iter().all(BigReal::is_positive);
            ok &= positive;
            for (i, (x, w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
                rep.row(vec![
                    format!("{} node", part.label),
                    i.to_string(),
                    x.to_decimal(digits),
                    w.to_decimal(digits),
                    "-".into(),
                    if w.is_positive() { "positive" } else { "FAIL" }.into(),
                ]);
            }
            for (j, target) in part.moments.iter().enumerate() {
                let got = rule.moment(j);
                let err = (&got - target).abs() / target.abs();
                let pass = err <= tol;
                ok &= pass;
                rep.row(vec![
                    format!("{} moment", part.label),
                    j.to_string(),
                    target.to_decimal(digits),
                    got.to_decimal(digits),
                    err.to_decimal(3),
                    if pass { "exact" } else { "FAIL" }.into(),
                ]);
            }
        }
        if approx.parts.is_empty() {
            rep.note(
                "quadrature",
                "this construction uses closed-form rules only",
            );
        }
    }
    rep.note("verdict", if ok { "PASS" } else { "FAIL" });
    let text = rep.render(fmt);
    if ok {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Failed(
            "InvarianceViolation: verification failed".into(),
        ))
    }
}

fn render_table(
    id: TableId,
    scope: TableScope,
    prec: Precision,
    fmt: Format,
    digits: usize,
) -> Result<String, CliError> {
    let report = table_reproduction(id, scope, prec);
    let text = match fmt {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("plain data serializes");
            s.push('\n');
            s
        }
        _ => {
            let mut rep = Report::new(&[
                "cell",
                "reference",
                "measured",
                "delta",
                "rule",
                "gated",
                "status",
            ]);
            for c in &report.cells {
                rep.row(vec![
                    c.label.clone(),
                    num(c.reference, digits),
                    num(c.measured, digits),
                    num(c.delta, 3),
                    c.rule.clone(),
                    c.gated.to_string(),
                    match (c.pass, &c.note) {
                        (true, _) => "PASS".into(),
                        (false, Some(n)) => format!("FAIL ({n})"),
                        (false, None) => "FAIL".into(),
                    },
                ]);
            }
            if fmt == Format::Table {
                rep.note("table", format!("{} {}", report.id, report.title));
                rep.note("verdict", if report.passed { "PASS" } else { "FAIL" });
            }
            rep.render(fmt)
        }
    };
    if report.passed {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Failed(format!(
            "{} reproduction failed",
            report.id
        )))
    }
}

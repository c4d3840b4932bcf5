//! JSON model specifications.
//!
//! ```json
//! {"family": "vg", "params": {"a": "21.8735", "ahat": "56.4414", "nu": 0.2}, "precision": 200}
//! ```
//!
//! Parameters may be JSON numbers or decimal strings; both are parsed at the
//! working precision. A `custom` family takes a `parts` list instead.

use serde::Deserialize;
use serde_json::{Map, Value};

use super::{ExponentPart, LevyModel};
use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};

#[derive(Debug, Clone, Deserialize)]
pub struct ModelSpec {
    pub family: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub parts: Vec<Map<String, Value>>,
    #[serde(default)]
    pub label: Option<String>,
}

/// Parses a JSON document into a model; `default_prec` applies when the
/// document has no `precision` field.
pub fn parse_model_spec(text: &str, default_prec: Precision) -> Result<LevyModel> {
    let spec: ModelSpec =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("model spec: {e}")))?;
    spec.build(default_prec)
}

fn number(v: &Value, name: &str, prec: Precision) -> Result<BigReal> {
    match v {
        Value::Number(n) => BigReal::parse(&n.to_string(), prec),
        Value::String(s) => BigReal::parse(s, prec),
        _ => Err(Error::Parse(format!(
            "parameter {name} must be a number or a decimal string"
        ))),
    }
}

struct Params<'a> {
    map: &'a Map<String, Value>,
    prec: Precision,
}

impl Params<'_> {
    fn get(&self, name: &str) -> Result<BigReal> {
        let v = self
            .map
            .get(name)
            .ok_or_else(|| Error::Parse(format!("missing parameter {name}")))?;
        number(v, name, self.prec)
    }

    fn get_or(&self, name: &str, default: BigReal) -> Result<BigReal> {
        match self.map.get(name) {
            Some(v) => number(v, name, self.prec),
            None => Ok(default),
        }
    }

    fn has(&self, name: &str) -> bool {
        self.map.contains_key(name)
    }
}

impl ModelSpec {
    pub fn build(&self, default_prec: Precision) -> Result<LevyModel> {
        let prec = match self.precision {
            Some(0) => return Err(Error::Parse("precision must be positive".into())),
            Some(d) => Precision::new(d),
            None => default_prec,
        };
        let p = Params {
            map: &self.params,
            prec,
        };
        let zero = BigReal::zero(prec);
        match self.family.to_ascii_lowercase().as_str() {
            "gamma" => Ok(LevyModel::gamma(prec)),
            "tempered-stable" | "tempered_stable" | "ts" => {
                LevyModel::tempered_stable(p.get("alpha")?)
            }
            "vg" => {
                let mu = p.get_or("mu", zero)?;
                if p.has("a") || p.has("ahat") {
                    LevyModel::vg_direct(p.get("a")?, p.get("ahat")?, p.get("nu")?, mu)
                } else {
                    LevyModel::vg(p.get("theta")?, p.get("sigma")?, p.get("nu")?, mu)
                }
            }
            "cgmy" => LevyModel::cgmy(
                p.get("c")?,
                p.get("g")?,
                p.get("m")?,
                p.get("y")?,
                p.get_or("mu", zero)?,
            ),
            "nig-subordinator" | "ig" => LevyModel::nig_subordinator(p.get("kappa")?),
            "nig" => LevyModel::nig(
                p.get("kappa")?,
                p.get("sigma")?,
                p.get("theta")?,
                p.get_or("mu", zero)?,
            ),
            "custom" => {
                let parts = self
                    .parts
                    .iter()
                    .map(|m| parse_part(m, prec))
                    .collect::<Result<Vec<_>>>()?;
                LevyModel::custom(self.label.clone().unwrap_or_else(|| "custom".into()), parts)
            }
            other => Err(Error::Parse(format!("unknown model family {other:?}"))),
        }
    }
}

fn parse_part(m: &Map<String, Value>, prec: Precision) -> Result<ExponentPart> {
    let kind = m
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("each custom part needs a string \"kind\"".into()))?;
    let p = Params { map: m, prec };
    Ok(match kind {
        "linear" => ExponentPart::Linear { mu: p.get("mu")? },
        "gaussian" => ExponentPart::Gaussian {
            sigma2: p.get("sigma2")?,
        },
        "log" => ExponentPart::Log {
            weight: p.get("weight")?,
            pole: p.get("pole")?,
        },
        "power" => ExponentPart::Power {
            scale: p.get("scale")?,
            pole: p.get("pole")?,
            exponent: p.get("exponent")?,
        },
        "sqrt-quadratic" => ExponentPart::SqrtQuadratic {
            scale: p.get("scale")?,
            q: [p.get("q0")?, p.get("q1")?, p.get("q2")?],
        },
        other => return Err(Error::Parse(format!("unknown part kind {other:?}"))),
    })
}

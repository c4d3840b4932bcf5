//! JSON form of a [`HyperExpProcess`]; numbers are decimal strings.

use serde::{Deserialize, Serialize};

use super::{Cutoff, ExpTerm, HyperExpProcess, Provenance};
use crate::error::{Error, Result};
use crate::numkernel::{BigReal, Precision};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    pub amplitude: String,
    pub rate: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HepDocument {
    pub drift: String,
    pub sigma2: String,
    /// `"h=0"` or `"h=x"`.
    pub cutoff: String,
    pub positive: Vec<TermDocument>,
    pub negative: Vec<TermDocument>,
    #[serde(default)]
    pub model: String,
    #[serde(default)]
    pub variant: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
}

impl HyperExpProcess {
    pub fn to_document(&self, digits: usize) -> HepDocument {
        let terms = |ts: &[ExpTerm]| {
            ts.iter()
                .map(|t| TermDocument {
                    amplitude: t.amplitude.to_decimal(digits),
                    rate: t.rate.to_decimal(digits),
                })
                .collect()
        };
        HepDocument {
            drift: self.drift.to_decimal(digits),
            sigma2: self.sigma2.to_decimal(digits),
            cutoff: self.cutoff.tag().into(),
            positive: terms(&self.positive),
            negative: terms(&self.negative),
            model: self.provenance.model.clone(),
            variant: self.provenance.variant.clone(),
            n: self.provenance.n,
            k: self.provenance.k,
        }
    }

    pub fn to_json(&self, digits: usize) -> String {
        serde_json::to_string_pretty(&self.to_document(digits)).expect("plain data serializes")
    }

    pub fn from_document(doc: &HepDocument, prec: Precision) -> Result<Self> {
        let num = |s: &str| BigReal::parse(s, prec);
        let terms = |ts: &[TermDocument]| -> Result<Vec<ExpTerm>> {
            ts.iter()
                .map(|t| Ok(ExpTerm::new(num(&t.amplitude)?, num(&t.rate)?)))
                .collect()
        };
        let cutoff = match doc.cutoff.as_str() {
            "h=0" => Cutoff::Zero,
            "h=x" => Cutoff::Identity,
            other => {
                return Err(Error::Parse(format!(
                    "cutoff must be \"h=0\" or \"h=x\", got {other:?}"
                )))
            }
        };
        let hep = HyperExpProcess::new(
            num(&doc.drift)?,
            num(&doc.sigma2)?,
            terms(&doc.positive)?,
            terms(&doc.negative)?,
            cutoff,
        )?;
        Ok(hep.with_provenance(Provenance {
            model: doc.model.clone(),
            variant: doc.variant.clone(),
            n: doc.n,
            k: doc.k,
        }))
    }

    pub fn from_json(text: &str, prec: Precision) -> Result<Self> {
        let doc: HepDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("hyperexponential document: {e}")))?;
        Self::from_document(&doc, prec)
    }
}

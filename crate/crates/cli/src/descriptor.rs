//! The JSON document describing one constructed code.

use lrc_forge::lrc::{DefiningSetWitness, Measurements};
use lrc_forge::repair::repair_groups;
use lrc_forge::{ConstructionKind, CyclicCode, FiniteField, LrcParams, LrcReport, Polynomial};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub ell: Vec<i64>,
    pub step: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefiningSetVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Locality {
    pub defining_set: DefiningSetVerdict,
    pub direct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub delta: usize,
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_d: Option<usize>,
    pub generator: Value,
    pub k: usize,
    /// `null` when the distance exceeds the bound by more than one.
    pub d_exact: Option<usize>,
    pub d_bch_lower: usize,
    pub singleton_bound: i64,
    pub optimal: bool,
    pub locality: Locality,
    pub repair_groups: Vec<Vec<usize>>,
}

impl From<&DefiningSetWitness> for Witness {
    fn from(w: &DefiningSetWitness) -> Self {
        Witness {
            ell: w.ell.clone(),
            step: w.step,
        }
    }
}

impl CodeDescriptor {
    pub fn params(&self) -> LrcParams {
        LrcParams::new(self.q, self.n, self.r, self.delta)
    }

    pub fn kind(&self) -> Result<ConstructionKind, CliError> {
        Ok(ConstructionKind::from_tag(
            &self.construction,
            self.target_d,
        )?)
    }

    /// Assembles a descriptor from a generator and its measurements.
    pub fn from_measurements(
        params: &LrcParams,
        kind: ConstructionKind,
        generator: &Polynomial,
        m: &Measurements,
    ) -> Result<Self, CliError> {
        let groups = repair_groups(params.n, params.r, params.delta)?;
        Ok(CodeDescriptor {
            q: params.q,
            n: params.n,
            r: params.r,
            delta: params.delta,
            construction: kind.tag().to_string(),
            target_d: match kind {
                ConstructionKind::Remark3 { d } => Some(d),
                _ => None,
            },
            generator: generator.to_json(),
            k: m.k,
            d_exact: m.d_exact,
            d_bch_lower: m.bch_lower,
            singleton_bound: m.singleton_bound,
            optimal: m.optimal,
            locality: Locality {
                defining_set: DefiningSetVerdict {
                    holds: m.defining_set.is_some(),
                    witness: m.defining_set.as_ref().map(Witness::from),
                },
                direct: m.direct.holds,
            },
            repair_groups: groups.into_iter().map(|g| g.positions).collect(),
        })
    }

    pub fn from_report(report: &LrcReport) -> Result<Self, CliError> {
        let m = Measurements {
            k: report.k,
            distance: report.distance.clone(),
            d_exact: report.d_exact,
            bch_lower: report.bch_lower,
            singleton_bound: report.singleton_bound,
            defining_set: report.defining_set.clone(),
            direct: report.direct.clone(),
            optimal: report.optimal,
        };
        Self::from_measurements(
            report.params(),
            report.kind(),
            report.lrc.code().generator(),
            &m,
        )
    }

    /// Parses the recorded generator and rebuilds the cyclic code from it.
    pub fn code(&self) -> Result<CyclicCode, CliError> {
        let field = FiniteField::with_size(self.q)?;
        let g = Polynomial::from_json(&field, &self.generator)?;
        Ok(CyclicCode::from_generator(&field, self.n, &g)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::BadInput(format!("malformed descriptor: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }
}

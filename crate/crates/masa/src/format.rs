use std::str::FromStr;

use numeric_core::{parse_rational, CRat, Scalar};
use serde::{Deserialize, Serialize};

use crate::spec::{masa_from_coeffs, MasaSpec, SignedPermutation};
use crate::MasaError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCoeff {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

/// On-disk MASA description; one coefficient row per `Z_μ` over the
/// symmetric generators in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasaFile {
    pub n: usize,
    pub basis: String,
    pub generators: Vec<Vec<RawCoeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl FromStr for MasaFile {
    type Err = MasaError;
    fn from_str(s: &str) -> Result<Self, MasaError> {
        serde_json::from_str(s).map_err(|e| MasaError::Format(e.to_string()))
    }
}

impl MasaFile {
    pub fn into_spec(self) -> Result<MasaSpec, MasaError> {
        let expected = match self.basis.as_str() {
            "u2" => 2,
            "u3" => 3,
            other => return Err(MasaError::Format(format!("unknown basis {other:?}"))),
        };
        if self.n != expected {
            return Err(MasaError::Format(format!("n = {} does not match basis {}", self.n, self.basis)));
        }
        let rows = self
            .generators
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        let re = parse_rational(&c.re).map_err(|e| MasaError::Format(e.to_string()))?;
                        let im = parse_rational(&c.im).map_err(|e| MasaError::Format(e.to_string()))?;
                        Ok(Scalar::from_crat(CRat::new(re, im)))
                    })
                    .collect::<Result<Vec<_>, MasaError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut spec = masa_from_coeffs(self.n, rows)?;
        if let Some(name) = self.name {
            spec = spec.with_name(name);
        }
        match self.parity {
            Some(p) => spec.with_parity(SignedPermutation::from_signed_indices(&p)?),
            None => Ok(spec),
        }
    }
}

pub fn parse_masa_json(s: &str) -> Result<MasaSpec, MasaError> {
    s.parse::<MasaFile>()?.into_spec()
}

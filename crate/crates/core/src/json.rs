//! Wire formats. Rationals are always strings `"num/den"`; polynomial terms
//! are listed in descending graded-lex order, tensor entries in
//! lexicographic index order (0-based).

use serde::{Deserialize, Serialize};

use crate::curvature::CovDerivTensor;
use crate::error::{Error, Result};
use crate::exactpoly::rational::{parse_rational, serde_frac, to_frac_string, Rational};
use crate::exactpoly::{MultiPoly, Signature};
use crate::polydep::PolyMapFamily;
use crate::pseudolin::QMatrix;
use crate::szaboclass::HomPolyMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    #[serde(with = "serde_frac")]
    pub coef: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        PolyJson {
            vars: p.nvars(),
            terms: p
                .terms()
                .rev()
                .map(|(e, c)| TermJson {
                    exp: e.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        MultiPoly::from_terms(j.vars, j.terms.into_iter().map(|t| (t.exp, t.coef)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub idx: [usize; 5],
    #[serde(with = "serde_frac")]
    pub coef: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub signature: Signature,
    pub entries: Vec<EntryJson>,
}

impl From<&CovDerivTensor> for TensorJson {
    fn from(t: &CovDerivTensor) -> Self {
        TensorJson {
            signature: t.signature(),
            entries: t
                .nonzero_entries()
                .into_iter()
                .map(|(idx, coef)| EntryJson { idx, coef })
                .collect(),
        }
    }
}

impl TryFrom<TensorJson> for CovDerivTensor {
    type Error = Error;

    /// Repeated indices are summed.
    fn try_from(j: TensorJson) -> Result<Self> {
        let mut t = CovDerivTensor::zero(j.signature);
        for e in j.entries {
            if e.idx.iter().any(|&i| i >= t.m()) {
                return Err(Error::Parse(format!(
                    "index {:?} out of range for m = {}",
                    e.idx,
                    t.m()
                )));
            }
            let v = t.get(e.idx) + &e.coef;
            t.set(e.idx, v)?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMapJson {
    pub signature: Signature,
    pub degree: u32,
    pub entries: Vec<Vec<PolyJson>>,
}

impl From<&HomPolyMap> for PolyMapJson {
    fn from(s: &HomPolyMap) -> Self {
        PolyMapJson {
            signature: s.signature(),
            degree: s.degree(),
            entries: s
                .entries()
                .iter()
                .map(|r| r.iter().map(PolyJson::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<PolyMapJson> for HomPolyMap {
    type Error = Error;

    fn try_from(j: PolyMapJson) -> Result<Self> {
        let entries = j
            .entries
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(MultiPoly::try_from)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        HomPolyMap::new(j.signature, j.degree, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub signature: Signature,
    pub w: usize,
    pub maps: Vec<Vec<PolyJson>>,
}

impl From<&PolyMapFamily> for FamilyJson {
    fn from(f: &PolyMapFamily) -> Self {
        FamilyJson {
            signature: f.signature(),
            w: f.w(),
            maps: f
                .maps()
                .iter()
                .map(|x| x.iter().map(PolyJson::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<FamilyJson> for PolyMapFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        let maps = j
            .maps
            .into_iter()
            .map(|x| {
                x.into_iter()
                    .map(MultiPoly::try_from)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMapFamily::new(j.signature, j.w, maps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub signature: Signature,
    pub entries: Vec<Vec<String>>,
}

impl OperatorJson {
    pub fn new(sig: Signature, a: &QMatrix) -> Self {
        OperatorJson {
            signature: sig,
            entries: a.to_rows().iter().map(|r| frac_row(r)).collect(),
        }
    }

    pub fn matrix(&self) -> Result<QMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let a = QMatrix::from_rows(rows)?;
        if a.nrows() != self.signature.m() || a.ncols() != self.signature.m() {
            return Err(Error::DimensionMismatch {
                expected: self.signature.m(),
                got: a.nrows(),
            });
        }
        Ok(a)
    }
}

pub fn frac_row(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_frac_string).collect()
}

pub fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(parse_rational)
        .collect()
}

pub fn poly_to_string(p: &MultiPoly) -> String {
    serde_json::to_string(&PolyJson::from(p)).expect("serializable")
}

pub fn poly_from_str(s: &str) -> Result<MultiPoly> {
    MultiPoly::try_from(serde_json::from_str::<PolyJson>(s)?)
}

pub fn tensor_to_string(t: &CovDerivTensor) -> String {
    serde_json::to_string(&TensorJson::from(t)).expect("serializable")
}

pub fn tensor_from_str(s: &str) -> Result<CovDerivTensor> {
    CovDerivTensor::try_from(serde_json::from_str::<TensorJson>(s)?)
}

pub fn polymap_to_string(s: &HomPolyMap) -> String {
    serde_json::to_string(&PolyMapJson::from(s)).expect("serializable")
}

pub fn polymap_from_str(s: &str) -> Result<HomPolyMap> {
    HomPolyMap::try_from(serde_json::from_str::<PolyMapJson>(s)?)
}

pub fn family_to_string(f: &PolyMapFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("serializable")
}

pub fn family_from_str(s: &str) -> Result<PolyMapFamily> {
    PolyMapFamily::try_from(serde_json::from_str::<FamilyJson>(s)?)
}

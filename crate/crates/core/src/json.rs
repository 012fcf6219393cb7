//! Wire formats. Coefficients travel as exact `"num/den"` strings, Laurent
//! polynomials as `{exponent: coefficient}` maps, multivariate polynomials as
//! lists of `{exps, coeff}` terms whose variable list is stored alongside.
//!
//! Deserialized coefficients are plain rationals; containers that know their
//! base ring call the `normalized` methods afterwards, which both checks
//! membership and reduces residues.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::base::{BaseElem, LocalBase};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::mvpoly::MvPoly;

/// Version tag written into every top-level document.
pub const SCHEMA_VERSION: &str = "v1";

pub mod elem {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BaseElem, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BaseElem, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn laurent_to_map(p: &LaurentPoly) -> BTreeMap<String, String> {
    p.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect()
}

fn laurent_from_map(m: BTreeMap<String, String>) -> Result<LaurentPoly> {
    let mut terms = Vec::with_capacity(m.len());
    for (e, c) in m {
        let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
        terms.push((e, c.parse::<BaseElem>()?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub mod laurent {
    use super::*;

    pub fn serialize<S: Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Sorted numerically rather than as strings, for readable output.
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(p.num_terms()))?;
        for (e, c) in p.terms() {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<LaurentPoly, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        laurent_from_map(m).map_err(serde::de::Error::custom)
    }
}

pub mod laurent_vec {
    use super::*;

    #[derive(Serialize)]
    struct Wrap<'a>(#[serde(with = "super::laurent")] &'a LaurentPoly);

    pub fn serialize<S: Serializer>(v: &[LaurentPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Wrap))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<LaurentPoly>, D::Error> {
        let raw = Vec::<BTreeMap<String, String>>::deserialize(d)?;
        raw.into_iter()
            .map(|m| laurent_from_map(m).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Matrix of Laurent polynomials as a list of rows.
pub mod laurent_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<LaurentPoly>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<BTreeMap<String, String>>> =
            m.iter().map(|r| r.iter().map(laurent_to_map).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<LaurentPoly>>, D::Error> {
        let raw = Vec::<Vec<BTreeMap<String, String>>>::deserialize(d)?;
        raw.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|m| laurent_from_map(m).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// One term of a multivariate polynomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

pub fn mvpoly_to_json(p: &MvPoly) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            exps: e.clone(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn mvpoly_from_json(vars: &Arc<Vec<String>>, terms: &[TermJson]) -> Result<MvPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.exps.len() != vars.len() {
            return Err(Error::Parse(format!(
                "exponent vector of length {} over {} variables",
                t.exps.len(),
                vars.len()
            )));
        }
        out.push((t.exps.clone(), t.coeff.parse::<BaseElem>()?));
    }
    Ok(MvPoly::from_terms(vars.clone(), out))
}

/// Normalizes a list of Laurent polynomials against `base`.
pub fn normalize_all(v: &[LaurentPoly], base: &LocalBase) -> Result<Vec<LaurentPoly>> {
    v.iter().map(|p| p.normalized(base)).collect()
}

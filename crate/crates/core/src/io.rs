//! JSON persistence for ideals and family instances.
//!
//! An ideal file is `{version, char, vars, gens, meta}` where each generator
//! is a list of `[coeff, [exponents]]` terms in decreasing monomial order and
//! coefficients are the symmetric representatives in `(-p/2, p/2]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::families::{FamilyInstance, TranscriptEntry};
use crate::ideal::Ideal;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub transcript: Vec<TranscriptEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub version: String,
    pub char: u32,
    pub vars: Vec<String>,
    pub gens: Vec<Vec<(i64, Vec<u32>)>>,
    #[serde(default)]
    pub meta: IdealMeta,
}

impl IdealFile {
    pub fn from_ideal(ideal: &Ideal, meta: IdealMeta) -> Self {
        let ring = ideal.ring();
        let f = ring.field();
        let n = ring.nvars();
        let gens = ideal
            .gens()
            .iter()
            .map(|g| g.terms().iter().map(|(m, c)| (f.to_signed(*c), m.exponent_vec(n))).collect())
            .collect();
        IdealFile {
            version: FORMAT_VERSION.into(),
            char: ring.characteristic(),
            vars: ring.names().to_vec(),
            gens,
            meta,
        }
    }

    pub fn from_instance(inst: &FamilyInstance) -> Self {
        let meta = IdealMeta { family: Some(inst.id), seed: Some(inst.seed), transcript: inst.transcript.clone() };
        IdealFile::from_ideal(&inst.ideal, meta)
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        PolyRing::new(&self.vars, self.char, MonomialOrder::Grevlex)
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Invalid(format!("unsupported ideal file version {}", self.version)));
        }
        let ring = self.ring()?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let p = Polynomial::from_exponents(&ring, g)?;
                if p.is_zero() {
                    return Err(Error::Invalid("zero generator".into()));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Pretty JSON with one generator per line.
    pub fn to_json(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| format!("    {}", compact(g))).collect();
        let meta = serde_json::to_string_pretty(&self.meta).expect("metadata serializes").replace('\n', "\n  ");
        format!(
            "{{\n  \"version\": {},\n  \"char\": {},\n  \"vars\": {},\n  \"gens\": [\n{}\n  ],\n  \"meta\": {}\n}}",
            compact(&self.version),
            self.char,
            compact(&self.vars),
            gens.join(",\n"),
            meta
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("ideal file: {e}")))
    }
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("value serializes")
}

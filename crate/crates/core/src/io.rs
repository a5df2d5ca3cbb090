//! JSON wire formats. Words are lists of `[letter, zpower]`, letters signed
//! integers with `φ` written `"phi"`; coefficients use the RatQ exponent map.

use crate::coeff::RatQ;
use crate::crystal::{Elem, Letter, PHI};
use crate::error::{Error, Result};
use crate::fock::FockVec;
use crate::lincomb::LinComb;
use crate::wedge::{WedgeVec, Word};
use crate::young::Diagram;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WireLetter {
    Int(Letter),
    Name(String),
}

impl WireLetter {
    pub fn from_letter(j: Letter) -> WireLetter {
        if j == PHI {
            WireLetter::Name("phi".into())
        } else {
            WireLetter::Int(j)
        }
    }

    pub fn letter(&self) -> Result<Letter> {
        match self {
            WireLetter::Int(PHI) => Err(Error::Invalid("write φ as \"phi\"".into())),
            WireLetter::Int(j) => Ok(*j),
            WireLetter::Name(s) if s == "phi" => Ok(PHI),
            WireLetter::Name(s) => Err(Error::Invalid(format!("unknown letter {s}"))),
        }
    }
}

pub type WireElem = (WireLetter, i64);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WireTerm {
    pub word: Vec<WireElem>,
    pub coeff: RatQ,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WireFock {
    pub m: i64,
    pub terms: Vec<WireTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WireDiagramTerm {
    pub diagram: Diagram,
    pub coeff: RatQ,
}

pub fn word_to_wire(w: &Word) -> Vec<WireElem> {
    w.iter().map(|b| (WireLetter::from_letter(b.j), b.z)).collect()
}

pub fn word_from_wire(w: &[WireElem]) -> Result<Word> {
    w.iter().map(|(l, z)| Ok(Elem::new(l.letter()?, *z))).collect()
}

pub fn wedge_to_wire(v: &WedgeVec) -> Vec<WireTerm> {
    v.iter().map(|(w, c)| WireTerm { word: word_to_wire(w), coeff: c.clone() }).collect()
}

pub fn wedge_from_wire(ts: &[WireTerm]) -> Result<WedgeVec> {
    let mut v = LinComb::new();
    for t in ts {
        v.add_term(word_from_wire(&t.word)?, t.coeff.clone());
    }
    Ok(v)
}

pub fn fock_to_wire(v: &FockVec) -> WireFock {
    WireFock { m: v.m, terms: wedge_to_wire(&v.terms) }
}

pub fn fock_from_wire(w: &WireFock) -> Result<FockVec> {
    Ok(FockVec { m: w.m, terms: wedge_from_wire(&w.terms)? })
}

pub fn diagrams_to_wire(v: &LinComb<Diagram>) -> Vec<WireDiagramTerm> {
    v.iter().map(|(d, c)| WireDiagramTerm { diagram: d.clone(), coeff: c.clone() }).collect()
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Invalid(format!("json: {e}")))
}

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::exactnum::serial::RationalRepr;
use crate::exactnum::{Matrix, Rational};

use super::presentation::{parse_symbol, Letter, Presentation};
use super::rep::MatrixRep;
use super::GroupCohError;

/// A relator letter: `"a"`, `"a^-1"`, or a signed 1-based generator index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignedSymbol {
    Index(i64),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<Vec<SignedSymbol>>,
}

impl PresentationFile {
    pub fn to_presentation(&self) -> Result<Presentation, GroupCohError> {
        let names = &self.generators;
        let words = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|s| match s {
                        SignedSymbol::Name(t) => parse_symbol(names, t),
                        SignedSymbol::Index(i) => {
                            let g = i.unsigned_abs() as usize;
                            if *i == 0 || g > names.len() {
                                Err(GroupCohError::InvalidPresentation(format!("generator index {i} out of range")))
                            } else {
                                Ok(Letter {
                                    generator: g - 1,
                                    inverse: *i < 0,
                                })
                            }
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Presentation::new(names.clone(), words)
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            generators: p.generators().to_vec(),
            relators: p
                .relators()
                .iter()
                .map(|w| p.word_symbols(w).into_iter().map(SignedSymbol::Name).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "field")]
pub enum RepresentationFile {
    #[serde(rename = "Q")]
    Rational {
        matrices: BTreeMap<String, Vec<Vec<RationalRepr>>>,
    },
    #[serde(rename = "float")]
    Float { matrices: BTreeMap<String, Vec<Vec<f64>>> },
}

fn lookup<'a, T>(m: &'a BTreeMap<String, T>, pres: &Presentation) -> Result<Vec<&'a T>, GroupCohError> {
    if let Some(extra) = m.keys().find(|k| !pres.generators().contains(k)) {
        return Err(GroupCohError::InvalidRepresentation(format!("matrix for undeclared generator {extra:?}")));
    }
    pres.generators()
        .iter()
        .map(|g| {
            m.get(g)
                .ok_or_else(|| GroupCohError::InvalidRepresentation(format!("no matrix for generator {g:?}")))
        })
        .collect()
}

fn check_rows<T>(rows: &[Vec<T>]) -> Result<(), GroupCohError> {
    if rows.iter().any(|r| r.len() != rows.len()) || rows.is_empty() {
        return Err(GroupCohError::InvalidRepresentation("matrices must be square and nonempty".into()));
    }
    Ok(())
}

impl RepresentationFile {
    pub fn to_rep(&self, pres: &Presentation) -> Result<MatrixRep, GroupCohError> {
        match self {
            RepresentationFile::Rational { matrices } => {
                let mut gens = Vec::new();
                for rows in lookup(matrices, pres)? {
                    check_rows(rows)?;
                    let parsed = rows
                        .iter()
                        .map(|r| r.iter().map(RationalRepr::to_rational).collect::<Result<Vec<Rational>, _>>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| GroupCohError::Parse(e.to_string()))?;
                    gens.push(Matrix::from_rows(parsed));
                }
                MatrixRep::exact(pres, gens)
            }
            RepresentationFile::Float { matrices } => {
                let mut gens = Vec::new();
                for rows in lookup(matrices, pres)? {
                    check_rows(rows)?;
                    let n = rows.len();
                    gens.push(DMatrix::from_fn(n, n, |i, j| rows[i][j]));
                }
                MatrixRep::float(pres, gens)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedRepresentation {
    pub name: String,
    #[serde(flatten)]
    pub rep: RepresentationFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: PresentationFile,
    pub representations: Vec<NamedRepresentation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationCorpus {
    pub entries: Vec<CorpusEntry>,
}

pub const BUNDLED_CORPUS: &str = include_str!("../../data/presentations.json");

pub fn bundled_corpus() -> PresentationCorpus {
    serde_json::from_str(BUNDLED_CORPUS).expect("bundled corpus parses")
}

pub fn parse_presentation(text: &str) -> Result<Presentation, GroupCohError> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| GroupCohError::Parse(e.to_string()))?;
    file.to_presentation()
}

pub fn parse_representation(text: &str, pres: &Presentation) -> Result<MatrixRep, GroupCohError> {
    let file: RepresentationFile = serde_json::from_str(text).map_err(|e| GroupCohError::Parse(e.to_string()))?;
    file.to_rep(pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_indices_and_names_agree() {
        let a: PresentationFile =
            serde_json::from_str(r#"{"generators":["a","b"],"relators":[[1,2,-1,-2]]}"#).unwrap();
        let b: PresentationFile =
            serde_json::from_str(r#"{"generators":["a","b"],"relators":[["a","b","a^-1","b^-1"]]}"#).unwrap();
        assert_eq!(a.to_presentation().unwrap(), b.to_presentation().unwrap());
        let bad: PresentationFile = serde_json::from_str(r#"{"generators":["a"],"relators":[[2]]}"#).unwrap();
        assert!(bad.to_presentation().is_err());
        let p = b.to_presentation().unwrap();
        assert_eq!(PresentationFile::from_presentation(&p), b);
    }

    #[test]
    fn bundled_corpus_is_valid() {
        let corpus = bundled_corpus();
        assert!(corpus.entries.len() >= 8);
        for e in &corpus.entries {
            let p = e.presentation.to_presentation().unwrap();
            for r in &e.representations {
                r.rep.to_rep(&p).unwrap_or_else(|err| panic!("{}/{}: {err}", e.name, r.name));
            }
        }
    }

    #[test]
    fn representation_must_name_every_generator() {
        let p = Presentation::free(&["a", "b"]);
        assert!(parse_representation(r#"{"field":"Q","matrices":{"a":[[1]]}}"#, &p).is_err());
        assert!(parse_representation(r#"{"field":"Q","matrices":{"a":[[1]],"b":[[2]],"c":[[1]]}}"#, &p).is_err());
        assert!(parse_representation(r#"{"field":"Q","matrices":{"a":[[1]],"b":["1/2"]}}"#, &p).is_err());
        assert!(parse_representation(r#"{"field":"Q","matrices":{"a":[[1]],"b":[["1/2"]]}}"#, &p).is_ok());
    }
}

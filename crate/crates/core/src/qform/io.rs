//! JSON formats.
//!
//! Quadratic form:
//! `{"field": "Q(sqrt2)", "n": 5, "entries": [[0, 0, [1, 0]], [3, 3, [0, -1]]]}`.
//! Indices are 0-based; each entry `[i, j, c]` sets `a_ij = a_ji = c` and
//! unlisted entries are zero. Coefficients are power-basis tuples (`[a, b]`
//! for `a + b sqrt2`, `[a, b, c]` for `a + b cbrt2 + c cbrt4`); a bare
//! rational is accepted for any field.
//!
//! Generator sets store each matrix row-major as coefficient tuples and are
//! re-certified on load.

use serde::{Deserialize, Serialize};

use crate::exactnum::serial::CoeffRepr;
use crate::exactnum::{CubicElement, FieldTag, Matrix, NumberField, QuadElement, Rational, Scalar};

use super::form::QuadraticForm;
use super::member::{is_member, OrthogonalElement};
use super::QFormError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFile {
    pub field: FieldTag,
    pub n: usize,
    pub entries: Vec<(usize, usize, CoeffRepr)>,
}

impl FormFile {
    pub fn to_form<K: NumberField>(&self) -> Result<QuadraticForm<K>, QFormError> {
        let mut m = Matrix::<K>::zeros(self.n, self.n);
        let mut set = vec![false; self.n * self.n];
        for (entry, (i, j, c)) in self.entries.iter().enumerate() {
            let (i, j) = (*i, *j);
            if i >= self.n || j >= self.n {
                return Err(QFormError::InvalidEntry {
                    entry,
                    reason: format!("index ({i}, {j}) out of range for n = {}", self.n),
                });
            }
            let v: K = c.to_element().map_err(|e| QFormError::InvalidEntry {
                entry,
                reason: e.to_string(),
            })?;
            if set[i * self.n + j] && m[(i, j)] != v {
                return Err(QFormError::InvalidEntry {
                    entry,
                    reason: format!("conflicting value for ({i}, {j})"),
                });
            }
            set[i * self.n + j] = true;
            set[j * self.n + i] = true;
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
        QuadraticForm::new(m)
    }

    pub fn from_form<K: NumberField>(phi: &QuadraticForm<K>) -> Self {
        let n = phi.n();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = &phi.matrix()[(i, j)];
                if *v != K::zero() {
                    entries.push((i, j, CoeffRepr::from_element(v)));
                }
            }
        }
        FormFile {
            field: K::TAG,
            n,
            entries,
        }
    }
}

/// A form over whichever field its file declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Rational(QuadraticForm<Rational>),
    Sqrt2(QuadraticForm<QuadElement>),
    Cbrt2(QuadraticForm<CubicElement>),
}

impl AnyForm {
    /// The form over `Q(sqrt 2)`, lifting rational forms.
    pub fn into_sqrt2(self) -> Result<QuadraticForm<QuadElement>, QFormError> {
        match self {
            AnyForm::Sqrt2(f) => Ok(f),
            AnyForm::Rational(f) => QuadraticForm::new(f.matrix().map(|q| QuadElement::new(q.clone(), Rational::zero()))),
            AnyForm::Cbrt2(_) => Err(QFormError::UnsupportedField(FieldTag::Cbrt2)),
        }
    }
}

pub fn parse_form(text: &str) -> Result<AnyForm, QFormError> {
    let file: FormFile = serde_json::from_str(text).map_err(|e| QFormError::Parse(e.to_string()))?;
    Ok(match file.field {
        FieldTag::Rational => AnyForm::Rational(file.to_form()?),
        FieldTag::Sqrt2 => AnyForm::Sqrt2(file.to_form()?),
        FieldTag::Cbrt2 => AnyForm::Cbrt2(file.to_form()?),
    })
}

/// Certified elements with a note on how they were produced.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<K> {
    pub elements: Vec<OrthogonalElement<K>>,
    pub closure_note: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    pub matrix: Vec<Vec<CoeffRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSetFile {
    pub field: FieldTag,
    pub n: usize,
    pub closure_note: Vec<String>,
    pub elements: Vec<ElementRecord>,
}

impl<K: NumberField> GeneratorSet<K> {
    pub fn to_file(&self, n: usize) -> GeneratorSetFile {
        GeneratorSetFile {
            field: K::TAG,
            n,
            closure_note: self.closure_note.clone(),
            elements: self
                .elements
                .iter()
                .map(|e| ElementRecord {
                    word: e.word.clone(),
                    matrix: (0..n)
                        .map(|i| e.matrix().row(i).iter().map(CoeffRepr::from_element).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &GeneratorSetFile, phi: &QuadraticForm<K>) -> Result<Self, QFormError> {
        if file.field != K::TAG {
            return Err(QFormError::UnsupportedField(file.field));
        }
        let mut elements = Vec::new();
        for (entry, rec) in file.elements.iter().enumerate() {
            let rows = rec
                .matrix
                .iter()
                .map(|r| r.iter().map(CoeffRepr::to_element::<K>).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| QFormError::InvalidEntry {
                    entry,
                    reason: e.to_string(),
                })?;
            if rows.len() != file.n || rows.iter().any(|r| r.len() != file.n) {
                return Err(QFormError::InvalidEntry {
                    entry,
                    reason: format!("matrix is not {0}x{0}", file.n),
                });
            }
            let mut e = is_member(&Matrix::from_rows(rows), phi)?;
            e.word = rec.word.clone();
            elements.push(e);
        }
        Ok(GeneratorSet {
            elements,
            closure_note: file.closure_note.clone(),
        })
    }
}

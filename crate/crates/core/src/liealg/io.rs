//! JSON structure-constant files:
//!
//! ```json
//! {"dim": 3, "basis_names": ["e1", "e2", "e3"],
//!  "brackets": [[0, 1, 2, "1"], [1, 2, 0, 1], [0, 2, 1, "-1"]]}
//! ```
//!
//! Indices are 0-based, each entry `[i, j, k, c]` sets `c_{ij}^k = c` and
//! unlisted constants are zero. `basis_names` may be omitted.

use serde::{Deserialize, Serialize};

use crate::exactnum::serial::RationalRepr;

use super::algebra::{Bracket, LieAlgebra};
use super::LieError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub brackets: Vec<(usize, usize, usize, RationalRepr)>,
}

impl StructureFile {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        StructureFile {
            dim: g.dim(),
            basis_names: Some(g.basis_names().to_vec()),
            brackets: g
                .brackets()
                .into_iter()
                .map(|b| (b.i, b.j, b.k, RationalRepr::from_rational(&b.coeff)))
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        let names = self
            .basis_names
            .clone()
            .unwrap_or_else(|| (1..=self.dim).map(|i| format!("e{i}")).collect());
        let brackets = self
            .brackets
            .iter()
            .enumerate()
            .map(|(n, (i, j, k, c))| {
                let coeff = c.to_rational().map_err(|e| LieError::InvalidEntry {
                    entry: n,
                    reason: e.to_string(),
                })?;
                Ok(Bracket {
                    i: *i,
                    j: *j,
                    k: *k,
                    coeff,
                })
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        LieAlgebra::from_brackets(self.dim, names, &brackets)
    }
}

pub fn parse_structure(text: &str) -> Result<LieAlgebra, LieError> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
    file.to_algebra()
}

pub fn write_structure(g: &LieAlgebra) -> String {
    serde_json::to_string_pretty(&StructureFile::from_algebra(g)).expect("structure file serializes")
}

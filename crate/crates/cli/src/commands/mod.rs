pub mod algebra;
pub mod cohomology;
pub mod dynamics;
pub mod forge;
pub mod suspension;

use std::path::Path;

use crate::error::CliError;
use crate::output::{read_input, InputFile};

/// A file argument or a bundled default.
pub(crate) fn input_or_builtin(
    path: Option<&Path>,
    builtin: (&'static str, &'static str),
) -> Result<(String, InputFile), CliError> {
    match path {
        Some(p) => read_input(p),
        None => Ok((builtin.1.to_string(), InputFile::new(builtin.0, builtin.1))),
    }
}

pub(crate) fn to_json<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report values serialize")
}

//! Data files shipped with the binary.

use crate::{BuiltinAlgebra, BuiltinForm};

pub const SO3: &str = include_str!("../data/so3.json");
pub const SO4: &str = include_str!("../data/so4.json");
pub const SO5: &str = include_str!("../data/so5.json");
pub const HEISENBERG: &str = include_str!("../data/heisenberg.json");
pub const WORKED_EXAMPLE_FORM: &str = include_str!("../data/worked_example_form.json");
pub const DEFINITE_FORM: &str = include_str!("../data/definite_form.json");
pub const ISOTROPIC_FORM: &str = include_str!("../data/isotropic_form.json");
pub const FINITE_ACTION: &str = include_str!("../data/finite_action.json");

pub fn algebra(b: BuiltinAlgebra) -> (&'static str, &'static str) {
    match b {
        BuiltinAlgebra::So3 => ("builtin:so3", SO3),
        BuiltinAlgebra::So4 => ("builtin:so4", SO4),
        BuiltinAlgebra::So5 => ("builtin:so5", SO5),
        BuiltinAlgebra::Heisenberg => ("builtin:heisenberg", HEISENBERG),
    }
}

pub fn form(b: BuiltinForm) -> (&'static str, &'static str) {
    match b {
        BuiltinForm::WorkedExample => ("builtin:worked-example", WORKED_EXAMPLE_FORM),
        BuiltinForm::Definite => ("builtin:definite", DEFINITE_FORM),
        BuiltinForm::Isotropic => ("builtin:isotropic", ISOTROPIC_FORM),
    }
}

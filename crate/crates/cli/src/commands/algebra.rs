//! Structural invariants of a Lie algebra given by structure constants.

use foliation_core::exactnum::serial::RationalRepr;
use foliation_core::liealg::io::parse_structure;
use foliation_core::liealg::{ce_cohomology, simple_decomposition, LieError, Subspace};
use foliation_core::suspension::rigidity_pipeline;
use serde::Deserialize;
use serde_json::json;

use super::{input_or_builtin, to_json};
use crate::builtin;
use crate::error::CliError;
use crate::output::{read_input, CommandOutput, Table};
use crate::{AlgebraArgs, BuiltinAlgebra, RunContext};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealFile {
    basis: Vec<Vec<RationalRepr>>,
}

fn parse_ideal(text: &str, dim: usize) -> Result<Subspace, CliError> {
    let file: IdealFile = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("ideal: {e}")))?;
    let mut vecs = Vec::with_capacity(file.basis.len());
    for (k, row) in file.basis.iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::Validation(format!(
                "ideal: basis vector {k} has {} entries, algebra has dimension {dim}",
                row.len()
            )));
        }
        let v = row
            .iter()
            .map(RationalRepr::to_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Validation(format!("ideal: {e}")))?;
        vecs.push(v);
    }
    Ok(Subspace::span(dim, &vecs))
}

pub fn cmd_algebra(ctx: &RunContext, args: &AlgebraArgs) -> Result<CommandOutput, CliError> {
    let default = builtin::algebra(args.builtin.unwrap_or(BuiltinAlgebra::So3));
    let (text, input) = input_or_builtin(args.input.as_deref(), default)?;
    let g = parse_structure(&text)?;
    let mut inputs = vec![input];
    let ideal = match &args.ideal {
        Some(p) => {
            let (t, f) = read_input(p)?;
            inputs.push(f);
            Some(parse_ideal(&t, g.dim())?)
        }
        None => None,
    };
    let report = rigidity_pipeline(&g, ideal.as_ref())?;
    let labels = if report.is_semisimple {
        simple_decomposition(&g)?.labels
    } else {
        Vec::new()
    };

    let mut cohomology = Vec::new();
    let mut table = Table::new("cohomology.csv", &["degree", "dimension"]);
    for &k in &args.degrees {
        if k > g.dim() {
            return Err(LieError::DegreeOutOfRange { degree: k, dim: g.dim() }.into());
        }
        let c = ce_cohomology(&g, k, ctx.config.budgets.ce_budget)?;
        table.push(vec![k.to_string(), c.dimension.to_string()]);
        cohomology.push(c);
    }

    let mut summary = vec![format!("dimension {}, derived algebra dimension {}", report.dim, report.derived_dim)];
    summary.push(format!("perfect: {}", if report.is_perfect { "yes" } else { "no" }));
    if report.is_semisimple {
        summary.push(format!("simple ideals: {:?}", report.simple_ideal_dims));
        summary.push(if report.no_so3_factor {
            "no so(3) factor: satisfied".to_string()
        } else {
            "so(3) factor detected".to_string()
        });
    } else {
        summary.push("not semisimple".to_string());
    }
    for c in &cohomology {
        summary.push(format!("H^{} = {}", c.degree, c.dimension));
    }
    if let Some(r) = &report.ideal {
        summary.push(format!(
            "ideal of dimension {}: H^1 = {}, reduction {} rigidity",
            r.dim,
            r.h1_dim,
            if r.reduction_preserves_rigidity { "preserves" } else { "may not preserve" }
        ));
    }
    Ok(CommandOutput {
        subcommand: "algebra".into(),
        inputs,
        result: json!({
            "obstructions": to_json(&report),
            "simple_ideals": to_json(&labels),
            "cohomology": to_json(&cohomology),
        }),
        tables: vec![table],
        files: Vec::new(),
        summary,
        notes: Vec::new(),
    })
}

//! First cohomology of finitely presented groups via Fox calculus.

use foliation_core::groupcoh::{
    bundled_corpus, h1_dimension_with_threshold, parse_presentation, parse_representation, truncated_rigidity_check,
    MatrixRep, Presentation,
};
use serde_json::json;

use super::dynamics::ImagesFile;
use super::to_json;
use crate::error::CliError;
use crate::output::{fmt_f64, read_input, CommandOutput, Table};
use crate::{CohomologyArgs, RunContext};

fn corpus(ctx: &RunContext) -> Result<CommandOutput, CliError> {
    let thr = ctx.config.tolerances.svd_threshold;
    let mut table = Table::new(
        "cohomology.csv",
        &["group", "representation", "dim", "method", "z1", "b1", "h1", "fixed"],
    );
    let mut results = Vec::new();
    let mut summary = Vec::new();
    for entry in bundled_corpus().entries {
        let pres = entry.presentation.to_presentation()?;
        for named in &entry.representations {
            let rep = named.rep.to_rep(&pres)?;
            let r = h1_dimension_with_threshold(&pres, &rep, thr)?;
            table.push(vec![
                entry.name.clone(),
                named.name.clone(),
                r.rep_dim.to_string(),
                to_json(&r.method).as_str().unwrap_or_default().to_string(),
                r.z1_dim.to_string(),
                r.b1_dim.to_string(),
                r.h1_dim.to_string(),
                r.fixed_dim.to_string(),
            ]);
            summary.push(format!("{} / {}: H^1 = {}", entry.name, named.name, r.h1_dim));
            results.push(json!({
                "group": entry.name,
                "presentation": pres.to_string(),
                "representation": named.name,
                "report": to_json(&r),
            }));
        }
    }
    Ok(CommandOutput {
        subcommand: "cohomology".into(),
        result: json!({ "corpus": results }),
        tables: vec![table],
        summary,
        ..CommandOutput::default()
    })
}

/// Images ordered as the presentation's generators.
fn images_for(pres: &Presentation, file: &ImagesFile) -> Result<Vec<nalgebra::DMatrix<f64>>, CliError> {
    let mats = file.to_matrices()?;
    pres.generators()
        .iter()
        .map(|g| {
            file.names
                .iter()
                .position(|n| n == g)
                .map(|k| mats[k].clone())
                .ok_or_else(|| CliError::Validation(format!("embedding has no image for generator {g}")))
        })
        .collect()
}

pub fn cmd_cohomology(ctx: &RunContext, args: &CohomologyArgs) -> Result<CommandOutput, CliError> {
    if args.corpus {
        return corpus(ctx);
    }
    let Some(path) = &args.presentation else {
        return Err(CliError::Validation("a presentation file or --corpus is required".into()));
    };
    let c = &ctx.config;
    let (text, input) = read_input(path)?;
    let pres = parse_presentation(&text)?;
    let mut inputs = vec![input];
    let mut summary = vec![format!("presentation {pres}")];

    if let Some(emb) = &args.embedding {
        if let Some(d) = args.degrees.iter().find(|&&d| d > c.budgets.max_degree) {
            return Err(CliError::Budget(format!("degree {d} exceeds max_degree {}", c.budgets.max_degree)));
        }
        let (t, f) = read_input(emb)?;
        inputs.push(f);
        let file: ImagesFile = serde_json::from_str(&t).map_err(|e| CliError::Validation(format!("embedding: {e}")))?;
        let images = images_for(&pres, &file)?;
        let r = truncated_rigidity_check(
            &pres,
            &images,
            &args.degrees,
            c.budgets.harmonic_budget,
            c.tolerances.svd_threshold,
        )?;
        let mut table = Table::new("cohomology.csv", &["degree", "space_dim", "z1", "b1", "h1", "fixed", "relator_residual"]);
        for d in &r.degrees {
            table.push(vec![
                d.degree.to_string(),
                d.space_dim.to_string(),
                d.z1_dim.to_string(),
                d.b1_dim.to_string(),
                d.h1_dim.to_string(),
                d.fixed_dim.to_string(),
                fmt_f64(d.max_relator_residual),
            ]);
            summary.push(format!("degree {}: H^1 = {} on {} dims", d.degree, d.h1_dim, d.space_dim));
        }
        summary.push(format!(
            "all tested degrees vanish: {}",
            if r.all_tested_vanish { "yes" } else { "no" }
        ));
        return Ok(CommandOutput {
            subcommand: "cohomology".into(),
            inputs,
            result: json!({ "presentation": pres.to_string(), "truncated": to_json(&r) }),
            tables: vec![table],
            summary,
            ..CommandOutput::default()
        });
    }

    let rep = match &args.rep {
        Some(p) => {
            let (t, f) = read_input(p)?;
            inputs.push(f);
            parse_representation(&t, &pres)?
        }
        None => {
            summary.push("no representation given; using the trivial 1-dimensional one".into());
            MatrixRep::trivial(&pres, 1)
        }
    };
    let r = h1_dimension_with_threshold(&pres, &rep, c.tolerances.svd_threshold)?;
    summary.push(format!(
        "dim Z^1 = {}, dim B^1 = {}, dim H^1 = {}",
        r.z1_dim, r.b1_dim, r.h1_dim
    ));
    Ok(CommandOutput {
        subcommand: "cohomology".into(),
        inputs,
        result: json!({ "presentation": pres.to_string(), "report": to_json(&r) }),
        summary,
        ..CommandOutput::default()
    })
}

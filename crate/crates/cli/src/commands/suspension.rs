//! Finite suspension models and connection-form residuals.

use foliation_core::dynamics::haar_probes;
use foliation_core::suspension::{
    invariance_residual, mc_residual, orbits, ChartKind, FiniteAction, FiniteActionFile, MCChart,
};
use rayon::prelude::*;
use serde_json::json;

use super::{input_or_builtin, to_json};
use crate::builtin;
use crate::error::CliError;
use crate::output::{fmt_f64, CommandOutput, Table};
use crate::{ChartKindArg, RunContext, SuspensionArgs, SuspensionCommand};

fn cmd_orbits(ctx: &RunContext, input: Option<&std::path::Path>) -> Result<CommandOutput, CliError> {
    let (text, file) = input_or_builtin(input, ("builtin:finite-action", builtin::FINITE_ACTION))?;
    let parsed: FiniteActionFile =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("action: {e}")))?;
    let action = FiniteAction::from_file(&parsed)?;
    let report = orbits(&action);
    let order = action.group_order(ctx.config.budgets.element_cap);
    let mut table = Table::new("orbits.csv", &["orbit", "size", "stabilizer_index", "compact_leaf"]);
    let mut summary = vec![format!(
        "{} points in {} orbits; group order {}",
        report.set_size,
        report.orbits.len(),
        order.map_or_else(|| "above the element cap".to_string(), |o| o.to_string())
    )];
    for (k, o) in report.orbits.iter().enumerate() {
        table.push(vec![
            k.to_string(),
            o.len().to_string(),
            report.stabilizer_index[k].to_string(),
            report.compact_leaf[k].to_string(),
        ]);
        summary.push(format!("orbit {k}: {:?}", o));
    }
    Ok(CommandOutput {
        subcommand: "suspension".into(),
        inputs: vec![file],
        result: json!({ "orbits": to_json(&report), "group_order": order }),
        tables: vec![table],
        summary,
        ..CommandOutput::default()
    })
}

fn cmd_chart(ctx: &RunContext, n: usize, kind: ChartKindArg) -> Result<CommandOutput, CliError> {
    let s = &ctx.config.suspension;
    let kind = match kind {
        ChartKindArg::Exponential => ChartKind::Exponential,
        ChartKindArg::Torus => ChartKind::Torus,
    };
    let chart = MCChart::new(n, kind, s.samples, s.chart_radius, ctx.config.seed)?.with_steps(s.steps.clone());
    let mc = mc_residual(&chart)?;
    let translations = haar_probes(n, s.translations, ctx.config.seed);
    let invariance = translations
        .par_iter()
        .map(|g| invariance_residual(&chart, g))
        .collect::<Result<Vec<f64>, _>>()?;
    let max_invariance = invariance.iter().copied().fold(0.0, f64::max);

    let mut table = Table::new("mc_residual.csv", &["step", "residual"]);
    for (h, r) in mc.steps.iter().zip(&mc.residuals) {
        table.push(vec![fmt_f64(*h), fmt_f64(*r)]);
    }
    let summary = vec![
        format!(
            "Maurer-Cartan residuals {}",
            mc.residuals.iter().map(|r| fmt_f64(*r)).collect::<Vec<_>>().join(", ")
        ),
        format!("order estimate {}", mc.order.map_or_else(|| "-".to_string(), fmt_f64)),
        format!(
            "left-invariance residual {} over {} translations",
            fmt_f64(max_invariance),
            invariance.len()
        ),
    ];
    Ok(CommandOutput {
        subcommand: "suspension".into(),
        result: json!({
            "chart": { "n": n, "kind": kind, "samples": s.samples, "radius": s.chart_radius },
            "mc_residual": to_json(&mc),
            "invariance_residuals": invariance,
            "max_invariance_residual": max_invariance,
        }),
        tables: vec![table],
        summary,
        ..CommandOutput::default()
    })
}

pub fn cmd_suspension(ctx: &RunContext, args: &SuspensionArgs) -> Result<CommandOutput, CliError> {
    match &args.command {
        SuspensionCommand::Orbits { input } => cmd_orbits(ctx, input.as_deref()),
        SuspensionCommand::Chart { n, kind } => cmd_chart(ctx, *n, *kind),
    }
}

//! Word balls, covering radii and averaging operators for elements of SO(n).

use std::fs;

use foliation_core::dynamics::cache::{sha256_hex, BallCache};
use foliation_core::dynamics::{
    averaging_operator_norm_with_threshold, covering_radius, enumerate_ball, harmonic_space, weyl_deviation,
    GeneratorImages, HarmonicSpace, WordBall,
};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::to_json;
use crate::error::CliError;
use crate::output::{fmt_f64, read_input, CommandOutput, Table};
use crate::{DynamicsArgs, RunContext};

/// Generator images in SO(n), rows listed in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImagesFile {
    pub names: Vec<String>,
    pub matrices: Vec<Vec<Vec<f64>>>,
}

impl ImagesFile {
    pub fn new(names: Vec<String>, mats: &[DMatrix<f64>]) -> Self {
        ImagesFile {
            names,
            matrices: mats
                .iter()
                .map(|m| (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect())
                .collect(),
        }
    }

    pub fn to_matrices(&self) -> Result<Vec<DMatrix<f64>>, CliError> {
        if self.names.len() != self.matrices.len() {
            return Err(CliError::Validation(format!(
                "images: {} names for {} matrices",
                self.names.len(),
                self.matrices.len()
            )));
        }
        let n = self.matrices.first().map_or(0, Vec::len);
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) || n == 0 {
                    return Err(CliError::Validation(format!("images: matrix {k} is not {n}x{n}")));
                }
                Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticSettings {
    pub radius: usize,
    pub probes: usize,
    pub degrees: Vec<usize>,
}

pub struct Diagnostics {
    pub json: serde_json::Value,
    pub tables: Vec<Table>,
    pub summary: Vec<String>,
    pub notes: Vec<String>,
}

fn ball_key(images: &[DMatrix<f64>], radius: usize, dedup_tol: f64, cap: usize) -> String {
    let flat: Vec<Vec<f64>> = images.iter().map(|m| m.iter().copied().collect()).collect();
    let bytes = serde_json::to_vec(&(flat, radius, dedup_tol, cap)).expect("key serializes");
    sha256_hex(&bytes)
}

fn ball_with_cache(
    ctx: &RunContext,
    gens: &GeneratorImages,
    radius: usize,
    notes: &mut Vec<String>,
) -> Result<WordBall, CliError> {
    let c = &ctx.config;
    let build = || enumerate_ball(gens, radius, c.tolerances.dedup_tol, c.budgets.element_cap);
    let Some(dir) = &ctx.cache_dir else {
        return Ok(build()?);
    };
    let key = ball_key(&gens.float, radius, c.tolerances.dedup_tol, c.budgets.element_cap);
    let path = dir.join(format!("ball-{}.json", &key[..16]));
    if let Ok(text) = fs::read_to_string(&path) {
        match BallCache::load(&text, &key) {
            Ok(ball) => {
                notes.push(format!("word ball loaded from {}", path.display()));
                return Ok(ball);
            }
            Err(e) => notes.push(format!("cache {} ignored: {e}", path.display())),
        }
    }
    let ball = build()?;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    fs::write(&path, BallCache::from_ball(&ball, &key).to_json()).map_err(|e| CliError::io(&path, e))?;
    notes.push(format!("word ball cached at {}", path.display()));
    Ok(ball)
}

pub fn diagnostics(ctx: &RunContext, images: &[DMatrix<f64>], s: &DiagnosticSettings) -> Result<Diagnostics, CliError> {
    let c = &ctx.config;
    if let Some(d) = s.degrees.iter().find(|&&d| d > c.budgets.max_degree) {
        return Err(CliError::Budget(format!("degree {d} exceeds max_degree {}", c.budgets.max_degree)));
    }
    let gens = GeneratorImages::from_float(images.to_vec());
    gens.check_orthogonal()?;
    let n = gens.dim();
    let mut notes = Vec::new();
    let ball = ball_with_cache(ctx, &gens, s.radius, &mut notes)?;
    let density = covering_radius(&ball, s.probes, c.seed)?;
    let weakly_decreasing = density.is_non_increasing();
    let strict_after_2 = density.strictly_decreases_after(2);

    let spaces: Vec<HarmonicSpace> = s
        .degrees
        .par_iter()
        .map(|&d| harmonic_space(n, d, c.budgets.harmonic_budget))
        .collect::<Result<_, _>>()?;
    let gaps = spaces
        .par_iter()
        .map(|h| {
            averaging_operator_norm_with_threshold(
                &gens,
                h,
                c.tolerances.power_tol,
                c.budgets.power_iters,
                c.tolerances.svd_threshold,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&HarmonicSpace> = spaces.iter().collect();
    let weyl = weyl_deviation(&ball.elements, &refs)?;

    let mut density_table = Table::new("density.csv", &["radius", "ball_size", "covering_radius"]);
    for ((r, size), cr) in density.radii.iter().zip(&density.ball_sizes).zip(&density.covering_radius) {
        density_table.push(vec![r.to_string(), size.to_string(), fmt_f64(*cr)]);
    }
    let mut gap_table = Table::new(
        "spectral.csv",
        &["degree", "space_dim", "invariant_dim", "norm", "gap", "iterations", "weyl_deviation"],
    );
    let mut summary = vec![format!(
        "ball: radius {} with {} elements{}",
        s.radius,
        ball.len(),
        if density.finite_group { " (generated group is finite)" } else { "" }
    )];
    summary.push(format!(
        "covering radius: {} -> {}",
        fmt_f64(density.covering_radius[0]),
        fmt_f64(*density.covering_radius.last().expect("radius >= 1"))
    ));
    for (g, w) in gaps.iter().zip(&weyl) {
        let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), fmt_f64);
        gap_table.push(vec![
            g.degree.to_string(),
            g.space_dim.to_string(),
            g.invariant_dim.to_string(),
            opt(g.estimate),
            opt(g.gap),
            g.iterations.to_string(),
            fmt_f64(*w),
        ]);
        summary.push(format!(
            "degree {}: averaging norm {} on {} dims ({} invariant)",
            g.degree,
            opt(g.estimate),
            g.space_dim - g.invariant_dim,
            g.invariant_dim
        ));
    }
    let json = json!({
        "n": n,
        "generator_count": gens.float.len(),
        "ball": {
            "radius": ball.radius,
            "dedup_tol": ball.dedup_tol,
            "layer_ends": ball.layer_ends,
            "finite_group": ball.is_finite_group(),
        },
        "density": to_json(&density),
        "density_checks": {
            "weakly_decreasing": weakly_decreasing,
            "strictly_decreases_after_radius_2": strict_after_2,
            "finite_group_flagged": density.finite_group,
        },
        "spectral": to_json(&gaps),
        "weyl": s.degrees.iter().zip(&weyl).map(|(d, w)| json!({"degree": d, "deviation": w})).collect::<Vec<_>>(),
    });
    Ok(Diagnostics {
        json,
        tables: vec![density_table, gap_table],
        summary,
        notes,
    })
}

pub fn cmd_dynamics(ctx: &RunContext, args: &DynamicsArgs) -> Result<CommandOutput, CliError> {
    let (text, input) = read_input(&args.images)?;
    let file: ImagesFile = serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("images: {e}")))?;
    let images = file.to_matrices()?;
    let d = &ctx.config.dynamics;
    let settings = DiagnosticSettings {
        radius: args.radius.unwrap_or(d.radius),
        probes: args.probes.unwrap_or(d.probes),
        degrees: args.degrees.clone().unwrap_or_else(|| d.degrees.clone()),
    };
    let diag = diagnostics(ctx, &images, &settings)?;
    Ok(CommandOutput {
        subcommand: "dynamics".into(),
        inputs: vec![input],
        result: json!({"generators": file.names, "diagnostics": diag.json}),
        tables: diag.tables,
        files: Vec::new(),
        summary: diag.summary,
        notes: diag.notes,
    })
}

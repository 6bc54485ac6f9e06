//! Integral orthogonal group of a form over `Q(sqrt2)`: embeddings,
//! generators in coordinate planes, and their image in a compact `SO(n)`.

use foliation_core::exactnum::serial::{format_rational, CoeffRepr};
use foliation_core::exactnum::{EmbeddingId, NumberField, QuadElement};
use foliation_core::qform::{
    embed_matrix, galois_embed_element_with_tol, isotropic_witness, matrix_height, parse_form, plane_rotation_search,
    AnyForm, FormFile, GeneratorSet, OrthogonalElement, QFormError, QuadraticForm, StandardFrame,
};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::dynamics::{diagnostics, DiagnosticSettings, ImagesFile};
use super::{input_or_builtin, to_json};
use crate::builtin;
use crate::error::CliError;
use crate::output::{fmt_f64, CommandOutput};
use crate::{BuiltinForm, ForgeArgs, RunContext};

#[derive(Debug, Serialize)]
struct PlaneRecord {
    plane: (usize, usize),
    candidates: usize,
    word: Option<String>,
    height: Option<String>,
    coordinate_symmetry: Option<bool>,
}

#[derive(Debug, Serialize)]
struct GeneratorRecord {
    name: String,
    plane: (usize, usize),
    word: String,
    height: String,
    coordinate_symmetry: bool,
    certificate_passed: bool,
    matrix: Vec<Vec<CoeffRepr>>,
    embedding_residual: f64,
}

#[derive(Debug, Serialize)]
struct Anisotropy {
    verdict: &'static str,
    certified_by_definite_conjugate: bool,
    witness_search_bound: Option<i64>,
    witness: Option<Vec<CoeffRepr>>,
}

/// Entries all in `{0, 1, -1}`: a signed permutation, hence of finite order.
fn is_coordinate_symmetry(m: &OrthogonalElement<QuadElement>) -> bool {
    let allowed = [-1, 0, 1].map(|k| QuadElement::from_ints(k, 0));
    m.matrix().data().iter().all(|e| allowed.contains(e))
}

fn rows(m: &OrthogonalElement<QuadElement>) -> Vec<Vec<CoeffRepr>> {
    let n = m.matrix().rows();
    (0..n)
        .map(|i| m.matrix().row(i).iter().map(CoeffRepr::from_element).collect())
        .collect()
}

fn lift(form: AnyForm) -> Result<QuadraticForm<QuadElement>, CliError> {
    match form {
        AnyForm::Cbrt2(_) => Err(CliError::Validation(
            "forge works over Q(sqrt2); Q(cbrt2) forms are not supported".into(),
        )),
        other => Ok(other.into_sqrt2()?),
    }
}

pub fn cmd_forge(ctx: &RunContext, args: &ForgeArgs) -> Result<CommandOutput, CliError> {
    let c = &ctx.config;
    let default = builtin::form(args.builtin.unwrap_or(BuiltinForm::WorkedExample));
    let (text, input) = input_or_builtin(args.form.as_deref(), default)?;
    let phi = lift(parse_form(&text)?)?;
    let n = phi.n();
    let height = args.height.unwrap_or(c.forge.height);
    let mut notes = Vec::new();
    let mut warnings = Vec::new();
    let mut summary = Vec::new();

    let classification = phi.classify_embeddings(None)?;
    let conjugates = QuadElement::representatives()
        .into_iter()
        .map(|s| Ok((s.to_string(), FormFile::from_form(&phi.conjugate(s)?))))
        .collect::<Result<Vec<_>, QFormError>>()?;
    let signatures: Vec<String> = classification
        .signatures
        .iter()
        .filter_map(|s| s.signature.map(|(p, q)| format!("{} ({p},{q})", s.embedding)))
        .collect();
    summary.push(format!("real signatures: {}", signatures.join(", ")));
    let definite: Vec<String> = classification.definite_set.iter().map(ToString::to_string).collect();
    summary.push(format!("definite conjugates: {{{}}}", definite.join(", ")));

    let lattice_condition = classification.lattice_condition();
    if !lattice_condition {
        notes.push(
            "every conjugate form is definite, so the integral group is finite and not a lattice in a noncompact group"
                .into(),
        );
    }
    summary.push(format!(
        "lattice condition (some conjugate indefinite): {}",
        if lattice_condition { "holds" } else { "fails" }
    ));

    let certified = phi.anisotropy_by_conjugate_definiteness();
    let anisotropy = if certified {
        Anisotropy {
            verdict: "anisotropic",
            certified_by_definite_conjugate: true,
            witness_search_bound: None,
            witness: None,
        }
    } else {
        let bound = c.forge.isotropy_bound;
        let witness = isotropic_witness(&phi, bound);
        Anisotropy {
            verdict: if witness.is_some() { "isotropic" } else { "undecided" },
            certified_by_definite_conjugate: false,
            witness_search_bound: Some(bound),
            witness: witness.map(|v| v.iter().map(CoeffRepr::from_element).collect()),
        }
    };
    summary.push(format!("anisotropy: {}", anisotropy.verdict));

    // chain planes (i, i+1); searches run in parallel and are collected in order
    let planes: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    let searches = planes
        .par_iter()
        .map(|&(i, j)| plane_rotation_search(&phi, i, j, height))
        .collect::<Result<Vec<_>, _>>()?;
    let mut plane_records = Vec::new();
    let mut chosen: Vec<((usize, usize), OrthogonalElement<QuadElement>)> = Vec::new();
    for (&(i, j), hits) in planes.iter().zip(&searches) {
        // smallest height with a nonzero off-diagonal entry in the plane
        let pick = hits.iter().find(|e| e.matrix()[(j, i)] != QuadElement::from_ints(0, 0));
        plane_records.push(PlaneRecord {
            plane: (i, j),
            candidates: hits.len(),
            word: pick.and_then(|e| e.word.clone()),
            height: pick.map(|e| format_rational(&matrix_height(e.matrix()))),
            coordinate_symmetry: pick.map(is_coordinate_symmetry),
        });
        if let Some(e) = pick {
            chosen.push(((i, j), e.clone()));
        }
    }
    if chosen.is_empty() || chosen.iter().all(|(_, e)| is_coordinate_symmetry(e)) {
        warnings.push(format!(
            "EmptyGeneratorSet: searches up to height {height} found only finite-order coordinate symmetries"
        ));
    }
    let gen_set = GeneratorSet {
        elements: chosen.iter().map(|(_, e)| e.clone()).collect(),
        closure_note: vec![format!(
            "plane rotations: smallest-height element with nonzero off-diagonal entry in each plane (i, i+1), height <= {height}"
        )],
    };
    summary.push(format!(
        "generators: {} from {} planes (height <= {height})",
        gen_set.elements.len(),
        planes.len()
    ));

    // compact image through the first embedding with a definite conjugate
    let sigma: Option<EmbeddingId> = classification.definite_set.first().copied();
    let mut generators = Vec::new();
    let mut images = Vec::new();
    let mut files = vec![(
        "generators.json".to_string(),
        format!("{}\n", serde_json::to_string_pretty(&gen_set.to_file(n)).expect("serializes")),
    )];
    let mut dynamics_json = serde_json::Value::Null;
    let mut tables = Vec::new();
    match sigma {
        None => notes.push("no conjugate form is definite; embedding and diagnostics skipped".into()),
        Some(s) => {
            let frame = StandardFrame::new(&embed_matrix(phi.matrix(), s)?)?;
            for (k, ((i, j), e)) in chosen.iter().enumerate() {
                let emb = galois_embed_element_with_tol(e, &phi, s, c.tolerances.residual_tol)?;
                let img: DMatrix<f64> = frame.to_standard(&emb.matrix);
                generators.push(GeneratorRecord {
                    name: format!("g{}", k + 1),
                    plane: (*i, *j),
                    word: e.word.clone().unwrap_or_default(),
                    height: format_rational(&matrix_height(e.matrix())),
                    coordinate_symmetry: is_coordinate_symmetry(e),
                    certificate_passed: e.certificate().passed(),
                    matrix: rows(e),
                    embedding_residual: emb.residual,
                });
                images.push(img);
            }
            let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
            files.push((
                "images.json".to_string(),
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&ImagesFile::new(names, &images)).expect("serializes")
                ),
            ));
            summary.push(format!("embedded through {s} into SO({n})"));
            if images.is_empty() {
                notes.push("no generators to embed; diagnostics skipped".into());
            } else {
                let d = &c.dynamics;
                let settings = DiagnosticSettings {
                    radius: args.radius.unwrap_or(d.radius),
                    probes: args.probes.unwrap_or(d.probes),
                    degrees: args.degrees.clone().unwrap_or_else(|| d.degrees.clone()),
                };
                let diag = diagnostics(ctx, &images, &settings)?;
                dynamics_json = diag.json;
                tables = diag.tables;
                summary.extend(diag.summary);
                notes.extend(diag.notes);
            }
        }
    }
    let max_residual = generators.iter().map(|g| g.embedding_residual).fold(0.0, f64::max);
    if !generators.is_empty() {
        summary.push(format!("max embedding residual {}", fmt_f64(max_residual)));
    }
    summary.extend(warnings.iter().map(|w| format!("warning: {w}")));

    Ok(CommandOutput {
        subcommand: "forge".into(),
        inputs: vec![input],
        result: json!({
            "form": FormFile::from_form(&phi),
            "embeddings": to_json(&classification),
            "conjugate_forms": conjugates.iter().map(|(k, v)| (k.clone(), to_json(v))).collect::<serde_json::Map<_, _>>(),
            "lattice_condition": lattice_condition,
            "anisotropy": to_json(&anisotropy),
            "search": { "height": height, "planes": to_json(&plane_records) },
            "embedding": sigma.map(|s| s.to_string()),
            "generators": to_json(&generators),
            "max_embedding_residual": max_residual,
            "warnings": warnings,
            "dynamics": dynamics_json,
        }),
        tables,
        files,
        summary,
        notes,
    })
}

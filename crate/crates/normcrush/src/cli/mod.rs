//! The `normcrush` command line: JSON reports on stdout, diagnostics on
//! stderr, exit code 0 (ok), 1 (usage or input error) or 2 (a runtime
//! property check failed).

use crate::analysis::{homology_h1, sphere_certificate, BigonPath};
use crate::cellcx::{cc_skeleton, classify_complex, CellComplex};
use crate::crush::{crush_pipeline, cut_along, CrushOptions, Selector};
use crate::normal::{check_admissible, enumerate_bounded, surface_invariants, NormalVector, DEFAULT_WORK_CAP};
use crate::tri_core::{are_isomorphic, classify_vertices, compute_skeleton, Triangulation};
use crate::{Error, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "normcrush", version, about = "Crush normal surfaces in 3-manifold triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural check and validity report for a tri-v1 or cc-v1 file.
    Validate { file: PathBuf },
    /// Vertex, edge and face classes.
    Skeleton { file: PathBuf },
    /// Vertex links and their classification.
    Links { file: PathBuf },
    /// First homology per component.
    Homology { file: PathBuf },
    /// Whether two triangulations are combinatorially isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Cut along a normal surface, crush it and flatten to a triangulation.
    Crush {
        file: PathBuf,
        #[arg(long)]
        surface: PathBuf,
        /// Component of the complement to mark benign: an index or `auto`.
        #[arg(long)]
        region: Option<Selector>,
        /// Check the output contract for a maximal surface and a suitable region.
        #[arg(long)]
        assume_theorem1: bool,
        /// Write the move trace (trace-v1) here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Directory for the output components and manifest.
        #[arg(long, default_value = "crush-out")]
        out_dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SurfaceCommand {
    /// Admissibility of a normal vector.
    Check { file: PathBuf, surface: PathBuf },
    /// Euler characteristic, orientability and sidedness per component.
    Invariants { file: PathBuf, surface: PathBuf },
    /// All admissible vectors with coordinates at most K.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_coord: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Prefixes format errors with the file they came from.
fn located<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn load_tri(path: &Path) -> Result<Triangulation> {
    located(path, Triangulation::from_json(&read(path)?))
}

fn load_ns(path: &Path) -> Result<NormalVector> {
    located(path, NormalVector::from_json(&read(path)?))
}

enum Loaded {
    Tri(Triangulation),
    Cc(CellComplex),
}

fn load_any(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let head: Value = serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    match head.get("format").and_then(Value::as_str) {
        Some("cc-v1") => Ok(Loaded::Cc(located(path, CellComplex::from_json(&text))?)),
        _ => Ok(Loaded::Tri(located(path, Triangulation::from_json(&text))?)),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn h1_json(t: &Triangulation) -> Result<Value> {
    match homology_h1(t) {
        Ok(h) => Ok(serde_json::to_value(h).expect("serializes")),
        Err(Error::InvalidInput(_)) => Ok(Value::Null),
        Err(e) => Err(e),
    }
}

fn components_json(t: &Triangulation) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for (tets, sub) in t.components() {
        let report = classify_complex(&CellComplex::from_triangulation(&sub));
        let c = &report.components[0];
        out.push(json!({
            "tetrahedra": tets,
            "class": c.class,
            "invalid_edges": c.invalid_edges,
            "orientable": sub.is_orientable(),
            "h1": h1_json(&sub)?,
            "sphere_certificate": sphere_certificate(&sub),
        }));
    }
    Ok(out)
}

fn validate(path: &Path) -> Result<Value> {
    match load_any(path)? {
        Loaded::Tri(t) => {
            let sk = compute_skeleton(&t)?;
            let links = classify_vertices(&t)?;
            let invalid_edges = sk.edges.iter().filter(|e| !e.valid).count();
            let valid = invalid_edges == 0 && links.vertices.iter().all(|l| l.kind != crate::tri_core::VertexKind::Invalid);
            let components: Vec<Value> = t
                .components()
                .into_iter()
                .map(|(tets, sub)| {
                    let r = classify_complex(&CellComplex::from_triangulation(&sub));
                    json!({"tetrahedra": tets, "class": r.components[0].class})
                })
                .collect();
            Ok(json!({
                "format": "tri-v1",
                "tetrahedra": t.tet_count(),
                "valid": valid,
                "orientable": t.is_orientable(),
                "boundary_faces": t.boundary_faces().len(),
                "invalid_edges": invalid_edges,
                "vertices": links.vertices.iter().map(|l| l.kind.as_str()).collect::<Vec<_>>(),
                "components": components,
            }))
        }
        Loaded::Cc(c) => {
            let report = classify_complex(&c);
            let shapes: Vec<&str> = c.cells.iter().map(|x| x.shape.map_or("?", |s| s.name())).collect();
            Ok(json!({
                "format": "cc-v1",
                "cells": c.len(),
                "shapes": shapes,
                "valid": report.components.iter().all(|x| x.invalid_edges == 0),
                "components": report.components,
            }))
        }
    }
}

fn links(path: &Path) -> Result<Value> {
    match load_any(path)? {
        Loaded::Tri(t) => Ok(serde_json::to_value(classify_vertices(&t)?).expect("serializes")),
        Loaded::Cc(c) => Ok(json!({ "vertices": cc_skeleton(&c).links })),
    }
}

fn skeleton(path: &Path) -> Result<Value> {
    let t = load_tri(path)?;
    let sk = compute_skeleton(&t)?;
    Ok(json!({
        "counts": {"vertices": sk.vertices.len(), "edges": sk.edges.len(), "faces": sk.faces.len(), "tetrahedra": t.tet_count()},
        "vertices": sk.vertices,
        "edges": sk.edges,
        "faces": sk.faces,
    }))
}

fn homology(path: &Path) -> Result<Value> {
    let t = load_tri(path)?;
    Ok(json!({
        "format": "report-v1",
        "h1": h1_json(&t)?,
        "components": components_json(&t)?,
    }))
}

fn bigon_json(p: &BigonPath) -> Value {
    serde_json::to_value(p).expect("serializes")
}

fn crush(
    file: &Path,
    surface: &Path,
    region: Option<Selector>,
    assume_theorem1: bool,
    trace: Option<&Path>,
    out_dir: &Path,
) -> Result<Value> {
    let t = load_tri(file)?;
    let v = load_ns(surface)?;
    let r = crush_pipeline(&t, &v, CrushOptions { region, assume_theorem1 })?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", out_dir.display())))?;
    let write = |name: &Path, text: &str| {
        std::fs::write(name, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", name.display())))
    };
    let mut components = Vec::new();
    for (i, (sub, d)) in r.components.iter().zip(&r.diagnostics).enumerate() {
        let name = format!("component_{i}.tri");
        write(&out_dir.join(&name), &sub.to_json())?;
        components.push(json!({
            "file": name,
            "benign": d.benign,
            "class": d.class,
            "tetrahedra": d.tetrahedra.len(),
            "h1": d.h1,
            "sphere_certificate": d.sphere_certificate,
        }));
    }
    if let Some(path) = trace {
        write(path, &r.trace.to_json())?;
    }
    let manifest = json!({
        "format": "crushout-v1",
        "input_tetrahedra": r.input_tetrahedra,
        "output_tetrahedra": r.output.tet_count(),
        "region": r.region,
        "moves": r.trace.moves.len(),
        "rollbacks": r.trace.rollbacks.len(),
        "components": components,
        "bad_candidates": r.bad_candidates.iter().map(bigon_json).collect::<Vec<_>>(),
    });
    write(&out_dir.join("manifest.json"), &pretty(&manifest))?;
    Ok(manifest)
}

fn surface(cmd: &SurfaceCommand) -> Result<Value> {
    match cmd {
        SurfaceCommand::Check { file, surface } => {
            let t = load_tri(file)?;
            let v = load_ns(surface)?;
            Ok(serde_json::to_value(check_admissible(&t, &v)?).expect("serializes"))
        }
        SurfaceCommand::Invariants { file, surface } => {
            let t = load_tri(file)?;
            let v = load_ns(surface)?;
            // Sidedness needs the cut, which needs a triangulation without boundary.
            let report = if t.has_boundary_faces() { surface_invariants(&t, &v)? } else { cut_along(&t, &v)?.surface };
            Ok(serde_json::to_value(report).expect("serializes"))
        }
        SurfaceCommand::Enumerate { file, max_coord } => {
            let t = load_tri(file)?;
            let vs = enumerate_bounded(&t, *max_coord, DEFAULT_WORK_CAP)?;
            Ok(json!({
                "max_coord": max_coord,
                "count": vs.len(),
                "vectors": vs.iter().map(|v| v.coords.clone()).collect::<Vec<_>>(),
            }))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Skeleton { file } => skeleton(file),
        Command::Links { file } => links(file),
        Command::Homology { file } => homology(file),
        Command::Iso { a, b } => {
            let (ta, tb) = (load_tri(a)?, load_tri(b)?);
            Ok(json!({ "isomorphic": are_isomorphic(&ta, &tb)? }))
        }
        Command::Surface(cmd) => surface(cmd),
        Command::Crush { file, surface, region, assume_theorem1, trace, out_dir } => {
            crush(file, surface, *region, *assume_theorem1, trace.as_deref(), out_dir)
        }
    }
}

/// Runs one command line, returning what would be printed and the exit code.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult { code, stdout: text, stderr: String::new() }
            } else {
                CommandResult { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(v) => CommandResult { code: 0, stdout: pretty(&v), stderr: String::new() },
        Err(e) => CommandResult {
            code: e.exit_code(),
            stdout: pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}})),
            stderr: format!("normcrush: {e}\n"),
        },
    }
}

pub fn main() -> i32 {
    let r = run(std::env::args_os());
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    r.code
}

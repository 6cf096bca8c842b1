//! Acceptance suite: one pass/fail line per criterion, non-zero exit if any
//! criterion fails.

mod common;
mod oracle;

use common::*;
use normcrush::analysis::{homology_h1, sphere_certificate, HomologyGroup};
use normcrush::cellcx::{cc_skeleton, recognize, CellComplex, ComponentClass, ShapeId, DESTRUCTIBLE_SHAPES};
use normcrush::crush::{
    apply_move, crush_pipeline, crushed_complex, cut_along, find_moves, CaseTag, CellOrigin, CrushOptions, CrushResult,
    LinkSummary, MoveKind,
};
use normcrush::normal::{enumerate_bounded, surface_invariants, NormalVector, DEFAULT_WORK_CAP};
use normcrush::tri_core::{are_isomorphic, Triangulation};
use serde_json::Value;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

/// A pipeline run from criteria 1 and 2, kept for criteria 3 and 6.
struct Run {
    label: String,
    t: Triangulation,
    v: NormalVector,
    result: CrushResult,
}

fn run(label: String, t: &Triangulation, v: &NormalVector) -> Result<Run, String> {
    let result = crush_pipeline(t, v, CrushOptions::default()).map_err(|e| format!("{label}: {e}"))?;
    Ok(Run { label, t: t.clone(), v: v.clone(), result })
}

fn trivial_crush_identity(runs: &mut Vec<Run>) -> Outcome {
    let mut slowest = Duration::ZERO;
    let fixtures = corpus_triangulations();
    for (name, t) in &fixtures {
        let start = Instant::now();
        let v = NormalVector::vertex_links(t.tet_count());
        let r = run(format!("{name} vertex links"), t, &v)?;
        let iso = are_isomorphic(&r.result.output, t).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(iso, "{name}: output is not isomorphic to the input");
        ensure!(took < Duration::from_secs(1), "{name}: took {took:?}");
        runs.push(r);
    }
    Ok(format!("{} fixtures, slowest {slowest:.2?}", fixtures.len()))
}

fn tetrahedron_reduction(runs: &mut Vec<Run>) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, t) in corpus_triangulations() {
        for (i, v) in nontrivial_vectors(&t, 1).into_iter().enumerate() {
            let r = run(format!("{name} vector {i}"), &t, &v)?;
            let out = r.result.output.tet_count();
            ensure!(out < t.tet_count(), "{name} vector {i}: {out} output tetrahedra from {}", t.tet_count());
            runs.push(r);
            count += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "sweep took {took:?}");
    Ok(format!("{count} non-trivial vectors, all smaller, {took:.2?}"))
}

fn is_destructible(cell: &normcrush::cellcx::Cell) -> bool {
    recognize(cell).is_some_and(|(s, _)| DESTRUCTIBLE_SHAPES.contains(&s))
}

/// Steps through the logged moves of a run, checking every intermediate
/// complex on its own.
fn replay_checked(r: &Run) -> Result<(Vec<(CellComplex, CellComplex)>, usize), String> {
    let (start, _) = crushed_complex(&r.t, &r.v, None).map_err(|e| format!("{}: {e}", r.label))?;
    let bound = start.len() + start.two_cell_count();
    let mut cur = start;
    cur.canonicalize().map_err(|e| e.to_string())?;
    let mut steps = Vec::new();
    for (i, entry) in r.result.trace.moves.iter().enumerate() {
        ensure!(cur.cells.iter().all(is_destructible), "{}: complex before move {i} leaves the catalog", r.label);
        let m = find_moves(&cur)
            .into_iter()
            .find(|m| m.kind == entry.kind && m.cell == entry.location.cell && m.face == entry.location.face)
            .ok_or_else(|| format!("{}: move {i} not applicable", r.label))?;
        let (next, _) = apply_move(&cur, &m).map_err(|e| format!("{}: move {i}: {e}", r.label))?;
        steps.push((cur, next.clone()));
        cur = next;
    }
    ensure!(r.result.trace.moves.len() <= bound, "{}: {} moves exceed {bound}", r.label, r.result.trace.moves.len());
    ensure!(
        cur.cells.iter().all(|c| recognize(c).is_some_and(|(s, _)| s == ShapeId::Tet)),
        "{}: final complex is not all tetrahedra",
        r.label
    );
    ensure!(find_moves(&cur).is_empty(), "{}: moves remain at the end", r.label);
    Ok((steps, bound))
}

fn scheduler_soundness(runs: &[Run]) -> Outcome {
    let mut moves = 0;
    let mut tight = 0usize;
    for r in runs {
        let (steps, bound) = replay_checked(r)?;
        moves += steps.len();
        tight = tight.max(steps.len() * 100 / bound.max(1));
    }
    Ok(format!("{} runs, {moves} moves, at most {tight}% of the bound", runs.len()))
}

fn pillow_classification() -> Outcome {
    let expected = [
        ("tri_pillow_s3.cc", CaseTag::TriPillowS3),
        ("tri_pillow_l31.cc", CaseTag::TriPillowL31),
        ("tri_pillow_invalid.cc", CaseTag::TriPillowInvalid),
        ("bigon_pillow_s3.cc", CaseTag::BigonPillowS3),
        ("bigon_pillow_rp3.cc", CaseTag::BigonPillowRp3),
        ("bigon_pillow_ideal.cc", CaseTag::BigonPillowIdealRp2xi),
        ("bigon_pillow_invalid.cc", CaseTag::BigonPillowTwoInvalidEdges),
    ];
    let start = Instant::now();
    for (file, tag) in expected {
        let mut c = load_cc(file);
        c.canonicalize().map_err(|e| format!("{file}: {e}"))?;
        let m = find_moves(&c)
            .into_iter()
            .find(|m| matches!(m.kind, MoveKind::TriPillow | MoveKind::BigonPillow))
            .ok_or_else(|| format!("{file}: no pillow move"))?;
        let (after, entry) = apply_move(&c, &m).map_err(|e| format!("{file}: {e}"))?;
        ensure!(entry.case == tag, "{file}: tagged {}, expected {}", entry.case.as_str(), tag.as_str());
        ensure!(after.is_empty(), "{file}: the pillow component was not deleted");
        let class = entry.deltas.deleted_class;
        let want = match tag {
            CaseTag::TriPillowS3 | CaseTag::TriPillowL31 | CaseTag::BigonPillowS3 | CaseTag::BigonPillowRp3 => {
                ComponentClass::Closed
            }
            CaseTag::BigonPillowIdealRp2xi => ComponentClass::Ideal,
            _ => ComponentClass::InvalidBearing,
        };
        ensure!(class == Some(want), "{file}: deleted component classed {class:?}, expected {want:?}");
    }
    for (file, want) in [("s3_one_tet.tri", vec![]), ("lens31.tri", vec![3]), ("rp3.tri", vec![2])] {
        let t = load_tri(file);
        let h = homology_h1(&t).map_err(|e| format!("{file}: {e}"))?;
        ensure!(h == HomologyGroup { betti: 0, torsion: want.clone() }, "{file}: H1 = {h}");
        let o = oracle::truncated_h1(&t).ok_or_else(|| format!("{file}: oracle found an invalid edge"))?;
        ensure!(o == (0, want.clone()), "{file}: oracle H1 = {o:?}");
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(1), "took {took:?}");
    Ok(format!("7 pillow tags and 3 homology groups, {took:.2?}"))
}

fn tet_discs(v: &NormalVector, tet: usize) -> u64 {
    (0..4).map(|c| v.tri(tet, c)).sum::<u64>() + (0..3).map(|k| v.quad(tet, k)).sum::<u64>()
}

fn cut_cell_identities() -> Outcome {
    let start = Instant::now();
    let mut vectors = 0;
    for (name, t) in corpus_triangulations() {
        {
            for v in enumerate_bounded(&t, 2, DEFAULT_WORK_CAP).map_err(|e| format!("{name}: {e}"))? {
                let cut = cut_along(&t, &v).map_err(|e| format!("{name} {:?}: {e}", v.coords))?;
                vectors += 1;
                for tet in 0..t.tet_count() {
                    let mine: Vec<&CellOrigin> = cut.origins.iter().filter(|o| o.tet() == tet).collect();
                    let count = |f: &dyn Fn(&CellOrigin) -> bool| mine.iter().filter(|o| f(o)).count() as u64;
                    let tri: Vec<u64> = (0..4).map(|c| v.tri(tet, c)).collect();
                    let q: u64 = (0..3).map(|k| v.quad(tet, k)).sum();
                    let corner = count(&|o| matches!(o, CellOrigin::Corner { .. }));
                    let par_tri = count(&|o| matches!(o, CellOrigin::ParTri { .. }));
                    let par_quad = count(&|o| matches!(o, CellOrigin::ParQuad { .. }));
                    let wedge = count(&|o| matches!(o, CellOrigin::Wedge { .. }));
                    let central = count(&|o| matches!(o, CellOrigin::Central { .. }));
                    let want = (
                        tri.iter().filter(|&&x| x >= 1).count() as u64,
                        tri.iter().map(|&x| x.saturating_sub(1)).sum::<u64>(),
                        q.saturating_sub(1),
                        if q >= 1 { 2 } else { 0 },
                        if q == 0 { 1 } else { 0 },
                    );
                    ensure!(
                        (corner, par_tri, par_quad, wedge, central) == want,
                        "{name} {:?} tet {tet}: counts {:?}, expected {want:?}",
                        v.coords,
                        (corner, par_tri, par_quad, wedge, central)
                    );
                    ensure!(mine.len() as u64 == tet_discs(&v, tet) + 1, "{name} {:?} tet {tet}: cells != discs + 1", v.coords);
                    let non_parallel = mine.iter().filter(|o| !o.is_parallel()).count();
                    ensure!(non_parallel <= 6, "{name} {:?} tet {tet}: {non_parallel} non-parallel cells", v.coords);
                }
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(120), "took {took:?}");
    Ok(format!("{vectors} vectors at k <= 2, {took:.2?}"))
}

fn sorted(mut v: Vec<LinkSummary>) -> Vec<LinkSummary> {
    v.sort();
    v
}

fn vertex_link_surgery(runs: &[Run]) -> Outcome {
    let mut checked = 0;
    let mut identified = 0;
    for r in runs {
        let (steps, _) = replay_checked(r)?;
        for (i, entry) in r.result.trace.moves.iter().enumerate() {
            if entry.kind != MoveKind::BigonFace || !entry.deltas.identified_edges {
                continue;
            }
            identified += 1;
            let d = &entry.deltas;
            let Some(ok) = d.link_check else { continue };
            ensure!(ok, "{} move {i}: link check failed", r.label);
            ensure!(
                sorted(d.links_predicted.clone()) == sorted(d.links_after.clone()),
                "{} move {i}: predicted {:?}, got {:?}",
                r.label,
                d.links_predicted,
                d.links_after
            );
            // every reported post-move link is a link of the glued complex
            let mut present: Vec<LinkSummary> = cc_skeleton(&steps[i].1)
                .links
                .iter()
                .map(|l| LinkSummary { chi: l.chi, orientable: l.orientable, boundary_circles: l.boundary_circles })
                .collect();
            for l in &d.links_after {
                let at = present.iter().position(|p| p == l).ok_or_else(|| format!("{} move {i}: link {l:?} absent", r.label))?;
                present.swap_remove(at);
            }
            checked += 1;
        }
    }
    ensure!(identified > 0, "no bigon flatten with identified edges occurred");
    Ok(format!("{identified} flattens with identified edges, {checked} checked against the prediction"))
}

fn theorem1_contract() -> Outcome {
    let start = Instant::now();
    let t = load_tri("fig8_filling.tri");
    let v = load_ns("fig8_filling_torus.ns");
    ensure!(!t.has_boundary_faces() && t.is_orientable(), "fixture is not closed and orientable");
    ensure!(!v.is_trivial(), "surface is trivial");
    let found = enumerate_bounded(&t, 1, DEFAULT_WORK_CAP).map_err(|e| e.to_string())?.contains(&v);
    ensure!(found, "surface is not among the bounded enumerator's vectors");
    let cut = cut_along(&t, &v).map_err(|e| e.to_string())?;
    ensure!(cut.component_count == 2 && cut.surface.components.len() == 1, "surface does not separate");

    let out = std::env::temp_dir().join(format!("normcrush-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&out);
    let crush = |region: &str| {
        Command::new(env!("CARGO_BIN_EXE_normcrush"))
            .arg("crush")
            .arg(corpus_path("fig8_filling.tri"))
            .arg("--surface")
            .arg(corpus_path("fig8_filling_torus.ns"))
            .args(["--region", region, "--assume-theorem1", "--out-dir"])
            .arg(&out)
            .output()
            .unwrap()
    };
    let ok = crush("1");
    ensure!(ok.status.code() == Some(0), "exit {:?}: {}", ok.status.code(), String::from_utf8_lossy(&ok.stderr));
    let manifest: Value = serde_json::from_slice(&std::fs::read(out.join("manifest.json")).unwrap()).unwrap();
    let comps = manifest["components"].as_array().unwrap();
    let ideal_benign = comps.iter().filter(|c| c["benign"] == true && c["class"] == "ideal").count();
    ensure!(ideal_benign == 1, "{ideal_benign} benign ideal components");
    let ideal = comps.iter().find(|c| c["benign"] == true && c["class"] == "ideal").unwrap();
    let region = Triangulation::from_json(&std::fs::read_to_string(out.join(ideal["file"].as_str().unwrap())).unwrap()).unwrap();
    for c in comps.iter().filter(|c| c["benign"] == false) {
        let sub = Triangulation::from_json(&std::fs::read_to_string(out.join(c["file"].as_str().unwrap())).unwrap()).unwrap();
        ensure!(sphere_certificate(&sub).passed(), "non-benign {} fails the sphere certificate", c["file"]);
    }
    let others = comps.len() - 1;
    let same_as_fig8 = are_isomorphic(&region, &load_tri("fig8.tri")).unwrap_or(false);

    let bad = crush("0");
    ensure!(bad.status.code() == Some(2), "solid torus side exited {:?}, expected 2", bad.status.code());
    let _ = std::fs::remove_dir_all(&out);
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(format!(
        "one benign ideal component ({} tetrahedra, isomorphic to fig8.tri: {same_as_fig8}), {others} others; violating region exits 2; {took:.2?}",
        region.tet_count()
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut surfaces = 0;
    let mut exhaustive = 0;
    for (name, t) in corpus_triangulations() {
        let count = enumerate_bounded(&t, 1, DEFAULT_WORK_CAP).map_err(|e| format!("{name}: {e}"))?.len() as u64;
        let transfer = oracle::transfer_count(&t, 1);
        ensure!(count == transfer, "{name}: enumerator {count}, transfer oracle {transfer}");
        if t.tet_count() <= 4 {
            let brute = oracle::exhaustive_count(&t, 1);
            ensure!(count == brute, "{name}: enumerator {count}, exhaustive oracle {brute}");
            exhaustive += 1;
        }
        match (homology_h1(&t), oracle::truncated_h1(&t)) {
            (Ok(h), Some((betti, torsion))) => {
                ensure!(h.betti == betti && h.torsion == torsion, "{name}: H1 {h} but oracle ({betti}, {torsion:?})")
            }
            (Err(_), None) => {}
            (h, o) => return Err(format!("{name}: homology {h:?} disagrees with oracle {o:?} on validity")),
        }
        for v in enumerate_bounded(&t, 1, DEFAULT_WORK_CAP).unwrap() {
            let report = surface_invariants(&t, &v).map_err(|e| format!("{name}: {e}"))?;
            let naive = oracle::naive_surface_chi(&t, &v.coords);
            let sum: i64 = report.components.iter().map(|c| c.chi).sum();
            ensure!(report.euler == naive && sum == naive, "{name} {:?}: chi {} / {sum}, naive {naive}", v.coords, report.euler);
            surfaces += 1;
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("counts (exhaustive on {exhaustive} fixtures, transfer on all), homology, {surfaces} surface chi values; {took:.2?}"))
}

fn main() {
    let mut runs = Vec::new();
    let mut criteria: Vec<(&str, Box<dyn FnOnce(&mut Vec<Run>) -> Outcome>)> = vec![
        ("trivial-crush identity", Box::new(trivial_crush_identity)),
        ("tetrahedron reduction", Box::new(tetrahedron_reduction)),
        ("scheduler soundness", Box::new(|r: &mut Vec<Run>| scheduler_soundness(r))),
        ("pillow case classification", Box::new(|_: &mut Vec<Run>| pillow_classification())),
        ("cut-cell identities", Box::new(|_: &mut Vec<Run>| cut_cell_identities())),
        ("vertex-link surgery", Box::new(|r: &mut Vec<Run>| vertex_link_surgery(r))),
        ("theorem contract check", Box::new(|_: &mut Vec<Run>| theorem1_contract())),
        ("oracle equivalence", Box::new(|_: &mut Vec<Run>| oracle_equivalence())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.drain(..).enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut runs)))
            .unwrap_or_else(|p| Err(format!("panicked: {}", p.downcast_ref::<String>().cloned().unwrap_or_default())));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

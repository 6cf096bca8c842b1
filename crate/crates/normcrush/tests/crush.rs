mod common;

use common::*;
use normcrush::analysis::{enumerate_bigon_paths, sphere_certificate, Certificate};
use normcrush::cellcx::{CellComplex, ShapeId};
use normcrush::crush::{
    apply_move, check_theorem1, choose_region, crush_pipeline, crushed_complex, crushed_shape, cut_along, find_moves,
    flatten_all, nondestructive_crush, replay, stamp, CaseTag, CellOrigin, CrushOptions, MoveKind, MoveTrace, Selector,
};
use normcrush::normal::NormalVector;
use normcrush::tri_core::{are_isomorphic, Triangulation};
use normcrush::Error;

fn lone(shape: ShapeId) -> CellComplex {
    let mut c = CellComplex::new();
    c.add_shape(shape, false);
    c
}

#[test]
fn tetrahedra_admit_no_moves() {
    let c = CellComplex::from_triangulation(&load_tri("lens31.tri"));
    assert!(find_moves(&c).is_empty());
}

#[test]
fn lone_football_offers_each_bigon() {
    let c = lone(ShapeId::Football3);
    let moves = find_moves(&c);
    assert_eq!(moves.len(), 3);
    assert!(moves.iter().all(|m| m.kind == MoveKind::BigonFace));
    let flat = flatten_all(&c).unwrap();
    assert!(flat.triangulation.is_empty());
    assert!(flat.trace.moves.iter().any(|e| e.case == CaseTag::UnclassifiedBoundary));
}

#[test]
fn pillow_offers_one_move() {
    let mut c = load_cc("tri_pillow_s3.cc");
    c.canonicalize().unwrap();
    let moves = find_moves(&c);
    assert_eq!(moves.iter().filter(|m| m.kind == MoveKind::TriPillow).count(), 1);
}

#[test]
fn lone_pillows_are_balls() {
    for (shape, tag) in [(ShapeId::TriPillow, CaseTag::TriPillowBall), (ShapeId::BigonPillow, CaseTag::BigonPillowBall)] {
        let c = lone(shape);
        let m = find_moves(&c).into_iter().find(|m| m.kind != MoveKind::BigonFace).unwrap();
        let (after, entry) = apply_move(&c, &m).unwrap();
        assert_eq!(entry.case, tag);
        assert!(after.is_empty());
    }
}

#[test]
fn moves_go_stale() {
    let c = lone(ShapeId::Football3);
    let m = find_moves(&c)[0];
    let (after, _) = apply_move(&c, &m).unwrap();
    assert_ne!(stamp(&after), stamp(&c));
    assert!(matches!(apply_move(&after, &m), Err(Error::StaleMove(_))));
}

#[test]
fn undestructible_cells_are_refused() {
    let c = lone(ShapeId::Corner);
    assert!(matches!(flatten_all(&c), Err(Error::InvalidInput(_))));
}

#[test]
fn zero_vector_cuts_nothing() {
    let t = load_tri("fig8.tri");
    let v = NormalVector::zero(t.tet_count());
    let cut = cut_along(&t, &v).unwrap();
    assert!(cut.remnants.is_empty());
    assert!(cut.origins.iter().all(|o| matches!(o, CellOrigin::Central { .. })));
    assert!(cut.complex.cells.iter().all(|c| c.shape == Some(ShapeId::Tet)));
    let r = crush_pipeline(&t, &v, CrushOptions::default()).unwrap();
    assert!(r.trace.moves.is_empty());
    assert!(are_isomorphic(&r.output, &t).unwrap());
}

#[test]
fn vertex_links_cut_corners() {
    let t = load_tri("rp3.tri");
    let cut = cut_along(&t, &NormalVector::vertex_links(t.tet_count())).unwrap();
    for tet in 0..t.tet_count() {
        let mine: Vec<&CellOrigin> = cut.origins.iter().filter(|o| o.tet() == tet).collect();
        assert_eq!(mine.iter().filter(|o| matches!(o, CellOrigin::Corner { .. })).count(), 4);
        assert_eq!(mine.iter().filter(|o| matches!(o, CellOrigin::Central { .. })).count(), 1);
    }
    let crushed = nondestructive_crush(&cut).unwrap();
    for (o, cell) in cut.origins.iter().zip(&crushed.cells) {
        assert_eq!(cell.shape, Some(crushed_shape(o)));
    }
}

#[test]
fn lone_quad_gives_two_wedges() {
    let t = load_tri("s3_one_tet.tri");
    for v in nontrivial_vectors(&t, 1) {
        if (0..4).all(|c| v.tri(0, c) == 0) && (0..3).map(|k| v.quad(0, k)).sum::<u64>() == 1 {
            let cut = cut_along(&t, &v).unwrap();
            let wedges = cut.origins.iter().filter(|o| matches!(o, CellOrigin::Wedge { .. })).count();
            assert_eq!(wedges, 2);
            assert!(!cut.origins.iter().any(|o| matches!(o, CellOrigin::Central { .. } | CellOrigin::Corner { .. })));
            return;
        }
    }
    panic!("no lone quad on the one-tetrahedron sphere");
}

#[test]
fn region_selection_errors() {
    let t = load_tri("fig8_filling.tri");
    let cut = cut_along(&t, &load_ns("fig8_filling_torus.ns")).unwrap();
    assert!(matches!(choose_region(&cut, Selector::Index(7)), Err(Error::InvalidInput(_))));
    assert_eq!(choose_region(&cut, Selector::Auto).unwrap().region_index, Some(0));
    assert_eq!("auto".parse::<Selector>().unwrap(), Selector::Auto);
    assert!("north".parse::<Selector>().is_err());
}

#[test]
fn one_sided_surfaces_admit_no_region() {
    // a one-sided surface meets its only complementary piece from both sides
    for (name, t) in corpus_triangulations() {
        for v in nontrivial_vectors(&t, 1) {
            let cut = cut_along(&t, &v).unwrap();
            if cut.surface.components.iter().any(|c| c.two_sided == Some(false)) && cut.component_count == 1 {
                let err = choose_region(&cut, Selector::Auto).unwrap_err();
                assert!(matches!(err, Error::NoValidRegion(_)), "{name}: {err}");
            }
        }
    }
}

#[test]
fn knot_exterior_region_satisfies_the_contract() {
    let t = load_tri("fig8_filling.tri");
    let v = load_ns("fig8_filling_torus.ns");
    let opts = CrushOptions { region: Some(Selector::Index(1)), assume_theorem1: true };
    let r = crush_pipeline(&t, &v, opts).unwrap();
    assert_eq!(r.benign_component_ids.len(), 1);
    assert!(are_isomorphic(&r.components[r.benign_component_ids[0]], &load_tri("fig8.tri")).unwrap());
    assert!(r.bad_candidates.is_empty());

    let solid = CrushOptions { region: Some(Selector::Index(0)), assume_theorem1: false };
    let r = crush_pipeline(&t, &v, solid).unwrap();
    assert!(matches!(check_theorem1(&r), Err(Error::PropertyViolation(_))));
}

#[test]
fn traces_round_trip_and_replay() {
    let t = load_tri("lens31.tri");
    for v in nontrivial_vectors(&t, 1) {
        let r = crush_pipeline(&t, &v, CrushOptions::default()).unwrap();
        let text = r.trace.to_json();
        let back = MoveTrace::from_json(&text).unwrap();
        assert_eq!(back, r.trace);
        let (c, _) = crushed_complex(&t, &v, None).unwrap();
        assert_eq!(replay(&c, &back).unwrap().to_triangulation().unwrap(), r.output);
    }
    assert!(matches!(MoveTrace::from_json(r#"{"format":"trace-v0","moves":[]}"#), Err(Error::Format(_))));
}

#[test]
fn tampered_traces_do_not_replay() {
    let t = load_tri("fig8_filling.tri");
    let v = load_ns("fig8_filling_torus.ns");
    let r = crush_pipeline(&t, &v, CrushOptions::default()).unwrap();
    let (c, _) = crushed_complex(&t, &v, None).unwrap();
    let mut trace = r.trace.clone();
    trace.moves.swap(0, 1);
    trace.moves[0].location.cell += 1000;
    assert!(replay(&c, &trace).is_err());
}

#[test]
fn pipeline_is_deterministic() {
    let t = load_tri("fig8_filling.tri");
    let v = load_ns("fig8_filling_torus.ns");
    let a = crush_pipeline(&t, &v, CrushOptions::default()).unwrap();
    let b = crush_pipeline(&t, &v, CrushOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn crushed_bigons_form_paths() {
    let t = load_tri("fig8_filling.tri");
    let (c, _) = crushed_complex(&t, &load_ns("fig8_filling_torus.ns"), Some(Selector::Index(1))).unwrap();
    let paths = enumerate_bigon_paths(&c);
    assert!(!paths.is_empty());
    for p in &paths {
        assert_eq!(p.edges.len(), p.bigons.len() + 1);
        assert_eq!(p.closed, p.edges.first() == p.edges.last());
        assert!(p.truncated_corners <= p.corners);
    }
}

#[test]
fn certificates() {
    assert!(sphere_certificate(&load_tri("s3_one_tet.tri")).passed());
    let fail = |name: &str| match sphere_certificate(&load_tri(name)) {
        Certificate::Fail { reason } => reason,
        Certificate::Pass => panic!("{name} passed"),
    };
    assert!(fail("lens31.tri").contains("H1"), "{}", fail("lens31.tri"));
    assert!(fail("fig8.tri").contains("ideal"));
    assert!(fail("invalid_edge.tri").contains("invalid"));
    assert!(!sphere_certificate(&Triangulation::new(0)).passed());
}

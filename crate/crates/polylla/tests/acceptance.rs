//! Acceptance suite: each test checks one release criterion and prints a
//! single PASS/FAIL line for it (visible with `--nocapture`).

mod common;

use polylla::export::{
    write_meshtxt, write_off, write_stats_json, write_svg, write_vtk, ExportOptions, PhaseTimings,
};
use polylla::generator::{random_delaunay, PointSetSpec};
use polylla::labeling::label_phase;
use polylla::pipeline::run_pipeline;
use polylla::polymesh::verify;
use polylla::repair::{split_nonsimple, RepairState};
use polylla::traversal::build_all;
use polylla::triangle_io::{load_triangle_files, write_triangle_files};
use polylla::Triangulation;

fn check(criterion: usize, description: &str, ok: bool) {
    println!(
        "criterion {criterion}: {} - {description}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {description}");
}

fn mesh(n: usize, seed: u64) -> Triangulation {
    random_delaunay(&PointSetSpec::new(n, seed)).unwrap()
}

/// Region assignment from label + traversal equals brute-force grouping by
/// longest-edge propagation, triangle for triangle, over 100 meshes.
#[test]
fn c01_oracle_equivalence() {
    let mut ok = true;
    for seed in 0..100u64 {
        let n = 10 + (seed as usize) * 4;
        let tri = mesh(n, seed);
        let labels = label_phase(&tri);
        let (simple, nonsimple, _) = build_all(&tri, &labels).unwrap();
        let mut ours = vec![usize::MAX; tri.num_triangles()];
        for poly in simple.iter().chain(&nonsimple) {
            let rep = poly.source_triangles[0];
            for &t in &poly.source_triangles {
                ours[t] = rep;
            }
        }
        let oracle = common::brute_force_regions(&tri);
        if ours != oracle {
            ok = false;
            break;
        }
    }
    check(1, "traversal regions match brute-force grouping on 100 meshes", ok);
}

/// Average triangles and vertices per polygon and the tip share stay in the
/// published ranges for five 10^4-point meshes.
#[test]
fn c02_table_statistics() {
    let mut ok = true;
    for seed in 0..5u64 {
        let tri = mesh(10_000, seed);
        let r = run_pipeline(&tri, false).unwrap();
        let s = &r.stats;
        ok &= (5.5..=6.8).contains(&s.avg_triangles_per_polygon);
        ok &= (7.5..=8.8).contains(&s.avg_vertices_per_polygon);
        ok &= (s.tip_count as f64) < 0.03 * s.input_points as f64;
    }
    check(2, "10^4-point statistics inside published ranges (5 seeds)", ok);
}

/// The mesh's minimum interior angle never drops below the triangulation's,
/// including on a deliberately non-Delaunay input.
#[test]
fn c03_angle_bound() {
    let mut ok = true;
    for seed in [0u64, 1, 2] {
        let tri = mesh(400, seed);
        let r = run_pipeline(&tri, false).unwrap();
        ok &= r.stats.min_interior_angle >= tri.min_angle_deg() - 1e-9;
    }
    let flipped = common::flip_some_edges(&mesh(200, 5), 12);
    assert!(
        !common::delaunay_holds(&flipped),
        "edge flips must break the Delaunay property"
    );
    // Round-trip through the file format so the non-Delaunay case also
    // exercises the parsing path.
    let (node, ele, neigh) = write_triangle_files(&flipped, 17);
    let flipped: Triangulation = load_triangle_files(&node, &ele, Some(&neigh)).unwrap();
    let r = run_pipeline(&flipped, false).unwrap();
    ok &= r.stats.min_interior_angle >= flipped.min_angle_deg() - 1e-9;
    ok &= verify(&r.mesh, &flipped, &r.labels).is_valid();
    check(3, "min interior angle bound holds, Delaunay and non-Delaunay", ok);
}

/// Every input vertex lies on at least one polygon boundary.
#[test]
fn c04_no_isolated_vertices() {
    let mut ok = true;
    for seed in 0..20u64 {
        let tri = mesh(50 + seed as usize * 40, seed);
        let r = run_pipeline(&tri, false).unwrap();
        let mut covered = vec![false; tri.num_vertices()];
        for p in 0..r.mesh.num_polygons() {
            for &v in r.mesh.polygon(p) {
                covered[v] = true;
            }
        }
        ok &= covered.iter().all(|&c| c);
    }
    check(4, "no isolated vertices across 20 meshes", ok);
}

/// Traversal and repair visit counters stay within the proven bound of 3.
#[test]
fn c05_visit_bounds() {
    let mut ok = true;
    for seed in 0..10u64 {
        let tri = mesh(1_000, seed);
        // run_pipeline errors internally if either bound is exceeded.
        match run_pipeline(&tri, false) {
            Ok(r) => ok &= r.visit_counters.iter().all(|&c| c <= 3),
            Err(_) => ok = false,
        }
    }
    check(5, "per-triangle visit counters bounded by 3", ok);
}

/// Every non-simple polygon with |B| tips splits into at most |B| + 1 simple
/// polygons, and a 3-tip polygon splits into exactly 4.
#[test]
fn c06_repair_bound() {
    let mut ok = true;
    let mut saw_three_tip = false;
    for seed in 0..10u64 {
        let tri = mesh(300, seed);
        let mut labels = label_phase(&tri);
        let (_, nonsimple, _) = build_all(&tri, &labels).unwrap();
        let mut state = RepairState::new(tri.num_triangles());
        for poly in &nonsimple {
            let parts = split_nonsimple(&tri, &mut labels, poly, &mut state).unwrap();
            ok &= parts.len() <= poly.tips.len() + 1;
            ok &= parts.iter().all(|p| p.is_simple());
            if poly.tips.len() == 3 {
                saw_three_tip = true;
                ok &= parts.len() == 4;
            }
        }
    }
    ok &= saw_three_tip;
    check(6, "non-simple polygons split into <= |B|+1 parts; 3 tips -> 4", ok);
}

/// Triangle partition, area conservation, and boundary-edge preservation.
#[test]
fn c07_conservation() {
    let mut ok = true;
    for seed in [3u64, 11, 19] {
        let tri = mesh(2_000, seed);
        let r = run_pipeline(&tri, false).unwrap();
        ok &= verify(&r.mesh, &tri, &r.labels).is_valid();
        let mesh_area: f64 = r.mesh.total_area();
        let tri_area: f64 = tri.total_area();
        ok &= (mesh_area - tri_area).abs() <= 1e-9 * tri_area;
        let mut owned = vec![false; tri.num_triangles()];
        for tris in &r.mesh.polygon_triangles {
            for &t in tris {
                ok &= !owned[t];
                owned[t] = true;
            }
        }
        ok &= owned.iter().all(|&o| o);
    }
    check(7, "partition, area, and boundary conservation", ok);
}

/// Per-phase time grows by at most 20x from 10^4 to 10^5 points. Each phase
/// is measured as the best of 5 runs — the minimum filters scheduler noise
/// from concurrently running tests — and sub-100-microsecond denominators
/// are clamped.
#[test]
fn c08_scaling() {
    let best = |tri: &Triangulation| -> PhaseTimings {
        let mut acc = PhaseTimings {
            label_seconds: f64::INFINITY,
            traversal_seconds: f64::INFINITY,
            repair_seconds: f64::INFINITY,
            total_seconds: f64::INFINITY,
        };
        for _ in 0..5 {
            let t = run_pipeline(tri, false).unwrap().timings;
            acc.label_seconds = acc.label_seconds.min(t.label_seconds);
            acc.traversal_seconds = acc.traversal_seconds.min(t.traversal_seconds);
            acc.repair_seconds = acc.repair_seconds.min(t.repair_seconds);
            acc.total_seconds = acc.total_seconds.min(t.total_seconds);
        }
        acc
    };
    let small = best(&mesh(10_000, 1));
    let large = best(&mesh(100_000, 1));
    let ratio = |l: f64, s: f64| l / s.max(1e-4);
    let ok = ratio(large.label_seconds, small.label_seconds) <= 20.0
        && ratio(large.traversal_seconds, small.traversal_seconds) <= 20.0
        && ratio(large.repair_seconds, small.repair_seconds) <= 20.0
        && ratio(large.total_seconds, small.total_seconds) <= 20.0;
    check(8, "10x input grows each phase by at most 20x", ok);
}

/// Identical configuration and seed produce byte-identical exports.
#[test]
fn c09_determinism() {
    let opts = ExportOptions::default();
    let run = || {
        let tri = mesh(1_500, 42);
        let r = run_pipeline(&tri, false).unwrap();
        let stats = write_stats_json(&r.stats, &r.timings).unwrap();
        (
            write_off(&r.mesh, &opts),
            write_vtk(&r.mesh, &opts),
            write_svg(&r.mesh, &opts, None),
            write_meshtxt(&r.mesh, &opts),
            stats,
        )
    };
    let a = run();
    let b = run();
    // Stats JSON carries wall-clock times; compare it with those removed.
    let strip = |text: &str| {
        let mut v: serde_json::Value = serde_json::from_str(text).unwrap();
        let obj = v.as_object_mut().unwrap();
        obj.retain(|k, _| !k.starts_with("time_"));
        v.to_string()
    };
    let ok = a.0 == b.0 && a.1 == b.1 && a.2 == b.2 && a.3 == b.3 && strip(&a.4) == strip(&b.4);
    check(9, "repeat runs are byte-identical (timings excluded)", ok);
}

/// Polygon count lands in the published fraction of the triangle count.
#[test]
fn c10_polygon_economy() {
    let mut ok = true;
    for seed in 0..5u64 {
        let tri = mesh(10_000, seed);
        let r = run_pipeline(&tri, false).unwrap();
        let ratio = r.stats.polygon_count as f64 / r.stats.triangle_count as f64;
        ok &= (0.13..=0.20).contains(&ratio);
    }
    check(10, "polygon/triangle ratio in [0.13, 0.20] at 10^4 points", ok);
}

//! End-to-end orchestration: label, traverse, repair, assemble, and time.
//!
//! Phase timings cover in-memory work only (no file I/O) and are measured
//! with the monotonic clock. Polygon order in the result is deterministic:
//! seed order, with the repair products of a non-simple polyline taking its
//! place.

use crate::error::Result;
use crate::export::PhaseTimings;
use crate::labeling::{label_phase, EdgeLabels};
use crate::polymesh::{assemble, compute_stats, MeshStats, PolyMesh};
use crate::repair::{split_nonsimple, RepairState};
use crate::scalar::Scalar;
use crate::traversal::{build_polygon_counted, Polyline};
use crate::triangulation::Triangulation;
use rayon::prelude::*;
use std::time::Instant;

/// Everything one conversion produces.
#[derive(Debug)]
pub struct PipelineResult<S: Scalar> {
    pub labels: EdgeLabels,
    pub mesh: PolyMesh<S>,
    pub stats: MeshStats<S>,
    pub timings: PhaseTimings,
    /// Interior-edge entries per triangle during traversal (Lemma 1: ≤ 3).
    pub visit_counters: Vec<u32>,
    /// Tip lists of the non-simple polylines found before repair.
    pub tips: Vec<Vec<usize>>,
    pub repair_state: RepairState,
}

/// Runs the three phases over `tri`. With `parallel` the traversal builds
/// polygons across threads; the merge stays in seed order, so results are
/// identical either way.
pub fn run_pipeline<S: Scalar>(tri: &Triangulation<S>, parallel: bool) -> Result<PipelineResult<S>> {
    let start = Instant::now();
    let mut labels = label_phase(tri);
    let label_seconds = start.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let built: Vec<(Polyline, Vec<(usize, u32)>)> = if parallel {
        labels
            .seeds
            .par_iter()
            .map(|&seed| build_polygon_counted(tri, &labels, seed))
            .collect::<Result<_>>()?
    } else {
        labels
            .seeds
            .iter()
            .map(|&seed| build_polygon_counted(tri, &labels, seed))
            .collect::<Result<_>>()?
    };
    let mut visit_counters = vec![0u32; tri.num_triangles()];
    for (_, visits) in &built {
        for &(t, n) in visits {
            visit_counters[t] += n;
            if visit_counters[t] > 3 {
                return Err(crate::error::PolyllaError::Internal(format!(
                    "triangle {t} visited more than 3 times"
                )));
            }
        }
    }
    let traversal_seconds = t1.elapsed().as_secs_f64();

    let t2 = Instant::now();
    let mut state = RepairState::new(tri.num_triangles());
    let mut ordered: Vec<Polyline> = Vec::with_capacity(built.len());
    let mut tips = Vec::new();
    for (poly, _) in built {
        if poly.is_simple() {
            ordered.push(poly);
        } else {
            tips.push(poly.tips.clone());
            ordered.extend(split_nonsimple(tri, &mut labels, &poly, &mut state)?);
        }
    }
    let repair_seconds = t2.elapsed().as_secs_f64();

    let mesh = assemble(tri, &ordered)?;
    let stats = compute_stats(&mesh, tri, &labels, &tips);
    let timings = PhaseTimings {
        label_seconds,
        traversal_seconds,
        repair_seconds,
        total_seconds: start.elapsed().as_secs_f64(),
    };
    Ok(PipelineResult {
        labels,
        mesh,
        stats,
        timings,
        visit_counters,
        tips,
        repair_state: state,
    })
}

//! Phase 2: polygon construction.
//!
//! Each seed triangle identifies one terminal-edge region. The region's
//! boundary is traced as a closed ccw polyline by walking its frontier edges:
//! after emitting a directed boundary edge `(u, v)` the walk rotates around
//! the pivot `v`, crossing internal and terminal edges, until the next
//! boundary edge starting at `v` appears. Because a region is edge-connected
//! through its interior edges and every interior edge is crossed exactly once
//! per direction, a triangle is entered at most once per interior edge — at
//! most 3 times in total.
//!
//! Polylines with repeated vertices are non-simple; the repeats pinpoint
//! barrier-edge tips and are handed to the repair phase verbatim.

use crate::error::{PolyllaError, Result};
use crate::labeling::EdgeLabels;
use crate::scalar::Scalar;
use crate::triangulation::Triangulation;

/// Closed polyline tracing one region boundary in ccw order (the last vertex
/// connects back to the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyline {
    pub vertex_ids: Vec<usize>,
    /// Region triangles consumed building this polyline, ascending.
    pub source_triangles: Vec<usize>,
    /// Barrier-edge tip vertices; empty iff the polyline is simple.
    pub tips: Vec<usize>,
}

impl Polyline {
    pub fn is_simple(&self) -> bool {
        self.tips.is_empty()
    }

    /// Twice the shoelace signed area of the traced boundary. Barrier edges
    /// appear once per direction and cancel, so this equals twice the region
    /// area even for non-simple polylines.
    pub fn signed_area2<S: Scalar>(&self, tri: &Triangulation<S>) -> S {
        let mut acc = S::zero();
        for (i, &a) in self.vertex_ids.iter().enumerate() {
            let b = self.vertex_ids[(i + 1) % self.vertex_ids.len()];
            let pa = tri.point(a);
            let pb = tri.point(b);
            acc = acc + (pa[0] * pb[1] - pb[0] * pa[1]);
        }
        acc
    }
}

/// All triangles of the region containing `seed`: flood fill across
/// internal and terminal edges. Result is ascending.
pub fn region_triangles<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    seed: usize,
) -> Vec<usize> {
    let mut stack = vec![seed];
    let mut out = vec![seed];
    let mut in_region = std::collections::HashSet::new();
    in_region.insert(seed);
    while let Some(t) = stack.pop() {
        for slot in 0..3 {
            if labels.is_region_boundary(t, slot) {
                continue;
            }
            let nb = tri.neighbor(t, slot);
            if in_region.insert(nb) {
                out.push(nb);
                stack.push(nb);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Barrier-edge tips of a closed polyline: every vertex `ids[j]` whose cyclic
/// neighbors `ids[j-1]` and `ids[j+1]` coincide, reported once each.
pub fn detect_tips(vertex_ids: &[usize]) -> Vec<usize> {
    let n = vertex_ids.len();
    if n < 3 {
        return Vec::new();
    }
    let mut tips = Vec::new();
    for j in 0..n {
        if vertex_ids[(j + n - 1) % n] == vertex_ids[(j + 1) % n] {
            let tip = vertex_ids[j];
            if !tips.contains(&tip) {
                tips.push(tip);
            }
        }
    }
    tips
}

/// Builds the boundary polyline of the region containing `seed`.
pub fn build_polygon<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    seed: usize,
) -> Result<Polyline> {
    build_polygon_counted(tri, labels, seed).map(|(p, _)| p)
}

/// As [`build_polygon`], additionally reporting how many times each region
/// triangle was entered through an interior edge during the walk.
pub(crate) fn build_polygon_counted<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    seed: usize,
) -> Result<(Polyline, Vec<(usize, u32)>)> {
    let region = region_triangles(tri, labels, seed);
    let budget = 3 * region.len();
    let mut visits: Vec<(usize, u32)> = region.iter().map(|&t| (t, 0)).collect();
    let bump = |visits: &mut Vec<(usize, u32)>, t: usize| -> Result<()> {
        match visits.binary_search_by_key(&t, |&(tt, _)| tt) {
            Ok(i) => {
                visits[i].1 += 1;
                Ok(())
            }
            Err(_) => Err(PolyllaError::Internal(format!(
                "walk left its region through triangle {t}"
            ))),
        }
    };

    // Deterministic start: lowest region triangle with a boundary edge,
    // lowest such slot. The edge is directed ccw, region on the left.
    let start = region
        .iter()
        .flat_map(|&t| (0..3).map(move |slot| (t, slot)))
        .find(|&(t, slot)| labels.is_region_boundary(t, slot))
        .ok_or_else(|| {
            PolyllaError::Internal(format!("region of seed {seed} has no boundary edge"))
        })?;

    let mut ids = Vec::new();
    let mut crossings = 0usize;
    let (mut t, mut slot) = start;
    loop {
        let (u, _v) = tri.edge_vertices(t, slot);
        ids.push(u);
        // Rotate around the pivot (the head of the current edge) until the
        // next boundary edge; each non-boundary spoke is crossed once.
        loop {
            let next_slot = (slot + 1) % 3;
            if labels.is_region_boundary(t, next_slot) {
                slot = next_slot;
                break;
            }
            let (pivot, w) = tri.edge_vertices(t, next_slot);
            let nb = tri.neighbor(t, next_slot);
            crossings += 1;
            if crossings > budget {
                return Err(PolyllaError::Internal(format!(
                    "polygon walk from seed {seed} exceeded the visit bound"
                )));
            }
            bump(&mut visits, nb)?;
            let nb_slot = tri
                .slot_of_edge(nb, crate::triangulation::EdgeKey::new(w, pivot))
                .ok_or_else(|| {
                    PolyllaError::Internal("neighbor does not share the crossed edge".into())
                })?;
            // In `nb` the crossed edge runs pivot->w, so the pivot keeps its
            // role as edge head and the rotation continues.
            debug_assert_eq!(tri.edge_vertices(nb, nb_slot), (w, pivot));
            t = nb;
            slot = nb_slot;
        }
        if (t, slot) == start {
            break;
        }
    }

    // Canonical rotation: start at the first occurrence of the smallest id.
    let pivot = ids
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    ids.rotate_left(pivot);
    let tips = detect_tips(&ids);
    Ok((
        Polyline {
            vertex_ids: ids,
            source_triangles: region,
            tips,
        },
        visits,
    ))
}

/// Runs polygon construction for every seed. Returns the simple polylines,
/// the non-simple ones (repair-phase input), and the per-triangle count of
/// interior-edge entries, which Lemma 1 bounds by 3.
pub fn build_all<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
) -> Result<(Vec<Polyline>, Vec<Polyline>, Vec<u32>)> {
    let mut simple = Vec::new();
    let mut nonsimple = Vec::new();
    let mut counters = vec![0u32; tri.num_triangles()];
    for &seed in &labels.seeds {
        let (poly, visits) = build_polygon_counted(tri, labels, seed)?;
        for (t, n) in visits {
            counters[t] += n;
            if counters[t] > 3 {
                return Err(PolyllaError::Internal(format!(
                    "triangle {t} visited more than 3 times"
                )));
            }
        }
        if poly.is_simple() {
            simple.push(poly);
        } else {
            nonsimple.push(poly);
        }
    }
    Ok((simple, nonsimple, counters))
}

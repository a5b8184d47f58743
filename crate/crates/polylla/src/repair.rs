//! Phase 3: non-simple polygon reparation.
//!
//! A non-simple polyline pinches at barrier-edge tips. For each tip the
//! internal edges incident to it are enumerated by rotating ccw around the
//! tip starting at its barrier edge; the middle one is promoted to a frontier
//! edge, which cuts the region in two (region interiors are trees of
//! triangles, so one cut always disconnects). The two triangles flanking a
//! promoted edge become new seeds, and polygons are regenerated from the
//! pending seeds, skipping seeds already swallowed by an earlier regeneration.
//! A regenerated polyline that is still non-simple re-enters the loop.

use crate::error::{PolyllaError, Result};
use crate::labeling::{EdgeClass, EdgeLabels};
use crate::scalar::Scalar;
use crate::traversal::{build_polygon_counted, Polyline};
use crate::triangulation::{EdgeKey, Triangulation};

/// Bookkeeping for one repair run.
#[derive(Debug, Clone, Default)]
pub struct RepairState {
    /// Seed triangles produced by promotions, in promotion order.
    pub local_seeds: Vec<usize>,
    /// Pending-seed flags over all triangles; cleared once the triangle is
    /// consumed by a regenerated polygon.
    pub seed_flags: Vec<bool>,
    /// Edges relabeled from internal to frontier, in promotion order.
    pub promoted_edges: Vec<EdgeKey>,
}

impl RepairState {
    pub fn new(num_triangles: usize) -> Self {
        RepairState {
            local_seeds: Vec::new(),
            seed_flags: vec![false; num_triangles],
            promoted_edges: Vec::new(),
        }
    }
}

/// One spoke of the fan around a tip: the triangle it was seen from, the
/// edge slot in that triangle, and its current class.
struct Spoke {
    t: usize,
    slot: usize,
    class: EdgeClass,
}

/// Enumerates all edges incident to `b` in ccw order starting just after the
/// unique boundary-class (barrier) edge at `b`. The barrier itself is last.
fn fan_spokes<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    region: &[usize],
    b: usize,
) -> Result<Vec<Spoke>> {
    let start = *region
        .iter()
        .find(|&&t| tri.tri(t).contains(&b))
        .ok_or_else(|| PolyllaError::Internal(format!("tip vertex {b} not in region")))?;
    let mut spokes = Vec::new();
    let mut t = start;
    loop {
        let j = tri
            .slot_of_vertex(t, b)
            .ok_or_else(|| PolyllaError::Internal("fan walk lost the tip vertex".into()))?;
        // In ccw triangle (b, p, q) the rotation leaves through spoke (b, q),
        // the edge opposite p.
        let out_slot = (j + 1) % 3;
        spokes.push(Spoke {
            t,
            slot: out_slot,
            class: labels.class(t, out_slot),
        });
        t = tri.neighbor(t, out_slot);
        if t == crate::triangulation::BOUNDARY {
            return Err(PolyllaError::Internal(format!(
                "tip vertex {b} lies on the domain boundary"
            )));
        }
        if region.binary_search(&t).is_err() {
            return Err(PolyllaError::Internal(format!(
                "fan around tip {b} left its region"
            )));
        }
        if t == start {
            break;
        }
    }
    // Rotate so a boundary-class spoke comes last and the list reads ccw
    // from it. A tip has exactly one such spoke (its barrier edge); if an
    // earlier promotion added another, the first found anchors the rotation,
    // which keeps the choice deterministic.
    let barrier = spokes
        .iter()
        .position(|s| s.class.is_region_boundary())
        .ok_or_else(|| PolyllaError::Internal(format!("vertex {b} has no barrier edge")))?;
    spokes.rotate_left(barrier + 1);
    Ok(spokes)
}

/// Number of internal edges incident to tip `b` within `region` (ascending
/// triangle list).
pub fn tip_degree<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    region: &[usize],
    b: usize,
) -> Result<usize> {
    let spokes = fan_spokes(tri, labels, region, b)?;
    Ok(spokes
        .iter()
        .filter(|s| s.class == EdgeClass::Internal)
        .count())
}

/// Promotes the middle internal edge incident to tip `b` to a frontier edge:
/// the ⌈deg/2⌉-th internal spoke ccw from the barrier (lower middle for even
/// degree). Returns the promoted edge and its two flanking triangles.
pub fn promote_middle_edge<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &mut EdgeLabels,
    region: &[usize],
    b: usize,
) -> Result<(EdgeKey, (usize, usize))> {
    let spokes = fan_spokes(tri, labels, region, b)?;
    let internals: Vec<&Spoke> = spokes
        .iter()
        .filter(|s| s.class == EdgeClass::Internal)
        .collect();
    if internals.is_empty() {
        return Err(PolyllaError::Internal(format!(
            "tip {b} has no internal edge to promote"
        )));
    }
    let mid = internals[internals.len().div_ceil(2) - 1];
    labels.set_class(tri, mid.t, mid.slot, EdgeClass::Frontier);
    let (u, v) = tri.edge_vertices(mid.t, mid.slot);
    let t2 = tri.neighbor(mid.t, mid.slot);
    Ok((EdgeKey::new(u, v), (mid.t, t2)))
}

/// Splits one non-simple polyline into simple polygons, updating `labels`
/// and accumulating seeds/promotions in `state`.
pub fn split_nonsimple<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &mut EdgeLabels,
    poly: &Polyline,
    state: &mut RepairState,
) -> Result<Vec<Polyline>> {
    let mut out = Vec::new();
    let mut queue = vec![poly.clone()];
    // Each pass promotes at least one internal edge, so the loop is bounded
    // by the region's interior edge count.
    let mut budget = poly.source_triangles.len();
    // Lemma 2: a region triangle is touched by at most one tip fan per
    // vertex, i.e. at most 3 times over the whole repair of this region.
    let mut touched: std::collections::HashMap<usize, u32> = std::collections::HashMap::new();
    while let Some(p) = queue.pop() {
        if budget == 0 {
            return Err(PolyllaError::Internal(
                "non-simple polygon reparation failed to terminate".into(),
            ));
        }
        budget -= 1;
        let mut pending = Vec::new();
        for &b in &p.tips {
            for s in fan_spokes(tri, labels, &p.source_triangles, b)? {
                *touched.entry(s.t).or_insert(0) += 1;
            }
            let (key, (t1, t2)) = promote_middle_edge(tri, labels, &p.source_triangles, b)?;
            state.promoted_edges.push(key);
            state.local_seeds.push(t1);
            state.local_seeds.push(t2);
            state.seed_flags[t1] = true;
            state.seed_flags[t2] = true;
            pending.push(t1);
            pending.push(t2);
        }
        for s in pending {
            if !state.seed_flags[s] {
                continue;
            }
            let (np, _) = build_polygon_counted(tri, labels, s)?;
            for &t in &np.source_triangles {
                state.seed_flags[t] = false;
            }
            if np.is_simple() {
                out.push(np);
            } else {
                queue.push(np);
            }
        }
    }
    if touched.values().any(|&c| c > 3) {
        return Err(PolyllaError::Internal(
            "a triangle was touched more than 3 times during reparation".into(),
        ));
    }
    Ok(out)
}

/// Repairs every non-simple polyline. Returns the replacement simple
/// polygons (in input order, then regeneration order) and the final state.
pub fn repair_all<S: Scalar>(
    tri: &Triangulation<S>,
    labels: &mut EdgeLabels,
    nonsimple: &[Polyline],
) -> Result<(Vec<Polyline>, RepairState)> {
    let mut state = RepairState::new(tri.num_triangles());
    let mut out = Vec::new();
    for poly in nonsimple {
        out.extend(split_nonsimple(tri, labels, poly, &mut state)?);
    }
    Ok((out, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::label_phase;
    use crate::traversal::build_all;
    use crate::triangulation::Triangulation;

    /// Fan of `n` rim vertices around a center; radii chosen so the spoke to
    /// rim vertex 1 is a barrier edge with the center as tip.
    fn fan(radii: &[f64]) -> Triangulation<f64> {
        let n = radii.len();
        let mut verts = vec![0.0, 0.0];
        for (i, r) in radii.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI / n as f64 * i as f64;
            verts.push(r * ang.cos());
            verts.push(r * ang.sin());
        }
        let mut tris = Vec::new();
        for i in 0..n {
            tris.extend_from_slice(&[0, 1 + i, 1 + (i + 1) % n]);
        }
        Triangulation::from_parts(verts, tris, None, None).unwrap()
    }

    fn hexagon() -> Triangulation<f64> {
        fan(&[1.0, 2.0, 1.9, 1.8, 1.7, 1.6])
    }

    #[test]
    fn hexagon_tip_degree_is_four() {
        let t = hexagon();
        let labels = label_phase(&t);
        let region: Vec<usize> = (0..6).collect();
        assert_eq!(tip_degree(&t, &labels, &region, 0).unwrap(), 4);
    }

    #[test]
    fn even_degree_promotes_lower_middle() {
        let t = hexagon();
        let mut labels = label_phase(&t);
        let region: Vec<usize> = (0..6).collect();
        let (key, (t1, t2)) = promote_middle_edge(&t, &mut labels, &region, 0).unwrap();
        // Internal spokes ccw from the barrier (0,1): (0,3), (0,4), (0,5),
        // (0,6); the lower middle of four is the 2nd.
        assert_eq!(key, EdgeKey::new(0, 4));
        let mut pair = [t1, t2];
        pair.sort_unstable();
        assert_eq!(pair, [2, 3]);
        assert_eq!(
            labels.class_of_key(&t, key),
            Some(EdgeClass::Frontier)
        );
    }

    #[test]
    fn odd_degree_promotes_exact_middle() {
        let t = fan(&[1.0, 2.0, 1.9, 1.8, 1.7, 1.6, 1.5]);
        let mut labels = label_phase(&t);
        let region: Vec<usize> = (0..7).collect();
        assert_eq!(tip_degree(&t, &labels, &region, 0).unwrap(), 5);
        let (key, _) = promote_middle_edge(&t, &mut labels, &region, 0).unwrap();
        assert_eq!(key, EdgeKey::new(0, 5));
    }

    #[test]
    fn hexagon_splits_into_two_pentagons() {
        let t = hexagon();
        let mut labels = label_phase(&t);
        let (simple, nonsimple, _) = build_all(&t, &labels).unwrap();
        assert!(simple.is_empty());
        assert_eq!(nonsimple.len(), 1);
        let (repaired, state) = repair_all(&t, &mut labels, &nonsimple).unwrap();
        assert_eq!(repaired.len(), 2);
        assert_eq!(state.promoted_edges, vec![EdgeKey::new(0, 4)]);
        assert_eq!(state.local_seeds.len(), 2);
        let mut tri_union: Vec<usize> = repaired
            .iter()
            .flat_map(|p| p.source_triangles.clone())
            .collect();
        tri_union.sort_unstable();
        assert_eq!(tri_union, (0..6).collect::<Vec<_>>());
        for p in &repaired {
            assert!(p.is_simple());
            assert_eq!(p.vertex_ids.len(), 5);
            // The former tip lies on both new boundaries.
            assert!(p.vertex_ids.contains(&0));
            assert!(p.signed_area2(&t) > 0.0);
        }
        let area: f64 = repaired.iter().map(|p| p.signed_area2(&t) / 2.0).sum();
        let total: f64 = t.total_area();
        assert!((area - total).abs() < 1e-12);
    }

    #[test]
    fn random_mesh_fully_repaired() {
        let spec = crate::generator::PointSetSpec::<f64>::new(1000, 9);
        let t = crate::generator::random_delaunay(&spec).unwrap();
        let mut labels = label_phase(&t);
        let regions = labels.seeds.len();
        let (mut simple, nonsimple, _) = build_all(&t, &labels).unwrap();
        let tips: usize = nonsimple.iter().map(|p| p.tips.len()).sum();
        let (repaired, _) = repair_all(&t, &mut labels, &nonsimple).unwrap();
        simple.extend(repaired);
        assert!(simple.iter().all(|p| p.is_simple()));
        assert!(simple.len() <= regions + tips);
        assert!(simple.len() >= regions);
        // Partition and area preserved end to end.
        let mut seen = vec![false; t.num_triangles()];
        for p in &simple {
            for &tt in &p.source_triangles {
                assert!(!seen[tt]);
                seen[tt] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        let area: f64 = simple.iter().map(|p| p.signed_area2(&t) / 2.0).sum();
        let total: f64 = t.total_area();
        assert!((area - total).abs() <= 1e-9 * total);
    }
}

//! Final polygonal mesh container, statistics, and invariant verification.
//!
//! The mesh is stored as a flat "mesh array": for each polygon its vertex
//! count followed by its ccw vertex indices. Constituent triangles are kept
//! per polygon so the partition invariants remain checkable after assembly.

use crate::error::{PolyllaError, Result};
use crate::labeling::EdgeLabels;
use crate::scalar::Scalar;
use crate::traversal::Polyline;
use crate::triangulation::{EdgeKey, Triangulation, BOUNDARY};
use serde::Serialize;
use std::collections::HashMap;

/// Polygonal mesh in mesh-array layout.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMesh<S> {
    /// Interleaved x, y coordinates, shared with the source triangulation.
    pub vertices: Vec<S>,
    /// Per polygon: vertex count, then that many ccw vertex indices.
    pub mesh_array: Vec<usize>,
    /// Constituent triangle indices per polygon, ascending within a polygon.
    pub polygon_triangles: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

/// Aggregate metrics of one conversion run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshStats<S> {
    pub input_points: usize,
    pub triangle_count: usize,
    pub region_count: usize,
    pub polygon_count: usize,
    pub tip_count: usize,
    pub max_tips_in_one_polygon: usize,
    pub avg_triangles_per_polygon: f64,
    pub avg_vertices_per_polygon: f64,
    pub min_interior_angle: S,
    pub max_interior_angle: S,
}

/// Verification outcome: empty means every invariant holds.
#[derive(Debug, Clone, Default)]
pub struct VerificationReport {
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<S: Scalar> PolyMesh<S> {
    pub fn num_polygons(&self) -> usize {
        self.offsets.len()
    }

    /// The ccw vertex indices of polygon `p`.
    pub fn polygon(&self, p: usize) -> &[usize] {
        let start = self.offsets[p];
        let count = self.mesh_array[start];
        &self.mesh_array[start + 1..start + 1 + count]
    }

    pub fn point(&self, v: usize) -> [S; 2] {
        [self.vertices[2 * v], self.vertices[2 * v + 1]]
    }

    /// Twice the shoelace signed area of polygon `p`.
    pub fn signed_area2(&self, p: usize) -> S {
        let ids = self.polygon(p);
        let mut acc = S::zero();
        for (i, &a) in ids.iter().enumerate() {
            let b = ids[(i + 1) % ids.len()];
            let pa = self.point(a);
            let pb = self.point(b);
            acc = acc + (pa[0] * pb[1] - pb[0] * pa[1]);
        }
        acc
    }

    pub fn total_area(&self) -> S {
        let two = S::one() + S::one();
        (0..self.num_polygons())
            .map(|p| self.signed_area2(p) / two)
            .fold(S::zero(), |acc, a| acc + a)
    }
}

/// Builds the mesh array from simple polylines in their given order.
pub fn assemble<S: Scalar>(
    tri: &Triangulation<S>,
    polylines: &[Polyline],
) -> Result<PolyMesh<S>> {
    let mut mesh_array = Vec::new();
    let mut offsets = Vec::with_capacity(polylines.len());
    let mut polygon_triangles = Vec::with_capacity(polylines.len());
    for poly in polylines {
        if !poly.is_simple() {
            return Err(PolyllaError::Internal(
                "cannot assemble a non-simple polyline".into(),
            ));
        }
        offsets.push(mesh_array.len());
        mesh_array.push(poly.vertex_ids.len());
        mesh_array.extend_from_slice(&poly.vertex_ids);
        polygon_triangles.push(poly.source_triangles.clone());
    }
    let vertices: Vec<S> = (0..tri.num_vertices())
        .flat_map(|v| tri.point(v))
        .collect();
    Ok(PolyMesh {
        vertices,
        mesh_array,
        polygon_triangles,
        offsets,
    })
}

/// Interior angles of polygon `p` in degrees, one per vertex in ccw order.
/// Reflex vertices yield angles above 180.
pub fn interior_angles<S: Scalar>(mesh: &PolyMesh<S>, p: usize) -> Vec<S> {
    let ids = mesh.polygon(p);
    let n = ids.len();
    let two_pi = S::from_f64(std::f64::consts::TAU).expect("constant");
    let rad_to_deg = S::from_f64(180.0 / std::f64::consts::PI).expect("constant");
    (0..n)
        .map(|i| {
            let v = mesh.point(ids[i]);
            let prev = mesh.point(ids[(i + n - 1) % n]);
            let next = mesh.point(ids[(i + 1) % n]);
            let a = [next[0] - v[0], next[1] - v[1]];
            let b = [prev[0] - v[0], prev[1] - v[1]];
            // Angle swept ccw from the outgoing edge to the incoming edge is
            // the interior angle of a ccw polygon.
            let mut ang = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
            if ang < S::zero() {
                ang = ang + two_pi;
            }
            ang * rad_to_deg
        })
        .collect()
}

/// Computes mesh statistics. `tips` holds the tip list of each non-simple
/// polyline encountered before repair.
pub fn compute_stats<S: Scalar>(
    mesh: &PolyMesh<S>,
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
    tips: &[Vec<usize>],
) -> MeshStats<S> {
    let polygon_count = mesh.num_polygons();
    let mut min_angle = S::infinity();
    let mut max_angle = S::neg_infinity();
    let mut vertex_total = 0usize;
    for p in 0..polygon_count {
        vertex_total += mesh.polygon(p).len();
        for ang in interior_angles(mesh, p) {
            min_angle = min_angle.min(ang);
            max_angle = max_angle.max(ang);
        }
    }
    MeshStats {
        input_points: tri.num_vertices(),
        triangle_count: tri.num_triangles(),
        region_count: labels.seeds.len(),
        polygon_count,
        tip_count: tips.iter().map(|t| t.len()).sum(),
        max_tips_in_one_polygon: tips.iter().map(|t| t.len()).max().unwrap_or(0),
        avg_triangles_per_polygon: tri.num_triangles() as f64 / polygon_count as f64,
        avg_vertices_per_polygon: vertex_total as f64 / polygon_count as f64,
        min_interior_angle: min_angle,
        max_interior_angle: max_angle,
    }
}

/// Checks every structural invariant of the assembled mesh against its
/// source triangulation and labels.
pub fn verify<S: Scalar>(
    mesh: &PolyMesh<S>,
    tri: &Triangulation<S>,
    labels: &EdgeLabels,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut push = |msg: String| report.violations.push(msg);

    // Per-polygon: size, simplicity, orientation.
    for p in 0..mesh.num_polygons() {
        let ids = mesh.polygon(p);
        if ids.len() < 3 {
            push(format!("polygon {p} has fewer than 3 vertices"));
            continue;
        }
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            push(format!("polygon {p} repeats a vertex (non-simple)"));
        }
        if mesh.signed_area2(p) <= S::zero() {
            push(format!("polygon {p} is not ccw"));
        }
    }

    // Triangle partition.
    let mut owner = vec![usize::MAX; tri.num_triangles()];
    for (p, tris) in mesh.polygon_triangles.iter().enumerate() {
        for &t in tris {
            if t >= owner.len() {
                push(format!("polygon {p} references unknown triangle {t}"));
            } else if owner[t] != usize::MAX {
                push(format!(
                    "triangle {t} assigned to polygons {} and {p}",
                    owner[t]
                ));
            } else {
                owner[t] = p;
            }
        }
    }
    if let Some(t) = owner.iter().position(|&o| o == usize::MAX) {
        push(format!("triangle {t} belongs to no polygon"));
    }

    // Vertex coverage (no isolated points).
    let mut covered = vec![false; tri.num_vertices()];
    for p in 0..mesh.num_polygons() {
        for &v in mesh.polygon(p) {
            if v >= covered.len() {
                push(format!("polygon {p} references unknown vertex {v}"));
            } else {
                covered[v] = true;
            }
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        push(format!("vertex {v} is isolated (in no polygon)"));
    }

    // Area conservation.
    let mesh_area = mesh.total_area().as_f64();
    let tri_area = tri.total_area().as_f64();
    if (mesh_area - tri_area).abs() > 1e-9 * tri_area.abs() {
        push(format!(
            "area mismatch: polygons cover {mesh_area}, triangulation covers {tri_area}"
        ));
    }

    // Angle lower bound.
    let tri_min = tri.min_angle_deg().as_f64();
    let mesh_min = (0..mesh.num_polygons())
        .flat_map(|p| interior_angles(mesh, p))
        .fold(f64::INFINITY, |acc, a| acc.min(a.as_f64()));
    if mesh.num_polygons() > 0 && mesh_min < tri_min - 1e-9 {
        push(format!(
            "minimum interior angle {mesh_min} fell below the triangulation's {tri_min}"
        ));
    }

    // Polygon edges must be boundary-class edges; domain boundary edges must
    // appear exactly once.
    let mut class_map = HashMap::new();
    for (t, slot, key) in tri.canonical_edges() {
        class_map.insert(key, labels.class(t, slot));
    }
    let mut edge_uses: HashMap<EdgeKey, usize> = HashMap::new();
    for p in 0..mesh.num_polygons() {
        let ids = mesh.polygon(p);
        for (i, &a) in ids.iter().enumerate() {
            let b = ids[(i + 1) % ids.len()];
            let key = EdgeKey::new(a, b);
            match class_map.get(&key) {
                None => push(format!("polygon {p} uses non-triangulation edge {key}")),
                Some(c) if !c.is_region_boundary() => {
                    push(format!("polygon {p} uses interior edge {key}"))
                }
                Some(_) => {}
            }
            *edge_uses.entry(key).or_insert(0) += 1;
        }
    }
    for t in 0..tri.num_triangles() {
        for slot in 0..3 {
            if tri.neighbor(t, slot) == BOUNDARY {
                let (a, b) = tri.edge_vertices(t, slot);
                let key = EdgeKey::new(a, b);
                if edge_uses.get(&key).copied().unwrap_or(0) != 1 {
                    push(format!("domain boundary edge {key} not traced exactly once"));
                }
            }
        }
    }

    if mesh.num_polygons() > tri.num_triangles() {
        push("more polygons than triangles".into());
    }

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labeling::label_phase;
    use crate::traversal::build_all;

    fn unit_square() -> Triangulation<f64> {
        Triangulation::from_parts(
            vec![0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0],
            vec![0, 1, 2, 0, 2, 3],
            None,
            None,
        )
        .unwrap()
    }

    fn square_mesh() -> (Triangulation<f64>, EdgeLabels, PolyMesh<f64>) {
        let t = unit_square();
        let labels = label_phase(&t);
        let (simple, nonsimple, _) = build_all(&t, &labels).unwrap();
        assert!(nonsimple.is_empty());
        let mesh = assemble(&t, &simple).unwrap();
        (t, labels, mesh)
    }

    #[test]
    fn square_mesh_array_layout() {
        let (_, _, mesh) = square_mesh();
        assert_eq!(mesh.mesh_array, vec![4, 0, 1, 2, 3]);
        assert_eq!(mesh.polygon(0), &[0, 1, 2, 3]);
        assert_eq!(mesh.total_area(), 1.0);
    }

    #[test]
    fn single_triangle_layout() {
        let t = Triangulation::from_parts(
            vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0],
            vec![0, 1, 2],
            None,
            None,
        )
        .unwrap();
        let labels = label_phase(&t);
        let (simple, _, _) = build_all(&t, &labels).unwrap();
        let mesh = assemble(&t, &simple).unwrap();
        assert_eq!(mesh.mesh_array, vec![3, 0, 1, 2]);
        let angles = interior_angles(&mesh, 0);
        let sum: f64 = angles.iter().sum();
        assert!((sum - 180.0).abs() < 1e-9);
        assert!(angles.iter().any(|a| (a - 90.0).abs() < 1e-9));
    }

    #[test]
    fn square_angles_are_right() {
        let (_, _, mesh) = square_mesh();
        for a in interior_angles(&mesh, 0) {
            assert!((a - 90.0).abs() < 1e-9);
        }
    }

    #[test]
    fn l_shape_has_reflex_angle() {
        // Unit square minus the upper-right quadrant, traced ccw.
        let mesh = PolyMesh {
            vertices: vec![
                0.0, 0.0, 1.0, 0.0, 1.0, 0.5, 0.5, 0.5, 0.5, 1.0, 0.0, 1.0,
            ],
            mesh_array: vec![6, 0, 1, 2, 3, 4, 5],
            polygon_triangles: vec![vec![]],
            offsets: vec![0],
        };
        let angles = interior_angles(&mesh, 0);
        let sum: f64 = angles.iter().sum();
        assert!((sum - 720.0).abs() < 1e-6);
        assert_eq!(angles.iter().filter(|&&a| (a - 270.0).abs() < 1e-9).count(), 1);
    }

    #[test]
    fn square_stats() {
        let (t, labels, mesh) = square_mesh();
        let stats = compute_stats(&mesh, &t, &labels, &[]);
        assert_eq!(stats.polygon_count, 1);
        assert_eq!(stats.region_count, 1);
        assert_eq!(stats.avg_triangles_per_polygon, 2.0);
        assert_eq!(stats.avg_vertices_per_polygon, 4.0);
        assert_eq!(stats.tip_count, 0);
        assert!((stats.min_interior_angle - 90.0).abs() < 1e-9);
        assert!((stats.max_interior_angle - 90.0).abs() < 1e-9);
    }

    #[test]
    fn verify_passes_and_catches_corruption() {
        let (t, labels, mesh) = square_mesh();
        assert!(verify(&mesh, &t, &labels).is_valid());

        // Duplicate triangle assignment.
        let mut bad = mesh.clone();
        bad.polygon_triangles[0].push(0);
        let report = verify(&bad, &t, &labels);
        assert!(report.violations.iter().any(|v| v.contains("assigned")));

        // Clockwise polygon.
        let mut cw = mesh.clone();
        cw.mesh_array = vec![4, 3, 2, 1, 0];
        let report = verify(&cw, &t, &labels);
        assert!(report.violations.iter().any(|v| v.contains("not ccw")));
    }
}

//! Indexed triangulation model.
//!
//! The triangulation is stored in three flat arrays: interleaved vertex
//! coordinates, triangle-vertex indices (ccw) and triangle-neighbor indices.
//! The neighbor at slot `3i + k` lies across the edge opposite local vertex
//! `k` of triangle `i`, so edge `(3i+0, 3i+1)` pairs with neighbor slot
//! `3i+2` and cyclically. Boundary slots hold the [`BOUNDARY`] sentinel.

use crate::error::{PolyllaError, Result};
use crate::predicates::{orient2d, Orientation};
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::fmt;

/// Sentinel stored in a neighbor slot when the edge lies on the domain
/// boundary.
pub const BOUNDARY: usize = usize::MAX;

/// Canonical undirected edge identity: vertex pair with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub lo: usize,
    pub hi: usize,
}

impl EdgeKey {
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b, "degenerate edge");
        if a < b {
            EdgeKey { lo: a, hi: b }
        } else {
            EdgeKey { lo: b, hi: a }
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A single violation found by [`Triangulation::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    IndexOutOfRange { triangle: usize },
    RepeatedVertex { triangle: usize },
    NotCcw { triangle: usize },
    ZeroArea { triangle: usize },
    AsymmetricNeighbor { triangle: usize, slot: usize },
    NonManifoldEdge { edge: EdgeKey },
    BadEdgeMultiplicity { edge: EdgeKey, count: usize },
    DuplicateVertex { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IndexOutOfRange { triangle } => {
                write!(f, "triangle {triangle}: vertex or neighbor index out of range")
            }
            Violation::RepeatedVertex { triangle } => {
                write!(f, "triangle {triangle}: repeated vertex index")
            }
            Violation::NotCcw { triangle } => write!(f, "triangle {triangle}: not ccw"),
            Violation::ZeroArea { triangle } => write!(f, "triangle {triangle}: zero area"),
            Violation::AsymmetricNeighbor { triangle, slot } => {
                write!(f, "triangle {triangle} slot {slot}: neighbor relation not symmetric")
            }
            Violation::NonManifoldEdge { edge } => {
                write!(f, "edge {edge}: shared by more than two triangles")
            }
            Violation::BadEdgeMultiplicity { edge, count } => {
                write!(f, "edge {edge}: appears {count} times")
            }
            Violation::DuplicateVertex { a, b } => {
                write!(f, "vertices {a} and {b}: duplicate coordinates")
            }
        }
    }
}

/// Validation outcome; empty report means the triangulation is valid.
#[derive(Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Immutable indexed triangulation. See the module docs for the array layout.
#[derive(Debug, Clone)]
pub struct Triangulation<S> {
    vertices: Vec<S>,
    triangles: Vec<usize>,
    neighbors: Vec<usize>,
    constrained: Option<Vec<bool>>,
}

impl<S: Scalar> Triangulation<S> {
    /// Builds a triangulation from raw arrays, normalizing every triangle to
    /// ccw orientation and reconstructing neighbors when absent. Fails on
    /// out-of-range indices, zero-area triangles, non-manifold edges and
    /// asymmetric neighbor arrays.
    pub fn from_parts(
        vertices: Vec<S>,
        mut triangles: Vec<usize>,
        neighbors: Option<Vec<usize>>,
        constrained: Option<Vec<bool>>,
    ) -> Result<Self> {
        if !vertices.len().is_multiple_of(2) {
            return Err(PolyllaError::Geometry(
                "vertex array must hold (x, y) pairs".into(),
            ));
        }
        if !triangles.len().is_multiple_of(3) {
            return Err(PolyllaError::Topology(
                "triangle array length must be a multiple of 3".into(),
            ));
        }
        let n = vertices.len() / 2;
        let m = triangles.len() / 3;
        for (i, &v) in triangles.iter().enumerate() {
            if v >= n {
                return Err(PolyllaError::Topology(format!(
                    "triangle {} references vertex {v} but only {n} vertices exist",
                    i / 3
                )));
            }
        }
        let mut neighbors = match neighbors {
            Some(nb) => {
                if nb.len() != triangles.len() {
                    return Err(PolyllaError::Topology(
                        "neighbor array length must match triangle array".into(),
                    ));
                }
                for (i, &t) in nb.iter().enumerate() {
                    if t != BOUNDARY && t >= m {
                        return Err(PolyllaError::Topology(format!(
                            "neighbor slot {i} references triangle {t} but only {m} exist"
                        )));
                    }
                }
                nb
            }
            None => build_neighbors(&triangles)?,
        };

        // Orientation normalization: swapping local vertices 1 and 2 flips a
        // cw triangle to ccw; the opposite-vertex neighbor slots 1 and 2 swap
        // with them.
        for t in 0..m {
            let (a, b, c) = (triangles[3 * t], triangles[3 * t + 1], triangles[3 * t + 2]);
            if a == b || b == c || a == c {
                return Err(PolyllaError::Geometry(format!(
                    "triangle {t}: repeated vertex index"
                )));
            }
            let pa = [vertices[2 * a], vertices[2 * a + 1]];
            let pb = [vertices[2 * b], vertices[2 * b + 1]];
            let pc = [vertices[2 * c], vertices[2 * c + 1]];
            match orient2d(pa, pb, pc) {
                Orientation::Ccw => {}
                Orientation::Cw => {
                    triangles.swap(3 * t + 1, 3 * t + 2);
                    neighbors.swap(3 * t + 1, 3 * t + 2);
                }
                Orientation::Collinear => {
                    return Err(PolyllaError::Geometry(format!("triangle {t}: zero area")))
                }
            }
        }

        let tri = Triangulation {
            vertices,
            triangles,
            neighbors,
            constrained,
        };
        let report = tri.validate();
        if let Some(v) = report.violations.first() {
            return Err(match v {
                Violation::NonManifoldEdge { .. }
                | Violation::AsymmetricNeighbor { .. }
                | Violation::BadEdgeMultiplicity { .. }
                | Violation::IndexOutOfRange { .. } => PolyllaError::Topology(v.to_string()),
                _ => PolyllaError::Geometry(v.to_string()),
            });
        }
        Ok(tri)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len() / 3
    }

    pub fn vertex_coords(&self) -> &[S] {
        &self.vertices
    }

    pub fn triangle_indices(&self) -> &[usize] {
        &self.triangles
    }

    pub fn neighbor_indices(&self) -> &[usize] {
        &self.neighbors
    }

    pub fn constrained_flags(&self) -> Option<&[bool]> {
        self.constrained.as_deref()
    }

    pub fn point(&self, v: usize) -> [S; 2] {
        [self.vertices[2 * v], self.vertices[2 * v + 1]]
    }

    /// Vertex indices of triangle `t` in ccw order.
    pub fn tri(&self, t: usize) -> [usize; 3] {
        [
            self.triangles[3 * t],
            self.triangles[3 * t + 1],
            self.triangles[3 * t + 2],
        ]
    }

    /// Neighbor across the edge opposite local vertex `slot` of triangle `t`.
    pub fn neighbor(&self, t: usize, slot: usize) -> usize {
        self.neighbors[3 * t + slot]
    }

    /// The ccw-ordered endpoints of the edge opposite local vertex `slot`.
    pub fn edge_vertices(&self, t: usize, slot: usize) -> (usize, usize) {
        assert!(slot < 3, "edge slot out of range: {slot}");
        (
            self.triangles[3 * t + (slot + 1) % 3],
            self.triangles[3 * t + (slot + 2) % 3],
        )
    }

    /// Canonical key and exact squared Euclidean length of the edge at
    /// `slot`. Squared lengths keep the longest-edge order free of rounding
    /// introduced by square roots.
    pub fn edge_geometry(&self, t: usize, slot: usize) -> (EdgeKey, S) {
        let (a, b) = self.edge_vertices(t, slot);
        let pa = self.point(a);
        let pb = self.point(b);
        let dx = pb[0] - pa[0];
        let dy = pb[1] - pa[1];
        (EdgeKey::new(a, b), dx * dx + dy * dy)
    }

    /// Local slot of vertex `v` in triangle `t`.
    pub fn slot_of_vertex(&self, t: usize, v: usize) -> Option<usize> {
        (0..3).find(|&k| self.triangles[3 * t + k] == v)
    }

    /// Local slot whose opposite edge is `key`.
    pub fn slot_of_edge(&self, t: usize, key: EdgeKey) -> Option<usize> {
        (0..3).find(|&k| {
            let (a, b) = self.edge_vertices(t, k);
            EdgeKey::new(a, b) == key
        })
    }

    /// Twice the signed area of triangle `t`.
    pub fn signed_area2(&self, t: usize) -> S {
        let [a, b, c] = self.tri(t);
        let pa = self.point(a);
        let pb = self.point(b);
        let pc = self.point(c);
        (pb[0] - pa[0]) * (pc[1] - pa[1]) - (pb[1] - pa[1]) * (pc[0] - pa[0])
    }

    /// Total area of the triangulated domain.
    pub fn total_area(&self) -> S {
        let two = S::one() + S::one();
        (0..self.num_triangles())
            .map(|t| self.signed_area2(t) / two)
            .fold(S::zero(), |acc, a| acc + a)
    }

    /// Minimum interior angle over all triangles, in degrees.
    pub fn min_angle_deg(&self) -> S {
        let mut min = S::infinity();
        for t in 0..self.num_triangles() {
            let [a, b, c] = self.tri(t);
            let pts = [self.point(a), self.point(b), self.point(c)];
            for k in 0..3 {
                let p = pts[k];
                let q = pts[(k + 1) % 3];
                let r = pts[(k + 2) % 3];
                let u = [q[0] - p[0], q[1] - p[1]];
                let v = [r[0] - p[0], r[1] - p[1]];
                let cross = u[0] * v[1] - u[1] * v[0];
                let dot = u[0] * v[0] + u[1] * v[1];
                let ang = cross.atan2(dot).abs().to_degrees();
                if ang < min {
                    min = ang;
                }
            }
        }
        min
    }

    /// Each undirected edge exactly once, as `(triangle, slot, key)`. The
    /// representative is the incident triangle with the smaller index.
    pub fn canonical_edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKey)> + '_ {
        (0..self.num_triangles()).flat_map(move |t| {
            (0..3).filter_map(move |k| {
                let nb = self.neighbor(t, k);
                if nb == BOUNDARY || t < nb {
                    let (a, b) = self.edge_vertices(t, k);
                    Some((t, k, EdgeKey::new(a, b)))
                } else {
                    None
                }
            })
        })
    }

    /// Number of boundary edges.
    pub fn boundary_edge_count(&self) -> usize {
        self.neighbors.iter().filter(|&&n| n == BOUNDARY).count()
    }

    /// One incident triangle per vertex (`BOUNDARY` for unused vertices).
    pub fn vertex_triangle_map(&self) -> Vec<usize> {
        let mut map = vec![BOUNDARY; self.num_vertices()];
        for t in 0..self.num_triangles() {
            for &v in &self.tri(t) {
                if map[v] == BOUNDARY {
                    map[v] = t;
                }
            }
        }
        map
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.num_vertices();
        let m = self.num_triangles();

        for t in 0..m {
            let [a, b, c] = self.tri(t);
            if a >= n || b >= n || c >= n {
                report.violations.push(Violation::IndexOutOfRange { triangle: t });
                continue;
            }
            if a == b || b == c || a == c {
                report.violations.push(Violation::RepeatedVertex { triangle: t });
                continue;
            }
            match orient2d(self.point(a), self.point(b), self.point(c)) {
                Orientation::Ccw => {}
                Orientation::Cw => report.violations.push(Violation::NotCcw { triangle: t }),
                Orientation::Collinear => {
                    report.violations.push(Violation::ZeroArea { triangle: t })
                }
            }
            for k in 0..3 {
                let nb = self.neighbor(t, k);
                if nb == BOUNDARY {
                    continue;
                }
                if nb >= m {
                    report.violations.push(Violation::IndexOutOfRange { triangle: t });
                    continue;
                }
                let (ea, eb) = self.edge_vertices(t, k);
                let key = EdgeKey::new(ea, eb);
                // The neighbor must point back across the same two vertices.
                let back = self.slot_of_edge(nb, key);
                match back {
                    Some(s) if self.neighbor(nb, s) == t => {}
                    _ => report
                        .violations
                        .push(Violation::AsymmetricNeighbor { triangle: t, slot: k }),
                }
            }
        }

        // Edge multiset: interior edges twice, boundary edges once, with the
        // boundary status taken from the neighbor array.
        let mut counts: HashMap<EdgeKey, (usize, bool)> = HashMap::new();
        for t in 0..m {
            for k in 0..3 {
                let (a, b) = self.edge_vertices(t, k);
                if a != b {
                    let entry = counts.entry(EdgeKey::new(a, b)).or_insert((0, false));
                    entry.0 += 1;
                    entry.1 |= self.neighbor(t, k) == BOUNDARY;
                }
            }
        }
        for (edge, (count, boundary)) in counts {
            if count > 2 {
                report.violations.push(Violation::NonManifoldEdge { edge });
            } else {
                let expected = if boundary { 1 } else { 2 };
                if count != expected {
                    report
                        .violations
                        .push(Violation::BadEdgeMultiplicity { edge, count });
                }
            }
        }

        // Duplicate vertex coordinates.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let pa = self.point(a);
            let pb = self.point(b);
            pa.partial_cmp(&pb).unwrap_or(std::cmp::Ordering::Equal)
        });
        for w in order.windows(2) {
            if self.point(w[0]) == self.point(w[1]) {
                report.violations.push(Violation::DuplicateVertex {
                    a: w[0].min(w[1]),
                    b: w[0].max(w[1]),
                });
            }
        }

        report.violations.sort_by_key(|v| format!("{v:?}"));
        report
    }
}

/// Reconstructs the neighbor array from triangle-vertex indices, honoring the
/// opposite-vertex slot convention. Boundary slots receive [`BOUNDARY`].
pub fn build_neighbors(triangles: &[usize]) -> Result<Vec<usize>> {
    let m = triangles.len() / 3;
    let mut incidence: HashMap<EdgeKey, Vec<(usize, usize)>> = HashMap::new();
    for t in 0..m {
        for k in 0..3 {
            let a = triangles[3 * t + (k + 1) % 3];
            let b = triangles[3 * t + (k + 2) % 3];
            if a == b {
                return Err(PolyllaError::Geometry(format!(
                    "triangle {t}: repeated vertex index"
                )));
            }
            incidence.entry(EdgeKey::new(a, b)).or_default().push((t, k));
        }
    }
    let mut neighbors = vec![BOUNDARY; triangles.len()];
    for (key, slots) in incidence {
        match slots.as_slice() {
            [_] => {}
            [(t1, k1), (t2, k2)] => {
                neighbors[3 * t1 + k1] = *t2;
                neighbors[3 * t2 + k2] = *t1;
            }
            _ => {
                return Err(PolyllaError::Topology(format!(
                    "edge {key} shared by {} triangles",
                    slots.len()
                )))
            }
        }
    }
    Ok(neighbors)
}

//! Label phase: longest-edge marks, edge classification and seed collection.
//!
//! Edges are ordered by the strict total order (squared length, then
//! lexicographic [`EdgeKey`]). Ties between equal-length edges are therefore
//! broken deterministically and consistently on both sides of a shared edge,
//! which rules out regions without a terminal edge: along any Lepp the crossed
//! edges strictly increase under this order, so every walk terminates.

use crate::scalar::Scalar;
use crate::triangulation::{EdgeKey, Triangulation, BOUNDARY};
use std::cmp::Ordering;

/// Classification of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    /// Longest edge of neither incident triangle, or any non-terminal
    /// boundary edge. Frontier edges form polygon boundaries.
    Frontier,
    /// Longest edge of exactly one incident triangle; interior to a region.
    Internal,
    /// Longest edge of both incident triangles.
    Terminal,
    /// Boundary edge that is the longest edge of its unique triangle.
    BoundaryTerminal,
}

impl EdgeClass {
    /// Whether this edge lies on a region (polygon) boundary.
    pub fn is_region_boundary(self) -> bool {
        matches!(self, EdgeClass::Frontier | EdgeClass::BoundaryTerminal)
    }
}

/// Output of the label phase.
///
/// The per-edge classification is stored per half-edge slot (`3t + k`,
/// mirrored on both sides of interior edges) instead of in a map keyed by
/// [`EdgeKey`]: same O(1) lookup, no hashing on the hot path.
#[derive(Debug, Clone)]
pub struct EdgeLabels {
    /// Per-triangle local slot (0..2) of its longest edge.
    pub longest_slot: Vec<u8>,
    class: Vec<EdgeClass>,
    /// One seed triangle per terminal-edge region, in canonical edge order.
    pub seeds: Vec<usize>,
}

impl EdgeLabels {
    pub fn class(&self, t: usize, slot: usize) -> EdgeClass {
        self.class[3 * t + slot]
    }

    /// Classification looked up by canonical key; `None` if the key names no
    /// edge of `tri`.
    pub fn class_of_key<S: Scalar>(&self, tri: &Triangulation<S>, key: EdgeKey) -> Option<EdgeClass> {
        (0..tri.num_triangles()).find_map(|t| {
            tri.slot_of_edge(t, key).map(|k| self.class(t, k))
        })
    }

    /// Relabels the edge at `(t, slot)` (and its twin) as `class`.
    pub(crate) fn set_class<S: Scalar>(
        &mut self,
        tri: &Triangulation<S>,
        t: usize,
        slot: usize,
        class: EdgeClass,
    ) {
        self.class[3 * t + slot] = class;
        let nb = tri.neighbor(t, slot);
        if nb != BOUNDARY {
            let (a, b) = tri.edge_vertices(t, slot);
            let twin = tri
                .slot_of_edge(nb, EdgeKey::new(a, b))
                .expect("neighbor shares the edge");
            self.class[3 * nb + twin] = class;
        }
    }

    pub fn is_region_boundary(&self, t: usize, slot: usize) -> bool {
        self.class(t, slot).is_region_boundary()
    }
}

/// Strict total order on edges: squared length first, canonical key second.
fn edge_order<S: Scalar>(a: &(EdgeKey, S), b: &(EdgeKey, S)) -> Ordering {
    a.1.partial_cmp(&b.1)
        .expect("finite edge length")
        .then_with(|| a.0.cmp(&b.0))
}

/// Marks each triangle's longest edge under the total order.
pub fn longest_edges<S: Scalar>(tri: &Triangulation<S>) -> Vec<u8> {
    (0..tri.num_triangles())
        .map(|t| {
            (0..3)
                .map(|k| (k, tri.edge_geometry(t, k)))
                .max_by(|a, b| edge_order(&a.1, &b.1))
                .map(|(k, _)| k as u8)
                .expect("triangle has three edges")
        })
        .collect()
}

/// Classifies every edge of the triangulation. Seeds are left empty; use
/// [`collect_seeds`] or [`label_phase`].
pub fn classify_edges<S: Scalar>(tri: &Triangulation<S>, longest_slot: &[u8]) -> EdgeLabels {
    let mut class = vec![EdgeClass::Frontier; 3 * tri.num_triangles()];
    for (t, k, key) in tri.canonical_edges() {
        let nb = tri.neighbor(t, k);
        let c = if nb == BOUNDARY {
            if longest_slot[t] as usize == k {
                EdgeClass::BoundaryTerminal
            } else {
                EdgeClass::Frontier
            }
        } else {
            let twin = tri.slot_of_edge(nb, key).expect("symmetric neighbor");
            match (
                longest_slot[t] as usize == k,
                longest_slot[nb] as usize == twin,
            ) {
                (true, true) => EdgeClass::Terminal,
                (false, false) => EdgeClass::Frontier,
                _ => EdgeClass::Internal,
            }
        };
        class[3 * t + k] = c;
        if nb != BOUNDARY {
            let twin = tri.slot_of_edge(nb, key).expect("symmetric neighbor");
            class[3 * nb + twin] = c;
        }
    }
    EdgeLabels {
        longest_slot: longest_slot.to_vec(),
        class,
        seeds: Vec::new(),
    }
}

/// One seed triangle per terminal edge: the smaller incident triangle index
/// for interior terminal edges, the unique triangle for boundary ones.
pub fn collect_seeds<S: Scalar>(tri: &Triangulation<S>, labels: &EdgeLabels) -> Vec<usize> {
    tri.canonical_edges()
        .filter_map(|(t, k, _)| match labels.class(t, k) {
            // Canonical representatives already carry the smaller index.
            EdgeClass::Terminal | EdgeClass::BoundaryTerminal => Some(t),
            _ => None,
        })
        .collect()
}

/// Runs the complete label phase.
pub fn label_phase<S: Scalar>(tri: &Triangulation<S>) -> EdgeLabels {
    let longest = longest_edges(tri);
    let mut labels = classify_edges(tri, &longest);
    labels.seeds = collect_seeds(tri, &labels);
    labels
}

/// Longest-edge propagation path starting at triangle `t`: each successor is
/// the neighbor across the current triangle's longest edge; the walk ends at
/// a terminal or boundary-terminal edge.
pub fn lepp<S: Scalar>(tri: &Triangulation<S>, longest_slot: &[u8], t: usize) -> Vec<usize> {
    let mut path = vec![t];
    let mut cur = t;
    loop {
        let slot = longest_slot[cur] as usize;
        let nb = tri.neighbor(cur, slot);
        if nb == BOUNDARY {
            // Boundary terminal edge.
            return path;
        }
        let key = {
            let (a, b) = tri.edge_vertices(cur, slot);
            EdgeKey::new(a, b)
        };
        let nb_slot = longest_slot[nb] as usize;
        let nb_key = {
            let (a, b) = tri.edge_vertices(nb, nb_slot);
            EdgeKey::new(a, b)
        };
        if nb_key == key {
            // Terminal edge: both triangles agree on their longest edge.
            return path;
        }
        debug_assert!(
            !path.contains(&nb),
            "Lepp revisited triangle {nb}: crossed edges must strictly increase"
        );
        path.push(nb);
        cur = nb;
    }
}

/// Canonical terminal edge reached by `lepp` from `t`; identifies the region
/// containing `t`. The walk stops at the triangle whose longest edge is the
/// terminal edge, so that edge is the last triangle's longest.
pub fn terminal_edge_of<S: Scalar>(
    tri: &Triangulation<S>,
    longest_slot: &[u8],
    t: usize,
) -> EdgeKey {
    let path = lepp(tri, longest_slot, t);
    let end = *path.last().expect("non-empty path");
    let slot = longest_slot[end] as usize;
    let (a, b) = tri.edge_vertices(end, slot);
    EdgeKey::new(a, b)
}

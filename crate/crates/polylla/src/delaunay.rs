//! Incremental Delaunay triangulation used by the point-set generator.
//!
//! Classic Bowyer-Watson-by-flipping construction: points are inserted in
//! Hilbert-curve order, located by a visibility walk, and the structure is
//! restored with recursive edge legalization. The convex hull is closed with
//! "ghost" faces through a single infinite vertex so every edge has exactly
//! two incident faces during construction.
//!
//! Co-circular legalization ties are resolved deterministically: the diagonal
//! with the lexicographically smaller vertex-index pair wins. Every tie flip
//! strictly decreases that pair, so the result is unique for a given input
//! order.

use crate::error::{PolyllaError, Result};
use crate::predicates::{incircle, orient2d, Orientation};
use crate::scalar::Scalar;
use crate::triangulation::{EdgeKey, Triangulation};
use std::cmp::Ordering;

/// Infinite-vertex sentinel inside the builder.
const INF: usize = usize::MAX;

/// Builds the Delaunay triangulation of `points`. Vertex indices in the
/// result refer to the input slice; exact duplicate points are an error, as
/// is a fully collinear input.
pub fn triangulate<S: Scalar>(points: &[[S; 2]]) -> Result<Triangulation<S>> {
    if points.len() < 3 {
        return Err(PolyllaError::Geometry(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let order = hilbert_order(points);
    let mut builder = Builder::new(points);
    builder.run(&order)?;
    let triangles = builder.finite_triangles();
    let vertices: Vec<S> = points.iter().flat_map(|p| [p[0], p[1]]).collect();
    Triangulation::from_parts(vertices, triangles, None, None)
}

/// Sorts point indices along a Hilbert curve over the bounding box so that
/// consecutive insertions are spatially close and location walks stay short.
fn hilbert_order<S: Scalar>(points: &[[S; 2]]) -> Vec<usize> {
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p[0].as_f64());
        min_y = min_y.min(p[1].as_f64());
        max_x = max_x.max(p[0].as_f64());
        max_y = max_y.max(p[1].as_f64());
    }
    let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    const SIDE: u32 = 1 << 16;
    let scale = (SIDE - 1) as f64 / span;
    let mut keyed: Vec<(u64, usize)> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let gx = ((p[0].as_f64() - min_x) * scale) as u32;
            let gy = ((p[1].as_f64() - min_y) * scale) as u32;
            (hilbert_d(SIDE, gx, gy), i)
        })
        .collect();
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, i)| i).collect()
}

/// Distance along the Hilbert curve of an `n`-by-`n` grid (n a power of two).
fn hilbert_d(n: u32, mut x: u32, mut y: u32) -> u64 {
    let mut d: u64 = 0;
    let mut s = n / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += u64::from(s) * u64::from(s) * u64::from((3 * rx) ^ ry);
        // Rotate the quadrant.
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

enum Location {
    Inside(usize),
    OnEdge(usize, usize),
    Outside(usize),
    Duplicate(usize),
}

struct Builder<'a, S: Scalar> {
    points: &'a [[S; 2]],
    tri: Vec<[usize; 3]>,
    nbr: Vec<[usize; 3]>,
    hint: usize,
}

impl<'a, S: Scalar> Builder<'a, S> {
    fn new(points: &'a [[S; 2]]) -> Self {
        Builder {
            points,
            tri: Vec::with_capacity(2 * points.len()),
            nbr: Vec::with_capacity(2 * points.len()),
            hint: 0,
        }
    }

    fn pt(&self, v: usize) -> [S; 2] {
        self.points[v]
    }

    fn is_ghost(&self, t: usize) -> bool {
        self.tri[t][2] == INF
    }

    fn slot_of(&self, t: usize, v: usize) -> usize {
        let tri = self.tri[t];
        (0..3).find(|&k| tri[k] == v).expect("vertex in triangle")
    }

    fn set_nbr(&mut self, t: usize, k: usize, to: usize) {
        self.nbr[t][k] = to;
    }

    /// Redirects the neighbor slot of `t` that currently points at `from` to
    /// point at `to`.
    fn redirect(&mut self, t: usize, from: usize, to: usize) {
        let k = (0..3)
            .find(|&k| self.nbr[t][k] == from)
            .expect("neighbor back-pointer");
        self.nbr[t][k] = to;
    }

    fn run(&mut self, order: &[usize]) -> Result<()> {
        let (a, b, c) = self.initial_triangle(order)?;
        for &v in order {
            if v == a || v == b || v == c {
                continue;
            }
            self.insert(v)?;
        }
        Ok(())
    }

    /// Picks the first non-collinear triple in insertion order and seeds the
    /// structure with one finite face and three ghosts.
    fn initial_triangle(&mut self, order: &[usize]) -> Result<(usize, usize, usize)> {
        let a = order[0];
        let b = order[1];
        if self.pt(b) == self.pt(a) {
            return Err(duplicate_error(a, b));
        }
        let mut c = None;
        for &v in order.iter() {
            if v == a || v == b {
                continue;
            }
            if orient2d(self.pt(a), self.pt(b), self.pt(v)) != Orientation::Collinear {
                c = Some(v);
                break;
            }
        }
        let c = c.ok_or_else(|| PolyllaError::Geometry("all points are collinear".into()))?;
        let (b, c) = match orient2d(self.pt(a), self.pt(b), self.pt(c)) {
            Orientation::Ccw => (b, c),
            Orientation::Cw => (c, b),
            Orientation::Collinear => unreachable!(),
        };
        // Finite face plus one ghost per hull edge. Ghost for hull edge u->v
        // (interior on the left) is stored as [v, u, INF].
        self.tri.push([a, b, c]); // 0
        self.tri.push([b, a, INF]); // 1: hull edge a->b
        self.tri.push([c, b, INF]); // 2: hull edge b->c
        self.tri.push([a, c, INF]); // 3: hull edge c->a
        self.nbr.push([2, 3, 1]);
        self.nbr.push([3, 2, 0]); // slots: (a,INF), (INF,b), (b,a)
        self.nbr.push([1, 3, 0]);
        self.nbr.push([2, 1, 0]);
        self.hint = 0;
        Ok((a, b, c))
    }

    fn insert(&mut self, v: usize) -> Result<()> {
        match self.locate(v)? {
            Location::Duplicate(other) => Err(duplicate_error(other, v)),
            Location::Inside(t) => {
                self.insert_inside(t, v);
                Ok(())
            }
            Location::OnEdge(t, k) => {
                self.insert_on_edge(t, k, v);
                Ok(())
            }
            Location::Outside(g) => {
                self.insert_outside(g, v);
                Ok(())
            }
        }
    }

    /// Visibility walk from the last finite face touched. Falls back to a
    /// linear scan if the walk exceeds a generous step budget.
    fn locate(&mut self, v: usize) -> Result<Location> {
        let p = self.pt(v);
        let mut t = self.hint;
        if self.is_ghost(t) {
            t = self.nbr[t][2];
        }
        let mut prev = usize::MAX;
        let budget = 4 * self.tri.len() + 64;
        for _ in 0..budget {
            let verts = self.tri[t];
            let mut orients = [Ordering::Equal; 3];
            for k in 0..3 {
                let (u, w) = (verts[(k + 1) % 3], verts[(k + 2) % 3]);
                orients[k] = match orient2d(self.pt(u), self.pt(w), p) {
                    Orientation::Ccw => Ordering::Greater,
                    Orientation::Cw => Ordering::Less,
                    Orientation::Collinear => Ordering::Equal,
                };
            }
            // Step across an edge with p strictly on the outside, preferring
            // one that does not lead back where we came from.
            let step = (0..3)
                .filter(|&k| orients[k] == Ordering::Less)
                .max_by_key(|&k| usize::from(self.nbr[t][k] != prev));
            match step {
                Some(k) => {
                    let next = self.nbr[t][k];
                    if self.is_ghost(next) {
                        return Ok(Location::Outside(next));
                    }
                    prev = t;
                    t = next;
                }
                None => return self.classify_non_negative(t, v, orients),
            }
        }
        // Deterministic fallback: exhaustive scan over finite faces.
        for t in 0..self.tri.len() {
            if self.is_ghost(t) {
                continue;
            }
            let verts = self.tri[t];
            let mut orients = [Ordering::Equal; 3];
            let mut outside = false;
            for k in 0..3 {
                let (u, w) = (verts[(k + 1) % 3], verts[(k + 2) % 3]);
                orients[k] = match orient2d(self.pt(u), self.pt(w), p) {
                    Orientation::Ccw => Ordering::Greater,
                    Orientation::Cw => Ordering::Less,
                    Orientation::Collinear => Ordering::Equal,
                };
                if orients[k] == Ordering::Less {
                    outside = true;
                }
            }
            if !outside {
                return self.classify_non_negative(t, v, orients);
            }
        }
        // Outside the hull everywhere: walk the ghost ring for a visible edge.
        self.find_visible_ghost(v)
    }

    /// Classifies a point that is on or inside every edge of finite face `t`.
    fn classify_non_negative(
        &mut self,
        t: usize,
        v: usize,
        orients: [Ordering; 3],
    ) -> Result<Location> {
        self.hint = t;
        let p = self.pt(v);
        let zeros: Vec<usize> = (0..3).filter(|&k| orients[k] == Ordering::Equal).collect();
        match zeros.len() {
            0 => Ok(Location::Inside(t)),
            1 => {
                let k = zeros[0];
                let (u, w) = (self.tri[t][(k + 1) % 3], self.tri[t][(k + 2) % 3]);
                if within_segment(self.pt(u), self.pt(w), p) {
                    Ok(Location::OnEdge(t, k))
                } else {
                    // Collinear with a hull edge but beyond its endpoint.
                    self.find_visible_ghost(v)
                }
            }
            _ => {
                let verts = self.tri[t];
                let dup = (0..3)
                    .find(|&k| verts[k] != INF && self.pt(verts[k]) == p)
                    .expect("two zero orientations imply a vertex hit");
                Ok(Location::Duplicate(verts[dup]))
            }
        }
    }

    /// Scans the ghost faces for a hull edge that `v` is strictly outside of.
    fn find_visible_ghost(&self, v: usize) -> Result<Location> {
        let p = self.pt(v);
        for g in 0..self.tri.len() {
            if !self.is_ghost(g) {
                continue;
            }
            let [b, a, _] = self.tri[g]; // hull edge a->b
            if a != INF && self.pt(a) == p {
                return Ok(Location::Duplicate(a));
            }
            if orient2d(self.pt(a), self.pt(b), p) == Orientation::Cw {
                return Ok(Location::Outside(g));
            }
        }
        Err(PolyllaError::Internal(
            "point location failed to find a containing or visible face".into(),
        ))
    }

    /// Splits finite face `t = (a, b, c)` into three around interior point `v`.
    fn insert_inside(&mut self, t: usize, v: usize) {
        let [a, b, c] = self.tri[t];
        let [na, nb, nc] = self.nbr[t];
        let t2 = self.tri.len();
        let t3 = t2 + 1;
        self.tri[t] = [a, b, v];
        self.tri.push([b, c, v]);
        self.tri.push([c, a, v]);
        self.nbr[t] = [t2, t3, nc];
        self.nbr.push([t3, t, na]);
        self.nbr.push([t, t2, nb]);
        self.redirect(na, t, t2);
        self.redirect(nb, t, t3);
        self.hint = t;
        self.legalize(t, 2);
        self.legalize(t2, 2);
        self.legalize(t3, 2);
    }

    /// Splits the edge opposite slot `k` of finite face `t` at point `v`,
    /// subdividing the neighboring face (or ghost) as well.
    fn insert_on_edge(&mut self, t: usize, k: usize, v: usize) {
        let x = self.tri[t][k];
        let u = self.tri[t][(k + 1) % 3];
        let w = self.tri[t][(k + 2) % 3];
        let nb = self.nbr[t][k];
        let edge_a = self.nbr[t][(k + 1) % 3]; // across (w, x)
        let edge_b = self.nbr[t][(k + 2) % 3]; // across (x, u)
        let ta = t;
        let tb = self.tri.len();
        self.tri[ta] = [x, u, v];
        self.tri.push([x, v, w]);
        self.nbr.push([0, 0, 0]); // filled below
        self.nbr[ta] = [0, tb, edge_b];
        self.nbr[tb] = [0, edge_a, ta];
        self.redirect(edge_a, t, tb);
        if self.is_ghost(nb) {
            // `nb` is the ghost of hull edge u->w; split it into two ghosts.
            debug_assert_eq!(self.tri[nb], [w, u, INF]);
            let ring_prev = self.nbr[nb][0]; // across (u, INF)
            let ring_next = self.nbr[nb][1]; // across (INF, w)
            let g1 = nb;
            let g2 = self.tri.len();
            self.tri[g1] = [v, u, INF]; // hull edge u->v
            self.tri.push([w, v, INF]); // hull edge v->w
            self.nbr[g1] = [ring_prev, g2, ta];
            self.nbr.push([g1, ring_next, tb]);
            self.redirect(ring_next, nb, g2);
            self.set_nbr(ta, 0, g1);
            self.set_nbr(tb, 0, g2);
            self.hint = ta;
            self.legalize(ta, 2);
            self.legalize(tb, 1);
        } else {
            let ky = (0..3)
                .find(|&s| self.tri[nb][s] != u && self.tri[nb][s] != w)
                .expect("apex of neighbor");
            let y = self.tri[nb][ky];
            let edge_c = self.nbr[nb][self.slot_of(nb, w)]; // across (u, y)
            let edge_d = self.nbr[nb][self.slot_of(nb, u)]; // across (y, w)
            let nba = nb;
            let nbb = self.tri.len();
            self.tri[nba] = [y, v, u];
            self.tri.push([y, w, v]);
            self.nbr[nba] = [ta, edge_c, nbb];
            self.nbr.push([tb, nba, edge_d]);
            self.redirect(edge_d, nb, nbb);
            self.set_nbr(ta, 0, nba);
            self.set_nbr(tb, 0, nbb);
            self.hint = ta;
            self.legalize(ta, 2);
            self.legalize(tb, 1);
            self.legalize(nba, 1);
            self.legalize(nbb, 2);
        }
    }

    /// Inserts `v` outside the hull through visible ghost `g`, then extends
    /// the fan over every further hull edge visible from `v`.
    fn insert_outside(&mut self, g: usize, v: usize) {
        let [b, a, _] = self.tri[g]; // hull edge a->b, v strictly right of it
        let finite = self.nbr[g][2];
        let ring_prev = self.nbr[g][0]; // ghost sharing (a, INF)
        let ring_next = self.nbr[g][1]; // ghost sharing (INF, b)
        let f = g;
        let g1 = self.tri.len(); // ghost of new hull edge a->v
        let g2 = g1 + 1; // ghost of new hull edge v->b
        self.tri[f] = [b, a, v];
        self.tri.push([v, a, INF]);
        self.tri.push([b, v, INF]);
        self.nbr[f] = [g1, g2, finite];
        self.nbr.push([ring_prev, g2, f]);
        self.nbr.push([g1, ring_next, f]);
        self.redirect(ring_prev, g, g1);
        self.redirect(ring_next, g, g2);
        self.hint = f;
        self.legalize(f, 2);
        // Sweep backwards over hull edges before `a` while they see `v`.
        // `g1` stays the ghost ending at `v` across merges (its slot is
        // reused), so the next candidate edge is always its ring neighbor.
        loop {
            let gcur = self.nbr[g1][0]; // ghost of hull edge w->a', a' adj to v
            let [a2, w, _] = self.tri[gcur];
            if w == INF || a2 == INF {
                break;
            }
            if orient2d(self.pt(w), self.pt(a2), self.pt(v)) != Orientation::Cw {
                break;
            }
            self.merge_hull_edge_before(gcur, g1, v);
        }
        // Sweep forwards over hull edges after `b`.
        loop {
            let gcur = self.nbr[g2][1];
            let [b2, u, _] = self.tri[gcur];
            if b2 == INF || u == INF {
                break;
            }
            if orient2d(self.pt(u), self.pt(b2), self.pt(v)) != Orientation::Cw {
                break;
            }
            self.merge_hull_edge_after(gcur, g2, v);
        }
    }

    /// Replaces ghost `gcur` (hull edge w->a with a adjacent to `v`) and the
    /// ghost `gav` of a->v with a finite face (a, w, v) plus the ghost of
    /// w->v, which reuses the slot of `gav`.
    fn merge_hull_edge_before(&mut self, gcur: usize, gav: usize, v: usize) {
        let [a, w, _] = self.tri[gcur];
        debug_assert_eq!(self.tri[gav], [v, a, INF]);
        let finite_wa = self.nbr[gcur][2];
        let finite_av = self.nbr[gav][2];
        let ring_prev = self.nbr[gcur][0];
        let ring_next = self.nbr[gav][1];
        let f = gcur;
        let gnew = gav; // becomes ghost of w->v: [v, w, INF]
        self.tri[f] = [a, w, v];
        self.tri[gnew] = [v, w, INF];
        self.nbr[f] = [gnew, finite_av, finite_wa];
        self.nbr[gnew] = [ring_prev, ring_next, f];
        self.redirect(finite_av, gav, f);
        self.redirect(ring_prev, gcur, gnew);
        self.legalize(f, 2);
    }

    /// Mirror image: ghost `gcur` is hull edge b->u with b adjacent to `v`;
    /// `gvb` is the ghost of v->b, whose slot becomes the ghost of v->u.
    fn merge_hull_edge_after(&mut self, gcur: usize, gvb: usize, v: usize) {
        let [u, b, _] = self.tri[gcur];
        debug_assert_eq!(self.tri[gvb], [b, v, INF]);
        let finite_bu = self.nbr[gcur][2];
        let finite_vb = self.nbr[gvb][2];
        let ring_prev = self.nbr[gvb][0];
        let ring_next = self.nbr[gcur][1];
        let f = gcur;
        let gnew = gvb; // becomes ghost of v->u: [u, v, INF]
        self.tri[f] = [u, b, v];
        self.tri[gnew] = [u, v, INF];
        self.nbr[f] = [finite_vb, gnew, finite_bu];
        self.nbr[gnew] = [ring_prev, ring_next, f];
        self.redirect(finite_vb, gvb, f);
        self.redirect(ring_next, gcur, gnew);
        self.legalize(f, 2);
    }

    /// Restores the Delaunay property across the edge opposite slot `k` of
    /// finite face `t`, flipping and recursing when it is illegal.
    fn legalize(&mut self, t: usize, k: usize) {
        let nb = self.nbr[t][k];
        if self.is_ghost(nb) {
            return;
        }
        let x = self.tri[t][k];
        let u = self.tri[t][(k + 1) % 3];
        let w = self.tri[t][(k + 2) % 3];
        let ky = (0..3)
            .find(|&s| self.tri[nb][s] != u && self.tri[nb][s] != w)
            .expect("apex of neighbor");
        let y = self.tri[nb][ky];
        let verdict = incircle(self.pt(x), self.pt(u), self.pt(w), self.pt(y));
        let flip = match verdict {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => EdgeKey::new(x, y) < EdgeKey::new(u, w),
        };
        if !flip {
            return;
        }
        // Quad boundary ccw: x -> u -> y -> w. Replace diagonal (u, w) with
        // (x, y).
        let a = self.nbr[t][(k + 1) % 3]; // across (w, x)
        let b = self.nbr[t][(k + 2) % 3]; // across (x, u)
        let c = self.nbr[nb][self.slot_of(nb, w)]; // across (u, y)
        let d = self.nbr[nb][self.slot_of(nb, u)]; // across (y, w)
        self.tri[t] = [x, u, y];
        self.tri[nb] = [x, y, w];
        self.nbr[t] = [c, nb, b];
        self.nbr[nb] = [d, a, t];
        self.redirect(a, t, nb);
        self.redirect(c, nb, t);
        self.legalize(t, 0);
        self.legalize(nb, 0);
    }

    fn finite_triangles(&self) -> Vec<usize> {
        (0..self.tri.len())
            .filter(|&t| !self.is_ghost(t))
            .flat_map(|t| self.tri[t])
            .collect()
    }
}

fn duplicate_error(a: usize, b: usize) -> PolyllaError {
    PolyllaError::Geometry(format!("duplicate points at indices {a} and {b}"))
}

/// True when collinear point `p` lies within the closed segment `(a, b)`.
fn within_segment<S: Scalar>(a: [S; 2], b: [S; 2], p: [S; 2]) -> bool {
    let lo = |i: usize| a[i].min(b[i]);
    let hi = |i: usize| a[i].max(b[i]);
    p[0] >= lo(0) && p[0] <= hi(0) && p[1] >= lo(1) && p[1] <= hi(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(t: &Triangulation<f64>) -> Vec<EdgeKey> {
        let mut v: Vec<EdgeKey> = t.canonical_edges().map(|(_, _, key)| key).collect();
        v.sort();
        v
    }

    #[test]
    fn square_corners_pick_low_diagonal() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let t = triangulate(&pts).unwrap();
        assert_eq!(t.num_triangles(), 2);
        // All four points are cocircular; the deterministic tie-break keeps
        // the diagonal with the smaller index pair.
        assert!(keys(&t).contains(&EdgeKey::new(0, 2)));
        assert!(!keys(&t).contains(&EdgeKey::new(1, 3)));
        assert!(t.validate().is_valid());
    }

    #[test]
    fn square_with_centroid_is_a_fan() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]];
        let t = triangulate(&pts).unwrap();
        assert_eq!(t.num_triangles(), 4);
        for k in 0..4 {
            assert!(keys(&t).contains(&EdgeKey::new(k, 4)));
        }
        assert!(t.validate().is_valid());
    }

    #[test]
    fn collinear_run_on_boundary() {
        // Points along the bottom edge force on-edge and beyond-hull inserts.
        let pts = [
            [0.0, 0.0],
            [1.0, 0.0],
            [2.0, 0.0],
            [3.0, 0.0],
            [1.5, 2.0],
        ];
        let t = triangulate(&pts).unwrap();
        assert_eq!(t.num_triangles(), 3);
        assert!(t.validate().is_valid());
        let area: f64 = t.total_area();
        assert!((area - 3.0).abs() < 1e-12);
    }

    #[test]
    fn duplicate_points_rejected() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 1.0], [1.0, 0.0]];
        assert!(matches!(
            triangulate(&pts),
            Err(PolyllaError::Geometry(_))
        ));
    }

    #[test]
    fn fully_collinear_rejected() {
        let pts = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]];
        assert!(matches!(
            triangulate(&pts),
            Err(PolyllaError::Geometry(_))
        ));
    }
}

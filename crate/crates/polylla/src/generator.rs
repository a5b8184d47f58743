//! Seeded random point sets in a square and their Delaunay triangulations.
//!
//! Points are drawn with a fixed portable PRNG (ChaCha8) so a given seed
//! produces the same coordinates on every platform. The four square corners
//! are always prepended, and any drawn point within `gamma` of a side is
//! projected onto that side, mirroring the boundary-snapping tolerance used
//! for the experimental inputs this module reproduces.

use crate::delaunay;
use crate::error::{PolyllaError, Result};
use crate::scalar::Scalar;
use crate::triangulation::Triangulation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Description of a reproducible point set: `count` uniform points in the
/// axis-aligned square at `origin` with the given `side`, snapped to the
/// boundary within `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSetSpec<S: Scalar> {
    pub count: usize,
    pub seed: u64,
    pub origin: [S; 2],
    pub side: S,
    pub gamma: S,
}

impl<S: Scalar> PointSetSpec<S> {
    /// Spec over the unit square with the default snapping tolerance of
    /// `1e-9 * side`.
    pub fn new(count: usize, seed: u64) -> Self {
        let side = S::one();
        PointSetSpec {
            count,
            seed,
            origin: [S::zero(), S::zero()],
            side,
            gamma: default_gamma(side),
        }
    }

    pub fn with_region(mut self, origin: [S; 2], side: S) -> Self {
        self.origin = origin;
        self.side = side;
        self.gamma = default_gamma(side);
        self
    }

    pub fn with_gamma(mut self, gamma: S) -> Self {
        self.gamma = gamma;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.count < 3 {
            return Err(PolyllaError::Geometry(format!(
                "point count must be at least 3, got {}",
                self.count
            )));
        }
        // Also rejects a NaN side.
        if self.side.partial_cmp(&S::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(PolyllaError::Geometry("square side must be positive".into()));
        }
        if self.gamma < S::zero() || self.gamma + self.gamma >= self.side {
            return Err(PolyllaError::Geometry(
                "gamma must be non-negative and small relative to the side".into(),
            ));
        }
        Ok(())
    }
}

/// Default snapping tolerance: `1e-9` of the square side.
pub fn default_gamma<S: Scalar>(side: S) -> S {
    side * S::from_f64(1.0e-9).expect("constant fits the scalar")
}

/// Draws the point set described by `spec`: the 4 corners first, then `count`
/// uniform points. Duplicates (possible after snapping) are re-drawn, so the
/// output always has `count + 4` distinct points.
pub fn random_points<S: Scalar>(spec: &PointSetSpec<S>) -> Result<Vec<[S; 2]>> {
    spec.validate()?;
    let [x0, y0] = spec.origin;
    let x1 = x0 + spec.side;
    let y1 = y0 + spec.side;
    let mut points: Vec<[S; 2]> = vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
    let mut seen: HashSet<(u64, u64)> = points.iter().map(|p| point_bits(*p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    while points.len() < spec.count + 4 {
        let ux: f64 = rng.random();
        let uy: f64 = rng.random();
        let side_f = spec.side.as_f64();
        let x = snap(
            S::from_f64(x0.as_f64() + ux * side_f).expect("finite coordinate"),
            x0,
            x1,
            spec.gamma,
        );
        let y = snap(
            S::from_f64(y0.as_f64() + uy * side_f).expect("finite coordinate"),
            y0,
            y1,
            spec.gamma,
        );
        let p = [x, y];
        if seen.insert(point_bits(p)) {
            points.push(p);
        }
    }
    Ok(points)
}

/// Delaunay triangulation of `points` (convex hull coverage, deterministic
/// co-circular tie-breaking). Vertex indices match the input order.
pub fn delaunay<S: Scalar>(points: &[[S; 2]]) -> Result<Triangulation<S>> {
    delaunay::triangulate(points)
}

/// Convenience: draw the points for `spec` and triangulate them.
pub fn random_delaunay<S: Scalar>(spec: &PointSetSpec<S>) -> Result<Triangulation<S>> {
    delaunay(&random_points(spec)?)
}

fn snap<S: Scalar>(c: S, lo: S, hi: S, gamma: S) -> S {
    if c - lo <= gamma {
        lo
    } else if hi - c <= gamma {
        hi
    } else {
        c
    }
}

fn point_bits<S: Scalar>(p: [S; 2]) -> (u64, u64) {
    (p[0].as_f64().to_bits(), p[1].as_f64().to_bits())
}

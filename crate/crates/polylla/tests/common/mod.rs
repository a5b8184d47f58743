//! Independent oracles used by the integration tests. These deliberately
//! avoid the library's labeling/predicates code paths: lengths and incircle
//! determinants are evaluated in exact rational arithmetic, and region
//! grouping follows the longest-edge propagation definition directly.

#![allow(dead_code)] // each test binary uses a different subset

use num_rational::BigRational;
use num_traits::Zero;
use polylla::{Triangulation, BOUNDARY};

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

fn sq_len(tri: &Triangulation, a: usize, b: usize) -> BigRational {
    let pa = tri.point(a);
    let pb = tri.point(b);
    let dx = rat(pb[0]) - rat(pa[0]);
    let dy = rat(pb[1]) - rat(pa[1]);
    &dx * &dx + &dy * &dy
}

/// Longest-edge slot of triangle `t` under the (squared length, index pair)
/// total order, recomputed exactly.
fn longest_slot(tri: &Triangulation, t: usize) -> usize {
    let verts = tri.tri(t);
    (0..3)
        .max_by(|&i, &j| {
            let (ai, bi) = (verts[(i + 1) % 3], verts[(i + 2) % 3]);
            let (aj, bj) = (verts[(j + 1) % 3], verts[(j + 2) % 3]);
            let li = sq_len(tri, ai, bi);
            let lj = sq_len(tri, aj, bj);
            li.cmp(&lj).then_with(|| {
                let ki = (ai.min(bi), ai.max(bi));
                let kj = (aj.min(bj), aj.max(bj));
                ki.cmp(&kj)
            })
        })
        .unwrap()
}

/// Groups triangles into terminal-edge regions by following each triangle's
/// longest-edge propagation path to its terminal edge. Returns, per
/// triangle, the smallest triangle index of its region.
pub fn brute_force_regions(tri: &Triangulation) -> Vec<usize> {
    let m = tri.num_triangles();
    // Terminal-edge key reached from each triangle.
    let mut terminal: Vec<(usize, usize)> = Vec::with_capacity(m);
    for start in 0..m {
        let mut t = start;
        let key = loop {
            let slot = longest_slot(tri, t);
            let (a, b) = tri.edge_vertices(t, slot);
            let key = (a.min(b), a.max(b));
            let nb = tri.neighbor(t, slot);
            if nb == BOUNDARY {
                break key;
            }
            let nb_slot = longest_slot(tri, nb);
            let (c, d) = tri.edge_vertices(nb, nb_slot);
            if (c.min(d), c.max(d)) == key {
                break key;
            }
            t = nb;
        };
        terminal.push(key);
    }
    let mut rep: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for (t, key) in terminal.iter().enumerate() {
        rep.entry(*key).or_insert(t);
    }
    terminal.iter().map(|key| rep[key]).collect()
}

/// Exact empty-circumcircle check: no input point lies strictly inside the
/// circumcircle of any triangle. O(n·m).
pub fn delaunay_holds(tri: &Triangulation) -> bool {
    let n = tri.num_vertices();
    for t in 0..tri.num_triangles() {
        let [a, b, c] = tri.tri(t);
        let pa = tri.point(a);
        let pb = tri.point(b);
        let pc = tri.point(c);
        for d in 0..n {
            if d == a || d == b || d == c {
                continue;
            }
            let pd = tri.point(d);
            if incircle_det(pa, pb, pc, pd) > BigRational::zero() {
                return false;
            }
        }
    }
    true
}

/// Sign of the 4x4 incircle determinant for ccw (a, b, c): positive means
/// `d` strictly inside, computed with exact rationals from scratch.
fn incircle_det(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> BigRational {
    let row = |p: [f64; 2]| {
        let x = rat(p[0]) - rat(d[0]);
        let y = rat(p[1]) - rat(d[1]);
        let l = &x * &x + &y * &y;
        (x, y, l)
    };
    let (ax, ay, al) = row(a);
    let (bx, by, bl) = row(b);
    let (cx, cy, cl) = row(c);
    &ax * (&by * &cl - &bl * &cy) - &ay * (&bx * &cl - &bl * &cx)
        + &al * (&bx * &cy - &by * &cx)
}

/// Flips interior edges whose surrounding quad is strictly convex, degrading
/// the Delaunay property while keeping a valid ccw triangulation. Used to
/// produce non-Delaunay test inputs deterministically.
pub fn flip_some_edges(tri: &Triangulation, max_flips: usize) -> Triangulation {
    let mut triangles: Vec<usize> = (0..tri.num_triangles())
        .flat_map(|t| tri.tri(t))
        .collect();
    let vertices: Vec<f64> = (0..tri.num_vertices())
        .flat_map(|v| tri.point(v))
        .collect();
    let orient = |a: usize, b: usize, c: usize| -> BigRational {
        let p = |v: usize| (rat(vertices[2 * v]), rat(vertices[2 * v + 1]));
        let (ax, ay) = p(a);
        let (bx, by) = p(b);
        let (cx, cy) = p(c);
        (&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax)
    };
    let mut flips = 0;
    'outer: for t in 0..triangles.len() / 3 {
        if flips >= max_flips {
            break;
        }
        for u in (t + 1)..triangles.len() / 3 {
            let tv = [triangles[3 * t], triangles[3 * t + 1], triangles[3 * t + 2]];
            let uv = [triangles[3 * u], triangles[3 * u + 1], triangles[3 * u + 2]];
            let shared: Vec<usize> = tv.iter().copied().filter(|v| uv.contains(v)).collect();
            if shared.len() != 2 {
                continue;
            }
            let x = *tv.iter().find(|v| !shared.contains(v)).unwrap();
            let y = *uv.iter().find(|v| !shared.contains(v)).unwrap();
            let (p, q) = (shared[0], shared[1]);
            // Quad must be strictly convex for the flip to stay valid: x, y
            // on opposite sides of (p, q) and p, q on opposite sides of
            // (x, y), no collinearity.
            let zero = BigRational::zero();
            let s1 = orient(p, q, x);
            let s2 = orient(p, q, y);
            let s3 = orient(x, y, p);
            let s4 = orient(x, y, q);
            let opposite = |a: &BigRational, b: &BigRational| {
                (*a > zero && *b < zero) || (*a < zero && *b > zero)
            };
            if !(opposite(&s1, &s2) && opposite(&s3, &s4)) {
                continue;
            }
            // Replace diagonal (p, q) with (x, y): triangles (x, p, y) and
            // (y, q, x), reoriented ccw.
            let fix = |a: usize, b: usize, c: usize| -> [usize; 3] {
                if orient(a, b, c) > BigRational::zero() {
                    [a, b, c]
                } else {
                    [a, c, b]
                }
            };
            let t1 = fix(x, p, y);
            let t2 = fix(y, q, x);
            if orient(t1[0], t1[1], t1[2]) == BigRational::zero()
                || orient(t2[0], t2[1], t2[2]) == BigRational::zero()
            {
                continue;
            }
            triangles[3 * t..3 * t + 3].copy_from_slice(&t1);
            triangles[3 * u..3 * u + 3].copy_from_slice(&t2);
            flips += 1;
            continue 'outer;
        }
    }
    assert!(flips > 0, "no flippable edge found");
    Triangulation::from_parts(vertices, triangles, None, None).expect("flipped mesh stays valid")
}

//! Orientation and in-circle predicates with an exact fallback.
//!
//! Both predicates are evaluated in `f64` first with a Shewchuk-style static
//! error filter. When the magnitude of the determinant falls below the filter
//! bound the computation is repeated in exact rational arithmetic, so the
//! returned sign is always correct.

use crate::scalar::Scalar;
use num_rational::BigRational;
use num_traits::Zero;
use std::cmp::Ordering;

const EPSILON: f64 = f64::EPSILON / 2.0;
const CCW_ERR_BOUND: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;
const ICC_ERR_BOUND: f64 = (10.0 + 96.0 * EPSILON) * EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

fn rational(p: [f64; 2]) -> [BigRational; 2] {
    [Scalar::to_rational(p[0]), Scalar::to_rational(p[1])]
}

fn orient2d_exact(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Ordering {
    let (a, b, c) = (rational(a), rational(b), rational(c));
    let det = (&a[0] - &c[0]) * (&b[1] - &c[1]) - (&a[1] - &c[1]) * (&b[0] - &c[0]);
    det.cmp(&BigRational::zero())
}

/// Sign of the signed area of triangle `(a, b, c)`.
pub fn orient2d<S: Scalar>(a: [S; 2], b: [S; 2], c: [S; 2]) -> Orientation {
    let (a, b, c) = (
        [a[0].as_f64(), a[1].as_f64()],
        [b[0].as_f64(), b[1].as_f64()],
        [c[0].as_f64(), c[1].as_f64()],
    );
    let det_left = (a[0] - c[0]) * (b[1] - c[1]);
    let det_right = (a[1] - c[1]) * (b[0] - c[0]);
    let det = det_left - det_right;
    let det_sum = det_left.abs() + det_right.abs();
    let sign = if det.abs() >= CCW_ERR_BOUND * det_sum {
        det.partial_cmp(&0.0).expect("finite determinant")
    } else {
        orient2d_exact(a, b, c)
    };
    match sign {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

fn incircle_exact(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Ordering {
    let (a, b, c, d) = (rational(a), rational(b), rational(c), rational(d));
    let adx = &a[0] - &d[0];
    let ady = &a[1] - &d[1];
    let bdx = &b[0] - &d[0];
    let bdy = &b[1] - &d[1];
    let cdx = &c[0] - &d[0];
    let cdy = &c[1] - &d[1];
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let det = alift * (&bdx * &cdy - &bdy * &cdx)
        + blift * (&cdx * &ady - &cdy * &adx)
        + clift * (&adx * &bdy - &ady * &bdx);
    det.cmp(&BigRational::zero())
}

/// Position of `d` relative to the circumcircle of the ccw triangle `(a, b, c)`:
/// `Greater` means strictly inside, `Less` strictly outside, `Equal` on the
/// circle.
pub fn incircle<S: Scalar>(a: [S; 2], b: [S; 2], c: [S; 2], d: [S; 2]) -> Ordering {
    let (a, b, c, d) = (
        [a[0].as_f64(), a[1].as_f64()],
        [b[0].as_f64(), b[1].as_f64()],
        [c[0].as_f64(), c[1].as_f64()],
        [d[0].as_f64(), d[1].as_f64()],
    );
    let adx = a[0] - d[0];
    let ady = a[1] - d[1];
    let bdx = b[0] - d[0];
    let bdy = b[1] - d[1];
    let cdx = c[0] - d[0];
    let cdy = c[1] - d[1];

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;
    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;
    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;

    if det.abs() > ICC_ERR_BOUND * permanent {
        det.partial_cmp(&0.0).expect("finite determinant")
    } else {
        incircle_exact(a, b, c, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        assert_eq!(
            orient2d([0.0, 0.0], [1.0, 0.0], [0.0, 1.0]),
            Orientation::Ccw
        );
        assert_eq!(
            orient2d([0.0, 0.0], [0.0, 1.0], [1.0, 0.0]),
            Orientation::Cw
        );
        assert_eq!(
            orient2d([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]),
            Orientation::Collinear
        );
    }

    #[test]
    fn orientation_near_degenerate_is_exact() {
        // Three nearly collinear points whose float determinant underflows the
        // filter; the exact path must resolve the sign consistently.
        let a = [0.5, 0.5];
        let b = [12.0, 12.0];
        let c = [24.0, 24.0 + 1.0e-322];
        let abc = orient2d(a, b, c);
        let bca = orient2d(b, c, a);
        let cab = orient2d(c, a, b);
        assert_eq!(abc, bca);
        assert_eq!(bca, cab);
    }

    #[test]
    fn incircle_square_is_cocircular() {
        let a = [0.0, 0.0];
        let b = [1.0, 0.0];
        let c = [1.0, 1.0];
        let d = [0.0, 1.0];
        assert_eq!(incircle(a, b, c, d), Ordering::Equal);
        assert_eq!(incircle(a, b, c, [0.5, 0.5]), Ordering::Greater);
        assert_eq!(incircle(a, b, c, [2.0, 2.0]), Ordering::Less);
    }
}

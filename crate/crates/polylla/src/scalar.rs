use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::Debug;

/// Coordinate scalar: a finite IEEE float that can be lifted exactly into
/// rational arithmetic when the floating-point predicate filter is
/// inconclusive.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + 'static
{
    /// Exact conversion into a rational. Both `f32` and `f64` values convert
    /// without rounding (every finite float is a dyadic rational).
    fn to_rational(self) -> BigRational {
        BigRational::from_float(self.to_f64().expect("finite coordinate"))
            .expect("coordinate must be finite")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite coordinate")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

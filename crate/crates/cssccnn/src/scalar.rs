//! Scalar abstraction so the numerical core runs in either f32 or f64.
//!
//! Training and file formats use f32; oracles and gradient checks prefer f64.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssignOps + Sum + Debug + Display + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to scalar")
    }

    fn from_usize(x: usize) -> Self {
        <Self as FromPrimitive>::from_usize(x).expect("usize converts to scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

//! Floating-point scalar abstraction.
//!
//! All continuous quantities in this crate (times, rates, log densities) are
//! generic over [`Real`], implemented for `f32` and `f64`. The stated accuracy
//! targets of the numerical kernels hold for `f64`; the `f32` instantiation is
//! functional but loses precision and is intended for experimentation only.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, Open01, Poisson};

/// Scalar type used by every concrete alias in the crate root.
pub type Scalar = f64;

/// Floating-point scalar: `f32` or `f64`.
///
/// Bundles the arithmetic, conversion, and sampling operations the estimation
/// and simulation code needs, so downstream signatures stay at a single
/// `R: Real` bound.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from an unsigned count.
    ///
    /// Counts in this crate stay below 2^53, inside `f64`'s exact-integer
    /// range; `f32` rounds.
    fn from_count(value: u64) -> Self {
        Self::from_u64(value).expect("count representable as float")
    }

    /// Conversion from `f64` literals and precomputed constants.
    fn from_f64_lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal representable as float")
    }

    /// Widen to `f64` for reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    /// Draw from the standard exponential distribution.
    fn sample_exp1<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// Draw from the open unit interval (0, 1).
    fn sample_open01<G: Rng + ?Sized>(rng: &mut G) -> Self;

    /// Draw from a Gamma distribution with the given shape and scale.
    fn sample_gamma<G: Rng + ?Sized>(rng: &mut G, shape: Self, scale: Self) -> Self;

    /// Draw a Poisson count with the given mean.
    fn sample_poisson<G: Rng + ?Sized>(rng: &mut G, mean: Self) -> u64;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            fn sample_exp1<G: Rng + ?Sized>(rng: &mut G) -> Self {
                Exp1.sample(rng)
            }

            fn sample_open01<G: Rng + ?Sized>(rng: &mut G) -> Self {
                Open01.sample(rng)
            }

            fn sample_gamma<G: Rng + ?Sized>(rng: &mut G, shape: Self, scale: Self) -> Self {
                Gamma::new(shape, scale)
                    .expect("valid gamma parameters")
                    .sample(rng)
            }

            fn sample_poisson<G: Rng + ?Sized>(rng: &mut G, mean: Self) -> u64 {
                if mean <= 0.0 {
                    return 0;
                }
                let draw: $t = Poisson::new(mean).expect("valid poisson mean").sample(rng);
                draw as u64
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

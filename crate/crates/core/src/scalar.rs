//! Scalar capability traits and the concrete number types behind them.
//!
//! Everything upstream of the final Euclidean conversion needs only
//! addition, subtraction, multiplication, and negation, so the bulk of the
//! crate is generic over [`Ring`]. Division lives in the stricter [`Field`]
//! capability and is demanded exactly where a quotient is genuinely
//! required (`to_euclidean`, barycentric weights, the division-based
//! oracle solvers).
//!
//! Three instantiations are provided:
//!
//! * `f64` - a field with rounding; zero tests are relative, see
//!   [`Tolerance`].
//! * `i128` - a ring only. The type system guarantees the whole pipeline
//!   stays division-free, which is what makes the exactness envelope below
//!   meaningful.
//! * [`BigRational`] - an exact field with arbitrary precision; the court
//!   of final appeal when two computations disagree.
//!
//! # Integer exactness envelope
//!
//! The deepest products formed anywhere in the kernel multiply four scalars
//! and sum at most a few dozen such terms. With `i128` inputs bounded by
//! `2^30` in magnitude every intermediate fits comfortably (products reach
//! ~`2^120`, sums stay under `2^125`), so results are exact. With inputs
//! bounded by `2^24`, the three-component pipeline (2D meets and joins)
//! also computes exactly in `f64`: products of two inputs need 48 bits and
//! their differences 49, inside the 53-bit mantissa.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{Integer as _, One, Signed as _, ToPrimitive as _, Zero};

/// Default relative threshold for float zero classification: `2^-40`.
pub const EPS_W_DEFAULT: f64 = 1.0 / ((1u64 << 40) as f64);

/// Classification tolerance for floating-point scalars.
///
/// A component of a homogeneous element is treated as zero when its
/// magnitude is at most `eps_w` times the largest component magnitude of
/// that element. The test is relative, so rescaling an element never
/// changes how it classifies. Exact scalar types ignore the tolerance and
/// compare against literal zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    /// Relative zero threshold; defaults to [`EPS_W_DEFAULT`] (`2^-40`).
    pub eps_w: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_w: EPS_W_DEFAULT }
    }
}

impl Tolerance {
    /// A tolerance with an explicit relative threshold.
    pub fn new(eps_w: f64) -> Self {
        Tolerance { eps_w }
    }
}

/// Division-free arithmetic: addition, subtraction, multiplication,
/// negation, and exact equality, plus the few introspection hooks the
/// kernel needs (magnitude comparison, zero classification, embedding
/// into rationals).
pub trait Ring:
    Clone + PartialEq + PartialOrd + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    /// True when arithmetic never rounds (`i128`, rationals).
    const EXACT: bool;

    /// Embeds a small integer.
    fn from_i64(n: i64) -> Self;

    /// Magnitude, `|self|`.
    fn abs(&self) -> Self;

    /// Sign as `-1`, `0`, or `+1`.
    fn sign(&self) -> i8;

    /// Quotient of a division known to be exact (used by fraction-free
    /// elimination, where every division is by a previous pivot that
    /// divides the numerator). The divisor must be nonzero.
    fn exact_div(&self, divisor: &Self) -> Self;

    /// Zero test relative to a magnitude `scale` (which callers compute as
    /// the largest component magnitude of the containing element). Exact
    /// types ignore `scale` and `eps_w` and compare against literal zero.
    fn is_zero_rel(&self, scale: &Self, eps_w: f64) -> bool;

    /// Exact embedding into arbitrary-precision rationals. Panics on
    /// non-finite floats.
    fn to_rational(&self) -> BigRational;

    /// Output renormalization hook applied to regular results: floats are
    /// rescaled by a power of two (see [`pow2_rescale`]); exact types are
    /// left untouched.
    fn renormalize(components: &mut [Self])
    where
        Self: Sized,
    {
        let _ = components;
    }
}

/// A [`Ring`] that also supports division.
pub trait Field: Ring + Div<Output = Self> {}

impl Ring for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn exact_div(&self, divisor: &Self) -> Self {
        self / divisor
    }

    fn is_zero_rel(&self, scale: &Self, eps_w: f64) -> bool {
        f64::abs(*self) <= eps_w * scale
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }

    fn renormalize(components: &mut [Self]) {
        pow2_rescale(components);
    }
}

impl Field for f64 {}

impl Ring for i128 {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        n as i128
    }

    fn abs(&self) -> Self {
        i128::abs(*self)
    }

    fn sign(&self) -> i8 {
        self.signum() as i8
    }

    fn exact_div(&self, divisor: &Self) -> Self {
        debug_assert_eq!(self % divisor, 0, "inexact integer division");
        self / divisor
    }

    fn is_zero_rel(&self, _scale: &Self, _eps_w: f64) -> bool {
        *self == 0
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }
}

impl Ring for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn abs(&self) -> Self {
        num::Signed::abs(self)
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn exact_div(&self, divisor: &Self) -> Self {
        self / divisor
    }

    fn is_zero_rel(&self, _scale: &Self, _eps_w: f64) -> bool {
        self.is_zero()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

impl Field for BigRational {}

/// Rescales a float slice by a single power of two so that the largest
/// magnitude lands in `[1, 2)`. Power-of-two scaling is exact in binary
/// floating point (as long as no component over- or underflows), so the
/// projective element and every quotient of its components are preserved
/// bit for bit. Zero or non-finite slices are left unchanged.
pub fn pow2_rescale(components: &mut [f64]) {
    for _ in 0..4 {
        let m = components.iter().fold(0.0f64, |acc, c| acc.max(f64::abs(*c)));
        if m == 0.0 || !m.is_finite() {
            return;
        }
        if (1.0..2.0).contains(&m) {
            return;
        }
        // floor(log2 m), clamped so 2^-e stays finite; the loop mops up any
        // residue from subnormal inputs or clamping.
        let e = m.log2().floor().clamp(-900.0, 900.0) as i32;
        let scale = 2f64.powi(-e);
        if scale == 1.0 {
            return;
        }
        for c in components.iter_mut() {
            *c *= scale;
        }
    }
}

/// Converts a rational to the nearest `f64`, with ties to even.
///
/// Unlike the `ToPrimitive` conversion (which rounds numerator and
/// denominator separately), this performs a single correctly rounded
/// division, so it can serve as a reference when measuring errors in ulps.
/// Correct for results in the normal range; extreme magnitudes saturate to
/// `0.0` / infinity without the subnormal rounding subtleties.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.numer().sign() == Sign::Minus;
    let num = num::Signed::abs(r.numer());
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;

    // Scale so the truncated quotient has 55 or 56 bits: 53 mantissa bits,
    // one guard bit, and headroom for the estimate being off by one.
    let shift = 55 - (nb - db);
    let (q, rem) = if shift >= 0 {
        (num << shift as u64).div_rem(&den)
    } else {
        num.div_rem(&(den << (-shift) as u64))
    };
    let mut q = q.to_u128().expect("quotient bounded by construction");
    let mut exp = -(shift as i32);
    let mut sticky = !rem.is_zero();

    // Reduce to 53 mantissa bits plus one guard bit.
    while q >= 1 << 54 {
        sticky |= q & 1 == 1;
        q >>= 1;
        exp += 1;
    }
    debug_assert!(q >= 1 << 53);
    let guard = q & 1 == 1;
    let mut mantissa = q >> 1;
    exp += 1;
    if guard && (sticky || mantissa & 1 == 1) {
        mantissa += 1;
        if mantissa == 1 << 53 {
            mantissa >>= 1;
            exp += 1;
        }
    }

    let magnitude = mantissa as f64 * 2f64.powi(exp);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Distance between two floats in units in the last place, saturating.
/// Equal values (including `0.0` vs `-0.0`) are 0 ulps apart; values of
/// opposite sign or non-finite values are `u64::MAX` apart.
pub fn ulps_between(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if !a.is_finite() || !b.is_finite() {
        return u64::MAX;
    }
    // Map to a monotone unsigned key: negatives are bit-flipped, positives
    // get the top bit set, so float order becomes integer order.
    let key = |f: f64| -> u64 {
        let bits = f.to_bits();
        if bits >> 63 == 1 {
            !bits
        } else {
            bits | (1 << 63)
        }
    };
    key(a).abs_diff(key(b))
}

//! Exact arithmetic: rational polynomials, rational functions, the quadratic
//! surd field A(z) + Ã(z)·√(q²−4(q−1)z²), real-root isolation, and the
//! quadratic extension ℚ(√d) used for band-edge evaluations.

pub mod poly;
pub mod quadext;
pub mod ratfun;
pub mod roots;
pub mod surd;

pub use poly::Poly;
pub use quadext::QuadExt;
pub use ratfun::RationalFunction;
pub use roots::{count_real_roots, isolate_all_real_roots, isolate_real_roots, IsolatedRoot};
pub use surd::{weight_poly, Side, SurdFunction, Variable};

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[allow(unused_imports)]
use num_traits::Float;

/// √x that works identically with and without std.
pub fn f64_sqrt(x: f64) -> f64 {
    x.sqrt()
}

/// Shorthand constructors.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lossy conversion that stays finite for ratios of huge integers (plain
/// numerator/denominator conversion can produce inf/inf = NaN).
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both parts down so each fits comfortably in f64, preserving the
    // quotient up to rounding.
    let num = r.numer();
    let den = r.denom();
    let shift = (num.bits().max(den.bits()) as i64 - 900).max(0) as u64;
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Sign of a rational as −1, 0, +1.
pub fn rat_sign(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Continued-fraction convergents of an exact rational, cheapest first.
/// Used to recognise the exact rational value behind a refined root interval.
pub fn convergents(x: &BigRational, max_den_bits: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut p0, mut q0) = (BigInt::from(1), BigInt::from(0));
    let (mut p1, mut q1) = (x.floor().to_integer(), BigInt::from(1));
    out.push(BigRational::new(p1.clone(), q1.clone()));
    let mut frac = x - x.floor();
    while !frac.is_zero() && q1.bits() <= max_den_bits && out.len() < 128 {
        let inv = frac.recip();
        let a = inv.floor().to_integer();
        frac = &inv - inv.floor();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        p0 = core::mem::replace(&mut p1, p2);
        q0 = core::mem::replace(&mut q1, q2);
        out.push(BigRational::new(p1.clone(), q1.clone()));
    }
    out
}

/// |r| ≤ 2^−k check without float conversion.
pub fn narrower_than_pow2(width: &BigRational, k: u32) -> bool {
    width.abs() * BigRational::from_integer(BigInt::from(1) << k)
        <= BigRational::from_integer(BigInt::from(1))
}

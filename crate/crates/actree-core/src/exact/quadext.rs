//! Exact arithmetic in the real quadratic extension ℚ(√d), d > 0.
//!
//! Band-edge values of the surd functions live in ℚ(√(q−1)): the square root
//! factor vanishes there, but the evaluation point itself (±q/a or ±a/q)
//! is irrational. Carrying x + y√d exactly lets edge criteria be decided by
//! sign tests instead of floating-point comparisons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::{f64_sqrt, rat_sign, ratio_to_f64};

/// An element x + y·√d of ℚ(√d) with d a positive integer.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    x: BigRational,
    y: BigRational,
    d: BigInt,
}

impl core::fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} + {}·√{}", self.x, self.y, self.d)
    }
}

impl QuadExt {
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Self {
        assert!(d.is_positive(), "QuadExt needs a positive radicand");
        // A perfect-square radicand (q − 1 square, e.g. q = 5 or q = 10)
        // folds into the rational part; otherwise nonzero elements of zero
        // norm would exist and division via the conjugate would break.
        let r = d.sqrt();
        if &r * &r == d {
            let x = x + y * BigRational::from_integer(r);
            return QuadExt { x, y: BigRational::zero(), d };
        }
        QuadExt { x, y, d }
    }

    pub fn rational(x: BigRational, d: BigInt) -> Self {
        QuadExt::new(x, BigRational::zero(), d)
    }

    /// y·√d.
    pub fn pure_root(y: BigRational, d: BigInt) -> Self {
        QuadExt::new(BigRational::zero(), y, d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.x
    }

    pub fn root_part(&self) -> &BigRational {
        &self.y
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Exact rational value if the root part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.y.is_zero().then_some(&self.x)
    }

    fn assert_same_field(&self, other: &QuadExt) {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        self.assert_same_field(other);
        QuadExt::new(&self.x + &other.x, &self.y + &other.y, self.d.clone())
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.assert_same_field(other);
        QuadExt::new(&self.x - &other.x, &self.y - &other.y, self.d.clone())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(-&self.x, -&self.y, self.d.clone())
    }

    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        self.assert_same_field(other);
        let d = BigRational::from_integer(self.d.clone());
        QuadExt::new(
            &self.x * &other.x + &self.y * &other.y * &d,
            &self.x * &other.y + &self.y * &other.x,
            self.d.clone(),
        )
    }

    /// Division via the conjugate; panics on zero divisor.
    pub fn div(&self, other: &QuadExt) -> QuadExt {
        self.assert_same_field(other);
        assert!(!other.is_zero(), "division by zero in ℚ(√d)");
        let d = BigRational::from_integer(self.d.clone());
        // (x + y√d)(x' − y'√d) / (x'² − y'²d)
        let norm = &other.x * &other.x - &other.y * &other.y * &d;
        let num = self.mul(&QuadExt::new(other.x.clone(), -&other.y, self.d.clone()));
        QuadExt::new(num.x / &norm, num.y / &norm, self.d.clone())
    }

    /// Exact sign: −1, 0, +1. Decided by comparing x² against y²·d when the
    /// two parts disagree in sign.
    pub fn sign(&self) -> i32 {
        let sx = rat_sign(&self.x);
        let sy = rat_sign(&self.y);
        if sy == 0 {
            return sx;
        }
        if sx == 0 {
            return sy;
        }
        if sx == sy {
            return sx;
        }
        // Opposite signs: |x| vs |y|√d decides; x² > y²d means the rational
        // part dominates.
        let d = BigRational::from_integer(self.d.clone());
        let cmp = &self.x * &self.x - &self.y * &self.y * &d;
        match rat_sign(&cmp) {
            0 => 0,
            1 => sx,
            _ => sy,
        }
    }

    /// Exact polynomial evaluation at this point (powers of √d fold back
    /// into the x + y√d form).
    pub fn eval_poly(&self, p: &Poly) -> QuadExt {
        let mut acc = QuadExt::rational(BigRational::zero(), self.d.clone());
        for c in p.coeffs().iter().rev() {
            acc = acc
                .mul(self)
                .add(&QuadExt::rational(c.clone(), self.d.clone()));
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.x) + ratio_to_f64(&self.y) * f64_sqrt(self.d.to_f64().unwrap_or(f64::NAN))
    }
}

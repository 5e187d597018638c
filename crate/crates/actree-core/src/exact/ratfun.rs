//! Rational functions (quotients of exact polynomials) in fully reduced form.
//!
//! The invariant is: denominator monic and nonzero, gcd(numerator,
//! denominator) = 1. Zero is represented as 0/1. With the invariant held,
//! equality of representations is equality of functions.

use alloc::vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use super::quadext::QuadExt;
use crate::error::Error;
use crate::Result;

/// A reduced quotient of rational polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl core::fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl RationalFunction {
    /// Builds the reduced form of num/den. Fails on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().is_some_and(|d| d > 0) {
            (num.div_exact(&g), den.div_exact(&g))
        } else {
            (num, den)
        };
        let lead_inv = den.leading_coeff().recip();
        RationalFunction {
            num: num.scale(&lead_inv),
            den: den.monic(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable itself, x/1.
    pub fn variable() -> Self {
        RationalFunction::from_poly(Poly::from_integers(&[0, 1]))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().map_or(true, |d| d == 0) && self.den.degree() == Some(0)
    }

    /// Reciprocal; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        Self::reduce(num, den)
    }

    /// Exact value at a rational point, or `None` on a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.num.eval_complex(x) / self.den.eval_complex(x)
    }

    /// Exact value at a point of ℚ(√d), or `None` on a pole.
    pub fn eval_quadext(&self, x: &QuadExt) -> Option<QuadExt> {
        let d = x.eval_poly(&self.den);
        if d.is_zero() {
            return None;
        }
        Some(x.eval_poly(&self.num).div(&d))
    }

    /// Substitutes x ↦ 1/x exactly.
    pub fn recip_var(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        // num(1/x)/den(1/x) = x^(dd−dn) · rev(num)/rev(den)
        if dd > dn {
            num = num.shift_up(dd - dn);
        } else {
            den = den.shift_up(dn - dd);
        }
        Self::reduce(num, den)
    }

    /// Substitutes x ↦ c·x exactly.
    pub fn compose_scale(&self, c: &BigRational) -> Self {
        Self::reduce(self.num.compose_scale(c), self.den.compose_scale(c))
    }

    /// Multiplies by x^k (k may be negative).
    pub fn mul_var_pow(&self, k: i64) -> Self {
        if k >= 0 {
            Self::reduce(self.num.shift_up(k as usize), self.den.clone())
        } else {
            Self::reduce(self.num.clone(), self.den.shift_up((-k) as usize))
        }
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RationalFunction::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Formal power-series coefficients around 0 up to order `n` inclusive.
    /// Fails with `PoleAtOrigin` if the denominator vanishes at 0 and the
    /// numerator does not compensate.
    pub fn series(&self, n: usize) -> Result<alloc::vec::Vec<BigRational>> {
        let (coeffs, shift) = self.laurent_series(n)?;
        if shift > 0 {
            return Err(Error::PoleAtOrigin);
        }
        Ok(coeffs)
    }

    /// Series of x^m·f(x) where m is the denominator's order of vanishing at
    /// the origin; returns (coefficients of the shifted series starting at
    /// x^0 through x^n, m). The caller decides whether negative powers are
    /// acceptable once numerator cancellations elsewhere are accounted for.
    pub(crate) fn laurent_series(
        &self,
        n: usize,
    ) -> Result<(alloc::vec::Vec<BigRational>, usize)> {
        if self.is_zero() {
            return Ok((vec![BigRational::zero(); n + 1], 0));
        }
        let m = self.den.valuation().expect("nonzero denominator");
        let d0 = self.den.shift_down(m);
        // f(x)·x^m = num/d0 with d0(0) ≠ 0: standard recurrence.
        let c0_inv = d0.coeff(0).recip();
        let mut out = alloc::vec::Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(d0.degree().unwrap_or(0)) {
                let prev: &BigRational = &out[k - j];
                acc -= d0.coeff(j) * prev;
            }
            out.push(acc * &c0_inv);
        }
        Ok((out, m))
    }
}

impl core::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl core::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl core::ops::Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::reduce(num, den)
    }
}

impl core::ops::Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl core::ops::Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        // Cross-reduce before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let reduce_pair = |p: &Poly, g: &Poly| {
            if g.degree().is_some_and(|d| d > 0) {
                p.div_exact(g)
            } else {
                p.clone()
            }
        };
        let num = &reduce_pair(&self.num, &g1) * &reduce_pair(&rhs.num, &g2);
        let den = &reduce_pair(&self.den, &g2) * &reduce_pair(&rhs.den, &g1);
        RationalFunction::reduce(num, den)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl core::ops::$trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl core::ops::$trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl core::ops::Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        Ok(self * &rhs.recip()?)
    }
}

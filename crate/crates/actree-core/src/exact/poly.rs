//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros, so the
//! zero polynomial is the empty coefficient vector. Everything here is exact;
//! floating-point evaluation is provided only as a convenience for callers
//! that have already finished their exact reasoning.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat_sign, ratio_to_f64};

/// A polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl core::fmt::Debug for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// c·x^k.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Convenience constructor from small integers, lowest degree first.
    pub fn from_integers(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| super::rat_int(n)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Lowest index with a nonzero coefficient (order of vanishing at 0).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Division by the leading coefficient; no-op on zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Scales so the leading coefficient is positive (sign-preserving up to a
    /// positive factor — what Sturm chains need).
    pub fn normalize_positive(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coeff().abs().recip())
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by x^k exactly; panics if the valuation is too small.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        assert!(
            self.coeffs[..k].iter().all(Zero::is_zero),
            "shift_down would drop nonzero coefficients"
        );
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Substitutes x ↦ c·x.
    pub fn compose_scale(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let out = a * &pow;
                    pow *= c;
                    out
                })
                .collect(),
        )
    }

    /// Reverses coefficients: x^n·p(1/x) for n = deg p.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ratio_to_f64(c);
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + ratio_to_f64(c);
        }
        acc
    }

    /// Sign of the value at an exact point: −1, 0, +1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        rat_sign(&self.eval(x))
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.degree().unwrap();
        if self.degree().map_or(true, |n| n < d) {
            return (Poly::zero(), self.clone());
        }
        let n = self.degree().unwrap();
        let lead_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); n - d + 1];
        for k in (d..=n).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + j;
                let delta = dc * &f;
                rem[idx] -= delta;
            }
            quo[k - d] = f;
        }
        (Poly::new(quo), Poly::new(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Squarefree part (product of distinct irreducible factors, monic).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.div_exact(&g).monic()
    }

    /// Yun squarefree decomposition: pairs (monic factor, multiplicity) with
    /// the factors pairwise coprime and ∏ factor^multiplicity = monic(self).
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().map_or(true, |d| d == 0) {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a);
        let c = df.div_exact(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1usize;
        while b.degree().is_some_and(|deg| deg > 0) {
            let fac = b.gcd(&d);
            b = b.div_exact(&fac);
            let c_next = d.div_exact(&fac);
            d = &c_next - &b.derivative();
            if fac.degree().is_some_and(|deg| deg > 0) {
                out.push((fac.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// Sturm chain of a squarefree polynomial (positive-scalar normalized).
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.normalize_positive(), self.derivative().normalize_positive()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].divrem(&chain[k - 1]);
            chain.push((-r).normalize_positive());
        }
        chain
    }
}

/// Sign variations of a Sturm chain at an exact point.
pub fn sign_variations_at(chain: &[Poly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut variations = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// Number of distinct real roots of the chain's polynomial in (lo, hi],
/// assuming the chain came from a squarefree polynomial.
pub fn sturm_count(chain: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations_at(chain, lo) - sign_variations_at(chain, hi)
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl core::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(coeffs)
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(coeffs)
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl core::ops::$trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl core::ops::$trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl core::ops::$trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn divrem_reconstructs() {
        let f = Poly::from_integers(&[2, -3, 0, 1, 5]);
        let g = Poly::from_integers(&[1, 4, 2]);
        let (q, r) = f.divrem(&g);
        assert_eq!(&(&q * &g) + &r, f);
        assert!(r.degree().unwrap() < g.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = Poly::from_integers(&[-1, 1]); // x − 1
        let f = &shared * &Poly::from_integers(&[3, 0, 1]);
        let g = &shared * &Poly::from_integers(&[5, 2]);
        assert_eq!(f.gcd(&g), shared.monic());
    }

    #[test]
    fn yun_finds_multiplicities() {
        // (x−1)²(x+2)³·x
        let a = Poly::from_integers(&[-1, 1]);
        let b = Poly::from_integers(&[2, 1]);
        let f = &(&(&a * &a) * &(&(&b * &b) * &b)) * &Poly::from_integers(&[0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert!(dec.contains(&(Poly::from_integers(&[0, 1]), 1)));
        assert!(dec.contains(&(a.monic(), 2)));
        assert!(dec.contains(&(b.monic(), 3)));
    }

    #[test]
    fn sturm_counts_roots_of_quartic() {
        // (x² − 2)(x² − 9) has roots ±√2, ±3.
        let f = &Poly::from_integers(&[-2, 0, 1]) * &Poly::from_integers(&[-9, 0, 1]);
        let chain = f.sturm_chain();
        assert_eq!(sturm_count(&chain, &rat_int(-10), &rat_int(10)), 4);
        assert_eq!(sturm_count(&chain, &rat_int(0), &rat_int(2)), 1);
        assert_eq!(sturm_count(&chain, &rat(3, 2), &rat_int(4)), 1);
        assert_eq!(sturm_count(&chain, &rat_int(-1), &rat_int(1)), 0);
    }

    #[test]
    fn reversal_matches_inverse_substitution() {
        let f = Poly::from_integers(&[3, 0, -1, 7]);
        let x = rat(5, 3);
        let lhs = f.reversed().eval(&x);
        let rhs = f.eval(&x.recip()) * x.clone() * x.clone() * x.clone();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn valuation_and_shifts() {
        let f = Poly::from_integers(&[0, 0, 4, 1]);
        assert_eq!(f.valuation(), Some(2));
        assert_eq!(f.shift_down(2), Poly::from_integers(&[4, 1]));
        assert_eq!(f.shift_down(2).shift_up(2), f);
    }
}

//! The quadratic surd field in which every walk generating function and
//! resolvent element of an asymptotic tree lives.
//!
//! An element is A(x) + Ã(x)·s(x) with A, Ã rational functions and s the
//! square root attached to the branching number q:
//!
//! * variable `Z` (generating functions): s(z) = √(q² − 4(q−1)z²), the
//!   branch that is positive near 0 with s(0) = q; its real branch cut is
//!   |z| ≥ q/a where a = 2√(q−1).
//! * variable `Lambda` (resolvents): S(λ) = √(q²λ² − 4(q−1)), the branch
//!   asymptotic to qλ at infinity, cut along the spectral band
//!   [−a/q, a/q]; its upper boundary value there is +i√(4(q−1) − q²λ²).
//!
//! Since s² is the rational weight polynomial, the set of such elements is
//! closed under all four field operations; division goes through the
//! conjugate A − Ã·s. Equality of the two rational components is equality
//! of functions because s is not itself rational.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::quadext::QuadExt;
use super::ratfun::RationalFunction;
use super::{f64_sqrt, rat, rat_int};
use crate::error::Error;
use crate::Result;

#[allow(unused_imports)]
use num_traits::Float;

/// Which variable (and therefore which branch) the function is written in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variable {
    /// Generating-function variable z; s(0) = q.
    Z,
    /// Spectral variable λ; S(λ) ~ qλ at infinity.
    Lambda,
}

/// Side from which a point on the branch cut is approached.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Limit from the upper half-plane (the default for spectral densities).
    Above,
    /// Limit from the lower half-plane.
    Below,
}

/// A(x) + Ã(x)·s(x) over ℚ, tagged with q and the variable.
#[derive(Clone, PartialEq, Eq)]
pub struct SurdFunction {
    rational: RationalFunction,
    surd: RationalFunction,
    q: u32,
    var: Variable,
}

impl core::fmt::Debug for SurdFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "[{:?}] + [{:?}]·s  (q = {}, {:?})",
            self.rational, self.surd, self.q, self.var
        )
    }
}

/// The weight polynomial s² for the given q and variable.
pub fn weight_poly(q: u32, var: Variable) -> Poly {
    let q = i64::from(q);
    match var {
        Variable::Z => Poly::from_integers(&[q * q, 0, -4 * (q - 1)]),
        Variable::Lambda => Poly::from_integers(&[-4 * (q - 1), 0, q * q]),
    }
}

/// Power-series coefficients of s(z) = q√(1 − (4(q−1)/q²)z²) around 0.
pub fn s_series(q: u32, order: usize) -> Vec<BigRational> {
    let t = rat(4 * (i64::from(q) - 1), i64::from(q) * i64::from(q));
    let mut out = vec![BigRational::zero(); order + 1];
    // binom(1/2, k) via the recurrence c_k = c_{k−1}·(3/2 − k)/k.
    let mut c = BigRational::one();
    let mut t_pow = BigRational::one(); // (−t)^k
    for k in 0..=(order / 2) {
        if k > 0 {
            c = c * (rat(3, 2) - rat_int(k as i64)) / rat_int(k as i64);
            t_pow *= -&t;
        }
        out[2 * k] = rat_int(i64::from(q)) * &c * &t_pow;
    }
    out
}

impl SurdFunction {
    /// Builds A + Ã·s. This is the raw constructor; the closed forms of the
    /// tree functions are built on top of it elsewhere.
    pub fn new(rational: RationalFunction, surd: RationalFunction, q: u32, var: Variable) -> Self {
        assert!(q >= 2, "branching number must be at least 2");
        SurdFunction {
            rational,
            surd,
            q,
            var,
        }
    }

    pub fn zero(q: u32, var: Variable) -> Self {
        SurdFunction::new(RationalFunction::zero(), RationalFunction::zero(), q, var)
    }

    pub fn one(q: u32, var: Variable) -> Self {
        SurdFunction::from_rational(RationalFunction::one(), q, var)
    }

    pub fn constant(c: BigRational, q: u32, var: Variable) -> Self {
        SurdFunction::from_rational(RationalFunction::constant(c), q, var)
    }

    pub fn from_rational(rational: RationalFunction, q: u32, var: Variable) -> Self {
        SurdFunction::new(rational, RationalFunction::zero(), q, var)
    }

    /// c(x)·s(x).
    pub fn root_multiple(surd: RationalFunction, q: u32, var: Variable) -> Self {
        SurdFunction::new(RationalFunction::zero(), surd, q, var)
    }

    pub fn rational_part(&self) -> &RationalFunction {
        &self.rational
    }

    pub fn surd_part(&self) -> &RationalFunction {
        &self.surd
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    fn weight(&self) -> RationalFunction {
        RationalFunction::from_poly(weight_poly(self.q, self.var))
    }

    fn assert_compatible(&self, other: &SurdFunction) {
        assert_eq!(self.var, other.var, "mixed surd variables");
        assert_eq!(self.q, other.q, "mixed branching numbers");
    }

    fn compatible(&self, other: &SurdFunction) -> Result<()> {
        if self.q != other.q || self.var != other.var {
            return Err(Error::MismatchedDegreeQ);
        }
        Ok(())
    }

    /// A − Ã·s.
    pub fn conjugate(&self) -> Self {
        SurdFunction::new(self.rational.clone(), -&self.surd, self.q, self.var)
    }

    /// The rational norm A² − Ã²·s². Zero exactly when the function is zero,
    /// because s is not a rational function.
    pub fn norm(&self) -> RationalFunction {
        &(&self.rational * &self.rational) - &(&(&self.surd * &self.surd) * &self.weight())
    }

    pub fn add(&self, other: &SurdFunction) -> Self {
        self.assert_compatible(other);
        SurdFunction::new(
            &self.rational + &other.rational,
            &self.surd + &other.surd,
            self.q,
            self.var,
        )
    }

    pub fn sub(&self, other: &SurdFunction) -> Self {
        self.assert_compatible(other);
        SurdFunction::new(
            &self.rational - &other.rational,
            &self.surd - &other.surd,
            self.q,
            self.var,
        )
    }

    pub fn neg(&self) -> Self {
        SurdFunction::new(-&self.rational, -&self.surd, self.q, self.var)
    }

    pub fn mul(&self, other: &SurdFunction) -> Self {
        self.assert_compatible(other);
        let w = self.weight();
        let rational =
            &(&self.rational * &other.rational) + &(&(&self.surd * &other.surd) * &w);
        let surd = &(&self.rational * &other.surd) + &(&self.surd * &other.rational);
        SurdFunction::new(rational, surd, self.q, self.var)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let s = RationalFunction::constant(c.clone());
        SurdFunction::new(&self.rational * &s, &self.surd * &s, self.q, self.var)
    }

    pub fn mul_rational(&self, r: &RationalFunction) -> Self {
        SurdFunction::new(&self.rational * r, &self.surd * r, self.q, self.var)
    }

    /// Multiplies by x^k (k may be negative).
    pub fn mul_var_pow(&self, k: i64) -> Self {
        SurdFunction::new(
            self.rational.mul_var_pow(k),
            self.surd.mul_var_pow(k),
            self.q,
            self.var,
        )
    }

    /// Multiplicative inverse via the conjugate; fails on zero.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        let norm = self.norm();
        let norm_inv = norm.recip()?;
        Ok(self.conjugate().mul_rational(&norm_inv))
    }

    pub fn div(&self, other: &SurdFunction) -> Result<Self> {
        self.assert_compatible(other);
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = SurdFunction::one(self.q, self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Checked variants used at API boundaries: combining operands built for
    /// different q (or different variables) is reported as an error instead
    /// of a panic.
    pub fn checked_add(&self, other: &SurdFunction) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &SurdFunction) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &SurdFunction) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul(other))
    }

    pub fn checked_div(&self, other: &SurdFunction) -> Result<Self> {
        self.compatible(other)?;
        self.div(other)
    }

    /// Power-series coefficients around z = 0 up to `order` inclusive
    /// (generating-function variable only).
    ///
    /// Removable singularities at the origin — a pole of one part cancelled
    /// by the other, as in (q − s(z))/z — are expanded through exactly:
    /// both parts are multiplied by z^m, expanded, summed, and the m leading
    /// coefficients are required to vanish. A genuine pole fails with
    /// `PoleAtOrigin`.
    pub fn series(&self, order: usize) -> Result<Vec<BigRational>> {
        assert_eq!(
            self.var,
            Variable::Z,
            "series expansion is defined in the generating-function variable"
        );
        if self.is_zero() {
            return Ok(vec![BigRational::zero(); order + 1]);
        }
        let m_a = self.rational.denominator().valuation().unwrap_or(0);
        let m_b = self.surd.denominator().valuation().unwrap_or(0);
        let m = m_a.max(m_b);
        let total = order + m;
        let (a_shifted, _) = self.rational.laurent_series(total)?;
        let (b_shifted, _) = self.surd.laurent_series(total)?;
        let pad = |series: Vec<BigRational>, by: usize| -> Vec<BigRational> {
            let mut out = vec![BigRational::zero(); by];
            out.extend(series);
            out.truncate(total + 1);
            out
        };
        let a_part = pad(a_shifted, m - m_a);
        let b_part = pad(b_shifted, m - m_b);
        let s = s_series(self.q, total);
        let mut combined = a_part;
        // combined += (b_part ∗ s), truncated convolution.
        for k in 0..=total {
            let mut acc = combined[k].clone();
            for j in 0..=k {
                if !b_part[j].is_zero() && !s[k - j].is_zero() {
                    acc += &b_part[j] * &s[k - j];
                }
            }
            combined[k] = acc;
        }
        if combined.iter().take(m).any(|c| !c.is_zero()) {
            return Err(Error::PoleAtOrigin);
        }
        Ok(combined[m..].to_vec())
    }

    /// The resolvent-side rewrite R(λ) = (1/λ)·f(1/λ) of a generating
    /// function f(z); uses s(1/λ) = S(λ)/λ, valid for the chosen branches.
    pub fn resolvent(&self) -> Self {
        assert_eq!(self.var, Variable::Z, "resolvent acts on generating functions");
        SurdFunction::new(
            self.rational.recip_var().mul_var_pow(-1),
            self.surd.recip_var().mul_var_pow(-2),
            self.q,
            Variable::Lambda,
        )
    }

    /// Branch value of s at a complex point.
    pub fn branch_value(&self, x: Complex64, side: Side) -> Complex64 {
        branch_value(self.q, self.var, x, side)
    }

    /// Complex evaluation honoring the branch; `side` picks the boundary
    /// value when x sits exactly on the cut.
    pub fn eval_complex(&self, x: Complex64, side: Side) -> Complex64 {
        self.rational.eval_complex(x) + self.surd.eval_complex(x) * self.branch_value(x, side)
    }

    /// Real evaluation away from the cut (real s); the caller is responsible
    /// for x being off-cut, otherwise the surd contribution is NaN.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let w = weight_poly(self.q, self.var).eval_f64(x);
        let s = match self.var {
            Variable::Z => f64_sqrt(w),
            Variable::Lambda => x.signum() * f64_sqrt(w),
        };
        self.rational.eval_f64(x) + self.surd.eval_f64(x) * s
    }

    /// Exact evaluation at the band edge nearest to `sign`·∞, where s
    /// vanishes and the value lies in ℚ(√(q−1)). Fails if the rational part
    /// has a pole exactly there.
    pub fn eval_band_edge(&self, sign: i32) -> Result<QuadExt> {
        assert!(sign == 1 || sign == -1);
        let d = BigInt::from(i64::from(self.q) - 1);
        let q = i64::from(self.q);
        let y = match self.var {
            // z-edge: ±q/a = ±q√(q−1)/(2(q−1))
            Variable::Z => rat(sign as i64 * q, 2 * (q - 1)),
            // λ-edge: ±a/q = ±2√(q−1)/q
            Variable::Lambda => rat(sign as i64 * 2, q),
        };
        let point = QuadExt::pure_root(y, d);
        self.rational
            .eval_quadext(&point)
            .ok_or(Error::EvaluationAtPole)
    }
}

/// Branch value of the square root s for given q/variable at a complex point.
pub fn branch_value(q: u32, var: Variable, x: Complex64, side: Side) -> Complex64 {
    let qf = f64::from(q);
    let a2 = 4.0 * (qf - 1.0);
    let flip = match side {
        Side::Above => 1.0,
        Side::Below => -1.0,
    };
    match var {
        Variable::Z => {
            let cut_start = qf / f64_sqrt(a2);
            if x.im == 0.0 && x.re.abs() >= cut_start {
                // Boundary value from the chosen side:
                // s(x ± i0) = ∓i·sgn(x)·√(a²x² − q²).
                let mag = f64_sqrt(a2 * x.re * x.re - qf * qf);
                return Complex64::new(0.0, -flip * x.re.signum() * mag);
            }
            // Principal branch of q·√(1 − (a z/q)²): analytic off the cut,
            // equals q at 0.
            let t = Complex64::new(a2 / (qf * qf), 0.0) * x * x;
            qf * (Complex64::new(1.0, 0.0) - t).sqrt()
        }
        Variable::Lambda => {
            let edge = f64_sqrt(a2) / qf;
            if x.im == 0.0 && x.re.abs() <= edge {
                // S(λ ± i0) = ±i√(4(q−1) − q²λ²) across the whole band.
                let mag = f64_sqrt(a2 - qf * qf * x.re * x.re);
                return Complex64::new(0.0, flip * mag);
            }
            if x.im == 0.0 {
                // Real point outside the band: S is real, ~ qλ at infinity.
                let mag = f64_sqrt(qf * qf * x.re * x.re - a2);
                return Complex64::new(x.re.signum() * mag, 0.0);
            }
            // qλ·√(1 − a²/(q²λ²)) with the principal root: analytic off the
            // cut and asymptotic to qλ.
            let t = Complex64::new(a2, 0.0) / (Complex64::new(qf * qf, 0.0) * x * x);
            qf * x * (Complex64::new(1.0, 0.0) - t).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_integers(num), Poly::from_integers(den)).unwrap()
    }

    #[test]
    fn s_series_matches_binomial_expansion() {
        // q = 4: s = √(16 − 12z²) = 4 − (3/2)z² − (9/32)z⁴ − …
        let s = s_series(4, 4);
        assert_eq!(s[0], rat(4, 1));
        assert_eq!(s[1], rat(0, 1));
        assert_eq!(s[2], rat(-3, 2));
        assert_eq!(s[3], rat(0, 1));
        assert_eq!(s[4], rat(-9, 32));
    }

    #[test]
    fn field_inverse_round_trip() {
        let f = SurdFunction::new(rf(&[1, 2], &[3, 0, 1]), rf(&[0, 1], &[1, 1]), 4, Variable::Z);
        let inv = f.inverse().unwrap();
        let one = f.mul(&inv);
        assert!(one.surd_part().is_zero());
        assert_eq!(*one.rational_part(), RationalFunction::one());
        assert!(SurdFunction::zero(4, Variable::Z).inverse().is_err());
    }

    #[test]
    fn squared_root_term_is_the_weight() {
        let s = SurdFunction::root_multiple(RationalFunction::one(), 5, Variable::Z);
        let sq = s.mul(&s);
        assert!(sq.surd_part().is_zero());
        assert_eq!(
            *sq.rational_part(),
            RationalFunction::from_poly(weight_poly(5, Variable::Z))
        );
    }

    #[test]
    fn series_handles_cancelling_pole() {
        // (q − s)/z for q = 4: both parts have a simple pole at 0 that
        // cancels; the series is (3/2)z + (9/32)z³ + …
        let f = SurdFunction::new(rf(&[4], &[0, 1]), rf(&[-1], &[0, 1]), 4, Variable::Z);
        let series = f.series(3).unwrap();
        assert_eq!(series[0], rat(0, 1));
        assert_eq!(series[1], rat(3, 2));
        assert_eq!(series[2], rat(0, 1));
        assert_eq!(series[3], rat(9, 32));
    }

    #[test]
    fn series_rejects_genuine_pole() {
        let f = SurdFunction::new(RationalFunction::zero(), rf(&[1], &[0, 1]), 4, Variable::Z);
        assert!(matches!(f.series(2), Err(Error::PoleAtOrigin)));
    }

    #[test]
    fn mismatched_q_is_reported() {
        let f = SurdFunction::one(4, Variable::Z);
        let g = SurdFunction::one(5, Variable::Z);
        assert!(matches!(f.checked_add(&g), Err(Error::MismatchedDegreeQ)));
        assert!(matches!(f.checked_mul(&g), Err(Error::MismatchedDegreeQ)));
    }

    #[test]
    fn resolvent_matches_substitution_numerically() {
        // f(z) = z + z²·s(z); R(λ) = f(1/λ)/λ evaluated at a real point
        // outside the band must agree.
        let f = SurdFunction::new(rf(&[0, 1], &[1]), rf(&[0, 0, 1], &[1]), 4, Variable::Z);
        let r = f.resolvent();
        let lam = 1.7;
        let direct = f.eval_f64(1.0 / lam) / lam;
        assert!((r.eval_f64(lam) - direct).abs() < 1e-12);
    }

    #[test]
    fn lambda_branch_boundary_values() {
        // Inside the band the upper boundary value of S is +i√(a² − q²λ²).
        let q = 4;
        let x = Complex64::new(0.3, 0.0);
        let above = branch_value(q, Variable::Lambda, x, Side::Above);
        let expect = (12.0f64 - 16.0 * 0.09).sqrt();
        assert!((above - Complex64::new(0.0, expect)).norm() < 1e-12);
        let below = branch_value(q, Variable::Lambda, x, Side::Below);
        assert!((below + Complex64::new(0.0, expect)).norm() < 1e-12);
        // Just above the cut, the analytic formula converges to the boundary
        // value as ε → 0.
        let eps = branch_value(
            q,
            Variable::Lambda,
            Complex64::new(0.3, 1e-9),
            Side::Above,
        );
        assert!((eps - above).norm() < 1e-5);
        // Outside the band S is real with the sign of λ.
        let out = branch_value(q, Variable::Lambda, Complex64::new(-2.0, 0.0), Side::Above);
        assert!(out.im.abs() < 1e-15 && out.re < 0.0);
        assert!((out.re + (16.0f64 * 4.0 - 12.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn band_edge_value_is_exact() {
        // f = z (rational): at the upper z-edge q/a = 2/√3 (q = 4) the value
        // is 2√3/3.
        let f = SurdFunction::from_rational(rf(&[0, 1], &[1]), 4, Variable::Z);
        let v = f.eval_band_edge(1).unwrap();
        assert!((v.to_f64() - 2.0 / 3.0f64.sqrt()).abs() < 1e-15);
        // Pole exactly at the edge is reported.
        let denom = Poly::from_integers(&[-16, 0, 12]); // 12z² − 16 vanishes at z = ±2/√3
        let g = SurdFunction::from_rational(
            RationalFunction::new(Poly::one(), denom).unwrap(),
            4,
            Variable::Z,
        );
        assert!(matches!(g.eval_band_edge(1), Err(Error::EvaluationAtPole)));
    }
}

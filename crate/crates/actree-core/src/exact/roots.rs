//! Exact isolation and refinement of real polynomial roots.
//!
//! Roots are produced as open rational intervals that each contain exactly
//! one distinct real root, together with that root's multiplicity in the
//! original polynomial. Intervals can be narrowed arbitrarily by bisection,
//! compared exactly against rational points, and asked for the exact sign of
//! another polynomial at the root — all without floating point.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{sturm_count, Poly};
use super::{convergents, ratio_to_f64};

/// One real root of a polynomial, known exactly through an isolating interval.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    /// Squarefree factor having this root as a simple root.
    factor: Poly,
    /// Multiplicity of the root in the polynomial that was isolated.
    multiplicity: usize,
    lo: BigRational,
    hi: BigRational,
    /// Cached exact value when the root is rational.
    exact: Option<BigRational>,
}

impl IsolatedRoot {
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / super::rat_int(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        match &self.exact {
            Some(x) => ratio_to_f64(x),
            None => ratio_to_f64(&self.midpoint()),
        }
    }

    /// The defining squarefree factor (simple root inside the interval).
    pub fn factor(&self) -> &Poly {
        &self.factor
    }

    /// Exact rational value of the root, if it is rational. Detection uses
    /// continued-fraction convergents of the interval midpoint, verified by
    /// exact evaluation, so a returned value is certain; `None` means the
    /// root is irrational or has a pathologically large denominator.
    pub fn exact_rational(&mut self) -> Option<BigRational> {
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        // Linear factor: read the root off directly.
        if self.factor.degree() == Some(1) {
            let root = -self.factor.coeff(0) / self.factor.coeff(1);
            self.exact = Some(root.clone());
            return Some(root);
        }
        self.refine_bits(128);
        for cand in convergents(&self.midpoint(), 100) {
            if cand > self.lo && cand < self.hi && self.factor.eval(&cand).is_zero() {
                self.exact = Some(cand.clone());
                return Some(cand);
            }
        }
        None
    }

    /// Narrows the interval until its width is ≤ 2^−bits.
    pub fn refine_bits(&mut self, bits: u32) {
        if self.exact.is_some() {
            let x = self.exact.clone().unwrap();
            let eps = BigRational::new(1.into(), num_bigint::BigInt::one() << (bits + 1));
            self.lo = &x - &eps;
            self.hi = &x + &eps;
            return;
        }
        let sign_lo = self.factor.sign_at(&self.lo);
        debug_assert_ne!(sign_lo, 0);
        debug_assert_eq!(self.factor.sign_at(&self.hi), -sign_lo);
        while !super::narrower_than_pow2(&self.width(), bits) {
            let mid = self.midpoint();
            let s = self.factor.sign_at(&mid);
            if s == 0 {
                self.exact = Some(mid);
                return self.refine_bits(bits);
            }
            if s == sign_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// Exact comparison of the root against a rational point.
    pub fn cmp_point(&mut self, x: &BigRational) -> Ordering {
        if let Some(v) = &self.exact {
            return v.cmp(x);
        }
        if *x <= self.lo {
            return Ordering::Greater;
        }
        if *x >= self.hi {
            return Ordering::Less;
        }
        let s = self.factor.sign_at(x);
        if s == 0 {
            self.exact = Some(x.clone());
            return Ordering::Equal;
        }
        // x strictly inside: the root lies on the side where the sign flips.
        if s == self.factor.sign_at(&self.lo) {
            self.lo = x.clone();
            Ordering::Greater
        } else {
            self.hi = x.clone();
            Ordering::Less
        }
    }

    /// Exact sign of another polynomial at this root: −1, 0, or +1.
    ///
    /// Zero is certified algebraically (the root is a shared root of the
    /// gcd); a nonzero sign is obtained by shrinking the interval until `g`
    /// provably has constant sign across it.
    pub fn sign_at_root(&mut self, g: &Poly) -> i32 {
        if g.is_zero() {
            return 0;
        }
        if let Some(x) = &self.exact {
            return g.sign_at(x);
        }
        let shared = self.factor.gcd(g);
        if shared.degree().is_some_and(|d| d > 0) {
            let chain = shared.sturm_chain();
            if sturm_count(&chain, &self.lo, &self.hi) > 0 {
                // The single root in this interval is also a root of g.
                return 0;
            }
        }
        let g_sf = g.squarefree_part();
        let chain = g_sf.sturm_chain();
        loop {
            let s_lo = g.sign_at(&self.lo);
            let s_hi = g.sign_at(&self.hi);
            if s_lo == s_hi && s_lo != 0 && sturm_count(&chain, &self.lo, &self.hi) == 0 {
                return s_lo;
            }
            self.bisect_once();
        }
    }

    fn bisect_once(&mut self) {
        let mid = self.midpoint();
        let s = self.factor.sign_at(&mid);
        if s == 0 {
            self.exact = Some(mid);
            return;
        }
        if s == self.factor.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }
}

/// Isolates the distinct real roots of `p` strictly inside (lo, hi),
/// ascending, with multiplicities. Roots exactly at the endpoints are
/// excluded.
pub fn isolate_real_roots(p: &Poly, lo: &BigRational, hi: &BigRational) -> Vec<IsolatedRoot> {
    assert!(lo < hi, "empty isolation interval");
    let mut out = Vec::new();
    if p.degree().map_or(true, |d| d == 0) {
        return out;
    }
    for (factor, multiplicity) in p.squarefree_decomposition() {
        // Shave endpoint roots off the factor so every remaining root is
        // strictly interior and Sturm endpoint evaluations are nonzero.
        let mut f = factor;
        for endpoint in [lo, hi] {
            while f.eval(endpoint).is_zero() {
                let linear = Poly::new(alloc::vec![-endpoint.clone(), BigRational::one()]);
                f = f.div_exact(&linear);
            }
        }
        if f.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let chain = f.sturm_chain();
        let mut stack = alloc::vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = sturm_count(&chain, &a, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(IsolatedRoot {
                    factor: f.clone(),
                    multiplicity,
                    lo: a,
                    hi: b,
                    exact: None,
                });
                continue;
            }
            let mid = (&a + &b) / super::rat_int(2);
            if f.eval(&mid).is_zero() {
                // A root exactly at the midpoint: carve out a tiny interval
                // around it that contains no other root.
                let mut delta = (&b - &a) / super::rat_int(4);
                loop {
                    let (m_lo, m_hi) = (&mid - &delta, &mid + &delta);
                    if !f.eval(&m_lo).is_zero()
                        && !f.eval(&m_hi).is_zero()
                        && sturm_count(&chain, &m_lo, &m_hi) == 1
                    {
                        stack.push((a.clone(), m_lo.clone()));
                        stack.push((m_hi.clone(), b.clone()));
                        out.push(IsolatedRoot {
                            factor: f.clone(),
                            multiplicity,
                            lo: m_lo,
                            hi: m_hi,
                            exact: Some(mid),
                        });
                        break;
                    }
                    delta /= super::rat_int(2);
                }
                continue;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    // Intervals from different squarefree factors may overlap even though
    // the roots themselves are distinct; shrink until pairwise disjoint so
    // the ascending sort is exact.
    disambiguate_order(&mut out);
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn disambiguate_order(roots: &mut [IsolatedRoot]) {
    let mut bits = 8u32;
    loop {
        let mut overlapping = false;
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                let disjoint = roots[i].hi <= roots[j].lo || roots[j].hi <= roots[i].lo;
                if !disjoint {
                    overlapping = true;
                    roots[i].refine_bits(bits);
                    roots[j].refine_bits(bits);
                }
            }
        }
        if !overlapping {
            return;
        }
        bits *= 2;
    }
}

/// Counts distinct real roots of `p` in the open interval (lo, hi).
pub fn count_real_roots(p: &Poly, lo: &BigRational, hi: &BigRational) -> usize {
    isolate_real_roots(p, lo, hi).len()
}

/// Convenience: all distinct real roots (Cauchy bound both sides).
pub fn isolate_all_real_roots(p: &Poly) -> Vec<IsolatedRoot> {
    if p.degree().map_or(true, |d| d == 0) {
        return Vec::new();
    }
    // Cauchy bound: 1 + max |a_k| / |a_n|.
    let lead = p.leading_coeff().abs();
    let mut bound = BigRational::one();
    for c in p.coeffs() {
        let ratio = c.abs() / &lead;
        if ratio > bound {
            bound = ratio;
        }
    }
    bound += BigRational::one();
    let hi = bound;
    let lo = -&hi;
    isolate_real_roots(p, &lo, &hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn isolates_mixed_rational_and_irrational_roots() {
        // (x − 1/2)²(x² − 2): roots 1/2 (double), ±√2.
        let lin = Poly::new(alloc::vec![rat(-1, 2), rat_int(1)]);
        let f = &(&lin * &lin) * &Poly::from_integers(&[-2, 0, 1]);
        let mut roots = isolate_all_real_roots(&f);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].multiplicity(), 1);
        roots[0].refine_bits(64);
        assert!((roots[0].to_f64() + core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(roots[1].exact_rational(), Some(rat(1, 2)));
        assert_eq!(roots[1].multiplicity(), 2);
        assert_eq!(roots[2].exact_rational(), None);
        roots[2].refine_bits(120);
        assert!((roots[2].to_f64() - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn open_interval_excludes_endpoints() {
        let f = Poly::from_integers(&[0, -1, 0, 1]); // x(x−1)(x+1)
        let roots = isolate_real_roots(&f, &rat_int(-1), &rat_int(1));
        assert_eq!(roots.len(), 1); // only 0 is interior
    }

    #[test]
    fn close_roots_get_separated() {
        // (x − 10⁻⁹)(x + 10⁻⁹)(x − 2)
        let e = rat(1, 1_000_000_000);
        let f = &(&Poly::new(alloc::vec![-e.clone(), rat_int(1)])
            * &Poly::new(alloc::vec![e.clone(), rat_int(1)]))
            * &Poly::from_integers(&[-2, 1]);
        let mut roots = isolate_all_real_roots(&f);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].exact_rational(), Some(-e.clone()));
        assert_eq!(roots[1].exact_rational(), Some(e));
        assert_eq!(roots[2].exact_rational(), Some(rat_int(2)));
    }

    #[test]
    fn sign_at_root_certifies_shared_zero() {
        // Root √2 of x²−2; g = (x²−2)(x+5) vanishes there, h = x−1 is +.
        let f = Poly::from_integers(&[-2, 0, 1]);
        let mut roots = isolate_real_roots(&f, &rat_int(0), &rat_int(2));
        assert_eq!(roots.len(), 1);
        let g = &f * &Poly::from_integers(&[5, 1]);
        assert_eq!(roots[0].sign_at_root(&g), 0);
        assert_eq!(roots[0].sign_at_root(&Poly::from_integers(&[-1, 1])), 1);
        assert_eq!(roots[0].sign_at_root(&Poly::from_integers(&[-3, 1])), -1);
    }

    #[test]
    fn cmp_point_is_exact() {
        let f = Poly::from_integers(&[-2, 0, 1]);
        let mut root = isolate_real_roots(&f, &rat_int(0), &rat_int(2))
            .pop()
            .unwrap();
        assert_eq!(root.cmp_point(&rat(3, 2)), Ordering::Less);
        assert_eq!(root.cmp_point(&rat(7, 5)), Ordering::Greater);
        assert_eq!(root.cmp_point(&rat(141_421_356, 100_000_000)), Ordering::Greater);
    }
}

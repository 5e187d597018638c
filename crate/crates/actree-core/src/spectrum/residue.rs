//! Pole location and residue extraction for resolvent surd functions.
//!
//! Every pure-point eigenvalue outside the band shows up as a real pole of a
//! diagonal resolvent entry B(λ) + B̃(λ)·S(λ). A denominator root is only a
//! candidate: the rational and surd parts can share a root whose residues
//! cancel exactly. Cancellation is decided without floating point — equality
//! of squared residues is a polynomial sign test at the isolated root, and
//! opposite signs are read off numerator/denominator sign tests — so every
//! candidate is either certified genuine or certified removable.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    count_real_roots, isolate_real_roots, rat_int, rat_sign, weight_poly, IsolatedRoot, Poly,
    QuadExt, RationalFunction, SurdFunction, Variable,
};

/// Collection of isolated roots with exact pairwise deduplication across
/// polynomials: two isolating intervals that overlap are refined until they
/// separate, unless a shared factor proves they hold the same root.
#[derive(Default)]
pub(crate) struct RootSet {
    roots: Vec<IsolatedRoot>,
}

impl RootSet {
    pub fn new() -> Self {
        RootSet { roots: Vec::new() }
    }

    pub fn insert(&mut self, mut root: IsolatedRoot) {
        for existing in &mut self.roots {
            if same_root(existing, &mut root) {
                return;
            }
        }
        self.roots.push(root);
    }

    pub fn into_sorted(mut self) -> Vec<IsolatedRoot> {
        self.roots.sort_by(|a, b| {
            let (alo, _) = a.interval();
            let (blo, _) = b.interval();
            alo.cmp(blo)
        });
        self.roots
    }
}

fn overlap(a: &IsolatedRoot, b: &IsolatedRoot) -> Option<(BigRational, BigRational)> {
    let (alo, ahi) = a.interval();
    let (blo, bhi) = b.interval();
    let lo = alo.max(blo).clone();
    let hi = ahi.min(bhi).clone();
    (lo < hi).then_some((lo, hi))
}

fn same_root(a: &mut IsolatedRoot, b: &mut IsolatedRoot) -> bool {
    let mut bits = 64u32;
    loop {
        let Some((lo, hi)) = overlap(a, b) else {
            return false;
        };
        let g = a.factor().gcd(b.factor());
        if g.degree().unwrap_or(0) >= 1 && count_real_roots(&g, &lo, &hi) > 0 {
            // The shared factor has a root inside both isolating intervals;
            // since each interval holds exactly one root of its own factor,
            // that root is common to both.
            return true;
        }
        a.refine_bits(bits);
        b.refine_bits(bits);
        bits += 32;
    }
}

/// Sign of the exterior branch value S(μ) at an isolated root: +1 on the
/// positive side of the band, −1 on the negative side.
pub(crate) fn exterior_s_sign(root: &mut IsolatedRoot) -> i32 {
    root.cmp_point(&rat_int(0)) as i32
}

/// Residue of a rational function at an isolated algebraic root, as f64.
/// Pole membership is decided exactly (certified sign of the denominator at
/// the root); only the value itself is evaluated in floating point.
pub(crate) fn residue_at_root_f64(f: &RationalFunction, root: &mut IsolatedRoot) -> Result<f64> {
    if root.sign_at_root(f.denominator()) != 0 {
        return Ok(0.0);
    }
    let dprime = f.denominator().derivative();
    if root.sign_at_root(&dprime) == 0 {
        return Err(Error::HigherOrderPole);
    }
    root.refine_bits(96);
    let x = root.to_f64();
    Ok(f.numerator().eval_f64(x) / dprime.eval_f64(x))
}

/// √r for a nonnegative rational r, as an exact element of ℚ(√(num·den)).
pub(crate) fn sqrt_rational(r: &BigRational) -> QuadExt {
    assert!(!r.is_negative(), "square root of a negative rational");
    if r.is_zero() {
        return QuadExt::rational(BigRational::zero(), BigInt::from(2));
    }
    let d = r.numer() * r.denom();
    QuadExt::pure_root(BigRational::new(BigInt::from(1), r.denom().clone()), d)
}

/// Exact residue of B + B̃·S at a *rational* point μ with weight w(μ) > 0,
/// in ℚ(√(w(μ)·den²)). The branch is S(μ) = sgn(μ)·√(w(μ)).
///
/// Shared denominator roots of the two parts may be of any order as long as
/// the function itself has at most a simple pole: the full Laurent expansion
/// is computed exactly, so order-k part poles whose singular coefficients
/// cancel (as at λ = ±1 for symmetric cores) certify as removable. A genuine
/// pole of order ≥ 2 — impossible for a self-adjoint resolvent — errors.
pub(crate) fn surd_residue_exact(surd: &SurdFunction, mu: &BigRational) -> Result<QuadExt> {
    laurent_residue(surd, mu, rat_sign(mu))
}

/// Residue of B + B̃·S·s_sign at μ via exact Laurent expansion in ℚ(√w(μ)).
/// Zero means analytic at μ; a nonzero value is the simple-pole residue.
pub(crate) fn laurent_residue(
    surd: &SurdFunction,
    mu: &BigRational,
    s_sign: i32,
) -> Result<QuadExt> {
    let w = weight_poly(surd.q(), surd.var());
    let wc = taylor_coeffs(&w, mu);
    let wval = wc[0].clone();
    assert!(
        wval.is_positive(),
        "exact surd residues are defined off the closed band"
    );
    let s0 = sqrt_rational(&wval);
    let s0 = if s_sign < 0 { s0.neg() } else { s0 };
    let d = s0.radicand().clone();
    let lift = |x: &BigRational| QuadExt::rational(x.clone(), d.clone());

    let k_b = pole_order(surd.rational_part(), mu);
    let k_bt = pole_order(surd.surd_part(), mu);
    let k = k_b.max(k_bt);
    if k == 0 {
        return Ok(lift(&BigRational::zero()));
    }

    // Taylor coefficients of S(μ+t) from S² = w: s_j solves the convolution
    // Σ_{i+l=j} s_i s_l = w_j (w is quadratic, so w_j = 0 beyond j = 2).
    let mut s = alloc::vec![lift(&BigRational::zero()); k];
    s[0] = s0.clone();
    let two_s0 = s0.add(&s0);
    for j in 1..k {
        let mut acc = if j < wc.len() {
            lift(&wc[j])
        } else {
            lift(&BigRational::zero())
        };
        for i in 1..j {
            acc = acc.sub(&s[i].mul(&s[j - i]));
        }
        s[j] = acc.div(&two_s0);
    }

    // h(t) = t^k·(B + B̃·S)(μ+t): orders 0..k−1 decide pole order, and the
    // coefficient of t^{k−1} is the residue.
    let u = shifted_part_series(surd.rational_part(), mu, k, k_b);
    let v = shifted_part_series(surd.surd_part(), mu, k, k_bt);
    let mut residue = lift(&BigRational::zero());
    for j in 0..k {
        let mut c = lift(&u[j]);
        for i in 0..=j {
            c = c.add(&lift(&v[i]).mul(&s[j - i]));
        }
        if j + 1 == k {
            residue = c;
        } else if !c.is_zero() {
            return Err(Error::HigherOrderPole);
        }
    }
    Ok(residue)
}

/// Multiplicity of μ as a denominator root (0 when not a pole; numerator
/// and denominator are coprime, so this is the pole order).
fn pole_order(f: &RationalFunction, mu: &BigRational) -> usize {
    taylor_coeffs(f.denominator(), mu)
        .iter()
        .take_while(|c| c.is_zero())
        .count()
}

/// First k Taylor coefficients of t^k·num/den at μ, where μ has
/// multiplicity m in den: equals t^{k−m}·(num/(den/t^m)), a power-series
/// division over ℚ shifted up by k−m.
fn shifted_part_series(
    f: &RationalFunction,
    mu: &BigRational,
    k: usize,
    m: usize,
) -> Vec<BigRational> {
    let shift = k - m;
    let mut out = alloc::vec![BigRational::zero(); k];
    if shift >= k {
        // t^k·(analytic): no contribution below order k.
        return out;
    }
    let num = taylor_coeffs(f.numerator(), mu);
    let den_full = taylor_coeffs(f.denominator(), mu);
    let den = &den_full[m..];
    let len = k - shift;
    let mut series = alloc::vec![BigRational::zero(); len];
    for j in 0..len {
        let mut acc = num.get(j).cloned().unwrap_or_else(BigRational::zero);
        for i in 1..=j {
            if let Some(di) = den.get(i) {
                acc -= di * &series[j - i];
            }
        }
        series[j] = acc / &den[0];
    }
    out[shift..].clone_from_slice(&series);
    out
}

/// Coefficients of p(μ + t) in ascending powers of t, by repeated synthetic
/// division by (x − μ).
fn taylor_coeffs(p: &Poly, mu: &BigRational) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = p.coeffs().to_vec();
    if c.is_empty() {
        return alloc::vec![BigRational::zero()];
    }
    let mut out = Vec::with_capacity(c.len());
    while c.len() > 1 {
        let m = c.len();
        let mut q = alloc::vec![BigRational::zero(); m - 1];
        q[m - 2] = c[m - 1].clone();
        for i in (1..m - 1).rev() {
            q[i - 1] = &c[i] + mu * &q[i];
        }
        out.push(&c[0] + mu * &q[0]);
        c = q;
    }
    out.push(c[0].clone());
    out
}

/// Residue of B + B̃·S at an isolated exterior root, as f64. Pole membership
/// per part is exact; values are floating point.
pub(crate) fn surd_residue_f64(surd: &SurdFunction, root: &mut IsolatedRoot) -> Result<f64> {
    let res_b = residue_at_root_f64(surd.rational_part(), root)?;
    let res_bt = residue_at_root_f64(surd.surd_part(), root)?;
    if res_bt == 0.0 {
        return Ok(res_b);
    }
    root.refine_bits(96);
    let x = root.to_f64();
    debug_assert_eq!(surd.var(), Variable::Lambda);
    Ok(res_b + res_bt * branch_value_f64(surd.q(), x))
}

/// S(μ) = sgn(μ)·√(q²μ² − a²) on the real axis off the band.
pub(crate) fn branch_value_f64(q: u32, mu: f64) -> f64 {
    let qf = q as f64;
    let a2 = (4 * (q - 1)) as f64;
    (qf * qf * mu * mu - a2).max(0.0).sqrt() * mu.signum()
}

/// Certified answer to "is this denominator root a genuine pole of
/// B + B̃·S·s_sign?", where s_sign = ±1 fixes the branch (the λ-side exterior
/// branch has s_sign = sgn(μ); the z-side weight is positive on the whole
/// interior, branch +1).
///
/// Residues can only cancel between the two parts; equality of magnitudes is
/// the vanishing of E = numB²·(denB̃′)² − numB̃²·(denB′)²·w at the root, a
/// polynomial sign test, and opposite signs are sign tests on the factors.
pub(crate) fn is_genuine_pole(
    surd: &SurdFunction,
    root: &mut IsolatedRoot,
    s_sign: i32,
) -> Result<bool> {
    debug_assert!(s_sign == 1 || s_sign == -1, "branch sign must be ±1");
    let b = surd.rational_part();
    let bt = surd.surd_part();
    let b_pole = root.sign_at_root(b.denominator()) == 0;
    let bt_pole = root.sign_at_root(bt.denominator()) == 0;
    if b_pole || bt_pole {
        // Rational location: the full Laurent expansion decides, covering
        // higher-order part poles whose singular terms cancel.
        if let Some(mu) = root.exact_rational() {
            return Ok(!laurent_residue(surd, &mu, s_sign)?.is_zero());
        }
    }
    match (b_pole, bt_pole) {
        (false, false) => Ok(false),
        // A pole of one part alone cannot cancel: reduced fractions have
        // nonzero residues, and the branch factor is nonzero off the edge.
        (true, false) => {
            ensure_simple(b, root)?;
            Ok(true)
        }
        (false, true) => {
            ensure_simple(bt, root)?;
            Ok(true)
        }
        (true, true) => {
            ensure_simple(b, root)?;
            ensure_simple(bt, root)?;
            let s1 = root.sign_at_root(b.numerator())
                * root.sign_at_root(&b.denominator().derivative());
            let s2 = root.sign_at_root(bt.numerator())
                * root.sign_at_root(&bt.denominator().derivative())
                * s_sign;
            debug_assert!(s1 != 0 && s2 != 0, "reduced parts cannot have zero residue");
            if s1 != -s2 {
                return Ok(true);
            }
            let w = weight_poly(surd.q(), surd.var());
            let db = b.denominator().derivative();
            let dbt = bt.denominator().derivative();
            let e = &(b.numerator() * b.numerator()) * &(&dbt * &dbt)
                - &(&(bt.numerator() * bt.numerator()) * &(&db * &db)) * &w;
            Ok(root.sign_at_root(&e) != 0)
        }
    }
}

fn ensure_simple(f: &RationalFunction, root: &mut IsolatedRoot) -> Result<()> {
    if root.sign_at_root(&f.denominator().derivative()) == 0 {
        return Err(Error::HigherOrderPole);
    }
    Ok(())
}

/// Inserts every denominator root of the surd function inside the open
/// interval (lo, hi) into the root set.
pub(crate) fn denominator_roots_in(
    surd: &SurdFunction,
    lo: &BigRational,
    hi: &BigRational,
    set: &mut RootSet,
) {
    for part in [surd.rational_part(), surd.surd_part()] {
        let den = part.denominator();
        if den.degree().unwrap_or(0) == 0 {
            continue;
        }
        for root in isolate_real_roots(den, lo, hi) {
            set.insert(root);
        }
    }
}

/// Whether the total residue of B + B̃·S vanishes exactly at a rational
/// point with nonnegative weight (used at λ = ±1, where shared denominator
/// factors of the closed forms are usually removable).
pub(crate) fn residue_vanishes_at_rational(surd: &SurdFunction, mu: &BigRational) -> Result<bool> {
    Ok(surd_residue_exact(surd, mu)?.is_zero())
}

pub(crate) fn to_f64_refined(root: &mut IsolatedRoot) -> f64 {
    root.refine_bits(96);
    root.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::generating::tree_return;

    #[test]
    fn dedup_merges_shared_roots_and_separates_neighbours() {
        // p = (x−1)(x−2) and r = (x−2)(x−3) share the root 2.
        let p = Poly::from_integers(&[2, -3, 1]);
        let r = Poly::from_integers(&[6, -5, 1]);
        let mut set = RootSet::new();
        for root in isolate_real_roots(&p, &rat(0, 1), &rat(10, 1)) {
            set.insert(root);
        }
        for root in isolate_real_roots(&r, &rat(0, 1), &rat(10, 1)) {
            set.insert(root);
        }
        assert_eq!(set.into_sorted().len(), 3);

        // Close but distinct: √2 against the rational 707/500 = 1.414, with
        // coprime factors, must refine apart instead of merging.
        let sqrt2 = Poly::from_integers(&[-2, 0, 1]);
        let nearby = Poly::new(alloc::vec![rat(-707, 500), rat(1, 1)]);
        let mut set = RootSet::new();
        for root in isolate_real_roots(&sqrt2, &rat(0, 1), &rat(2, 1)) {
            set.insert(root);
        }
        for root in isolate_real_roots(&nearby, &rat(0, 1), &rat(2, 1)) {
            set.insert(root);
        }
        assert_eq!(set.into_sorted().len(), 2);
    }

    #[test]
    fn tree_resolvent_pole_at_one_is_removable() {
        // The homogeneous-tree diagonal resolvent has denominator roots at
        // λ = ±1 in both parts; the combined residues cancel exactly, as
        // they must for a graph with purely continuous spectrum.
        for q in [3u32, 4, 5, 10] {
            let r = tree_return(q).resolvent();
            assert!(residue_vanishes_at_rational(&r, &rat(1, 1)).unwrap());
            assert!(residue_vanishes_at_rational(&r, &rat(-1, 1)).unwrap());
        }
    }

    #[test]
    fn genuine_pole_detected_and_residue_extracted() {
        // A lone rational-part pole at λ = 9/10, outside the q = 4 band
        // edge a/q = √3/2 ≈ 0.866.
        let q = 4u32;
        let surd = SurdFunction::new(
            RationalFunction::new(
                Poly::from_integers(&[1]),
                Poly::new(alloc::vec![rat(-9, 10), rat(1, 1)]),
            )
            .unwrap(),
            RationalFunction::zero(),
            q,
            Variable::Lambda,
        );
        let mut roots = isolate_real_roots(
            surd.rational_part().denominator(),
            &rat(0, 1),
            &rat(1, 1),
        );
        assert_eq!(roots.len(), 1);
        let root = &mut roots[0];
        let sign = exterior_s_sign(root);
        assert_eq!(sign, 1);
        assert!(is_genuine_pole(&surd, root, sign).unwrap());
        assert!((to_f64_refined(root) - 0.9).abs() < 1e-12);
        assert_eq!(
            surd_residue_exact(&surd, &rat(9, 10)).unwrap().as_rational(),
            Some(&rat(1, 1))
        );
        assert!((surd_residue_f64(&surd, root).unwrap() - 1.0).abs() < 1e-12);
    }
}

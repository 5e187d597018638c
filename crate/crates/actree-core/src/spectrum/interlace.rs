//! Interlacing structure of the graft map on return generating functions.
//!
//! Grafting p trees at a vertex v₀ of degree σ sends the return function
//! Q^B_{v₀}(z) of the pre-graft graph B to a new one whose poles are the
//! zeros of H(z) = σ·Q(z) + p·Q^B_{v₀}(z), with Q the tree return function.
//! Because z·Q and z·Q^B are strictly increasing between poles, the zeros
//! z*ᵢ of H interlace the poles zᵢ of Q^B on (0, q/a): exactly one z* in
//! each gap (zᵢ, zᵢ₊₁), none between the innermost poles w₁ < 0 < z₁, and
//! one beyond z_n iff H(q/a) > 0 — equivalently
//! p·Q^B(q/a) + σ·(2q−2)/(q−2) > 0 — since z·H climbs from −∞ right of z_n
//! and reaches (q/a)·H(q/a) at the edge. With no poles on a side there is no
//! zero on that side at all: z·H grows from its root at z = 0 and stays of
//! one sign. The negative half-window mirrors all of this.
//!
//! Poles and zeros are certified exactly: poles through the residue
//! machinery of the surd form, zeros as sign-filtered roots of the
//! polynomial a₁²b₂² − a₂²b₁²·(q² − a²z²) built from H = a₁/b₁ + (a₂/b₂)·s.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, weight_poly, SurdFunction, Variable};
use crate::generating::tree_return;
use crate::spectrum::residue::{denominator_roots_in, is_genuine_pole, to_f64_refined, RootSet};

/// Pole/zero layout of one graft step, all inside the z-window (−q/a, q/a).
#[derive(Clone, Debug)]
pub struct InterlacingReport {
    /// Poles z₁ < … < z_n of Q^B on the positive side.
    pub positive_poles: Vec<f64>,
    /// Poles w_m < … < w₁ of Q^B on the negative side, ascending.
    pub negative_poles: Vec<f64>,
    /// Zeros of H on the positive side, ascending.
    pub new_positive: Vec<f64>,
    /// Zeros of H on the negative side, ascending.
    pub new_negative: Vec<f64>,
    /// Exactly one zero strictly inside every pole gap, none between the
    /// innermost poles, and edge-gap counts matching the edge criteria.
    pub interleaved: bool,
    /// H(q/a) > 0, exact: one extra zero beyond z_n (meaningful when n ≥ 1).
    pub edge_positive: bool,
    /// H(−q/a) > 0, exact: one extra zero below w_m (meaningful when m ≥ 1).
    pub edge_negative: bool,
    /// Sampled monotonicity of z·Q^B(z) between consecutive poles.
    pub monotone_ok: bool,
}

/// Certifies the interlacing layout for grafting `p` trees of branching
/// q−1 at a vertex of pre-graft degree `sigma` with return function `qb`
/// (z-side surd form).
pub fn interlacing_check(
    qb: &SurdFunction,
    sigma: u32,
    p: u32,
    q: u32,
) -> Result<InterlacingReport> {
    if q < 3 {
        return Err(Error::DegreeTooSmall { q, needed: 3 });
    }
    debug_assert!(qb.var() == Variable::Z, "return functions live in z");
    let h = tree_return(q)
        .scale(&rat_int(i64::from(sigma)))
        .add(&qb.scale(&rat_int(i64::from(p))));
    let w_z = weight_poly(q, Variable::Z);
    let edge = f64::from(q) / (2.0 * (f64::from(q) - 1.0).sqrt());

    // Genuine poles of Q^B strictly inside the window, split by sign.
    let mut candidates = RootSet::new();
    denominator_roots_in(qb, &rat(-i64::from(q), 1), &rat(i64::from(q), 1), &mut candidates);
    let mut positive_poles = Vec::new();
    let mut negative_poles = Vec::new();
    for mut root in candidates.into_sorted() {
        if root.sign_at_root(&w_z) <= 0 {
            continue;
        }
        if !is_genuine_pole(qb, &mut root, 1)? {
            continue;
        }
        let x = to_f64_refined(&mut root);
        if x > 0.0 {
            positive_poles.push(x);
        } else {
            negative_poles.push(x);
        }
    }

    // Zeros of H: roots of a₁²b₂² − a₂²b₁²·w with both parts finite and the
    // rational and surd contributions of opposite sign (s > 0 inside the
    // window on the z side).
    let a1 = h.rational_part().numerator();
    let b1 = h.rational_part().denominator();
    let a2 = h.surd_part().numerator();
    let b2 = h.surd_part().denominator();
    let f = &(a1 * a1) * &(b2 * b2) - &(&(a2 * a2) * &(b1 * b1)) * &w_z;
    let mut new_positive = Vec::new();
    let mut new_negative = Vec::new();
    if !f.is_zero() {
        for mut root in crate::exact::isolate_all_real_roots(&f) {
            if root.sign_at_root(&w_z) <= 0 {
                continue;
            }
            if root.sign_at_root(b1) == 0 || root.sign_at_root(b2) == 0 {
                continue;
            }
            let s1 = root.sign_at_root(a1) * root.sign_at_root(b1);
            let s2 = root.sign_at_root(a2) * root.sign_at_root(b2);
            if s1 != -s2 {
                continue;
            }
            let x = to_f64_refined(&mut root);
            if x > 0.0 {
                new_positive.push(x);
            } else {
                new_negative.push(x);
            }
        }
    }

    let edge_positive = h.eval_band_edge(1)?.sign() > 0;
    let edge_negative = h.eval_band_edge(-1)?.sign() > 0;

    let interleaved = check_layout(&positive_poles, &new_positive, edge, edge_positive)
        && check_layout(
            &mirror(&negative_poles),
            &mirror(&new_negative),
            edge,
            edge_negative,
        )
        && middle_is_empty(&positive_poles, &negative_poles, &new_positive, &new_negative);

    let monotone_ok = sampled_monotone(qb, &positive_poles, &negative_poles, edge);

    Ok(InterlacingReport {
        positive_poles,
        negative_poles,
        new_positive,
        new_negative,
        interleaved,
        edge_positive,
        edge_negative,
        monotone_ok,
    })
}

/// Reflects a sorted ascending negative list into a sorted ascending
/// positive one.
fn mirror(xs: &[f64]) -> Vec<f64> {
    xs.iter().rev().map(|&x| -x).collect()
}

/// One zero in each pole gap and the right count in the edge gap; with no
/// poles, no zeros at all on the side.
fn check_layout(poles: &[f64], zeros: &[f64], edge: f64, edge_flag: bool) -> bool {
    let count = |lo: f64, hi: f64| zeros.iter().filter(|&&z| z > lo && z < hi).count();
    if poles.is_empty() {
        return zeros.is_empty();
    }
    for pair in poles.windows(2) {
        if count(pair[0], pair[1]) != 1 {
            return false;
        }
    }
    let expected_edge = usize::from(edge_flag);
    count(*poles.last().unwrap(), edge) == expected_edge
}

/// No zero strictly between the innermost poles (the gap containing 0).
fn middle_is_empty(
    positive_poles: &[f64],
    negative_poles: &[f64],
    new_positive: &[f64],
    new_negative: &[f64],
) -> bool {
    let hi = positive_poles.first().copied().unwrap_or(f64::INFINITY);
    let lo = negative_poles.last().copied().unwrap_or(f64::NEG_INFINITY);
    !new_positive
        .iter()
        .chain(new_negative)
        .any(|&z| z > lo && z < hi)
}

/// Samples d/dz [z·Q^B(z)] > 0 on the interior of every pole gap.
fn sampled_monotone(qb: &SurdFunction, positive: &[f64], negative: &[f64], edge: f64) -> bool {
    let mut cuts = Vec::new();
    cuts.push(-edge);
    cuts.extend_from_slice(negative);
    cuts.extend_from_slice(positive);
    cuts.push(edge);
    let g = |z: f64| z * qb.eval_f64(z);
    for pair in cuts.windows(2) {
        let width = pair[1] - pair[0];
        if !(width > 0.0) {
            return false;
        }
        let h = width * 1e-4;
        for k in 1..=5 {
            let z = pair[0] + width * f64::from(k) / 6.0;
            let slope = (g(z + h) - g(z - h)) / (2.0 * h);
            if !(slope > 0.0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Poly, RationalFunction};

    /// Return function of K_2 at either vertex: 1/(1−z²).
    fn k2_return(q: u32) -> SurdFunction {
        let den = Poly::from_integers(&[1, 0, -1]);
        let f = RationalFunction::new(Poly::from_integers(&[1]), den).unwrap();
        SurdFunction::from_rational(f, q, Variable::Z)
    }

    #[test]
    fn k2_graft_interlaces_and_matches_a_grid_scan() {
        let qb = k2_return(10);
        let report = interlacing_check(&qb, 1, 1, 10).unwrap();
        assert_eq!(report.positive_poles.len(), 1);
        assert!((report.positive_poles[0] - 1.0).abs() < 1e-12);
        assert!((report.negative_poles[0] + 1.0).abs() < 1e-12);
        // H = Q + Q^B has its positive zero at z* = 4/3 (λ* = 3/4).
        assert_eq!(report.new_positive.len(), 1);
        assert!((report.new_positive[0] - 4.0 / 3.0).abs() < 1e-12);
        assert!((report.new_negative[0] + 4.0 / 3.0).abs() < 1e-12);
        assert!(report.interleaved);
        assert!(report.edge_positive);
        assert!(report.edge_negative);
        assert!(report.monotone_ok);

        // Brute-force cross-check: sign changes of H on a dense grid, away
        // from the poles at ±1.
        let h = tree_return(10).add(&qb);
        let edge = 10.0 / (2.0 * 9.0_f64.sqrt());
        let n = 10_000;
        let mut changes = Vec::new();
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=n {
            let z = -edge + 2.0 * edge * (i as f64) / (n as f64);
            if (z.abs() - 1.0).abs() < 1e-3 || z.abs() >= edge {
                prev = None;
                continue;
            }
            let v = h.eval_f64(z);
            if let Some((zp, vp)) = prev {
                if (v > 0.0) != (vp > 0.0) {
                    changes.push(0.5 * (z + zp));
                }
            }
            prev = Some((z, v));
        }
        assert_eq!(changes.len(), 2);
        assert!((changes[0] + 4.0 / 3.0).abs() < 1e-3);
        assert!((changes[1] - 4.0 / 3.0).abs() < 1e-3);
    }

    #[test]
    fn pole_free_stage_creates_no_new_poles() {
        // Grafting onto a bare vertex (σ = 0, Q^B ≡ 1): H = p > 0 has no
        // zeros, so there is no pole anywhere in the window.
        let qb = SurdFunction::one(4, Variable::Z);
        let report = interlacing_check(&qb, 0, 3, 4).unwrap();
        assert!(report.positive_poles.is_empty());
        assert!(report.negative_poles.is_empty());
        assert!(report.new_positive.is_empty());
        assert!(report.new_negative.is_empty());
        assert!(report.interleaved);
        assert!(report.monotone_ok);
    }

    #[test]
    fn small_q_is_rejected() {
        let qb = SurdFunction::one(2, Variable::Z);
        assert!(matches!(
            interlacing_check(&qb, 1, 1, 2),
            Err(Error::DegreeTooSmall { .. })
        ));
    }
}

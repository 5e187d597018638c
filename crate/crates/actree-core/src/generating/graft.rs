//! Grafting transforms: how walk generating functions change when p planted
//! trees are attached to a base-graph vertex v₀.
//!
//! With Q the planted-tree return series, Q^B the base functions, σ the
//! degree of v₀ in the base, and H = σ·Q + p·Q^B_{v₀,v₀}:
//!
//! * return at v₀:            (σ+p)·Q^B_{v₀,v₀}·Q / H
//! * pair u→v (u,v ≠ v₀):     Q^B_{u,v} − p·Q^B_{u,v₀}·Q^B_{v₀,v} / H
//! * exit row v₀→v (v ≠ v₀):  σ·Q·Q^B_{v₀,v} / H
//! * entry column u→v₀:       (σ+p)·Q·Q^B_{u,v₀} / H
//! * descent into a tree vertex at depth d: q·Q·Q^B_{u,v₀}·U^d / H
//! * pair inside the grafted trees, distance d, path weight 2ℓ to the
//!   meeting point: Q·(1 − α·U^{2ℓ})·U^d with α = 1 − q·Q^B_{v₀,v₀}/H.
//!
//! All formulas follow from renewal decompositions at the cut vertex v₀;
//! the walk weights 1/σ change only where the degree changes, which is
//! exactly at v₀.

use alloc::vec;

use num_rational::BigRational;

use crate::exact::surd::SurdFunction;
use crate::Result;

use super::closed::tree_return;
use super::pair::PairGf;

/// Shared denominator H = σ·Q + p·Q^B_{v₀,v₀} of every grafting formula.
pub fn graft_denominator(base_return: &SurdFunction, sigma: u32, p: u32) -> SurdFunction {
    let q_fn = tree_return(base_return.q());
    q_fn.scale(&BigRational::from_integer(sigma.into()))
        .add(&base_return.scale(&BigRational::from_integer(p.into())))
}

/// Return series at v₀ after grafting p trees: (σ+p)·Q^B·Q/H.
pub fn grafted_return(base_return: &SurdFunction, sigma: u32, p: u32) -> Result<SurdFunction> {
    let q_fn = tree_return(base_return.q());
    let h = graft_denominator(base_return, sigma, p);
    base_return
        .scale(&BigRational::from_integer(u64::from(sigma + p).into()))
        .mul(&q_fn)
        .div(&h)
}

/// Pair series between two base vertices u, v ≠ v₀ after grafting at v₀:
/// the base pair minus the walks rerouted through the now-heavier v₀.
pub fn grafted_pair(
    base_pair: &SurdFunction,
    base_to_graft: &SurdFunction,
    graft_to_target: &SurdFunction,
    base_return: &SurdFunction,
    sigma: u32,
    p: u32,
) -> Result<SurdFunction> {
    let h = graft_denominator(base_return, sigma, p);
    let correction = base_to_graft
        .mul(graft_to_target)
        .scale(&BigRational::from_integer(p.into()))
        .div(&h)?;
    Ok(base_pair.sub(&correction))
}

/// Exit pair v₀→v for v ≠ v₀: σ·Q·Q^B_{v₀,v}/H.
pub fn grafted_exit(
    graft_to_target: &SurdFunction,
    base_return: &SurdFunction,
    sigma: u32,
    p: u32,
) -> Result<SurdFunction> {
    let q_fn = tree_return(graft_to_target.q());
    let h = graft_denominator(base_return, sigma, p);
    graft_to_target
        .scale(&BigRational::from_integer(sigma.into()))
        .mul(&q_fn)
        .div(&h)
}

/// Entry pair u→v₀ for u ≠ v₀: (σ+p)·Q·Q^B_{u,v₀}/H.
pub fn grafted_entry(
    base_to_graft: &SurdFunction,
    base_return: &SurdFunction,
    sigma: u32,
    p: u32,
) -> Result<SurdFunction> {
    let q_fn = tree_return(base_to_graft.q());
    let h = graft_denominator(base_return, sigma, p);
    base_to_graft
        .scale(&BigRational::from_integer(u64::from(sigma + p).into()))
        .mul(&q_fn)
        .div(&h)
}

/// Pair from a base vertex u into a grafted tree vertex at depth d:
/// q·Q·Q^B_{u,v₀}·U^d/H. For u = v₀ pass the base return series.
pub fn grafted_descent(
    base_to_graft: &SurdFunction,
    base_return: &SurdFunction,
    sigma: u32,
    p: u32,
    depth: u32,
) -> Result<PairGf> {
    let q = base_to_graft.q();
    let q_fn = tree_return(q);
    let h = graft_denominator(base_return, sigma, p);
    let w = base_to_graft
        .scale(&BigRational::from_integer(u64::from(q).into()))
        .mul(&q_fn)
        .div(&h)?;
    Ok(PairGf::new(q, vec![(w, depth)]))
}

/// Pair between two vertices of the trees grafted at v₀, at graph distance
/// `distance`, whose root paths first meet at depth `fork` (0 when they sit
/// in different copies or branches meeting only at v₀):
/// Q·U^distance − Q·α·U^{distance + 2·fork}.
pub fn grafted_tree_pair(
    base_return: &SurdFunction,
    sigma: u32,
    p: u32,
    distance: u32,
    fork: u32,
) -> Result<PairGf> {
    let q = base_return.q();
    let q_fn = tree_return(q);
    let h = graft_denominator(base_return, sigma, p);
    // α = 1 − q·Q^B/H, so Q·α = Q − q·Q·Q^B/H.
    let q_alpha = q_fn.sub(
        &q_fn
            .mul(base_return)
            .scale(&BigRational::from_integer(u64::from(q).into()))
            .div(&h)?,
    );
    Ok(PairGf::new(
        q,
        vec![(q_fn, distance), (q_alpha.neg(), distance + 2 * fork)],
    ))
}

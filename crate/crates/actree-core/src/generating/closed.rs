//! Closed-form walk generating functions on the infinite q-regular tree.
//!
//! With s(z) = √(q² − 4(q−1)z²):
//!
//! * `tree_first_passage` P(z) = (q − s)/(2(q−1)) counts first-passage walks
//!   from a vertex to an adjacent vertex one level up, with the step already
//!   weighted by z (P = z·U for the per-level factor U below).
//! * `level_hop` U(z) = z⁻¹P(z) is the per-level first-passage factor; a
//!   first passage across d levels contributes U^d.
//! * `tree_return` Q(z) = (2 − q + s)/(2(1 − z²)) is the return series of
//!   the tree: Q = 1/(1 − zU), valid both for the root of a planted tree
//!   and for any vertex of the unrooted q-regular tree.
//! * `tree_pair` Q·U^d is the pair function at graph distance d.

use num_rational::BigRational;

use crate::exact::poly::Poly;
use crate::exact::ratfun::RationalFunction;
use crate::exact::surd::{SurdFunction, Variable};
use crate::exact::{rat, rat_int};

use super::pair::PairGf;

fn rf(num: Poly, den: Poly) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// P(z) = (q − s(z))/(2(q − 1)).
pub fn tree_first_passage(q: u32) -> SurdFunction {
    let qi = i64::from(q);
    let denom = rat_int(2 * (qi - 1));
    SurdFunction::new(
        RationalFunction::constant(rat_int(qi) / &denom),
        RationalFunction::constant(-denom.recip()),
        q,
        Variable::Z,
    )
}

/// U(z) = z⁻¹P(z) = (q − s(z))/(2(q − 1)z), the per-level hop factor.
pub fn level_hop(q: u32) -> SurdFunction {
    tree_first_passage(q).mul_var_pow(-1)
}

/// Q(z) = (2 − q + s(z))/(2(1 − z²)).
pub fn tree_return(q: u32) -> SurdFunction {
    let qi = i64::from(q);
    let den = Poly::from_integers(&[2, 0, -2]);
    SurdFunction::new(
        rf(Poly::constant(rat_int(2 - qi)), den.clone()),
        rf(Poly::one(), den),
        q,
        Variable::Z,
    )
}

/// Pair generating function Q·U^d between tree vertices at distance d.
pub fn tree_pair(q: u32, distance: u32) -> PairGf {
    PairGf::new(q, alloc::vec![(tree_return(q), distance)])
}

/// ξ⁻¹(λ) = (qλ − S(λ))/(2(q−1)), the resolvent-side hop factor g(λ):
/// the image of U under z ↦ 1/λ.
pub fn level_hop_resolvent(q: u32) -> SurdFunction {
    let qi = i64::from(q);
    SurdFunction::new(
        rf(
            Poly::new(alloc::vec![BigRational::from(rat(0, 1)), rat(qi, 2 * (qi - 1))]),
            Poly::one(),
        ),
        RationalFunction::constant(rat(-1, 2 * (qi - 1))),
        q,
        Variable::Lambda,
    )
}

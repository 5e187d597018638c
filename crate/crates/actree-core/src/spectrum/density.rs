//! Absolutely continuous part of the spectral measure on the band
//! [−a/q, a/q].
//!
//! On the band the branch values are S(λ + i0) = i√(a² − q²λ²) and
//! g(λ + i0) = e^{−iθ}/√(q−1) with λ = (a/q)cosθ, so the density
//! ρ_{u,v} = −(1/π)·Im R_{u,v}(λ + i0) evaluates term by term as
//!
//!   ρ_{u,v}(λ) = −(1/π) Σ_k (q−1)^{−d_k/2}
//!                 [ a·sinθ·B̃_k(λ)·cos(d_kθ) − B_k(λ)·sin(d_kθ) ].
//!
//! Embedded point masses are resolvent poles sitting on the band; evaluating
//! the density exactly there is refused rather than returning the divergent
//! (or 0/0) branch limit.

#[allow(unused_imports)]
use num_traits::Float;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{weight_poly, Variable};
use crate::generating::GeneratingBundle;
use crate::graph::VertexAddress;

/// Spectral density ρ_{u,v}(λ) of the walk between two vertices, for λ in
/// the closed band. Errors with `OutsideBand` beyond the band,
/// `EmbeddedPointMass` when λ hits a resolvent pole inside the band, and
/// `BandEdgePole` when the pole sits exactly at ±a/q (possible only when
/// a/q is rational, e.g. the two-sided chain q = 2 at λ = ±1).
pub fn density(
    bundle: &GeneratingBundle,
    u: &VertexAddress,
    v: &VertexAddress,
    lambda: f64,
) -> Result<f64> {
    let tree = bundle.tree();
    let q = f64::from(tree.q());
    let a = tree.a();
    if !lambda.is_finite() || lambda.abs() > tree.band_edge() {
        return Err(Error::OutsideBand);
    }
    let resolvent = bundle.pair(u, v)?.resolvent();
    if let Some(lam) = BigRational::from_float(lambda) {
        let weight = weight_poly(tree.q(), Variable::Lambda);
        for (w, _) in resolvent.terms() {
            if w.rational_part().denominator().sign_at(&lam) == 0
                || w.surd_part().denominator().sign_at(&lam) == 0
            {
                return Err(if weight.sign_at(&lam) == 0 {
                    Error::BandEdgePole
                } else {
                    Error::EmbeddedPointMass
                });
            }
        }
    }
    let theta = (q * lambda / a).clamp(-1.0, 1.0).acos();
    let sin_theta = theta.sin();
    let damp_base = (q - 1.0).sqrt();
    let mut im = 0.0;
    for (w, d) in resolvent.terms() {
        let b = w.rational_part().eval_f64(lambda);
        let bt = w.surd_part().eval_f64(lambda);
        let dt = f64::from(*d) * theta;
        im += damp_base.powi(-(*d as i32)) * (a * sin_theta * bt * dt.cos() - b * dt.sin());
    }
    let rho = -im / core::f64::consts::PI;
    if !rho.is_finite() {
        return Err(Error::EmbeddedPointMass);
    }
    Ok(rho)
}

/// Normalized pair density of the q-regular tree at distance ℓ, as a
/// function of the band angle θ (λ = (a/q)cosθ):
///
///   ρ^{(ℓ)}(λ(θ)) / ρ(λ(θ)) = (q−1)^{−ℓ/2}·(2·cos(ℓθ) + (q−2)·U_ℓ(cosθ))/q
///
/// with U_ℓ the Chebyshev polynomial of the second kind. ℓ = 0 gives 1 and
/// ℓ = 1 gives λ itself.
pub fn cayley_pair_density(q: u32, ell: u64, theta: f64) -> f64 {
    let x = theta.cos();
    let mut u_prev = 0.0; // U_{−1}
    let mut u = 1.0; // U_0
    for _ in 0..ell {
        let next = 2.0 * x * u - u_prev;
        u_prev = u;
        u = next;
    }
    let qf = f64::from(q);
    // ell stays tiny (graph distances), so the cast is exact.
    let c = (ell as f64 * theta).cos();
    (qf - 1.0).sqrt().powi(-(ell as i32)) * (2.0 * c + (qf - 2.0) * u) / qf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generating::GeneratingBundle;
    use crate::graph::{AsymptoticTree, CoreGraph};
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn regular_tree_bundle(q: u32) -> GeneratingBundle {
        let core = CoreGraph::new(vec!["o".to_string()], &[]).unwrap();
        let tree = AsymptoticTree::new(core, &[("o".to_string(), q)], q).unwrap();
        GeneratingBundle::new(tree).unwrap()
    }

    #[test]
    fn diagonal_density_matches_kesten_mckay() {
        for q in [3u32, 4, 5] {
            let bundle = regular_tree_bundle(q);
            let o = VertexAddress::core("o");
            let a = bundle.tree().a();
            let qf = f64::from(q);
            for i in 0..9 {
                let lambda = (i as f64 - 4.0) / 5.0 * bundle.tree().band_edge();
                let expected = (a * a - qf * qf * lambda * lambda).sqrt()
                    / (2.0 * core::f64::consts::PI * (1.0 - lambda * lambda));
                let got = density(&bundle, &o, &o, lambda).unwrap();
                assert!((got - expected).abs() < 1e-12, "q={q} λ={lambda}");
            }
        }
    }

    #[test]
    fn density_vanishes_at_the_band_edge() {
        let bundle = regular_tree_bundle(4);
        let o = VertexAddress::core("o");
        let edge = bundle.tree().band_edge();
        // fl(a/q) is not an exact root of q²λ² − a², so the value is only
        // zero up to the rounding of θ = arccos(qλ/a) ≈ 0.
        assert!(density(&bundle, &o, &o, edge).unwrap().abs() < 1e-12);
        assert!(density(&bundle, &o, &o, -edge).unwrap().abs() < 1e-12);
        assert!(matches!(
            density(&bundle, &o, &o, edge * 1.0000001),
            Err(Error::OutsideBand)
        ));
    }

    #[test]
    fn distance_one_ratio_is_lambda() {
        let bundle = regular_tree_bundle(4);
        let o = VertexAddress::core("o");
        let child = VertexAddress::tree("o", 1, Vec::new());
        for i in 1..8 {
            let lambda = (i as f64 - 4.0) / 5.0 * bundle.tree().band_edge();
            if lambda == 0.0 {
                continue;
            }
            let ratio = density(&bundle, &o, &child, lambda).unwrap()
                / density(&bundle, &o, &o, lambda).unwrap();
            assert!((ratio - lambda).abs() < 1e-12, "λ={lambda} ratio={ratio}");
        }
    }

    #[test]
    fn pair_ratio_follows_the_chebyshev_form() {
        let bundle = regular_tree_bundle(3);
        let o = VertexAddress::core("o");
        let v = VertexAddress::tree("o", 1, vec![0]);
        for j in 0..11 {
            let theta = (j as f64 + 0.5) * core::f64::consts::PI / 11.0;
            let lambda = bundle.tree().band_edge() * theta.cos();
            let ratio = density(&bundle, &o, &v, lambda).unwrap()
                / density(&bundle, &o, &o, lambda).unwrap();
            let predicted = cayley_pair_density(3, 2, theta);
            assert!(
                (ratio - predicted).abs() < 1e-10,
                "θ={theta} ratio={ratio} predicted={predicted}"
            );
        }
    }

    #[test]
    fn embedded_mass_and_chain_edge_are_refused() {
        let core = CoreGraph::new(
            vec!["u".to_string(), "v".to_string(), "w".to_string()],
            &[
                ("u".to_string(), "v".to_string()),
                ("v".to_string(), "w".to_string()),
            ],
        )
        .unwrap();
        let tree = AsymptoticTree::new(core, &[("v".to_string(), 3)], 4).unwrap();
        let bundle = GeneratingBundle::new(tree).unwrap();
        let u = VertexAddress::core("u");
        assert!(matches!(
            density(&bundle, &u, &u, 0.0),
            Err(Error::EmbeddedPointMass)
        ));
        // Away from the mass the density is finite and positive.
        assert!(density(&bundle, &u, &u, 0.25).unwrap() > 0.0);

        let chain = regular_tree_bundle(2);
        let o = VertexAddress::core("o");
        assert!(matches!(
            density(&chain, &o, &o, 1.0),
            Err(Error::BandEdgePole)
        ));
    }
}

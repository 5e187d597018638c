//! Extension of exterior eigenfunctions from the core onto the grafted
//! trees.
//!
//! For |λ| > a/q an eigenfunction of K = AD⁻¹ is determined by its core
//! values: along every tree it decays geometrically,
//! φ(v) = (q/σ_anchor)·φ(anchor)·ξ^{−depth} with
//! ξ⁻¹ = λP(λ⁻¹) = (qλ − S(λ))/(2(q−1)) and S(λ) = sgn(λ)√(q²λ² − a²).
//! (The first hop carries the factor q/σ_anchor because the anchor's degree
//! enters the eigenvalue equation at depth 1; from then on each level is a
//! pure factor ξ⁻¹.) The branch is the one with |ξ⁻¹| < (q−1)^{−1/2}, which
//! is exactly the square-summability of the extension:
//! Σ_levels (q−1)^h ξ^{−2h} < ∞.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_sign, QuadExt};
use crate::graph::{AsymptoticTree, VertexAddress};
use crate::spectrum::residue::sqrt_rational;
use crate::spectrum::{eigen::jacobi_eigen, EigenvalueRecord};

/// Decay ratio ξ⁻¹ of the tree extension at an exterior eigenvalue.
pub fn xi_inverse(q: u32, lambda: f64) -> Result<f64> {
    let qf = f64::from(q);
    let w = qf * qf * lambda * lambda - 4.0 * (qf - 1.0);
    if !(w > 0.0) {
        return Err(Error::NotExterior);
    }
    let s = lambda.signum() * w.sqrt();
    Ok((qf * lambda - s) / (2.0 * (qf - 1.0)))
}

/// Exact ξ⁻¹ at a rational exterior eigenvalue, in ℚ(√(q²λ² − a²)).
pub fn xi_inverse_exact(q: u32, lambda: &BigRational) -> Result<QuadExt> {
    let ql = BigRational::from_integer(BigInt::from(q)) * lambda;
    let w = &ql * &ql - rat_int(4) * rat_int(i64::from(q) - 1);
    if rat_sign(&w) <= 0 {
        return Err(Error::NotExterior);
    }
    let root = sqrt_rational(&w);
    let s = if rat_sign(lambda) >= 0 {
        root
    } else {
        root.neg()
    };
    let d = s.radicand().clone();
    let num = QuadExt::rational(ql, d.clone()).sub(&s);
    Ok(num.div(&QuadExt::rational(rat_int(2 * (i64::from(q) - 1)), d)))
}

/// Whether a geometric tree profile with ratio ξ⁻¹ is square-summable:
/// the level-h mass is (q−1)^h·ξ^{−2h}, summable iff (q−1)·ξ⁻² < 1.
pub fn square_summable(q: u32, xi_inv: f64) -> bool {
    (f64::from(q) - 1.0) * xi_inv * xi_inv < 1.0
}

/// An eigenfunction given on the core and continued geometrically down the
/// trees.
#[derive(Clone, Debug)]
pub struct ExtendedEigenfunction<'a> {
    tree: &'a AsymptoticTree,
    lambda: f64,
    xi_inv: f64,
    core_values: Vec<f64>,
}

impl<'a> ExtendedEigenfunction<'a> {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn xi_inverse(&self) -> f64 {
        self.xi_inv
    }

    pub fn core_values(&self) -> &[f64] {
        &self.core_values
    }

    /// Value at any vertex: core values verbatim; a tree vertex at depth d
    /// gets (q/σ_anchor)·φ(anchor)·ξ^{−d}.
    pub fn eval(&self, addr: &VertexAddress) -> Result<f64> {
        self.tree.check_address(addr)?;
        let anchor = self.tree.anchor(addr);
        let depth = addr.depth();
        if depth == 0 {
            return Ok(self.core_values[anchor]);
        }
        let hop = f64::from(self.tree.q()) / f64::from(self.tree.sigma_full(anchor));
        // Graph distances stay far below any precision limit here.
        Ok(self.core_values[anchor] * hop * self.xi_inv.powi(depth as i32))
    }
}

/// Builds the geometric extension of core values at an exterior eigenvalue.
pub fn eigenfunction_extension<'a>(
    tree: &'a AsymptoticTree,
    lambda: f64,
    core_values: Vec<f64>,
) -> Result<ExtendedEigenfunction<'a>> {
    let xi_inv = xi_inverse(tree.q(), lambda)?;
    debug_assert!(square_summable(tree.q(), xi_inv));
    Ok(ExtendedEigenfunction {
        tree,
        lambda,
        xi_inv,
        core_values,
    })
}

/// Largest eigenfunction-equation defect |(Kφ)(u) − λφ(u)| over the interior
/// vertices of the radius-R ball around `center` (interior: all neighbours
/// inside the ball, i.e. distance < R).
pub fn extension_residual(
    phi: &ExtendedEigenfunction<'_>,
    center: &VertexAddress,
    radius: u32,
) -> Result<f64> {
    let tree = phi.tree;
    let ball = tree.truncated_ball(center, radius)?;
    let values: Vec<f64> = ball
        .vertices
        .iter()
        .map(|v| phi.eval(v))
        .collect::<Result<_>>()?;
    let mut worst = 0.0_f64;
    for (i, addr) in ball.vertices.iter().enumerate() {
        if ball.dist[i] >= radius {
            continue;
        }
        let mut image = 0.0;
        for v in tree.neighbors(addr)? {
            let j = ball.index[&v];
            image += values[j] / f64::from(ball.degree_in_g[j]);
        }
        worst = worst.max((image - phi.lambda * values[i]).abs());
    }
    Ok(worst)
}

/// Recovers core restrictions of a whole-graph orthonormal eigenbasis from
/// a residue matrix. The weighted symmetrization σ_u·M[u][v] is the Gram
/// matrix Σ_k φ̂_k(u)φ̂_k(v); its spectral factorization √θ_k·e_k gives
/// vectors that reproduce exactly that Gram matrix, and any two rank-r
/// factorizations differ by an orthogonal rotation of the basis, which a
/// degenerate eigenspace permits. The scale matters: the φ̂_k are normalized
/// over the whole graph, so their core mass Σ_u φ̂_k(u)²/σ_u is below one
/// whenever the eigenfunction leaks into the trees.
pub fn eigenfunctions_from_residues(record: &EigenvalueRecord, sigma: &[u32]) -> Vec<Vec<f64>> {
    let n = sigma.len();
    let mut s = alloc::vec![alloc::vec![0.0; n]; n];
    for u in 0..n {
        for v in 0..n {
            s[u][v] = 0.5
                * (f64::from(sigma[u]) * record.residue_matrix[u][v]
                    + f64::from(sigma[v]) * record.residue_matrix[v][u]);
        }
    }
    let (values, vectors) = jacobi_eigen(s);
    let r = record.multiplicity.min(n);
    (0..r)
        .map(|k| {
            let scale = values[n - 1 - k].max(0.0).sqrt();
            vectors[n - 1 - k].iter().map(|x| x * scale).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::generating::GeneratingBundle;
    use crate::graph::CoreGraph;
    use crate::spectrum::full_spectrum;
    use alloc::vec;
    use alloc::vec::Vec;

    /// Complete graph K_n, one tree per vertex.
    fn complete_instance(n: usize, p: u32, q: u32) -> AsymptoticTree {
        let labels: Vec<alloc::string::String> =
            (0..n).map(|i| alloc::format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        let core = CoreGraph::new(labels.clone(), &edges).unwrap();
        let grafts: Vec<(alloc::string::String, u32)> =
            labels.iter().map(|l| (l.clone(), p)).collect();
        AsymptoticTree::new(core, &grafts, q).unwrap()
    }

    #[test]
    fn complete_core_constant_mode_has_the_known_decay() {
        // n = 4, p = 1, q = 10: ξ⁻¹ = (p+n−1)/(q(n−1)−(p+n−1)) = 4/26 = 2/13
        // at the constant-mode eigenvalue λ = 41/52.
        let lambda = rat(41, 52);
        let exact = xi_inverse_exact(10, &lambda).unwrap();
        assert_eq!(exact.as_rational(), Some(&rat(2, 13)));
        let numeric = xi_inverse(10, 41.0 / 52.0).unwrap();
        assert!((numeric - 2.0 / 13.0).abs() < 1e-14);
        // Square-summability ratio (q−1)ξ⁻² = 9·4/169 = 36/169 < 1.
        let ratio = exact.mul(&exact).mul(&QuadExt::rational(
            rat(9, 1),
            exact.radicand().clone(),
        ));
        assert_eq!(ratio.as_rational(), Some(&rat(36, 169)));
        assert!(square_summable(10, numeric));
    }

    #[test]
    fn constant_mode_extension_satisfies_the_eigenequation() {
        let tree = complete_instance(4, 1, 10);
        let phi = eigenfunction_extension(&tree, 41.0 / 52.0, vec![1.0; 4]).unwrap();
        let center = VertexAddress::core("v0");
        let residual = extension_residual(&phi, &center, 6).unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }

    #[test]
    fn inside_band_extension_is_refused() {
        assert!(matches!(xi_inverse(4, 0.5), Err(Error::NotExterior)));
        assert!(matches!(
            xi_inverse_exact(4, &rat(1, 2)),
            Err(Error::NotExterior)
        ));
        // The band edge itself is not exterior either.
        assert!(matches!(
            xi_inverse_exact(2, &rat(1, 1)),
            Err(Error::NotExterior)
        ));
    }

    #[test]
    fn residue_matrix_reproduces_an_orthonormal_eigenbasis() {
        // K_5, one tree per vertex, q = 5: single exterior eigenvalue 13/15
        // with the constant eigenfunction.
        let tree = complete_instance(5, 1, 5);
        let bundle = GeneratingBundle::new(tree).unwrap();
        let report = full_spectrum(&bundle).unwrap();
        assert_eq!(report.pure_point.len(), 1);
        let rec = &report.pure_point[0];
        let basis = eigenfunctions_from_residues(rec, &report.sigma);
        assert_eq!(basis.len(), 1);
        let phi = &basis[0];
        // The core mass equals the total point mass at this eigenvalue (the
        // rest of the whole-graph normalization sits in the trees), and the
        // eigenfunction is constant on the core.
        let norm: f64 = phi
            .iter()
            .zip(&report.sigma)
            .map(|(x, &s)| x * x / f64::from(s))
            .sum();
        let core_mass: f64 = (0..5).map(|u| rec.residue_matrix[u][u]).sum();
        assert!((norm - core_mass).abs() < 1e-10);
        assert!((core_mass - 5.0 / 6.0).abs() < 1e-12);
        for x in phi {
            assert!((x.abs() - phi[0].abs()).abs() < 1e-10);
        }
        // And it reproduces the residue matrix entries.
        for u in 0..5 {
            for v in 0..5 {
                let m = phi[u] * phi[v] / f64::from(report.sigma[u]);
                assert!((m - rec.residue_matrix[u][v]).abs() < 1e-10);
            }
        }
        // The extension of the recovered basis satisfies the eigenequation.
        let ext =
            eigenfunction_extension(bundle.tree(), rec.lambda(), basis[0].clone()).unwrap();
        let residual = extension_residual(&ext, &VertexAddress::core("v0"), 5).unwrap();
        assert!(residual < 1e-10, "residual {residual}");
    }
}

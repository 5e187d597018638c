//! Embedded point spectrum: eigenfunctions supported on the core.
//!
//! A core eigenfunction of K that vanishes on every graft vertex extends by
//! zero to the whole tree and stays an eigenfunction there; when its
//! eigenvalue lies inside the closed band [−a/q, a/q] it is a point mass
//! embedded in the continuous spectrum. (Vanishing eigenfunctions with
//! |λ| > a/q also extend, but those eigenvalues already surface as certified
//! resolvent poles, so this module reports the in-band family only and the
//! two lists stay disjoint.)
//!
//! Eigenvalues are labelled by exact isolated roots of the core
//! characteristic polynomial, so the band membership test |λ| ≤ a/q is an
//! exact sign evaluation even at irrational λ. The vanishing subspace inside
//! each eigenspace is found exactly over ℚ when the root is rational and
//! otherwise through the singular values of the graft-evaluation matrix,
//! with an explicit refusal when a singular value falls in the grey zone
//! between "zero" and "clearly nonzero".

#[allow(unused_imports)]
use num_traits::Float;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{isolate_all_real_roots, ratio_to_f64, weight_poly, Poly, QuadExt, Variable};
use crate::graph::{AsymptoticTree, DegreeConvention};
use crate::spectrum::eigen::{
    core_characteristic_polynomial, jacobi_eigen, rational_nullspace, symmetrized_core,
};
use crate::spectrum::{EigenvalueOrigin, EigenvalueRecord, SpectralLocation, SpectralPoint};

/// Singular values of the graft-evaluation matrix at or below this multiple
/// of the scale are treated as exact zeros.
const NULL_THRESHOLD: f64 = 1e-11;
/// Singular values at or above this multiple of the scale are treated as
/// clearly nonzero; anything between the two thresholds aborts the run.
const KEEP_THRESHOLD: f64 = 1e-7;

/// One embedded eigenvalue with the subspace of core eigenfunctions that
/// vanish on all graft vertices.
#[derive(Clone, Debug)]
pub struct EmbeddedSpace {
    /// The eigenvalue, exact (rational or isolated algebraic root).
    pub value: SpectralPoint,
    /// Dimension of the vanishing eigenspace.
    pub dimension: usize,
    /// Orthonormal basis in the degree-weighted inner product; `basis[k][u]`
    /// is the value of the k-th eigenfunction at core vertex u.
    pub basis: Vec<Vec<f64>>,
    /// Unnormalized exact basis of the same span, present when the
    /// eigenvalue is rational.
    pub basis_exact: Option<Vec<Vec<BigRational>>>,
}

impl EmbeddedSpace {
    pub fn lambda(&self) -> f64 {
        self.value.to_f64()
    }
}

/// All embedded eigenvalues of the tree, ascending. Uses the full-graph
/// degrees σ_u(G), which is the operator the walk actually runs under.
pub fn embedded_eigenvalues(tree: &AsymptoticTree) -> Result<Vec<EmbeddedSpace>> {
    let core = tree.core();
    let n = core.len();
    let grafts = tree.graft_vertices();
    if grafts.len() == n {
        // A function vanishing on every vertex is zero.
        return Ok(Vec::new());
    }
    let sigma: Vec<f64> = (0..n).map(|u| f64::from(tree.sigma_full(u))).collect();
    let char_poly = Poly::new(core_characteristic_polynomial(
        tree,
        DegreeConvention::FullGraph,
    )?);
    let weight = weight_poly(tree.q(), Variable::Lambda);
    let (vals, vecs) = jacobi_eigen(symmetrized_core(tree, DegreeConvention::FullGraph)?);
    let mut out = Vec::new();
    for mut root in isolate_all_real_roots(&char_poly) {
        // Exact band membership: q²λ² − a² > 0 means exterior, where any
        // vanishing eigenspace is already counted as a resolvent pole.
        if root.sign_at_root(&weight) > 0 {
            continue;
        }
        root.refine_bits(96);
        let rep = root.to_f64();
        let cluster: Vec<usize> = (0..n).filter(|&i| (vals[i] - rep).abs() <= 1e-9).collect();
        if cluster.len() != root.multiplicity() {
            return Err(Error::ToleranceAmbiguity(format!(
                "eigenvalue cluster near {rep} has {} members but exact multiplicity {}",
                cluster.len(),
                root.multiplicity()
            )));
        }
        let space = if let Some(lam) = root.exact_rational() {
            rational_vanishing_space(tree, &lam, &sigma)?
        } else {
            numeric_vanishing_space(&root, &cluster, &vecs, grafts, &sigma)?
        };
        if let Some(space) = space {
            out.push(space);
        }
    }
    out.sort_by(|a, b| {
        a.lambda()
            .partial_cmp(&b.lambda())
            .expect("eigenvalues are finite")
    });
    Ok(out)
}

/// Exact path: kernel of K − λI stacked with one coordinate row per graft
/// vertex, over ℚ.
fn rational_vanishing_space(
    tree: &AsymptoticTree,
    lambda: &BigRational,
    sigma: &[f64],
) -> Result<Option<EmbeddedSpace>> {
    let k = tree.core_transition_matrix(DegreeConvention::FullGraph)?;
    let n = k.len();
    let mut rows = k;
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = &row[i] - lambda;
    }
    for &g in tree.graft_vertices() {
        let mut row = vec![BigRational::zero(); n];
        row[g] = BigRational::one();
        rows.push(row);
    }
    let basis_exact = rational_nullspace(&rows);
    if basis_exact.is_empty() {
        return Ok(None);
    }
    let dimension = basis_exact.len();
    let basis = weighted_orthonormalize(&basis_exact, sigma);
    Ok(Some(EmbeddedSpace {
        value: SpectralPoint::Rational(lambda.clone()),
        dimension,
        basis,
        basis_exact: Some(basis_exact),
    }))
}

/// Numeric path: inside the eigenspace spanned by the clustered Jacobi
/// vectors, the combinations vanishing at every graft vertex are the null
/// singular directions of the graft-evaluation matrix.
fn numeric_vanishing_space(
    root: &crate::exact::IsolatedRoot,
    cluster: &[usize],
    vecs: &[Vec<f64>],
    grafts: &[usize],
    sigma: &[f64],
) -> Result<Option<EmbeddedSpace>> {
    let k = cluster.len();
    let mut ctc = vec![vec![0.0; k]; k];
    for (a, row) in ctc.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = grafts
                .iter()
                .map(|&g| vecs[cluster[a]][g] * vecs[cluster[b]][g])
                .sum();
        }
    }
    let (theta, combos) = jacobi_eigen(ctc);
    let singulars: Vec<f64> = theta.iter().map(|&t| t.max(0.0).sqrt()).collect();
    let scale = singulars.iter().fold(1.0_f64, |m, &s| m.max(s));
    let mut null = Vec::new();
    for (j, &s) in singulars.iter().enumerate() {
        if s <= NULL_THRESHOLD * scale {
            null.push(j);
        } else if s < KEEP_THRESHOLD * scale {
            return Err(Error::ToleranceAmbiguity(format!(
                "graft-evaluation singular value {s:.3e} is neither zero nor clearly nonzero"
            )));
        }
    }
    if null.is_empty() {
        return Ok(None);
    }
    let n = sigma.len();
    let mut basis = Vec::with_capacity(null.len());
    for &j in &null {
        let mut phi = vec![0.0; n];
        for (i, &ci) in cluster.iter().enumerate() {
            let w = combos[j][i];
            for (u, p) in phi.iter_mut().enumerate() {
                *p += w * vecs[ci][u];
            }
        }
        // h ↦ φ = D^(1/2) h turns Euclidean orthonormality into weighted.
        for (u, p) in phi.iter_mut().enumerate() {
            *p *= sigma[u].sqrt();
        }
        basis.push(phi);
    }
    Ok(Some(EmbeddedSpace {
        value: SpectralPoint::Algebraic(root.clone()),
        dimension: null.len(),
        basis,
        basis_exact: None,
    }))
}

/// Gram–Schmidt in the inner product (f, g) = Σ_u f(u)g(u)/σ_u, in f64.
fn weighted_orthonormalize(columns: &[Vec<BigRational>], sigma: &[f64]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for col in columns {
        let mut v: Vec<f64> = col.iter().map(ratio_to_f64).collect();
        for prev in &out {
            let dot: f64 = v
                .iter()
                .zip(prev)
                .zip(sigma)
                .map(|((a, b), s)| a * b / s)
                .sum();
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= dot * p;
            }
        }
        let norm: f64 = v
            .iter()
            .zip(sigma)
            .map(|(a, s)| a * a / s)
            .sum::<f64>()
            .sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        out.push(v);
    }
    out
}

/// Converts a vanishing eigenspace into an eigenvalue record carrying the
/// spectral projection restricted to the core: M[u][v] = Σ_k φ̂_k(u)φ̂_k(v)/σ_u.
/// For a rational eigenvalue the projection is assembled exactly as
/// X (XᵀWX)⁻¹ Xᵀ (rows then divided by σ_u) from the unnormalized basis X,
/// with W = diag(1/σ).
pub(crate) fn to_record(space: &EmbeddedSpace, tree: &AsymptoticTree) -> Result<EigenvalueRecord> {
    let n = tree.core().len();
    let sigma: Vec<u32> = (0..n).map(|u| tree.sigma_full(u)).collect();
    let (residue_matrix, residue_matrix_exact) = if let Some(x) = &space.basis_exact {
        let r = x.len();
        let inv_sigma: Vec<BigRational> = sigma
            .iter()
            .map(|&s| BigRational::new(BigInt::one(), BigInt::from(s)))
            .collect();
        let mut gram = vec![vec![BigRational::zero(); r]; r];
        for (a, row) in gram.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                *entry = (0..n).map(|u| &x[a][u] * &x[b][u] * &inv_sigma[u]).sum();
            }
        }
        let gram_inv =
            rational_inverse(&gram).expect("Gram matrix of an independent basis is invertible");
        let mut exact = vec![vec![BigRational::zero(); n]; n];
        for (u, row) in exact.iter_mut().enumerate() {
            for (v, entry) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for a in 0..r {
                    for b in 0..r {
                        acc += &x[a][u] * &gram_inv[a][b] * &x[b][v];
                    }
                }
                *entry = acc * &inv_sigma[u];
            }
        }
        let numeric: Vec<Vec<f64>> = exact
            .iter()
            .map(|row| row.iter().map(ratio_to_f64).collect())
            .collect();
        let wrapped: Vec<Vec<QuadExt>> = exact
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| QuadExt::rational(e, BigInt::from(2)))
                    .collect()
            })
            .collect();
        (numeric, Some(wrapped))
    } else {
        let mut m = vec![vec![0.0; n]; n];
        for (u, row) in m.iter_mut().enumerate() {
            for (v, entry) in row.iter_mut().enumerate() {
                *entry = space
                    .basis
                    .iter()
                    .map(|phi| phi[u] * phi[v] / f64::from(sigma[u]))
                    .sum();
            }
        }
        (m, None)
    };
    Ok(EigenvalueRecord {
        value: space.value.clone(),
        location: SpectralLocation::Embedded,
        origin: EigenvalueOrigin::CoreConstrained,
        multiplicity: space.dimension,
        residue_matrix,
        residue_matrix_exact,
    })
}

/// Exact inverse of a square rational matrix; `None` if singular. The Gram
/// matrix of independent basis vectors is positive definite, so in practice
/// this always succeeds.
fn rational_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let f = a[col][col].recip();
        for c in 0..n {
            a[col][c] = &a[col][c] * &f;
            inv[col][c] = &inv[col][c] * &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = &a[r][c] - &f * &a[col][c];
                    inv[r][c] = &inv[r][c] - &f * &inv[col][c];
                }
            }
        }
    }
    Some(inv)
}

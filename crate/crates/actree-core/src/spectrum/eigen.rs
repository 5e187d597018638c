//! Dense symmetric eigensolver and exact rational kernels for the core
//! eigenproblem.
//!
//! The transition matrix K = AD⁻¹ is self-adjoint only in the degree-weighted
//! inner product, so numerics run on the similar symmetric matrix
//! S = D^(−1/2) A D^(−1/2); an eigenvector h of S corresponds to the
//! eigenfunction φ = D^(1/2) h of K, and Euclidean orthonormality of the h's
//! is exactly weighted orthonormality of the φ's. Whenever an eigenvalue is
//! rational the kernel of AD⁻¹ − λI is recomputed exactly over ℚ.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{AsymptoticTree, DegreeConvention};

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of a real
/// symmetric matrix, by cyclic Jacobi rotations. `vectors[k]` is the
/// eigenvector for `values[k]`.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()))
        .max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                if a[p][r].abs() <= 1e-18 * scale {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akr = a[k][r];
                    a[k][p] = c * akp - s * akr;
                    a[k][r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let ark = a[r][k];
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkr = v[k][r];
                    v[k][p] = c * vkp - s * vkr;
                    v[k][r] = s * vkp + c * vkr;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row][col]).collect())
        .collect();
    (values, vectors)
}

/// The symmetric matrix D^(−1/2) A D^(−1/2) of the core under the chosen
/// degree convention.
pub fn symmetrized_core(
    tree: &AsymptoticTree,
    convention: DegreeConvention,
) -> Result<Vec<Vec<f64>>> {
    let core = tree.core();
    let n = core.len();
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let s = match convention {
            DegreeConvention::Standalone => core.degree(i) as u32,
            DegreeConvention::FullGraph => tree.sigma_full(i),
        };
        if s == 0 {
            return Err(Error::UndefinedTransitionMatrix);
        }
        sigma.push(s as f64);
    }
    let mut m = vec![vec![0.0; n]; n];
    for &(u, v) in core.edges() {
        let w = 1.0 / (sigma[u] * sigma[v]).sqrt();
        m[u][v] = w;
        m[v][u] = w;
    }
    Ok(m)
}

/// Basis of the right nullspace of a rational matrix (rows × cols), by
/// Gauss–Jordan elimination. Exact.
pub fn rational_nullspace(matrix: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if matrix.is_empty() {
        return Vec::new();
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let rows = m.len();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    m[r][c] = &m[r][c] - &f * &m[row][c];
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: alloc::collections::BTreeSet<usize> =
        pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut vec_ = vec![BigRational::zero(); cols];
        vec_[free] = BigRational::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            vec_[pc] = -m[r][free].clone();
        }
        basis.push(vec_);
    }
    basis
}

/// Exact characteristic polynomial coefficients of K = AD⁻¹ (ascending,
/// monic of degree n), by the Faddeev–LeVerrier recursion.
pub fn core_characteristic_polynomial(
    tree: &AsymptoticTree,
    convention: DegreeConvention,
) -> Result<Vec<BigRational>> {
    let k = tree.core_transition_matrix(convention)?;
    let n = k.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // m = identity; c_j produced for λ^(n−j).
    let mut m: Vec<Vec<BigRational>> = (0..n)
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
    for j in 1..=n {
        // m ← K·m
        let mut km = vec![vec![BigRational::zero(); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigRational::zero();
                for t in 0..n {
                    if !k[r][t].is_zero() && !m[t][c].is_zero() {
                        acc += &k[r][t] * &m[t][c];
                    }
                }
                km[r][c] = acc;
            }
        }
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &km[i][i]);
        let cj = -trace / BigRational::from_integer(BigInt::from(j as i64));
        for (i, row) in km.iter_mut().enumerate() {
            row[i] = &row[i] + &cj;
        }
        coeffs[n - j] = cj;
        m = km;
    }
    Ok(coeffs)
}

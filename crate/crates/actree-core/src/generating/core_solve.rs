//! Exact pair generating functions of a standalone finite core.
//!
//! For the transition operator K = A·D⁻¹, the matrix of pair functions is
//! (I − zK)⁻¹ = D(D − zA)⁻¹. The entries are computed by Gaussian
//! elimination over the rational-function field on the symmetric polynomial
//! matrix M = D − zA, so Q_{u,v} = σ_v·(M⁻¹)_{u,v} exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::exact::poly::Poly;
use crate::exact::ratfun::RationalFunction;
use crate::graph::CoreGraph;
use crate::Result;

/// Full matrix of standalone-core pair functions Q_{u,v}, indexed
/// [u][v] in core vertex order.
///
/// A single isolated vertex has no walk steps at all; its pair "matrix" is
/// the constant 1 (only the empty walk), by convention.
pub fn standalone_core_matrix(core: &CoreGraph) -> Result<Vec<Vec<RationalFunction>>> {
    let n = core.len();
    if n == 1 {
        return Ok(vec![vec![RationalFunction::one()]]);
    }
    let m: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::constant(BigRational::from_integer(
                            (core.degree(i) as u64).into(),
                        ))
                    } else if core.has_edge(i, j) {
                        RationalFunction::from_poly(Poly::from_integers(&[0, -1]))
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    let inv = invert(m)?;
    Ok((0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let sigma_v = RationalFunction::constant(BigRational::from_integer(
                        (core.degree(v) as u64).into(),
                    ));
                    &inv[u][v] * &sigma_v
                })
                .collect()
        })
        .collect())
}

/// Gauss–Jordan inversion over the rational-function field with pivot
/// search by first nonzero entry.
fn invert(mut m: Vec<Vec<RationalFunction>>) -> Result<Vec<Vec<RationalFunction>>> {
    let n = m.len();
    let mut inv: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("D − zA is invertible over the function field");
        m.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot_inv = m[col][col].recip()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &pivot_inv;
            inv[col][j] = &inv[col][j] * &pivot_inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let dm = &f * &m[col][j];
                m[r][j] = &m[r][j] - &dm;
                let di = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &di;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn series_matrix(core: &CoreGraph, order: usize) -> Vec<Vec<Vec<BigRational>>> {
        standalone_core_matrix(core)
            .unwrap()
            .iter()
            .map(|row| row.iter().map(|f| f.series(order).unwrap()).collect())
            .collect()
    }

    /// Walk probabilities on the bare core by direct exact iteration.
    fn direct_probabilities(core: &CoreGraph, order: usize) -> Vec<Vec<Vec<BigRational>>> {
        let n = core.len();
        let mut out = vec![vec![Vec::new(); n]; n];
        for u in 0..n {
            let mut mass = vec![BigRational::zero(); n];
            mass[u] = BigRational::one();
            for v in 0..n {
                out[u][v].push(mass[v].clone());
            }
            for _ in 0..order {
                let mut next = vec![BigRational::zero(); n];
                for x in 0..n {
                    if mass[x].is_zero() {
                        continue;
                    }
                    let share =
                        &mass[x] / BigRational::from_integer((core.degree(x) as u64).into());
                    for &w in core.neighbors(x) {
                        next[w] += &share;
                    }
                }
                mass = next;
                for v in 0..n {
                    out[u][v].push(mass[v].clone());
                }
            }
        }
        out
    }

    #[test]
    fn edge_core_is_the_parity_walk() {
        let core = CoreGraph::new(
            vec!["x".into(), "y".into()],
            &[("x".into(), "y".into())],
        )
        .unwrap();
        let q = standalone_core_matrix(&core).unwrap();
        // Q_xx = 1/(1−z²), Q_xy = z/(1−z²).
        let den = Poly::from_integers(&[1, 0, -1]);
        assert_eq!(
            q[0][0],
            RationalFunction::new(Poly::one(), den.clone()).unwrap()
        );
        assert_eq!(
            q[0][1],
            RationalFunction::new(Poly::from_integers(&[0, 1]), den).unwrap()
        );
    }

    #[test]
    fn triangle_and_path_match_direct_iteration() {
        for (labels, edges) in [
            (
                vec!["a", "b", "c"],
                vec![("a", "b"), ("b", "c"), ("a", "c")],
            ),
            (vec!["a", "b", "c", "d"], vec![("a", "b"), ("b", "c"), ("c", "d")]),
            (
                vec!["a", "b", "c", "d"],
                vec![("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")],
            ),
        ] {
            let core = CoreGraph::new(
                labels.iter().map(|s| s.to_string()).collect(),
                &edges
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let series = series_matrix(&core, 8);
            let direct = direct_probabilities(&core, 8);
            assert_eq!(series, direct);
        }
    }

    #[test]
    fn isolated_vertex_has_unit_series() {
        let core = CoreGraph::new(vec!["o".into()], &[]).unwrap();
        let q = standalone_core_matrix(&core).unwrap();
        assert_eq!(q[0][0], RationalFunction::one());
    }

    #[test]
    fn sigma_weighted_symmetry_holds() {
        let core = CoreGraph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            &[
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("c".into(), "d".into()),
                ("d".into(), "b".into()),
            ],
        )
        .unwrap();
        let q = standalone_core_matrix(&core).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                let lhs = &q[u][v]
                    * &RationalFunction::constant(BigRational::from_integer(
                        (core.degree(u) as u64).into(),
                    ));
                let rhs = &q[v][u]
                    * &RationalFunction::constant(BigRational::from_integer(
                        (core.degree(v) as u64).into(),
                    ));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

//! Assembly of the complete family of pair generating functions for a full
//! graph G: exact core matrices with all trees grafted, plus the
//! leave-one-graft-out data needed to resolve pairs involving tree vertices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::exact::surd::{SurdFunction, Variable};
use crate::graph::{AsymptoticTree, VertexAddress};
use crate::Result;

use super::closed::tree_return;
use super::core_solve::standalone_core_matrix;
use super::graft::{graft_denominator, grafted_tree_pair};
use super::pair::PairGf;

/// Leave-one-out data for a graft vertex g: the core-pair matrix of
/// G minus the trees at g, plus the grafting denominator H_g.
struct MinusOne {
    matrix: Vec<Vec<SurdFunction>>,
    denom: SurdFunction,
}

/// Exact pair generating functions for every vertex pair of G.
///
/// Core-pair matrices are precomputed (the full one and one per graft
/// vertex with that graft removed); individual pair functions are assembled
/// on demand as one- or two-term hop-power sums.
pub struct GeneratingBundle {
    tree: AsymptoticTree,
    full: Vec<Vec<SurdFunction>>,
    minus: BTreeMap<usize, MinusOne>,
}

/// Applies one grafting step to a core-pair matrix in place.
fn apply_graft(
    matrix: &mut Vec<Vec<SurdFunction>>,
    g: usize,
    sigma: u32,
    p: u32,
    q: u32,
) -> Result<()> {
    let n = matrix.len();
    let q_fn = tree_return(q);
    let h = graft_denominator(&matrix[g][g], sigma, p);
    let h_inv = h.inverse()?;
    let old = matrix.clone();
    for u in 0..n {
        for v in 0..n {
            matrix[u][v] = if u == g && v == g {
                old[g][g]
                    .scale(&BigRational::from_integer(u64::from(sigma + p).into()))
                    .mul(&q_fn)
                    .mul(&h_inv)
            } else if u == g {
                old[g][v]
                    .scale(&BigRational::from_integer(u64::from(sigma).into()))
                    .mul(&q_fn)
                    .mul(&h_inv)
            } else if v == g {
                old[u][g]
                    .scale(&BigRational::from_integer(u64::from(sigma + p).into()))
                    .mul(&q_fn)
                    .mul(&h_inv)
            } else {
                old[u][v].sub(
                    &old[u][g]
                        .mul(&old[g][v])
                        .scale(&BigRational::from_integer(u64::from(p).into()))
                        .mul(&h_inv),
                )
            };
        }
    }
    Ok(())
}

/// Grafts the listed vertices (each with its tree count) onto the
/// standalone core, in the given order.
fn assemble(
    tree: &AsymptoticTree,
    order: &[usize],
) -> Result<Vec<Vec<SurdFunction>>> {
    let q = tree.q();
    let mut matrix: Vec<Vec<SurdFunction>> = standalone_core_matrix(tree.core())?
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|f| SurdFunction::from_rational(f, q, Variable::Z))
                .collect()
        })
        .collect();
    for &g in order {
        let sigma = tree.core().degree(g) as u32;
        let p = tree.graft_count(g);
        apply_graft(&mut matrix, g, sigma, p, q)?;
    }
    Ok(matrix)
}

impl GeneratingBundle {
    pub fn new(tree: AsymptoticTree) -> Result<Self> {
        let grafts: Vec<usize> = tree.graft_vertices().to_vec();
        let full = assemble(&tree, &grafts)?;
        let mut minus = BTreeMap::new();
        for &g in &grafts {
            let order: Vec<usize> = grafts.iter().copied().filter(|&x| x != g).collect();
            let matrix = assemble(&tree, &order)?;
            let denom = graft_denominator(
                &matrix[g][g],
                tree.core().degree(g) as u32,
                tree.graft_count(g),
            );
            minus.insert(g, MinusOne { matrix, denom });
        }
        Ok(GeneratingBundle { tree, full, minus })
    }

    pub fn tree(&self) -> &AsymptoticTree {
        &self.tree
    }

    pub fn q(&self) -> u32 {
        self.tree.q()
    }

    /// Core-pair function between core vertices by index.
    pub fn core_pair(&self, u: usize, v: usize) -> &SurdFunction {
        &self.full[u][v]
    }

    /// The pair generating function between any two vertices of G.
    pub fn pair(&self, u: &VertexAddress, v: &VertexAddress) -> Result<PairGf> {
        self.tree.check_address(u)?;
        self.tree.check_address(v)?;
        let q = self.q();
        let q_fn = tree_return(q);
        let scale_q = BigRational::from_integer(u64::from(q).into());
        match (u, v) {
            (VertexAddress::Core(a), VertexAddress::Core(b)) => {
                let (a, b) = (self.core_index(a), self.core_index(b));
                Ok(PairGf::new(q, vec![(self.full[a][b].clone(), 0)]))
            }
            (VertexAddress::Core(a), VertexAddress::Tree { graft, .. }) => {
                let a = self.core_index(a);
                let g = self.core_index(graft);
                let m = &self.minus[&g];
                let w = m.matrix[a][g]
                    .scale(&scale_q)
                    .mul(&q_fn)
                    .div(&m.denom)?;
                Ok(PairGf::new(q, vec![(w, v.depth() as u32)]))
            }
            (VertexAddress::Tree { graft, .. }, VertexAddress::Core(b)) => {
                let g = self.core_index(graft);
                let b = self.core_index(b);
                Ok(PairGf::new(
                    q,
                    vec![(self.full[g][b].clone(), u.depth() as u32)],
                ))
            }
            (
                VertexAddress::Tree { graft: gu, .. },
                VertexAddress::Tree { graft: gv, .. },
            ) => {
                let gui = self.core_index(gu);
                let gvi = self.core_index(gv);
                if gui == gvi {
                    // Same graft vertex: distance plus the meeting depth of
                    // the two root paths determine the two-term form.
                    let d = self.tree.distance(u, v)? as u32;
                    let fork = ((u.depth() + v.depth()) as u32 - d) / 2;
                    let m = &self.minus[&gui];
                    grafted_tree_pair(
                        &m.matrix[gui][gui],
                        self.tree.core().degree(gui) as u32,
                        self.tree.graft_count(gui),
                        d,
                        fork,
                    )
                } else {
                    // Different grafts: climb out of u's tree, then descend
                    // from u's anchor into v's tree.
                    let m = &self.minus[&gvi];
                    let w = m.matrix[gui][gvi]
                        .scale(&scale_q)
                        .mul(&q_fn)
                        .div(&m.denom)?;
                    Ok(PairGf::new(
                        q,
                        vec![(w, (u.depth() + v.depth()) as u32)],
                    ))
                }
            }
        }
    }

    /// Return series of a vertex: the diagonal pair function.
    pub fn return_series(&self, u: &VertexAddress) -> Result<PairGf> {
        self.pair(u, u)
    }

    /// First-return series F = 1 − 1/Q_{u,u}.
    pub fn first_return(&self, u: &VertexAddress) -> Result<SurdFunction> {
        let diag = self.pair(u, u)?.to_surd();
        let one = SurdFunction::one(self.q(), Variable::Z);
        Ok(one.sub(&diag.inverse()?))
    }

    fn core_index(&self, label: &str) -> usize {
        self.tree
            .core()
            .index_of(label)
            .expect("validated address")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generating::oracle::walk_probabilities;
    use crate::graph::CoreGraph;
    use num_traits::Zero;

    fn sample_tree() -> AsymptoticTree {
        let core = CoreGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        AsymptoticTree::new(core, &[("a".into(), 1), ("c".into(), 2)], 3).unwrap()
    }

    #[test]
    fn graft_order_does_not_matter() {
        let t = sample_tree();
        let fwd = assemble(&t, &[0, 2]).unwrap();
        let rev = assemble(&t, &[2, 0]).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert!(fwd[u][v].sub(&rev[u][v]).is_zero(), "entry ({u},{v})");
            }
        }
    }

    #[test]
    fn all_pair_cases_match_the_walk_oracle() {
        let t = sample_tree();
        let bundle = GeneratingBundle::new(t.clone()).unwrap();
        let cases = [
            (VertexAddress::core("b"), VertexAddress::core("b")),
            (VertexAddress::core("a"), VertexAddress::core("c")),
            (VertexAddress::core("b"), VertexAddress::tree("c", 2, vec![1])),
            (VertexAddress::tree("c", 2, vec![1]), VertexAddress::core("b")),
            (VertexAddress::core("a"), VertexAddress::tree("a", 1, vec![])),
            // Same copy: diagonal, on-path, forked, below.
            (
                VertexAddress::tree("a", 1, vec![0]),
                VertexAddress::tree("a", 1, vec![0]),
            ),
            (
                VertexAddress::tree("a", 1, vec![0, 1]),
                VertexAddress::tree("a", 1, vec![]),
            ),
            (
                VertexAddress::tree("a", 1, vec![0]),
                VertexAddress::tree("a", 1, vec![1, 1]),
            ),
            // Cross copy, same graft.
            (
                VertexAddress::tree("c", 1, vec![0]),
                VertexAddress::tree("c", 2, vec![]),
            ),
            // Cross graft.
            (
                VertexAddress::tree("a", 1, vec![1]),
                VertexAddress::tree("c", 2, vec![0, 0]),
            ),
        ];
        for (u, v) in cases {
            let series = bundle.pair(&u, &v).unwrap().series(10).unwrap();
            let oracle = walk_probabilities(&t, &u, &v, 10).unwrap();
            assert_eq!(series, oracle, "pair {u} → {v}");
        }
    }

    #[test]
    fn sigma_weighted_symmetry_across_representations() {
        let t = sample_tree();
        let bundle = GeneratingBundle::new(t.clone()).unwrap();
        let vertices = [
            VertexAddress::core("a"),
            VertexAddress::core("b"),
            VertexAddress::tree("a", 1, vec![1]),
            VertexAddress::tree("c", 1, vec![]),
            VertexAddress::tree("c", 2, vec![0, 1]),
        ];
        for u in &vertices {
            for v in &vertices {
                let su = BigRational::from_integer(
                    u64::from(t.degree(u).unwrap()).into(),
                );
                let sv = BigRational::from_integer(
                    u64::from(t.degree(v).unwrap()).into(),
                );
                let lhs = bundle.pair(u, v).unwrap().scale(&su).series(9).unwrap();
                let rhs = bundle.pair(v, u).unwrap().scale(&sv).series(9).unwrap();
                assert_eq!(lhs, rhs, "σ-symmetry {u} ↔ {v}");
            }
        }
    }

    #[test]
    fn chain_pairs_match_oracle() {
        // q = 2 with a two-vertex core and one half-line at each end: ℤ.
        let core = CoreGraph::new(
            vec!["l".into(), "r".into()],
            &[("l".into(), "r".into())],
        )
        .unwrap();
        let t = AsymptoticTree::new(core, &[("l".into(), 1), ("r".into(), 1)], 2).unwrap();
        let bundle = GeneratingBundle::new(t.clone()).unwrap();
        for (u, v) in [
            (VertexAddress::core("l"), VertexAddress::core("r")),
            (VertexAddress::core("l"), VertexAddress::tree("r", 1, vec![0])),
            (
                VertexAddress::tree("l", 1, vec![]),
                VertexAddress::tree("r", 1, vec![]),
            ),
        ] {
            let series = bundle.pair(&u, &v).unwrap().series(12).unwrap();
            let oracle = walk_probabilities(&t, &u, &v, 12).unwrap();
            assert_eq!(series, oracle, "chain pair {u} → {v}");
        }
    }

    #[test]
    fn first_return_series_counts_first_returns() {
        let t = sample_tree();
        let bundle = GeneratingBundle::new(t).unwrap();
        let u = VertexAddress::core("b");
        let f = bundle.first_return(&u).unwrap().series(6).unwrap();
        // Two-step first returns to b: b→a→b = (1/2)(1/2) and
        // b→c→b = (1/2)(1/3), so f₂ = 5/12.
        assert!(f[0].is_zero() && f[1].is_zero());
        assert_eq!(f[2], crate::exact::rat(5, 12));
    }
}

//! Probability captured inside a metric ball, computed by symmetry classes.
//!
//! Vertices of a ball around a fixed center split into classes with equal
//! amplitude: an automorphism that fixes the center (and the core pointwise)
//! can permute the planted-tree copies at a graft vertex and the branches
//! hanging off any tree vertex, so the amplitude to a vertex depends only on
//! its anchor, its depth, and how its path meets the center's. One
//! representative per class is evaluated and weighted by the class size,
//! turning the exponentially large ball into a linear number of pair
//! evaluations.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use super::{PairDynamics, QuantumWalk};
use crate::error::Result;
use crate::graph::VertexAddress;

/// One equal-amplitude class of ball vertices: a representative, the number
/// of vertices it stands for, and their common distance from the center.
pub struct BallClass {
    pub representative: VertexAddress,
    /// Class size; f64 because tree shells grow as (q−1)^depth.
    pub count: f64,
    pub distance: u64,
    dynamics: PairDynamics,
}

/// All classes of one ball, ready for repeated probability evaluation.
pub struct BallDecomposition {
    classes: Vec<BallClass>,
}

impl BallDecomposition {
    pub fn classes(&self) -> &[BallClass] {
        &self.classes
    }

    /// Number of vertices in the ball, as the sum of class sizes.
    pub fn vertex_count(&self) -> f64 {
        self.classes.iter().map(|c| c.count).sum()
    }

    /// Probability of finding the walker inside the ball at time t:
    /// Σ_classes count·|A_t(center, representative)|².
    pub fn probability(&self, t: f64) -> Result<f64> {
        let mut total = 0.0;
        for class in &self.classes {
            total += class.count * class.dynamics.amplitude(t)?.norm_sqr();
        }
        Ok(total)
    }
}

impl QuantumWalk {
    /// Decomposes the radius-`radius` ball around `center` into
    /// equal-amplitude classes.
    pub fn ball_classes(
        &self,
        center: &VertexAddress,
        radius: u32,
    ) -> Result<BallDecomposition> {
        let tree = self.tree();
        tree.check_address(center)?;
        let radius = u64::from(radius);
        let growth = f64::from(tree.q() - 1);
        let mut reps: Vec<(VertexAddress, f64)> = Vec::new();

        // Classes inside the center's own planted tree: each ancestor of the
        // center is alone in its class; below an ancestor at depth m the
        // branches avoiding the center fan out with q−2 choices at the fork
        // (q−1 below the center itself), then q−1 per extra level.
        let mut own_copy: Option<(usize, u32)> = None;
        if let VertexAddress::Tree { graft, index, path } = center {
            own_copy = Some((tree.anchor(center), *index));
            let depth = center.depth();
            for m in depth.saturating_sub(radius).max(1)..=depth {
                let ancestor_path = &path[..(m - 1) as usize];
                reps.push((
                    VertexAddress::tree(graft.clone(), *index, ancestor_path),
                    1.0,
                ));
                let (fanout, child) = if m < depth {
                    (f64::from(tree.q() - 2), (path[(m - 1) as usize] + 1) % (tree.q() - 1))
                } else {
                    (growth, 0)
                };
                if fanout == 0.0 {
                    continue;
                }
                let headroom = radius - (depth - m);
                for extra in 1..=headroom {
                    let mut branch = ancestor_path.to_vec();
                    branch.push(child);
                    branch.resize(branch.len() + (extra - 1) as usize, 0);
                    reps.push((
                        VertexAddress::tree(graft.clone(), *index, branch),
                        fanout * growth.powi(extra as i32 - 1),
                    ));
                }
            }
        }

        // Classes seen through the core: every core vertex alone, and at each
        // graft vertex all still-available copies fused into one class per
        // depth (the center's own copy is already accounted for above).
        for (w, label) in tree.core().labels().iter().enumerate() {
            let core_rep = VertexAddress::core(label.clone());
            let base = tree.distance(center, &core_rep)?;
            if base > radius {
                continue;
            }
            reps.push((core_rep, 1.0));
            let excluded = match own_copy {
                Some((anchor, index)) if anchor == w => Some(index),
                _ => None,
            };
            let available = tree.graft_count(w) - u32::from(excluded.is_some());
            if available == 0 {
                continue;
            }
            let rep_index = match excluded {
                Some(1) => 2,
                _ => 1,
            };
            for depth in 1..=(radius - base) {
                let path = alloc::vec![0u32; (depth - 1) as usize];
                reps.push((
                    VertexAddress::tree(label.clone(), rep_index, path),
                    f64::from(available) * growth.powi(depth as i32 - 1),
                ));
            }
        }

        let mut classes = Vec::with_capacity(reps.len());
        for (representative, count) in reps {
            let distance = tree.distance(center, &representative)?;
            debug_assert!(distance <= radius);
            classes.push(BallClass {
                dynamics: self.pair_dynamics(center, &representative)?,
                representative,
                count,
                distance,
            });
        }
        Ok(BallDecomposition { classes })
    }

    /// Probability of finding the walker within distance `radius` of
    /// `center` at time t.
    pub fn ball_probability(
        &self,
        center: &VertexAddress,
        radius: u32,
        t: f64,
    ) -> Result<f64> {
        self.ball_classes(center, radius)?.probability(t)
    }
}

//! Independent classical-walk oracles.
//!
//! Both oracles iterate the transition operator K = A·D⁻¹ exactly in
//! rational arithmetic, sharing no code with the generating-function
//! machinery they are used to validate.
//!
//! * The literal oracle walks on an explicitly truncated ball. It is
//!   exhaustive but the ball grows like (q−1)^n, so it only serves small
//!   instances and as a check on the second oracle.
//! * The lumped oracle walks on the quotient of G by the automorphisms that
//!   fix the start vertex (branch permutations inside each planted tree and
//!   permutations of tree copies). Probability mass is uniform on each
//!   orbit, so per-vertex probabilities are recovered by dividing by orbit
//!   sizes. Class counts grow only linearly in the step count.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{AsymptoticTree, VertexAddress};
use crate::Result;

/// Orbit of a vertex under the start-fixing automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ClassId {
    /// A core vertex (always a singleton orbit).
    Core(usize),
    /// Depth-d vertices of the trees at a graft vertex, excluding the copy
    /// containing the start vertex (when the start is a tree vertex there).
    Other { graft: usize, depth: u32 },
    /// The vertex at this depth on the start vertex's own root path
    /// (a singleton; depth equal to the start depth is the start itself).
    Path { depth: u32 },
    /// Vertices in the start copy whose root path leaves the start's path
    /// at `fork` (deepest shared path vertex) and whose depth is `depth`.
    Branch { fork: u32, depth: u32 },
}

struct Class {
    size: BigUint,
    sigma: u32,
    /// (target class, number of neighbors a representative has there).
    neighbors: Vec<(usize, u32)>,
}

struct Lumped {
    classes: Vec<Class>,
    index: BTreeMap<ClassId, usize>,
}

/// Location of the start vertex, precomputed for class resolution.
struct Start {
    /// (graft core index, copy index, path) when the start is a tree vertex.
    tree: Option<(usize, u32, Vec<u32>)>,
}

fn class_of(start: &Start, tree: &AsymptoticTree, v: &VertexAddress) -> Result<ClassId> {
    Ok(match v {
        VertexAddress::Core(label) => ClassId::Core(
            tree.core()
                .index_of(label)
                .expect("validated address"),
        ),
        VertexAddress::Tree { graft, index, path } => {
            let g = tree.core().index_of(graft).expect("validated address");
            let depth = 1 + path.len() as u32;
            match &start.tree {
                Some((sg, si, spath)) if *sg == g && *si == *index => {
                    let du = 1 + spath.len() as u32;
                    let common = spath
                        .iter()
                        .zip(path.iter())
                        .take_while(|(a, b)| a == b)
                        .count() as u32;
                    if common == depth - 1 {
                        // v's path is a prefix of the start's: on the path.
                        ClassId::Path { depth }
                    } else if common == du - 1 {
                        // The start's path is a proper prefix of v's.
                        ClassId::Branch { fork: du, depth }
                    } else {
                        ClassId::Branch {
                            fork: common + 1,
                            depth,
                        }
                    }
                }
                _ => ClassId::Other { graft: g, depth },
            }
        }
    })
}

fn build_lumped(tree: &AsymptoticTree, start: &Start, max_depth: u32) -> Lumped {
    let q = tree.q();
    let core = tree.core();
    let mut ids: Vec<(ClassId, BigUint, u32)> = Vec::new();

    for i in 0..core.len() {
        ids.push((ClassId::Core(i), BigUint::one(), tree.sigma_full(i)));
    }
    let (start_graft, start_depth) = match &start.tree {
        Some((g, _, path)) => (Some(*g), 1 + path.len() as u32),
        None => (None, 0),
    };
    for &g in tree.graft_vertices() {
        let mut copies = BigUint::from(tree.graft_count(g));
        if start_graft == Some(g) {
            copies -= BigUint::one();
        }
        if copies.is_zero() {
            continue;
        }
        for depth in 1..=max_depth {
            let size = &copies * branch_count(q, depth - 1);
            ids.push((ClassId::Other { graft: g, depth }, size, q));
        }
    }
    if start_depth > 0 {
        for depth in 1..=start_depth {
            ids.push((ClassId::Path { depth }, BigUint::one(), q));
        }
        for fork in 1..=start_depth {
            // Forking below the start uses all q−1 children; forking off the
            // interior of the path leaves q−2 choices.
            let ways = if fork == start_depth { q - 1 } else { q - 2 };
            if ways == 0 {
                continue;
            }
            for depth in (fork + 1)..=max_depth {
                let size = BigUint::from(ways) * branch_count(q, depth - fork - 1);
                ids.push((ClassId::Branch { fork, depth }, size, q));
            }
        }
    }

    let index: BTreeMap<ClassId, usize> = ids
        .iter()
        .enumerate()
        .map(|(k, (id, _, _))| (id.clone(), k))
        .collect();
    let mut classes: Vec<Class> = ids
        .iter()
        .map(|(_, size, sigma)| Class {
            size: size.clone(),
            sigma: *sigma,
            neighbors: Vec::new(),
        })
        .collect();

    let link = |classes: &mut Vec<Class>, from: usize, to: ClassId, count: u32| {
        if count == 0 {
            return;
        }
        if let Some(&t) = index.get(&to) {
            classes[from].neighbors.push((t, count));
        }
    };

    for (k, (id, _, _)) in ids.iter().enumerate() {
        match id {
            ClassId::Core(i) => {
                for &j in core.neighbors(*i) {
                    link(&mut classes, k, ClassId::Core(j), 1);
                }
                let p = tree.graft_count(*i);
                if p > 0 {
                    if start_graft == Some(*i) {
                        link(&mut classes, k, ClassId::Path { depth: 1 }, 1);
                        link(&mut classes, k, ClassId::Other { graft: *i, depth: 1 }, p - 1);
                    } else {
                        link(&mut classes, k, ClassId::Other { graft: *i, depth: 1 }, p);
                    }
                }
            }
            ClassId::Other { graft, depth } => {
                if *depth == 1 {
                    link(&mut classes, k, ClassId::Core(*graft), 1);
                } else {
                    link(
                        &mut classes,
                        k,
                        ClassId::Other { graft: *graft, depth: depth - 1 },
                        1,
                    );
                }
                link(
                    &mut classes,
                    k,
                    ClassId::Other { graft: *graft, depth: depth + 1 },
                    q - 1,
                );
            }
            ClassId::Path { depth } => {
                if *depth == 1 {
                    link(&mut classes, k, ClassId::Core(start_graft.unwrap()), 1);
                } else {
                    link(&mut classes, k, ClassId::Path { depth: depth - 1 }, 1);
                }
                if *depth < start_depth {
                    link(&mut classes, k, ClassId::Path { depth: depth + 1 }, 1);
                    link(
                        &mut classes,
                        k,
                        ClassId::Branch { fork: *depth, depth: depth + 1 },
                        q - 2,
                    );
                } else {
                    link(
                        &mut classes,
                        k,
                        ClassId::Branch { fork: *depth, depth: depth + 1 },
                        q - 1,
                    );
                }
            }
            ClassId::Branch { fork, depth } => {
                if *depth == fork + 1 {
                    link(&mut classes, k, ClassId::Path { depth: *fork }, 1);
                } else {
                    link(
                        &mut classes,
                        k,
                        ClassId::Branch { fork: *fork, depth: depth - 1 },
                        1,
                    );
                }
                link(
                    &mut classes,
                    k,
                    ClassId::Branch { fork: *fork, depth: depth + 1 },
                    q - 1,
                );
            }
        }
    }

    Lumped { classes, index }
}

/// Number of descendants `levels` generations below a planted-tree vertex
/// along one child subtree: (q−1)^levels.
fn branch_count(q: u32, levels: u32) -> BigUint {
    BigUint::from(q - 1).pow(levels)
}

/// Exact step probabilities p_n(u → v) for n = 0..=steps, computed on the
/// symmetry quotient of G.
pub fn walk_probabilities(
    tree: &AsymptoticTree,
    u: &VertexAddress,
    v: &VertexAddress,
    steps: usize,
) -> Result<Vec<BigRational>> {
    tree.check_address(u)?;
    tree.check_address(v)?;
    let start = Start {
        tree: match u {
            VertexAddress::Core(_) => None,
            VertexAddress::Tree { graft, index, path } => Some((
                tree.core().index_of(graft).expect("validated address"),
                *index,
                path.clone(),
            )),
        },
    };
    let max_depth = u.depth() as u32 + steps as u32 + 1;
    let lumped = build_lumped(tree, &start, max_depth);

    let start_class = lumped.index[&class_of(&start, tree, u)?];
    let target = class_of(&start, tree, v)?;
    let (target_class, target_size) = match lumped.index.get(&target) {
        Some(&t) => (Some(t), lumped.classes[t].size.clone()),
        // Deeper than anything reachable in `steps` steps.
        None => (None, BigUint::one()),
    };
    let target_size = BigRational::from_integer(target_size.into());

    let mut mass = vec![BigRational::zero(); lumped.classes.len()];
    mass[start_class] = BigRational::one();
    let mut out = Vec::with_capacity(steps + 1);
    let read = |mass: &[BigRational]| match target_class {
        Some(t) => &mass[t] / &target_size,
        None => BigRational::zero(),
    };
    out.push(read(&mass));
    for _ in 0..steps {
        let mut next = vec![BigRational::zero(); lumped.classes.len()];
        for (k, class) in lumped.classes.iter().enumerate() {
            if mass[k].is_zero() {
                continue;
            }
            let share = &mass[k] / BigRational::from_integer(class.sigma.into());
            for &(t, count) in &class.neighbors {
                next[t] += &share * BigRational::from_integer(count.into());
            }
        }
        mass = next;
        out.push(read(&mass));
    }
    Ok(out)
}

/// Exact step probabilities by walking an explicitly truncated ball.
/// Exponential in `steps`; intended for cross-validating the quotient walk
/// on small instances.
pub fn walk_probabilities_literal(
    tree: &AsymptoticTree,
    u: &VertexAddress,
    v: &VertexAddress,
    steps: usize,
) -> Result<Vec<BigRational>> {
    tree.check_address(u)?;
    tree.check_address(v)?;
    let ball = tree.truncated_ball(u, steps as u32)?;
    let start = ball.index[u];
    let target = ball.index.get(v).copied();
    let mut mass = vec![BigRational::zero(); ball.len()];
    mass[start] = BigRational::one();
    let read = |mass: &[BigRational]| match target {
        Some(t) => mass[t].clone(),
        None => BigRational::zero(),
    };
    let mut out = Vec::with_capacity(steps + 1);
    out.push(read(&mass));
    for _ in 0..steps {
        let mut next = vec![BigRational::zero(); ball.len()];
        for (x, m) in mass.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let share = m / BigRational::from_integer(ball.degree_in_g[x].into());
            for &w in &ball.adj[x] {
                next[w] += &share;
            }
        }
        mass = next;
        out.push(read(&mass));
    }
    Ok(out)
}

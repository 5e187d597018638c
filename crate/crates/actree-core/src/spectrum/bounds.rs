//! Dimension bounds on the pure point spectrum.
//!
//! Grafting trees can destroy exterior core eigenvalues but never create
//! more than the core already had: with V₀ the set of grafted core vertices,
//!
//! ```text
//! Σ_ext dim(core) − 2·♯V₀ ≤ Σ_ext dim(graph) ≤ Σ_ext dim(core),
//! ```
//!
//! where each sum ranges over exterior eigenvalues (|λ| > a/q, the core side
//! judged in its standalone spectrum). In addition the *whole* point part of
//! the grafted graph — exterior and embedded together — has total dimension
//! at most the number of core vertices.

use crate::error::Result;
use crate::exact::{isolate_all_real_roots, weight_poly, Poly, Variable};
use crate::graph::{AsymptoticTree, DegreeConvention};
use crate::spectrum::eigen::core_characteristic_polynomial;
use crate::spectrum::{SpectralLocation, SpectrumReport};

/// Both point-spectrum bounds evaluated on one instance.
#[derive(Clone, Copy, Debug)]
pub struct PointBoundsVerdict {
    /// Total multiplicity of exterior eigenvalues of the standalone core.
    pub core_exterior: usize,
    /// Total multiplicity of exterior eigenvalues of the grafted graph.
    pub graph_exterior: usize,
    /// ♯V₀, the number of core vertices carrying at least one tree.
    pub graft_sites: usize,
    /// Total point-spectrum dimension of the grafted graph.
    pub total_point: usize,
    /// core_exterior − 2·graft_sites (may be negative).
    pub lower: i64,
    /// lower ≤ graph_exterior ≤ core_exterior.
    pub theorem_holds: bool,
    /// total_point ≤ number of core vertices.
    pub remark_holds: bool,
}

/// Total multiplicity of the standalone core's exterior eigenvalues,
/// |λ| > a/q decided exactly from the characteristic polynomial. A
/// single-vertex core has standalone spectrum {1}, exterior unless q = 2.
pub fn core_exterior_dimension(tree: &AsymptoticTree) -> Result<usize> {
    if tree.core().len() == 1 {
        return Ok(usize::from(tree.q() != 2));
    }
    let char_poly = Poly::new(core_characteristic_polynomial(
        tree,
        DegreeConvention::Standalone,
    )?);
    let weight = weight_poly(tree.q(), Variable::Lambda);
    let mut dimension = 0;
    for mut root in isolate_all_real_roots(&char_poly) {
        if root.sign_at_root(&weight) > 0 {
            dimension += root.multiplicity();
        }
    }
    Ok(dimension)
}

/// Checks the exterior-dimension bounds and the total-dimension bound
/// against a computed spectrum.
pub fn verify_point_bounds(
    tree: &AsymptoticTree,
    report: &SpectrumReport,
) -> Result<PointBoundsVerdict> {
    let core_exterior = core_exterior_dimension(tree)?;
    let mut graph_exterior = 0;
    let mut total_point = 0;
    for rec in &report.pure_point {
        total_point += rec.multiplicity;
        if rec.location == SpectralLocation::Exterior {
            graph_exterior += rec.multiplicity;
        }
    }
    let graft_sites = tree.graft_vertices().len();
    let lower = core_exterior as i64 - 2 * graft_sites as i64;
    Ok(PointBoundsVerdict {
        core_exterior,
        graph_exterior,
        graft_sites,
        total_point,
        lower,
        theorem_holds: lower <= graph_exterior as i64 && graph_exterior <= core_exterior,
        remark_holds: total_point <= tree.core().len(),
    })
}

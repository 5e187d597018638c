//! Full spectral decomposition of the walk operator on an asymptotic Cayley
//! tree.
//!
//! The pure point spectrum splits into two families. Exterior eigenvalues
//! (|λ| > a/q) appear as certified real poles of the core resolvent entries
//! and carry spherically decaying eigenfunctions; embedded eigenvalues
//! (|λ| ≤ a/q) come from core eigenfunctions that vanish on every graft
//! vertex and extend by zero. Everything in between is absolutely continuous
//! with an explicit density. Multiplicities are residue-matrix ranks,
//! computed exactly where the eigenvalue is rational and numerically with a
//! guarded gap otherwise.

mod eigen;
mod residue;

pub mod bounds;
pub mod density;
pub mod embedded;
pub mod exterior;
pub mod extension;
pub mod interlace;
pub mod predict;

pub use bounds::{core_exterior_dimension, verify_point_bounds, PointBoundsVerdict};
pub use density::{cayley_pair_density, density};
pub use embedded::{embedded_eigenvalues, EmbeddedSpace};
pub use exterior::exterior_eigenvalues;
pub use extension::{
    eigenfunction_extension, eigenfunctions_from_residues, extension_residual, square_summable,
    xi_inverse, xi_inverse_exact, ExtendedEigenfunction,
};
pub use interlace::{interlacing_check, InterlacingReport};
pub use predict::{
    complete_core_predictions, lambda_from_lambda_prime, qregular_predictions, CompleteCoreReport,
    CompleteMode, PredictedEigenvalue, QRegularPair, QRegularReport,
};

#[allow(unused_imports)]
use num_traits::Float;

use alloc::string::String;
use alloc::vec::Vec;
use num_rational::BigRational;

use crate::error::Result;
use crate::exact::{ratio_to_f64, IsolatedRoot, QuadExt, SurdFunction};
use crate::generating::GeneratingBundle;

/// Position of an eigenvalue relative to the continuous band [−a/q, a/q].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpectralLocation {
    /// |λ| > a/q: eigenfunction decays exponentially along the trees.
    Exterior,
    /// |λ| ≤ a/q: eigenfunction lives on the core and vanishes at grafts.
    Embedded,
}

/// How the eigenvalue was established.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EigenvalueOrigin {
    /// Certified pole of a resolvent entry.
    Pole,
    /// Core eigenfunction constrained to vanish on the graft vertices.
    CoreConstrained,
}

/// An eigenvalue known exactly: either a rational number or an isolated
/// algebraic root with a shrinkable interval.
#[derive(Clone, Debug)]
pub enum SpectralPoint {
    Rational(BigRational),
    Algebraic(IsolatedRoot),
}

impl SpectralPoint {
    pub fn to_f64(&self) -> f64 {
        match self {
            SpectralPoint::Rational(r) => ratio_to_f64(r),
            SpectralPoint::Algebraic(root) => root.to_f64(),
        }
    }

    /// Isolating interval (degenerate at a rational point).
    pub fn interval(&self) -> (BigRational, BigRational) {
        match self {
            SpectralPoint::Rational(r) => (r.clone(), r.clone()),
            SpectralPoint::Algebraic(root) => {
                let (lo, hi) = root.interval();
                (lo.clone(), hi.clone())
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            SpectralPoint::Rational(r) => Some(r),
            SpectralPoint::Algebraic(_) => None,
        }
    }
}

/// One pure-point eigenvalue with its spectral projection restricted to the
/// core: `residue_matrix[u][v]` is the residue of the resolvent entry
/// R_{u,v}(λ) at the eigenvalue, i.e. ⟨u|e_λ|v⟩ = Σ_k φ̂_k(u)φ̂_k(v)/σ_u over
/// an orthonormal eigenbasis. It obeys M[u][v]·σ_u = M[v][u]·σ_v, and the
/// weighted symmetrization σ_u·M[u][v] is positive semidefinite with rank
/// equal to the multiplicity.
#[derive(Clone, Debug)]
pub struct EigenvalueRecord {
    pub value: SpectralPoint,
    pub location: SpectralLocation,
    pub origin: EigenvalueOrigin,
    pub multiplicity: usize,
    pub residue_matrix: Vec<Vec<f64>>,
    /// Exact residues when the eigenvalue admits them (rational eigenvalue,
    /// or an embedded one with a rational basis).
    pub residue_matrix_exact: Option<Vec<Vec<QuadExt>>>,
}

impl EigenvalueRecord {
    pub fn lambda(&self) -> f64 {
        self.value.to_f64()
    }
}

/// The assembled pure-point spectrum plus the λ-side core resolvent entries
/// whose branch discontinuity is the continuous density.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub q: u32,
    /// a/q, the right band edge.
    pub band_edge: f64,
    pub core_labels: Vec<String>,
    /// σ_u(G) per core vertex, same order as the labels.
    pub sigma: Vec<u32>,
    /// Eigenvalue records in ascending order of λ.
    pub pure_point: Vec<EigenvalueRecord>,
    resolvents: Vec<Vec<SurdFunction>>,
}

impl SpectrumReport {
    /// λ-side resolvent entry R_{u,v}(λ) between core vertices by index.
    pub fn core_resolvent(&self, u: usize, v: usize) -> &SurdFunction {
        &self.resolvents[u][v]
    }

    /// Total point mass Σ_λ ⟨u|e_λ|u⟩ at a core vertex.
    pub fn point_mass(&self, u: usize) -> f64 {
        self.pure_point
            .iter()
            .map(|rec| rec.residue_matrix[u][u])
            .sum()
    }
}

/// Extracts the complete pure-point spectrum: certified exterior poles plus
/// embedded core-constrained eigenspaces, merged in ascending order.
pub fn full_spectrum(bundle: &GeneratingBundle) -> Result<SpectrumReport> {
    let tree = bundle.tree();
    let n = tree.core().len();
    let mut records = exterior::exterior_eigenvalues(bundle)?;
    for space in embedded::embedded_eigenvalues(tree)? {
        records.push(embedded::to_record(&space, tree)?);
    }
    records.sort_by(|a, b| {
        a.lambda()
            .partial_cmp(&b.lambda())
            .expect("eigenvalues are finite")
    });
    let resolvents = (0..n)
        .map(|u| (0..n).map(|v| bundle.core_pair(u, v).resolvent()).collect())
        .collect();
    Ok(SpectrumReport {
        q: tree.q(),
        band_edge: tree.band_edge(),
        core_labels: tree.core().labels().to_vec(),
        sigma: (0..n).map(|u| tree.sigma_full(u)).collect(),
        pure_point: records,
        resolvents,
    })
}

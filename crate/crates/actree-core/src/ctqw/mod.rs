//! Continuous-time quantum walk driven by the exact spectral data.
//!
//! The Hamiltonian is H = −K with K = AD⁻¹, so the evolution operator is
//! e^{iKt} and the amplitude between two vertices splits along the spectral
//! representation of K into a finite sum over pure-point eigenvalues and an
//! oscillatory integral over the continuous band [−a/q, a/q]:
//!
//!   A_t(u,v) = √(σ_u/σ_v)·[ Σ_λ ⟨v-entry of e_λ⟩·e^{iλt}
//!                           + ∫ e^{iλt}·ρ_{u,v}(λ)·dλ ].
//!
//! Point residues involving tree vertices never need fresh resolvents:
//! an exterior eigenfunction extends radially into every grafted tree with
//! one factor q/σ_anchor on the first hop and ξ⁻¹ per level after, so the
//! residue of R_{u,v} at λ is the core residue times ξ^{−(depth_u+depth_v)}
//! and, when v is a tree vertex, times q/σ_anchor(v). Embedded
//! eigenfunctions vanish on the graft vertices and carry no tree mass at
//! all.

mod ball;
mod bessel;
mod fit;
mod front;
mod quadrature;
mod tail;

pub use ball::{BallClass, BallDecomposition};
pub use bessel::{bessel_reference, bessel_series};
pub use fit::{decay_exponent_fit, DecayFit};
pub use front::{front_profile, FrontSample};
pub use quadrature::BandIntegrand;
pub use tail::{stationary_phase_tail, StationaryPhaseTail};

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Result;
use crate::generating::GeneratingBundle;
use crate::graph::{AsymptoticTree, VertexAddress};
use crate::spectrum::{full_spectrum, xi_inverse, SpectralLocation, SpectrumReport};

/// The quantum-walk engine: the exact generating bundle plus the assembled
/// pure-point spectrum of one graph.
pub struct QuantumWalk {
    bundle: GeneratingBundle,
    report: SpectrumReport,
}

impl QuantumWalk {
    pub fn new(tree: AsymptoticTree) -> Result<Self> {
        Self::from_bundle(GeneratingBundle::new(tree)?)
    }

    pub fn from_bundle(bundle: GeneratingBundle) -> Result<Self> {
        let report = full_spectrum(&bundle)?;
        Ok(QuantumWalk { bundle, report })
    }

    pub fn tree(&self) -> &AsymptoticTree {
        self.bundle.tree()
    }

    pub fn bundle(&self) -> &GeneratingBundle {
        &self.bundle
    }

    pub fn report(&self) -> &SpectrumReport {
        &self.report
    }

    /// Precompiled dynamics of one ordered pair: the pure-point residues of
    /// R_{u,v} and the band integrand, ready for evaluation at many times.
    pub fn pair_dynamics(&self, u: &VertexAddress, v: &VertexAddress) -> Result<PairDynamics> {
        let tree = self.tree();
        tree.check_address(u)?;
        tree.check_address(v)?;
        let q = f64::from(tree.q());
        let au = tree.anchor(u);
        let av = tree.anchor(v);
        let depth_sum = (u.depth() + v.depth()) as i32;
        let hop_v = match v {
            VertexAddress::Core(_) => 1.0,
            VertexAddress::Tree { .. } => q / f64::from(tree.sigma_full(av)),
        };
        let mut point = Vec::new();
        for record in &self.report.pure_point {
            let base = record.residue_matrix[au][av];
            let residue = if depth_sum == 0 {
                base
            } else {
                match record.location {
                    // Embedded eigenfunctions vanish on grafts and trees.
                    SpectralLocation::Embedded => 0.0,
                    SpectralLocation::Exterior => {
                        let xi_inv = xi_inverse(tree.q(), record.lambda())?;
                        base * hop_v * xi_inv.powi(depth_sum)
                    }
                }
            };
            if residue != 0.0 {
                point.push((record.lambda(), residue));
            }
        }
        let sigma_u = f64::from(tree.degree(u)?);
        let sigma_v = f64::from(tree.degree(v)?);
        Ok(PairDynamics {
            sigma_ratio_sqrt: (sigma_u / sigma_v).sqrt(),
            point,
            band: BandIntegrand::new(&self.bundle.pair(u, v)?.resolvent()),
        })
    }

    /// A_t(u,v) for a single time. Building [`PairDynamics`] once is cheaper
    /// when the same pair is evaluated at many times.
    pub fn amplitude(&self, u: &VertexAddress, v: &VertexAddress, t: f64) -> Result<Complex64> {
        Ok(self.pair_dynamics(u, v)?.amplitude(t)?)
    }

    /// The trapping constant Σ_λ ⟨u|e_λ|u⟩: the total pure-point mass at u,
    /// which is the long-time average of the probability of finding the
    /// walker in any fixed neighborhood of its start.
    pub fn trapping_probability(&self, u: &VertexAddress) -> Result<f64> {
        let dynamics = self.pair_dynamics(u, u)?;
        Ok(dynamics.point.iter().map(|(_, r)| r).sum())
    }
}

/// The spectral data of one ordered vertex pair, precompiled for repeated
/// amplitude evaluation.
pub struct PairDynamics {
    sigma_ratio_sqrt: f64,
    /// (λ, residue of R_{u,v} at λ) per pure-point eigenvalue.
    point: Vec<(f64, f64)>,
    band: BandIntegrand,
}

impl PairDynamics {
    /// The pure-point part of the amplitude, √(σ_u/σ_v)·Σ residue·e^{iλt}.
    pub fn point_part(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (lambda, residue) in &self.point {
            acc += Complex64::from_polar(*residue, lambda * t);
        }
        acc * self.sigma_ratio_sqrt
    }

    /// Time average of |A_t|²: the squared point residues survive, all
    /// oscillating cross terms and the band part average out.
    pub fn long_time_mean(&self) -> f64 {
        self.point
            .iter()
            .map(|(_, r)| (self.sigma_ratio_sqrt * r) * (self.sigma_ratio_sqrt * r))
            .sum()
    }

    pub fn amplitude(&self, t: f64) -> Result<Complex64> {
        Ok(self.amplitude_with_nodes(t)?.0)
    }

    /// Amplitude plus the quadrature node count that passed the doubling
    /// check.
    pub fn amplitude_with_nodes(&self, t: f64) -> Result<(Complex64, usize)> {
        debug_assert!(t.is_finite());
        let (band, nodes) = self.band.integral(t)?;
        Ok((self.point_part(t) + band * self.sigma_ratio_sqrt, nodes))
    }
}

/// Time series of one pair's walk: amplitudes, detection probabilities, the
/// node counts behind them, and the trapping constant of the start vertex.
/// A decay fit is attached only when the caller has produced one.
pub struct WalkReport {
    pub times: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
    pub probabilities: Vec<f64>,
    pub node_counts: Vec<usize>,
    pub trapping_constant: f64,
    pub fit: Option<DecayFit>,
}

/// Evaluates the full time series for one pair. Times must be finite,
/// nonnegative and sorted ascending.
pub fn walk_report(
    walk: &QuantumWalk,
    u: &VertexAddress,
    v: &VertexAddress,
    times: &[f64],
) -> Result<WalkReport> {
    assert!(
        times.windows(2).all(|w| w[0] <= w[1]) && times.iter().all(|t| t.is_finite() && *t >= 0.0),
        "times must be finite, nonnegative and sorted"
    );
    let dynamics = walk.pair_dynamics(u, v)?;
    let mut amplitudes = Vec::with_capacity(times.len());
    let mut probabilities = Vec::with_capacity(times.len());
    let mut node_counts = Vec::with_capacity(times.len());
    for &t in times {
        let (a, nodes) = dynamics.amplitude_with_nodes(t)?;
        amplitudes.push(a);
        probabilities.push(a.norm_sqr());
        node_counts.push(nodes);
    }
    Ok(WalkReport {
        times: times.to_vec(),
        amplitudes,
        probabilities,
        node_counts,
        trapping_constant: walk.trapping_probability(u)?,
        fit: None,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::graph::CoreGraph;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    /// T_q as a single-vertex core with q planted trees.
    pub fn pure_tree(q: u32) -> QuantumWalk {
        let core = CoreGraph::new(vec!["o".to_string()], &[]).unwrap();
        let tree = AsymptoticTree::new(core, &[("o".to_string(), q)], q).unwrap();
        QuantumWalk::new(tree).unwrap()
    }

    /// The two-sided chain ℤ: a two-vertex core with a half-line at each end.
    pub fn chain() -> QuantumWalk {
        let core = CoreGraph::new(
            vec!["l".to_string(), "r".to_string()],
            &[("l".to_string(), "r".to_string())],
        )
        .unwrap();
        let tree =
            AsymptoticTree::new(core, &[("l".to_string(), 1), ("r".to_string(), 1)], 2).unwrap();
        QuantumWalk::new(tree).unwrap()
    }

    /// Path core a–b–c with three trees grafted at the center, q = 4: one
    /// embedded eigenvalue λ = 0 carrying mass 1/2 at each end vertex.
    pub fn trapped_path() -> QuantumWalk {
        let core = CoreGraph::new(
            vec!["a".to_string(), "b".to_string(), "c".to_string()],
            &[("a".to_string(), "b".to_string()), ("b".to_string(), "c".to_string())],
        )
        .unwrap();
        let tree = AsymptoticTree::new(core, &[("b".to_string(), 3)], 4).unwrap();
        QuantumWalk::new(tree).unwrap()
    }

    /// K_5 with one tree per vertex, q = 5: a single exterior eigenvalue at
    /// λ = 13/15 with ξ⁻¹ = 1/3 and diagonal residues 1/6.
    pub fn complete_five() -> QuantumWalk {
        let labels: Vec<_> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        let grafts: Vec<_> = labels.iter().map(|l| (l.clone(), 1u32)).collect();
        let core = CoreGraph::new(labels, &edges).unwrap();
        QuantumWalk::new(AsymptoticTree::new(core, &grafts, 5).unwrap()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::vec;

    #[test]
    fn the_walk_starts_where_it_starts() {
        // A_0(u,u) = 1 exercises completeness: point masses plus band mass
        // must add to the full measure on every instance.
        let cases: Vec<(QuantumWalk, VertexAddress)> = vec![
            (pure_tree(3), VertexAddress::core("o")),
            (chain(), VertexAddress::core("l")),
            (trapped_path(), VertexAddress::core("a")),
            (complete_five(), VertexAddress::core("b")),
            (complete_five(), VertexAddress::tree("c", 1, vec![0])),
        ];
        for (walk, u) in &cases {
            let a0 = walk.amplitude(u, u, 0.0).unwrap();
            assert!((a0.re - 1.0).abs() < 1e-8, "{u}: {a0}");
            assert!(a0.im.abs() < 1e-12);
        }
    }

    #[test]
    fn distinct_vertices_start_unoccupied() {
        let walk = complete_five();
        let pairs = [
            (VertexAddress::core("a"), VertexAddress::core("b")),
            (VertexAddress::core("a"), VertexAddress::tree("a", 1, vec![])),
            (
                VertexAddress::tree("a", 1, vec![0]),
                VertexAddress::tree("b", 1, vec![]),
            ),
        ];
        for (u, v) in &pairs {
            let a0 = walk.amplitude(u, v, 0.0).unwrap();
            assert!(a0.norm() < 1e-8, "{u}→{v}: {a0}");
        }
    }

    #[test]
    fn reversing_time_conjugates_the_amplitude() {
        let walk = trapped_path();
        let u = VertexAddress::core("a");
        let v = VertexAddress::core("c");
        for t in [0.7, 3.3, 11.0] {
            let fwd = walk.amplitude(&u, &v, t).unwrap();
            let bwd = walk.amplitude(&u, &v, -t).unwrap();
            assert!((fwd - bwd.conj()).norm() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn sigma_symmetry_of_amplitudes() {
        // √(σ_u/σ_v)·R_{u,v} is symmetric in (u,v) because σ_u·R_{u,v} is:
        // A_t(u,v) = A_t(v,u) for every pair.
        let walk = trapped_path();
        let u = VertexAddress::core("a");
        let v = VertexAddress::tree("b", 2, vec![1]);
        let fwd = walk.amplitude(&u, &v, 2.5).unwrap();
        let bwd = walk.amplitude(&v, &u, 2.5).unwrap();
        assert!((fwd - bwd).norm() < 1e-9, "{fwd} vs {bwd}");
    }

    #[test]
    fn trapping_constants_come_from_the_point_spectrum() {
        // Pure trees have none; the trapped path pins 1/2 at each end; K_5
        // tree vertices keep the core residue damped by ξ⁻² per level with
        // the q/σ first-hop factor squared folded in once.
        assert_eq!(pure_tree(4).trapping_probability(&VertexAddress::core("o")).unwrap(), 0.0);
        let path = trapped_path();
        let at_end = path.trapping_probability(&VertexAddress::core("a")).unwrap();
        assert!((at_end - 0.5).abs() < 1e-12);
        let at_graft = path.trapping_probability(&VertexAddress::core("b")).unwrap();
        assert!(at_graft.abs() < 1e-12);
        let k5 = complete_five();
        // Diagonal residue 1/6, σ_anchor = 5 = q, ξ⁻² = 1/9 per level.
        let depth1 = k5
            .trapping_probability(&VertexAddress::tree("a", 1, vec![]))
            .unwrap();
        assert!((depth1 - 1.0 / 54.0).abs() < 1e-10, "{depth1}");
        let depth2 = k5
            .trapping_probability(&VertexAddress::tree("a", 1, vec![2]))
            .unwrap();
        assert!((depth2 - 1.0 / 486.0).abs() < 1e-10, "{depth2}");
    }

    #[test]
    fn long_time_mean_matches_sampled_average() {
        // |A_t(a,a)|² for the trapped path oscillates around the squared
        // point mass 1/4 with a t^{−3/2} band correction.
        let walk = trapped_path();
        let u = VertexAddress::core("a");
        let dynamics = walk.pair_dynamics(&u, &u).unwrap();
        assert!((dynamics.long_time_mean() - 0.25).abs() < 1e-12);
        let mut avg = 0.0;
        let samples = 40;
        for k in 0..samples {
            let t = 200.0 + f64::from(k) * 1.7;
            avg += dynamics.amplitude(t).unwrap().norm_sqr();
        }
        avg /= f64::from(samples);
        assert!((avg - 0.25).abs() < 5e-3, "sampled mean {avg}");
    }

    #[test]
    fn walk_reports_collect_the_series() {
        let walk = chain();
        let u = VertexAddress::core("l");
        let times = vec![0.0, 1.0, 2.0];
        let report = walk_report(&walk, &u, &u, &times).unwrap();
        assert_eq!(report.probabilities.len(), 3);
        assert!((report.probabilities[0] - 1.0).abs() < 1e-8);
        assert!(report.probabilities.iter().all(|p| (0.0..=1.0 + 1e-9).contains(p)));
        assert_eq!(report.trapping_constant, 0.0);
        assert!(report.node_counts.iter().all(|&n| n >= 1024));
        assert!(report.fit.is_none());
    }
}

//! Oscillatory quadrature for the band part of the spectral representation.
//!
//! Under λ = (a/q)·cosθ every band integrand here becomes a smooth function
//! of cosθ on [0, π]: the per-term expansion of the density turns the
//! band-edge square root into sin²θ, and products like sin(dθ)·sinθ are
//! polynomials in cosθ. The composite midpoint rule on [0, π] is then the
//! trapezoid rule of the smooth periodic even extension, so it converges
//! spectrally. Node counts start proportional to the total oscillation count
//! (t·a/q from e^{iλt} plus the largest hop power from e^{idθ}) and double
//! until two consecutive levels agree to 1e−9; disagreement at the node cap
//! is reported as an error, never papered over.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::ratio_to_f64;
use crate::generating::PairResolvent;

/// Node-doubling agreement target for every reported amplitude.
pub(crate) const TOLERANCE: f64 = 1e-9;
/// Hard cap on quadrature nodes before giving up.
pub(crate) const MAX_NODES: usize = 1 << 21;

/// Smallest node count for an integrand oscillating `cycles` times.
pub(crate) fn base_nodes(cycles: f64) -> usize {
    let scaled = (8.0 * cycles).ceil();
    if scaled.is_finite() && scaled > 512.0 {
        scaled as usize
    } else {
        512
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn lower(p: &crate::exact::Poly) -> Vec<f64> {
    p.coeffs().iter().map(ratio_to_f64).collect()
}

/// One resolvent term W_k·g^{d_k} with its polynomial data lowered to f64
/// coefficients (ascending) for fast repeated evaluation.
struct BandTerm {
    d: u32,
    b_num: Vec<f64>,
    b_den: Vec<f64>,
    bt_num: Vec<f64>,
    bt_den: Vec<f64>,
}

/// The band part of one pair's spectral measure, precompiled as the θ-side
/// integrand F(θ) = ρ_{u,v}((a/q)cosθ)·(a/q)·sinθ, so that
/// ∫ e^{iλt}ρ_{u,v}(λ)dλ = ∫₀^π e^{it(a/q)cosθ}·F(θ)dθ.
pub struct BandIntegrand {
    a: f64,
    edge: f64,
    damp: f64,
    terms: Vec<BandTerm>,
    hop_cycles: f64,
}

impl BandIntegrand {
    pub fn new(resolvent: &PairResolvent) -> Self {
        let q = f64::from(resolvent.q());
        let a = 2.0 * (q - 1.0).sqrt();
        let terms: Vec<BandTerm> = resolvent
            .terms()
            .iter()
            .map(|(w, d)| BandTerm {
                d: *d,
                b_num: lower(w.rational_part().numerator()),
                b_den: lower(w.rational_part().denominator()),
                bt_num: lower(w.surd_part().numerator()),
                bt_den: lower(w.surd_part().denominator()),
            })
            .collect();
        let hop_cycles = terms.iter().map(|t| t.d).max().unwrap_or(0) as f64;
        BandIntegrand {
            a,
            edge: a / q,
            damp: (q - 1.0).sqrt(),
            terms,
            hop_cycles,
        }
    }

    /// F(θ): the spectral density in band-angle coordinates, Jacobian
    /// included. Each term contributes
    /// −(1/π)·(q−1)^{−d/2}·[a·sinθ·B̃(λ)·cos(dθ) − B(λ)·sin(dθ)]·(a/q)·sinθ.
    fn density_factor(&self, theta: f64) -> f64 {
        let sin_theta = theta.sin();
        let lambda = self.edge * theta.cos();
        let mut im = 0.0;
        for term in &self.terms {
            let b = horner(&term.b_num, lambda) / horner(&term.b_den, lambda);
            let bt = horner(&term.bt_num, lambda) / horner(&term.bt_den, lambda);
            let dt = f64::from(term.d) * theta;
            im += self.damp.powi(-(term.d as i32))
                * (self.a * sin_theta * bt * dt.cos() - b * dt.sin());
        }
        -im / core::f64::consts::PI * self.edge * sin_theta
    }

    fn midpoint_sum(&self, nodes: usize, t: f64) -> Complex64 {
        let step = core::f64::consts::PI / nodes as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..nodes {
            let theta = (j as f64 + 0.5) * step;
            let lambda = self.edge * theta.cos();
            acc += Complex64::from_polar(self.density_factor(theta), t * lambda);
        }
        acc * step
    }

    /// ∫_{−a/q}^{a/q} e^{iλt}·ρ_{u,v}(λ)·dλ with the node count that passed
    /// the doubling check. A non-finite node value means a quadrature node
    /// landed exactly on an embedded point mass.
    pub fn integral(&self, t: f64) -> Result<(Complex64, usize)> {
        let mut nodes = base_nodes(self.edge * t.abs() + self.hop_cycles);
        let mut prev = self.midpoint_sum(nodes, t);
        loop {
            nodes *= 2;
            let cur = self.midpoint_sum(nodes, t);
            if !cur.re.is_finite() || !cur.im.is_finite() {
                return Err(Error::EmbeddedPointMass);
            }
            let delta = (cur - prev).norm();
            if delta < TOLERANCE {
                return Ok((cur, nodes));
            }
            if nodes >= MAX_NODES {
                return Err(Error::QuadratureNotConverged { delta });
            }
            prev = cur;
        }
    }
}

//! Bessel-function reference values for the walk on the two-sided chain.
//!
//! With q = 2 the graph is ℤ, the band fills the whole spectrum [−1, 1] and
//! the amplitude has the classical closed form A_t(0, ℓ) = i^ℓ·J_ℓ(t): the
//! Jacobi–Anger expansion e^{it·cosθ} = Σ_n i^n·J_n(t)·e^{inθ} read as a
//! Fourier coefficient. This module computes that coefficient with the same
//! doubling midpoint rule the band quadrature uses, so chain amplitudes and
//! their reference values share no code with each other beyond the node
//! schedule — agreement is a genuine cross-check. An ascending power series
//! independent of any quadrature anchors the reference itself.

#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use super::quadrature::{base_nodes, MAX_NODES, TOLERANCE};
use crate::error::{Error, Result};

/// i^ℓ·J_ℓ(t) as the Fourier coefficient
/// (1/2π)·∫₀^{2π} e^{i·t·cosθ − iℓθ} dθ, by the doubling midpoint rule.
pub fn bessel_reference(ell: u32, t: f64) -> Result<Complex64> {
    let cycles = t.abs() + f64::from(ell);
    let mut nodes = base_nodes(cycles);
    let mut prev = bessel_midpoint(ell, t, nodes);
    loop {
        nodes *= 2;
        let next = bessel_midpoint(ell, t, nodes);
        let delta = (next - prev).norm();
        if delta < TOLERANCE {
            return Ok(next);
        }
        if nodes >= MAX_NODES {
            return Err(Error::QuadratureNotConverged { delta });
        }
        prev = next;
    }
}

fn bessel_midpoint(ell: u32, t: f64, nodes: usize) -> Complex64 {
    let step = core::f64::consts::TAU / nodes as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let theta = (j as f64 + 0.5) * step;
        acc += Complex64::from_polar(1.0, t * theta.cos() - f64::from(ell) * theta);
    }
    acc * (step / core::f64::consts::TAU)
}

/// J_ℓ(t) by its ascending power series
/// Σ_k (−1)^k·(t/2)^{2k+ℓ}/(k!·(k+ℓ)!). Accurate for moderate t; used as
/// the quadrature-free oracle.
pub fn bessel_series(ell: u32, t: f64) -> f64 {
    let half = t / 2.0;
    // term_0 = (t/2)^ℓ / ℓ!
    let mut term = 1.0;
    for k in 1..=ell {
        term *= half / f64::from(k);
    }
    let mut sum = term;
    let mut k = 1.0;
    while term != 0.0 && k < 500.0 {
        term *= -(half * half) / (k * (k + f64::from(ell)));
        let next = sum + term;
        if next == sum {
            break;
        }
        sum = next;
        k += 1.0;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::chain;
    use super::*;
    use crate::graph::VertexAddress;
    use alloc::vec;

    #[test]
    fn the_walker_starts_put() {
        let a0 = bessel_reference(0, 0.0).unwrap();
        assert!((a0.re - 1.0).abs() < 1e-12 && a0.im.abs() < 1e-12);
        let a3 = bessel_reference(3, 0.0).unwrap();
        assert!(a3.norm() < 1e-12);
    }

    #[test]
    fn quadrature_agrees_with_the_power_series() {
        // Reference decimals: J_0(1) and J_1(1).
        assert!((bessel_series(0, 1.0) - 0.7651976865579666).abs() < 1e-15);
        assert!((bessel_series(1, 1.0) - 0.44005058574493355).abs() < 1e-15);
        for ell in 0..6u32 {
            for t in [0.3, 1.0, 2.9, 7.5] {
                let series = bessel_series(ell, t);
                let reference = bessel_reference(ell, t).unwrap();
                // i^ℓ rotates the value onto the axes.
                let expected = Complex64::i().powu(ell) * series;
                assert!(
                    (reference - expected).norm() < 1e-10,
                    "ell={ell} t={t}: {reference} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn chain_amplitudes_are_bessel_functions() {
        let walk = chain();
        let start = VertexAddress::core("l");
        let targets = [
            (VertexAddress::core("l"), 0u32),
            (VertexAddress::core("r"), 1),
            (VertexAddress::tree("l", 1, vec![]), 1),
            (VertexAddress::tree("r", 1, vec![0, 0]), 4),
        ];
        for t in [0.8, 3.7, 12.0] {
            for (target, ell) in &targets {
                let amplitude = walk.amplitude(&start, target, t).unwrap();
                let reference = bessel_reference(*ell, t).unwrap();
                assert!(
                    (amplitude.norm() - reference.norm()).abs() < 1e-8,
                    "ell={ell} t={t}: |{amplitude}| vs |{reference}|"
                );
            }
        }
    }
}

//! Closed-form eigenvalue predictions for two structured families:
//! complete-graph cores with uniform grafting, and (q−p)-regular cores
//! turned into q-regular asymptotic trees.
//!
//! Both serve as independent cross-checks of the pole pipeline: the
//! predictions are produced from small closed formulas, exactly where
//! possible, and compared against the certified resolvent poles in tests.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, Poly, QuadExt};
use crate::graph::{AsymptoticTree, DegreeConvention};
use crate::spectrum::eigen::core_characteristic_polynomial;
use crate::spectrum::SpectralPoint;

/// Which symmetry class of core eigenfunction a prediction extends.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompleteMode {
    /// Constant on the core (simple Perron class).
    Constant,
    /// Orthogonal to the constants ((n−1)-fold degenerate on K_n).
    Degenerate,
}

/// One predicted ℓ² eigenvalue of the uniformly grafted complete graph.
#[derive(Clone, Debug)]
pub struct PredictedEigenvalue {
    pub mode: CompleteMode,
    /// Tree decay ratio ξ⁻¹ of the eigenfunction, exact.
    pub xi_inverse: QuadExt,
    /// The eigenvalue λ = (ξ² + q − 1)/(qξ), exact.
    pub lambda: QuadExt,
    pub multiplicity: usize,
}

/// Predictions for the complete graph K_n with p trees per vertex.
#[derive(Clone, Debug)]
pub struct CompleteCoreReport {
    /// Square-summable modes, ascending in λ.
    pub predictions: Vec<PredictedEigenvalue>,
    /// q² − 4q(n−1)(p+n−1) + 4(p+n−1)²; negative means the degenerate
    /// modes have no real decay ratio at all.
    pub degenerate_discriminant: BigRational,
    /// 1 + √(q−1) < q(n−1)/(p+n−1): the constant mode is square-summable.
    pub constant_summable: bool,
    /// q > 4(n−1 + (p²−1)/(n−1))(n+p−1): the degenerate modes survive
    /// uniformly in n ≥ 2, p ≥ 1.
    pub uniform_condition: bool,
}

/// Exterior eigenvalues of the complete-core family, from the closed mode
/// equations. The constant mode has ξ⁻¹ = (p+n−1)/(q(n−1)−(p+n−1)); the
/// degenerate modes solve a quadratic with the discriminant above. Only
/// square-summable candidates ((q−1)ξ⁻² < 1, decided exactly) are returned.
pub fn complete_core_predictions(n: u32, p: u32, q: u32) -> CompleteCoreReport {
    assert!(n >= 2 && p >= 1 && q >= 3, "family requires n≥2, p≥1, q≥3");
    let (n, p, q) = (i64::from(n), i64::from(p), i64::from(q));
    let m = q * (n - 1) - (p + n - 1);
    let disc = rat_int(q * q - 4 * q * (n - 1) * (p + n - 1) + 4 * (p + n - 1) * (p + n - 1));
    let mut predictions = Vec::new();
    let mut constant_summable = false;
    if m != 0 {
        // Constant mode: rational ξ⁻¹.
        let xi_inv = QuadExt::rational(rat(p + n - 1, m), BigInt::from(2));
        if is_summable(q, &xi_inv) {
            constant_summable = true;
            predictions.push(predicted(CompleteMode::Constant, xi_inv, q, 1));
        }
        // Degenerate modes: ξ⁻¹ = (−q ± √disc)/(2m). The two roots multiply
        // to (p+n−1)/m, whose square exceeds the summability bound, so at
        // most one root ever passes the filter.
        if crate::exact::rat_sign(&disc) >= 0 {
            let d = disc.numer().clone(); // disc is an integer
            for sign in [1i64, -1] {
                let xi_inv = QuadExt::new(rat(-q, 2 * m), rat(sign, 2 * m), d.clone());
                if is_summable(q, &xi_inv) {
                    predictions.push(predicted(
                        CompleteMode::Degenerate,
                        xi_inv,
                        q,
                        (n - 1) as usize,
                    ));
                }
                if crate::exact::rat_sign(&disc) == 0 {
                    break; // double root: one candidate only
                }
            }
        }
    }
    predictions.sort_by(|a, b| {
        a.lambda
            .to_f64()
            .partial_cmp(&b.lambda.to_f64())
            .expect("finite eigenvalues")
    });
    // q > 4(n−1 + (p²−1)/(n−1))(n+p−1), exactly.
    let uniform_condition =
        rat_int(q) > rat_int(4) * (rat_int(n - 1) + rat(p * p - 1, n - 1)) * rat_int(n + p - 1);
    CompleteCoreReport {
        predictions,
        degenerate_discriminant: disc,
        constant_summable,
        uniform_condition,
    }
}

/// (q−1)·ξ⁻² < 1, exactly.
fn is_summable(q: i64, xi_inv: &QuadExt) -> bool {
    let d = xi_inv.radicand().clone();
    let ratio = xi_inv
        .mul(xi_inv)
        .mul(&QuadExt::rational(rat_int(q - 1), d.clone()));
    ratio.sub(&QuadExt::rational(rat_int(1), d)).sign() < 0
}

fn predicted(mode: CompleteMode, xi_inv: QuadExt, q: i64, multiplicity: usize) -> PredictedEigenvalue {
    let d = xi_inv.radicand().clone();
    let one = QuadExt::rational(rat_int(1), d.clone());
    let xi = one.div(&xi_inv);
    // λ = (ξ² + q − 1)/(qξ).
    let lambda = xi
        .mul(&xi)
        .add(&QuadExt::rational(rat_int(q - 1), d.clone()))
        .div(&xi.mul(&QuadExt::rational(rat_int(q), d)));
    PredictedEigenvalue {
        mode,
        xi_inverse: xi_inv,
        lambda,
        multiplicity,
    }
}

/// One core eigenvalue mapped through the q-regular graft relation.
#[derive(Clone, Debug)]
pub struct QRegularPair {
    /// Standalone core eigenvalue λ, exact.
    pub lambda_core: SpectralPoint,
    /// Its multiplicity in the core spectrum.
    pub multiplicity: usize,
    /// Predicted eigenvalue λ′ of the grafted graph.
    pub lambda_prime: f64,
    /// Exact λ′ where the closed form is rational (λ = ±1).
    pub lambda_prime_exact: Option<BigRational>,
}

/// Outcome of the q-regular analysis.
#[derive(Clone, Debug)]
pub struct QRegularReport {
    pub p: u32,
    /// p > q−1−√(q−1), decided exactly: the point spectrum is empty.
    pub empty_certificate: bool,
    /// Admissible core eigenvalues with their images, ascending in λ.
    pub pairs: Vec<QRegularPair>,
}

/// Predictions for a (q−p)-regular core with p trees at every vertex (the
/// grafted graph is then q-regular). Returns the emptiness certificate
/// p > q−1−√(q−1) when it applies; otherwise maps every admissible core
/// eigenvalue (|λ|·(q−p)·√(q−1) > 2q−2−p, decided exactly) through
/// λ′ = sgn(λ)·(a/q)·cosh(s), s = arccosh(|λ|(q−p)/(2√(q−p−1))) −
/// artanh(p/(2q−2−p)). λ = ±1 uses the closed rational form
/// λ′ = ±(1 − p(q−p−2)/(q(q−p−1))) instead.
pub fn qregular_predictions(tree: &AsymptoticTree) -> Result<QRegularReport> {
    let core = tree.core();
    let n = core.len();
    let q = tree.q();
    let p = tree.graft_count(0);
    if p == 0 {
        return Err(Error::NotRegularCore);
    }
    let degree = core.degree(0);
    for i in 0..n {
        if tree.graft_count(i) != p || core.degree(i) != degree {
            return Err(Error::NotRegularCore);
        }
    }
    if degree as u32 + p != q {
        return Err(Error::NotRegularCore);
    }
    // p > q−1−√(q−1) ⟺ q−1−p < 0 or (q−1−p)² < q−1, in integers.
    let gap = i64::from(q) - 1 - i64::from(p);
    if gap < 0 || gap * gap < i64::from(q) - 1 {
        return Ok(QRegularReport {
            p,
            empty_certificate: true,
            pairs: Vec::new(),
        });
    }
    // Non-emptiness forces q > p+2 (else q−2 ≤ p ≤ q−1−√(q−1) gives q ≤ 2),
    // so the denominators below cannot vanish.
    let (qi, pi) = (i64::from(q), i64::from(p));
    let char_poly = Poly::new(core_characteristic_polynomial(
        tree,
        DegreeConvention::Standalone,
    )?);
    // Admissibility: (q−p)²(q−1)·λ² > (2q−2−p)².
    let admissible = Poly::new(alloc::vec![
        rat_int(-(2 * qi - 2 - pi) * (2 * qi - 2 - pi)),
        rat_int(0),
        rat_int((qi - pi) * (qi - pi) * (qi - 1)),
    ]);
    let qf = f64::from(q);
    let pf = f64::from(p);
    let mut pairs = Vec::new();
    for mut root in crate::exact::isolate_all_real_roots(&char_poly) {
        if root.sign_at_root(&admissible) <= 0 {
            continue;
        }
        let multiplicity = root.multiplicity();
        let rational = root.exact_rational();
        let (lambda_prime, lambda_prime_exact) = match rational.as_ref() {
            Some(r) if r == &rat_int(1) || r == &rat_int(-1) => {
                let value = rat_int(1) - rat(pi * (qi - pi - 2), qi * (qi - pi - 1));
                let signed = if r == &rat_int(1) { value } else { -value };
                (crate::exact::ratio_to_f64(&signed), Some(signed))
            }
            _ => {
                root.refine_bits(96);
                let x = root.to_f64().abs();
                let s = (x * (qf - pf) / (2.0 * (qf - pf - 1.0).sqrt())).acosh()
                    - (pf / (2.0 * qf - 2.0 - pf)).atanh();
                let lp = tree.band_edge() * s.max(0.0).cosh();
                (root.to_f64().signum() * lp, None)
            }
        };
        let lambda_core = match rational {
            Some(r) => SpectralPoint::Rational(r),
            None => SpectralPoint::Algebraic(root),
        };
        pairs.push(QRegularPair {
            lambda_core,
            multiplicity,
            lambda_prime,
            lambda_prime_exact,
        });
    }
    pairs.sort_by(|a, b| {
        a.lambda_core
            .to_f64()
            .partial_cmp(&b.lambda_core.to_f64())
            .expect("finite eigenvalues")
    });
    Ok(QRegularReport {
        p,
        empty_certificate: false,
        pairs,
    })
}

/// Inverts the q-regular graft relation: the core eigenvalue that maps to
/// an exterior λ′, λ = [λ′q(2q−2−p) + sgn(λ′)·p·√(q²λ′² − a²)] /
/// (2(q−1)(q−p)). Errors when λ′ is not exterior.
pub fn lambda_from_lambda_prime(lambda_prime: f64, p: u32, q: u32) -> Result<f64> {
    let qf = f64::from(q);
    let pf = f64::from(p);
    let w = qf * qf * lambda_prime * lambda_prime - 4.0 * (qf - 1.0);
    if !(w > 0.0) {
        return Err(Error::NotExterior);
    }
    Ok(
        (lambda_prime * qf * (2.0 * qf - 2.0 - pf) + lambda_prime.signum() * pf * w.sqrt())
            / (2.0 * (qf - 1.0) * (qf - pf)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CoreGraph;
    use alloc::format;
    use alloc::string::String;
    use alloc::vec::Vec;

    #[test]
    fn complete_core_keeps_only_the_constant_mode_at_q10() {
        let report = complete_core_predictions(4, 1, 10);
        assert_eq!(report.degenerate_discriminant, rat_int(-316));
        assert!(report.constant_summable);
        assert!(!report.uniform_condition);
        assert_eq!(report.predictions.len(), 1);
        let p = &report.predictions[0];
        assert_eq!(p.mode, CompleteMode::Constant);
        assert_eq!(p.multiplicity, 1);
        assert_eq!(p.xi_inverse.as_rational(), Some(&rat(2, 13)));
        assert_eq!(p.lambda.as_rational(), Some(&rat(41, 52)));
    }

    #[test]
    fn complete_core_recovers_the_degenerate_mode_at_q49() {
        let report = complete_core_predictions(4, 1, 49);
        assert_eq!(report.degenerate_discriminant, rat_int(113));
        assert!(report.constant_summable);
        assert!(report.uniform_condition);
        assert_eq!(report.predictions.len(), 2);
        // Ascending λ: the degenerate mode is negative.
        let deg = &report.predictions[0];
        assert_eq!(deg.mode, CompleteMode::Degenerate);
        assert_eq!(deg.multiplicity, 3);
        // λ = (−335 + √113)/1144 ≈ −0.2835401, barely outside the band
        // a/q ≈ 0.2827720.
        let expected = (-335.0 + 113.0_f64.sqrt()) / 1144.0;
        assert!((deg.lambda.to_f64() - expected).abs() < 1e-12);
        let edge = 2.0 * 48.0_f64.sqrt() / 49.0;
        let excess = deg.lambda.to_f64().abs() - edge;
        assert!(excess > 0.0 && excess < 1e-3, "excess {excess}");
        let constant = &report.predictions[1];
        assert_eq!(constant.mode, CompleteMode::Constant);
        assert_eq!(constant.xi_inverse.as_rational(), Some(&rat(4, 143)));
    }

    fn cycle_tree(len: usize, p: u32, q: u32) -> AsymptoticTree {
        let labels: Vec<String> = (0..len).map(|i| format!("c{i}")).collect();
        let edges: Vec<(String, String)> = (0..len)
            .map(|i| (labels[i].clone(), labels[(i + 1) % len].clone()))
            .collect();
        let core = CoreGraph::new(labels.clone(), &edges).unwrap();
        let grafts: Vec<(String, u32)> = labels.iter().map(|l| (l.clone(), p)).collect();
        AsymptoticTree::new(core, &grafts, q).unwrap()
    }

    fn complete_tree(n: usize, p: u32, q: u32) -> AsymptoticTree {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
        let core = CoreGraph::new(labels.clone(), &edges).unwrap();
        let grafts: Vec<(String, u32)> = labels.iter().map(|l| (l.clone(), p)).collect();
        AsymptoticTree::new(core, &grafts, q).unwrap()
    }

    #[test]
    fn k5_maps_the_perron_eigenvalue_to_13_15() {
        let tree = complete_tree(5, 1, 5);
        let report = qregular_predictions(&tree).unwrap();
        assert!(!report.empty_certificate);
        // λ = −1/4 fails the admissibility bound 7/8; only λ = 1 survives.
        assert_eq!(report.pairs.len(), 1);
        let pair = &report.pairs[0];
        assert_eq!(pair.lambda_core.as_rational(), Some(&rat_int(1)));
        assert_eq!(pair.lambda_prime_exact.as_ref(), Some(&rat(13, 15)));
        assert!((pair.lambda_prime - 13.0 / 15.0).abs() < 1e-15);
        // Back-substitution returns the core eigenvalue exactly.
        let back = lambda_from_lambda_prime(13.0 / 15.0, 1, 5).unwrap();
        assert!((back - 1.0).abs() < 1e-12);
    }

    #[test]
    fn heavy_grafting_on_a_cycle_is_certified_empty() {
        for len in [4usize, 6, 8] {
            let tree = cycle_tree(len, 2, 4);
            let report = qregular_predictions(&tree).unwrap();
            assert!(report.empty_certificate, "cycle length {len}");
            assert!(report.pairs.is_empty());
        }
    }

    #[test]
    fn irregular_instances_are_rejected() {
        // Right regularity but mismatched total degree.
        let tree = cycle_tree(4, 1, 4);
        assert!(matches!(
            qregular_predictions(&tree),
            Err(Error::NotRegularCore)
        ));
    }
}

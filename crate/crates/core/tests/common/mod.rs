//! Property checks shared by the proptest suite and the acceptance run.
#![allow(dead_code)]

use meshfree_taylor::basis::graded_multi_indices;
use meshfree_taylor::eigen::det_residual_of;
use meshfree_taylor::{
    assemble, assemble_hamiltonian, condition_estimate, derivative_entry_cramer, differentiation_matrix,
    solve_derivatives, solve_spectrum, EigenProblem, NodeSet, Point, Sample,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Systems above this condition number are outside what the properties promise.
pub const WELL_POSED: f64 = 1e8;

#[derive(Debug, Clone)]
pub struct Cloud {
    pub query: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub coefficients: Vec<f64>,
}

impl Cloud {
    pub fn dimension(&self) -> usize {
        self.query.len()
    }

    /// `p(x) = Σ c_α (x - q)^α / α!`, so `∂^α p(q) = c_α`.
    pub fn polynomial(&self, x: &[f64]) -> f64 {
        let ordering = graded_multi_indices(self.dimension(), self.coefficients.len());
        ordering
            .indices()
            .iter()
            .zip(&self.coefficients)
            .map(|(alpha, c)| {
                let mono: f64 = alpha
                    .exponents()
                    .iter()
                    .zip(x.iter().zip(&self.query))
                    .map(|(&e, (xi, qi))| (xi - qi).powi(e as i32))
                    .product();
                c * mono / alpha.factorial_weight()
            })
            .sum()
    }

    pub fn samples(&self) -> Vec<Sample> {
        self.points
            .iter()
            .map(|p| Sample::value(p.clone(), self.polynomial(p)))
            .collect()
    }
}

fn separated(points: &[Vec<f64>], min: f64) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[..i]
            .iter()
            .all(|b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt() >= min)
    })
}

/// Random polynomial data around a random query in 1 or 2 dimensions.
pub fn cloud() -> impl Strategy<Value = Cloud> {
    (1usize..=2)
        .prop_flat_map(|d| {
            let n = if d == 1 { 2usize..=7 } else { 3usize..=10 };
            (Just(d), n)
        })
        .prop_flat_map(|(d, n)| {
            (
                prop::collection::vec(-1.0f64..1.0, d),
                prop::collection::vec(prop::collection::vec(-1.0f64..1.0, d), n),
                prop::collection::vec(-5.0f64..5.0, n),
            )
        })
        .prop_map(|(query, offsets, coefficients)| {
            let points = offsets
                .iter()
                .map(|o| o.iter().zip(&query).map(|(a, b)| a + b).collect())
                .collect();
            Cloud {
                query,
                points,
                coefficients,
            }
        })
        .prop_filter("well separated", |c| separated(&c.points, 0.05))
}

fn solved(
    cloud: &Cloud,
) -> Result<Option<(meshfree_taylor::TaylorSystem, meshfree_taylor::DerivativeVector)>, TestCaseError> {
    let system =
        assemble(&Point::new(cloud.query.clone()), &cloud.samples()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    if condition_estimate(&system) > WELL_POSED {
        return Ok(None);
    }
    let d = solve_derivatives(&system).map_err(|e| TestCaseError::fail(e.to_string()))?;
    Ok(Some((system, d)))
}

/// Data drawn from the span of the ordering are differentiated exactly.
pub fn polynomial_reproduction(cloud: &Cloud) -> Result<(), TestCaseError> {
    let Some((_, d)) = solved(cloud)? else { return Ok(()) };
    for (got, want) in d.values.iter().zip(&cloud.coefficients) {
        prop_assert!((got - want).abs() <= 1e-7 * (1.0 + want.abs()), "{got} vs {want}");
    }
    Ok(())
}

/// Scaling every offset by `s` scales entry `α` by `s^-|α|`; translating the
/// whole configuration leaves the derivatives unchanged.
pub fn scale_and_translation(cloud: &Cloud, s: f64, shift: f64) -> Result<(), TestCaseError> {
    let Some((system, base)) = solved(cloud)? else {
        return Ok(());
    };
    let values: Vec<f64> = cloud.samples().iter().map(|x| x.constraint.value()).collect();
    let moved = |f: &dyn Fn(f64, f64) -> f64| -> Vec<Sample> {
        cloud
            .points
            .iter()
            .zip(&values)
            .map(|(p, &v)| {
                Sample::value(
                    p.iter().zip(&cloud.query).map(|(x, q)| f(*x, *q)).collect::<Vec<_>>(),
                    v,
                )
            })
            .collect()
    };
    let scale = |x: f64, q: f64| q + s * (x - q);
    let scaled = solve_derivatives(&assemble(&Point::new(cloud.query.clone()), &moved(&scale)).unwrap()).unwrap();
    let norm = base.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (alpha, (b, g)) in system
        .ordering()
        .indices()
        .iter()
        .zip(base.values.iter().zip(&scaled.values))
    {
        let expected = b * s.powi(-(alpha.degree() as i32));
        let tol = 1e-8 * (norm + 1.0) * s.powi(-(alpha.degree() as i32)).max(1.0);
        prop_assert!((g - expected).abs() <= tol, "scale {s}: {g} vs {expected}");
    }
    let query: Vec<f64> = cloud.query.iter().map(|q| q + shift).collect();
    let translate = |x: f64, _q: f64| x + shift;
    let shifted = solve_derivatives(&assemble(&Point::new(query), &moved(&translate)).unwrap()).unwrap();
    for (b, g) in base.values.iter().zip(&shifted.values) {
        prop_assert!((g - b).abs() <= 1e-8 * (norm + 1.0), "shift {shift}: {g} vs {b}");
    }
    Ok(())
}

/// Every Cramer entry agrees with the full solve to 1e-8 relative to the vector.
pub fn cramer_agreement(cloud: &Cloud) -> Result<(), TestCaseError> {
    let Some((system, d)) = solved(cloud)? else {
        return Ok(());
    };
    let norm = d.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for (alpha, &full) in system.ordering().indices().iter().zip(&d.values) {
        let c = derivative_entry_cramer(&system, alpha).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(
            (c - full).abs() <= 1e-8 * full.abs().max(norm),
            "{alpha}: {c} vs {full}"
        );
    }
    Ok(())
}

/// Sorted, separated nodes on a random interval.
pub fn node_set() -> impl Strategy<Value = Vec<f64>> {
    (
        3usize..=10,
        -3.0f64..3.0,
        0.5f64..4.0,
        prop::collection::vec(-0.3f64..0.3, 10),
    )
        .prop_map(|(n, lo, width, jitter)| {
            let step = width / (n - 1) as f64;
            (0..n)
                .map(|i| lo + step * (i as f64 + if i == 0 || i == n - 1 { 0.0 } else { jitter[i] }))
                .collect()
        })
}

/// Rows of `W_k` annihilate constants, `W_k` is exact on polynomials below
/// the node count, and `W_1 W_1 = W_2`.
pub fn differentiation_identities(nodes: &[f64]) -> Result<(), TestCaseError> {
    let set = NodeSet::new(nodes.to_vec()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let n = nodes.len();
    let width = nodes[n - 1] - nodes[0];
    let center = 0.5 * (nodes[0] + nodes[n - 1]);
    let w1 = differentiation_matrix(&set, 1).unwrap();
    let w2 = differentiation_matrix(&set, 2).unwrap();
    for k in 1..n.min(4) {
        let w = differentiation_matrix(&set, k).unwrap();
        let scale = width.powi(-(k as i32));
        for row in w.weights.row_iter() {
            let abs: f64 = row.iter().map(|v| v.abs()).sum();
            prop_assert!(row.sum().abs() <= 1e-11 * abs.max(scale), "row sum {}", row.sum());
        }
        for m in 0..n {
            let values: Vec<f64> = nodes.iter().map(|x| ((x - center) / width).powi(m as i32)).collect();
            let got = w.apply(&values);
            for (x, g) in nodes.iter().zip(got) {
                let exact = if m < k {
                    0.0
                } else {
                    let falling: f64 = ((m - k + 1)..=m).map(|j| j as f64).product();
                    falling * ((x - center) / width).powi((m - k) as i32) * width.powi(-(k as i32))
                };
                prop_assert!(
                    (g - exact).abs() <= 1e-7 * (1.0 + exact.abs()) * scale.max(1.0),
                    "k={k} m={m}: {g} vs {exact}"
                );
            }
        }
    }
    let composed = &w1.weights * &w1.weights;
    let tol = 1e-7 * composed.amax().max(w2.weights.amax());
    prop_assert!((composed - &w2.weights).amax() <= tol, "W1 W1 differs from W2");
    Ok(())
}

pub fn harmonic_problem(n: usize, strength: f64) -> EigenProblem {
    EigenProblem::new(0.0, 1.0, n, 1.0, move |x| strength * (x - 0.5).powi(2))
}

/// Shifting the potential by `c` shifts every eigenvalue by `c`.
pub fn shift_covariance(n: usize, strength: f64, c: f64) -> Result<(), TestCaseError> {
    let base = harmonic_problem(n, strength);
    let a = solve_spectrum(&base, 3).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = solve_spectrum(&base.shifted(c), 3).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
        prop_assert!(
            (y - x - c).abs() <= 1e-8 * (1.0 + x.abs() + c.abs()),
            "{x} + {c} vs {y}"
        );
    }
    Ok(())
}

/// The normalized determinant vanishes at reported eigenvalues and not between them.
pub fn det_residual_contrast(n: usize, strength: f64) -> Result<(), TestCaseError> {
    let problem = harmonic_problem(n, strength);
    let h = assemble_hamiltonian(&problem).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let s = solve_spectrum(&problem, 4).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for &l in &s.eigenvalues {
        let r = det_residual_of(&h, l);
        prop_assert!(r <= 1e-6, "det_residual {r} at {l}");
    }
    for pair in s.eigenvalues.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let r = det_residual_of(&h, mid);
        prop_assert!(r > 1e-2, "det_residual {r} at midpoint {mid}");
    }
    Ok(())
}

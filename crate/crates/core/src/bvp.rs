//! Differentiation matrices on arbitrary 1D nodes and collocation solves of
//! linear two-point boundary-value problems.
//!
//! Row `i` of the order-`k` matrix holds the weights expressing `f^(k)(x_i)`
//! through the nodal values: the `k`-th row of the inverse Taylor matrix
//! centered at `x_i`, divided by `h^k`.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::RefinedSolver;
use crate::stencil::{assemble, Point, Sample};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Strictly increasing collocation nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet(Vec<f64>);

impl NodeSet {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidInput("at least two nodes are required".into()));
        }
        if nodes.iter().any(|x| !x.is_finite()) || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "nodes must be finite and strictly increasing".into(),
            ));
        }
        Ok(Self(nodes))
    }

    /// `count` equally spaced nodes including both endpoints.
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidInput("at least two nodes are required".into()));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let mut nodes: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
        nodes[count - 1] = hi;
        Self::new(nodes)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }
}

#[derive(Debug, Clone)]
pub struct DifferentiationMatrix {
    pub order: usize,
    pub nodes: NodeSet,
    pub weights: DMatrix<f64>,
}

impl DifferentiationMatrix {
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        crate::linalg::mat_vec(&self.weights, values)
    }
}

pub fn differentiation_matrix(nodes: &NodeSet, k: usize) -> Result<DifferentiationMatrix> {
    let n = nodes.len();
    if k > n - 1 {
        return Err(Error::OrderTooLarge { order: k, max: n - 1 });
    }
    if k == 0 {
        return Ok(DifferentiationMatrix {
            order: 0,
            nodes: nodes.clone(),
            weights: DMatrix::identity(n, n),
        });
    }
    // Sample values do not enter the weights; zeros keep the system cheap to build.
    let samples: Vec<Sample> = nodes.as_slice().iter().map(|&x| Sample::value(x, 0.0)).collect();
    let mut unit = vec![0.0; n];
    unit[k] = 1.0;
    let mut weights = DMatrix::zeros(n, n);
    for (i, &x) in nodes.as_slice().iter().enumerate() {
        let system = assemble(&Point::from(x), &samples)?;
        let solver = system.factorize()?;
        // Row k of M⁻¹ solves Mᵀ y = e_k.
        let row = solver.solve_transpose(&unit);
        let unscale = system.scale().powi(-(k as i32));
        for (j, w) in row.into_iter().enumerate() {
            weights[(i, j)] = w * unscale;
        }
    }
    Ok(DifferentiationMatrix {
        order: k,
        nodes: nodes.clone(),
        weights,
    })
}

/// `Σ_k c_k(x) f^(k)(x) = s(x)` on the node span with Dirichlet data at both ends.
#[derive(Clone)]
pub struct LinearBvp {
    pub nodes: NodeSet,
    /// `(k, c_k)` pairs; orders may appear in any sequence.
    pub coefficients: Vec<(usize, ScalarFn)>,
    pub source: ScalarFn,
    pub left: f64,
    pub right: f64,
}

impl LinearBvp {
    pub fn new(nodes: NodeSet, left: f64, right: f64, source: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            nodes,
            coefficients: Vec::new(),
            source: Arc::new(source),
            left,
            right,
        }
    }

    pub fn with_term(mut self, order: usize, coefficient: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.coefficients.push((order, Arc::new(coefficient)));
        self
    }

    pub fn highest_order(&self) -> usize {
        self.coefficients.iter().map(|(k, _)| *k).max().unwrap_or(0)
    }
}

impl std::fmt::Debug for LinearBvp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearBvp")
            .field("nodes", &self.nodes)
            .field("orders", &self.coefficients.iter().map(|(k, _)| *k).collect::<Vec<_>>())
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// Interior rows collocate the operator, the two end rows are Dirichlet identities.
pub fn bvp_system(problem: &LinearBvp) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let nodes = problem.nodes.as_slice();
    let n = nodes.len();
    if problem.highest_order() < 1 {
        return Err(Error::InvalidInput(
            "operator needs a derivative term of order >= 1".into(),
        ));
    }
    if n < 3 {
        return Err(Error::InvalidInput("a Dirichlet problem needs an interior node".into()));
    }
    let mut a = DMatrix::zeros(n, n);
    let mut b = vec![0.0; n];
    for (k, coeff) in &problem.coefficients {
        let w = differentiation_matrix(&problem.nodes, *k)?;
        for i in 1..n - 1 {
            let c = coeff(nodes[i]);
            if !c.is_finite() {
                return Err(Error::NonFiniteCoefficient { x: nodes[i] });
            }
            for j in 0..n {
                a[(i, j)] += c * w.weights[(i, j)];
            }
        }
    }
    for i in 1..n - 1 {
        let s = (problem.source)(nodes[i]);
        if !s.is_finite() {
            return Err(Error::NonFiniteCoefficient { x: nodes[i] });
        }
        b[i] = s;
    }
    a[(0, 0)] = 1.0;
    b[0] = problem.left;
    a[(n - 1, n - 1)] = 1.0;
    b[n - 1] = problem.right;
    Ok((a, b))
}

/// Nodal solution values; the end entries equal the boundary data exactly.
pub fn solve_linear_bvp(problem: &LinearBvp) -> Result<Vec<f64>> {
    let (a, b) = bvp_system(problem)?;
    let solver = RefinedSolver::new(a).ok_or_else(|| Error::SingularSystem {
        query: problem.nodes.as_slice().to_vec(),
    })?;
    let mut u = solver.solve(&b);
    let n = u.len();
    u[0] = problem.left;
    u[n - 1] = problem.right;
    Ok(u)
}

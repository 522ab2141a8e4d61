//! Square Taylor systems `F = M D` assembled at a query point from scattered
//! samples, and their solution for the derivative vector `D`.
//!
//! Offsets are divided by `h = max ‖x_i - a‖` before the monomial rows are
//! formed, so every matrix entry is bounded by one. The entry of `D` for
//! multi-index `α` is recovered by multiplying with `h^-|α|`.

use nalgebra::DMatrix;

use crate::basis::{graded_multi_indices, monomial_row, BasisOrdering, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{condition_inf, LuFactors, RefinedSolver};

/// Condition estimates above this flag a derivative vector as unreliable.
pub const ILL_CONDITIONED: f64 = 1e12;

/// A location in `D`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(!coords.is_empty(), "point needs at least one coordinate");
        Self(coords)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point::new(v)
    }
}

impl From<f64> for Point {
    fn from(v: f64) -> Self {
        Point::new(vec![v])
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point::new(v.to_vec())
    }
}

/// What a sample tells us about the unknown function.
#[derive(Debug, Clone, PartialEq)]
pub enum Constraint {
    Value(f64),
    Derivative { order: MultiIndex, value: f64 },
}

impl Constraint {
    pub fn value(&self) -> f64 {
        match self {
            Constraint::Value(v) | Constraint::Derivative { value: v, .. } => *v,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: Point,
    pub constraint: Constraint,
}

impl Sample {
    pub fn value(point: impl Into<Point>, value: f64) -> Self {
        Self {
            point: point.into(),
            constraint: Constraint::Value(value),
        }
    }

    pub fn derivative(point: impl Into<Point>, order: MultiIndex, value: f64) -> Self {
        Self {
            point: point.into(),
            constraint: Constraint::Derivative { order, value },
        }
    }

    /// Order of the constraint; zero for a plain value.
    pub fn order(&self) -> MultiIndex {
        match &self.constraint {
            Constraint::Value(_) => MultiIndex::zero(self.point.dimension()),
            Constraint::Derivative { order, .. } => order.clone(),
        }
    }
}

/// The assembled square system at one query point.
#[derive(Debug, Clone)]
pub struct TaylorSystem {
    query: Point,
    samples: Vec<Sample>,
    ordering: BasisOrdering,
    scale: f64,
    matrix: DMatrix<f64>,
    rhs: Vec<f64>,
}

impl TaylorSystem {
    pub fn query(&self) -> &Point {
        &self.query
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn ordering(&self) -> &BasisOrdering {
        &self.ordering
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Matrix in scaled offsets `(x - a) / h`.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// `h^-|α|` converts a scaled entry of `D` to physical units.
    fn unscale(&self, alpha: &MultiIndex) -> f64 {
        self.scale.powi(-(alpha.degree() as i32))
    }

    fn singular(&self) -> Error {
        Error::SingularSystem {
            query: self.query.coords().to_vec(),
        }
    }

    pub(crate) fn factorize(&self) -> Result<RefinedSolver> {
        RefinedSolver::new(self.matrix.clone()).ok_or_else(|| self.singular())
    }
}

/// Estimated derivatives at the query, in physical units.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeVector {
    pub query: Point,
    pub ordering: BasisOrdering,
    pub values: Vec<f64>,
    /// ∞-norm condition estimate of the scaled matrix the vector came from.
    pub condition: f64,
}

impl DerivativeVector {
    pub fn get(&self, alpha: &MultiIndex) -> Option<f64> {
        self.ordering.position(alpha).map(|i| self.values[i])
    }

    pub fn is_ill_conditioned(&self) -> bool {
        !(self.condition <= ILL_CONDITIONED)
    }

    /// Keeps only the entries of total degree ≤ `max_degree`.
    pub fn truncated(&self, max_degree: u32) -> DerivativeVector {
        let ordering = self.ordering.truncated_to_degree(max_degree);
        let values = self.values[..ordering.len()].to_vec();
        DerivativeVector {
            query: self.query.clone(),
            ordering,
            values,
            condition: self.condition,
        }
    }
}

/// Builds the square system relating the samples to the derivatives at `query`.
pub fn assemble(query: &Point, samples: &[Sample]) -> Result<TaylorSystem> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let d = query.dimension();
    for s in samples {
        let found = s.point.dimension();
        if found != d {
            return Err(Error::DimensionMismatch { expected: d, found });
        }
        if let Constraint::Derivative { order, .. } = &s.constraint {
            if order.dimension() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: order.dimension(),
                });
            }
        }
        if !s.point.coords().iter().all(|c| c.is_finite()) || !s.constraint.value().is_finite() {
            return Err(Error::InvalidInput(format!(
                "non-finite sample at {:?}",
                s.point.coords()
            )));
        }
    }
    for (i, a) in samples.iter().enumerate() {
        for b in &samples[i + 1..] {
            if a.point == b.point && a.order() == b.order() {
                return Err(Error::DuplicateSample {
                    coords: a.point.coords().to_vec(),
                    order: a.order().to_string(),
                });
            }
        }
    }

    let n = samples.len();
    let ordering = graded_multi_indices(d, n);
    let h = samples.iter().map(|s| s.point.distance(query)).fold(0.0, f64::max);
    let scale = if h > 0.0 { h } else { 1.0 };

    let mut matrix = DMatrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    for (i, s) in samples.iter().enumerate() {
        let offsets: Vec<f64> = s
            .point
            .coords()
            .iter()
            .zip(query.coords())
            .map(|(x, a)| (x - a) / scale)
            .collect();
        let order = s.order();
        for (j, v) in monomial_row(&offsets, &ordering, &order).into_iter().enumerate() {
            matrix[(i, j)] = v;
        }
        rhs.push(s.constraint.value() * scale.powi(order.degree() as i32));
    }
    Ok(TaylorSystem {
        query: query.clone(),
        samples: samples.to_vec(),
        ordering,
        scale,
        matrix,
        rhs,
    })
}

/// Solves the system for the full derivative vector.
pub fn solve_derivatives(system: &TaylorSystem) -> Result<DerivativeVector> {
    let solver = system.factorize()?;
    let scaled = solver.solve(&system.rhs);
    let values = scaled
        .iter()
        .zip(system.ordering.indices())
        .map(|(v, alpha)| v * system.unscale(alpha))
        .collect();
    Ok(DerivativeVector {
        query: system.query.clone(),
        ordering: system.ordering.clone(),
        values,
        condition: condition_estimate(system),
    })
}

/// Single entry of `D` by Cramer's rule, `det(M_i) / det(M)`.
pub fn derivative_entry_cramer(system: &TaylorSystem, entry: &MultiIndex) -> Result<f64> {
    let col = system
        .ordering
        .position(entry)
        .ok_or_else(|| Error::EntryNotInOrdering(entry.to_string()))?;
    let det = system.factorize()?.determinant();
    let mut replaced = system.matrix.clone();
    for (i, v) in system.rhs.iter().enumerate() {
        replaced[(i, col)] = *v;
    }
    let det_i = LuFactors::new(replaced).determinant();
    Ok(det_i.ratio(&det) * system.unscale(entry))
}

/// Value of the `request` derivative of the local Taylor polynomial at `target`.
pub fn interpolate(derivatives: &DerivativeVector, target: &Point, request: &MultiIndex) -> Result<f64> {
    let d = derivatives.ordering.dimension();
    for found in [target.dimension(), request.dimension()] {
        if found != d {
            return Err(Error::DimensionMismatch { expected: d, found });
        }
    }
    let offsets: Vec<f64> = target
        .coords()
        .iter()
        .zip(derivatives.query.coords())
        .map(|(x, a)| x - a)
        .collect();
    let row = monomial_row(&offsets, &derivatives.ordering, request);
    Ok(row.iter().zip(&derivatives.values).map(|(r, v)| r * v).sum())
}

/// ∞-norm condition number of the scaled matrix.
pub fn condition_estimate(system: &TaylorSystem) -> f64 {
    condition_inf(&system.matrix)
}

//! Multi-indices, the graded basis ordering, and Taylor-monomial rows.
//!
//! Column `j` of a Taylor system corresponds to the multi-index `α_j`; the
//! entry for a sample `x` about the query `a` is `∏ (x_i - a_i)^α_i / α_i!`.
//! A derivative constraint of order `β` differentiates that row, shifting
//! every exponent down by `β` and zeroing terms with `α < β`.

use std::fmt;

use crate::error::{Error, Result};

/// Exponent tuple identifying one partial derivative / monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Panics if `exponents` is empty.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "multi-index needs at least one coordinate");
        Self(exponents)
    }

    pub fn zero(dimension: usize) -> Self {
        Self::new(vec![0; dimension])
    }

    /// Order `order` along `axis`, zero elsewhere.
    pub fn axis(dimension: usize, axis: usize, order: u32) -> Self {
        let mut e = vec![0; dimension];
        e[axis] = order;
        Self::new(e)
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn factorial_weight(&self) -> f64 {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// Componentwise `self - other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dimension() != other.dimension() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl fmt::Display for MultiIndex {
    /// Colon-separated exponents, e.g. `1:0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(':')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad order spec '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex::new(parts))
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Canonical graded sequence of multi-indices (the columns of M).
#[derive(Debug, Clone, PartialEq)]
pub struct BasisOrdering {
    dimension: usize,
    indices: Vec<MultiIndex>,
}

impl BasisOrdering {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, index: &MultiIndex) -> Option<usize> {
        self.indices.iter().position(|m| m == index)
    }

    /// Keeps only the leading entries of total degree ≤ `max_degree`.
    pub fn truncated_to_degree(&self, max_degree: u32) -> BasisOrdering {
        BasisOrdering {
            dimension: self.dimension,
            indices: self
                .indices
                .iter()
                .take_while(|m| m.degree() <= max_degree)
                .cloned()
                .collect(),
        }
    }
}

/// Appends every multi-index of total degree `degree` over `dimension`
/// coordinates, earlier coordinates taking the larger exponents first.
fn push_degree_block(dimension: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>, limit: usize) {
    if out.len() >= limit {
        return;
    }
    if prefix.len() + 1 == dimension {
        prefix.push(degree);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=degree).rev() {
        prefix.push(e);
        push_degree_block(dimension, degree - e, prefix, out, limit);
        prefix.pop();
        if out.len() >= limit {
            return;
        }
    }
}

/// The first `count` multi-indices in graded order.
///
/// For two dimensions the sequence is `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2), …`.
/// A count that does not close a degree block simply stops mid-block.
pub fn graded_multi_indices(dimension: usize, count: usize) -> BasisOrdering {
    assert!(dimension >= 1 && count >= 1, "dimension and count must be positive");
    let mut indices = Vec::with_capacity(count);
    let mut degree = 0;
    while indices.len() < count {
        push_degree_block(
            dimension,
            degree,
            &mut Vec::with_capacity(dimension),
            &mut indices,
            count,
        );
        degree += 1;
    }
    BasisOrdering { dimension, indices }
}

/// Taylor-monomial row of `sample` about `query`, differentiated by `constraint`.
pub fn basis_row(query: &[f64], sample: &[f64], ordering: &BasisOrdering, constraint: &MultiIndex) -> Result<Vec<f64>> {
    let d = ordering.dimension();
    for len in [query.len(), sample.len(), constraint.dimension()] {
        if len != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: len,
            });
        }
    }
    let offsets: Vec<f64> = sample.iter().zip(query).map(|(x, a)| x - a).collect();
    Ok(monomial_row(&offsets, ordering, constraint))
}

/// Row entries from precomputed offsets `x - a` (possibly already scaled).
pub(crate) fn monomial_row(offsets: &[f64], ordering: &BasisOrdering, constraint: &MultiIndex) -> Vec<f64> {
    ordering
        .indices()
        .iter()
        .map(|alpha| match alpha.checked_sub(constraint) {
            Some(shift) => shift
                .exponents()
                .iter()
                .zip(offsets)
                .map(|(&e, &o)| o.powi(e as i32) / factorial(e))
                .product(),
            None => 0.0,
        })
        .collect()
}

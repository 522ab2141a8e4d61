//! Workflows over the stencil solver: derivative tables at the sample sites,
//! field queries at new points, 1D extremum search, and mixed value and
//! derivative data.

use crate::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::stencil::{assemble, interpolate, solve_derivatives, Constraint, DerivativeVector, Point, Sample};

/// Subintervals scanned for sign changes of the interpolated slope.
pub const EXTREMUM_SCAN_STEPS: usize = 1000;

/// Slopes below this fraction of the largest scanned slope count as zero.
const SLOPE_NOISE: f64 = 1e-9;

const SLOPE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeRequest {
    pub target: Point,
    pub order: MultiIndex,
}

impl DerivativeRequest {
    pub fn new(target: impl Into<Point>, order: MultiIndex) -> Self {
        Self {
            target: target.into(),
            order,
        }
    }

    pub fn value(target: impl Into<Point>) -> Self {
        let target = target.into();
        let order = MultiIndex::zero(target.dimension());
        Self { target, order }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

impl ExtremumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremumKind::Maximum => "max",
            ExtremumKind::Minimum => "min",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremumReport {
    pub location: f64,
    pub kind: ExtremumKind,
    /// `|f'(location)|` of the interpolant.
    pub derivative_residual: f64,
}

/// `(estimate - exact) / exact`; the plain difference when `exact` is zero.
pub fn relative_error(estimate: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        estimate - exact
    } else {
        (estimate - exact) / exact
    }
}

/// One solve per sample site using every sample, truncated to `max_order`.
pub fn estimate_at_samples(samples: &[Sample], max_order: u32) -> Result<Vec<DerivativeVector>> {
    if samples.iter().any(|s| !matches!(s.constraint, Constraint::Value(_))) {
        return Err(Error::InvalidInput("derivative tables need value samples only".into()));
    }
    samples
        .iter()
        .map(|s| {
            let system = assemble(&s.point, samples)?;
            Ok(solve_derivatives(&system)?.truncated(max_order))
        })
        .collect()
}

/// Solves once per distinct target and evaluates each request there.
pub fn query_field(samples: &[Sample], requests: &[DerivativeRequest]) -> Result<Vec<f64>> {
    let mut cache: Vec<DerivativeVector> = Vec::new();
    requests
        .iter()
        .map(|req| {
            let d = match cache.iter().find(|d| d.query == req.target) {
                Some(d) => d,
                None => {
                    let system = assemble(&req.target, samples)?;
                    cache.push(solve_derivatives(&system)?);
                    cache.last().unwrap()
                }
            };
            interpolate(d, &req.target, &req.order)
        })
        .collect()
}

/// Value and derivative constraints combined into one square system per target.
pub fn evaluate_with_constraints(samples: &[Sample], requests: &[DerivativeRequest]) -> Result<Vec<f64>> {
    query_field(samples, requests)
}

/// Critical points of the global interpolant of 1D value samples on `[lo, hi]`.
pub fn find_extrema(samples: &[Sample], lo: f64, hi: f64) -> Result<Vec<ExtremumReport>> {
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty interval [{lo}, {hi}]")));
    }
    if samples.len() < 3 {
        return Err(Error::InvalidInput(
            "extremum search needs at least three samples".into(),
        ));
    }
    if samples
        .iter()
        .any(|s| s.point.dimension() != 1 || !matches!(s.constraint, Constraint::Value(_)))
    {
        return Err(Error::InvalidInput(
            "extremum search needs one-dimensional value samples".into(),
        ));
    }

    let center = Point::from(0.5 * (lo + hi));
    let interpolant = solve_derivatives(&assemble(&center, samples)?)?;
    let eval = |x: f64, k: u32| interpolate(&interpolant, &Point::from(x), &MultiIndex::new(vec![k]));
    let slope = |x: f64| eval(x, 1);

    let step = (hi - lo) / EXTREMUM_SCAN_STEPS as f64;
    let grid: Vec<f64> = (0..=EXTREMUM_SCAN_STEPS)
        .map(|i| {
            if i == EXTREMUM_SCAN_STEPS {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect();
    let slopes = grid.iter().map(|&x| slope(x)).collect::<Result<Vec<_>>>()?;
    // Slopes within rounding of zero carry no sign; an extremum needs a clear
    // change of sign across them, so inflections and flat ends are skipped.
    let floor = SLOPE_NOISE * slopes.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut roots = Vec::new();
    let mut last: Option<usize> = None;
    for (i, &d) in slopes.iter().enumerate() {
        if d.abs() <= floor {
            continue;
        }
        if let Some(j) = last {
            if slopes[j].signum() != d.signum() {
                roots.push(polish_root(&slope, &|t| eval(t, 2), grid[j], grid[i], slopes[j])?);
            }
        }
        last = Some(i);
    }

    roots
        .into_iter()
        .map(|location| {
            let curvature = eval(location, 2)?;
            Ok(ExtremumReport {
                location,
                kind: if curvature < 0.0 {
                    ExtremumKind::Maximum
                } else {
                    ExtremumKind::Minimum
                },
                derivative_residual: slope(location)?.abs(),
            })
        })
        .collect()
}

/// Safeguarded Newton on a sign-change bracket: Newton steps that leave the
/// bracket fall back to bisection.
fn polish_root(
    f: &impl Fn(f64) -> Result<f64>,
    df: &impl Fn(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    fa: f64,
) -> Result<f64> {
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let fx = f(x)?;
        if fx.abs() <= SLOPE_TOLERANCE {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
        } else {
            b = x;
        }
        let d = df(x)?;
        let newton = x - fx / d;
        x = if d != 0.0 && newton > a.min(b) && newton < a.max(b) {
            newton
        } else {
            0.5 * (a + b)
        };
        if (b - a).abs() <= f64::EPSILON * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

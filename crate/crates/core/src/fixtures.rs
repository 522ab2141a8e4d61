//! Bundled benchmark data so the regression tables are deterministic.

use crate::stencil::Sample;

/// 21 scattered points in the unit square.
pub const SCATTERED_21: [[f64; 2]; 21] = [
    [0.44, 0.89],
    [0.83, 0.98],
    [0.3, 0.39],
    [0.53, 0.67],
    [0.01, 0.71],
    [0.32, 0.27],
    [0.97, 0.48],
    [0.42, 0.22],
    [0.08, 0.77],
    [0.53, 0.41],
    [0.91, 0.18],
    [0.17, 0.78],
    [0.25, 0.85],
    [0.82, 0.88],
    [0.13, 0.17],
    [0.66, 0.74],
    [0.74, 0.65],
    [0.56, 0.44],
    [0.71, 0.53],
    [0.49, 0.45],
    [0.93, 0.49],
];

/// 3×3 query grid inside the scattered set.
pub const QUERY_GRID: [[f64; 2]; 9] = [
    [0.25, 0.25],
    [0.25, 0.5],
    [0.25, 0.75],
    [0.5, 0.25],
    [0.5, 0.5],
    [0.5, 0.75],
    [0.75, 0.25],
    [0.75, 0.5],
    [0.75, 0.75],
];

/// `f(x, y) = sin(x y²)` and its analytic derivatives.
pub mod sin_xy2 {
    pub fn value(x: f64, y: f64) -> f64 {
        (x * y * y).sin()
    }

    pub fn dx(x: f64, y: f64) -> f64 {
        y * y * (x * y * y).cos()
    }

    pub fn dy(x: f64, y: f64) -> f64 {
        2.0 * x * y * (x * y * y).cos()
    }

    pub fn dxy(x: f64, y: f64) -> f64 {
        let t = x * y * y;
        2.0 * y * t.cos() - 2.0 * x * y * y * y * t.sin()
    }
}

pub fn scattered_samples() -> Vec<Sample> {
    SCATTERED_21
        .iter()
        .map(|&[x, y]| Sample::value([x, y], sin_xy2::value(x, y)))
        .collect()
}

/// Abscissae `1, 2, …, 7` for the elliptic-sine extremum benchmark.
pub const SN_NODES: [f64; 7] = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];

/// `sn(x | m = 1/3)` at [`SN_NODES`], frozen from a high-accuracy ODE integration.
pub const SN_VALUES: [f64; 7] = [
    0.8161766374798108,
    0.9763095827654807,
    0.4461021659191627,
    -0.5005931616024842,
    -0.9864020155271234,
    -0.7818896160898472,
    0.06427334518766412,
];

/// Parameter `m` of the elliptic sine above.
pub const SN_PARAMETER: f64 = 1.0 / 3.0;

/// Quarter period `K(1/3)`; `sn` peaks at `K` and bottoms out at `3K`.
pub const SN_QUARTER_PERIOD: f64 = 1.733_916_885_257_935;

pub fn sn_samples() -> Vec<Sample> {
    SN_NODES
        .iter()
        .zip(SN_VALUES)
        .map(|(&x, v)| Sample::value(x, v))
        .collect()
}

/// `f(x) = (x - 1) sin(x) sin(x⁻²)`.
pub fn damped_oscillator(x: f64) -> f64 {
    (x - 1.0) * x.sin() * (1.0 / (x * x)).sin()
}

/// Critical points of [`damped_oscillator`] used as slope-zero constraints.
pub const OSCILLATOR_EXTREMA: [f64; 3] = [1.77251, 4.55625, 7.74447];

/// Values at `x = 1..10` plus `f' = 0` at each of [`OSCILLATOR_EXTREMA`].
pub fn oscillator_samples() -> Vec<Sample> {
    let mut samples: Vec<Sample> = (1..=10)
        .map(|i| Sample::value(i as f64, damped_oscillator(i as f64)))
        .collect();
    samples.extend(
        OSCILLATOR_EXTREMA
            .iter()
            .map(|&x| Sample::derivative(x, crate::basis::MultiIndex::new(vec![1]), 0.0)),
    );
    samples
}

/// Closed form of `f'' + sin³x = 0`, `f(0) = 3`, `f(1) = 2`.
///
/// With `sin³x = (3 sin x - sin 3x) / 4` two integrations give
/// `f = (3/4) sin x - sin(3x)/36 + c₁ x + c₀`; the boundary data fix
/// `c₀ = 3` and `c₁ = -1 - (3/4) sin 1 + sin(3)/36`.
pub fn sin_cubed_bvp_exact(x: f64) -> f64 {
    let c1 = -1.0 - 0.75 * 1f64.sin() + 3f64.sin() / 36.0;
    0.75 * x.sin() - (3.0 * x).sin() / 36.0 + c1 * x + 3.0
}

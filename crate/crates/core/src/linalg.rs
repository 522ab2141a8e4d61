//! Row-pivoted LU with column equilibration and iterative refinement.
//!
//! Taylor systems are monomial (Vandermonde-like) matrices; with a dozen or
//! more nodes a plain f64 solve loses most of its digits. Residuals are
//! therefore accumulated in compensated (double-double) arithmetic and a few
//! refinement sweeps recover the solution of the stored f64 system to near
//! working precision as long as `cond * eps < 1`.

// Triangular solves read clearer with explicit indices.
#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, DVector};

/// Pivots smaller than this fraction of the equilibrated matrix scale mark a
/// singular system.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-14;

const MAX_REFINEMENT_SWEEPS: usize = 8;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// `Σ a_i b_i` evaluated as if in twice the working precision.
pub fn dot2(a: impl IntoIterator<Item = f64>, b: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for (x, y) in a.into_iter().zip(b) {
        let (p, pe) = two_prod(x, y);
        let (t, se) = two_sum(s, p);
        s = t;
        c += pe + se;
    }
    s + c
}

/// A determinant kept as `mantissa * 2^exponent` so long pivot products
/// neither underflow nor overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDet {
    pub mantissa: f64,
    pub exponent: i64,
}

impl ScaledDet {
    fn one() -> Self {
        Self {
            mantissa: 1.0,
            exponent: 0,
        }
    }

    fn mul(&mut self, v: f64) {
        const BIG: f64 = 18446744073709551616.0; // 2^64
        self.mantissa *= v;
        if self.mantissa == 0.0 || !self.mantissa.is_finite() {
            return;
        }
        while self.mantissa.abs() >= BIG {
            self.mantissa /= BIG;
            self.exponent += 64;
        }
        while self.mantissa.abs() < 1.0 / BIG {
            self.mantissa *= BIG;
            self.exponent -= 64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// `self / other` as a plain float.
    pub fn ratio(&self, other: &ScaledDet) -> f64 {
        let shift = self.exponent - other.exponent;
        (self.mantissa / other.mantissa) * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio(&ScaledDet::one())
    }
}

/// `P A = L U` with partial (row) pivoting, unit-diagonal `L` stored below the diagonal.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DMatrix<f64>,
    perm: Vec<usize>,
    swaps: usize,
}

impl LuFactors {
    /// Factorizes a square matrix. Never fails; zero pivots are left in place
    /// and show up through [`LuFactors::min_pivot`].
    pub fn new(mut a: DMatrix<f64>) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "LU needs a square matrix");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, _) = (k..n).map(|i| (i, a[(i, k)].abs())).fold(
                (k, -1.0),
                |best, cur| {
                    if cur.1 > best.1 {
                        cur
                    } else {
                        best
                    }
                },
            );
            if p != k {
                a.swap_rows(p, k);
                perm.swap(p, k);
                swaps += 1;
            }
            let pivot = a[(k, k)];
            if pivot == 0.0 {
                continue;
            }
            for i in (k + 1)..n {
                let l = a[(i, k)] / pivot;
                a[(i, k)] = l;
                if l != 0.0 {
                    for j in (k + 1)..n {
                        a[(i, j)] -= l * a[(k, j)];
                    }
                }
            }
        }
        Self { lu: a, perm, swaps }
    }

    pub fn size(&self) -> usize {
        self.lu.nrows()
    }

    pub fn pivots(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.size()).map(move |k| self.lu[(k, k)])
    }

    pub fn min_pivot(&self) -> f64 {
        self.pivots().map(f64::abs).fold(f64::INFINITY, f64::min)
    }

    pub fn determinant(&self) -> ScaledDet {
        let mut det = ScaledDet::one();
        if self.swaps % 2 == 1 {
            det.mantissa = -1.0;
        }
        for p in self.pivots() {
            det.mul(p);
        }
        det
    }

    /// Solves `A x = b`. Zero pivots produce non-finite output.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.size();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    /// Solves `Aᵀ x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.size();
        // Aᵀ = Uᵀ Lᵀ P, so solve Uᵀ z = b, Lᵀ w = z, x = Pᵀ w.
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for j in 0..i {
                s -= self.lu[(j, i)] * z[j];
            }
            z[i] = s / self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for j in (i + 1)..n {
                s -= self.lu[(j, i)] * z[j];
            }
            z[i] = s;
        }
        let mut x = vec![0.0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = z[k];
        }
        x
    }
}

/// Factorization of a square system with exact power-of-two column
/// equilibration, a pivot-based singularity test, and refined solves.
#[derive(Debug, Clone)]
pub struct RefinedSolver {
    matrix: DMatrix<f64>,
    col_scale: Vec<f64>,
    lu: LuFactors,
}

impl RefinedSolver {
    /// Returns `None` when some pivot of the equilibrated matrix falls below
    /// [`SINGULAR_PIVOT_RATIO`] of its largest entry.
    pub fn new(matrix: DMatrix<f64>) -> Option<Self> {
        let n = matrix.nrows();
        let col_scale: Vec<f64> = (0..n)
            .map(|j| {
                let m = matrix.column(j).amax();
                if m == 0.0 {
                    1.0
                } else {
                    // Largest power of two not exceeding 1/m keeps the scaling exact.
                    2f64.powi(-(m.log2().ceil() as i32))
                }
            })
            .collect();
        let mut eq = matrix.clone();
        for (j, s) in col_scale.iter().enumerate() {
            eq.column_mut(j).scale_mut(*s);
        }
        let scale = eq.amax();
        let lu = LuFactors::new(eq);
        if scale == 0.0 || !(lu.min_pivot() >= SINGULAR_PIVOT_RATIO * scale) {
            return None;
        }
        Some(Self { matrix, col_scale, lu })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Determinant of the original (un-equilibrated) matrix.
    pub fn determinant(&self) -> ScaledDet {
        let mut det = self.lu.determinant();
        for s in &self.col_scale {
            det.mul(1.0 / s);
        }
        det
    }

    fn raw_solve(&self, b: &[f64]) -> Vec<f64> {
        // (M C) y = b, x = C y
        let y = self.lu.solve(b);
        y.iter().zip(&self.col_scale).map(|(v, s)| v * s).collect()
    }

    fn raw_solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        // Mᵀ x = b  <=>  (M C)ᵀ x = C b
        let cb: Vec<f64> = b.iter().zip(&self.col_scale).map(|(v, s)| v * s).collect();
        self.lu.solve_transpose(&cb)
    }

    /// Solves `M x = b` with compensated-residual refinement.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.matrix.nrows();
        self.refine(
            b,
            |x| {
                (0..n)
                    .map(|i| residual_entry(b[i], self.matrix.row(i).iter().copied(), x))
                    .collect()
            },
            |r| self.raw_solve(r),
        )
    }

    /// Solves `Mᵀ x = b` with compensated-residual refinement.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.matrix.nrows();
        self.refine(
            b,
            |x| {
                (0..n)
                    .map(|i| residual_entry(b[i], self.matrix.column(i).iter().copied(), x))
                    .collect()
            },
            |r| self.raw_solve_transpose(r),
        )
    }

    fn refine(
        &self,
        b: &[f64],
        residual: impl Fn(&[f64]) -> Vec<f64>,
        correct: impl Fn(&[f64]) -> Vec<f64>,
    ) -> Vec<f64> {
        let mut x = correct(b);
        let mut last = f64::INFINITY;
        for _ in 0..MAX_REFINEMENT_SWEEPS {
            let r = residual(&x);
            let dx = correct(&r);
            let step = dx.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let size = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if !step.is_finite() || step >= last {
                break;
            }
            for (xi, di) in x.iter_mut().zip(&dx) {
                *xi += di;
            }
            last = step;
            if step <= f64::EPSILON * size {
                break;
            }
        }
        x
    }
}

fn residual_entry(b: f64, row: impl Iterator<Item = f64>, x: &[f64]) -> f64 {
    dot2(
        std::iter::once(b).chain(row),
        std::iter::once(1.0).chain(x.iter().map(|v| -v)),
    )
}

/// `‖A‖∞ · ‖A⁻¹‖∞`, infinite when a pivot vanishes exactly.
pub fn condition_inf(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 0.0;
    }
    let norm = (0..n)
        .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let lu = LuFactors::new(a.clone());
    if lu.min_pivot() == 0.0 {
        return f64::INFINITY;
    }
    let mut row_sums = vec![0.0; n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = lu.solve(&e);
        e[j] = 0.0;
        for (s, v) in row_sums.iter_mut().zip(&col) {
            *s += v.abs();
        }
    }
    let inv_norm = row_sums.into_iter().fold(0.0, f64::max);
    if inv_norm.is_finite() {
        norm * inv_norm
    } else {
        f64::INFINITY
    }
}

pub fn mat_vec(a: &DMatrix<f64>, x: &[f64]) -> Vec<f64> {
    (a * DVector::from_column_slice(x)).iter().copied().collect()
}

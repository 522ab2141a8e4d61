//! Collocation eigenproblems `-κ φ'' + U φ = λ φ` with `φ = 0` at both ends.
//!
//! Collocating on `N` uniform nodes and eliminating the two boundary values
//! leaves the homogeneous system `(H - λ I) φ = 0` over the interior nodes,
//! so `det(H - λ I) = 0` is the characteristic equation. The spectrum comes
//! from a dense real Schur decomposition of `H`; `det_residual` keeps the
//! determinant form around as an independent check.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;

use crate::bvp::{differentiation_matrix, NodeSet, ScalarFn};
use crate::error::{Error, Result};
use crate::linalg::{condition_inf, mat_vec, LuFactors};

/// Extra nodes used when cross-checking eigenvalues under refinement.
pub const VALIDATION_EXTRA_NODES: usize = 4;
/// Largest relative drift tolerated between `N` and `N + 4` nodes.
pub const VALIDATION_DRIFT: f64 = 0.10;

const SCHUR_MAX_ITER: usize = 10_000;

#[derive(Clone)]
pub struct EigenProblem {
    pub lo: f64,
    pub hi: f64,
    /// Total nodes including both endpoints.
    pub node_count: usize,
    /// Coefficient multiplying `-φ''`.
    pub kinetic: f64,
    pub potential: ScalarFn,
}

impl std::fmt::Debug for EigenProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EigenProblem")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("node_count", &self.node_count)
            .field("kinetic", &self.kinetic)
            .finish_non_exhaustive()
    }
}

impl EigenProblem {
    pub fn new(
        lo: f64,
        hi: f64,
        node_count: usize,
        kinetic: f64,
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            lo,
            hi,
            node_count,
            kinetic,
            potential: Arc::new(potential),
        }
    }

    /// `φ'' + ω² φ = 0` on `[0, 1]`; eigenvalues are `λ = ω²`.
    pub fn infinite_well(node_count: usize) -> Self {
        Self::new(0.0, 1.0, node_count, 1.0, |_| 0.0)
    }

    pub fn with_node_count(&self, node_count: usize) -> Self {
        Self {
            node_count,
            ..self.clone()
        }
    }

    /// Adds a constant to the potential.
    pub fn shifted(&self, c: f64) -> Self {
        let inner = self.potential.clone();
        Self {
            potential: Arc::new(move |x| inner(x) + c),
            ..self.clone()
        }
    }

    pub fn nodes(&self) -> Result<NodeSet> {
        NodeSet::uniform(self.lo, self.hi, self.node_count)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) {
            return Err(Error::InvalidInput(format!("empty domain [{}, {}]", self.lo, self.hi)));
        }
        if self.node_count < 4 {
            return Err(Error::InvalidInput("an eigenproblem needs at least four nodes".into()));
        }
        if !(self.kinetic > 0.0 && self.kinetic.is_finite()) {
            return Err(Error::InvalidInput("kinetic coefficient must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `‖Hv - λv‖ / ‖v‖` per eigenvalue.
    pub residuals: Vec<f64>,
    /// Complex (and, when validated, drifting) eigenvalues removed.
    pub discarded_count: usize,
}

/// `H = -κ W₂ + diag(U)` restricted to interior rows and columns.
pub fn assemble_hamiltonian(problem: &EigenProblem) -> Result<DMatrix<f64>> {
    problem.validate()?;
    let nodes = problem.nodes()?;
    let w2 = differentiation_matrix(&nodes, 2)?;
    let m = problem.node_count - 2;
    let mut h = DMatrix::zeros(m, m);
    for i in 0..m {
        let x = nodes.as_slice()[i + 1];
        let u = (problem.potential)(x);
        if !u.is_finite() {
            return Err(Error::NonFinitePotential { x });
        }
        for j in 0..m {
            h[(i, j)] = -problem.kinetic * w2.weights[(i + 1, j + 1)];
        }
        h[(i, i)] += u;
    }
    Ok(h)
}

/// Real eigenvalues of `h`, ascending, plus how many complex ones were dropped.
fn real_eigenvalues(h: &DMatrix<f64>) -> Result<(Vec<f64>, usize)> {
    let n = h.nrows();
    let schur = Schur::try_new(h.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or_else(|| Error::EigenFailure {
        size: n,
        condition: condition_inf(h),
    })?;
    let all = schur.complex_eigenvalues();
    let mut real: Vec<f64> = all
        .iter()
        .filter(|z| z.im.abs() <= 1e-8 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let discarded = n - real.len();
    Ok((real, discarded))
}

/// Inverse-iteration eigenvector residual `‖Hv - λv‖ / ‖v‖`.
pub fn eigen_residual(h: &DMatrix<f64>, lambda: f64) -> f64 {
    let n = h.nrows();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let shift = lambda + 1e-12 * (1.0 + lambda.abs());
    let shifted = h - DMatrix::identity(n, n) * shift;
    let lu = LuFactors::new(shifted);
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    for _ in 0..3 {
        let w = lu.solve(&v);
        let s = norm(&w);
        if !(s.is_finite() && s > 0.0) {
            break;
        }
        v = w.into_iter().map(|x| x / s).collect();
    }
    let hv = mat_vec(h, &v);
    let r: Vec<f64> = hv.iter().zip(&v).map(|(a, b)| a - lambda * b).collect();
    norm(&r) / norm(&v)
}

/// Lowest `count` real eigenvalues of the collocation Hamiltonian.
pub fn solve_spectrum(problem: &EigenProblem, count: usize) -> Result<Spectrum> {
    let h = assemble_hamiltonian(problem)?;
    if count > h.nrows() {
        return Err(Error::InvalidInput(format!(
            "{count} modes requested but only {} interior nodes",
            h.nrows()
        )));
    }
    let (real, discarded) = real_eigenvalues(&h)?;
    Ok(finish(&h, real.into_iter().take(count).collect(), discarded))
}

/// Like [`solve_spectrum`], but also drops eigenvalues that move by more than
/// [`VALIDATION_DRIFT`] when the grid gains [`VALIDATION_EXTRA_NODES`] nodes.
pub fn solve_spectrum_validated(problem: &EigenProblem, count: usize) -> Result<Spectrum> {
    let h = assemble_hamiltonian(problem)?;
    if count > h.nrows() {
        return Err(Error::InvalidInput(format!(
            "{count} modes requested but only {} interior nodes",
            h.nrows()
        )));
    }
    let (real, mut discarded) = real_eigenvalues(&h)?;
    let finer = assemble_hamiltonian(&problem.with_node_count(problem.node_count + VALIDATION_EXTRA_NODES))?;
    let (reference, _) = real_eigenvalues(&finer)?;
    let stable: Vec<f64> = real
        .into_iter()
        .filter(|&l| {
            let keep = reference
                .iter()
                .any(|&r| (r - l).abs() <= VALIDATION_DRIFT * l.abs().max(f64::MIN_POSITIVE));
            if !keep {
                discarded += 1;
            }
            keep
        })
        .collect();
    Ok(finish(&h, stable.into_iter().take(count).collect(), discarded))
}

fn finish(h: &DMatrix<f64>, eigenvalues: Vec<f64>, discarded_count: usize) -> Spectrum {
    let residuals = eigenvalues.iter().map(|&l| eigen_residual(h, l)).collect();
    Spectrum {
        eigenvalues,
        residuals,
        discarded_count,
    }
}

/// `|det(H - λI)|` divided by the product of all but the smallest pivot of
/// its LU factorization, which leaves the magnitude of that smallest pivot.
pub fn det_residual_of(h: &DMatrix<f64>, lambda: f64) -> f64 {
    let n = h.nrows();
    let lu = LuFactors::new(h - DMatrix::identity(n, n) * lambda);
    let mut pivots: Vec<f64> = lu.pivots().map(f64::abs).collect();
    pivots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let det: f64 = pivots.iter().product();
    let largest: f64 = pivots[..n - 1].iter().product();
    if largest == 0.0 || !det.is_finite() || !largest.is_finite() {
        return pivots[n - 1];
    }
    det / largest
}

pub fn det_residual(problem: &EigenProblem, lambda: f64) -> Result<f64> {
    Ok(det_residual_of(&assemble_hamiltonian(problem)?, lambda))
}

/// `U(x) = (V₀/2)[k(k-1)/sin²(αx) + λ(λ-1)/cos²(αx)]` on `(0, π/2α)`, energies in units of `V₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoschlTeller {
    pub k: f64,
    pub lam: f64,
    pub alpha: f64,
}

impl PoschlTeller {
    pub fn new(k: f64, lam: f64, alpha: f64) -> Result<Self> {
        if !(k > 1.0 && lam > 1.0 && alpha > 0.0) {
            return Err(Error::InvalidInput("Pöschl-Teller needs k > 1, λ > 1, α > 0".into()));
        }
        Ok(Self { k, lam, alpha })
    }

    /// `V₀ = ħ²α²/m₀` makes the kinetic prefactor `ħ²/2m₀ = 1/(2α²)` in `V₀` units.
    pub fn problem(&self, node_count: usize) -> EigenProblem {
        let Self { k, lam, alpha } = *self;
        let a = k * (k - 1.0);
        let b = lam * (lam - 1.0);
        EigenProblem::new(
            0.0,
            PI / (2.0 * alpha),
            node_count,
            1.0 / (2.0 * alpha * alpha),
            move |x| {
                let s = (alpha * x).sin();
                let c = (alpha * x).cos();
                0.5 * (a / (s * s) + b / (c * c))
            },
        )
    }

    /// `E_n / V₀ = (k + λ + 2n)² / 2`, `n = 0` being the ground state.
    pub fn exact_energy(&self, n: u32) -> f64 {
        let s = self.k + self.lam + 2.0 * n as f64;
        0.5 * s * s
    }
}

/// `U(x) = V_a cot²(πx/α)` on `(0, α)` with kinetic prefactor `1/A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigPotential {
    pub va: f64,
    pub alpha: f64,
    pub a: f64,
}

impl TrigPotential {
    pub fn new(va: f64, alpha: f64, a: f64) -> Result<Self> {
        if !(alpha > 0.0 && a > 0.0 && va >= 0.0) {
            return Err(Error::InvalidInput(
                "trigonometric potential needs α > 0, A > 0, V_a >= 0".into(),
            ));
        }
        Ok(Self { va, alpha, a })
    }

    pub fn problem(&self, node_count: usize) -> EigenProblem {
        let Self { va, alpha, a } = *self;
        EigenProblem::new(0.0, alpha, node_count, 1.0 / a, move |x| {
            let t = (PI * x / alpha).tan();
            va / (t * t)
        })
    }

    pub fn lambda_a(&self) -> f64 {
        0.25 * ((4.0 * self.a * self.va * self.alpha * self.alpha / (PI * PI) + 1.0).sqrt() - 1.0)
    }

    /// `E_n = π²/(Aα²) (n² + 4nλ_a - 2λ_a)` for `n >= 1`.
    pub fn exact_energy(&self, n: u32) -> f64 {
        let l = self.lambda_a();
        let n = n as f64;
        PI * PI / (self.a * self.alpha * self.alpha) * (n * n + 4.0 * n * l - 2.0 * l)
    }
}

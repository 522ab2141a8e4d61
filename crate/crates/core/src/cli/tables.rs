//! Regression tables over the bundled benchmark problems.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::analysis::{estimate_at_samples, query_field, relative_error, DerivativeRequest};
use crate::basis::MultiIndex;
use crate::bvp::{solve_linear_bvp, LinearBvp, NodeSet};
use crate::cli::problem::EigenKind;
use crate::cli::table::{Cell, Table};
use crate::eigen::{solve_spectrum, EigenProblem, PoschlTeller, Spectrum, TrigPotential};
use crate::error::{Error, Result};
use crate::fixtures::{self, sin_xy2};

/// Nodes used by every built-in collocation benchmark.
pub const BENCHMARK_NODES: usize = 14;

pub const POSCHL_TELLER_CASES: [(f64, f64); 5] = [(2.0, 2.0), (3.0, 2.0), (2.0, 3.0), (3.0, 3.0), (10.0, 10.0)];
pub const TRIG_STRENGTHS: [f64; 5] = [1.0, 10.0, 50.0, 100.0, 1000.0];

pub fn table(index: u32) -> Result<Table> {
    match index {
        1 => gradient_table(),
        2 => grid_query_table(),
        3 => sin_cubed_bvp_table(),
        4 => poschl_teller_table(),
        5 => trig_table(),
        other => Err(Error::InvalidInput(format!("unknown table {other}; choose 1-5"))),
    }
}

/// First derivatives of `sin(xy²)` at each of the 21 scattered sites.
pub fn gradient_table() -> Result<Table> {
    let samples = fixtures::scattered_samples();
    let est = estimate_at_samples(&samples, 1)?;
    let mut t = Table::new([
        "x", "y", "f", "fx_exact", "fx_est", "fx_rel", "fy_exact", "fy_est", "fy_rel",
    ]);
    for (d, &[x, y]) in est.iter().zip(&fixtures::SCATTERED_21) {
        let (fx, fy) = (sin_xy2::dx(x, y), sin_xy2::dy(x, y));
        t.push(vec![
            x.into(),
            y.into(),
            sin_xy2::value(x, y).into(),
            fx.into(),
            d.values[1].into(),
            relative_error(d.values[1], fx).into(),
            fy.into(),
            d.values[2].into(),
            relative_error(d.values[2], fy).into(),
        ]);
    }
    Ok(t)
}

/// Value and mixed second derivative at the 3×3 grid.
pub fn grid_query_table() -> Result<Table> {
    let samples = fixtures::scattered_samples();
    let mut requests = Vec::new();
    for &[x, y] in &fixtures::QUERY_GRID {
        requests.push(DerivativeRequest::value([x, y]));
        requests.push(DerivativeRequest::new([x, y], MultiIndex::new(vec![1, 1])));
    }
    let out = query_field(&samples, &requests)?;
    let mut t = Table::new(["x", "y", "f_exact", "f_est", "f_rel", "fxy_exact", "fxy_est", "fxy_rel"]);
    for (pair, &[x, y]) in out.chunks(2).zip(&fixtures::QUERY_GRID) {
        let (f, fxy) = (sin_xy2::value(x, y), sin_xy2::dxy(x, y));
        t.push(vec![
            x.into(),
            y.into(),
            f.into(),
            pair[0].into(),
            relative_error(pair[0], f).into(),
            fxy.into(),
            pair[1].into(),
            relative_error(pair[1], fxy).into(),
        ]);
    }
    Ok(t)
}

pub fn sin_cubed_bvp() -> Result<LinearBvp> {
    let nodes = NodeSet::uniform(0.0, 1.0, BENCHMARK_NODES)?;
    Ok(LinearBvp::new(nodes, 3.0, 2.0, |x: f64| -x.sin().powi(3)).with_term(2, |_| 1.0))
}

/// `f'' + sin³x = 0`, `f(0) = 3`, `f(1) = 2` on 14 uniform nodes.
pub fn sin_cubed_bvp_table() -> Result<Table> {
    let problem = sin_cubed_bvp()?;
    let u = solve_linear_bvp(&problem)?;
    let mut t = Table::new(["x", "exact", "numeric", "rel_diff"]);
    for (x, v) in problem.nodes.as_slice().iter().zip(u) {
        let exact = fixtures::sin_cubed_bvp_exact(*x);
        t.push(vec![
            (*x).into(),
            exact.into(),
            v.into(),
            relative_error(v, exact).into(),
        ]);
    }
    Ok(t)
}

/// Level label and exact value for spectrum entry `index`.
pub fn exact_level(kind: &EigenKind, index: usize) -> Option<(usize, f64)> {
    match kind {
        EigenKind::Well => Some((index + 1, (index + 1) as f64 * PI)),
        EigenKind::PoschlTeller(p) => Some((index, p.exact_energy(index as u32))),
        EigenKind::Trig(t) => Some((index + 1, t.exact_energy(index as u32 + 1))),
        EigenKind::Custom => None,
    }
}

/// One row per mode. The well reports `ω = √λ`; other problems report `λ`.
pub fn spectrum_table(kind: &EigenKind, spectrum: &Spectrum) -> Table {
    let well = matches!(kind, EigenKind::Well);
    let mut headers = vec!["n", "eigenvalue"];
    if well {
        headers.push("omega");
    }
    let has_exact = !matches!(kind, EigenKind::Custom);
    if has_exact {
        headers.extend(["exact", "rel_diff"]);
    }
    headers.push("residual");
    let mut t = Table::new(headers);
    for (i, (&l, &r)) in spectrum.eigenvalues.iter().zip(&spectrum.residuals).enumerate() {
        let (level, exact) = exact_level(kind, i).unwrap_or((i + 1, f64::NAN));
        let mut row: Vec<Cell> = vec![level.into(), l.into()];
        let shown = if well { l.sqrt() } else { l };
        if well {
            row.push(shown.into());
        }
        if has_exact {
            row.push(exact.into());
            row.push(relative_error(shown, exact).into());
        }
        row.push(r.into());
        t.push(row);
    }
    t
}

/// Energies `E_n / V₀`, `n = 1, 2, 3`, for the five `(k, λ)` cases.
pub fn poschl_teller_table() -> Result<Table> {
    let mut t = Table::new(["k", "lambda", "n", "exact", "numeric", "rel_diff"]);
    for (k, lam) in POSCHL_TELLER_CASES {
        let pt = PoschlTeller::new(k, lam, FRAC_PI_2)?;
        let s = solve_spectrum(&pt.problem(BENCHMARK_NODES), 4)?;
        for n in 1..=3usize {
            let exact = pt.exact_energy(n as u32);
            let numeric = s.eigenvalues[n];
            t.push(vec![
                k.into(),
                lam.into(),
                n.into(),
                exact.into(),
                numeric.into(),
                relative_error(numeric, exact).into(),
            ]);
        }
    }
    Ok(t)
}

/// Energies `E_1 … E_4` of `V_a cot²(πx)` for the five strengths.
pub fn trig_table() -> Result<Table> {
    let mut t = Table::new(["va", "n", "exact", "numeric", "rel_diff"]);
    for va in TRIG_STRENGTHS {
        let tp = TrigPotential::new(va, 1.0, 1.0)?;
        let s = solve_spectrum(&tp.problem(BENCHMARK_NODES), 4)?;
        for n in 1..=4usize {
            let exact = tp.exact_energy(n as u32);
            let numeric = s.eigenvalues[n - 1];
            t.push(vec![
                va.into(),
                n.into(),
                exact.into(),
                numeric.into(),
                relative_error(numeric, exact).into(),
            ]);
        }
    }
    Ok(t)
}

pub fn well_problem() -> EigenProblem {
    EigenProblem::infinite_well(BENCHMARK_NODES)
}

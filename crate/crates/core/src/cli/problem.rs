//! TOML problem specifications for the `bvp` and `eigen` commands.
//!
//! ```toml
//! [problem]
//! type = "bvp"                      # bvp | eigen | builtin:well | builtin:poschl_teller | builtin:trig
//! node_count = 14
//! coefficients = [0.0, 0.0, 1.0]    # c0 f + c1 f' + c2 f'' ...  (bvp)
//! source = { kind = "sin_power", power = 3, scale = -1.0 }
//!
//! [domain]
//! lo = 0.0
//! hi = 1.0
//! left = 3.0                        # Dirichlet data (bvp)
//! right = 2.0
//!
//! [potential]                       # eigen problems
//! kind = "constant"
//! value = 0.0
//!
//! [output]
//! modes = 4
//! validated = false
//! format = "csv"
//! ```

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Deserialize;

use crate::bvp::{LinearBvp, NodeSet, ScalarFn};
use crate::cli::table::Format;
use crate::eigen::{EigenProblem, PoschlTeller, TrigPotential};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub problem: Option<ProblemSection>,
    #[serde(default)]
    pub domain: DomainSection,
    #[serde(default)]
    pub potential: PotentialSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    #[serde(rename = "type")]
    pub kind: Option<String>,
    pub node_count: Option<usize>,
    pub coefficients: Option<Vec<f64>>,
    pub source: Option<SourceSpec>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DomainSection {
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub left: Option<f64>,
    pub right: Option<f64>,
    pub kinetic: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub kind: Option<String>,
    pub value: Option<f64>,
    pub strength: Option<f64>,
    pub center: Option<f64>,
    pub k: Option<f64>,
    pub lambda: Option<f64>,
    pub alpha: Option<f64>,
    pub va: Option<f64>,
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub modes: Option<usize>,
    pub validated: Option<bool>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceSpec {
    Constant {
        value: f64,
    },
    /// `Σ c_j x^j`
    Polynomial {
        coefficients: Vec<f64>,
    },
    /// `scale · sinᵖ(x)`
    SinPower {
        power: u32,
        scale: f64,
    },
}

impl SourceSpec {
    pub fn function(&self) -> ScalarFn {
        match self.clone() {
            SourceSpec::Constant { value } => Arc::new(move |_| value),
            SourceSpec::Polynomial { coefficients } => {
                Arc::new(move |x| coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c))
            }
            SourceSpec::SinPower { power, scale } => Arc::new(move |x: f64| scale * x.sin().powi(power as i32)),
        }
    }
}

fn missing(field: &str) -> Error {
    Error::InvalidInput(format!("missing field '{field}'"))
}

fn finite(v: f64, field: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidInput(format!("field '{field}' must be finite")))
    }
}

fn require(v: Option<f64>, field: &str) -> Result<f64> {
    finite(v.ok_or_else(|| missing(field))?, field)
}

/// A BVP ready to solve, with its closed form when one is known.
pub struct BvpJob {
    pub problem: LinearBvp,
    pub exact: Option<ScalarFn>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenKind {
    Well,
    PoschlTeller(PoschlTeller),
    Trig(TrigPotential),
    Custom,
}

pub struct EigenJob {
    pub problem: EigenProblem,
    pub kind: EigenKind,
    pub modes: usize,
    pub validated: bool,
}

pub enum Job {
    Bvp(BvpJob),
    Eigen(EigenJob),
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ProblemSpec = toml::from_str(text).map_err(|e| Error::InvalidInput(format!("problem spec: {e}")))?;
        if spec.problem.is_none() {
            return Err(missing("problem"));
        }
        Ok(spec)
    }

    fn section(&self) -> &ProblemSection {
        self.problem.as_ref().expect("checked in parse")
    }

    pub fn kind(&self) -> Result<&str> {
        self.section().kind.as_deref().ok_or_else(|| missing("problem.type"))
    }

    pub fn format(&self) -> Option<Format> {
        self.output.format
    }

    pub fn job(&self) -> Result<Job> {
        match self.kind()? {
            "bvp" => self.bvp().map(Job::Bvp),
            "eigen" | "builtin:well" | "builtin:poschl_teller" | "builtin:trig" => self.eigen().map(Job::Eigen),
            other => Err(Error::InvalidInput(format!("unknown problem type '{other}'"))),
        }
    }

    fn node_count(&self, default: Option<usize>) -> Result<usize> {
        self.section()
            .node_count
            .or(default)
            .ok_or_else(|| missing("problem.node_count"))
    }

    pub fn bvp(&self) -> Result<BvpJob> {
        let p = self.section();
        let n = self.node_count(None)?;
        let lo = require(self.domain.lo, "domain.lo")?;
        let hi = require(self.domain.hi, "domain.hi")?;
        let left = require(self.domain.left, "domain.left")?;
        let right = require(self.domain.right, "domain.right")?;
        let coefficients = p.coefficients.clone().ok_or_else(|| missing("problem.coefficients"))?;
        for c in &coefficients {
            finite(*c, "problem.coefficients")?;
        }
        let source = p.source.clone().ok_or_else(|| missing("problem.source"))?;
        if !(lo < hi) {
            return Err(Error::InvalidInput("domain.lo must be below domain.hi".into()));
        }
        let nodes = NodeSet::uniform(lo, hi, n)?;
        let mut problem = LinearBvp {
            nodes,
            coefficients: Vec::new(),
            source: source.function(),
            left,
            right,
        };
        for (k, c) in coefficients.iter().enumerate() {
            if *c != 0.0 {
                let c = *c;
                problem.coefficients.push((k, Arc::new(move |_| c)));
            }
        }
        let exact = closed_form(&coefficients, &source, lo, hi, left, right);
        Ok(BvpJob { problem, exact })
    }

    pub fn eigen(&self) -> Result<EigenJob> {
        let pot = &self.potential;
        let modes = self.output.modes.unwrap_or(4);
        let validated = self.output.validated.unwrap_or(false);
        let (problem, kind) = match self.kind()? {
            "builtin:well" => (EigenProblem::infinite_well(self.node_count(Some(14))?), EigenKind::Well),
            "builtin:poschl_teller" => {
                let pt = PoschlTeller::new(
                    require(pot.k, "potential.k")?,
                    require(pot.lambda, "potential.lambda")?,
                    finite(pot.alpha.unwrap_or(PI / 2.0), "potential.alpha")?,
                )?;
                (pt.problem(self.node_count(Some(14))?), EigenKind::PoschlTeller(pt))
            }
            "builtin:trig" => {
                let t = TrigPotential::new(
                    require(pot.va, "potential.va")?,
                    finite(pot.alpha.unwrap_or(1.0), "potential.alpha")?,
                    finite(pot.a.unwrap_or(1.0), "potential.a")?,
                )?;
                (t.problem(self.node_count(Some(14))?), EigenKind::Trig(t))
            }
            _ => {
                let lo = require(self.domain.lo, "domain.lo")?;
                let hi = require(self.domain.hi, "domain.hi")?;
                let kinetic = finite(self.domain.kinetic.unwrap_or(1.0), "domain.kinetic")?;
                let n = self.node_count(None)?;
                let potential: ScalarFn = match pot.kind.as_deref().ok_or_else(|| missing("potential.kind"))? {
                    "constant" => {
                        let v = require(pot.value, "potential.value")?;
                        Arc::new(move |_| v)
                    }
                    "harmonic" => {
                        let s = require(pot.strength, "potential.strength")?;
                        let c = finite(pot.center.unwrap_or(0.5 * (lo + hi)), "potential.center")?;
                        Arc::new(move |x| s * (x - c) * (x - c))
                    }
                    other => return Err(Error::InvalidInput(format!("unknown potential kind '{other}'"))),
                };
                (
                    EigenProblem {
                        lo,
                        hi,
                        node_count: n,
                        kinetic,
                        potential,
                    },
                    EigenKind::Custom,
                )
            }
        };
        Ok(EigenJob {
            problem,
            kind,
            modes,
            validated,
        })
    }
}

/// Closed-form solution of `c₂ f'' = s` with Dirichlet data, for polynomial
/// or `scale · sin³` sources.
fn closed_form(coefficients: &[f64], source: &SourceSpec, lo: f64, hi: f64, left: f64, right: f64) -> Option<ScalarFn> {
    let c2 = *coefficients.get(2)?;
    if c2 == 0.0 || coefficients.iter().enumerate().any(|(k, c)| k != 2 && *c != 0.0) {
        return None;
    }
    let particular: ScalarFn = match source.clone() {
        SourceSpec::Constant { value } => Arc::new(move |x| value * x * x / (2.0 * c2)),
        SourceSpec::Polynomial { coefficients } => Arc::new(move |x: f64| {
            coefficients
                .iter()
                .enumerate()
                .map(|(j, a)| a * x.powi(j as i32 + 2) / ((j + 1) * (j + 2)) as f64)
                .sum::<f64>()
                / c2
        }),
        // sin³x = (3 sin x - sin 3x)/4 integrates twice to -(3/4) sin x + sin(3x)/36.
        SourceSpec::SinPower { power: 3, scale } => {
            Arc::new(move |x: f64| scale / c2 * (-0.75 * x.sin() + (3.0 * x).sin() / 36.0))
        }
        SourceSpec::SinPower { .. } => return None,
    };
    let p_lo = particular(lo);
    let p_hi = particular(hi);
    let slope = ((right - p_hi) - (left - p_lo)) / (hi - lo);
    let offset = left - p_lo - slope * lo;
    Some(Arc::new(move |x| particular(x) + slope * x + offset))
}

//! The `fast` and `full` verification suites.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use anyhow::Result;
use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;
use sofa_core::convex_core::width;
use sofa_core::functional::a1;
use sofa_core::maximizer::{build_maximizer, verify_maximizer, MaximizerSpec};
use sofa_core::optimize::{assemble, solve, uniform_start};
use sofa_core::sofa::{polygonal_bound, sofa_area_with, BoundSearch};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// n ≤ 500.
    Fast,
    /// n = 2000.
    Full,
}

struct Sizes {
    n: usize,
    samples: usize,
    trials: usize,
    qp_n: usize,
}

impl Suite {
    fn sizes(self) -> Sizes {
        match self {
            Suite::Fast => Sizes { n: 500, samples: 2048, trials: 10, qp_n: 100 },
            Suite::Full => Sizes { n: 2000, samples: 4096, trials: 50, qp_n: 200 },
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Fast => "fast",
            Suite::Full => "full",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

struct Checks {
    list: Vec<Check>,
}

impl Checks {
    /// Records `|value − expected| ≤ tol`.
    fn close(&mut self, name: impl Into<String>, value: f64, expected: f64, tol: f64) {
        self.push(name.into(), value, expected, tol, (value - expected).abs() <= tol);
    }

    /// Records `value ≤ bound`.
    fn at_most(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.push(name.into(), value, bound, 0.0, value <= bound);
    }

    fn push(&mut self, name: String, value: f64, expected: f64, tol: f64, passed: bool) {
        self.list.push(Check { name, value, expected, tol, passed });
    }
}

pub fn run(suite: Suite, rng: &mut impl Rng) -> Result<Report> {
    let Sizes { n, samples, trials, qp_n } = suite.sizes();
    let mut c = Checks { list: Vec::new() };

    for omega in [PI / 6.0, PI / 4.0, PI / 3.0, FRAC_PI_2] {
        let cap = build_maximizer(&MaximizerSpec::new(omega, n))?;
        c.close(format!("a1 at omega = {omega:.6}"), a1(&cap, n)?, 1.0 + omega * omega / 2.0, 1e-4);
    }

    let star = build_maximizer(&MaximizerSpec::new(FRAC_PI_2, n))?;
    c.close("width", width(star.support(), 0.0), PI, 1e-3);
    let cut = sofa_area_with(&star, samples, samples);
    c.close("cut sofa area", cut.area, 2.2009, 2e-3);
    c.close("hammersley bound", polygonal_bound(&[PI / 4.0], &BoundSearch::default())?, 2.0 * SQRT_2, 1e-3);

    let report = verify_maximizer(&MaximizerSpec::new(FRAC_PI_2, n), trials, n, 1e-3, rng)?;
    c.at_most("max |D a1| over random caps", report.max_derivative, 1e-3);
    c.at_most("max a1 excess over random caps", report.max_excess, 1e-3);

    let anchor = build_maximizer(&MaximizerSpec::new(FRAC_PI_2, qp_n))?;
    let problem = assemble(FRAC_PI_2, qp_n, n, &anchor)?;
    let s = solve(&problem, &uniform_start(&problem), 50_000, 1e-5)?;
    let monotone = s.trace.windows(2).all(|w| w[1].objective >= w[0].objective);
    c.close("qp value", s.value, 1.0 + PI * PI / 8.0, 1e-3);
    c.at_most("qp certificate", s.certificate, 1e-3);
    c.at_most("qp ascent violations", if monotone { 0.0 } else { 1.0 }, 0.0);

    let passed = c.list.iter().all(|k| k.passed);
    Ok(Report { suite: suite.name(), n, passed, checks: c.list })
}

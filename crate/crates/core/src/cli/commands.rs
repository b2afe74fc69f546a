use std::fmt::Write;

use crate::base::BaseSpec;
use crate::complete::{degree_bound, realize_edge_bounded, realize_in_complete_with, RealizeError, RealizeOptions, RunStats};
use crate::grid::{realize_in_grid_with, GridError};
use crate::maxedp::{approx_maxedp, approx_maxedp_with_cap, min_base_distance, pigeonhole_bound, MaxEdpError};
use crate::oracle::brute::{brute_force_realize, OracleError};
use crate::oracle::generate::{antipodal, double_bundle, one_factor_bundles};
use crate::oracle::verify::verify_realization;
use crate::realization::Realization;

use super::format::{emit_demand_file, emit_realization, parse_demand_file, parse_realization_file, DemandFile, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// What a command prints and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

fn parse_error(e: ParseError) -> Outcome {
    Outcome::fail(EXIT_PARSE, e)
}

fn realize_error(e: RealizeError) -> Outcome {
    match e {
        RealizeError::DegreeBoundExceeded { .. } | RealizeError::PreconditionViolated(_) => {
            Outcome::fail(EXIT_PRECONDITION, e)
        }
        _ => Outcome::fail(EXIT_FAILED, e),
    }
}

fn grid_error(e: GridError) -> Outcome {
    match e {
        GridError::DegreeBoundExceeded { .. } => Outcome::fail(EXIT_PRECONDITION, e),
        GridError::Realize(e) => realize_error(e),
        _ => Outcome::fail(EXIT_FAILED, e),
    }
}

/// Emits `r` after re-verifying it against the demand file.
fn checked_output(file: &DemandFile, r: &Realization) -> Outcome {
    let report = verify_realization(&file.demand, r);
    if !report.ok() {
        let mut msg = String::from("internal realization failed verification:");
        for v in &report.violations {
            write!(msg, " {}:{}", v.label.0, v.kind).unwrap();
        }
        return Outcome::fail(EXIT_FAILED, msg);
    }
    Outcome::ok(emit_realization(r))
}

/// Complete base: the degree-bound engine when `Δ ≤ 2⌊n/6⌋ − 4`, else the
/// edge-bound engine when `e ≤ 2n − 5`. Grid base: the grid engine.
pub fn realize(input: &str, opts: &RealizeOptions) -> Outcome {
    let file = match parse_demand_file(input) {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let d = &file.demand;
    let (result, stats) = match file.base {
        BaseSpec::Complete { n } => {
            let within_degree = d.max_degree() as i64 <= degree_bound(n) || d.edge_count() == 0;
            if within_degree {
                match realize_in_complete_with(d, n, opts) {
                    Ok((r, s)) => (r, s),
                    Err(e) => return realize_error(e),
                }
            } else {
                match realize_edge_bounded(d, n) {
                    Ok(r) => (r, RunStats::default()),
                    Err(RealizeError::PreconditionViolated(edge_msg)) => {
                        let degree_msg = RealizeError::DegreeBoundExceeded {
                            max_degree: d.max_degree(),
                            bound: degree_bound(n),
                            n,
                        };
                        return Outcome::fail(EXIT_PRECONDITION, format!("{degree_msg}; {edge_msg}"));
                    }
                    Err(e) => return realize_error(e),
                }
            }
        }
        BaseSpec::Grid { .. } => match realize_in_grid_with(d, &file.base, opts) {
            Ok(x) => x,
            Err(e) => return grid_error(e),
        },
    };
    let mut out = checked_output(&file, &result);
    if opts.self_check && out.code == EXIT_OK {
        out.stderr = format!(
            "self-check: {} reductions, {} certificates, {} levels\n",
            stats.reductions, stats.certificates_checked, stats.levels_checked
        );
    }
    out
}

pub fn verify(demand: &str, realization: &str) -> Outcome {
    let file = match parse_demand_file(demand) {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let r = match parse_realization_file(realization, &file.base) {
        Ok(r) => r,
        Err(e) => return parse_error(e),
    };
    let report = verify_realization(&file.demand, &r);
    if report.ok() {
        return Outcome::ok("ok\n".into());
    }
    let mut stdout = String::new();
    for v in &report.violations {
        writeln!(stdout, "{} {}", v.label.0, v.kind).unwrap();
    }
    Outcome { code: EXIT_FAILED, stdout, stderr: String::new() }
}

pub fn maxedp(input: &str, cap: Option<usize>, opts: &RealizeOptions) -> Outcome {
    let file = match parse_demand_file(input) {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let BaseSpec::Complete { n } = file.base else {
        return Outcome::fail(EXIT_PRECONDITION, "maxedp needs a complete base graph");
    };
    let result = match cap {
        Some(c) => approx_maxedp_with_cap(&file.demand, n, c, opts),
        None => approx_maxedp(&file.demand, n),
    };
    let out = match result {
        Ok(out) => out,
        Err(MaxEdpError::Realize(e)) => return realize_error(e),
    };
    let kept = out.solution.subgraph(&file.demand);
    let mut stdout = format!("kept {}\nlabels", out.solution.size());
    for label in kept.demands().keys() {
        write!(stdout, " {}", label.0).unwrap();
    }
    stdout.push('\n');
    let report = verify_realization(&kept, &out.realization);
    if !report.ok() {
        return Outcome::fail(EXIT_FAILED, "internal realization failed verification");
    }
    stdout.push_str(&emit_realization(&out.realization));
    let stderr = out.warning.map(|w| format!("warning: {w}\n")).unwrap_or_default();
    Outcome { code: EXIT_OK, stdout, stderr }
}

pub fn oracle(input: &str) -> Outcome {
    let file = match parse_demand_file(input) {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    match brute_force_realize(&file.demand, &file.base) {
        Ok(Some(r)) => checked_output(&file, &r),
        Ok(None) => Outcome { code: EXIT_FAILED, stdout: "unrealizable\n".into(), stderr: String::new() },
        Err(e @ OracleError::TooLarge { .. }) => Outcome::fail(EXIT_PRECONDITION, e),
        Err(e) => Outcome::fail(EXIT_FAILED, e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `one-factor n q`
    OneFactor { n: usize, q: usize },
    /// `antipodal t d q`
    Antipodal { t: usize, d: usize, q: usize },
    /// `double-bundle n`
    DoubleBundle { n: usize },
}

pub fn gen(family: Family) -> Outcome {
    let inst = match family {
        Family::OneFactor { n, q } => one_factor_bundles(n, q),
        Family::Antipodal { t, d, q } => antipodal(t, d, q),
        Family::DoubleBundle { n } => double_bundle(n),
    };
    match inst {
        Ok(inst) => Outcome::ok(emit_demand_file(&inst.base, &inst.demand)),
        Err(e) => Outcome::fail(EXIT_PRECONDITION, e),
    }
}

/// `len` defaults to the smallest base distance between demand endpoints.
pub fn bound(input: &str, len: Option<u64>, exempt: u64) -> Outcome {
    let file = match parse_demand_file(input) {
        Ok(f) => f,
        Err(e) => return parse_error(e),
    };
    let len = len.unwrap_or_else(|| min_base_distance(&file.demand, &file.base).max(1));
    if len == 0 {
        return Outcome::fail(EXIT_PRECONDITION, "--len must be at least 1");
    }
    Outcome::ok(format!("{}\n", pigeonhole_bound(&file.base, len, exempt)))
}

//! Text formats. Vertices are 1-based in files and 0-based in memory; grid
//! vertices are flat indices `1 + sum_j (a_j − 1) t^(j−1)`.
//!
//! ```text
//! # comment
//! base complete 6          | base grid <t> <d>
//! demand 2
//! e 1 2
//! e 2 3
//! ```
//!
//! ```text
//! realization 2
//! p 1 1 2
//! p 2 2 5 3
//! ```

use std::fmt::Write;

use thiserror::Error;

use crate::base::BaseSpec;
use crate::graph::{DemandGraph, Label};
use crate::realization::Realization;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().or_else(|_| err(line, format!("expected a non-negative integer, found '{token}'")))
}

fn vertex(line: usize, token: &str, count: usize) -> Result<usize, ParseError> {
    let v = number(line, token)?;
    if v == 0 || v > count {
        return err(line, format!("vertex {v} is outside 1..={count}"));
    }
    Ok(v - 1)
}

#[derive(Clone, Debug)]
pub struct DemandFile {
    pub base: BaseSpec,
    pub demand: DemandGraph,
}

pub fn parse_demand_file(text: &str) -> Result<DemandFile, ParseError> {
    let mut lines = content_lines(text);
    let Some((ln, header)) = lines.next() else {
        return err(0, "missing 'base' line");
    };
    let base = match header[..] {
        ["base", "complete", n] => BaseSpec::complete(number(ln, n)?),
        ["base", "grid", t, d] => BaseSpec::grid(number(ln, t)?, number(ln, d)?),
        _ => return err(ln, "expected 'base complete <n>' or 'base grid <t> <d>'"),
    }
    .or_else(|e| err(ln, e.to_string()))?;
    let count = base.vertex_count();
    let m = match lines.next() {
        Some((ln, tokens)) => match tokens[..] {
            ["demand", m] => number(ln, m)?,
            _ => return err(ln, "expected 'demand <m>'"),
        },
        None => return err(ln, "missing 'demand' line"),
    };
    let mut demand = DemandGraph::new(count);
    for (ln, tokens) in lines {
        let (u, v) = match tokens[..] {
            ["e", u, v] => (vertex(ln, u, count)?, vertex(ln, v, count)?),
            _ => return err(ln, "expected 'e <u> <v>'"),
        };
        if u == v {
            return err(ln, format!("loop at vertex {}", u + 1));
        }
        if demand.edge_count() == m {
            return err(ln, format!("more than {m} edge lines"));
        }
        let label = Label(demand.edge_count() as u64 + 1);
        demand.add_demand(label, u, v).or_else(|e| err(ln, e.to_string()))?;
    }
    if demand.edge_count() != m {
        return err(0, format!("expected {m} edge lines, found {}", demand.edge_count()));
    }
    Ok(DemandFile { base, demand })
}

pub fn emit_demand_file(base: &BaseSpec, demand: &DemandGraph) -> String {
    let mut out = match *base {
        BaseSpec::Complete { n } => format!("base complete {n}\n"),
        BaseSpec::Grid { t, d } => format!("base grid {t} {d}\n"),
    };
    let pairs: Vec<_> = demand.demands().iter().filter(|(l, _)| !l.is_padding()).collect();
    writeln!(out, "demand {}", pairs.len()).unwrap();
    for (_, &(u, v)) in pairs {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_realization_file(text: &str, base: &BaseSpec) -> Result<Realization, ParseError> {
    let count = base.vertex_count();
    let mut lines = content_lines(text);
    let m = match lines.next() {
        Some((ln, tokens)) => match tokens[..] {
            ["realization", m] => number(ln, m)?,
            _ => return err(ln, "expected 'realization <m>'"),
        },
        None => return err(0, "missing 'realization' line"),
    };
    let mut r = Realization::empty(*base);
    let mut seen = 0;
    for (ln, tokens) in lines {
        let ["p", label, rest @ ..] = &tokens[..] else {
            return err(ln, "expected 'p <label> <v0> ... <vk>'");
        };
        let label = Label(number(ln, label)? as u64);
        let path = rest.iter().map(|t| vertex(ln, t, count)).collect::<Result<Vec<_>, _>>()?;
        if path.is_empty() {
            return err(ln, "empty path");
        }
        if r.paths.insert(label, path).is_some() {
            return err(ln, format!("label {} appears twice", label.0));
        }
        seen += 1;
    }
    if seen != m {
        return err(0, format!("expected {m} path lines, found {seen}"));
    }
    Ok(r)
}

pub fn emit_realization(r: &Realization) -> String {
    let mut out = format!("realization {}\n", r.paths.len());
    for (label, path) in &r.paths {
        write!(out, "p {}", label.0).unwrap();
        for v in path {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

//! Plain-text point and graph files.
//!
//! Points: a header `d n`, then `n` lines `label c1 ... cd`.
//! Graphs: a header `n m`, an optional line of `n` vertex labels, then `m`
//! lines `u v` with 0-based vertex indices. The labels line is present
//! exactly when `m + 1` lines follow the header.
//!
//! In both, a token starting with `#` comments out the rest of its line and
//! blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::competition::{Graph, PointConfig};
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty content lines as `(line number, tokens)`.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let tokens: Vec<&str> = line.split_whitespace().take_while(|t| !t.starts_with('#')).collect();
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .or_else(|_| fail(line, format!("expected {what}, found {token:?}")))
}

fn header(lines: &[(usize, Vec<&str>)], names: &str) -> Result<(usize, usize, usize), ParseError> {
    let Some((line, tokens)) = lines.first() else {
        return fail(0, format!("empty file; expected a header \"{names}\""));
    };
    if tokens.len() != 2 {
        return fail(*line, format!("header must be \"{names}\""));
    }
    Ok((*line, number(*line, tokens[0], "a count")?, number(*line, tokens[1], "a count")?))
}

pub fn parse_points(text: &str) -> Result<PointConfig, ParseError> {
    let lines = content_lines(text);
    let (hline, d, n) = header(&lines, "d n")?;
    if d == 0 {
        return fail(hline, "dimension must be at least 1");
    }
    if n == 0 {
        return fail(hline, "a point file needs at least one point");
    }
    let body = &lines[1..];
    if body.len() != n {
        let line = body.get(n).map_or(hline, |(l, _)| *l);
        return fail(line, format!("header announces {n} points, found {}", body.len()));
    }
    let mut entries = Vec::with_capacity(n);
    let mut seen = BTreeSet::new();
    for (line, tokens) in body {
        if tokens.len() != d + 1 {
            return fail(*line, format!("expected a label and {d} coordinates, found {} tokens", tokens.len()));
        }
        let label = tokens[0];
        if !seen.insert(label) {
            return fail(*line, format!("duplicate label {label:?}"));
        }
        let coords = tokens[1..]
            .iter()
            .map(|t| number::<i64>(*line, t, "an integer coordinate"))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push((label.to_string(), Point::new(coords).expect("d >= 1")));
    }
    PointConfig::new(entries).or_else(|e| fail(hline, e.to_string()))
}

pub fn format_points(cfg: &PointConfig) -> String {
    let mut out = format!("{} {}\n", cfg.dim(), cfg.len());
    for (label, p) in cfg.entries() {
        out.push_str(label);
        for c in p.coords() {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(text);
    let (hline, n, m) = header(&lines, "n m")?;
    let mut body = &lines[1..];
    let labels: Vec<String> = if body.len() == m + 1 {
        let (line, tokens) = &body[0];
        if tokens.len() != n {
            return fail(*line, format!("labels line must list {n} labels, found {}", tokens.len()));
        }
        body = &body[1..];
        tokens.iter().map(|t| t.to_string()).collect()
    } else if body.len() == m {
        (0..n).map(|i| i.to_string()).collect()
    } else {
        let line = body.last().map_or(hline, |(l, _)| *l);
        return fail(line, format!("header announces {m} edges, found {} lines", body.len()));
    };
    let mut edges = BTreeSet::new();
    for (line, tokens) in body {
        if tokens.len() != 2 {
            return fail(*line, "an edge line must be \"u v\"");
        }
        let u: usize = number(*line, tokens[0], "a vertex index")?;
        let v: usize = number(*line, tokens[1], "a vertex index")?;
        if u >= n || v >= n {
            return fail(*line, format!("vertex index out of range 0..{n}"));
        }
        if u == v {
            return fail(*line, "loops are not allowed");
        }
        if !edges.insert((u.min(v), u.max(v))) {
            return fail(*line, format!("duplicate edge {u} {v}"));
        }
    }
    Graph::new(labels, edges).or_else(|e| fail(hline, e.to_string()))
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.len(), g.edge_count());
    let implicit = g.labels().iter().enumerate().all(|(i, l)| *l == i.to_string());
    if !implicit {
        out.push_str(&g.labels().join(" "));
        out.push('\n');
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

//! Plain-text quiver files.
//!
//! ```text
//! # comment
//! vertices: 4
//! base: 1          # optional, label of the first vertex (0 or 1, default 1)
//! 1 -> 2
//! 1 -> 3
//! 2 -> 4
//! frozen: 3 4      # optional; present only for ice quivers
//! ```
//!
//! Repeated arrow lines encode multiplicity.

use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{ArrowMatrix, ClusterQuiver, IceQuiver, QuiverError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverFile {
    Cluster(ClusterQuiver),
    Ice(IceQuiver),
}

pub fn parse_quiver(text: &str) -> Result<QuiverFile, ParseError> {
    let mut vertices: Option<(usize, usize)> = None;
    let mut base: Option<(usize, usize)> = None;
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    let mut frozen: Option<(usize, Vec<usize>)> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(ParseError::new(line_no, "duplicate `vertices:` line"));
            }
            let n = parse_number(rest.trim(), line_no)?;
            vertices = Some((n, line_no));
        } else if let Some(rest) = line.strip_prefix("base:") {
            let b = parse_number(rest.trim(), line_no)?;
            if b > 1 {
                return Err(ParseError::new(line_no, "base must be 0 or 1"));
            }
            base = Some((b, line_no));
        } else if let Some(rest) = line.strip_prefix("frozen:") {
            if frozen.is_some() {
                return Err(ParseError::new(line_no, "duplicate `frozen:` line"));
            }
            let labels = rest
                .split_whitespace()
                .map(|t| parse_number(t, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            frozen = Some((line_no, labels));
        } else if let Some((u, v)) = line.split_once("->") {
            let u = parse_number(u.trim(), line_no)?;
            let v = parse_number(v.trim(), line_no)?;
            arrows.push((u, v, line_no));
        } else {
            return Err(ParseError::new(
                line_no,
                format!("unrecognized line `{line}`"),
            ));
        }
    }

    let (n, n_line) =
        vertices.ok_or_else(|| ParseError::new(last_line.max(1), "missing `vertices:` line"))?;
    if n == 0 {
        return Err(ParseError::new(n_line, "quiver needs at least one vertex"));
    }
    let base = base.map_or(1, |(b, _)| b);
    let index = |label: usize, line: usize| -> Result<Vertex, ParseError> {
        label.checked_sub(base).filter(|&v| v < n).ok_or_else(|| {
            ParseError::new(
                line,
                format!("vertex {label} outside {base}..={}", base + n - 1),
            )
        })
    };

    let mut matrix = ArrowMatrix::zeros(n);
    for &(u, v, line) in &arrows {
        let (iu, iv) = (index(u, line)?, index(v, line)?);
        matrix
            .add(iu, iv, 1)
            .map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    let structural = |e: QuiverError| -> ParseError {
        let line = match e {
            QuiverError::Loop(v) => arrows
                .iter()
                .find(|&&(a, b, l)| index(a, l).ok() == Some(v) && a == b)
                .map(|&(_, _, l)| l),
            QuiverError::TwoCycle(a, b) | QuiverError::FrozenArrow(a, b) => arrows
                .iter()
                .rev()
                .find(|&&(x, y, l)| {
                    let (x, y) = (index(x, l).ok(), index(y, l).ok());
                    (x, y) == (Some(a), Some(b)) || (x, y) == (Some(b), Some(a))
                })
                .map(|&(_, _, l)| l),
            _ => None,
        }
        .unwrap_or(n_line);
        ParseError::new(line, e.to_string())
    };

    match frozen {
        None => ClusterQuiver::from_matrix(matrix)
            .map(|q| QuiverFile::Cluster(q.with_base(base)))
            .map_err(structural),
        Some((line, labels)) => {
            let mut mask = vec![false; n];
            for label in labels {
                mask[index(label, line)?] = true;
            }
            IceQuiver::new(matrix, mask)
                .map(|r| QuiverFile::Ice(r.with_base(base)))
                .map_err(structural)
        }
    }
}

fn parse_number(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected a vertex number, found `{token}`")))
}

fn write_arrows(
    out: &mut String,
    size: usize,
    base: usize,
    arrows: impl Iterator<Item = (Vertex, Vertex, u32)>,
) {
    writeln!(out, "vertices: {size}").unwrap();
    if base != 1 {
        writeln!(out, "base: {base}").unwrap();
    }
    for (u, v, k) in arrows {
        for _ in 0..k {
            writeln!(out, "{} -> {}", u + base, v + base).unwrap();
        }
    }
}

pub fn cluster_to_text(q: &ClusterQuiver) -> String {
    let mut out = String::new();
    write_arrows(&mut out, q.n(), q.base(), q.arrows());
    out
}

pub fn ice_to_text(r: &IceQuiver) -> String {
    let mut out = String::new();
    write_arrows(&mut out, r.size(), r.base(), r.arrows());
    let frozen: Vec<String> = r
        .frozen_vertices()
        .map(|v| r.label(v).to_string())
        .collect();
    writeln!(out, "frozen: {}", frozen.join(" ")).unwrap();
    out
}

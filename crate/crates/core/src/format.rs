//! Plain-text formats: `.elist` graphs, `.moves` scripts and bijection files.
//!
//! All three are line oriented, ASCII, LF terminated, with `#` comment lines.
//! Serialisation is canonical so identical values always produce identical
//! bytes.

use std::fmt::Write as _;

use crate::error::{ParseError, Result};
use crate::graph::{Graph, VertexBijection};
use crate::moves::{Move, MoveScript};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn int(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        ParseError::new(
            line,
            format!("expected a non-negative integer, got {tok:?}"),
        )
    })
}

fn expect_args(line: usize, toks: &[&str], count: usize) -> Result<Vec<usize>, ParseError> {
    if toks.len() != count + 1 {
        return Err(ParseError::new(
            line,
            format!(
                "{} takes {count} arguments, got {}",
                toks[0],
                toks.len() - 1
            ),
        ));
    }
    toks[1..].iter().map(|t| int(line, t)).collect()
}

/// Parses an `.elist` document: header `p <n> <e>` then exactly `e` lines
/// `e <u> <v>`.
pub fn parse_elist(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header `p <n> <e>`"))?;
    if header[0] != "p" {
        return Err(ParseError::new(
            hline,
            "malformed header, expected `p <n> <e>`",
        ));
    }
    let dims = expect_args(hline, &header, 2)
        .map_err(|_| ParseError::new(hline, "malformed header, expected `p <n> <e>`"))?;
    let (n, e) = (dims[0], dims[1]);
    let mut g = Graph::empty(n);
    let mut last_line = hline;
    for (line, toks) in lines {
        last_line = line;
        if toks[0] != "e" {
            return Err(ParseError::new(
                line,
                format!("unknown record {:?}", toks[0]),
            ));
        }
        if g.edge_count() == e {
            return Err(ParseError::new(
                line,
                format!("more than the declared {e} edges"),
            ));
        }
        let uv = expect_args(line, &toks, 2)?;
        g.insert_edge(uv[0], uv[1])
            .map_err(|err| ParseError::new(line, err.to_string()))?;
    }
    if g.edge_count() != e {
        return Err(ParseError::new(
            last_line,
            format!("header declares {e} edges, found {}", g.edge_count()),
        ));
    }
    Ok(g)
}

/// Canonical `.elist` text, edges sorted by `(u, v)`.
pub fn write_elist(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Parses a `.moves` document, keeping each move's 1-based source line.
pub fn parse_moves_with_lines(text: &str) -> Result<Vec<(usize, Move)>, ParseError> {
    content_lines(text)
        .map(|(line, toks)| {
            let m = match toks[0] {
                "S" => {
                    let a = expect_args(line, &toks, 3)?;
                    Move::slide(a[0], a[1], a[2])
                }
                "AP" => {
                    let a = expect_args(line, &toks, 2)?;
                    Move::AddPendant {
                        anchor: a[0],
                        new: a[1],
                    }
                }
                "SD" => {
                    let a = expect_args(line, &toks, 3)?;
                    Move::Subdivide {
                        x: a[0],
                        z: a[1],
                        new: a[2],
                    }
                }
                "RL" => {
                    let a = expect_args(line, &toks, 2)?;
                    Move::RemoveLeaf {
                        leaf: a[0],
                        anchor: a[1],
                    }
                }
                "SM" => {
                    let a = expect_args(line, &toks, 3)?;
                    Move::Smooth {
                        mid: a[0],
                        x: a[1],
                        z: a[2],
                    }
                }
                other => return Err(ParseError::new(line, format!("unknown move {other:?}"))),
            };
            Ok((line, m))
        })
        .collect()
}

pub fn parse_moves(text: &str) -> Result<MoveScript, ParseError> {
    Ok(parse_moves_with_lines(text)?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

pub fn write_moves(s: &MoveScript) -> String {
    let mut out = String::new();
    for m in s {
        writeln!(out, "{m}").unwrap();
    }
    out
}

/// Parses `m <src> <dst>` lines; every source id `0..k` must appear once.
pub fn parse_bijection(text: &str) -> Result<VertexBijection, ParseError> {
    let mut pairs = Vec::new();
    for (line, toks) in content_lines(text) {
        if toks[0] != "m" {
            return Err(ParseError::new(
                line,
                format!("unknown record {:?}", toks[0]),
            ));
        }
        let a = expect_args(line, &toks, 2)?;
        pairs.push((line, a[0], a[1]));
    }
    let n = pairs.len();
    let mut forward = vec![usize::MAX; n];
    for &(line, src, dst) in &pairs {
        if src >= n {
            return Err(ParseError::new(
                line,
                format!("source {src} outside 0..{n}"),
            ));
        }
        if forward[src] != usize::MAX {
            return Err(ParseError::new(line, format!("source {src} mapped twice")));
        }
        forward[src] = dst;
    }
    let last = pairs.last().map_or(1, |p| p.0);
    VertexBijection::new(forward).map_err(|e| ParseError::new(last, e.to_string()))
}

pub fn write_bijection(psi: &VertexBijection) -> String {
    let mut out = String::new();
    for (src, &dst) in psi.as_slice().iter().enumerate() {
        writeln!(out, "m {src} {dst}").unwrap();
    }
    out
}

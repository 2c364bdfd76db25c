//! Line-oriented ASCII file formats.
//!
//! Instance files are extended DIMACS:
//!
//! ```text
//! c <comment>
//! p bbc <n> <mG> <mH> <q>
//! e <u> <v>      host-only edge
//! b <u> <v>      backbone edge (contributes to both G and H)
//! ```
//!
//! `mG` counts all host edges including those implied by `b` lines.
//! A redundant `e` line for a pair that also appears as `b` is accepted.
//!
//! Colouring files:
//!
//! ```text
//! s bbc <k>
//! v <vertex> <colour>
//! ```

use crate::colouring::Colouring;
use crate::graph::Graph;
use crate::instance::BackboneInstance;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing `p bbc` header")]
    MissingHeader,
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("header declares {declared} {what} edges, file has {actual}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        actual: usize,
    },
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    tok.ok_or_else(|| malformed(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| malformed(line, format!("invalid {what}")))
}

/// Parses an instance from text. `b` lines contribute their edge to both
/// the host and the backbone; an explicit `e` line for the same pair is
/// tolerated, but any other repetition of a pair is a duplicate.
pub fn parse_instance(text: &str) -> Result<BackboneInstance, ParseError> {
    let mut header: Option<(usize, usize, usize, u32)> = None;
    let mut host_only: Vec<(usize, usize)> = Vec::new();
    let mut backbone: Vec<(usize, usize)> = Vec::new();
    // (pair -> was it an e line) for duplicate detection
    let mut seen: std::collections::HashMap<(usize, usize), (bool, bool)> =
        std::collections::HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let mut it = l.split_ascii_whitespace();
        let tag = it.next().unwrap();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(malformed(line, "second `p` line"));
                }
                let fmt = it.next().ok_or_else(|| malformed(line, "missing format"))?;
                if fmt != "bbc" {
                    return Err(malformed(line, format!("expected format `bbc`, got `{fmt}`")));
                }
                let n: usize = parse_num(it.next(), line, "vertex count")?;
                let mg: usize = parse_num(it.next(), line, "host edge count")?;
                let mh: usize = parse_num(it.next(), line, "backbone edge count")?;
                let q: u32 = parse_num(it.next(), line, "gap parameter")?;
                if it.next().is_some() {
                    return Err(malformed(line, "trailing tokens after header"));
                }
                if q == 0 {
                    return Err(malformed(line, "q must be at least 1"));
                }
                // keep the colour arithmetic inside 32 bits and the
                // adjacency allocation sane
                if n > 100_000_000 {
                    return Err(malformed(line, "vertex count too large"));
                }
                if q > 1_000_000 {
                    return Err(malformed(line, "gap parameter too large"));
                }
                header = Some((n, mg, mh, q));
            }
            "e" | "b" => {
                let (n, ..) = header.ok_or(ParseError::MissingHeader)?;
                let u: usize = parse_num(it.next(), line, "endpoint")?;
                let v: usize = parse_num(it.next(), line, "endpoint")?;
                if it.next().is_some() {
                    return Err(malformed(line, "trailing tokens after edge"));
                }
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(ParseError::VertexOutOfRange { line, v: w, n });
                    }
                }
                if u == v {
                    return Err(malformed(line, format!("self-loop at vertex {u}")));
                }
                let key = (u.min(v), u.max(v));
                let entry = seen.entry(key).or_insert((false, false));
                let slot = if tag == "e" { &mut entry.0 } else { &mut entry.1 };
                if *slot {
                    return Err(ParseError::DuplicateEdge {
                        line,
                        u: key.0,
                        v: key.1,
                    });
                }
                *slot = true;
                if tag == "e" {
                    host_only.push(key);
                } else {
                    backbone.push(key);
                }
            }
            other => return Err(malformed(line, format!("unknown line tag `{other}`"))),
        }
    }

    let (n, mg, mh, q) = header.ok_or(ParseError::MissingHeader)?;
    let mut host_edges: Vec<(usize, usize)> = seen.keys().copied().collect();
    host_edges.sort_unstable();
    if host_edges.len() != mg {
        return Err(ParseError::CountMismatch {
            what: "host",
            declared: mg,
            actual: host_edges.len(),
        });
    }
    if backbone.len() != mh {
        return Err(ParseError::CountMismatch {
            what: "backbone",
            declared: mh,
            actual: backbone.len(),
        });
    }
    let host = Graph::from_edges(n, host_edges).map_err(|e| malformed(0, e.to_string()))?;
    BackboneInstance::new(host, backbone, q).map_err(|e| malformed(0, e.to_string()))
}

/// Canonical serialization: backbone edges as `b` lines, remaining host
/// edges as `e` lines, both sorted. Comments, if any, go first.
pub fn write_instance(inst: &BackboneInstance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    let n = inst.host.vertex_count();
    let mg = inst.host.edge_count();
    let mh = inst.backbone_edges().len();
    writeln!(out, "p bbc {n} {mg} {mh} {}", inst.q).unwrap();
    let backbone: std::collections::HashSet<(usize, usize)> =
        inst.backbone_edges().iter().copied().collect();
    for &(u, v) in inst.host.edges() {
        if !backbone.contains(&(u, v)) {
            writeln!(out, "e {u} {v}").unwrap();
        }
    }
    for &(u, v) in inst.backbone_edges() {
        writeln!(out, "b {u} {v}").unwrap();
    }
    out
}

/// Parses a colouring file, returning the declared span and the assignment.
pub fn parse_colouring(text: &str, n: usize) -> Result<(u32, Colouring), ParseError> {
    let mut declared: Option<u32> = None;
    let mut assignment = vec![0u32; n + 1];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let mut it = l.split_ascii_whitespace();
        match it.next().unwrap() {
            "s" => {
                let fmt = it.next().ok_or_else(|| malformed(line, "missing format"))?;
                if fmt != "bbc" {
                    return Err(malformed(line, "expected `s bbc <k>`"));
                }
                declared = Some(parse_num(it.next(), line, "span")?);
            }
            "v" => {
                let v: usize = parse_num(it.next(), line, "vertex")?;
                let c: u32 = parse_num(it.next(), line, "colour")?;
                if v == 0 || v > n {
                    return Err(ParseError::VertexOutOfRange { line, v, n });
                }
                if assignment[v] != 0 {
                    return Err(malformed(line, format!("vertex {v} coloured twice")));
                }
                if c == 0 {
                    return Err(malformed(line, "colours are positive"));
                }
                assignment[v] = c;
            }
            other => return Err(malformed(line, format!("unknown line tag `{other}`"))),
        }
    }
    let k = declared.ok_or(ParseError::MissingHeader)?;
    let col = Colouring::from_assignment(assignment)
        .map_err(|e| malformed(0, e.to_string()))?;
    Ok((k, col))
}

pub fn write_colouring(col: &Colouring) -> String {
    let mut out = String::new();
    writeln!(out, "s bbc {}", col.span()).unwrap();
    for (v, c) in col.iter() {
        writeln!(out, "v {v} {c}").unwrap();
    }
    out
}

/// `x bbc <k>` (or `x cbc <k>`) followed by the witness colouring block.
pub fn write_exact_result(kind: &str, k: u32, witness: Option<&Colouring>) -> String {
    let mut out = String::new();
    writeln!(out, "x {kind} {k}").unwrap();
    if let Some(col) = witness {
        out.push_str(&write_colouring(col));
    }
    out
}

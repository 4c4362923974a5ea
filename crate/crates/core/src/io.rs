//! Text formats: the edge-list interchange format and graph6.
//!
//! Edge lists use one declaration per line:
//!
//! ```text
//! e U V [W]   # edge with optional weight (default 1)
//! m U X       # vertex measure, custom preset only
//! v U         # vertex (needed only for isolated vertices)
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Laplacian, Vertex, WeightedGraph};

/// Largest vertex count representable in a graph6 header.
pub const GRAPH6_MAX_N: u64 = 68_719_476_735;

pub fn parse_edge_list(text: &str, preset: Laplacian) -> Result<WeightedGraph> {
    let mut b = GraphBuilder::new();
    let mut measured = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| Error::Parse { line, message };
        let number = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| err(format!("invalid {what} `{s}`")))
        };
        match tokens.as_slice() {
            [] => {}
            ["e", u, v] => {
                b.edge(*u, *v, 1.0);
            }
            ["e", u, v, w] => {
                b.edge(*u, *v, number(w, "weight")?);
            }
            ["m", u, x] => {
                if preset != Laplacian::Custom {
                    return Err(err(format!(
                        "measure lines require the custom preset (current: {preset})"
                    )));
                }
                if !measured.insert(u.to_string()) {
                    return Err(err(format!("duplicate measure for `{u}`")));
                }
                b.measure(*u, number(x, "measure")?);
            }
            ["v", u] => {
                b.vertex(*u);
            }
            [kind, ..] => {
                return Err(err(format!("malformed `{kind}` line: `{}`", content.trim())));
            }
        }
    }
    b.build(preset).map_err(|e| match e {
        Error::InvalidGraph(message) => Error::Parse { line: 0, message },
        other => other,
    })
}

/// Canonical edge-list text: isolated vertices, then edges in vertex order,
/// then measures when the preset is custom. Unit weights are omitted.
pub fn to_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for x in g.vertices().filter(|&x| g.degree(x) == 0) {
        writeln!(out, "v {}", g.label(x)).unwrap();
    }
    for (u, v, w) in g.edges() {
        if w == 1.0 {
            writeln!(out, "e {} {}", g.label(u), g.label(v)).unwrap();
        } else {
            writeln!(out, "e {} {} {}", g.label(u), g.label(v), w).unwrap();
        }
    }
    if g.preset() == Laplacian::Custom {
        for x in g.vertices() {
            writeln!(out, "m {} {}", g.label(x), g.measure(x)).unwrap();
        }
    }
    out
}

/// graph6 encoding of an unweighted graph (vertex order = graph order).
pub fn to_graph6(g: &WeightedGraph) -> Result<String> {
    if !g.is_unweighted() {
        return Err(Error::Graph6("only unweighted graphs can be written as graph6".into()));
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    Ok(encode_graph6(g.len(), &edges))
}

pub fn encode_graph6(n: usize, edges: &[(Vertex, Vertex)]) -> String {
    let mut bits = vec![false; n * n.saturating_sub(1) / 2];
    for &(u, v) in edges {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        bits[j * (j - 1) / 2 + i] = true;
    }
    let mut out = graph6_header(n as u64);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + 63) as char);
    }
    out
}

fn graph6_header(n: u64) -> String {
    let mut out = String::new();
    let push_bits = |out: &mut String, value: u64, groups: u32| {
        for k in (0..groups).rev() {
            out.push((((value >> (6 * k)) & 0x3f) as u8 + 63) as char);
        }
    };
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        push_bits(&mut out, n, 3);
    } else {
        out.push_str("~~");
        push_bits(&mut out, n, 6);
    }
    out
}

/// Decodes one graph6 string into a vertex count and an edge list `(i, j)`
/// with `i < j`, ordered column by column.
pub fn decode_graph6(s: &str) -> Result<(usize, Vec<(Vertex, Vertex)>)> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&bad) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(Error::Graph6(format!("invalid character {:?}", bad as char)));
    }
    let read = |from: usize, groups: usize| -> Result<u64> {
        let chunk = bytes
            .get(from..from + groups)
            .ok_or_else(|| Error::Graph6("truncated size header".into()))?;
        Ok(chunk.iter().fold(0u64, |acc, &c| (acc << 6) | u64::from(c - 63)))
    };
    let (n, start) = match bytes {
        [] => return Err(Error::Graph6("empty string".into())),
        [126, 126, ..] => (read(2, 6)?, 8),
        [126, ..] => (read(1, 3)?, 4),
        [c, ..] => (u64::from(c - 63), 1),
    };
    if n > GRAPH6_MAX_N {
        return Err(Error::Graph6(format!("vertex count {n} exceeds {GRAPH6_MAX_N}")));
    }
    let nbits = u128::from(n) * u128::from(n.saturating_sub(1)) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[start..];
    if data.len() as u128 != need {
        return Err(Error::Graph6(format!(
            "expected {need} data bytes for {n} vertices, found {}",
            data.len()
        )));
    }
    let n = usize::try_from(n).map_err(|_| Error::Graph6("vertex count too large".into()))?;
    let nbits = nbits as usize;
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    for (k, &c) in data.iter().enumerate() {
        let byte = c - 63;
        for b in 0..6 {
            let pos = 6 * k + b;
            let bit = (byte >> (5 - b)) & 1 == 1;
            if pos >= nbits {
                if bit {
                    return Err(Error::Graph6("non-zero padding bits".into()));
                }
                continue;
            }
            if bit {
                edges.push((i, j));
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok((n, edges))
}

pub fn parse_graph6(s: &str, preset: Laplacian) -> Result<WeightedGraph> {
    let (n, edges) = decode_graph6(s)?;
    WeightedGraph::unweighted(n, &edges, preset)
}

/// Input format detected from file contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

/// Edge list if any declaration line starts with `e`, `m` or `v`; graph6 otherwise.
pub fn detect_format(text: &str) -> Format {
    let edge_list = text.lines().any(|l| {
        let content = l.split('#').next().unwrap_or("");
        matches!(content.split_whitespace().next(), Some("e" | "m" | "v"))
    });
    if edge_list || text.lines().all(|l| l.trim().is_empty() || l.trim_start().starts_with('#')) {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

/// Parses either format. graph6 input must hold exactly one graph.
pub fn parse_graph(text: &str, preset: Laplacian) -> Result<WeightedGraph> {
    match detect_format(text) {
        Format::EdgeList => parse_edge_list(text, preset),
        Format::Graph6 => {
            if preset == Laplacian::Custom {
                return Err(Error::Precondition("graph6 input carries no vertex measures".into()));
            }
            let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
            match lines.as_slice() {
                [one] => parse_graph6(one, preset),
                _ => Err(Error::Graph6(format!("expected one graph6 line, found {}", lines.len()))),
            }
        }
    }
}
